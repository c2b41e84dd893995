#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dlscape/rational.hpp"

namespace dlscape {

/// A vertex of an infinite generated graph, identified by two integer
/// coordinates whose meaning is generator-specific (see zoo.hpp).
struct Vertex {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    auto h = static_cast<std::uint64_t>(v.a) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(v.b) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }
};

std::string to_string(const Vertex& v);

/// Parses "3" (second coordinate 0) or "3,-1".
Vertex parse_vertex(const std::string& text);

/// Neighbourhood oracle of an infinite, connected, locally finite graph with
/// unit edge weights. neighbors() must list neighbours in a fixed order; all
/// breadth-first enumerations downstream inherit it.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual bool contains(const Vertex& v) const = 0;
  virtual void neighbors(const Vertex& v, std::vector<Vertex>& out) const = 0;
  virtual int degree_bound() const = 0;
  virtual Vertex default_base() const { return {}; }
};

/// Generator name plus integer parameters, e.g. {"stick", {{"m",6},{"h",2}}}.
struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::int64_t> params;

  std::int64_t param(const std::string& key) const;
  std::string to_string() const;
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Parses the inline form "name" or "name:key=value,key=value".
GeneratorSpec parse_generator_spec(const std::string& text);

/// The discrete geodesic space: a generator with a rational scale s. Reported
/// distances are hops / s. Cheap to copy.
class GraphSpace {
 public:
  GraphSpace(GeneratorSpec spec, std::shared_ptr<const Generator> generator,
             Rational scale = Rational(1));

  const GeneratorSpec& spec() const noexcept { return spec_; }
  const Generator& generator() const noexcept { return *generator_; }
  const Rational& scale() const noexcept { return scale_; }
  int degree_bound() const { return generator_->degree_bound(); }

  /// hops / s as an exact rational.
  Rational to_distance(std::int64_t hops) const { return Rational(hops) * Rational(scale_.den, scale_.num); }

 private:
  GeneratorSpec spec_;
  std::shared_ptr<const Generator> generator_;
  Rational scale_;
};

}  // namespace dlscape
