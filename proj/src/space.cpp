#include "dlscape/space.hpp"

#include <charconv>
#include <sstream>

#include "dlscape/error.hpp"
#include "dlscape/rational.hpp"

namespace dlscape {

namespace {

std::int64_t parse_int(const std::string& module, const std::string& text) {
  std::int64_t value = 0;
  auto first = text.data();
  auto last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw DomainError(module, "", "not an integer: '" + text + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int("core-metric", trim(text)));
  auto num = parse_int("core-metric", trim(text.substr(0, slash)));
  auto den = parse_int("core-metric", trim(text.substr(slash + 1)));
  if (den == 0) throw DomainError("core-metric", "scale", "zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Vertex& v) {
  return std::to_string(v.a) + "," + std::to_string(v.b);
}

Vertex parse_vertex(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_int("core-metric", trim(text)), 0};
  return {parse_int("core-metric", trim(text.substr(0, comma))),
          parse_int("core-metric", trim(text.substr(comma + 1)))};
}

std::int64_t GeneratorSpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw DomainError("zoo", key, "generator '" + name + "' is missing parameter '" + key + "'");
  }
  return it->second;
}

std::string GeneratorSpec::to_string() const {
  std::ostringstream out;
  out << name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out << sep << k << '=' << v;
    sep = ',';
  }
  return out.str();
}

GeneratorSpec parse_generator_spec(const std::string& text) {
  GeneratorSpec spec;
  auto colon = text.find(':');
  spec.name = trim(text.substr(0, colon));
  if (spec.name.empty()) throw DomainError("zoo", "space", "empty generator name");
  if (colon == std::string::npos) return spec;
  std::istringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw DomainError("zoo", "space", "expected key=value in '" + item + "'");
    }
    spec.params[trim(item.substr(0, eq))] = parse_int("zoo", trim(item.substr(eq + 1)));
  }
  return spec;
}

GraphSpace::GraphSpace(GeneratorSpec spec, std::shared_ptr<const Generator> generator,
                       Rational scale)
    : spec_(std::move(spec)), generator_(std::move(generator)), scale_(scale) {
  if (scale_.num <= 0 || scale_.den <= 0) {
    throw DomainError("core-metric", "scale", "scale must be a positive rational");
  }
}

}  // namespace dlscape
