#pragma once

#include <string>

#include <json.hpp>

#include "dlscape/corays.hpp"
#include "dlscape/dlfield.hpp"
#include "dlscape/gh.hpp"
#include "dlscape/pseudometric.hpp"

// JSON and CSV serialization. JSON is the canonical format; every document
// carries enough of its configuration to be reproduced.
namespace dlscape::io {

using json = nlohmann::ordered_json;

/// Reads a JSON document from a file. Throws DomainError naming the path.
json read_json_file(const std::string& path);

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

/// A space argument is either a path to a space-spec file
/// {"generator", "params", "scale": {"num", "den"}} or an inline generator
/// spec such as "tree:b=3". scale_override replaces the file's scale.
GraphSpace load_space(const std::string& arg, const std::string& scale_override = "");
GraphSpace space_from_json(const json& doc);
json space_to_json(const GraphSpace& space);

json vertex_to_json(const Vertex& v);
Vertex vertex_from_json(const json& j);

json window_to_json(const Window& window);

/// Per-vertex table over the zone plus the metadata needed to rebuild the
/// window: space, base, radius, zone, kind, anchor and (when given) the
/// convergence report.
json field_to_json(const ScalarField& field, const ConvergenceReport* report = nullptr);
std::string field_to_csv(const ScalarField& field);

/// Rebuilds the window from the embedded metadata and restores the table.
ScalarField field_from_json(const json& doc);

json finite_space_to_json(const gh::FiniteMetricSpace& space);
gh::FiniteMetricSpace finite_space_from_json(const json& doc);

json correspondence_to_json(const gh::Correspondence& corr);
json rational_to_json(const Rational& r);

json coray_to_json(const CoRay& ray, const ScalarField& field);
json rho_to_json(const RhoMatrix& rho, const Window& window);
json partition_to_json(const ClassPartition& partition, const Window& window);
json gromov_to_json(const GromovReport& report, const Window& window);

}  // namespace dlscape::io
