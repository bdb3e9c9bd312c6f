#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "f2dyn/conjugacy.hpp"
#include "f2dyn/pmaps.hpp"
#include "f2dyn/sscurve.hpp"

namespace f2dyn {

using Json = nlohmann::ordered_json;

enum class OutputFormat { text, json, dot };

std::string to_string(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);

/// "0" for zero, otherwise "g^i" with g the field's fixed primitive element.
std::string label(const FieldElement& x);
/// As above, and "inf" for the point at infinity.
std::string label(const ProjPoint& p);

Json field_json(const Field& field);
Json map_json(const MapSpec& map);
Json cycles_json(const CycleStructure& cs);
Json group_json(const GroupStructure& gs);
Json catalog_json(const std::vector<CycleCatalogEntry>& catalog);

/// "{10:3, 2:1, 1:1}", longest cycles first.
std::string summary_text(const CycleStructure& cs);

/// The functional graph: DOT with one edge x -> f(x) per point, or the JSON
/// cycle serialization. Output is byte-identical for equal inputs.
std::string emit_graph(const CycleStructure& cs, OutputFormat format);

}  // namespace f2dyn
