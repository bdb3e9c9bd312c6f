#include "f2dyn/report.hpp"

#include <sstream>
#include <stdexcept>

namespace f2dyn {

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::text: return "text";
    case OutputFormat::json: return "json";
    case OutputFormat::dot: return "dot";
  }
  return "text";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "text") return OutputFormat::text;
  if (text == "json") return OutputFormat::json;
  if (text == "dot") return OutputFormat::dot;
  throw std::invalid_argument("unknown format '" + text + "' (expected dot, json or text)");
}

std::string label(const FieldElement& x) {
  if (x.is_zero()) return "0";
  return "g^" + std::to_string(discrete_log(x));
}

std::string label(const ProjPoint& p) { return p.is_infinity() ? "inf" : label(p.value()); }

Json field_json(const Field& field) {
  Json j;
  j["degree"] = field.degree();
  j["modulus"] = to_hex(field.modulus());
  j["generator"] = to_hex(field.primitive_bits());
  return j;
}

Json map_json(const MapSpec& map) {
  Json j;
  j["kind"] = to_string(map.kind);
  j["a"] = label(map.a);
  j["b"] = label(map.b);
  j["k"] = map.k;
  return j;
}

Json cycles_json(const CycleStructure& cs) {
  Json j;
  if (!cs.cycles.empty()) j["field"] = field_json(*cs.cycles.front().front().field());
  j["points"] = cs.point_count();
  Json cycles = Json::array();
  for (const auto& c : cs.cycles) {
    Json row = Json::array();
    for (const auto& p : c) row.push_back(label(p));
    cycles.push_back(std::move(row));
  }
  j["cycles"] = std::move(cycles);
  Json summary = Json::object();
  for (auto it = cs.summary.rbegin(); it != cs.summary.rend(); ++it) summary[std::to_string(it->first)] = it->second;
  j["summary"] = std::move(summary);
  return j;
}

Json group_json(const GroupStructure& gs) {
  Json j;
  j["order"] = gs.order;
  j["n1"] = gs.n1;
  j["n2"] = gs.n2;
  return j;
}

Json catalog_json(const std::vector<CycleCatalogEntry>& catalog) {
  Json rows = Json::array();
  for (const auto& e : catalog) {
    Json r;
    r["d1"] = e.d1;
    r["d2"] = e.d2;
    r["m1"] = e.m1;
    r["m2"] = e.m2;
    r["ord1"] = e.ord1;
    r["ord2"] = e.ord2;
    r["length"] = e.length;
    r["points"] = e.point_count;
    if (e.cycle_count) r["cycles"] = *e.cycle_count;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string summary_text(const CycleStructure& cs) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto it = cs.summary.rbegin(); it != cs.summary.rend(); ++it) {
    if (!first) out << ", ";
    first = false;
    out << it->first << ':' << it->second;
  }
  out << '}';
  return out.str();
}

namespace {

std::string dot_graph(const CycleStructure& cs) {
  std::ostringstream out;
  out << "digraph functional_graph {\n";
  out << "  node [shape=circle];\n";
  for (const auto& c : cs.cycles) {
    for (const auto& p : c) out << "  n" << p.index() << " [label=\"" << label(p) << "\"];\n";
  }
  for (const auto& c : cs.cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << "  n" << c[i].index() << " -> n" << c[(i + 1) % c.size()].index() << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string emit_graph(const CycleStructure& cs, OutputFormat format) {
  switch (format) {
    case OutputFormat::dot: return dot_graph(cs);
    case OutputFormat::json: return cycles_json(cs).dump(2) + "\n";
    case OutputFormat::text: break;
  }
  throw std::invalid_argument("emit_graph supports dot and json");
}

}  // namespace f2dyn
