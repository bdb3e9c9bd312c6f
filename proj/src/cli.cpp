#include "f2dyn/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "f2dyn/cache.hpp"
#include "f2dyn/conjugacy.hpp"
#include "f2dyn/errors.hpp"
#include "f2dyn/selftest.hpp"
#include "f2dyn/sscurve.hpp"

namespace f2dyn {

std::string to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::orbits: return "orbits";
    case Subcommand::curve: return "curve";
    case Subcommand::conjugate: return "conjugate";
    case Subcommand::bluher: return "bluher";
    case Subcommand::selftest: return "selftest";
  }
  return "orbits";
}

namespace {

constexpr Subcommand kSubcommands[] = {Subcommand::orbits, Subcommand::curve, Subcommand::conjugate,
                                       Subcommand::bluher, Subcommand::selftest};

const char* describe(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::orbits: return "cycle decomposition of the map on P^1 (text, json or dot)";
    case Subcommand::curve: return "curve of theta_{a,b,2}: point counts, group structure, catalog, prediction";
    case Subcommand::conjugate: return "conjugate psi_{a,b,k} to theta_{c,0,k} and count fixed points";
    case Subcommand::bluher: return "root counts of x^(2^k+1) + x + a, for one a or all of them";
    case Subcommand::selftest: return "run the acceptance checks";
  }
  return "";
}

struct RawOptions {
  int degree = 5;
  std::string modulus;
  std::string map = "theta";
  std::string a;
  std::string b;
  int k = 2;
  std::string format = "text";
  std::string cache_dir;
  int jobs = 1;
};

void add_options(CLI::App& app, RawOptions& raw) {
  app.add_option("--degree", raw.degree, "field degree n (1..32)");
  app.add_option("--modulus", raw.modulus, "irreducible modulus in hex, overrides the default for the degree");
  app.add_option("--map", raw.map, "theta or psi");
  app.add_option("--a", raw.a, "coefficient a: g^i, 0, 1 or hex");
  app.add_option("--b", raw.b, "coefficient b: g^i, 0, 1 or hex");
  app.add_option("--k", raw.k, "exponent k of x^(2^k)");
  app.add_option("--format", raw.format, "text, json or dot");
  app.add_option("--cache-dir", raw.cache_dir, "directory for cached group structures");
  app.add_option("--jobs", raw.jobs, "worker threads (results do not depend on it)");
}

bool valid_element_syntax(const std::string& s) {
  if (s == "0" || s == "1") return true;
  if (s.rfind("g^", 0) == 0) {
    std::size_t i = 2;
    if (i < s.size() && s[i] == '-') ++i;
    return i < s.size() && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                                       [](unsigned char c) { return std::isdigit(c) != 0; });
  }
  if (s.rfind("0x", 0) == 0 && s.size() > 2 && s.size() <= 18) {
    return std::all_of(s.begin() + 2, s.end(), [](unsigned char c) { return std::isxdigit(c) != 0; });
  }
  return false;
}

JobConfig validate(Subcommand cmd, const RawOptions& raw, bool degree_given) {
  JobConfig c;
  c.command = cmd;
  if (raw.degree < 1 || raw.degree > kMaxFieldDegree) throw UsageError("--degree must be in 1..32");
  c.degree = raw.degree;
  if (!raw.modulus.empty()) {
    Word m = 0;
    try {
      m = parse_hex(raw.modulus);
    } catch (const std::invalid_argument&) {
      throw UsageError("--modulus: not a hex integer: " + raw.modulus);
    }
    const int deg = std::bit_width(m) - 1;
    if (deg < 1 || deg > kMaxFieldDegree) throw UsageError("--modulus must have degree 1..32");
    if (degree_given && deg != raw.degree) throw UsageError("--modulus has degree " + std::to_string(deg) + ", not --degree");
    if (!is_irreducible(m)) throw UsageError("--modulus " + to_hex(m) + " is not irreducible");
    c.modulus = m;
    c.degree = deg;
  }
  try {
    c.kind = parse_map_kind(raw.map);
    c.format = parse_output_format(raw.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!raw.a.empty()) {
    if (!valid_element_syntax(raw.a)) throw UsageError("--a: expected g^i, 0, 1 or 0x..., got " + raw.a);
    c.a = raw.a;
  }
  if (!raw.b.empty()) {
    if (!valid_element_syntax(raw.b)) throw UsageError("--b: expected g^i, 0, 1 or 0x..., got " + raw.b);
    c.b = raw.b;
  }
  if (raw.k < 0) throw UsageError("--k must be non-negative");
  c.k = raw.k;
  if (raw.jobs < 1 || raw.jobs > 256) throw UsageError("--jobs must be in 1..256");
  c.jobs = raw.jobs;
  c.cache_dir = raw.cache_dir;
  return c;
}

// -- reports -----------------------------------------------------------------------

Json input_json(const JobConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["degree"] = c.degree;
  if (c.modulus) j["modulus"] = to_hex(*c.modulus);
  j["map"] = to_string(c.kind);
  if (c.a) j["a"] = *c.a;
  if (c.b) j["b"] = *c.b;
  j["k"] = c.k;
  return j;
}

std::string field_text(const Field& f) {
  return "F_2^" + std::to_string(f.degree()) + " (modulus " + to_hex(f.modulus()) + ", g = " +
         to_hex(f.primitive_bits()) + ")";
}

std::string map_text(const MapSpec& m) {
  return to_string(m.kind) + "_{" + label(m.a) + "," + label(m.b) + "," + std::to_string(m.k) + "}";
}

MapSpec require_map(const JobConfig& c, const FieldPtr& field) {
  if (!c.a || !c.b) throw UsageError(to_string(c.command) + " requires --a and --b");
  const FieldElement a = parse_element(field, *c.a), b = parse_element(field, *c.b);
  if (a.is_zero()) throw UsageError("--a must be nonzero");
  if (c.kind == MapKind::psi && c.k < 1) throw UsageError("psi maps require --k >= 1");
  return MapSpec(c.kind, a, b, c.k);
}

void require_format(const JobConfig& c, std::initializer_list<OutputFormat> allowed) {
  if (std::find(allowed.begin(), allowed.end(), c.format) == allowed.end()) {
    throw UsageError(to_string(c.command) + " does not support --format " + to_string(c.format));
  }
}

RunResult run_orbits(const JobConfig& c) {
  const FieldPtr field = make_field(c);
  const MapSpec map = require_map(c, field);
  const CycleStructure cs = cycle_decomposition(map, c.jobs);
  RunResult r;
  if (cs.point_count() != field->size() + 1) {
    r.exit_code = kExitCheckFailed;
    r.err = "cycles do not partition P^1\n";
  }
  switch (c.format) {
    case OutputFormat::dot: r.out = emit_graph(cs, OutputFormat::dot); break;
    case OutputFormat::json: {
      Json j;
      j["input"] = input_json(c);
      j["field"] = field_json(*field);
      j["map"] = map_json(map);
      j["cycles"] = cycles_json(cs);
      r.out = j.dump(2) + "\n";
      break;
    }
    case OutputFormat::text: {
      std::ostringstream out;
      out << "field " << field_text(*field) << "\n";
      out << "map " << map_text(map) << "\n";
      for (const auto& cyc : cs.cycles) {
        out << std::setw(4) << cyc.size() << ":";
        for (const auto& p : cyc) out << ' ' << label(p);
        out << "\n";
      }
      out << "summary " << summary_text(cs) << "\n";
      r.out = out.str();
      break;
    }
  }
  return r;
}

std::string catalog_text(const std::vector<CycleCatalogEntry>& catalog) {
  std::ostringstream out;
  out << "      d1      d2      m1      m2  ord1  ord2  length  points  cycles\n";
  for (const auto& e : catalog) {
    out << std::setw(8) << e.d1 << std::setw(8) << e.d2 << std::setw(8) << e.m1 << std::setw(8) << e.m2
        << std::setw(6) << e.ord1 << std::setw(6) << e.ord2 << std::setw(8) << e.length << std::setw(8)
        << e.point_count << std::setw(8) << (e.cycle_count ? std::to_string(*e.cycle_count) : "-") << "\n";
  }
  return out.str();
}

RunResult run_curve(const JobConfig& c) {
  require_format(c, {OutputFormat::text, OutputFormat::json});
  const FieldPtr field = make_field(c);
  const MapSpec map = require_map(c, field);
  if (map.kind != MapKind::theta || map.k != 2) throw UsageError("curve requires --map theta --k 2");
  const Curve e = curve_from_map(map.a, map.b);
  const ExtensionEmbedding quad = build_quadratic_extension(field);
  const Curve e2 = e.base_change(quad);

  RunResult r;
  std::optional<GroupCache> cache;
  if (!c.cache_dir.empty()) cache.emplace(c.cache_dir);
  const auto structure = [&](const Curve& curve) {
    return cache ? cache->get(curve, c.jobs) : group_structure(curve, c.jobs);
  };
  const GroupStructure gs = structure(e), gs2 = structure(e2);
  if (cache) {
    for (const auto& w : cache->warnings()) r.err += "warning: " + w + "\n";
  }
  const auto catalog = cycle_catalog(gs, true), catalog2 = cycle_catalog(gs2, false);
  const auto candidates = catalog_lengths(catalog2);

  // observed orbit lengths against the doubling prediction, point by point
  const CycleStructure cs = cycle_decomposition(map, c.jobs);
  std::map<std::uint64_t, std::uint64_t> observed, predicted;
  std::uint64_t agree = 0, points = 0;
  bool in_candidates = true;
  for (const auto& cyc : cs.cycles) {
    in_candidates = in_candidates && candidates.count(cyc.size()) > 0;
    for (const auto& p : cyc) {
      std::uint64_t len = 1;
      if (!p.is_infinity()) {
        const Lift lift = lift_x(e, p.value(), quad);
        len = predict_orbit_length(lift.curve, lift.points.front());
      }
      ++points;
      ++observed[cyc.size()];
      ++predicted[len];
      agree += len == cyc.size() ? 1 : 0;
    }
  }
  const bool ok = agree == points && in_candidates;
  if (!ok) {
    r.exit_code = kExitCheckFailed;
    r.err += "prediction disagrees with the observed cycle structure\n";
  }

  if (c.format == OutputFormat::json) {
    Json j;
    j["input"] = input_json(c);
    j["field"] = field_json(*field);
    j["map"] = map_json(map);
    j["curve"] = {{"a1", label(e.a1())}, {"a2", label(e.a2())}};
    j["base"] = {{"degree", field->degree()}, {"structure", group_json(gs)}, {"catalog", catalog_json(catalog)}};
    j["extension"] = {{"degree", quad.ext()->degree()},
                      {"modulus", to_hex(quad.ext()->modulus())},
                      {"structure", group_json(gs2)},
                      {"catalog", catalog_json(catalog2)}};
    Json cmp = Json::array();
    for (const auto& [len, n] : observed) cmp.push_back({{"length", len}, {"observed", n}, {"predicted", predicted[len]}});
    for (const auto& [len, n] : predicted) {
      if (!observed.count(len)) cmp.push_back({{"length", len}, {"observed", 0}, {"predicted", n}});
    }
    j["prediction"] = {{"candidate_lengths", candidates}, {"comparison", cmp}, {"points", points},
                       {"agreeing", agree}, {"ok", ok}};
    r.out = j.dump(2) + "\n";
    return r;
  }
  std::ostringstream out;
  out << "map " << map_text(map) << " over " << field_text(*field) << "\n";
  out << "curve y^2 + a1 y = x^3 + a2 x with a1 = " << label(e.a1()) << ", a2 = " << label(e.a2()) << "\n";
  out << "over F_2^" << field->degree() << ": order " << gs.order << ", Z/" << gs.n1 << " x Z/" << gs.n2 << "\n";
  out << "over F_2^" << quad.ext()->degree() << ": order " << gs2.order << ", Z/" << gs2.n1 << " x Z/" << gs2.n2 << "\n";
  out << "catalog over F_2^" << field->degree() << ":\n" << catalog_text(catalog);
  out << "catalog over F_2^" << quad.ext()->degree() << ":\n" << catalog_text(catalog2);
  out << "candidate lengths {";
  for (auto it = candidates.begin(); it != candidates.end(); ++it) out << (it == candidates.begin() ? "" : ", ") << *it;
  out << "}\n";
  out << "length  observed  predicted\n";
  std::set<std::uint64_t> lengths;
  for (const auto& [len, n] : observed) lengths.insert(len);
  for (const auto& [len, n] : predicted) lengths.insert(len);
  for (auto len : lengths) {
    out << std::setw(6) << len << std::setw(10) << observed[len] << std::setw(11) << predicted[len] << "\n";
  }
  out << "agreement " << agree << "/" << points << (ok ? "" : "  MISMATCH") << "\n";
  r.out = out.str();
  return r;
}

RunResult run_conjugate(const JobConfig& c) {
  require_format(c, {OutputFormat::text, OutputFormat::json});
  const FieldPtr field = make_field(c);
  const MapSpec map = require_map(c, field);
  if (map.kind != MapKind::psi) throw UsageError("conjugate requires --map psi");
  const ConjugacyData data = solve_conjugation(map);
  const ConjugationCheck check = verify_conjugation(data);
  const FieldPtr& K = data.ext.ext();
  const auto u_dim = linearized_kernel(conjugation_u(data.c2, map.k), K).size();
  const auto v_dim = linearized_kernel(conjugation_v(data.lifted_source()), K).size();

  const auto enumerated = fixed_points(map);
  // tau carries the normal form's fixed points onto psi's; keep the rational ones
  std::vector<std::pair<ProjPoint, ProjPoint>> carried;
  std::vector<ProjPoint> rational;
  for (const auto& p : theta_fixed_points(data.c, map.k)) {
    const ProjPoint image = tau_eval(data, p);
    carried.emplace_back(p, image);
    if (image.is_infinity()) {
      rational.push_back(ProjPoint::infinity(field));
    } else if (auto x = data.ext.restrict(image.value())) {
      rational.push_back(ProjPoint::finite(*x));
    }
  }
  std::sort(rational.begin(), rational.end());
  std::optional<std::uint64_t> from_normal_form;
  if (data.in_base_field()) from_normal_form = fixed_point_count(data);
  const bool ok = check.passed() && rational == enumerated && (!from_normal_form || *from_normal_form == enumerated.size());

  RunResult r;
  if (!ok) {
    r.exit_code = kExitCheckFailed;
    r.err = "conjugation checks failed\n";
  }
  if (c.format == OutputFormat::json) {
    Json j;
    j["input"] = input_json(c);
    j["field"] = field_json(*field);
    j["map"] = map_json(map);
    j["field_of_definition"] = field_json(*K);
    j["embedding_image_of_x"] = to_hex(data.ext.image_of_root().bits());
    j["c"] = label(data.c);
    j["c1"] = label(data.c1);
    j["c2"] = label(data.c2);
    j["c3"] = label(data.c3);
    j["ker_u_dim"] = u_dim;
    j["ker_v_dim"] = v_dim;
    j["system_ok"] = check.system_ok;
    j["special_cases_ok"] = check.special_cases_ok;
    j["points_checked"] = check.points_checked;
    j["mismatches"] = check.mismatches;
    j["exhaustive"] = check.exhaustive;
    Json fp = Json::array();
    for (const auto& p : enumerated) fp.push_back(label(p));
    j["fixed_points"] = fp;
    j["fixed_point_count"] = from_normal_form ? Json(*from_normal_form) : Json(nullptr);
    Json tr = Json::array();
    for (const auto& [p, img] : carried) tr.push_back({{"normal_form", label(p)}, {"tau", label(img)}});
    j["tau_of_normal_form_fixed_points"] = tr;
    j["ok"] = ok;
    r.out = j.dump(2) + "\n";
    return r;
  }
  std::ostringstream out;
  out << "map " << map_text(map) << " over " << field_text(*field) << "\n";
  out << "field of definition " << field_text(*K);
  if (!data.in_base_field()) out << ", x -> " << to_hex(data.ext.image_of_root().bits());
  out << "\n";
  out << "c  = " << label(data.c) << "\nc1 = " << label(data.c1) << "\nc2 = " << label(data.c2)
      << "\nc3 = " << label(data.c3) << "\n";
  out << "ker u: 2^" << u_dim << " elements, ker v: 2^" << v_dim << " elements\n";
  out << "system " << (check.system_ok ? "ok" : "FAILED") << ", special points "
      << (check.special_cases_ok ? "ok" : "FAILED") << "\n";
  out << "psi o tau = tau o theta_{c,0," << map.k << "}: " << check.points_checked - check.mismatches << "/"
      << check.points_checked << " points" << (check.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
  out << "fixed points:";
  for (const auto& p : enumerated) out << ' ' << label(p);
  out << " (" << enumerated.size() << ")\n";
  if (from_normal_form) {
    out << "count from normal form: " << *from_normal_form << "\n";
  } else {
    out << "count from normal form: n/a (data not over the base field)\n";
  }
  for (const auto& [p, img] : carried) out << "tau(" << label(p) << ") = " << label(img) << "\n";
  r.out = out.str();
  return r;
}

RunResult run_bluher(const JobConfig& c) {
  require_format(c, {OutputFormat::text, OutputFormat::json});
  const FieldPtr field = make_field(c);
  if (c.k < 1) throw UsageError("bluher requires --k >= 1");
  const int gd = std::gcd(c.k, field->degree());
  const std::uint64_t big = (std::uint64_t{1} << gd) + 1;
  RunResult r;
  Json j;
  j["input"] = input_json(c);
  j["field"] = field_json(*field);
  j["allowed"] = {0, 1, 2, big};
  std::ostringstream out;
  out << "x^(2^" << c.k << "+1) + x + a over " << field_text(*field) << ", counts in {0, 1, 2, " << big << "}\n";
  if (c.a) {
    const FieldElement a = parse_element(field, *c.a);
    if (a.is_zero()) throw UsageError("--a must be nonzero");
    const auto count = bluher_root_count(a, c.k);
    Json roots = Json::array();
    out << "a = " << label(a) << ": " << count << " roots";
    for (const auto& x : bluher_roots(a, c.k)) {
      roots.push_back(label(x));
      out << ' ' << label(x);
    }
    out << "\n";
    j["a"] = label(a);
    j["roots"] = roots;
  } else {
    std::map<std::uint64_t, std::uint64_t> histogram;
    for (Word bits = 1; bits < field->size(); ++bits) ++histogram[bluher_root_count(FieldElement(field, bits), c.k)];
    Json h = Json::object();
    out << "roots  values of a\n";
    for (const auto& [count, n] : histogram) {
      h[std::to_string(count)] = n;
      out << std::setw(5) << count << std::setw(13) << n << "\n";
    }
    j["histogram"] = h;
  }
  r.out = c.format == OutputFormat::json ? j.dump(2) + "\n" : out.str();
  return r;
}

RunResult run_selftest(const JobConfig& c) {
  require_format(c, {OutputFormat::text, OutputFormat::json});
  RunResult r;
  Json rows = Json::array();
  std::ostringstream out;
  int failures = 0;
  for (const auto& res : run_acceptance(c.jobs)) {
    failures += res.passed ? 0 : 1;
    out << format_line(res) << "\n";
    rows.push_back({{"id", res.id}, {"title", res.title}, {"passed", res.passed}, {"detail", res.detail},
                    {"seconds", res.seconds}, {"limit_seconds", res.limit_seconds}});
  }
  out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  r.out = c.format == OutputFormat::json ? Json{{"criteria", rows}, {"failures", failures}}.dump(2) + "\n" : out.str();
  r.exit_code = failures == 0 ? kExitOk : kExitCheckFailed;
  return r;
}

}  // namespace

JobConfig parse_job_config(const std::vector<std::string>& args) {
  CLI::App app{"Dynamics of x -> a x^(2^k) + b and x -> 1/(a x^(2^k) + b) over binary fields", "f2dyn"};
  app.require_subcommand(1);
  RawOptions raw;
  std::vector<std::pair<Subcommand, CLI::App*>> subs;
  for (Subcommand cmd : kSubcommands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), describe(cmd));
    add_options(*sub, raw);
    subs.emplace_back(cmd, sub);
  }
  std::vector<const char*> argv{"f2dyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    throw HelpRequested(out.str());
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    throw HelpRequested(out.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [cmd, sub] : subs) {
    if (sub->parsed()) return validate(cmd, raw, sub->count("--degree") > 0);
  }
  throw UsageError("no subcommand given");
}

std::vector<std::string> to_args(const JobConfig& c) {
  std::vector<std::string> out{to_string(c.command), "--degree", std::to_string(c.degree)};
  if (c.modulus) out.insert(out.end(), {"--modulus", to_hex(*c.modulus)});
  out.insert(out.end(), {"--map", to_string(c.kind)});
  if (c.a) out.insert(out.end(), {"--a", *c.a});
  if (c.b) out.insert(out.end(), {"--b", *c.b});
  out.insert(out.end(), {"--k", std::to_string(c.k), "--format", to_string(c.format)});
  if (!c.cache_dir.empty()) out.insert(out.end(), {"--cache-dir", c.cache_dir});
  out.insert(out.end(), {"--jobs", std::to_string(c.jobs)});
  return out;
}

FieldPtr make_field(const JobConfig& c) {
  try {
    return c.modulus ? Field::with_modulus(*c.modulus) : Field::make(c.degree);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FieldElement parse_element(const FieldPtr& field, const std::string& text) {
  if (!valid_element_syntax(text)) throw UsageError("not a field element: '" + text + "' (use g^i, 0, 1 or 0x...)");
  if (text == "0") return FieldElement::zero(field);
  if (text == "1") return FieldElement::one(field);
  if (text.rfind("g^", 0) == 0) {
    try {
      return FieldElement::gen_pow(field, std::stoll(text.substr(2)));
    } catch (const std::out_of_range&) {
      throw UsageError("exponent out of range: " + text);
    }
  }
  const Word bits = parse_hex(text);
  if (bits >= field->size()) throw UsageError(text + " is not an element of F_2^" + std::to_string(field->degree()));
  return FieldElement(field, bits);
}

RunResult run(const JobConfig& c) {
  try {
    switch (c.command) {
      case Subcommand::orbits: return run_orbits(c);
      case Subcommand::curve: return run_curve(c);
      case Subcommand::conjugate: return run_conjugate(c);
      case Subcommand::bluher: return run_bluher(c);
      case Subcommand::selftest: return run_selftest(c);
    }
  } catch (const UsageError& e) {
    return {kExitUsage, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const ResourceLimitExceeded& e) {
    return {kExitResource, "", std::string("resource limit: ") + e.what() + "\n"};
  } catch (const InvariantViolation& e) {
    return {kExitCheckFailed, "", std::string("invariant violated: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitCheckFailed, "", std::string("error: ") + e.what() + "\n"};
  }
  return {kExitUsage, "", "unknown subcommand\n"};
}

RunResult run_command_line(const std::vector<std::string>& args) {
  JobConfig config;
  try {
    config = parse_job_config(args);
  } catch (const HelpRequested& h) {
    return {kExitOk, h.what(), ""};
  } catch (const UsageError& e) {
    return {kExitUsage, "", std::string("usage error: ") + e.what() + "\nrun with --help for usage\n"};
  }
  return run(config);
}

}  // namespace f2dyn
