#include "f2dyn/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "f2dyn/conjugacy.hpp"
#include "f2dyn/errors.hpp"
#include "f2dyn/numtheory.hpp"
#include "f2dyn/pmaps.hpp"
#include "f2dyn/report.hpp"
#include "f2dyn/sscurve.hpp"

namespace f2dyn {

namespace {

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::string first_failure;

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = describe();
  }
  void expect(bool ok, const char* what) {
    expect(ok, [&] { return std::string(what); });
  }
};

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome finish(const Tally& t, const std::string& summary) {
  if (t.failed == 0) return {true, summary};
  return {false, std::to_string(t.failed) + "/" + std::to_string(t.checked) + " checks failed; first: " +
                     t.first_failure};
}

std::string labels(const std::vector<ProjPoint>& pts) {
  std::string out;
  for (const auto& p : pts) out += (out.empty() ? "" : " ") + label(p);
  return out;
}

std::set<std::string> label_set(const std::vector<ProjPoint>& pts) {
  std::set<std::string> out;
  for (const auto& p : pts) out.insert(label(p));
  return out;
}

std::string structure_text(const GroupStructure& gs) {
  return "(" + std::to_string(gs.n1) + "," + std::to_string(gs.n2) + ")";
}

std::string set_text(const std::set<std::uint64_t>& s) {
  std::string out = "{";
  for (auto v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

// every point of P^1 is hit exactly once
bool is_permutation(const std::vector<std::uint32_t>& next) {
  std::vector<bool> hit(next.size(), false);
  for (auto y : next) {
    if (y >= next.size() || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

// -- 1 ---------------------------------------------------------------------------

Outcome quadratic_map_cycles(int jobs) {
  Tally t;
  auto F = Field::make(5);
  const auto g = [&](std::int64_t e) { return FieldElement::gen_pow(F, e); };
  t.expect(F->modulus() == 0x25, "modulus is not x^5+x^2+1");
  t.expect(F->primitive_bits() == 0x2, "g is not the class of x");
  t.expect(g(1) + g(3) == g(6), "g + g^3 != g^6");
  t.expect(g(25) + g(3) == g(10), "g^25 + g^3 != g^10");

  const MapSpec theta = MapSpec::theta(g(1), g(3), 2);
  const CycleStructure cs = cycle_decomposition(theta, jobs);
  const std::map<std::size_t, std::size_t> want{{1, 1}, {2, 1}, {10, 3}};
  t.expect(cs.summary == want, [&] { return "summary " + summary_text(cs); });
  t.expect(cs.point_count() == 33, "cycles do not partition P^1");
  for (const auto& c : cs.cycles) {
    if (c.size() == 2) {
      t.expect(label_set(c) == std::set<std::string>{"g^19", "g^26"}, [&] { return "2-cycle " + labels(c); });
    }
    if (c.size() == 1) t.expect(c.front().is_infinity(), [&] { return "fixed point " + labels(c); });
  }
  const auto o = orbit(theta, ProjPoint::finite(g(0)));
  t.expect(o.size() >= 3 && o[1] == ProjPoint::finite(g(6)) && o[2] == ProjPoint::finite(g(10)),
           [&] { return "orbit of g^0 is " + labels(o); });
  return finish(t, "summary " + summary_text(cs) + ", 2-cycle g^19 <-> g^26, orbit g^0 -> g^6 -> g^10");
}

// -- 2 ---------------------------------------------------------------------------

Outcome quadratic_map_curve(int jobs) {
  Tally t;
  auto F = Field::make(5);
  const auto g = [&](std::int64_t e) { return FieldElement::gen_pow(F, e); };
  const Curve e = curve_from_map(g(1), g(3));
  const Curve e2 = e.base_change(build_quadratic_extension(F));
  const auto n = point_count(e, jobs), n2 = point_count(e2, jobs);
  t.expect(n == 41, [&] { return "order over F_32 is " + std::to_string(n); });
  t.expect(n2 == 1025, [&] { return "order over F_1024 is " + std::to_string(n2); });

  const GroupStructure gs = group_structure(e, jobs);
  t.expect(gs == GroupStructure{41, 1, 41}, [&] { return "structure " + structure_text(gs); });
  std::uint64_t points10 = 0, cycles10 = 0;
  for (const auto& entry : cycle_catalog(gs, true)) {
    t.expect(entry.length == 1 || entry.length == 10, [&] { return "unexpected length " + std::to_string(entry.length); });
    if (entry.length == 10) {
      points10 += entry.point_count;
      cycles10 += entry.cycle_count.value_or(0);
    }
  }
  t.expect(points10 == 40 && cycles10 == 2, [&] {
    return std::to_string(points10) + " points in " + std::to_string(cycles10) + " cycles of length 10";
  });

  const GroupStructure gs2 = group_structure(e2, jobs);
  t.expect(gs2 == GroupStructure{1025, 1, 1025}, [&] { return "extension structure " + structure_text(gs2); });
  std::map<std::uint64_t, std::uint64_t> length_at;
  for (const auto& entry : cycle_catalog(gs2, false)) {
    if (entry.d1 == 1) length_at[entry.d2] = entry.length;
  }
  t.expect(length_at[205] == 2, [&] { return "length at divisor 205 is " + std::to_string(length_at[205]); });
  t.expect(length_at[25] == 10, [&] { return "length at divisor 25 is " + std::to_string(length_at[25]); });
  return finish(t, "orders 41 / 1025, catalog (1,41): 40 points in 2 cycles of length 10; (1,1025): d=205 -> 2, d=25 -> 10");
}

// -- 3 ---------------------------------------------------------------------------

Outcome cubic_map_reduction(int jobs) {
  Tally t;
  auto F = Field::make(5);
  const auto g = [&](std::int64_t e) { return FieldElement::gen_pow(F, e); };
  const auto a = g(7), b = g(3);

  const QuarticReduction red = reduce_to_quartic(a, b, 3);
  t.expect(satisfies_quartic_equations(red.ext(a), red.ext(b), red.k, red.c, red.d), "solver output violates the equations");
  t.expect(verify_quartic_reduction(a, b, 3, red), "solver output fails the pointwise check");
  t.expect(satisfies_quartic_equations(a, b, 3, g(3), g(15)), "c = g^3, d = g^15 violates the equations");
  const QuarticReduction known{g(3), g(15), ExtensionEmbedding::identity(F), Parity::odd, 3, 3};
  t.expect(verify_quartic_reduction(a, b, 3, known), "c = g^3, d = g^15 fails the pointwise check");

  const Curve e(g(14), g(6));
  const Curve e2 = e.base_change(build_quadratic_extension(F));
  const auto n = point_count(e, jobs);
  t.expect(n == 33, [&] { return "order over F_32 is " + std::to_string(n); });
  const GroupStructure gs = group_structure(e, jobs), gs2 = group_structure(e2, jobs);
  t.expect(gs2 == GroupStructure{1089, 33, 33}, [&] { return "extension structure " + structure_text(gs2); });
  const auto l1 = catalog_candidate_lengths(gs), l2 = catalog_candidate_lengths(gs2);
  t.expect(l1 == std::set<std::uint64_t>{1, 5}, [&] { return "base lengths " + set_text(l1); });
  t.expect(l2 == std::set<std::uint64_t>{1, 2, 5, 10}, [&] { return "extension lengths " + set_text(l2); });

  const CycleStructure cs = cycle_decomposition(MapSpec::theta(a, b, 3), jobs);
  t.expect(cs.summary == std::map<std::size_t, std::size_t>{{1, 3}, {5, 6}}, [&] { return "summary " + summary_text(cs); });
  std::vector<ProjPoint> fixed;
  for (const auto& c : cs.cycles) {
    if (c.size() == 1) fixed.push_back(c.front());
  }
  t.expect(label_set(fixed) == std::set<std::string>{"g^10", "g^18", "inf"}, [&] { return "fixed points " + labels(fixed); });
  return finish(t, "c = " + label(red.c) + ", d = " + label(red.d) + " over F_2^" +
                       std::to_string(red.ext.ext()->degree()) + "; structures " + structure_text(gs) + " / " +
                       structure_text(gs2) + ", lengths " + set_text(l1) + " / " + set_text(l2) + "; sigma " +
                       summary_text(cs));
}

// -- 4 ---------------------------------------------------------------------------

Outcome inversion_map_conjugacy(int jobs) {
  Tally t;
  auto F = Field::make(5);
  const auto g = [&](std::int64_t e) { return FieldElement::gen_pow(F, e); };
  const MapSpec psi = MapSpec::psi(g(1), g(2), 2);

  const ConjugacyData solved = solve_conjugation(psi);
  t.expect(satisfies_conjugation_system(solved), "solver output violates the system");
  const ConjugacyData known{psi, ExtensionEmbedding::identity(F), g(12), g(1), g(3), g(8)};
  t.expect(satisfies_conjugation_system(known), "(g, g^3, g^8, g^12) violates the system");
  const ConjugationCheck check = verify_conjugation(known);
  t.expect(check.passed() && check.exhaustive && check.points_checked == 33, [&] {
    return "pointwise check: " + std::to_string(check.mismatches) + " mismatches in " +
           std::to_string(check.points_checked) + " points";
  });
  t.expect(verify_conjugation(solved).passed(), "solver output fails the pointwise check");

  const auto count = fixed_point_count(known);
  t.expect(count == 3, [&] { return "fixed point count " + std::to_string(count); });
  const auto fixed = fixed_points(psi);
  t.expect(label_set(fixed) == std::set<std::string>{"g^14", "g^24", "g^28"}, [&] { return "fixed points " + labels(fixed); });
  const ProjPoint tau0 = tau_eval(known, ProjPoint::finite(FieldElement::zero(F)));
  const ProjPoint tau_inf = tau_eval(known, ProjPoint::infinity(F));
  t.expect(tau0 == ProjPoint::finite(g(24)), [&] { return "tau(0) = " + label(tau0); });
  t.expect(tau_inf == ProjPoint::finite(g(28)), [&] { return "tau(inf) = " + label(tau_inf); });

  const Curve e(g(25), FieldElement::zero(F));
  const GroupStructure gs = group_structure(e, jobs);
  const GroupStructure gs2 = group_structure(e.base_change(build_quadratic_extension(F)), jobs);
  t.expect(gs == GroupStructure{33, 1, 33}, [&] { return "structure " + structure_text(gs); });
  t.expect(gs2 == GroupStructure{1089, 33, 33}, [&] { return "extension structure " + structure_text(gs2); });
  return finish(t, "solver (c1,c2,c3,c) = (" + label(solved.c1) + ", " + label(solved.c2) + ", " + label(solved.c3) +
                       ", " + label(solved.c) + "), 33/33 points, 3 fixed points, structures " + structure_text(gs) +
                       " / " + structure_text(gs2));
}

// -- 5 ---------------------------------------------------------------------------

Outcome curve_prediction(int jobs) {
  Tally t;
  std::mt19937_64 rng(20240501);
  std::uint64_t points = 0;
  for (int n = 2; n <= 8; ++n) {
    auto F = Field::make(n);
    const ExtensionEmbedding ext = build_quadratic_extension(F);
    std::uniform_int_distribution<Word> nonzero(1, F->size() - 1), any(0, F->size() - 1);
    for (int trial = 0; trial < 25; ++trial) {
      const FieldElement a(F, nonzero(rng)), b(F, any(rng));
      const MapSpec theta = MapSpec::theta(a, b, 2);
      const CycleStructure cs = cycle_decomposition(theta, jobs);
      const Curve e = curve_from_map(a, b);
      for (const auto& c : cs.cycles) {
        for (const auto& p : c) {
          ++points;
          std::uint64_t predicted = 0;
          if (p.is_infinity()) {
            predicted = predict_orbit_length(e, CurvePoint::identity(F));
          } else {
            const Lift lift = lift_x(e, p.value(), ext);
            predicted = predict_orbit_length(lift.curve, lift.points.front());
          }
          t.expect(predicted == c.size(), [&] {
            return "n=" + std::to_string(n) + " a=" + label(a) + " b=" + label(b) + " x=" + label(p) + ": observed " +
                   std::to_string(c.size()) + ", predicted " + std::to_string(predicted);
          });
        }
      }
    }
  }
  return finish(t, std::to_string(points) + " points over 175 maps, all agree");
}

// -- 6 ---------------------------------------------------------------------------

Outcome iteration_closed_form(int) {
  Tally t;
  std::uint64_t forms = 0;
  for (int n : {4, 5}) {
    auto F = Field::make(n);
    const Field& f = *F;
    for (Word a = 1; a < f.size(); ++a) {
      for (Word b = 0; b < f.size(); ++b) {
        for (int q_log = 1; q_log <= 3; ++q_log) {
          for (std::uint64_t m = 1; m <= 12; ++m) {
            const IterationClosedForm cf = closed_form(FieldElement(F, a), FieldElement(F, b), q_log, m);
            ++forms;
            for (Word x = 0; x < f.size(); ++x) {
              Word y = x;
              for (std::uint64_t i = 0; i < m; ++i) y = f.mul(a, f.frob(y, q_log)) ^ b;
              t.expect(cf.apply(FieldElement(F, x)).bits() == y, [&] {
                return "n=" + std::to_string(n) + " a=" + to_hex(a) + " b=" + to_hex(b) + " q=2^" +
                       std::to_string(q_log) + " m=" + std::to_string(m) + " x=" + to_hex(x);
              });
            }
          }
        }
      }
    }
  }
  return finish(t, std::to_string(forms) + " closed forms, " + std::to_string(t.checked) + " points");
}

// -- 7 ---------------------------------------------------------------------------

Outcome fixed_point_formula(int) {
  Tally t;
  std::uint64_t maps = 0, applicable = 0;
  for (int n = 1; n <= 8; ++n) {
    auto F = Field::make(n);
    for (int k = 1; k <= 3; ++k) {
      for (Word a = 1; a < F->size(); ++a) {
        for (Word b = 0; b < F->size(); ++b) {
          ++maps;
          const MapSpec psi = MapSpec::psi(FieldElement(F, a), FieldElement(F, b), k);
          const auto data = try_solve_conjugation(psi, n);
          if (!data) continue;
          ++applicable;
          const auto predicted = fixed_point_count(*data);
          const auto observed = fixed_points(psi).size();
          t.expect(predicted == observed, [&] {
            return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " a=" + to_hex(a) + " b=" + to_hex(b) +
                   ": normal form " + std::to_string(predicted) + ", enumeration " + std::to_string(observed);
          });
        }
      }
    }
  }
  return finish(t, std::to_string(applicable) + " of " + std::to_string(maps) +
                       " maps have conjugacy data over the base field; all agree");
}

// -- 8 ---------------------------------------------------------------------------

Outcome bluher_membership(int) {
  Tally t;
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (int n = 1; n <= 8; ++n) {
    auto F = Field::make(n);
    for (int k = 1; k <= 3; ++k) {
      const int gd = std::gcd(k, n);
      const std::uint64_t big = (std::uint64_t{1} << gd) + 1;
      for (Word bits = 1; bits < F->size(); ++bits) {
        const FieldElement a(F, bits);
        const auto where = [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " a=" + to_hex(bits); };
        const auto count = static_cast<std::uint64_t>(bluher_roots(a, k).size());
        ++histogram[count];
        t.expect(count <= 2 || count == big, [&] { return where() + ": " + std::to_string(count) + " roots"; });
        if (gd == 1) t.expect(count <= 1 || count == 3, [&] { return where() + ": " + std::to_string(count) + " roots"; });
        const FieldElement ai = inv(a);
        std::uint64_t finite_fixed = 0;
        for (const auto& p : fixed_points(MapSpec::psi(ai, ai, k))) finite_fixed += p.is_infinity() ? 0 : 1;
        t.expect(finite_fixed == count, [&] { return where() + ": " + std::to_string(finite_fixed) + " finite fixed points"; });
        try {
          t.expect(bluher_root_count(a, k) == count, [&] { return where() + ": bluher_root_count disagrees"; });
        } catch (const InvariantViolation& e) {
          t.expect(false, [&] { return where() + ": " + e.what(); });
        }
      }
    }
  }
  std::string hist;
  for (const auto& [c, m] : histogram) hist += (hist.empty() ? "" : ", ") + std::to_string(c) + ":" + std::to_string(m);
  return finish(t, "root-count histogram {" + hist + "}");
}

// -- 9 ---------------------------------------------------------------------------

Outcome structural_invariants(int jobs) {
  Tally t;
  std::uint64_t maps = 0, curves = 0, structures = 0, u_tested = 0, u_split = 0, v_tested = 0, v_split = 0;
  std::mt19937_64 rng(77);
  for (int n = 1; n <= 8; ++n) {
    auto F = Field::make(n);
    const auto where = [&](Word a, Word b, int k) {
      return "n=" + std::to_string(n) + " a=" + to_hex(a) + " b=" + to_hex(b) + " k=" + std::to_string(k);
    };

    // every map permutes P^1 and its cycles cover all 2^n + 1 points
    for (Word a = 1; a < F->size(); ++a) {
      for (Word b = 0; b < F->size(); ++b) {
        for (int k = 0; k <= 3; ++k) {
          for (MapKind kind : {MapKind::theta, MapKind::psi}) {
            if (kind == MapKind::psi && k == 0) continue;
            const MapSpec map(kind, FieldElement(F, a), FieldElement(F, b), k);
            ++maps;
            const auto next = successor_table(map);
            t.expect(is_permutation(next), [&] { return to_string(kind) + " " + where(a, b, k) + " is not a bijection"; });
            std::uint64_t total = 0;
            std::vector<bool> seen(next.size(), false);
            for (std::size_t s = 0; s < next.size(); ++s) {
              for (std::size_t x = s; !seen[x]; x = next[x]) {
                seen[x] = true;
                ++total;
              }
            }
            t.expect(total == F->size() + 1, [&] { return to_string(kind) + " " + where(a, b, k) + ": cycles cover " +
                                                          std::to_string(total) + " points"; });
          }
        }
      }
    }
    // the library decomposition agrees on a sample
    std::uniform_int_distribution<Word> nonzero(1, F->size() - 1), any(0, F->size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const MapSpec map = MapSpec::psi(FieldElement(F, nonzero(rng)), FieldElement(F, any(rng)), 1 + trial % 3);
      const auto cs = cycle_decomposition(map, jobs);
      t.expect(cs.point_count() == F->size() + 1, "cycle_decomposition does not partition P^1");
    }

    // odd orders for every curve of the quadratic maps
    for (Word a = 1; a < F->size(); ++a) {
      for (Word b = 0; b < F->size(); ++b) {
        const Curve e = curve_from_map(FieldElement(F, a), FieldElement(F, b));
        ++curves;
        const auto order = point_count(e);
        t.expect(order % 2 == 1, [&] { return "curve of " + where(a, b, 2) + " has order " + std::to_string(order); });
      }
    }
    // n1 | gcd(n2, 2^n - 1) over the field and its quadratic extension
    const ExtensionEmbedding quad = build_quadratic_extension(F);
    for (int trial = 0; trial < 12; ++trial) {
      const Curve e = curve_from_map(FieldElement(F, nonzero(rng)), FieldElement(F, any(rng)));
      for (const Curve& c : {e, e.base_change(quad)}) {
        ++structures;
        const GroupStructure gs = group_structure(c, jobs);
        const std::uint64_t units = c.field()->group_order();
        t.expect(gs.n1 * gs.n2 == gs.order && nt::gcd(gs.n2, units) % gs.n1 == 0,
                 [&] { return "structure " + structure_text(gs) + " over F_2^" + std::to_string(c.field()->degree()); });
      }
    }

    // ker u and ker v: never more than q resp. q^2 elements, exactly that many
    // once the extension contains all roots (searched up to degree 32)
    std::vector<ExtensionEmbedding> towers;
    for (int s = 1; n * s <= kMaxFieldDegree; ++s) towers.push_back(build_extension(F, s));
    for (int k = 1; k <= 3; ++k) {
      const std::size_t q_dim = static_cast<std::size_t>(k);
      for (int trial = 0; trial < 6; ++trial) {
        const Word c2 = nonzero(rng), a = nonzero(rng), b = any(rng);
        bool u_full = false, v_full = false;
        for (const auto& ext : towers) {
          const FieldPtr& K = ext.ext();
          const auto ku = linearized_kernel(LinearizedPoly{k, {FieldElement::one(K), ext(FieldElement(F, c2))}}, K);
          const auto kv = linearized_kernel(
              LinearizedPoly{k, {FieldElement::one(K), ext(FieldElement(F, b)), ext(FieldElement(F, a))}}, K);
          t.expect(ku.size() <= q_dim, [&] { return "ker u too large over F_2^" + std::to_string(K->degree()); });
          t.expect(kv.size() <= 2 * q_dim, [&] { return "ker v too large over F_2^" + std::to_string(K->degree()); });
          u_full = u_full || ku.size() == q_dim;
          v_full = v_full || kv.size() == 2 * q_dim;
        }
        ++u_tested;
        ++v_tested;
        u_split += u_full ? 1 : 0;
        v_split += v_full ? 1 : 0;
      }
    }
  }
  std::ostringstream out;
  out << maps << " maps bijective with full partitions, " << curves << " curves of odd order, " << structures
      << " structures with n1 | gcd(n2, 2^n-1); ker u full size in " << u_split << "/" << u_tested << ", ker v in "
      << v_split << "/" << v_tested << " cases within degree 32, never larger";
  return finish(t, out.str());
}

struct CriterionDef {
  const char* title;
  double limit_seconds;
  Outcome (*run)(int jobs);
};

const CriterionDef kCriteria[kAcceptanceCriteria] = {
    {"cycle structure of theta_{g,g^3,2} over F_32", 1, quadratic_map_cycles},
    {"curve counts and catalogs for theta_{g,g^3,2}", 5, quadratic_map_curve},
    {"quartic reduction, curve (g^14, g^6) and sigma = theta_{g^7,g^3,3}", 5, cubic_map_reduction},
    {"conjugation of psi_{g,g^2,2} and its fixed points", 5, inversion_map_conjugacy},
    {"curve prediction of theta_{a,b,2} orbit lengths, n = 2..8", 60, curve_prediction},
    {"closed-form iteration over F_16 and F_32", 30, iteration_closed_form},
    {"fixed-point count from the normal form, n <= 8, k <= 3", 120, fixed_point_formula},
    {"Bluher root counts, n <= 8, k <= 3", 60, bluher_membership},
    {"structural invariants, n <= 8", 60, structural_invariants},
};

}  // namespace

CriterionResult run_criterion(int id, int jobs) {
  if (id < 1 || id > kAcceptanceCriteria) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = def.title;
  r.limit_seconds = def.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = def.run(jobs);
    r.passed = o.ok;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds >= r.limit_seconds) {
    r.passed = false;
    r.detail += " [time limit exceeded]";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(int jobs) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kAcceptanceCriteria; ++id) out.push_back(run_criterion(id, jobs));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s, limit %g s", r.seconds, r.limit_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + " (" + timing +
         "): " + r.detail;
}

}  // namespace f2dyn
