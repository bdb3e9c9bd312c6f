#include "f2dyn/pmaps.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "f2dyn/errors.hpp"
#include "f2dyn/numtheory.hpp"

namespace f2dyn {

namespace {

// P^1 must fit a dense table
constexpr Word kMaxEnumerable = Word{1} << 24;

void require_enumerable(const Field& f) {
  if (f.size() > kMaxEnumerable) {
    throw ResourceLimitExceeded("P^1(F_2^" + std::to_string(f.degree()) + ") is too large to enumerate");
  }
}

}  // namespace

const FieldElement& ProjPoint::value() const {
  if (infinite_) throw std::logic_error("ProjPoint::value on the point at infinity");
  return x_;
}

ProjPoint ProjPoint::from_index(const FieldPtr& field, Word index) {
  if (index == field->size()) return infinity(field);
  return finite(FieldElement(field, index));
}

MapSpec::MapSpec(MapKind kind_, FieldElement a_, FieldElement b_, int k_)
    : kind(kind_), a(std::move(a_)), b(std::move(b_)), k(k_) {
  require_same_field(a, b);
  if (a.is_zero()) throw std::invalid_argument("map coefficient a must be nonzero");
  if (k < 0) throw std::invalid_argument("map exponent k must be non-negative");
  if (kind == MapKind::psi && k < 1) throw std::invalid_argument("psi maps require k >= 1");
}

std::string to_string(MapKind kind) { return kind == MapKind::theta ? "theta" : "psi"; }

MapKind parse_map_kind(const std::string& text) {
  if (text == "theta") return MapKind::theta;
  if (text == "psi") return MapKind::psi;
  throw std::invalid_argument("unknown map kind '" + text + "' (expected theta or psi)");
}

namespace {

// Raw evaluation on dense indices; `inf` is the index of infinity.
struct RawMap {
  const Field& f;
  MapKind kind;
  Word a, b;
  int k;
  Word inf;

  Word operator()(Word x) const {
    if (x == inf) return kind == MapKind::theta ? inf : 0;
    const Word y = f.mul(a, f.frob(x, k)) ^ b;
    if (kind == MapKind::theta) return y;
    return y == 0 ? inf : f.inv(y);
  }
};

RawMap raw(const MapSpec& map) {
  const Field& f = *map.field();
  return {f, map.kind, map.a.bits(), map.b.bits(), map.effective_k(), f.size()};
}

}  // namespace

ProjPoint eval(const MapSpec& map, const ProjPoint& x) {
  require_same_field(*x.field(), *map.field());
  return ProjPoint::from_index(map.field(), raw(map)(x.index()));
}

std::vector<std::uint32_t> successor_table(const MapSpec& map, int jobs) {
  const Field& f = *map.field();
  require_enumerable(f);
  const RawMap r = raw(map);
  const std::size_t count = f.size() + 1;
  std::vector<std::uint32_t> next(count);
  const auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) next[i] = static_cast<std::uint32_t>(r(i));
  };
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, count);
  if (workers == 1) {
    fill(0, count);
    return next;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo < hi) pool.emplace_back(fill, lo, hi);
  }
  for (auto& t : pool) t.join();
  return next;
}

bool is_bijection_check(const MapSpec& map) {
  const auto next = successor_table(map);
  std::vector<bool> hit(next.size(), false);
  for (auto y : next) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

FieldElement IterationClosedForm::apply(const FieldElement& x) const {
  const auto n = static_cast<std::uint64_t>(x.field()->degree());
  const int shift = static_cast<int>((static_cast<std::uint64_t>(q_log) % n) * (m % n) % n);
  return lead * frob_pow(x, shift) + tail;
}

IterationClosedForm closed_form(const FieldElement& a, const FieldElement& b, int q_log, std::uint64_t m) {
  require_same_field(a, b);
  if (a.is_zero()) throw std::invalid_argument("closed_form: a must be nonzero");
  if (q_log < 0) throw std::invalid_argument("closed_form: q must be a power of two");
  if (m == 0) throw std::invalid_argument("closed_form: m must be positive");
  const Field& f = *a.field();
  const std::uint64_t order = f.group_order();
  const std::uint64_t q = std::uint64_t{1} << q_log;

  std::uint64_t s_exact = 0, power = 1;  // s_t and q^t
  std::uint64_t s_mod = 0;               // s_t mod (2^n - 1)
  FieldElement tail = FieldElement::zero(a.field());
  FieldElement b_frob = b;  // b^(q^t)
  for (std::uint64_t t = 0; t < m; ++t) {
    tail = tail + FieldElement(a.field(), f.pow(a.bits(), s_mod)) * b_frob;
    b_frob = frob_pow(b_frob, q_log % f.degree());
    if (__builtin_add_overflow(s_exact, power, &s_exact)) throw ResourceLimitExceeded("closed_form: s_m overflows");
    s_mod = (s_mod + nt::powmod(q, t, order == 1 ? 1 : order)) % (order == 1 ? 1 : order);
    if (t + 1 < m && __builtin_mul_overflow(power, q, &power)) {
      throw ResourceLimitExceeded("closed_form: q^m overflows");
    }
  }
  FieldElement lead(a.field(), f.pow(a.bits(), s_mod));
  return {m, q_log, s_exact, std::move(lead), std::move(tail)};
}

// -- reduction to quartic maps ---------------------------------------------------

namespace {

struct QuarticTarget {
  Parity parity;
  int steps;
  FieldElement lead;
  FieldElement tail;
};

QuarticTarget quartic_target(const FieldElement& a, const FieldElement& b, int k) {
  if (k < 2) throw std::invalid_argument("reduce_to_quartic requires k >= 2");
  if (a.is_zero()) throw std::invalid_argument("reduce_to_quartic: a must be nonzero");
  require_same_field(a, b);
  if (k % 2 == 0) return {Parity::even, k / 2, a, b};
  // theta^2(x) = a^(2^k + 1) x^(2^(2k)) + a b^(2^k) + b
  return {Parity::odd, k, frob_pow(a, k) * a, a * frob_pow(b, k) + b};
}

// s_j = 1 + 4 + ... + 4^(j-1) modulo the group order, as a positive exponent
std::uint64_t quartic_exponent(int steps, std::uint64_t order) {
  if (order == 1) return 1;
  std::uint64_t s = 0, p = 1;
  for (int i = 0; i < steps; ++i) {
    s = (s + p) % order;
    p = nt::mulmod(p, 4, order);
  }
  return s == 0 ? order : s;
}

LinearizedPoly quartic_tail_poly(const FieldElement& c, int steps) {
  LinearizedPoly L{2, {}};
  FieldElement coef = FieldElement::one(c.field());  // c^(s_i)
  for (int i = 0; i < steps; ++i) {
    L.coeffs.push_back(coef);
    coef = c * frob_pow(coef, 2);
  }
  return L;
}

}  // namespace

QuarticReduction reduce_to_quartic(const FieldElement& a, const FieldElement& b, int k, int max_degree) {
  const FieldPtr& base = a.field();
  if (k >= 0) {
    while (k < 2) k += base->degree();
  }
  const QuarticTarget target = quartic_target(a, b, k);
  for (int t = 1; base->degree() * t <= std::min(max_degree, kMaxFieldDegree); ++t) {
    ExtensionEmbedding ext = build_extension(base, t);
    const FieldElement lead = ext(target.lead);
    const FieldElement tail = ext(target.tail);
    const std::uint64_t s = quartic_exponent(target.steps, ext.ext()->group_order());
    for (const auto& c : solve_root_equation(lead, s)) {
      if (auto sol = linearized_solve(quartic_tail_poly(c, target.steps), tail, ext.ext())) {
        return {c, sol->particular, std::move(ext), target.parity, target.steps, k};
      }
    }
  }
  throw ResourceLimitExceeded("reduce_to_quartic: no solution up to extension degree " + std::to_string(max_degree));
}

bool satisfies_quartic_equations(const FieldElement& a, const FieldElement& b, int k, const FieldElement& c,
                                 const FieldElement& d) {
  const QuarticTarget target = quartic_target(a, b, k);
  require_same_field(a, c);
  require_same_field(c, d);
  if (c.is_zero()) return false;
  const std::uint64_t s = quartic_exponent(target.steps, c.field()->group_order());
  return pow(c, static_cast<std::int64_t>(s)) == target.lead && quartic_tail_poly(c, target.steps)(d) == target.tail;
}

bool verify_quartic_reduction(const FieldElement& a, const FieldElement& b, int k, const QuarticReduction& red) {
  const MapSpec original = MapSpec::theta(a, b, k);
  const MapSpec quartic = MapSpec::theta(red.c, red.d, 2);
  const int applications = red.parity == Parity::even ? 1 : 2;
  const FieldPtr& base = a.field();
  require_enumerable(*base);
  for (Word i = 0; i <= base->size(); ++i) {
    ProjPoint lhs = ProjPoint::from_index(base, i);
    for (int r = 0; r < applications; ++r) lhs = eval(original, lhs);
    const ProjPoint start = ProjPoint::from_index(base, i);
    ProjPoint rhs = start.is_infinity() ? ProjPoint::infinity(red.ext.ext()) : ProjPoint::finite(red.ext(start.value()));
    for (int r = 0; r < red.steps; ++r) rhs = eval(quartic, rhs);
    const ProjPoint lhs_ext =
        lhs.is_infinity() ? ProjPoint::infinity(red.ext.ext()) : ProjPoint::finite(red.ext(lhs.value()));
    if (!(lhs_ext == rhs)) return false;
  }
  return true;
}

// -- orbits and cycles -------------------------------------------------------------

std::vector<ProjPoint> orbit(const MapSpec& map, const ProjPoint& x0) {
  require_same_field(*x0.field(), *map.field());
  std::vector<ProjPoint> out{x0};
  // a bijection of a finite set, so the walk returns to x0
  const Word limit = map.field()->size() + 1;
  for (ProjPoint x = eval(map, x0); !(x == x0); x = eval(map, x)) {
    out.push_back(x);
    if (out.size() > limit) throw InvariantViolation("orbit did not close; map is not a bijection");
  }
  return out;
}

std::vector<ProjPoint> fixed_points(const MapSpec& map) {
  const auto next = successor_table(map);
  std::vector<ProjPoint> out;
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (next[i] == i) out.push_back(ProjPoint::from_index(map.field(), i));
  }
  return out;
}

std::size_t CycleStructure::point_count() const {
  std::size_t total = 0;
  for (const auto& c : cycles) total += c.size();
  return total;
}

std::vector<std::size_t> CycleStructure::length_by_index() const {
  std::vector<std::size_t> out(point_count(), 0);
  for (const auto& c : cycles) {
    for (const auto& p : c) out.at(p.index()) = c.size();
  }
  return out;
}

CycleStructure cycle_decomposition(const MapSpec& map, int jobs) {
  const auto next = successor_table(map, jobs);
  const FieldPtr& field = map.field();
  std::vector<bool> seen(next.size(), false);
  CycleStructure cs;
  for (std::size_t start = 0; start < next.size(); ++start) {
    if (seen[start]) continue;
    std::vector<ProjPoint> cycle;
    std::size_t x = start;
    while (!seen[x]) {
      seen[x] = true;
      cycle.push_back(ProjPoint::from_index(field, x));
      x = next[x];
    }
    if (x != start) throw InvariantViolation("cycle_decomposition: map is not a bijection");
    ++cs.summary[cycle.size()];
    cs.cycles.push_back(std::move(cycle));
  }
  return cs;
}

std::uint64_t orbit_length_relation(std::uint64_t l1, std::uint64_t m) {
  if (l1 == 0 || m == 0) throw std::invalid_argument("orbit_length_relation: arguments must be positive");
  return l1 / nt::gcd(l1, m);
}

std::set<std::uint64_t> odd_k_length_options(std::uint64_t l3, Parity parity) {
  if (l3 == 0) throw std::invalid_argument("odd_k_length_options: l3 must be positive");
  if (parity == Parity::even) return {l3};
  return {l3, 2 * l3};
}

}  // namespace f2dyn
