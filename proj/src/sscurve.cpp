#include "f2dyn/sscurve.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "f2dyn/errors.hpp"
#include "f2dyn/numtheory.hpp"

namespace f2dyn {

namespace {

// Largest group we are willing to enumerate point by point.
constexpr std::uint64_t kMaxEnumeratedPoints = std::uint64_t{1} << 22;

LinearizedPoly artin_schreier(const Curve& curve) {
  // y^2 + a1 y
  return LinearizedPoly{1, {curve.a1(), FieldElement::one(curve.field())}};
}

FieldElement curve_rhs(const Curve& curve, const FieldElement& x) { return x * x * x + curve.a2() * x; }

// Group law without on-curve validation.
//   chord:   lambda = (y1 + y2) / (x1 + x2), x3 = lambda^2 + x1 + x2
//   tangent: lambda = (x1^2 + a2) / a1,      x3 = lambda^2
//   both:    y3 = lambda (x1 + x3) + y1 + a1
CurvePoint add_unchecked(const Curve& curve, const CurvePoint& p, const CurvePoint& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  FieldElement lambda = FieldElement::zero(curve.field());
  FieldElement x3 = lambda;
  if (p.x() == q.x()) {
    if (q.y() == p.y() + curve.a1()) return CurvePoint::identity(curve.field());
    lambda = (p.x() * p.x() + curve.a2()) / curve.a1();
    x3 = lambda * lambda;
  } else {
    lambda = (p.y() + q.y()) / (p.x() + q.x());
    x3 = lambda * lambda + p.x() + q.x();
  }
  FieldElement y3 = lambda * (p.x() + x3) + p.y() + curve.a1();
  return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint mul_unchecked(const Curve& curve, std::uint64_t n, CurvePoint p) {
  CurvePoint acc = CurvePoint::identity(curve.field());
  while (n > 0) {
    if (n & 1U) acc = add_unchecked(curve, acc, p);
    p = add_unchecked(curve, p, p);
    n >>= 1U;
  }
  return acc;
}

void require_on_curve(const Curve& curve, const CurvePoint& p) {
  if (!on_curve(curve, p)) throw std::invalid_argument("point is not on the curve");
}

std::uint64_t point_key(const CurvePoint& p) {
  if (p.is_identity()) return ~std::uint64_t{0};
  return p.x().bits() << 32U | p.y().bits();
}

}  // namespace

Curve::Curve(FieldElement a1, FieldElement a2) : a1_(std::move(a1)), a2_(std::move(a2)) {
  require_same_field(a1_, a2_);
  if (a1_.is_zero()) throw std::invalid_argument("curve coefficient a1 must be nonzero");
}

Curve Curve::base_change(const ExtensionEmbedding& emb) const { return {emb(a1_), emb(a2_)}; }

Curve curve_from_map(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  if (a.is_zero()) throw std::invalid_argument("curve_from_map: a must be nonzero");
  const FieldElement a1_sq = inv(a);
  return {sqrt(a1_sq), sqrt(a1_sq * b)};
}

FieldElement duplication_x(const Curve& curve, const FieldElement& x0) {
  const FieldElement x2 = x0 * x0;
  return (x2 * x2 + curve.a2() * curve.a2()) / (curve.a1() * curve.a1());
}

bool on_curve(const Curve& curve, const CurvePoint& p) {
  if (!p.x().field()->same_as(*curve.field())) return false;
  if (p.is_identity()) return true;
  return p.y() * p.y() + curve.a1() * p.y() == curve_rhs(curve, p.x());
}

CurvePoint negate(const Curve& curve, const CurvePoint& p) {
  require_on_curve(curve, p);
  if (p.is_identity()) return p;
  return CurvePoint::affine(p.x(), p.y() + curve.a1());
}

CurvePoint point_add(const Curve& curve, const CurvePoint& p, const CurvePoint& q) {
  require_on_curve(curve, p);
  require_on_curve(curve, q);
  return add_unchecked(curve, p, q);
}

CurvePoint point_double(const Curve& curve, const CurvePoint& p) { return point_add(curve, p, p); }

CurvePoint scalar_mul(const Curve& curve, std::uint64_t n, const CurvePoint& p) {
  require_on_curve(curve, p);
  return mul_unchecked(curve, n, p);
}

bool same_up_to_sign(const Curve& curve, const CurvePoint& p, const CurvePoint& q) {
  (void)curve;
  if (p.is_identity() || q.is_identity()) return p.is_identity() && q.is_identity();
  return p.x() == q.x();
}

Lift lift_x(const Curve& curve, const FieldElement& x0, const ExtensionEmbedding& ext) {
  require_same_field(*x0.field(), *curve.field());
  if (auto sol = LinearizedSolver(artin_schreier(curve), curve.field()).solve(curve_rhs(curve, x0))) {
    const FieldElement y = sol->particular;
    return {curve, {CurvePoint::affine(x0, y), CurvePoint::affine(x0, y + curve.a1())}, true};
  }
  Curve big = curve.base_change(ext);
  const FieldElement x = ext(x0);
  auto sol = LinearizedSolver(artin_schreier(big), big.field()).solve(curve_rhs(big, x));
  if (!sol) throw InvariantViolation("lift_x: x-coordinate does not lift to the extension");
  const FieldElement y = sol->particular;
  return {big, {CurvePoint::affine(x, y), CurvePoint::affine(x, y + big.a1())}, false};
}

std::uint64_t point_count(const Curve& curve, int jobs) {
  const FieldPtr& field = curve.field();
  const Word size = field->size();
  if (size > kMaxEnumeratedPoints) throw ResourceLimitExceeded("point_count: field too large to scan");
  const LinearizedSolver solver(artin_schreier(curve), field);
  const auto count_range = [&](Word lo, Word hi) {
    std::uint64_t c = 0;
    for (Word x = lo; x < hi; ++x) {
      if (solver.solve(curve_rhs(curve, FieldElement(field, x)))) c += 2;
    }
    return c;
  };
  const auto workers = static_cast<Word>(std::clamp(jobs, 1, 64));
  if (workers == 1) return 1 + count_range(0, size);
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  const Word chunk = (size + workers - 1) / workers;
  for (Word w = 0; w < workers; ++w) {
    const Word lo = std::min(size, w * chunk), hi = std::min(size, lo + chunk);
    pool.emplace_back([&, w, lo, hi] { partial[w] = count_range(lo, hi); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t total = 1;
  for (auto c : partial) total += c;
  return total;
}

std::vector<CurvePoint> enumerate_points(const Curve& curve) {
  const FieldPtr& field = curve.field();
  if (field->size() > kMaxEnumeratedPoints) throw ResourceLimitExceeded("enumerate_points: field too large");
  const LinearizedSolver solver(artin_schreier(curve), field);
  std::vector<CurvePoint> out{CurvePoint::identity(field)};
  for (Word xb = 0; xb < field->size(); ++xb) {
    const FieldElement x(field, xb);
    if (auto sol = solver.solve(curve_rhs(curve, x))) {
      for (const auto& y : sol->elements()) out.push_back(CurvePoint::affine(x, y));
    }
  }
  return out;
}

std::uint64_t point_order(const Curve& curve, const CurvePoint& p, std::uint64_t group_order) {
  std::uint64_t ord = group_order;
  for (const auto& [prime, e] : nt::factorize(group_order)) {
    for (unsigned i = 0; i < e && mul_unchecked(curve, ord / prime, p).is_identity(); ++i) ord /= prime;
  }
  if (!mul_unchecked(curve, ord, p).is_identity()) throw InvariantViolation("point order does not divide |E|");
  return ord;
}

GroupStructure group_structure(const Curve& curve, int jobs) {
  const std::uint64_t order = point_count(curve, jobs);
  if (order % 2 == 0) throw InvariantViolation("supersingular curve with even group order");
  std::uint64_t exponent = 1;
  for (const auto& p : enumerate_points(curve)) {
    exponent = nt::lcm(exponent, point_order(curve, p, order));
    if (exponent == order) break;  // cyclic
  }
  const GroupStructure gs{order, order / exponent, exponent};
  const std::uint64_t field_units = curve.field()->group_order();
  if (gs.n1 * gs.n2 != order || gs.n2 % gs.n1 != 0 || nt::gcd(gs.n2, field_units) % gs.n1 != 0) {
    throw InvariantViolation("inconsistent group structure (" + std::to_string(gs.n1) + ", " +
                             std::to_string(gs.n2) + ")");
  }
  return gs;
}

GroupBasis::GroupBasis(const Curve& curve, const GroupStructure& gs)
    : curve_(curve),
      gs_(gs),
      gen1_(CurvePoint::identity(curve.field())),
      gen2_(CurvePoint::identity(curve.field())) {
  const auto points = enumerate_points(curve);
  if (points.size() != gs.order) throw std::invalid_argument("GroupBasis: structure does not match the curve");
  auto it = std::find_if(points.begin(), points.end(),
                         [&](const CurvePoint& p) { return point_order(curve, p, gs.order) == gs.n2; });
  if (it == points.end()) throw InvariantViolation("no point of order n2");
  gen2_ = *it;
  CurvePoint cur = CurvePoint::identity(curve.field());
  for (std::uint64_t j = 0; j < gs.n2; ++j) {
    log2_.emplace(point_key(cur), j);
    cur = add_unchecked(curve, cur, gen2_);
  }
  if (gs.n1 > 1) {
    bool found = false;
    for (const auto& p : points) {
      if (point_order(curve, p, gs.order) != gs.n1) continue;
      bool disjoint = true;
      CurvePoint m = p;
      for (std::uint64_t j = 1; j < gs.n1 && disjoint; ++j, m = add_unchecked(curve, m, p)) {
        disjoint = !log2_.contains(point_key(m));
      }
      if (disjoint) {
        gen1_ = p;
        found = true;
        break;
      }
    }
    if (!found) throw InvariantViolation("no complement to the cyclic factor of order n2");
  }
}

std::pair<std::uint64_t, std::uint64_t> GroupBasis::coordinates(const CurvePoint& p) const {
  require_on_curve(curve_, p);
  CurvePoint rest = p;
  const CurvePoint minus_gen1 = negate(curve_, gen1_);
  for (std::uint64_t a1 = 0; a1 < gs_.n1; ++a1) {
    if (auto it = log2_.find(point_key(rest)); it != log2_.end()) return {a1, it->second};
    rest = add_unchecked(curve_, rest, minus_gen1);
  }
  throw InvariantViolation("point outside the span of the basis");
}

std::uint64_t predict_orbit_length(const Curve& curve, const CurvePoint& p) {
  require_on_curve(curve, p);
  if (p.is_identity()) return 1;
  const std::uint64_t cap = 4 * curve.field()->size() + 8;
  CurvePoint q = p;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    q = add_unchecked(curve, q, q);
    if (same_up_to_sign(curve, q, p)) return k;
  }
  throw InvariantViolation("predict_orbit_length: doubling never returned to +-P");
}

std::uint64_t half_multiple_relation(std::uint64_t l, const Curve& curve, const CurvePoint& p) {
  require_on_curve(curve, p);
  if (l == 0) throw std::invalid_argument("half_multiple_relation: l must be positive");
  CurvePoint q = p;
  for (std::uint64_t i = 0; i < l; ++i) q = add_unchecked(curve, q, q);
  return same_up_to_sign(curve, q, p) ? l : 2 * l;
}

std::uint64_t coordinate_lcm(const GroupBasis& basis, const CurvePoint& p) {
  const auto [a1, a2] = basis.coordinates(p);
  const auto& gs = basis.structure();
  const std::uint64_t m1 = nt::pm_order_of_two(gs.n1 / nt::gcd(a1, gs.n1));
  const std::uint64_t m2 = nt::pm_order_of_two(gs.n2 / nt::gcd(a2, gs.n2));
  return nt::lcm(m1, m2);
}

std::vector<CycleCatalogEntry> cycle_catalog(const GroupStructure& gs, bool base_level) {
  std::vector<CycleCatalogEntry> out;
  for (auto d1 : nt::divisors(gs.n1)) {
    for (auto d2 : nt::divisors(gs.n2)) {
      CycleCatalogEntry e{};
      e.d1 = d1;
      e.d2 = d2;
      e.m1 = gs.n1 / d1;
      e.m2 = gs.n2 / d2;
      e.ord1 = nt::pm_order_of_two(e.m1);
      e.ord2 = nt::pm_order_of_two(e.m2);
      e.length = nt::joint_pm_order_of_two(e.m1, e.m2);
      e.point_count = nt::euler_phi(e.m1) * nt::euler_phi(e.m2);
      if (base_level) {
        if (e.m1 == 1 && e.m2 == 1) {
          e.cycle_count = 1;  // the identity: x = infinity
        } else {
          if (e.point_count % (2 * e.length) != 0) {
            throw InvariantViolation("catalog point count not a multiple of 2 * length");
          }
          e.cycle_count = e.point_count / (2 * e.length);
        }
      }
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [](const CycleCatalogEntry& x, const CycleCatalogEntry& y) {
    return std::tie(x.length, x.d1, x.d2) < std::tie(y.length, y.d1, y.d2);
  });
  return out;
}

std::set<std::uint64_t> catalog_lengths(const std::vector<CycleCatalogEntry>& catalog) {
  std::set<std::uint64_t> out;
  for (const auto& e : catalog) out.insert(e.length);
  return out;
}

std::set<std::uint64_t> catalog_candidate_lengths(const GroupStructure& gs) {
  std::set<std::uint64_t> out;
  for (const auto& e : cycle_catalog(gs, false)) {
    const std::uint64_t l = nt::lcm(e.ord1, e.ord2);
    out.insert(l);
    if (gs.n1 > 1) out.insert(2 * l);
  }
  return out;
}

std::uint64_t euler_phi(std::uint64_t m) { return nt::euler_phi(m); }

}  // namespace f2dyn
