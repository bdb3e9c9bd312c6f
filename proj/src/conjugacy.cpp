#include "f2dyn/conjugacy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "f2dyn/errors.hpp"
#include "f2dyn/numtheory.hpp"
#include "f2dyn/poly.hpp"

namespace f2dyn {

namespace {

constexpr Word kExhaustiveCheckLimit = Word{1} << 20;
constexpr std::uint64_t kSampledPoints = 1U << 16;

void require_psi(const MapSpec& map) {
  if (map.kind != MapKind::psi) throw std::invalid_argument("conjugation applies to psi maps only");
}

// Nonzero roots in `field` of X^(q+1) + b X^q + a, q = 2^k, sorted by encoding.
std::vector<FieldElement> c2_candidates(const FieldElement& a, const FieldElement& b, int k) {
  const FieldPtr& field = a.field();
  const Field& f = *field;
  std::vector<FieldElement> out;
  if (f.degree() <= 16) {
    for (Word x = 1; x < f.size(); ++x) {
      const Word xq = f.frob(x, k);
      if ((f.mul(xq, x) ^ f.mul(b.bits(), xq) ^ a.bits()) == 0) out.emplace_back(field, x);
    }
    return out;
  }
  // on F_{2^N}, x^(2^k) = x^(2^(k mod N)), so the lower-degree polynomial has the same roots there
  const int r = k % f.degree();
  const std::size_t q = std::size_t{1} << r;
  poly::Coeffs p(q + 2, 0);
  p[q + 1] ^= 1;
  p[q] ^= b.bits();
  p[0] ^= a.bits();
  for (Word x : poly::roots(f, p)) {
    if (x != 0) out.emplace_back(field, x);
  }
  return out;
}

}  // namespace

MapSpec ConjugacyData::normal_form() const { return MapSpec::theta(c, FieldElement::zero(c.field()), source.k); }

MapSpec ConjugacyData::lifted_source() const { return MapSpec::psi(ext(source.a), ext(source.b), source.k); }

LinearizedPoly conjugation_u(const FieldElement& c2, int k) {
  return LinearizedPoly{k, {FieldElement::one(c2.field()), c2}};
}

LinearizedPoly conjugation_v(const MapSpec& map) {
  return LinearizedPoly{map.k, {FieldElement::one(map.field()), map.b, map.a}};
}

std::optional<ConjugacyData> try_solve_conjugation(const MapSpec& map, int max_degree) {
  require_psi(map);
  const FieldPtr& base = map.field();
  const int limit = std::min(max_degree, kMaxFieldDegree);
  for (int t = 1; base->degree() * t <= limit; ++t) {
    ExtensionEmbedding ext = build_extension(base, t);
    const FieldElement a = ext(map.a), b = ext(map.b);
    const auto c2s = c2_candidates(a, b, map.k);
    if (c2s.empty()) continue;
    const LinearizedPoly v{map.k, {FieldElement::one(a.field()), b, a}};
    const auto kernel = linearized_kernel(v, ext.ext());
    if (kernel.size() > 20) throw ResourceLimitExceeded("kernel of v too large to enumerate");
    const auto c3s = AffineSolution{FieldElement::zero(a.field()), kernel}.elements();
    for (const auto& c2 : c2s) {
      const LinearizedPoly u = conjugation_u(c2, map.k);
      for (const auto& c3 : c3s) {
        if (c3.is_zero() || u(c3).is_zero()) continue;
        ConjugacyData data{map, ext, frob_pow(c2, map.k), frob_pow(c3, map.k), c2, c3};
        if (!satisfies_conjugation_system(data)) throw InvariantViolation("conjugation solver produced invalid data");
        return data;
      }
    }
  }
  return std::nullopt;
}

ConjugacyData solve_conjugation(const MapSpec& map, int max_degree) {
  if (auto data = try_solve_conjugation(map, max_degree)) return *std::move(data);
  throw ResourceLimitExceeded("no conjugacy data up to extension degree " + std::to_string(max_degree));
}

bool satisfies_conjugation_system(const ConjugacyData& d) {
  const int k = d.source.k;
  const FieldElement a = d.ext(d.source.a), b = d.ext(d.source.b);
  if (d.c2.is_zero() || d.c3.is_zero()) return false;
  return d.c == frob_pow(d.c2, k) && d.c1 == frob_pow(d.c3, k) && d.c2 * d.c == a + b * frob_pow(d.c2, k) &&
         d.c3 == a * frob_pow(d.c1, k) + b * frob_pow(d.c3, k) && !(d.c3 + d.c1 * d.c2).is_zero();
}

ProjPoint tau_eval(const ConjugacyData& data, const ProjPoint& x) {
  const FieldPtr& field = data.c.field();
  require_same_field(*x.field(), *field);
  if (x.is_infinity()) return ProjPoint::finite(inv(data.c2));
  const FieldElement den = data.c2 * x.value() + data.c3;
  if (den.is_zero()) return ProjPoint::infinity(field);
  if (x.value() == data.c1) return ProjPoint::finite(FieldElement::zero(field));
  return ProjPoint::finite((x.value() + data.c1) / den);
}

bool verify_special_cases(const ConjugacyData& data) {
  const MapSpec psi = data.lifted_source();
  const MapSpec theta = data.normal_form();
  const FieldPtr& field = data.c.field();
  const auto commutes = [&](const ProjPoint& x) { return eval(psi, tau_eval(data, x)) == tau_eval(data, eval(theta, x)); };
  const ProjPoint at_c1 = ProjPoint::finite(data.c1);
  const ProjPoint pole = ProjPoint::finite(data.c3 / data.c2);
  // psi(tau(c1)) = psi(0) is 1/b, or infinity when b = 0
  const ProjPoint psi_zero = eval(psi, ProjPoint::finite(FieldElement::zero(field)));
  const bool zero_case = psi.b.is_zero() ? psi_zero.is_infinity() : psi_zero == ProjPoint::finite(inv(psi.b));
  // tau(c3/c2) = infinity and psi(infinity) = 0 = tau(c1)
  const bool pole_case = tau_eval(data, pole).is_infinity() && tau_eval(data, at_c1).is_infinity() == false;
  return zero_case && pole_case && commutes(at_c1) && commutes(pole) && commutes(ProjPoint::infinity(field));
}

ConjugationCheck verify_conjugation(const ConjugacyData& data) {
  ConjugationCheck check;
  check.system_ok = satisfies_conjugation_system(data);
  check.special_cases_ok = check.system_ok && verify_special_cases(data);
  if (!check.system_ok) return check;
  const MapSpec psi = data.lifted_source();
  const MapSpec theta = data.normal_form();
  const FieldPtr& field = data.c.field();
  const auto test = [&](const ProjPoint& x) {
    ++check.points_checked;
    if (!(eval(psi, tau_eval(data, x)) == tau_eval(data, eval(theta, x)))) ++check.mismatches;
  };
  if (field->size() <= kExhaustiveCheckLimit) {
    check.exhaustive = true;
    for (Word i = 0; i <= field->size(); ++i) test(ProjPoint::from_index(field, i));
    return check;
  }
  const FieldPtr& base = data.ext.base();
  for (Word i = 0; i < base->size() && i < kExhaustiveCheckLimit; ++i) test(ProjPoint::finite(data.ext(FieldElement(base, i))));
  test(ProjPoint::infinity(field));
  test(ProjPoint::finite(data.c1));
  test(ProjPoint::finite(data.c3 / data.c2));
  Word state = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t i = 0; i < kSampledPoints; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    test(ProjPoint::finite(FieldElement(field, (state >> 11U) & (field->size() - 1))));
  }
  return check;
}

std::uint64_t fixed_point_count(const FieldElement& c, int k, int m) {
  if (c.is_zero()) throw std::invalid_argument("fixed_point_count: c must be nonzero");
  if (k < 1) throw std::invalid_argument("fixed_point_count: k must be positive");
  if (c.field()->degree() != m) {
    throw std::invalid_argument("fixed_point_count: c does not lie in F_2^" + std::to_string(m));
  }
  // gcd(2^k - 1, 2^m - 1) = 2^gcd(k, m) - 1
  const std::uint64_t d = (std::uint64_t{1} << std::gcd(k, m)) - 1;
  const std::uint64_t e = c.field()->group_order() / d;
  return pow(inv(c), static_cast<std::int64_t>(e)).is_one() ? d + 2 : 2;
}

std::uint64_t fixed_point_count(const ConjugacyData& data) {
  if (!data.in_base_field()) {
    throw std::domain_error("fixed_point_count: conjugacy data is not defined over the base field");
  }
  return fixed_point_count(data.c, data.source.k, data.source.field()->degree());
}

std::vector<ProjPoint> theta_fixed_points(const FieldElement& c, int k) {
  if (c.is_zero()) throw std::invalid_argument("theta_fixed_points: c must be nonzero");
  if (k < 1) throw std::invalid_argument("theta_fixed_points: k must be positive");
  const FieldPtr& field = c.field();
  const std::uint64_t order = field->group_order();
  std::vector<ProjPoint> out{ProjPoint::finite(FieldElement::zero(field))};
  // x^(2^k - 1) with the exponent taken modulo the group order
  std::uint64_t e = order == 1 ? 1 : (nt::powmod(2, static_cast<std::uint64_t>(k), order) + order - 1) % order;
  if (e == 0) e = order;
  for (auto& x : solve_root_equation(inv(c), e)) out.push_back(ProjPoint::finite(std::move(x)));
  out.push_back(ProjPoint::infinity(field));
  return out;
}

std::vector<FieldElement> bluher_roots(const FieldElement& a, int k) {
  if (a.is_zero()) throw std::invalid_argument("bluher_roots: a must be nonzero");
  if (k < 1) throw std::invalid_argument("bluher_roots: k must be positive");
  const Field& f = *a.field();
  if (f.size() > kExhaustiveCheckLimit) throw ResourceLimitExceeded("bluher_roots: field too large to scan");
  std::vector<FieldElement> out;
  for (Word x = 0; x < f.size(); ++x) {
    if ((f.mul(f.frob(x, k), x) ^ x ^ a.bits()) == 0) out.emplace_back(a.field(), x);
  }
  return out;
}

std::uint64_t bluher_root_count(const FieldElement& a, int k) {
  const auto roots = bluher_roots(a, k);
  const std::uint64_t count = roots.size();
  const int n = a.field()->degree();
  const std::uint64_t big = (std::uint64_t{1} << std::gcd(k, n)) + 1;
  if (count > 2 && count != big) {
    throw InvariantViolation("Bluher polynomial has " + std::to_string(count) + " roots, outside {0, 1, 2, " +
                             std::to_string(big) + "}");
  }
  if (std::any_of(roots.begin(), roots.end(), [](const FieldElement& x) { return x.is_one(); })) {
    throw InvariantViolation("x = 1 is a root of the Bluher polynomial");
  }
  const FieldElement a_inv = inv(a);
  std::uint64_t finite_fixed = 0;
  for (const auto& p : fixed_points(MapSpec::psi(a_inv, a_inv, k))) finite_fixed += p.is_infinity() ? 0 : 1;
  if (finite_fixed != count) {
    throw InvariantViolation("Bluher root count " + std::to_string(count) + " differs from the " +
                             std::to_string(finite_fixed) + " finite fixed points of psi");
  }
  return count;
}

}  // namespace f2dyn
