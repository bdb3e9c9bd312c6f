#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "f2dyn/gf2.hpp"
#include "f2dyn/pmaps.hpp"

namespace f2dyn {

/// Coefficients of tau(x) = (x + c1) / (c2 x + c3) with
/// psi_{a,b,k} o tau = tau o theta_{c,0,k}. All four live in ext.ext().
struct ConjugacyData {
  MapSpec source;
  ExtensionEmbedding ext;
  FieldElement c;
  FieldElement c1;
  FieldElement c2;
  FieldElement c3;

  int ext_degree() const { return ext.ext()->degree(); }
  bool in_base_field() const { return ext.is_identity(); }
  /// theta_{c,0,k} over the field of definition.
  MapSpec normal_form() const;
  /// The source map with coefficients carried into the field of definition.
  MapSpec lifted_source() const;
};

/// u(x) = x + c2 x^q with q = 2^k.
LinearizedPoly conjugation_u(const FieldElement& c2, int k);
/// v(x) = a x^(q^2) + b x^q + x for the map psi_{a,b,k}.
LinearizedPoly conjugation_v(const MapSpec& map);

/// Conjugacy data over the smallest extension (degree <= max_degree) in which
/// it exists, minimizing (degree, encoding of c2, encoding of c3); nullopt if
/// the bound is reached.
std::optional<ConjugacyData> try_solve_conjugation(const MapSpec& map, int max_degree = kMaxFieldDegree);
/// As above; throws ResourceLimitExceeded when nothing is found.
ConjugacyData solve_conjugation(const MapSpec& map, int max_degree = kMaxFieldDegree);

/// c = c2^q, c1 = c3^q, c2 c = a + b c2^q, c3 = a c1^q + b c3^q, c3 + c1 c2 != 0.
bool satisfies_conjugation_system(const ConjugacyData& data);

/// The points {c1, c3/c2, infinity} where the generic rational-function
/// identity does not apply, checked one by one.
bool verify_special_cases(const ConjugacyData& data);

ProjPoint tau_eval(const ConjugacyData& data, const ProjPoint& x);

struct ConjugationCheck {
  std::uint64_t points_checked = 0;
  std::uint64_t mismatches = 0;
  bool exhaustive = false;  // every point of P^1 of the field of definition
  bool system_ok = false;
  bool special_cases_ok = false;

  bool passed() const { return mismatches == 0 && system_ok && special_cases_ok; }
};

/// psi o tau = tau o theta_{c,0,k} pointwise. Exhaustive up to 2^20 points;
/// larger fields get the base field's points, the special points and a fixed
/// pseudo-random sample.
ConjugationCheck verify_conjugation(const ConjugacyData& data);

/// Number of fixed points of psi on P^1(F_{2^m}), from the normal form:
/// 2 if (c^-1)^((2^m-1)/d) != 1, else d + 2, where d = gcd(2^k - 1, 2^m - 1).
/// c must lie in F_{2^m} (its field has degree m).
std::uint64_t fixed_point_count(const FieldElement& c, int k, int m);
/// Requires the data to lie in the base field; throws std::domain_error otherwise.
std::uint64_t fixed_point_count(const ConjugacyData& data);

/// {0, infinity} together with the roots of x^(2^k - 1) = c^-1.
std::vector<ProjPoint> theta_fixed_points(const FieldElement& c, int k);

/// Roots of x^(2^k + 1) + x + a in a's field, by scanning.
std::vector<FieldElement> bluher_roots(const FieldElement& a, int k);

/// Root count of x^(2^k + 1) + x + a. Throws InvariantViolation unless the
/// count is 0, 1, 2 or 2^gcd(k,n) + 1 and equals the number of finite fixed
/// points of psi_{1/a, 1/a, k}.
std::uint64_t bluher_root_count(const FieldElement& a, int k);

}  // namespace f2dyn
