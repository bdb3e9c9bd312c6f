#pragma once

#include <vector>

#include "f2dyn/gf2.hpp"

// Dense univariate polynomials over a binary field, coefficients low to high,
// stored as raw encodings. Only what root finding needs.
namespace f2dyn::poly {

using Coeffs = std::vector<Word>;

void trim(Coeffs& p);
int degree(const Coeffs& p);  // -1 for the zero polynomial

Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs mul(const Field& f, const Coeffs& a, const Coeffs& b);
/// Remainder of a modulo m (m nonzero).
Coeffs mod(const Field& f, Coeffs a, const Coeffs& m);
/// Quotient of a by m (m nonzero).
Coeffs div(const Field& f, Coeffs a, const Coeffs& m);
/// Monic gcd.
Coeffs gcd(const Field& f, Coeffs a, Coeffs b);
Word eval(const Field& f, const Coeffs& p, Word x);

/// Distinct roots of p lying in f, sorted by encoding. p must be nonzero.
///
/// Extracts the split part gcd(p, X^(2^n) - X) and separates its roots with
/// trace maps Tr(beta X), beta running over the polynomial basis.
std::vector<Word> roots(const Field& f, const Coeffs& p);

}  // namespace f2dyn::poly
