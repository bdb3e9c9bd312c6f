#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Integer helpers: factorization, totients, and the order of 2 modulo m.
namespace f2dyn::nt {

using u64 = std::uint64_t;

u64 gcd(u64 a, u64 b);
/// Throws ResourceLimitExceeded on overflow.
u64 lcm(u64 a, u64 b);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);
std::vector<u64> divisors(u64 n);
u64 euler_phi(u64 m);

/// Least k >= 1 with 2^k = 1 (mod m). m must be odd.
u64 order_of_two(u64 m);

/// Least k >= 1 with 2^k = +1 or -1 (mod m). m must be odd; returns 1 for m <= 3.
u64 pm_order_of_two(u64 m);

/// Least k >= 1 such that 2^k is congruent to the same sign (+1 or -1) modulo
/// both m1 and m2. Both moduli odd.
u64 joint_pm_order_of_two(u64 m1, u64 m2);

}  // namespace f2dyn::nt
