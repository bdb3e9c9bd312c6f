#include "f2dyn/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "f2dyn/errors.hpp"

namespace f2dyn::nt {

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  const u64 g = gcd(a, b);
  const u64 q = a / g;
  u64 out = 0;
  if (__builtin_mul_overflow(q, b, &out)) {
    throw ResourceLimitExceeded("lcm overflows 64 bits");
  }
  return out;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  // extended Euclid on signed 128-bit to dodge overflow
  __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a % m);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) throw std::invalid_argument("invmod: argument not invertible");
  if (t0 < 0) t0 += static_cast<__int128>(m);
  return static_cast<u64>(t0);
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  if (n <= 1) return out;
  for (u64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1U);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

u64 euler_phi(u64 m) {
  if (m == 0) throw std::invalid_argument("euler_phi: m must be positive");
  u64 phi = m;
  for (const auto& [p, e] : factorize(m)) phi = phi / p * (p - 1);
  return phi;
}

namespace {

void require_odd(u64 m, const char* who) {
  if (m == 0 || m % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": modulus must be odd, got " + std::to_string(m));
  }
}

}  // namespace

u64 order_of_two(u64 m) {
  require_odd(m, "order_of_two");
  if (m == 1) return 1;
  // the order divides phi(m); strip prime factors while 2^(ord/p) stays 1
  u64 ord = euler_phi(m);
  for (const auto& [p, e] : factorize(ord)) {
    for (unsigned i = 0; i < e && ord % p == 0 && powmod(2, ord / p, m) == 1; ++i) ord /= p;
  }
  return ord;
}

u64 pm_order_of_two(u64 m) {
  require_odd(m, "pm_order_of_two");
  const u64 ord = order_of_two(m);
  // -1 is reached iff the order is even and 2^(ord/2) = -1; that is then the least such k
  if (ord % 2 == 0 && powmod(2, ord / 2, m) == m - 1) return ord / 2;
  return ord;
}

u64 joint_pm_order_of_two(u64 m1, u64 m2) {
  require_odd(m1, "joint_pm_order_of_two");
  require_odd(m2, "joint_pm_order_of_two");
  const u64 bound = lcm(order_of_two(m1), order_of_two(m2));
  u64 r1 = 1 % m1, r2 = 1 % m2;
  for (u64 k = 1; k <= bound; ++k) {
    r1 = mulmod(r1, 2, m1);
    r2 = mulmod(r2, 2, m2);
    const bool plus = r1 == 1 % m1 && r2 == 1 % m2;
    const bool minus = r1 == (m1 - 1) % m1 && r2 == (m2 - 1) % m2;
    if (plus || minus) return k;
  }
  throw InvariantViolation("joint_pm_order_of_two: 2^lcm(ord) must be 1 modulo both");
}

}  // namespace f2dyn::nt
