#include "f2dyn/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace f2dyn::poly {

void trim(Coeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Coeffs& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] ^= a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] ^= b[i];
  trim(out);
  return out;
}

Coeffs mul(const Field& f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= f.mul(a[i], b[j]);
  }
  trim(out);
  return out;
}

namespace {

// Long division; returns the quotient and leaves the remainder in a.
Coeffs divide(const Field& f, Coeffs& a, const Coeffs& m) {
  const int dm = degree(m);
  if (dm < 0) throw std::domain_error("polynomial division by zero");
  const Word lead_inv = f.inv(m[static_cast<std::size_t>(dm)]);
  trim(a);
  Coeffs q;
  if (degree(a) >= dm) q.assign(static_cast<std::size_t>(degree(a) - dm + 1), 0);
  for (int da = degree(a); da >= dm; da = degree(a)) {
    const Word factor = f.mul(a[static_cast<std::size_t>(da)], lead_inv);
    const auto shift = static_cast<std::size_t>(da - dm);
    q[shift] = factor;
    for (int i = 0; i <= dm; ++i) {
      a[shift + static_cast<std::size_t>(i)] ^= f.mul(factor, m[static_cast<std::size_t>(i)]);
    }
    trim(a);
  }
  trim(q);
  return q;
}

Coeffs monic(const Field& f, Coeffs p) {
  trim(p);
  if (p.empty()) return p;
  const Word lead_inv = f.inv(p.back());
  for (auto& c : p) c = f.mul(c, lead_inv);
  return p;
}

Coeffs square_mod(const Field& f, const Coeffs& a, const Coeffs& m) {
  // characteristic 2: (sum c_i X^i)^2 = sum c_i^2 X^(2i)
  Coeffs sq(a.empty() ? 0 : 2 * a.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) sq[2 * i] = f.sqr(a[i]);
  return mod(f, std::move(sq), m);
}

void split(const Field& f, const Coeffs& g, std::vector<Word>& out) {
  const int dg = degree(g);
  if (dg <= 0) return;
  if (dg == 1) {
    // g is monic: X + c0
    out.push_back(g[0]);
    return;
  }
  const int n = f.degree();
  for (int b = 0; b < n; ++b) {
    const Coeffs beta_x{0, Word{1} << b};
    Coeffs term = mod(f, beta_x, g);
    Coeffs acc = term;
    for (int i = 1; i < n; ++i) {
      term = square_mod(f, term, g);
      acc = add(acc, term);
    }
    Coeffs h = gcd(f, g, acc);
    const int dh = degree(h);
    if (dh > 0 && dh < dg) {
      Coeffs rest = monic(f, div(f, g, h));
      split(f, h, out);
      split(f, rest, out);
      return;
    }
  }
  throw std::logic_error("poly::roots: trace splitting failed on a squarefree split polynomial");
}

}  // namespace

Coeffs mod(const Field& f, Coeffs a, const Coeffs& m) {
  divide(f, a, m);
  return a;
}

Coeffs div(const Field& f, Coeffs a, const Coeffs& m) { return divide(f, a, m); }

Coeffs gcd(const Field& f, Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, std::move(a));
}

Word eval(const Field& f, const Coeffs& p, Word x) {
  Word acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.mul(acc, x) ^ *it;
  return acc;
}

std::vector<Word> roots(const Field& f, const Coeffs& p) {
  Coeffs m = monic(f, p);
  if (m.empty()) throw std::invalid_argument("poly::roots: zero polynomial");
  if (degree(m) == 0) return {};
  // X^(2^n) mod m by repeated squaring
  Coeffs frob = mod(f, Coeffs{0, 1}, m);
  for (int i = 0; i < f.degree(); ++i) frob = square_mod(f, frob, m);
  const Coeffs split_part = gcd(f, m, add(frob, Coeffs{0, 1}));
  std::vector<Word> out;
  split(f, split_part, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace f2dyn::poly
