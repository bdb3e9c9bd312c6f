#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "f2dyn/errors.hpp"
#include "f2dyn/gf2.hpp"
#include "f2dyn/poly.hpp"

using namespace f2dyn;

namespace {

int deg(Word p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

// schoolbook carry-less product, then long division
Word slow_mulmod(Word x, Word y, Word m) {
  unsigned __int128 prod = 0;
  for (int i = 0; i < 64; ++i) {
    if (y >> i & 1U) prod ^= static_cast<unsigned __int128>(x) << i;
  }
  const int dm = deg(m);
  for (int i = 127; i >= dm; --i) {
    if (prod >> i & 1U) prod ^= static_cast<unsigned __int128>(m) << (i - dm);
  }
  return static_cast<Word>(prod);
}

Word slow_polymod(Word a, Word m) {
  while (deg(a) >= deg(m)) a ^= m << (deg(a) - deg(m));
  return a;
}

bool slow_irreducible(Word p) {
  const int d = deg(p);
  if (d < 1) return false;
  for (Word q = 2; deg(q) <= d / 2; ++q) {
    if (slow_polymod(p, q) == 0) return false;
  }
  return true;
}

FieldElement g(const FieldPtr& f, std::int64_t e) { return FieldElement::gen_pow(f, e); }

}  // namespace

TEST_CASE("default moduli") {
  const std::map<int, Word> conway{{1, 0x3},   {2, 0x7},   {3, 0xb},   {4, 0x13},  {5, 0x25},
                                   {6, 0x5b},  {7, 0x83},  {8, 0x11d}, {9, 0x211}, {10, 0x46f}};
  for (const auto& [n, m] : conway) {
    CAPTURE(n);
    CHECK(conway_modulus(n) == m);
    CHECK(Field::make(n)->modulus() == m);
  }
  for (int n = 1; n <= 32; ++n) {
    const Word m = default_modulus(n);
    CHECK(deg(m) == n);
    CHECK(is_irreducible(m));
  }
  CHECK_FALSE(conway_modulus(40).has_value());
}

TEST_CASE("irreducibility agrees with trial division") {
  for (Word p = 2; p < (Word{1} << 11); ++p) {
    CAPTURE(p);
    CHECK(is_irreducible(p) == slow_irreducible(p));
  }
  CHECK_THROWS_AS(Field::with_modulus(0x27), std::invalid_argument);
}

TEST_CASE("F_32 with x^5+x^2+1") {
  auto F = Field::make(5);
  CHECK(F->primitive_bits() == 0x2);
  CHECK(g(F, 1) + g(F, 3) == g(F, 6));
  CHECK(g(F, 25) + g(F, 3) == g(F, 10));
  CHECK(g(F, 5) == FieldElement(F, 0x5));  // x^5 = x^2 + 1
  CHECK(g(F, 31) == FieldElement::one(F));
  CHECK(g(F, -1) == inv(g(F, 1)));
  const auto x = g(F, 17);
  CHECK((x + x).is_zero());
  CHECK(FieldElement::zero(F) + x == x);
}

TEST_CASE("small examples") {
  auto F = Field::make(5);
  CHECK(g(F, 10) * g(F, 10) * g(F, 5) == g(F, 25));
  CHECK(g(F, 16) * g(F, 16) == g(F, 1));
  CHECK(inv(FieldElement::one(F)).is_one());
  CHECK(inv(g(F, 1)) == g(F, 30));
  CHECK(inv(g(F, 12)) == g(F, 19));
  CHECK(pow(g(F, 7), 0).is_one());
  CHECK(pow(g(F, 1), 31).is_one());
  FieldElement naive = FieldElement::one(F);
  for (int i = 0; i < 25; ++i) naive = naive * g(F, 1);
  CHECK(pow(g(F, 1), 25) == naive);
  for (Word x = 0; x < 32; ++x) {
    CHECK(frob_pow(FieldElement(F, x), 0).bits() == x);
    CHECK(frob_pow(FieldElement(F, x), 5).bits() == x);
  }
  CHECK(find_primitive_element(Field::make(1)).is_one());
  const auto e16 = find_primitive_element(Field::make(4));
  CHECK_FALSE(pow(e16, 5).is_one());
  CHECK_FALSE(pow(e16, 3).is_one());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 12; ++n) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> any(0, F->size() - 1);
    for (int i = 0; i < 1000; ++i) {
      const FieldElement x(F, any(rng)), y(F, any(rng)), z(F, any(rng));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x * y == y * x);
      if (!x.is_zero()) CHECK((x * inv(x)).is_one());
    }
  }
}

TEST_CASE("frobenius powers permute the field") {
  for (int n = 1; n <= 10; ++n) {
    auto F = Field::make(n);
    for (int k = 0; k <= n; ++k) {
      std::set<Word> image;
      for (Word x = 0; x < F->size(); ++x) image.insert(frob_pow(FieldElement(F, x), k).bits());
      CHECK(image.size() == F->size());
    }
  }
}

TEST_CASE("arithmetic matches schoolbook reduction") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3, 5, 8, 13, 17, 24, 31, 32}) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> any(0, F->size() - 1);
    for (int i = 0; i < 300; ++i) {
      const Word x = any(rng), y = any(rng);
      CAPTURE(n);
      CHECK(F->mul(x, y) == slow_mulmod(x, y, F->modulus()));
      if (x != 0) {
        CHECK(F->mul(x, F->inv(x)) == 1);
        CHECK(F->pow(x, F->group_order()) == 1);
      }
      const FieldElement e(F, x);
      CHECK(sqrt(e) * sqrt(e) == e);
      CHECK(frob_pow(frob_pow(e, 3), n - 3 % n) == e);
    }
  }
}

TEST_CASE("inverse is exhaustive on small fields") {
  for (int n = 1; n <= 10; ++n) {
    auto F = Field::make(n);
    for (Word x = 1; x < F->size(); ++x) CHECK(F->mul(x, F->inv(x)) == 1);
  }
}

TEST_CASE("errors") {
  auto F = Field::make(5), G = Field::make(6);
  CHECK_THROWS_AS(FieldElement(F, 1) + FieldElement(G, 1), FieldMismatch);
  CHECK_THROWS_AS(inv(FieldElement::zero(F)), DivisionByZero);
  CHECK_THROWS_AS(FieldElement(F, 32), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(33), std::invalid_argument);
  CHECK_THROWS_AS(pow(FieldElement::zero(F), -1), DivisionByZero);
  // same modulus, different instances: compatible
  CHECK(FieldElement(F, 3) + FieldElement(Field::make(5), 3) == FieldElement::zero(F));
}

TEST_CASE("trace is the sum of conjugates") {
  for (int n : {3, 5, 8}) {
    auto F = Field::make(n);
    int ones = 0;
    for (Word x = 0; x < F->size(); ++x) {
      FieldElement s = FieldElement::zero(F), c(F, x);
      for (int i = 0; i < n; ++i) {
        s = s + c;
        c = c * c;
      }
      CHECK(s.bits() == static_cast<Word>(trace(FieldElement(F, x))));
      ones += trace(FieldElement(F, x));
    }
    CHECK(ones == static_cast<int>(F->size() / 2));
  }
}

TEST_CASE("discrete log and primitive elements") {
  for (int n : {2, 5, 8, 11}) {
    auto F = Field::make(n);
    CHECK(F->multiplicative_order(F->primitive_bits()) == F->group_order());
    Word p = 1;
    for (Word e = 0; e < F->group_order(); ++e) {
      CHECK(discrete_log(FieldElement(F, p)) == e);
      p = F->mul(p, F->primitive_bits());
    }
  }
  auto big = Field::make(32);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const std::int64_t e = static_cast<std::int64_t>(rng() % big->group_order());
    CHECK(discrete_log(g(big, e)) == static_cast<std::uint64_t>(e));
  }
  CHECK_THROWS(discrete_log(FieldElement::zero(big)));
  CHECK(find_primitive_element(Field::make(5)) == g(Field::make(5), 1));
}

TEST_CASE("root equations against scanning") {
  for (int n : {4, 5, 6}) {
    auto F = Field::make(n);
    for (std::uint64_t N : {1, 2, 3, 5, 7, 9, 15, 21, 63, 100}) {
      for (Word a = 1; a < F->size(); ++a) {
        std::vector<FieldElement> want;
        for (Word x = 1; x < F->size(); ++x) {
          if (F->pow(x, N) == a) want.emplace_back(F, x);
        }
        CHECK(solve_root_equation(FieldElement(F, a), N) == want);
      }
    }
  }
  CHECK_THROWS(solve_root_equation(FieldElement::zero(Field::make(5)), 3));
  auto F8 = Field::make(3);
  CHECK(solve_root_equation(FieldElement::one(F8), 7).size() == 7);
  for (Word a = 1; a < 8; ++a) {
    const auto r = solve_root_equation(FieldElement(F8, a), 2);
    REQUIRE(r.size() == 1);
    CHECK(r.front() == pow(FieldElement(F8, a), 4));
  }
  auto F16 = Field::make(4);
  const auto alpha = g(F16, 3);
  CHECK(pow(alpha, 5).is_one());
  CHECK(solve_root_equation(alpha, 3).size() == 3);
  CHECK(solve_root_equation(g(F16, 1), 3).empty());
}

TEST_CASE("linearized kernels and solves against scanning") {
  std::mt19937_64 rng(3);
  for (int n : {3, 4, 6, 8}) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> any(0, F->size() - 1);
    for (int trial = 0; trial < 25; ++trial) {
      LinearizedPoly L{1 + trial % 3, {}};
      for (int i = 0; i < 3; ++i) L.coeffs.emplace_back(F, any(rng));
      std::set<Word> kernel;
      std::map<Word, std::set<Word>> fibres;
      for (Word x = 0; x < F->size(); ++x) {
        const Word y = L(FieldElement(F, x)).bits();
        fibres[y].insert(x);
        if (y == 0) kernel.insert(x);
      }
      // additivity
      const FieldElement u(F, any(rng)), v(F, any(rng));
      CHECK(L(u + v) == L(u) + L(v));
      CHECK((std::uint64_t{1} << linearized_kernel(L, F).size()) == kernel.size());
      const LinearizedSolver solver(L, F);
      for (Word t = 0; t < F->size(); ++t) {
        const auto sol = solver.solve(FieldElement(F, t));
        const auto it = fibres.find(t);
        if (it == fibres.end()) {
          CHECK_FALSE(sol.has_value());
          continue;
        }
        REQUIRE(sol.has_value());
        CHECK(sol->particular.bits() == *it->second.begin());  // smallest in the coset
        std::set<Word> got;
        for (const auto& x : sol->elements()) got.insert(x.bits());
        CHECK(got == it->second);
        CHECK(sol->contains(FieldElement(F, *it->second.rbegin())));
      }
    }
  }
}

TEST_CASE("small linearized examples") {
  auto F = Field::make(6);
  CHECK(linearized_kernel(LinearizedPoly{1, {FieldElement::one(F)}}, F).empty());
  const auto as = linearized_kernel(LinearizedPoly{1, {FieldElement::one(F), FieldElement::one(F)}}, F);
  REQUIRE(as.size() == 1);
  CHECK(as.front().is_one());
  CHECK(linearized_kernel(LinearizedPoly{1, {FieldElement::zero(F)}}, F).size() == 6);
  const auto id = linearized_solve(LinearizedPoly{1, {FieldElement::one(F)}}, g(F, 9), F);
  REQUIRE(id.has_value());
  CHECK(id->size() == 1);
  CHECK(id->particular == g(F, 9));

  // d + c d^4 + c^5 d^16 = 1 + g^3 with c = g^3 over F_32
  auto F32 = Field::make(5);
  const auto c = g(F32, 3);
  const LinearizedPoly L{2, {FieldElement::one(F32), c, pow(c, 5)}};
  const auto sol = linearized_solve(L, g(F32, 31) + g(F32, 3), F32);
  REQUIRE(sol.has_value());
  CHECK(sol->contains(g(F32, 15)));
}

TEST_CASE("u and v over F_32") {
  auto F = Field::make(5);
  // x + g^3 x^4 = 0 means x^3 = g^-3, so the kernel is {0, g^30}
  const LinearizedPoly u{2, {FieldElement::one(F), g(F, 3)}};
  const auto ku = linearized_kernel(u, F);
  REQUIRE(ku.size() == 1);
  CHECK(ku.front() == g(F, 30));
  CHECK_FALSE(u(g(F, 8)).is_zero());
  // v = g x^16 + g^2 x^4 + x
  const LinearizedPoly v{2, {FieldElement::one(F), g(F, 2), g(F, 1)}};
  CHECK(v(g(F, 8)).is_zero());
}

TEST_CASE("extension embeddings are field homomorphisms") {
  std::mt19937_64 rng(11);
  for (auto [n, t] : std::vector<std::pair<int, int>>{{1, 5}, {2, 3}, {4, 2}, {5, 2}, {5, 3}, {8, 4}, {16, 2}}) {
    auto F = Field::make(n);
    const ExtensionEmbedding emb = build_extension(F, t);
    CHECK(emb.ext()->degree() == n * t);
    CHECK(emb.ratio() == t);
    // the image of x is a root of the base modulus
    std::vector<Word> minpoly;
    for (int i = 0; i <= n; ++i) minpoly.push_back(F->modulus() >> i & 1U);
    CHECK(poly::eval(*emb.ext(), minpoly, emb.image_of_root().bits()) == 0);
    std::uniform_int_distribution<Word> any(0, F->size() - 1);
    for (int i = 0; i < 100; ++i) {
      const FieldElement x(F, any(rng)), y(F, any(rng));
      CHECK(emb(x + y) == emb(x) + emb(y));
      CHECK(emb(x * y) == emb(x) * emb(y));
      CHECK(emb.restrict(emb(x)) == x);
      CHECK(emb(frob_pow(x, 3)) == frob_pow(emb(x), 3));
    }
  }
  auto F = Field::make(5);
  const auto quad = build_quadratic_extension(F);
  CHECK(quad.ext()->multiplicative_order(quad.image_of_root().bits()) == 31);
  // an element outside the image has no preimage
  int outside = 0;
  for (Word x = 0; x < quad.ext()->size(); ++x) outside += quad.restrict(FieldElement(quad.ext(), x)) ? 0 : 1;
  CHECK(outside == 1024 - 32);
  CHECK_THROWS_AS(build_extension(Field::make(17), 2), ResourceLimitExceeded);
  CHECK(ExtensionEmbedding::identity(F).is_identity());
}

TEST_CASE("polynomial roots against scanning") {
  std::mt19937_64 rng(21);
  for (int n : {3, 5, 7}) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> any(0, F->size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      poly::Coeffs p(2 + trial % 9);
      for (auto& c : p) c = any(rng);
      p.back() = 1;
      std::vector<Word> want;
      for (Word x = 0; x < F->size(); ++x) {
        if (poly::eval(*F, p, x) == 0) want.push_back(x);
      }
      CHECK(poly::roots(*F, p) == want);
    }
  }
}

TEST_CASE("hex round trip") {
  CHECK(to_hex(0x25) == "0x25");
  CHECK(parse_hex("0x25") == 0x25);
  CHECK(parse_hex("1F") == 0x1f);
  CHECK_THROWS(parse_hex("0xzz"));
  CHECK_THROWS(parse_hex(""));
}
