#include <doctest.h>

#include <random>
#include <set>

#include "f2dyn/conjugacy.hpp"
#include "f2dyn/errors.hpp"
#include "f2dyn/numtheory.hpp"
#include "f2dyn/pmaps.hpp"

using namespace f2dyn;

namespace {

FieldElement g(const FieldPtr& f, std::int64_t e) { return FieldElement::gen_pow(f, e); }

std::uint64_t brute_fixed(const MapSpec& map) {
  const FieldPtr& F = map.a.field();
  std::uint64_t n = 0;
  for (Word i = 0; i <= F->size(); ++i) {
    const auto p = ProjPoint::from_index(F, i);
    n += eval(map, p) == p ? 1 : 0;
  }
  return n;
}

MapSpec lift(const MapSpec& m, const ExtensionEmbedding& e) { return {m.kind, e(m.a), e(m.b), m.k}; }

}  // namespace

TEST_CASE("known conjugacy over F_32") {
  auto F = Field::make(5);
  const auto psi = MapSpec::psi(g(F, 1), g(F, 2), 2);
  const ConjugacyData known{psi, ExtensionEmbedding::identity(F), g(F, 12), g(F, 1), g(F, 3), g(F, 8)};
  CHECK(satisfies_conjugation_system(known));
  CHECK(verify_special_cases(known));
  const auto check = verify_conjugation(known);
  CHECK(check.passed());
  CHECK(check.exhaustive);
  CHECK(check.points_checked == 33);
  CHECK(tau_eval(known, ProjPoint::finite(FieldElement::zero(F))) == ProjPoint::finite(g(F, 24)));
  CHECK(tau_eval(known, ProjPoint::infinity(F)) == ProjPoint::finite(g(F, 28)));
  CHECK(tau_eval(known, ProjPoint::finite(g(F, 1))) == ProjPoint::finite(FieldElement::zero(F)));
  CHECK(fixed_point_count(known) == 3);

  // tau carries the fixed points of the normal form onto those of psi
  std::set<ProjPoint> images;
  for (const auto& p : theta_fixed_points(known.c, 2)) images.insert(tau_eval(known, p));
  const auto fixed = fixed_points(psi);
  CHECK(images == std::set<ProjPoint>(fixed.begin(), fixed.end()));
  CHECK(std::set<ProjPoint>(fixed.begin(), fixed.end()) ==
        std::set<ProjPoint>{ProjPoint::finite(g(F, 14)), ProjPoint::finite(g(F, 24)), ProjPoint::finite(g(F, 28))});

  const auto solved = solve_conjugation(psi);
  CHECK(solved.in_base_field());
  CHECK(satisfies_conjugation_system(solved));
  CHECK(verify_conjugation(solved).passed());

  auto broken = known;
  broken.c3 = g(F, 9);
  CHECK_FALSE(satisfies_conjugation_system(broken));
  CHECK_FALSE(verify_conjugation(broken).passed());
}

TEST_CASE("solver over small fields") {
  std::mt19937_64 rng(41);
  int base = 0, extended = 0, resource = 0;
  for (int n = 1; n <= 6; ++n) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> nonzero(1, F->size() - 1), any(0, F->size() - 1);
    for (int trial = 0; trial < 12; ++trial) {
      const auto psi = MapSpec::psi(FieldElement(F, nonzero(rng)), FieldElement(F, any(rng)), 1 + trial % 3);
      std::optional<ConjugacyData> data;
      try {
        data = try_solve_conjugation(psi, 24);
      } catch (const ResourceLimitExceeded&) {
        ++resource;
        continue;
      }
      if (!data) {
        ++resource;
        continue;
      }
      CHECK(satisfies_conjugation_system(*data));
      CHECK(data->ext_degree() % n == 0);
      const auto check = verify_conjugation(*data);
      CHECK(check.passed());
      const auto lifted = data->lifted_source();
      CHECK(lifted.kind == MapKind::psi);
      CHECK(data->normal_form().b.is_zero());
      if (data->in_base_field()) {
        ++base;
        CHECK(check.exhaustive);
        CHECK(fixed_point_count(*data) == brute_fixed(psi));
      } else {
        ++extended;
        CHECK_THROWS_AS(fixed_point_count(*data), std::domain_error);
        CHECK(fixed_point_count(data->c, psi.k, data->ext_degree()) == brute_fixed(lifted));
        // nothing over smaller fields
        CHECK_FALSE(try_solve_conjugation(psi, data->ext_degree() - 1).has_value());
      }
    }
  }
  CHECK(base > 0);
  CHECK(extended > 0);
  MESSAGE("base " << base << ", extended " << extended << ", unresolved " << resource);
}

TEST_CASE("maps without data in range") {
  auto F = Field::make(4);
  const auto psi = MapSpec::psi(g(F, 1), FieldElement::zero(F), 2);
  CHECK_THROWS_AS(solve_conjugation(psi), ResourceLimitExceeded);
  CHECK_FALSE(try_solve_conjugation(psi).has_value());
  const auto far = MapSpec::psi(FieldElement(F, 1), FieldElement(F, 3), 2);
  CHECK_FALSE(try_solve_conjugation(far, 16).has_value());
  const auto data = solve_conjugation(far);
  CHECK(data.ext_degree() == 20);
  CHECK(verify_conjugation(data).passed());
  CHECK_THROWS_AS(solve_conjugation(MapSpec::theta(g(F, 1), g(F, 2), 2)), std::invalid_argument);
}

TEST_CASE("fixed point counts from the normal form") {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 8; ++n) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> nonzero(1, F->size() - 1);
    for (int k = 1; k <= 4; ++k) {
      for (int trial = 0; trial < 4; ++trial) {
        const FieldElement c(F, nonzero(rng));
        const auto theta = MapSpec::theta(c, FieldElement::zero(F), k);
        CHECK(fixed_point_count(c, k, n) == brute_fixed(theta));
        const auto fp = theta_fixed_points(c, k);
        CHECK(fp == fixed_points(theta));
      }
    }
  }
  auto F = Field::make(4);
  CHECK_THROWS(fixed_point_count(FieldElement::zero(F), 2, 4));
  CHECK_THROWS(fixed_point_count(g(F, 1), 2, 8));
}

TEST_CASE("conjugation polynomials") {
  std::mt19937_64 rng(47);
  for (int n = 2; n <= 10; ++n) {
    auto F = Field::make(n);
    std::uniform_int_distribution<Word> nonzero(1, F->size() - 1), any(0, F->size() - 1);
    for (int trial = 0; trial < 3; ++trial) {
      const int k = 1 + trial;
      const FieldElement c2(F, nonzero(rng));
      const auto u = conjugation_u(c2, k);
      const auto psi = MapSpec::psi(FieldElement(F, nonzero(rng)), FieldElement(F, any(rng)), k);
      const auto v = conjugation_v(psi);
      std::uint64_t ku = 0, kv = 0;
      for (Word x = 0; x < F->size(); ++x) {
        const FieldElement X(F, x);
        const auto xq = frob_pow(X, k);
        ku += (X + c2 * xq).is_zero() ? 1 : 0;
        kv += (psi.a * frob_pow(xq, k) + psi.b * xq + X).is_zero() ? 1 : 0;
      }
      CHECK((std::uint64_t{1} << linearized_kernel(u, F).size()) == ku);
      CHECK((std::uint64_t{1} << linearized_kernel(v, F).size()) == kv);
      // ker u has size 2^gcd(k,n) in a field where it splits
      CHECK(ku <= (std::uint64_t{1} << std::gcd(k, n)));
    }
  }
}

TEST_CASE("Bluher polynomial roots") {
  for (int n = 1; n <= 7; ++n) {
    auto F = Field::make(n);
    for (int k = 1; k <= 3; ++k) {
      const std::uint64_t big = (std::uint64_t{1} << std::gcd(k, n)) + 1;
      for (Word bits = 1; bits < F->size(); ++bits) {
        const FieldElement a(F, bits);
        std::vector<FieldElement> scan;
        for (Word x = 0; x < F->size(); ++x) {
          const FieldElement X(F, x);
          if ((pow(X, (std::int64_t{1} << k) + 1) + X + a).is_zero()) scan.push_back(X);
        }
        CHECK(bluher_roots(a, k) == scan);
        CHECK((scan.size() <= 2 || scan.size() == big));
        CHECK(bluher_root_count(a, k) == scan.size());
      }
    }
  }
  auto F = Field::make(5);
  CHECK_THROWS(bluher_roots(FieldElement::zero(F), 2));
}
