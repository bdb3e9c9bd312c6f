#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "f2dyn/gf2.hpp"

namespace f2dyn {

/// A point of P^1(F_{2^n}): a field element or the point at infinity.
class ProjPoint {
 public:
  static ProjPoint finite(FieldElement x) { return ProjPoint(std::move(x), false); }
  static ProjPoint infinity(const FieldPtr& field) { return ProjPoint(FieldElement::zero(field), true); }

  bool is_infinity() const { return infinite_; }
  const FieldElement& value() const;
  const FieldPtr& field() const { return x_.field(); }

  /// Dense index: the encoding for finite points, 2^n for infinity.
  Word index() const { return infinite_ ? field()->size() : x_.bits(); }
  static ProjPoint from_index(const FieldPtr& field, Word index);

  friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
    return p.infinite_ == q.infinite_ && p.x_ == q.x_;
  }
  friend bool operator<(const ProjPoint& p, const ProjPoint& q) { return p.index() < q.index(); }

 private:
  ProjPoint(FieldElement x, bool inf) : x_(std::move(x)), infinite_(inf) {}

  FieldElement x_;
  bool infinite_;
};

enum class MapKind { theta, psi };

/// theta_{a,b,k}(x) = a x^(2^k) + b and psi_{a,b,k}(x) = 1 / (a x^(2^k) + b) on P^1.
struct MapSpec {
  MapKind kind;
  FieldElement a;
  FieldElement b;
  int k;

  MapSpec(MapKind kind, FieldElement a, FieldElement b, int k);

  static MapSpec theta(FieldElement a, FieldElement b, int k) { return {MapKind::theta, std::move(a), std::move(b), k}; }
  static MapSpec psi(FieldElement a, FieldElement b, int k) { return {MapKind::psi, std::move(a), std::move(b), k}; }

  const FieldPtr& field() const { return a.field(); }
  /// Exponent actually applied: x^(2^k) = x^(2^(k mod n)) on F_{2^n}.
  int effective_k() const { return k % field()->degree(); }
};

std::string to_string(MapKind kind);
MapKind parse_map_kind(const std::string& text);

ProjPoint eval(const MapSpec& map, const ProjPoint& x);

/// successor[i] = index of map(point with index i), for every point of P^1.
/// Work is split over `jobs` threads; the result does not depend on `jobs`.
std::vector<std::uint32_t> successor_table(const MapSpec& map, int jobs = 1);

/// True iff the map permutes P^1 (checked by full enumeration).
bool is_bijection_check(const MapSpec& map);

/// m-fold iterate of x -> a x^q + b in the form lead * x^(q^m) + tail.
struct IterationClosedForm {
  std::uint64_t m;
  int q_log;
  std::uint64_t s_m;  // 1 + q + ... + q^(m-1)
  FieldElement lead;  // a^(s_m)
  FieldElement tail;  // sum_{t<m} a^(s_t) b^(q^t)

  FieldElement apply(const FieldElement& x) const;
};

/// q = 2^q_log. Throws ResourceLimitExceeded if s_m overflows 64 bits.
IterationClosedForm closed_form(const FieldElement& a, const FieldElement& b, int q_log, std::uint64_t m);

enum class Parity { even, odd };

/// Quartic normal form for theta_{a,b,k}, k >= 2: with j = k/2 (even k) or
/// j = k (odd k), theta_{c,d,2}^j equals theta_{a,b,k} (even) or theta_{a,b,k}^2 (odd).
struct QuarticReduction {
  FieldElement c;
  FieldElement d;
  ExtensionEmbedding ext;
  Parity parity;
  int steps;  // j
  int k;      // exponent reduced; k < 2 is aliased to k + n (same map on the base field)
};

/// Smallest solution in (extension degree, encoding of c, encoding of d) order;
/// extensions are searched up to total degree `max_degree`. For k < 2 the
/// equivalent exponent k + n is used (k + 2n when n = 1).
QuarticReduction reduce_to_quartic(const FieldElement& a, const FieldElement& b, int k,
                                   int max_degree = kMaxFieldDegree);

/// The two equations the reduction must satisfy, checked for arbitrary (c, d).
/// k >= 2; pass red.k for a solver result.
bool satisfies_quartic_equations(const FieldElement& a, const FieldElement& b, int k, const FieldElement& c,
                                 const FieldElement& d);

/// Pointwise check of the reduction identity over all of P^1 of the base field.
bool verify_quartic_reduction(const FieldElement& a, const FieldElement& b, int k, const QuarticReduction& red);

/// Points with map(x) = x, by scanning P^1.
std::vector<ProjPoint> fixed_points(const MapSpec& map);

/// The cycle through x0, starting at x0.
std::vector<ProjPoint> orbit(const MapSpec& map, const ProjPoint& x0);

struct CycleStructure {
  std::vector<std::vector<ProjPoint>> cycles;
  std::map<std::size_t, std::size_t> summary;  // length -> number of cycles

  std::size_t point_count() const;
  /// Cycle length of every point, by point index.
  std::vector<std::size_t> length_by_index() const;
};

/// Cycles in ascending order of their smallest point (infinity last); each
/// cycle starts at its smallest point.
CycleStructure cycle_decomposition(const MapSpec& map, int jobs = 1);

/// Orbit length under the m-fold composite of a map whose orbit has length l1.
std::uint64_t orbit_length_relation(std::uint64_t l1, std::uint64_t m);

/// Lengths theta_{a,b,k} may realize given the quartic-level length l3.
std::set<std::uint64_t> odd_k_length_options(std::uint64_t l3, Parity parity);

}  // namespace f2dyn
