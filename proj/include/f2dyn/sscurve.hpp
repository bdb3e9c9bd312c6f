#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "f2dyn/gf2.hpp"

namespace f2dyn {

/// E : y^2 + a1 y = x^3 + a2 x over a binary field, a1 != 0.
///
/// This is the supersingular shape whose doubling map has x-coordinate
/// (x^4 + a2^2) / a1^2. Other Weierstrass shapes are not representable.
class Curve {
 public:
  Curve(FieldElement a1, FieldElement a2);

  const FieldElement& a1() const { return a1_; }
  const FieldElement& a2() const { return a2_; }
  const FieldPtr& field() const { return a1_.field(); }

  /// The same curve over a larger field.
  Curve base_change(const ExtensionEmbedding& emb) const;

 private:
  FieldElement a1_;
  FieldElement a2_;
};

/// A point of E, affine or the identity (point at infinity).
class CurvePoint {
 public:
  static CurvePoint identity(const FieldPtr& field) { return {FieldElement::zero(field), FieldElement::zero(field), true}; }
  static CurvePoint affine(FieldElement x, FieldElement y) { return {std::move(x), std::move(y), false}; }

  bool is_identity() const { return identity_; }
  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    return p.identity_ == q.identity_ && p.x_ == q.x_ && p.y_ == q.y_;
  }

 private:
  CurvePoint(FieldElement x, FieldElement y, bool id) : x_(std::move(x)), y_(std::move(y)), identity_(id) {}

  FieldElement x_;
  FieldElement y_;
  bool identity_;
};

/// Curve whose doubling x-map is theta_{a,b,2}: a1^2 = a^-1, a2^2 = a1^2 b.
Curve curve_from_map(const FieldElement& a, const FieldElement& b);

/// (x0^4 + a2^2) / a1^2.
FieldElement duplication_x(const Curve& curve, const FieldElement& x0);

bool on_curve(const Curve& curve, const CurvePoint& p);
/// -(x, y) = (x, y + a1).
CurvePoint negate(const Curve& curve, const CurvePoint& p);
/// Chord-tangent group law. Throws std::invalid_argument for off-curve inputs.
CurvePoint point_add(const Curve& curve, const CurvePoint& p, const CurvePoint& q);
CurvePoint point_double(const Curve& curve, const CurvePoint& p);
CurvePoint scalar_mul(const Curve& curve, std::uint64_t n, const CurvePoint& p);

/// P or -P, i.e. the two points share an x-coordinate (or both are the identity).
bool same_up_to_sign(const Curve& curve, const CurvePoint& p, const CurvePoint& q);

/// Points of E with a given x-coordinate.
struct Lift {
  Curve curve;                      // E over the field the points live in
  std::vector<CurvePoint> points;   // {P, -P}
  bool rational;                    // true if y lies in the curve's own field
};

/// Solves y^2 + a1 y = x0^3 + a2 x0 in the curve's field, else in `ext`.
Lift lift_x(const Curve& curve, const FieldElement& x0, const ExtensionEmbedding& ext);

/// |E(F)| over the curve's field, by scanning x. Deterministic for every `jobs`.
std::uint64_t point_count(const Curve& curve, int jobs = 1);

/// All points, identity first, then affine points by (x, y) encoding.
std::vector<CurvePoint> enumerate_points(const Curve& curve);

/// E(F) = Z/n1 x Z/n2 with n1 | n2.
struct GroupStructure {
  std::uint64_t order;
  std::uint64_t n1;
  std::uint64_t n2;

  friend bool operator==(const GroupStructure&, const GroupStructure&) = default;
};

std::uint64_t point_order(const Curve& curve, const CurvePoint& p, std::uint64_t group_order);

/// Computes the exponent n2 as the lcm of point orders; n1 = order / n2.
/// Throws InvariantViolation if the result is not a valid structure.
GroupStructure group_structure(const Curve& curve, int jobs = 1);

/// Explicit isomorphism E(F) -> Z/n1 x Z/n2 via generators of orders n1 and n2.
class GroupBasis {
 public:
  GroupBasis(const Curve& curve, const GroupStructure& gs);

  const GroupStructure& structure() const { return gs_; }
  const CurvePoint& gen1() const { return gen1_; }
  const CurvePoint& gen2() const { return gen2_; }
  /// (a1, a2) with P = a1 gen1 + a2 gen2.
  std::pair<std::uint64_t, std::uint64_t> coordinates(const CurvePoint& p) const;

 private:
  Curve curve_;
  GroupStructure gs_;
  CurvePoint gen1_;
  CurvePoint gen2_;
  std::unordered_map<std::uint64_t, std::uint64_t> log2_;  // point key -> j with j * gen2
};

/// Least k >= 1 with 2^k P = +-P: the theta_{a,b,2} orbit length of x(P).
std::uint64_t predict_orbit_length(const Curve& curve, const CurvePoint& p);

/// l if 2^l P = +-P, otherwise 2l.
std::uint64_t half_multiple_relation(std::uint64_t l, const Curve& curve, const CurvePoint& p);

/// lcm(m1, m2) where m_i is the least k with 2^k a_i = +-a_i mod n_i, (a1, a2) the coordinates of P.
std::uint64_t coordinate_lcm(const GroupBasis& basis, const CurvePoint& p);

struct CycleCatalogEntry {
  std::uint64_t d1, d2;
  std::uint64_t m1, m2;      // n_i / d_i
  std::uint64_t ord1, ord2;  // least k with 2^k = +-1 mod m_i
  std::uint64_t length;      // least k with 2^k = +1 mod both or -1 mod both
  std::uint64_t point_count; // phi(m1) * phi(m2)
  /// Cycles of this length in the base-field graph (point_count / (2 length);
  /// the identity entry is the fixed point at infinity). Set only for catalogs
  /// built from the base-field group.
  std::optional<std::uint64_t> cycle_count;
};

/// One entry per divisor pair (d1 | n1, d2 | n2), sorted by (length, d1, d2).
std::vector<CycleCatalogEntry> cycle_catalog(const GroupStructure& gs, bool base_level);

/// Exact lengths realized by some entry.
std::set<std::uint64_t> catalog_lengths(const std::vector<CycleCatalogEntry>& catalog);

/// Lengths allowed by the half-multiple relation without knowing the sign pattern
/// of a point: lcm(ord1, ord2) for cyclic groups, {l, 2l} otherwise.
std::set<std::uint64_t> catalog_candidate_lengths(const GroupStructure& gs);

std::uint64_t euler_phi(std::uint64_t m);

}  // namespace f2dyn
