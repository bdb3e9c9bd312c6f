#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace f2dyn {

/// Coefficient vector of a binary polynomial: bit i is the coefficient of x^i.
using Word = std::uint64_t;

/// Largest supported field degree. Products of two elements must fit in a Word.
inline constexpr int kMaxFieldDegree = 32;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Conway polynomial of the given degree over GF(2), if tabulated.
std::optional<Word> conway_modulus(int degree);

/// Default modulus: the Conway polynomial when tabulated, otherwise the
/// irreducible polynomial of that degree with the smallest encoding.
Word default_modulus(int degree);

/// Irreducibility over GF(2) (Rabin's test).
bool is_irreducible(Word poly);

/// The binary field F_{2^n} = GF(2)[x] / (modulus).
///
/// Immutable after construction. The modulus is validated for irreducibility
/// and a primitive element (the smallest encoding of multiplicative order
/// 2^n - 1) is fixed at construction so that reports are reproducible.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(int degree);
  static FieldPtr with_modulus(Word modulus);

  int degree() const { return degree_; }
  Word modulus() const { return modulus_; }
  /// Number of elements, 2^n.
  Word size() const { return Word{1} << degree_; }
  /// Order of the multiplicative group, 2^n - 1.
  Word group_order() const { return size() - 1; }
  Word primitive_bits() const { return primitive_; }
  /// Prime factorization of 2^n - 1.
  const std::vector<std::pair<Word, unsigned>>& group_order_factors() const { return factors_; }

  bool same_as(const Field& other) const { return modulus_ == other.modulus_; }

  // Raw kernels on encodings. Inputs must already be reduced (< size()).
  Word mul(Word x, Word y) const;
  Word sqr(Word x) const { return mul(x, x); }
  Word pow(Word x, std::uint64_t e) const;
  Word inv(Word x) const;
  Word frob(Word x, int k) const;
  std::uint64_t multiplicative_order(Word x) const;

 private:
  Field(int degree, Word modulus);

  int degree_;
  Word modulus_;
  Word primitive_ = 1;
  std::vector<std::pair<Word, unsigned>> factors_;
};

/// An element of a binary field, stored in the polynomial basis.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Word bits);

  static FieldElement zero(const FieldPtr& field) { return {field, 0}; }
  static FieldElement one(const FieldPtr& field) { return {field, 1}; }
  /// g^e for the field's fixed primitive element g; e may be negative.
  static FieldElement gen_pow(const FieldPtr& field, std::int64_t e);

  const FieldPtr& field() const { return field_; }
  Word bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == 1; }

  friend bool operator==(const FieldElement& x, const FieldElement& y);
  friend bool operator<(const FieldElement& x, const FieldElement& y) { return x.bits_ < y.bits_; }

 private:
  FieldPtr field_;
  Word bits_;
};

void require_same_field(const Field& f, const Field& g);
inline void require_same_field(const FieldElement& x, const FieldElement& y) {
  require_same_field(*x.field(), *y.field());
}

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);
FieldElement pow(const FieldElement& x, std::int64_t e);
/// x^(2^k). Inverse is frob_pow(., n - k mod n).
FieldElement frob_pow(const FieldElement& x, int k);
/// The unique square root, x^(2^(n-1)).
FieldElement sqrt(const FieldElement& x);
/// Absolute trace to GF(2).
int trace(const FieldElement& x);

inline FieldElement operator+(const FieldElement& x, const FieldElement& y) { return add(x, y); }
inline FieldElement operator-(const FieldElement& x, const FieldElement& y) { return add(x, y); }
inline FieldElement operator*(const FieldElement& x, const FieldElement& y) { return mul(x, y); }
inline FieldElement operator/(const FieldElement& x, const FieldElement& y) { return mul(x, inv(y)); }

/// Discrete logarithm base the field's primitive element, in [0, 2^n - 2].
/// Pohlig-Hellman with baby-step giant-step per prime.
std::uint64_t discrete_log(const FieldElement& x);

/// Smallest encoding of multiplicative order 2^n - 1.
FieldElement find_primitive_element(const FieldPtr& field);

/// All x with x^N = alpha, sorted by encoding. Rejects alpha = 0.
/// Empty unless alpha^((2^n-1)/d) = 1 with d = gcd(N, 2^n-1); then exactly d roots.
std::vector<FieldElement> solve_root_equation(const FieldElement& alpha, std::uint64_t exponent);

// -- linearized polynomials -------------------------------------------------

/// L(x) = sum_i coeffs[i] * x^(q^i) with q = 2^q_log.
struct LinearizedPoly {
  int q_log = 1;
  std::vector<FieldElement> coeffs;

  FieldElement operator()(const FieldElement& x) const;
};

/// Solution set of L(x) = t: empty, or particular + span(kernel_basis).
///
/// `particular` is the smallest encoding in the coset and the kernel basis is
/// in reduced echelon form, so the representation is canonical.
struct AffineSolution {
  FieldElement particular;
  std::vector<FieldElement> kernel_basis;

  std::uint64_t size() const { return std::uint64_t{1} << kernel_basis.size(); }
  /// All elements, sorted by encoding.
  std::vector<FieldElement> elements() const;
  bool contains(const FieldElement& x) const;
};

/// Treats x -> L(x) as a GF(2)-linear map on `field` and factors it once, so
/// repeated solves against the same L are cheap.
class LinearizedSolver {
 public:
  LinearizedSolver(const LinearizedPoly& poly, FieldPtr field);

  const std::vector<FieldElement>& kernel() const { return kernel_; }
  std::optional<AffineSolution> solve(const FieldElement& rhs) const;

 private:
  FieldPtr field_;
  // reduced row-echelon rows: image column (bit vector over the field basis)
  // paired with the combination of input basis vectors that produces it
  std::vector<std::pair<Word, Word>> rows_;
  std::vector<FieldElement> kernel_;
};

/// GF(2)-basis of ker L in `field`; the kernel has 2^size elements.
std::vector<FieldElement> linearized_kernel(const LinearizedPoly& poly, const FieldPtr& field);
std::optional<AffineSolution> linearized_solve(const LinearizedPoly& poly, const FieldElement& rhs,
                                               const FieldPtr& field);

// -- extensions --------------------------------------------------------------

/// F_{2^n} -> F_{2^{nt}} determined by the image of the base field's generator x.
class ExtensionEmbedding {
 public:
  ExtensionEmbedding(FieldPtr base, FieldPtr ext, Word image_of_root);

  static ExtensionEmbedding identity(const FieldPtr& field);

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  FieldElement image_of_root() const { return {ext_, images_.size() > 1 ? images_[1] : 1}; }
  int ratio() const { return ext_->degree() / base_->degree(); }
  bool is_identity() const { return ratio() == 1; }

  FieldElement operator()(const FieldElement& x) const;
  /// Preimage of x when x lies in the image of the base field.
  std::optional<FieldElement> restrict(const FieldElement& x) const;

 private:
  FieldPtr base_;
  FieldPtr ext_;
  std::vector<Word> images_;  // images of x^0 .. x^(n-1)
  std::vector<std::pair<Word, Word>> inverse_rows_;
};

/// Builds F_{2^{n*factor}} with its default modulus and embeds base into it by
/// the smallest root of base.modulus.
ExtensionEmbedding build_extension(const FieldPtr& base, int factor);
inline ExtensionEmbedding build_quadratic_extension(const FieldPtr& base) { return build_extension(base, 2); }

/// Lowercase hex encoding with a 0x prefix.
std::string to_hex(Word bits);
Word parse_hex(const std::string& text);

}  // namespace f2dyn
