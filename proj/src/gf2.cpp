#include "f2dyn/gf2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "f2dyn/errors.hpp"
#include "f2dyn/numtheory.hpp"
#include "f2dyn/poly.hpp"

namespace f2dyn {

// -- GF(2)[x] on machine words ----------------------------------------------

namespace {

int word_degree(Word p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

Word word_mod(Word a, Word m) {
  const int dm = word_degree(m);
  for (int da = word_degree(a); da >= dm; da = word_degree(a)) a ^= m << (da - dm);
  return a;
}

// product of two polynomials of degree < 32
Word word_mul(Word a, Word b) {
  Word r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    a <<= 1U;
    b >>= 1U;
  }
  return r;
}

Word word_mulmod(Word a, Word b, Word m) { return word_mod(word_mul(a, b), m); }

Word word_gcd(Word a, Word b) {
  while (b != 0) {
    const Word r = word_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Conway polynomials over GF(2), bit i = coefficient of x^i.
constexpr std::array<Word, 17> kConway = {
    0,        // unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xb,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x5b,     // x^6 + x^4 + x^3 + x + 1
    0x83,     // x^7 + x + 1
    0x11d,    // x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // x^9 + x^4 + 1
    0x46f,    // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    0x805,    // x^11 + x^2 + 1
    0x10eb,   // x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    0x201b,   // x^13 + x^4 + x^3 + x + 1
    0x40a9,   // x^14 + x^7 + x^5 + x^3 + 1
    0x8035,   // x^15 + x^5 + x^4 + x^2 + 1
    0x1002d,  // x^16 + x^5 + x^3 + x^2 + 1
};

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxFieldDegree) {
    throw std::invalid_argument("field degree must be in [1, " + std::to_string(kMaxFieldDegree) +
                                "], got " + std::to_string(degree));
  }
}

}  // namespace

std::optional<Word> conway_modulus(int degree) {
  if (degree >= 1 && degree < static_cast<int>(kConway.size())) return kConway[static_cast<std::size_t>(degree)];
  return std::nullopt;
}

bool is_irreducible(Word f) {
  const int d = word_degree(f);
  if (d < 1 || d > kMaxFieldDegree) return false;
  if (d == 1) return true;
  if ((f & 1U) == 0) return false;
  // Rabin: x^(2^d) = x mod f and gcd(x^(2^(d/p)) - x, f) = 1 for primes p | d
  std::vector<Word> frob(static_cast<std::size_t>(d) + 1);
  frob[0] = 0b10;
  for (int i = 1; i <= d; ++i) frob[static_cast<std::size_t>(i)] = word_mulmod(frob[i - 1], frob[i - 1], f);
  if (frob[static_cast<std::size_t>(d)] != 0b10) return false;
  for (const auto& [p, e] : nt::factorize(static_cast<std::uint64_t>(d))) {
    if (word_gcd(f, frob[static_cast<std::size_t>(d) / p] ^ 0b10) != 1) return false;
  }
  return true;
}

Word default_modulus(int degree) {
  check_degree(degree);
  if (auto c = conway_modulus(degree)) return *c;
  for (Word cand = (Word{1} << degree) | 1U;; cand += 2) {
    if (is_irreducible(cand)) return cand;
  }
}

// -- Field --------------------------------------------------------------------

Field::Field(int degree, Word modulus) : degree_(degree), modulus_(modulus) {
  factors_ = nt::factorize(group_order());
  for (Word cand = 1; cand < size(); ++cand) {
    if (multiplicative_order(cand) == group_order()) {
      primitive_ = cand;
      return;
    }
  }
  throw InvariantViolation("no primitive element found in F_2^" + std::to_string(degree));
}

FieldPtr Field::make(int degree) { return with_modulus(default_modulus(degree)); }

FieldPtr Field::with_modulus(Word modulus) {
  const int degree = word_degree(modulus);
  check_degree(degree);
  if (!is_irreducible(modulus)) {
    throw std::invalid_argument("modulus " + to_hex(modulus) + " is not irreducible over GF(2)");
  }
  return FieldPtr(new Field(degree, modulus));
}

Word Field::mul(Word x, Word y) const {
  const Word top = size();
  Word r = 0;
  while (y != 0) {
    if (y & 1U) r ^= x;
    y >>= 1U;
    x <<= 1U;
    if (x & top) x ^= modulus_;
  }
  return r;
}

Word Field::pow(Word x, std::uint64_t e) const {
  Word result = 1;
  while (e > 0) {
    if (e & 1U) result = mul(result, x);
    x = mul(x, x);
    e >>= 1U;
  }
  return result;
}

Word Field::inv(Word x) const {
  if (x == 0) throw DivisionByZero("inverse of zero");
  // extended Euclid on GF(2)[x]; u_i * x = r_i (mod modulus)
  Word r0 = modulus_, r1 = x, u0 = 0, u1 = 1;
  while (true) {
    if (r1 == 1) return u1;
    if (r0 == 1) return u0;
    if (std::bit_width(r0) < std::bit_width(r1)) {
      std::swap(r0, r1);
      std::swap(u0, u1);
    }
    const int shift = std::bit_width(r0) - std::bit_width(r1);
    r0 ^= r1 << shift;
    u0 ^= u1 << shift;
  }
}

Word Field::frob(Word x, int k) const {
  k %= degree_;
  if (k < 0) k += degree_;
  for (int i = 0; i < k; ++i) x = mul(x, x);
  return x;
}

std::uint64_t Field::multiplicative_order(Word x) const {
  if (x == 0) throw DivisionByZero("order of zero");
  std::uint64_t ord = group_order();
  for (const auto& [p, e] : factors_) {
    for (unsigned i = 0; i < e && pow(x, ord / p) == 1; ++i) ord /= p;
  }
  return ord;
}

// -- FieldElement --------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, Word bits) : field_(std::move(field)), bits_(bits) {
  if (!field_) throw std::invalid_argument("FieldElement: null field");
  if (bits_ >= field_->size()) {
    throw std::invalid_argument("FieldElement: encoding " + to_hex(bits_) + " exceeds field degree " +
                                std::to_string(field_->degree()));
  }
}

FieldElement FieldElement::gen_pow(const FieldPtr& field, std::int64_t e) {
  const auto order = static_cast<std::int64_t>(field->group_order());
  std::int64_t r = e % order;
  if (r < 0) r += order;
  return {field, field->pow(field->primitive_bits(), static_cast<std::uint64_t>(r))};
}

bool operator==(const FieldElement& x, const FieldElement& y) {
  return x.bits_ == y.bits_ && x.field_->same_as(*y.field_);
}

void require_same_field(const Field& f, const Field& g) {
  if (!f.same_as(g)) {
    throw FieldMismatch("field mismatch: " + to_hex(f.modulus()) + " vs " + to_hex(g.modulus()));
  }
}

FieldElement add(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return {x.field(), x.bits() ^ y.bits()};
}

FieldElement mul(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return {x.field(), x.field()->mul(x.bits(), y.bits())};
}

FieldElement inv(const FieldElement& x) { return {x.field(), x.field()->inv(x.bits())}; }

FieldElement pow(const FieldElement& x, std::int64_t e) {
  const Field& f = *x.field();
  if (e < 0) {
    if (x.is_zero()) throw DivisionByZero("zero raised to a negative power");
    const auto r = static_cast<std::uint64_t>(-(e % static_cast<std::int64_t>(f.group_order())));
    return {x.field(), f.pow(f.inv(x.bits()), r)};
  }
  if (x.is_zero()) return {x.field(), e == 0 ? Word{1} : Word{0}};
  return {x.field(), f.pow(x.bits(), static_cast<std::uint64_t>(e) % f.group_order())};
}

FieldElement frob_pow(const FieldElement& x, int k) {
  if (k < 0) throw std::invalid_argument("frob_pow: k must be non-negative");
  return {x.field(), x.field()->frob(x.bits(), k)};
}

FieldElement sqrt(const FieldElement& x) { return frob_pow(x, x.field()->degree() - 1); }

int trace(const FieldElement& x) {
  const Field& f = *x.field();
  Word acc = 0, t = x.bits();
  for (int i = 0; i < f.degree(); ++i) {
    acc ^= t;
    t = f.sqr(t);
  }
  return static_cast<int>(acc);
}

// -- discrete logarithm ------------------------------------------------------

namespace {

// log of target to base `base` of prime order p
std::uint64_t bsgs(const Field& f, Word base, Word target, std::uint64_t p) {
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(p))));
  std::unordered_map<Word, std::uint64_t> baby;
  baby.reserve(m);
  Word cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = f.mul(cur, base);
  }
  const Word giant = f.inv(f.pow(base, m));
  Word y = target;
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(y); it != baby.end()) return (i * m + it->second) % p;
    y = f.mul(y, giant);
  }
  throw InvariantViolation("discrete_log: element outside the subgroup");
}

}  // namespace

std::uint64_t discrete_log(const FieldElement& x) {
  if (x.is_zero()) throw DivisionByZero("discrete log of zero");
  const Field& f = *x.field();
  const std::uint64_t order = f.group_order();
  const Word g = f.primitive_bits();
  std::uint64_t result = 0, modulus = 1;
  for (const auto& [p, e] : f.group_order_factors()) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    const Word gamma = f.pow(g, order / pe);
    const Word h = f.pow(x.bits(), order / pe);
    const Word gamma_p = f.pow(gamma, pe / p);
    std::uint64_t digits = 0, place = 1;
    for (unsigned i = 0; i < e; ++i) {
      const Word shifted = f.mul(f.inv(f.pow(gamma, digits)), h);
      const Word hk = f.pow(shifted, pe / (place * p));
      digits += bsgs(f, gamma_p, hk, p) * place;
      place *= p;
    }
    // CRT merge of (result mod modulus) with (digits mod pe)
    const std::uint64_t t = nt::mulmod((digits + pe - result % pe) % pe, nt::invmod(modulus % pe, pe), pe);
    result += modulus * t;
    modulus *= pe;
  }
  return result % order;
}

FieldElement find_primitive_element(const FieldPtr& field) { return {field, field->primitive_bits()}; }

std::vector<FieldElement> solve_root_equation(const FieldElement& alpha, std::uint64_t exponent) {
  if (alpha.is_zero()) throw std::invalid_argument("solve_root_equation: alpha must be nonzero");
  if (exponent == 0) throw std::invalid_argument("solve_root_equation: exponent must be positive");
  const Field& f = *alpha.field();
  const std::uint64_t order = f.group_order();
  const std::uint64_t d = nt::gcd(exponent % order, order);  // gcd(0, order) = order
  const std::uint64_t m = order / d;
  if (f.pow(alpha.bits(), m) != 1) return {};
  const std::uint64_t e = discrete_log(alpha);
  // solve (exponent/d) y = e/d mod m; gcd(exponent/d, m) = 1
  const std::uint64_t y0 = m == 1 ? 0 : nt::mulmod((e / d) % m, nt::invmod((exponent / d) % m, m), m);
  std::vector<FieldElement> out;
  out.reserve(d);
  const Word step = f.pow(f.primitive_bits(), m);
  Word cur = f.pow(f.primitive_bits(), y0);
  for (std::uint64_t i = 0; i < d; ++i) {
    out.emplace_back(alpha.field(), cur);
    cur = f.mul(cur, step);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// -- linearized polynomials ----------------------------------------------------

FieldElement LinearizedPoly::operator()(const FieldElement& x) const {
  FieldElement acc = FieldElement::zero(x.field());
  FieldElement power = x;  // x^(q^i)
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) power = frob_pow(power, q_log);
    acc = acc + coeffs[i] * power;
  }
  return acc;
}

namespace {

using Row = std::pair<Word, Word>;  // (value, combination of inputs)

int top_bit(Word w) { return word_degree(w); }

// Reduce (value, comb) against fully reduced rows; returns the residue.
Row reduce(const std::vector<Row>& rows, Row v) {
  for (const auto& [val, comb] : rows) {
    if (v.first & (Word{1} << top_bit(val))) {
      v.first ^= val;
      v.second ^= comb;
    }
  }
  return v;
}

// Insert v (already reduced) keeping every pivot bit unique to its row.
void insert(std::vector<Row>& rows, Row v) {
  const Word pivot = Word{1} << top_bit(v.first);
  for (auto& r : rows) {
    if (r.first & pivot) {
      r.first ^= v.first;
      r.second ^= v.second;
    }
  }
  rows.push_back(v);
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.first > b.first; });
}

// Reduced echelon basis of a GF(2) subspace given by spanning vectors.
std::vector<Word> echelon(const std::vector<Word>& span) {
  std::vector<Row> rows;
  for (Word v : span) {
    Row r = reduce(rows, {v, 0});
    if (r.first != 0) insert(rows, r);
  }
  std::vector<Word> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.first);
  return out;
}

Word reduce_by_basis(Word x, const std::vector<FieldElement>& basis) {
  for (const auto& b : basis) {
    if (x & (Word{1} << top_bit(b.bits()))) x ^= b.bits();
  }
  return x;
}

}  // namespace

std::vector<FieldElement> AffineSolution::elements() const {
  std::vector<FieldElement> out;
  out.reserve(size());
  for (std::uint64_t mask = 0; mask < size(); ++mask) {
    Word v = particular.bits();
    for (std::size_t i = 0; i < kernel_basis.size(); ++i) {
      if (mask >> i & 1U) v ^= kernel_basis[i].bits();
    }
    out.emplace_back(particular.field(), v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool AffineSolution::contains(const FieldElement& x) const {
  require_same_field(x, particular);
  return reduce_by_basis(x.bits() ^ particular.bits(), kernel_basis) == 0;
}

LinearizedSolver::LinearizedSolver(const LinearizedPoly& poly, FieldPtr field) : field_(std::move(field)) {
  for (const auto& c : poly.coeffs) require_same_field(*c.field(), *field_);
  std::vector<Word> kernel_span;
  for (int j = 0; j < field_->degree(); ++j) {
    const Word image = poly(FieldElement(field_, Word{1} << j)).bits();
    Row r = reduce(rows_, {image, Word{1} << j});
    if (r.first == 0) {
      kernel_span.push_back(r.second);
    } else {
      insert(rows_, r);
    }
  }
  for (Word k : echelon(kernel_span)) kernel_.emplace_back(field_, k);
}

std::optional<AffineSolution> LinearizedSolver::solve(const FieldElement& rhs) const {
  require_same_field(*rhs.field(), *field_);
  const Row r = reduce(rows_, {rhs.bits(), 0});
  if (r.first != 0) return std::nullopt;
  return AffineSolution{FieldElement(field_, reduce_by_basis(r.second, kernel_)), kernel_};
}

std::vector<FieldElement> linearized_kernel(const LinearizedPoly& poly, const FieldPtr& field) {
  return LinearizedSolver(poly, field).kernel();
}

std::optional<AffineSolution> linearized_solve(const LinearizedPoly& poly, const FieldElement& rhs,
                                               const FieldPtr& field) {
  return LinearizedSolver(poly, field).solve(rhs);
}

// -- extensions ----------------------------------------------------------------

ExtensionEmbedding::ExtensionEmbedding(FieldPtr base, FieldPtr ext, Word image_of_root)
    : base_(std::move(base)), ext_(std::move(ext)) {
  if (ext_->degree() % base_->degree() != 0) {
    throw std::invalid_argument("extension degree must be a multiple of the base degree");
  }
  poly::Coeffs minpoly;
  for (int i = 0; i <= base_->degree(); ++i) minpoly.push_back(base_->modulus() >> i & 1U);
  if (poly::eval(*ext_, minpoly, image_of_root) != 0) {
    throw std::invalid_argument("image_of_root is not a root of the base modulus");
  }
  Word cur = 1;
  for (int i = 0; i < base_->degree(); ++i) {
    images_.push_back(cur);
    Row r = reduce(inverse_rows_, {cur, Word{1} << i});
    if (r.first == 0) throw InvariantViolation("embedding is not injective");
    insert(inverse_rows_, r);
    cur = ext_->mul(cur, image_of_root);
  }
}

ExtensionEmbedding ExtensionEmbedding::identity(const FieldPtr& field) {
  return {field, field, field->degree() == 1 ? Word{1} : Word{2}};
}

FieldElement ExtensionEmbedding::operator()(const FieldElement& x) const {
  require_same_field(*x.field(), *base_);
  Word out = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (x.bits() >> i & 1U) out ^= images_[i];
  }
  return {ext_, out};
}

std::optional<FieldElement> ExtensionEmbedding::restrict(const FieldElement& x) const {
  require_same_field(*x.field(), *ext_);
  const Row r = reduce(inverse_rows_, {x.bits(), 0});
  if (r.first != 0) return std::nullopt;
  return FieldElement(base_, r.second);
}

ExtensionEmbedding build_extension(const FieldPtr& base, int factor) {
  if (factor < 1) throw std::invalid_argument("extension factor must be positive");
  if (factor == 1) return ExtensionEmbedding::identity(base);
  const int degree = base->degree() * factor;
  if (degree > kMaxFieldDegree) {
    throw ResourceLimitExceeded("extension degree " + std::to_string(degree) + " exceeds limit " +
                                std::to_string(kMaxFieldDegree));
  }
  FieldPtr ext = Field::make(degree);
  poly::Coeffs minpoly;
  for (int i = 0; i <= base->degree(); ++i) minpoly.push_back(base->modulus() >> i & 1U);
  const auto roots = poly::roots(*ext, minpoly);
  if (roots.empty()) throw InvariantViolation("base modulus has no root in its extension");
  return {base, ext, roots.front()};
}

std::string to_hex(Word bits) {
  std::ostringstream os;
  os << "0x" << std::hex << bits;
  return os.str();
}

Word parse_hex(const std::string& text) {
  std::string digits = text;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 16 ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isxdigit(c) != 0; })) {
    throw std::invalid_argument("not a hex integer: '" + text + "'");
  }
  return std::stoull(digits, nullptr, 16);
}

}  // namespace f2dyn
