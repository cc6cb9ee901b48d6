/**
 * @file field.hpp
 * @brief Prime-power finite fields GF(p^m) in a polynomial basis.
 *
 * Elements are packed as integer codes: the coefficient of x^i is the i-th
 * base-p digit. Code 0 is zero, code 1 is one. Multiplication goes through
 * log/antilog tables of the primitive element x.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dset {

// Dense polynomial, low-to-high coefficients.
using Poly = std::vector<std::uint32_t>;

// How candidate moduli are ranked when searching for the smallest primitive.
enum class PolyOrder {
  LowDegreeFirst,   // compare c0, then c1, ...
  HighDegreeFirst,  // compare c_{m-1}, then c_{m-2}, ... (numeric order)
};

bool is_primitive_poly(std::uint32_t p, const Poly& f);
Poly smallest_primitive_poly(std::uint32_t p, unsigned m,
                             PolyOrder order = PolyOrder::LowDegreeFirst);
std::string poly_to_string(const Poly& f, std::uint32_t modulus_for_signs = 0);

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FieldElement {
 public:
  FieldElement(FieldPtr field, std::uint32_t code);

  const FieldPtr& field() const { return field_; }
  std::uint32_t code() const { return code_; }
  std::vector<std::uint32_t> coeffs() const;
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement pow(std::int64_t e) const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  const FiniteField& same_field(const FieldElement& o) const;
  FieldPtr field_;
  std::uint32_t code_;
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  using Code = std::uint32_t;

  // Use field_make; the constructor assumes a verified primitive modulus.
  FiniteField(std::uint32_t p, unsigned m, Poly modulus);

  std::uint32_t p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint32_t size() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::int64_t e) const;
  Code scale(std::uint32_t c, Code a) const;  // c taken mod p

  // primitive^i for any integer i.
  Code prim_pow(std::int64_t i) const;
  // Discrete log base the primitive element; a must be nonzero.
  std::uint64_t log(Code a) const;
  std::uint64_t mult_order(Code a) const;

  Code frobenius(Code a, unsigned k) const;
  // Relative trace down to GF(p^sub_degree); sub_degree must divide m.
  Code trace(Code a, unsigned sub_degree = 1) const;
  bool in_subfield(Code a, unsigned sub_degree) const;

  std::vector<std::uint32_t> coeffs(Code a) const;
  Code from_coeffs(std::span<const std::uint32_t> c) const;
  std::uint32_t digit(Code a, unsigned i) const;

  Code primitive_code() const { return log_to_code_[1 % (q_ - 1)]; }
  FieldElement element(Code a) const;
  FieldElement primitive() const { return element(primitive_code()); }
  std::string format(Code a) const;

 private:
  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  Poly modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i <= m
  std::vector<Code> log_to_code_;     // size q-1
  std::vector<std::uint32_t> code_to_log_;
};

// Builds GF(p^m). Without an override the modulus is the smallest primitive
// polynomial in low-degree-first lexicographic order.
FieldPtr field_make(std::uint32_t p, unsigned m,
                    std::optional<Poly> modulus_override = std::nullopt);

FieldElement field_trace(const FieldElement& x, unsigned sub_degree);
FieldElement frobenius(const FieldElement& x, unsigned k);

// Embedding GF(p^a) -> GF(p^b), a | b, sending the small primitive element to
// the smallest-code root of its minimal polynomial. Indexed by small code.
std::vector<FiniteField::Code> embed(const FiniteField& small, const FiniteField& big);

struct Hyperplane {
  std::vector<std::uint32_t> points;  // sorted codes in the ambient space
  std::string label;
  bool contains(std::uint32_t code) const;
};

// ambient_dim 1: GF(p)-hyperplanes of the field, H_i = H_0 * primitive^i with
// H_0 the absolute-trace kernel. ambient_dim 2: the GF(q)-lines of GF(q)^2 as
// codes x + q*y, ordered <(1,0)>, <(0,1)>, <(1,g^0)>, <(1,g^1)>, ...
std::vector<Hyperplane> hyperplanes(const FiniteField& field, unsigned ambient_dim);

}  // namespace dset
