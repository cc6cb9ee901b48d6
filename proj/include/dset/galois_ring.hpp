#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dset/field.hpp"

namespace dset {

class GaloisRing;
using RingPtr = std::shared_ptr<const GaloisRing>;

// GR(4,t) = (Z/4)[x]/(phi). Codes pack coefficients as base-4 digits, so the
// additive group is C_4^t with digit i the coefficient of h^i.
class GaloisRing {
 public:
  using Code = std::uint32_t;

  GaloisRing(unsigned t, Poly phi2, Poly phi);

  unsigned t() const { return t_; }
  std::uint32_t size() const { return size_; }
  const Poly& phi2() const { return phi2_; }
  const Poly& phi() const { return phi_; }
  const FieldPtr& residue_field() const { return residue_; }

  Code add(Code a, Code b) const;
  Code neg(Code a) const;
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code mul(Code a, Code b) const;
  Code times(std::int64_t n, Code a) const;  // n * a in (R,+)
  Code pow(Code a, std::uint64_t e) const;

  Code h() const { return t_ == 1 ? 0 : 4; }
  // h^i for any integer i; h has order 2^t - 1.
  Code h_pow(std::int64_t i) const;

  std::vector<std::uint32_t> coeffs(Code a) const;
  Code from_coeffs(const std::vector<std::uint32_t>& c) const;

  // pi: coefficient-wise reduction mod 2 into the residue field.
  FiniteField::Code project(Code a) const;
  // The {0,1}-coefficient lift of a residue field element.
  Code lift01(FiniteField::Code y) const;
  // phi^{-1}: GF(2^t) -> 2R, 0 -> 0, g^i -> 2h^i.
  Code ideal_iso(FiniteField::Code y) const;

  std::string format(Code a) const;

 private:
  unsigned t_;
  std::uint32_t size_;
  Poly phi2_;
  Poly phi_;
  FieldPtr residue_;
  std::vector<Code> h_powers_;
};

// Monic lift of phi2 to Z/4 dividing x^(2^t - 1) - 1. Throws LiftFailure when
// the lifted polynomial fails the division check.
Poly hensel_lift(const Poly& phi2);

// Default phi2 is the numerically smallest primitive binary polynomial, so
// that t = 3 gives x^3 + x + 1.
RingPtr galois_ring_make(unsigned t, std::optional<Poly> phi2 = std::nullopt);

class RingElement {
 public:
  RingElement(RingPtr ring, std::uint32_t code);
  const RingPtr& ring() const { return ring_; }
  std::uint32_t code() const { return code_; }
  std::vector<std::uint32_t> coeffs() const { return ring_->coeffs(code_); }
  RingElement operator+(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  bool operator==(const RingElement& o) const { return code_ == o.code_ && ring_ == o.ring_; }
  FieldElement project() const;

 private:
  RingPtr ring_;
  std::uint32_t code_;
};

FieldElement ring_projection(const RingElement& x);
RingElement ideal_iso(const RingPtr& ring, const FieldElement& y);

}  // namespace dset
