#include "dset/field.hpp"

#include <algorithm>
#include <sstream>

#include "dset/error.hpp"
#include "dset/numtheory.hpp"

namespace dset {

namespace {

// Arithmetic in GF(p)[x]/(f) on coefficient vectors of length deg f.
struct PolyModRing {
  std::uint32_t p;
  Poly f;  // monic
  unsigned m;

  Poly reduce(Poly a) const {
    for (std::size_t i = a.size(); i-- > m;) {
      std::uint32_t c = a[i] % p;
      if (c == 0) continue;
      for (unsigned j = 0; j <= m; ++j) {
        std::uint32_t& t = a[i - m + j];
        t = (t + (p - c) * f[j]) % p;
      }
    }
    a.resize(m, 0);
    for (auto& c : a) c %= p;
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly r(2 * m, 0);
    for (unsigned i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < m; ++j)
        r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return reduce(std::move(r));
  }

  Poly x_pow(std::uint64_t e) const {
    Poly result = reduce(Poly{1});
    Poly base = reduce(Poly{0, 1});
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  bool is_one(const Poly& a) const {
    if (a[0] != 1) return false;
    for (unsigned i = 1; i < m; ++i)
      if (a[i] != 0) return false;
    return true;
  }
};

}  // namespace

bool is_primitive_poly(std::uint32_t p, const Poly& f) {
  if (!is_prime(p) || f.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (f[m] != 1 || f[0] % p == 0) return false;
  for (auto c : f)
    if (c >= p) return false;
  const std::uint64_t order = ipow(p, m) - 1;
  PolyModRing ring{p, f, m};
  if (!ring.is_one(ring.x_pow(order))) return false;
  for (auto r : prime_divisors(order))
    if (ring.is_one(ring.x_pow(order / r))) return false;
  return true;
}

Poly smallest_primitive_poly(std::uint32_t p, unsigned m, PolyOrder order) {
  const std::uint64_t count = ipow(p, m);
  Poly f(m + 1, 0);
  f[m] = 1;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t rest = n;
    for (unsigned i = 0; i < m; ++i) {
      unsigned slot = order == PolyOrder::LowDegreeFirst ? m - 1 - i : i;
      f[slot] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_primitive_poly(p, f)) return f;
  }
  fail(ErrorCode::NonPrimitiveModulus, "no primitive polynomial found");
}

std::string poly_to_string(const Poly& f, std::uint32_t modulus_for_signs) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    std::int64_t c = f[i];
    if (c == 0) continue;
    if (modulus_for_signs && c > static_cast<std::int64_t>(modulus_for_signs / 2))
      c -= modulus_for_signs;
    bool negative = c < 0;
    std::int64_t mag = negative ? -c : c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    if (mag != 1 || i == 0) out << mag;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(FieldPtr field, std::uint32_t code)
    : field_(std::move(field)), code_(code) {
  if (!field_ || code_ >= field_->size())
    fail(ErrorCode::InvalidArgument, "field element code out of range");
}

std::vector<std::uint32_t> FieldElement::coeffs() const { return field_->coeffs(code_); }

const FiniteField& FieldElement::same_field(const FieldElement& o) const {
  if (field_ != o.field_ &&
      (field_->p() != o.field_->p() || field_->modulus() != o.field_->modulus()))
    fail(ErrorCode::CrossField, "arithmetic between elements of different fields");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, same_field(o).add(code_, o.code_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, same_field(o).sub(code_, o.code_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, same_field(o).mul(code_, o.code_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, same_field(o).div(code_, o.code_)};
}
FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field_->pow(code_, e)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  same_field(o);
  return code_ == o.code_;
}
std::string FieldElement::to_string() const { return field_->format(code_); }

// ------------------------------------------------------------------- field

FiniteField::FiniteField(std::uint32_t p, unsigned m, Poly modulus)
    : p_(p), m_(m), q_(static_cast<std::uint32_t>(ipow(p, m))), modulus_(std::move(modulus)) {
  pow_p_.resize(m_ + 1);
  pow_p_[0] = 1;
  for (unsigned i = 1; i <= m_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

  // x mod f, then successive multiplication by x.
  PolyModRing ring{p_, modulus_, m_};
  Poly x = ring.reduce(Poly{0, 1});
  Poly cur = ring.reduce(Poly{1});
  log_to_code_.resize(q_ - 1);
  code_to_log_.assign(q_, 0);
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    Code c = from_coeffs(cur);
    log_to_code_[i] = c;
    code_to_log_[c] = i;
    cur = ring.mul(cur, x);
  }
}

std::uint32_t FiniteField::digit(Code a, unsigned i) const { return (a / pow_p_[i]) % p_; }

std::vector<std::uint32_t> FiniteField::coeffs(Code a) const {
  std::vector<std::uint32_t> c(m_);
  for (unsigned i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

FiniteField::Code FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
  Code a = 0;
  for (std::size_t i = std::min<std::size_t>(c.size(), m_); i-- > 0;) a = a * p_ + c[i] % p_;
  return a;
}

FiniteField::Code FiniteField::add(Code a, Code b) const {
  if (p_ == 2) return a ^ b;
  Code r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

FiniteField::Code FiniteField::neg(Code a) const {
  if (p_ == 2) return a;
  Code r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((p_ - a % p_) % p_) * pow_p_[i];
    a /= p_;
  }
  return r;
}

FiniteField::Code FiniteField::sub(Code a, Code b) const { return add(a, neg(b)); }

FiniteField::Code FiniteField::mul(Code a, Code b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t l = static_cast<std::uint64_t>(code_to_log_[a]) + code_to_log_[b];
  return log_to_code_[l % (q_ - 1)];
}

FiniteField::Code FiniteField::inv(Code a) const {
  if (a == 0) fail(ErrorCode::InvalidArgument, "inverse of zero");
  return log_to_code_[(q_ - 1 - code_to_log_[a]) % (q_ - 1)];
}

FiniteField::Code FiniteField::pow(Code a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) fail(ErrorCode::InvalidArgument, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  std::int64_t l = mod(static_cast<std::int64_t>(code_to_log_[a]) * mod(e, q_ - 1), q_ - 1);
  return log_to_code_[l];
}

FiniteField::Code FiniteField::scale(std::uint32_t c, Code a) const {
  c %= p_;
  if (c == 0 || a == 0) return 0;
  Code r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_) * c % p_) * pow_p_[i];
    a /= p_;
  }
  return r;
}

FiniteField::Code FiniteField::prim_pow(std::int64_t i) const {
  return log_to_code_[mod(i, q_ - 1)];
}

std::uint64_t FiniteField::log(Code a) const {
  if (a == 0) fail(ErrorCode::InvalidArgument, "log of zero");
  return code_to_log_[a];
}

std::uint64_t FiniteField::mult_order(Code a) const {
  if (a == 0) fail(ErrorCode::InvalidArgument, "order of zero");
  std::uint64_t n = q_ - 1;
  return n / std::gcd<std::uint64_t>(n, code_to_log_[a]);
}

FiniteField::Code FiniteField::frobenius(Code a, unsigned k) const {
  if (a == 0) return 0;
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k % m_; ++i) e = e * p_ % (q_ - 1);
  return log_to_code_[static_cast<std::uint64_t>(code_to_log_[a]) * e % (q_ - 1)];
}

FiniteField::Code FiniteField::trace(Code a, unsigned sub_degree) const {
  if (sub_degree == 0 || m_ % sub_degree != 0)
    fail(ErrorCode::InvalidArgument, "trace sub_degree must divide the extension degree");
  Code t = 0;
  for (unsigned i = 0; i < m_ / sub_degree; ++i) t = add(t, frobenius(a, sub_degree * i));
  return t;
}

bool FiniteField::in_subfield(Code a, unsigned sub_degree) const {
  return frobenius(a, sub_degree) == a;
}

FieldElement FiniteField::element(Code a) const { return FieldElement(shared_from_this(), a); }

std::string FiniteField::format(Code a) const {
  auto c = coeffs(a);
  Poly f(c.begin(), c.end());
  return poly_to_string(f);
}

FieldPtr field_make(std::uint32_t p, unsigned m, std::optional<Poly> modulus_override) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (m < 1) fail(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (ipow(p, m) > (1u << 20)) fail(ErrorCode::InvalidArgument, "field larger than 2^20");
  Poly f;
  if (modulus_override) {
    f = *modulus_override;
    if (f.size() != m + 1 || f[m] != 1)
      fail(ErrorCode::InvalidArgument, "modulus override must be monic of degree m");
    if (!is_primitive_poly(p, f))
      fail(ErrorCode::NonPrimitiveModulus, poly_to_string(f) + " is not primitive");
  } else {
    f = smallest_primitive_poly(p, m);
  }
  return std::make_shared<const FiniteField>(p, m, std::move(f));
}

FieldElement field_trace(const FieldElement& x, unsigned sub_degree) {
  return x.field()->element(x.field()->trace(x.code(), sub_degree));
}

FieldElement frobenius(const FieldElement& x, unsigned k) {
  return x.field()->element(x.field()->frobenius(x.code(), k));
}

std::vector<FiniteField::Code> embed(const FiniteField& small, const FiniteField& big) {
  if (small.p() != big.p() || big.m() % small.m() != 0)
    fail(ErrorCode::InvalidArgument, "no embedding between these fields");
  const Poly& f = small.modulus();
  auto eval = [&](FiniteField::Code z) {
    FiniteField::Code acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = big.add(big.mul(acc, z), f[i] % big.p());
    return acc;
  };
  FiniteField::Code root = 0;
  for (FiniteField::Code z = 1; z < big.size(); ++z) {
    if (eval(z) == 0) {
      root = z;
      break;
    }
  }
  if (root == 0) fail(ErrorCode::InvalidArgument, "minimal polynomial has no root");
  std::vector<FiniteField::Code> map(small.size(), 0);
  for (std::uint32_t i = 0; i + 1 < small.size(); ++i)
    map[small.prim_pow(i)] = big.pow(root, i);
  return map;
}

bool Hyperplane::contains(std::uint32_t code) const {
  return std::binary_search(points.begin(), points.end(), code);
}

std::vector<Hyperplane> hyperplanes(const FiniteField& field, unsigned ambient_dim) {
  const std::uint32_t q = field.size();
  std::vector<Hyperplane> out;
  if (ambient_dim == 1) {
    Hyperplane h0;
    for (std::uint32_t a = 0; a < q; ++a)
      if (field.trace(a, 1) == 0) h0.points.push_back(a);
    const std::uint32_t count = (q - 1) / (field.p() - 1);
    for (std::uint32_t i = 0; i < count; ++i) {
      Hyperplane h;
      auto g = field.prim_pow(i);
      for (auto a : h0.points) h.points.push_back(field.mul(a, g));
      std::sort(h.points.begin(), h.points.end());
      h.label = "H_" + std::to_string(i);
      out.push_back(std::move(h));
    }
    return out;
  }
  if (ambient_dim != 2) fail(ErrorCode::InvalidArgument, "ambient_dim must be 1 or 2");
  auto line = [&](std::uint32_t x, std::uint32_t y, std::string label) {
    Hyperplane h;
    for (std::uint32_t c = 0; c < q; ++c) h.points.push_back(field.mul(c, x) + q * field.mul(c, y));
    std::sort(h.points.begin(), h.points.end());
    h.label = std::move(label);
    out.push_back(std::move(h));
  };
  line(1, 0, "<(1,0)>");
  line(0, 1, "<(0,1)>");
  for (std::uint32_t j = 0; j + 1 < q; ++j) line(1, field.prim_pow(j), "<(1,g^" + std::to_string(j) + ")>");
  return out;
}

}  // namespace dset
