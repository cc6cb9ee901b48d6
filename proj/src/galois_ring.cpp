#include "dset/galois_ring.hpp"

#include <sstream>

#include "dset/error.hpp"
#include "dset/numtheory.hpp"

namespace dset {

namespace {

using IPoly = std::vector<std::int64_t>;

void trim(IPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IPoly reduce_coeffs(IPoly a, std::int64_t n) {
  for (auto& c : a) c = mod(c, n);
  trim(a);
  return a;
}

IPoly mul(const IPoly& a, const IPoly& b, std::int64_t n) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], n);
  trim(r);
  return r;
}

IPoly sub(IPoly a, const IPoly& b, std::int64_t n) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return reduce_coeffs(std::move(a), n);
}

// Division by a monic polynomial over Z/n.
std::pair<IPoly, IPoly> divmod(IPoly a, const IPoly& b, std::int64_t n) {
  a = reduce_coeffs(std::move(a), n);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {{}, a};
  IPoly quot(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    std::int64_t c = mod(a[i], n);
    if (c == 0) continue;
    quot[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = mod(a[i - db + j] - c * b[j], n);
  }
  trim(quot);
  return {quot, reduce_coeffs(std::move(a), n)};
}

// Extended gcd over GF(2): returns (s, u) with s*a + u*b = 1.
std::pair<IPoly, IPoly> ext_gcd2(const IPoly& a, const IPoly& b) {
  IPoly r0 = a, r1 = b, s0{1}, s1{}, u0{}, u1{1};
  while (!r1.empty()) {
    auto [quo, rem] = divmod(r0, r1, 2);
    IPoly s2 = sub(s0, mul(quo, s1, 2), 2);
    IPoly u2 = sub(u0, mul(quo, u1, 2), 2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0 != IPoly{1}) fail(ErrorCode::LiftFailure, "factors are not coprime mod 2");
  return {s0, u0};
}

}  // namespace

Poly hensel_lift(const Poly& phi2) {
  const unsigned t = static_cast<unsigned>(phi2.size() - 1);
  const std::int64_t n = static_cast<std::int64_t>(ipow(2, t)) - 1;
  IPoly f(static_cast<std::size_t>(n) + 1, 0);
  f[0] = -1;
  f[n] = 1;
  IPoly a2(phi2.begin(), phi2.end());

  // x^n - 1 = phi2 * g2 over GF(2); lift the factorization one step to Z/4.
  auto [g2, rem] = divmod(f, a2, 2);
  if (!rem.empty()) fail(ErrorCode::LiftFailure, "phi2 does not divide x^n - 1 mod 2");
  IPoly prod = mul(a2, g2, 1 << 20);
  IPoly diff(std::max(f.size(), prod.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] += f[i];
  for (std::size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
  IPoly c;
  for (auto v : diff) {
    if (mod(v, 2) != 0) fail(ErrorCode::LiftFailure, "residual not divisible by 2");
    c.push_back(mod(v / 2, 2));
  }
  trim(c);
  auto [s, u] = ext_gcd2(a2, g2);
  IPoly corr = divmod(mul(c, u, 2), a2, 2).second;

  IPoly phi = a2;
  for (std::size_t i = 0; i < corr.size(); ++i) phi[i] += 2 * corr[i];
  phi = reduce_coeffs(phi, 4);
  if (!divmod(f, phi, 4).second.empty())
    fail(ErrorCode::LiftFailure, "lift does not divide x^n - 1 over Z/4");
  Poly out(phi.begin(), phi.end());
  out.resize(t + 1, 0);
  return out;
}

GaloisRing::GaloisRing(unsigned t, Poly phi2, Poly phi)
    : t_(t),
      size_(static_cast<std::uint32_t>(ipow(4, t))),
      phi2_(std::move(phi2)),
      phi_(std::move(phi)),
      residue_(field_make(2, t, phi2_)) {
  const std::uint32_t n = (1u << t_) - 1;
  h_powers_.resize(n);
  Code cur = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    h_powers_[i] = cur;
    cur = mul(cur, h());
  }
  if (cur != 1) fail(ErrorCode::LiftFailure, "h does not have order 2^t - 1");
  for (std::uint32_t i = 1; i < n; ++i)
    if (h_powers_[i] == 1) fail(ErrorCode::LiftFailure, "h has order below 2^t - 1");
}

std::vector<std::uint32_t> GaloisRing::coeffs(Code a) const {
  std::vector<std::uint32_t> c(t_);
  for (unsigned i = 0; i < t_; ++i) {
    c[i] = a & 3u;
    a >>= 2;
  }
  return c;
}

GaloisRing::Code GaloisRing::from_coeffs(const std::vector<std::uint32_t>& c) const {
  Code a = 0;
  for (std::size_t i = std::min<std::size_t>(c.size(), t_); i-- > 0;) a = (a << 2) | (c[i] & 3u);
  return a;
}

GaloisRing::Code GaloisRing::add(Code a, Code b) const {
  Code r = 0;
  for (unsigned i = 0; i < t_; ++i) {
    r |= (((a >> (2 * i)) + (b >> (2 * i))) & 3u) << (2 * i);
  }
  return r;
}

GaloisRing::Code GaloisRing::neg(Code a) const {
  Code r = 0;
  for (unsigned i = 0; i < t_; ++i) r |= ((4u - ((a >> (2 * i)) & 3u)) & 3u) << (2 * i);
  return r;
}

GaloisRing::Code GaloisRing::times(std::int64_t n, Code a) const {
  const std::uint32_t k = static_cast<std::uint32_t>(mod(n, 4));
  Code r = 0;
  for (unsigned i = 0; i < t_; ++i) r |= ((((a >> (2 * i)) & 3u) * k) & 3u) << (2 * i);
  return r;
}

GaloisRing::Code GaloisRing::mul(Code a, Code b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  std::vector<std::uint32_t> r(2 * t_, 0);
  for (unsigned i = 0; i < t_; ++i)
    for (unsigned j = 0; j < t_; ++j) r[i + j] = (r[i + j] + ca[i] * cb[j]) & 3u;
  for (std::size_t i = r.size(); i-- > t_;) {
    std::uint32_t c = r[i];
    if (c == 0) continue;
    for (unsigned j = 0; j <= t_; ++j) r[i - t_ + j] = (r[i - t_ + j] + 4 * 4 - c * phi_[j]) & 3u;
  }
  r.resize(t_);
  return from_coeffs(r);
}

GaloisRing::Code GaloisRing::pow(Code a, std::uint64_t e) const {
  Code r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

GaloisRing::Code GaloisRing::h_pow(std::int64_t i) const {
  return h_powers_[mod(i, static_cast<std::int64_t>(h_powers_.size()))];
}

FiniteField::Code GaloisRing::project(Code a) const {
  FiniteField::Code y = 0;
  for (unsigned i = 0; i < t_; ++i) y |= (((a >> (2 * i)) & 1u)) << i;
  return y;
}

GaloisRing::Code GaloisRing::lift01(FiniteField::Code y) const {
  Code a = 0;
  for (unsigned i = 0; i < t_; ++i) a |= ((y >> i) & 1u) << (2 * i);
  return a;
}

GaloisRing::Code GaloisRing::ideal_iso(FiniteField::Code y) const {
  if (y == 0) return 0;
  return times(2, h_pow(static_cast<std::int64_t>(residue_->log(y))));
}

std::string GaloisRing::format(Code a) const {
  auto c = coeffs(a);
  Poly f(c.begin(), c.end());
  std::string s = poly_to_string(f);
  for (auto& ch : s)
    if (ch == 'x') ch = 'h';
  return s;
}

RingPtr galois_ring_make(unsigned t, std::optional<Poly> phi2) {
  if (t < 2) fail(ErrorCode::InvalidArgument, "GR(4,t) requires t >= 2");
  if (t > 10) fail(ErrorCode::InvalidArgument, "GR(4,t) limited to t <= 10");
  Poly base = phi2 ? *phi2 : smallest_primitive_poly(2, t, PolyOrder::HighDegreeFirst);
  if (base.size() != t + 1 || !is_primitive_poly(2, base))
    fail(ErrorCode::NonPrimitiveModulus, poly_to_string(base) + " is not primitive of degree t");
  Poly phi = hensel_lift(base);
  return std::make_shared<const GaloisRing>(t, std::move(base), std::move(phi));
}

RingElement::RingElement(RingPtr ring, std::uint32_t code) : ring_(std::move(ring)), code_(code) {
  if (!ring_ || code_ >= ring_->size()) fail(ErrorCode::InvalidArgument, "ring code out of range");
}

RingElement RingElement::operator+(const RingElement& o) const {
  return {ring_, ring_->add(code_, o.code_)};
}
RingElement RingElement::operator*(const RingElement& o) const {
  return {ring_, ring_->mul(code_, o.code_)};
}
FieldElement RingElement::project() const {
  return ring_->residue_field()->element(ring_->project(code_));
}

FieldElement ring_projection(const RingElement& x) { return x.project(); }

RingElement ideal_iso(const RingPtr& ring, const FieldElement& y) {
  if (y.field()->modulus() != ring->residue_field()->modulus())
    fail(ErrorCode::CrossField, "ideal_iso argument outside the residue field");
  return {ring, ring->ideal_iso(y.code())};
}

}  // namespace dset
