#include <gtest/gtest.h>

#include <set>

#include "dset/error.hpp"
#include "dset/galois_ring.hpp"

using namespace dset;

namespace {

using IPoly = std::vector<std::int64_t>;

IPoly imul(const IPoly& a, const IPoly& b) {
  IPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Graeffe root squaring: with phi2 = e(x^2) + x o(x^2), the lift is
// (-1)^t (e(y)^2 - y o(y)^2) mod 4.
Poly graeffe_lift(const Poly& phi2) {
  const std::size_t t = phi2.size() - 1;
  IPoly e, o;
  for (std::size_t i = 0; i < phi2.size(); ++i) (i % 2 == 0 ? e : o).push_back(phi2[i]);
  IPoly e2 = imul(e, e), o2 = imul(o, o);
  IPoly r(t + 1, 0);
  for (std::size_t i = 0; i < e2.size() && i <= t; ++i) r[i] += e2[i];
  for (std::size_t i = 0; i < o2.size() && i + 1 <= t; ++i) r[i + 1] -= o2[i];
  Poly out;
  for (auto c : r) out.push_back(static_cast<std::uint32_t>(((t % 2 ? -c : c) % 4 + 4) % 4));
  return out;
}

// Remainder of x^n - 1 modulo a monic polynomial over Z/4.
IPoly xn_minus_one_mod(std::size_t n, const Poly& f) {
  const std::size_t t = f.size() - 1;
  IPoly r(n + 1, 0);
  r[n] = 1;
  r[0] = 3;
  for (std::size_t i = n; i >= t && i <= n; --i) {
    const std::int64_t c = ((r[i] % 4) + 4) % 4;
    for (std::size_t j = 0; j <= t; ++j) r[i - t + j] -= c * f[j];
    if (i == t) break;
  }
  r.resize(t);
  for (auto& c : r) c = ((c % 4) + 4) % 4;
  return r;
}

// Multiplication in (Z/4)[x]/(f) on coefficient vectors.
std::vector<std::uint32_t> ring_mul_oracle(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                           const Poly& f) {
  const std::size_t t = f.size() - 1;
  IPoly r(2 * t, 0);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) r[i + j] += static_cast<std::int64_t>(a[i]) * b[j];
  for (std::size_t i = 2 * t - 1; i >= t; --i) {
    const std::int64_t c = r[i] % 4;
    for (std::size_t j = 0; j <= t; ++j) r[i - t + j] -= c * f[j];
  }
  std::vector<std::uint32_t> out(t);
  for (std::size_t i = 0; i < t; ++i) out[i] = static_cast<std::uint32_t>(((r[i] % 4) + 4) % 4);
  return out;
}

}  // namespace

TEST(HenselLift, MatchesGraeffeOracle) {
  for (unsigned t = 2; t <= 6; ++t) {
    Poly phi2 = smallest_primitive_poly(2, t, PolyOrder::HighDegreeFirst);
    Poly lift = hensel_lift(phi2);
    EXPECT_EQ(lift, graeffe_lift(phi2)) << "t = " << t;
    for (auto c : xn_minus_one_mod((std::size_t(1) << t) - 1, lift)) EXPECT_EQ(c, 0) << "t = " << t;
    for (std::size_t i = 0; i < lift.size(); ++i) EXPECT_EQ(lift[i] % 2, phi2[i]);
  }
}

TEST(HenselLift, DegreeThreeExample) {
  auto r = galois_ring_make(3);
  EXPECT_EQ(r->phi2(), (Poly{1, 1, 0, 1}));  // x^3 + x + 1
  EXPECT_EQ(r->phi(), (Poly{3, 1, 2, 1}));   // x^3 + 2x^2 + x - 1
}

TEST(GaloisRing, MultiplicationMatchesOracle) {
  for (unsigned t : {2u, 3u}) {
    auto r = galois_ring_make(t);
    for (std::uint32_t a = 0; a < r->size(); ++a)
      for (std::uint32_t b = 0; b < r->size(); ++b) {
        ASSERT_EQ(r->coeffs(r->mul(a, b)), ring_mul_oracle(r->coeffs(a), r->coeffs(b), r->phi()));
        ASSERT_EQ(r->add(a, r->neg(a)), 0u);
      }
  }
}

TEST(GaloisRing, TeichmullerPowersOfH) {
  auto r = galois_ring_make(3);
  const std::int64_t n = 7;
  std::set<std::uint32_t> seen;
  for (std::int64_t i = 0; i < n; ++i) seen.insert(r->h_pow(i));
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(r->h_pow(n), 1u);
  EXPECT_EQ(r->h_pow(-1), r->h_pow(n - 1));
  EXPECT_EQ(r->mul(r->h(), r->h()), r->h_pow(2));
  // Phi(h) = 0 gives h^3 = 1 - h - 2h^2.
  EXPECT_EQ(r->coeffs(r->h_pow(3)), (std::vector<std::uint32_t>{1, 3, 2}));
}

TEST(GaloisRing, ProjectionIsARingHomomorphism) {
  auto r = galois_ring_make(3);
  const auto& f = *r->residue_field();
  for (std::uint32_t a = 0; a < r->size(); ++a)
    for (std::uint32_t b = 0; b < r->size(); ++b) {
      EXPECT_EQ(r->project(r->mul(a, b)), f.mul(r->project(a), r->project(b)));
      EXPECT_EQ(r->project(r->add(a, b)), f.add(r->project(a), r->project(b)));
    }
  EXPECT_EQ(r->project(r->h()), f.primitive_code());
}

TEST(GaloisRing, IdealIsomorphismOntoTwoR) {
  auto r = galois_ring_make(3);
  const auto& f = *r->residue_field();
  std::set<std::uint32_t> image;
  for (std::uint32_t y = 0; y < f.size(); ++y) {
    const std::uint32_t z = r->ideal_iso(y);
    image.insert(z);
    EXPECT_EQ(r->times(2, r->lift01(y)), z);
    EXPECT_EQ(r->project(r->lift01(y)), y);
    for (std::uint32_t w = 0; w < f.size(); ++w) EXPECT_EQ(r->ideal_iso(f.add(y, w)), r->add(z, r->ideal_iso(w)));
  }
  EXPECT_EQ(image.size(), f.size());
  for (auto z : image) EXPECT_EQ(r->times(2, z), 0u);
  for (std::int64_t i = 0; i < 7; ++i) EXPECT_EQ(r->ideal_iso(f.prim_pow(i)), r->times(2, r->h_pow(i)));
}

TEST(GaloisRing, RingElementInterface) {
  auto r = galois_ring_make(2);
  RingElement h(r, r->h());
  RingElement one(r, 1);
  EXPECT_EQ(h * h * h, one);
  EXPECT_EQ(ring_projection(h + one), r->residue_field()->element(r->project(r->add(r->h(), 1))));
  EXPECT_EQ(ideal_iso(r, r->residue_field()->element(1)), RingElement(r, 2));
}

TEST(HenselLift, RejectsNonPrimitiveBinaryPolynomial) {
  EXPECT_THROW(galois_ring_make(4, Poly{1, 1, 1, 1, 1}), Error);
}
