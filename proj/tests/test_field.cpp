#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dset/error.hpp"
#include "dset/field.hpp"
#include "dset/numtheory.hpp"

using namespace dset;

namespace {

// Schoolbook polynomial arithmetic mod (p, f), kept independent of the
// table-driven field.
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  std::vector<std::uint32_t> r(2 * m, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (std::size_t i = r.size(); i-- > m;) {
    const std::uint32_t c = r[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= m; ++j) r[i - m + j] = (r[i - m + j] + (p - c) * f[j]) % p;
  }
  r.resize(m);
  return r;
}

std::uint64_t oracle_order_of_x(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  Poly x(m, 0), one(m, 0);
  if (m == 1) {
    x[0] = (p - f[0]) % p;
  } else {
    x[1] = 1;
  }
  one[0] = 1;
  Poly cur = x;
  for (std::uint64_t k = 1; k < 1'000'000; ++k) {
    if (cur == one) return k;
    cur = poly_mulmod(cur, x, f, p);
    if (std::all_of(cur.begin(), cur.end(), [](auto c) { return c == 0; })) return 0;
  }
  return 0;
}

std::uint32_t code_of(const Poly& c, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

}  // namespace

TEST(PrimitivePoly, SmallestAgreesWithOrderOracle) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {2, 6}}) {
    Poly f = smallest_primitive_poly(p, m);
    ASSERT_EQ(f.size(), m + 1);
    EXPECT_EQ(oracle_order_of_x(f, p), ipow(p, m) - 1);
  }
}

TEST(PrimitivePoly, KnownModuli) {
  // Low-degree-first ranks x^3+x^2+1 below x^3+x+1; numeric order reverses that.
  EXPECT_EQ(smallest_primitive_poly(2, 3), (Poly{1, 0, 1, 1}));
  EXPECT_EQ(smallest_primitive_poly(2, 3, PolyOrder::HighDegreeFirst), (Poly{1, 1, 0, 1}));
  EXPECT_TRUE(is_primitive_poly(3, Poly{1, 2, 0, 1}));
  EXPECT_FALSE(is_primitive_poly(2, Poly{1, 1, 1, 1, 1}));  // x^4+x^3+x^2+x+1 has order 5
  EXPECT_FALSE(is_primitive_poly(2, Poly{1, 0, 1}));        // (x+1)^2
}

TEST(FiniteField, RejectsNonPrimitiveOverride) {
  EXPECT_THROW(field_make(2, 4, Poly{1, 1, 1, 1, 1}), Error);
  try {
    field_make(2, 4, Poly{1, 1, 1, 1, 1});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPrimitiveModulus);
  }
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(FieldAxioms, MultiplicationMatchesPolynomialOracle) {
  auto [p, m] = GetParam();
  auto f = field_make(p, m);
  for (std::uint32_t a = 0; a < f->size(); ++a)
    for (std::uint32_t b = 0; b < f->size(); ++b) {
      Poly prod = poly_mulmod(f->coeffs(a), f->coeffs(b), f->modulus(), p);
      ASSERT_EQ(f->mul(a, b), code_of(prod, p));
      ASSERT_EQ(f->sub(f->add(a, b), b), a);
    }
}

TEST_P(FieldAxioms, InverseLogAndPowers) {
  auto [p, m] = GetParam();
  auto f = field_make(p, m);
  const std::uint32_t q = f->size();
  for (std::uint32_t a = 1; a < q; ++a) {
    EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
    EXPECT_EQ(f->prim_pow(static_cast<std::int64_t>(f->log(a))), a);
    EXPECT_EQ(f->pow(a, q - 1), 1u);
    EXPECT_EQ((q - 1) % f->mult_order(a), 0u);
  }
  EXPECT_EQ(f->mult_order(f->primitive_code()), q - 1);
  EXPECT_EQ(f->prim_pow(-1), f->inv(f->primitive_code()));
}

TEST_P(FieldAxioms, FrobeniusAndTrace) {
  auto [p, m] = GetParam();
  auto f = field_make(p, m);
  for (std::uint32_t a = 0; a < f->size(); ++a) {
    std::uint32_t sum = 0, cur = a;
    for (unsigned i = 0; i < m; ++i) {
      EXPECT_EQ(f->frobenius(a, i), cur);
      sum = f->add(sum, cur);
      cur = f->pow(cur, p);
    }
    EXPECT_EQ(cur, a);
    EXPECT_EQ(f->trace(a), sum);
    EXPECT_LT(f->trace(a), p);  // lands in the prime field
    EXPECT_EQ(f->in_subfield(a, 1), a < p);
  }
  EXPECT_EQ(f->trace(1), m % p);
}

INSTANTIATE_TEST_SUITE_P(Small, FieldAxioms,
                         ::testing::Values(std::pair<std::uint32_t, unsigned>{2, 1}, std::pair<std::uint32_t, unsigned>{2, 3},
                                           std::pair<std::uint32_t, unsigned>{2, 4}, std::pair<std::uint32_t, unsigned>{3, 2},
                                           std::pair<std::uint32_t, unsigned>{3, 3}, std::pair<std::uint32_t, unsigned>{5, 2}));

TEST(FiniteField, RelativeTraceOverSubfield) {
  auto f = field_make(2, 4);
  for (std::uint32_t a = 0; a < f->size(); ++a) {
    const std::uint32_t t = f->trace(a, 2);
    EXPECT_EQ(t, f->add(a, f->frobenius(a, 2)));
    EXPECT_TRUE(f->in_subfield(t, 2));
  }
}

TEST(FiniteField, EmbeddingIsAFieldHomomorphism) {
  auto small = field_make(3, 3);
  auto big = field_make(3, 6);
  auto into = embed(*small, *big);
  std::set<std::uint32_t> image(into.begin(), into.end());
  EXPECT_EQ(image.size(), small->size());
  for (std::uint32_t a = 0; a < small->size(); ++a) {
    EXPECT_TRUE(big->in_subfield(into[a], 3));
    for (std::uint32_t b = 0; b < small->size(); ++b) {
      EXPECT_EQ(into[small->mul(a, b)], big->mul(into[a], into[b]));
      EXPECT_EQ(into[small->add(a, b)], big->add(into[a], into[b]));
    }
  }
}

TEST(FieldElement, OperatorsAndCrossFieldGuard) {
  auto f = field_make(3, 2);
  FieldElement g = f->primitive();
  EXPECT_EQ(g.pow(8), f->element(1));
  EXPECT_EQ(g * g / g, g);
  EXPECT_EQ(g - g, f->element(0));
  EXPECT_EQ(frobenius(g, 2), g);
  EXPECT_EQ(field_trace(g, 1), g + g.pow(3));
  auto other = field_make(3, 2, f->modulus() == Poly{2, 1, 1} ? Poly{2, 2, 1} : Poly{2, 1, 1});
  try {
    (void)(g + other->primitive());
    FAIL() << "expected CrossField";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CrossField);
  }
}

TEST(Hyperplanes, TraceHyperplanesOfGF27) {
  auto f = field_make(3, 3);
  auto hs = hyperplanes(*f, 1);
  ASSERT_EQ(hs.size(), 13u);
  std::vector<int> cover(f->size(), 0);
  std::set<std::vector<std::uint32_t>> distinct;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    ASSERT_EQ(hs[i].points.size(), 9u);
    distinct.insert(hs[i].points);
    for (auto x : hs[i].points) {
      ++cover[x];
      // H_i = H_0 g^i
      EXPECT_TRUE(hs[0].contains(f->mul(x, f->prim_pow(-static_cast<std::int64_t>(i)))));
    }
  }
  EXPECT_EQ(distinct.size(), 13u);
  EXPECT_EQ(cover[0], 13);
  for (std::uint32_t x = 1; x < f->size(); ++x) EXPECT_EQ(cover[x], 4);  // (3^2-1)/(3-1)
  for (auto x : hs[0].points) EXPECT_EQ(f->trace(x), 0u);
}

TEST(Hyperplanes, LinesOfGF4Squared) {
  auto f = field_make(2, 2);
  const std::uint32_t q = f->size();
  auto ls = hyperplanes(*f, 2);
  ASSERT_EQ(ls.size(), q + 1);
  // The listed order is <(1,0)>, <(0,1)>, <(1,g^0)>, ...
  EXPECT_TRUE(ls[0].contains(1));
  EXPECT_TRUE(ls[1].contains(q));
  EXPECT_TRUE(ls[2].contains(1 + q));
  for (std::size_t i = 0; i < ls.size(); ++i) {
    EXPECT_EQ(ls[i].points.size(), q);
    for (std::size_t j = i + 1; j < ls.size(); ++j)
      for (auto x : ls[i].points) EXPECT_TRUE(x == 0 || !ls[j].contains(x));
  }
}
