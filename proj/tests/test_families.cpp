#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "dset/design.hpp"
#include "dset/error.hpp"
#include "dset/families.hpp"
#include "dset/numtheory.hpp"
#include "dset/transfer.hpp"

using namespace dset;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

struct Case {
  std::string family;
  FamilyParams params;
  std::string label;
};

std::ostream& operator<<(std::ostream& os, const Case& c) { return os << c.label; }

std::vector<Claim> run_claims(const Construction& c, TransferReport& report) {
  report = transfer(*c.instance);
  return evaluate_claims(c, report);
}

std::set<Elem> image(const GroupAutomorphism& a, const std::vector<Elem>& xs) {
  std::set<Elem> out;
  for (auto x : xs) out.insert(a(x));
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

// Deterministic Miller-Rabin for n < 3.3e24 with the first twelve primes.
bool mr_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = 1, b = a, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, b, n);
      b = mulmod(b, b, n);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

class FamilyClaims : public ::testing::TestWithParam<Case> {};

TEST_P(FamilyClaims, TransferPreservesParametersAndEveryClaimHolds) {
  const Case& k = GetParam();
  Construction c = build_family(k.family, k.params);
  ASSERT_TRUE(c.instance.has_value());
  TransferReport r;
  auto claims = run_claims(c, r);
  ASSERT_TRUE(r.all_hold()) << r.conditions_text();
  EXPECT_EQ(r.new_verification->measured, c.design().claimed());
  EXPECT_FALSE(r.new_group->is_abelian());
  EXPECT_FALSE(claims.empty());
  for (const auto& cl : claims)
    if (cl.applicable) EXPECT_TRUE(cl.holds) << cl.name << ": " << cl.detail;
}

INSTANTIATE_TEST_SUITE_P(
    Registry, FamilyClaims,
    ::testing::Values(Case{"dihedral-converse", {}, "dihedral_converse"},
                      Case{"pgroup-multiplier", {.p = 2, .n = 3, .s = 2}, "pgroup_2_3_2"},
                      Case{"pgroup-multiplier", {.p = 3, .n = 2, .s = 2}, "pgroup_3_2_2"},
                      Case{"pgroup-multiplier", {.p = 2, .n = 2, .s = 3, .variant = 2}, "pgroup_2_2_3_v2"},
                      Case{"spence", {.d = 1}, "spence_1"},
                      Case{"denniston-even", {.m = 2, .r = 1}, "denniston_even_2_1"},
                      Case{"denniston-gr4", {.t = 2, .k = 1}, "gr4_2_1"},
                      Case{"denniston-gr4", {.t = 3, .k = 1}, "gr4_3_1"},
                      Case{"denniston-gr4", {.t = 3, .k = 2}, "gr4_3_2"},
                      Case{"mcfarland-even", {.d = 2, .variant = 1}, "mcfarland_even_2_v1"},
                      Case{"mcfarland-even", {.d = 2, .variant = 2}, "mcfarland_even_2_v2"},
                      Case{"mcfarland-even", {.d = 2, .variant = 3}, "mcfarland_even_2_v3"},
                      Case{"mcfarland-odd", {.q = 3, .s = 2}, "mcfarland_odd_3_2"},
                      Case{"rds-transfer", {.d = 1, .variant = 1}, "rds_1_v1"},
                      Case{"rds-transfer", {.d = 1, .variant = 2}, "rds_1_v2"}),
    [](const auto& info) { return info.param.label; });

TEST(Chain, ImageSetInC8xC2) {
  Construction c = build_family("dillon-forward", {});
  const DesignSet& s = c.design();
  auto g = std::static_pointer_cast<const AbelianGroup>(s.group());
  ASSERT_EQ(g->orders(), (std::vector<std::uint32_t>{8, 2}));
  std::vector<Elem> expected;
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 0}, {2, 0}, {0, 1}, {6, 0}, {1, 0}, {5, 1}})
    expected.push_back(g->from_exps({i, j}));
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(s.members(), expected);
  Verification v = verify_ds(s);
  EXPECT_EQ(v.measured, DesignParams::ds(16, 6, 2));
  EXPECT_FALSE(v.reversible);
}

TEST(Chain, DihedralElementsOutsideXAreInvolutions) {
  Construction c = build_family("dihedral-converse", {});
  TransferReport r = transfer(*c.instance);
  const auto& e = *r.new_group;
  std::size_t outside = 0;
  for (Elem x = 0; x < e.order(); ++x) {
    if (e.aut_part(x) == 0) continue;
    ++outside;
    EXPECT_EQ(e.element_order(x), 2u) << e.format(x);
  }
  EXPECT_EQ(outside, 8u);
}

TEST(PcpPds, ParametersAndLineLimits) {
  EXPECT_EQ(pcp_pds(2, 2, 2).claimed(), DesignParams::pds(16, 6, 2, 2));
  EXPECT_EQ(pcp_pds(2, 2, 3).claimed(), DesignParams::pds(16, 9, 4, 6));
  EXPECT_EQ(pcp_pds(3, 2, 4).claimed(), DesignParams::pds(81, 32, 13, 12));
  EXPECT_EQ(code_of([] { pcp_pds(2, 2, 1); }), ErrorCode::InvalidArgument);
  // Lines <(1,j)> need unit differences j - j', so at most p + 1 of them.
  EXPECT_EQ(code_of([] { pcp_pds(2, 2, 4); }), ErrorCode::TooManyLines);
  EXPECT_EQ(code_of([] { pcp_pds(4, 2, 2); }), ErrorCode::InvalidArgument);
}

TEST(PgroupMultiplier, FourByFourDegenerates) {
  Construction c = pgroup_family(2, 2, 3, 1);
  TransferReport r = check_conditions(*c.instance);
  EXPECT_FALSE(r.cond_i.holds);
  EXPECT_EQ(code_of([&] { transfer(*c.instance); }), ErrorCode::ConditionsFailed);
  EXPECT_TRUE(std::any_of(c.log.begin(), c.log.end(), [](const std::string& l) { return l.find("order 8") != std::string::npos; }));
  EXPECT_EQ(code_of([] { pgroup_family(2, 3, 2, 3); }), ErrorCode::InvalidArgument);
}

TEST(PgroupMultiplier, SplitMetacyclicForEightByEight) {
  Construction c = pgroup_family(2, 3, 2);
  TransferReport r = transfer(*c.instance);
  StructureReport f = fingerprint(*r.new_group);
  EXPECT_EQ(f.order, 64u);
  EXPECT_EQ(f.exponent, 8u);
  // C8 x|_5 C8 has derived subgroup <x^4> of order 2.
  EXPECT_EQ(f.derived_order, 2u);
}

TEST(Spence, DegreeOneStructure) {
  Construction c = spence(1);
  TransferReport r;
  auto claims = run_claims(c, r);
  EXPECT_EQ(r.new_group->order(), 351u);
  EXPECT_EQ(r.new_verification->measured, DesignParams::ds(351, 126, 45));
  // Tr(c) = 3c = 0 puts GF(3) in H_0, and phi fixes it, so the center is C3.
  EXPECT_EQ(center(r.new_group).order(), 3u);
  std::set<std::string> names;
  for (const auto& cl : claims) names.insert(cl.name);
  EXPECT_TRUE(names.count("(phi,a_3)^3 = (1,(2,w^0))"));
  EXPECT_TRUE(names.count("P_3 is not normal"));
}

TEST(DennistonEven, NoStableHyperplaneAvoidsTheSymmetricTranslation) {
  // With M swapping y and z, an M-invariant functional f has f_y = f_z, so
  // f(0,1,1) = 2 f_y(1) = 0: no M-stable hyperplane X misses u = (0,1,1).
  Construction c = denniston_even(2, 1);
  const auto& phi = c.instance->aut_gens.at(0);
  auto g = std::static_pointer_cast<const AbelianGroup>(c.design().group());
  ASSERT_EQ(g->order(), 64u);
  const Elem u_sym = g->from_exps({0, 0, 1, 0, 1, 0});
  const Elem u_used = g->from_exps({1, 0, 0, 0, 0, 0});
  std::size_t stable = 0, miss_sym = 0, miss_used = 0;
  for (unsigned mask = 1; mask < 64; ++mask) {
    std::vector<Elem> ker;
    for (Elem v = 0; v < 64; ++v)
      if (std::popcount(mask & v) % 2 == 0) ker.push_back(v);
    if (image(phi, ker) != std::set<Elem>(ker.begin(), ker.end())) continue;
    ++stable;
    miss_sym += std::popcount(mask & u_sym) % 2;
    miss_used += std::popcount(mask & u_used) % 2;
  }
  EXPECT_EQ(stable, 15u);
  EXPECT_EQ(miss_sym, 0u);
  EXPECT_GT(miss_used, 0u);
}

TEST(DennistonEven, ThreeDimensionalCaseParameters) {
  Construction c = denniston_even(3, 1);
  EXPECT_EQ(c.design().claimed(), DesignParams::pds(512, 70, 6, 10));
}

TEST(DennistonGr4, AutomorphismTablesInDegreeThree) {
  Gr4Data data = denniston_gr4_data(3);
  ASSERT_EQ(data.psi.size(), 3u);
  const auto& g = *data.group;
  // Images of a, b, c, d, e, f as exponent vectors.
  const std::vector<std::vector<std::vector<std::int64_t>>> table{
      {{3, 0, 0, 0, 0, 0}, {0, 3, 0, 0, 0, 0}, {0, 0, 3, 0, 0, 0},
       {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}},
      {{1, 2, 0, 0, 0, 0}, {0, 1, 2, 0, 0, 0}, {2, 2, 1, 0, 0, 0},
       {0, 0, 2, 1, 0, 0}, {2, 2, 0, 0, 1, 0}, {0, 2, 2, 0, 0, 1}},
      {{1, 0, 2, 0, 0, 0}, {2, 3, 0, 0, 0, 0}, {0, 2, 3, 0, 0, 0},
       {0, 2, 2, 1, 0, 0}, {2, 2, 2, 0, 1, 0}, {2, 0, 2, 0, 0, 1}}};
  std::set<Elem> design(data.design.begin(), data.design.end());
  for (std::size_t l = 0; l < 3; ++l) {
    for (unsigned i = 0; i < 6; ++i) EXPECT_EQ(data.psi[l](g.unit(i)), g.from_exps(table[l][i])) << l << " " << i;
    EXPECT_EQ(image(data.psi[l], data.design), design) << l;
  }
  EXPECT_EQ(data.design.size(), 196u);
}

TEST(DennistonGr4, NoElementaryAbelianComplementForFullRank) {
  Construction c = denniston_gr4(3, 3);
  TransferReport r;
  auto claims = run_claims(c, r);
  ASSERT_TRUE(r.all_hold());
  EXPECT_EQ(r.new_verification->measured, DesignParams::pds(512, 196, 60, 84));
  for (const auto& cl : claims) {
    if (cl.name == "split by an elementary abelian complement C2^k")
      EXPECT_FALSE(cl.holds);
    else
      EXPECT_TRUE(cl.holds) << cl.name;
  }
}

TEST(DennistonOdd, NormCompatibleBase) {
  Construction c = denniston_odd(3, 1);
  TransferReport r;
  auto claims = run_claims(c, r);
  EXPECT_EQ(r.new_verification->measured, DesignParams::pds(19683, 1482, 81, 114));
  for (const auto& cl : claims) EXPECT_TRUE(cl.holds) << cl.name;
  EXPECT_EQ(fingerprint(*r.new_group).exponent, 9u);
}

TEST(McFarlandOdd, RowActionBreaksTheInvariantSubgroup) {
  Construction c = mcfarland_odd(3, 2);
  auto g = std::static_pointer_cast<const AbelianGroup>(c.design().group());
  ASSERT_EQ(g->orders(), (std::vector<std::uint32_t>{3, 3, 3, 14}));
  std::vector<Elem> xgens{g->unit(0), g->unit(1), g->unit(3)};
  Subgroup x = subgroup_closure(g, xgens);
  EXPECT_EQ(x.order(), 126u);
  const auto& col = c.instance->aut_gens.at(0);
  EXPECT_EQ(image(col, x.members), std::set<Elem>(x.members.begin(), x.members.end()));
  // Row vectors: e_j M = e_j + e_{j+1} sends e_2 out of <e_1, e_2>.
  auto row = aut_from_images(g, std::vector<Elem>{g->mul(g->unit(0), g->unit(1)), g->mul(g->unit(1), g->unit(2)),
                                                  g->unit(2), col(g->unit(3))});
  EXPECT_NE(image(row, x.members), std::set<Elem>(x.members.begin(), x.members.end()));
}

TEST(McFarlandOdd, ParameterRestrictions) {
  EXPECT_EQ(code_of([] { mcfarland_odd(3, 1); }), ErrorCode::RPlusOneNotTwiceOddPrime);
  EXPECT_EQ(code_of([] { mcfarland_odd(4, 2); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { build_family("no-such-family", {}); }), ErrorCode::InvalidArgument);
}

TEST(McFarlandOdd, PrimeCountsBelowOneMillion) {
  std::vector<bool> composite(1'000'000, false);
  std::size_t primes = 0, admissible = 0;
  for (std::uint64_t q = 2; q < composite.size(); ++q) {
    if (composite[q]) continue;
    ++primes;
    for (std::uint64_t k = q * q; k < composite.size(); k += q) composite[k] = true;
    const std::uint64_t twice = q * q + q + 2;
    if (q > 2 && twice % 2 == 0 && mr_prime(twice / 2)) ++admissible;
  }
  EXPECT_EQ(primes, 78498u);
  EXPECT_EQ(admissible, 5985u);
}

TEST(RdsTransfer, FrobeniusCannotFixTheDesignBeyondTheSmallestField) {
  for (std::uint32_t d : {1u, 2u}) {
    auto f = field_make(2, 2 * d);
    const std::uint32_t q = 1u << d, Q = f->size();
    auto lines = hyperplanes(*f, 2);
    ASSERT_EQ(lines.size(), Q + 1);
    std::size_t fixed = 0;
    for (const auto& l : lines) {
      std::set<std::uint32_t> img;
      for (auto pt : l.points) img.insert(f->frobenius(pt % Q, d) + Q * f->frobenius(pt / Q, d));
      fixed += img == std::set<std::uint32_t>(l.points.begin(), l.points.end());
    }
    // <(1,a)> for a in GF(q), and <(0,1)>.
    EXPECT_EQ(fixed, q + 1);
  }
  EXPECT_NO_THROW(rds_transfer(1, 1));
  EXPECT_EQ(code_of([] { rds_transfer(2, 1); }), ErrorCode::DesignNotFixed);
}
