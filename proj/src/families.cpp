#include "dset/families.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dset/error.hpp"
#include "dset/field.hpp"
#include "dset/numtheory.hpp"

namespace dset {

namespace {

using Ext = ExtensionGroup;
using ExtPtr = std::shared_ptr<const ExtensionGroup>;

std::string join_params(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) out << " ";
    out << k << "=" << v;
    first = false;
  }
  return out.str();
}

Claim claim(std::string name, bool holds, std::string detail = {}) {
  return Claim{std::move(name), holds, std::move(detail), true};
}

// Claim that a and b fail to commute, with both products as the detail.
Claim noncommuting(const Group& g, Elem a, Elem b, std::string name) {
  Elem ab = g.mul(a, b), ba = g.mul(b, a);
  return claim(std::move(name), ab != ba,
               g.format(a) + " * " + g.format(b) + " = " + g.format(ab) + ", reversed " + g.format(ba));
}

Claim not_normal(const Subgroup& s, std::string name) {
  NormalityResult r = check_normal(s);
  return claim(std::move(name), !r.normal, r.normal ? "normal" : r.describe(*s.parent));
}

Claim order_claim(std::string name, std::size_t got, std::size_t want) {
  return claim(std::move(name), got == want, std::to_string(got) + " (expected " + std::to_string(want) + ")");
}

std::optional<std::pair<Elem, Elem>> noncommuting_pair(const Group& g, const std::vector<Elem>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!g.commute(gens[i], gens[j])) return std::make_pair(gens[i], gens[j]);
  return std::nullopt;
}

const Ext& require_ext(const TransferReport& r) {
  if (!r.new_group) fail(ErrorCode::ConditionsFailed, "no transferred group");
  return *r.new_group;
}

// Candidates are scanned in order; each one outside the current span joins
// the basis.
std::vector<Elem> greedy_basis(const GroupPtr& g, const std::vector<Elem>& candidates) {
  std::vector<Elem> basis;
  Subgroup span = subgroup_closure(g, {});
  for (auto c : candidates) {
    if (span.contains(c)) continue;
    basis.push_back(c);
    span = subgroup_closure(g, basis);
  }
  return basis;
}

Elem smallest_outside(const Group& g, const Subgroup& x) {
  for (Elem e = 0; e < g.order(); ++e)
    if (!x.contains(e)) return e;
  fail(ErrorCode::InvalidArgument, "subgroup is the whole group");
}

std::vector<Elem> images_of_generators(const Group& g, const std::function<Elem(Elem)>& f) {
  std::vector<Elem> out;
  for (auto s : g.generators()) out.push_back(f(s));
  return out;
}

std::vector<CandidateGenerator> plain(const std::vector<Elem>& xs) {
  std::vector<CandidateGenerator> out;
  for (auto x : xs) out.push_back({{}, x});
  return out;
}

std::uint64_t mult_order_mod(std::uint64_t c, std::uint64_t n) {
  std::uint64_t x = c % n, k = 1;
  while (x != 1 % n) {
    x = x * c % n;
    if (++k > n) return 0;
  }
  return k;
}

// The PDS parameters of a cone over a set A of PG(2,q) meeting every line in
// 0 or n points, via the two nontrivial character values.
DesignParams maximal_arc_params(std::int64_t q, std::int64_t n) {
  const std::int64_t arc = (n - 1) * (q + 1) + 1;
  const std::int64_t k = (q - 1) * arc;
  const std::int64_t t1 = q * n - arc, t2 = -arc;
  return DesignParams::pds(q * q * q, k, k + t1 + t2 + t1 * t2, k + t1 * t2);
}

DesignParams mcfarland_params(std::int64_t q, unsigned s) {
  const std::int64_t qs = static_cast<std::int64_t>(ipow(q, s));
  const std::int64_t r = (qs * q - 1) / (q - 1);
  return DesignParams::ds(qs * q * (r + 1), qs * r, qs * ((qs - 1) / (q - 1)));
}

}  // namespace

// ---------------------------------------------------------------- generic

TransferInstance dihedral_converse(const DesignSet& d, const Subgroup& x) {
  const GroupPtr& gp = d.group();
  const Group& g = *gp;
  if (!g.is_abelian()) fail(ErrorCode::InvalidArgument, "dihedral_converse needs an abelian group");
  if (2 * x.order() != g.order())
    fail(ErrorCode::IndexNotTwo, "|G:X| = " + std::to_string(g.order()) + "/" + std::to_string(x.order()));
  switch (d.kind()) {
    case DesignKind::DS:
      if (!is_inverse_closed(g, d.members())) fail(ErrorCode::NotReversible, "D^(-1) != D");
      break;
    case DesignKind::PDS:
      verify_pds(d, true);
      break;
    case DesignKind::RDS:
      fail(ErrorCode::InvalidArgument, "dihedral_converse takes a DS or PDS");
  }
  auto phi = aut_from_images(gp, images_of_generators(g, [&](Elem s) { return g.inv(s); }));
  auto gens = plain(x.generators);
  gens.push_back({{0}, smallest_outside(g, x)});
  return make_transfer_instance(d, {phi}, std::move(gens));
}

DesignSet dillon_forward(const DesignSet& dihedral_design, const Subgroup& h, Elem g, GroupPtr target,
                         const std::vector<Elem>& h_gen_images, Elem k) {
  const Group& big = *dihedral_design.group();
  const Group& tg = *target;
  if (h.generators.size() != h_gen_images.size())
    fail(ErrorCode::InvalidArgument, "one image per generator of H is required");
  if (2 * h.order() != big.order() || 2 * h.order() != tg.order())
    fail(ErrorCode::IndexNotTwo, "H must have index 2 in both groups");
  if (h.contains(g)) fail(ErrorCode::DecompositionFailure, "g lies in H");

  // Push H forward along its generators, checking consistency on the way.
  std::vector<std::int64_t> f(big.order(), -1);
  std::vector<Elem> queue{big.identity()};
  f[big.identity()] = tg.identity();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem m = queue[i];
    for (std::size_t j = 0; j < h.generators.size(); ++j) {
      Elem n = big.mul(m, h.generators[j]);
      Elem image = tg.mul(static_cast<Elem>(f[m]), h_gen_images[j]);
      if (f[n] < 0) {
        f[n] = image;
        queue.push_back(n);
      } else if (static_cast<Elem>(f[n]) != image) {
        fail(ErrorCode::DecompositionFailure, "generator images do not define a homomorphism on H");
      }
    }
  }
  std::vector<bool> in_image(tg.order(), false);
  for (auto m : h.members) {
    if (f[m] < 0) fail(ErrorCode::DecompositionFailure, "H is not generated by its listed generators");
    if (in_image[f[m]]) fail(ErrorCode::DecompositionFailure, "generator images are not injective on H");
    in_image[f[m]] = true;
  }
  if (in_image[k]) fail(ErrorCode::DecompositionFailure, "k lies in the image of H");

  std::vector<Elem> out;
  const Elem g_inv = big.inv(g);
  for (auto d : dihedral_design.members()) {
    if (h.contains(d)) {
      out.push_back(static_cast<Elem>(f[d]));
      continue;
    }
    Elem d2 = big.mul(d, g_inv);
    if (!h.contains(d2)) fail(ErrorCode::DecompositionFailure, "member outside H and Hg");
    out.push_back(tg.mul(static_cast<Elem>(f[d2]), k));
  }
  DesignSet result(std::move(target), std::move(out), dihedral_design.claimed());
  Verification v = verify(result);
  if (!(v.measured == result.claimed()))
    fail(ErrorCode::ParameterMismatch, "substituted set measures " + v.measured.to_string());
  return result;
}

DesignSet corollary_chain(const DesignSet& d, const Subgroup& x, GroupPtr target,
                          const std::vector<Elem>& x_gen_images, Elem k) {
  TransferInstance inst = dihedral_converse(d, x);
  TransferReport report = transfer(inst);
  const Ext& ext = *report.new_group;
  std::vector<Elem> lifted;
  for (auto s : x.generators) lifted.push_back(ext.element({}, s));
  Subgroup h = subgroup_closure(report.new_group, lifted);
  h.generators = lifted;
  Elem g = ext.element({0}, inst.candidate_gens.back().base);
  return dillon_forward(*report.new_design, h, g, std::move(target), x_gen_images, k);
}

DesignSet pcp_pds(unsigned p, unsigned n, unsigned s) {
  if (!is_prime(p) || n < 1) fail(ErrorCode::InvalidArgument, "pcp_pds needs a prime p and n >= 1");
  if (s < 2) fail(ErrorCode::InvalidArgument, "pcp_pds needs at least two lines");
  if (s > p + 1)
    fail(ErrorCode::TooManyLines, "at most p+1 = " + std::to_string(p + 1) + " lines meet pairwise trivially");
  const auto N = static_cast<std::uint32_t>(ipow(p, n));
  auto g = abelian_make({N, N});
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dirs{{1, 0}, {0, 1}, {1, 1}};
  for (std::uint32_t j = 2; j < p; ++j) dirs.push_back({1, j});
  std::set<Elem> members;
  for (unsigned i = 0; i < s; ++i)
    for (std::uint32_t c = 1; c < N; ++c)
      members.insert(g->from_exps({std::int64_t(c * dirs[i].first % N), std::int64_t(c * dirs[i].second % N)}));
  const std::int64_t ni = N, si = s;
  DesignSet d(g, {members.begin(), members.end()},
              DesignParams::pds(ni * ni, si * (ni - 1), ni - 2 + (si - 1) * (si - 2), si * (si - 1)));
  verify_pds(d, true);
  return d;
}

TransferInstance pgroup_multiplier_transfer(unsigned p, unsigned n, const DesignSet& base_pds, bool add_y_power) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "n >= 2 is required; for n = 1 the multiplier is trivial");
  auto ab = std::dynamic_pointer_cast<const AbelianGroup>(base_pds.group());
  const auto N = static_cast<std::uint32_t>(ipow(p, n));
  if (!ab || ab->orders() != std::vector<std::uint32_t>{N, N})
    fail(ErrorCode::InvalidArgument, "base PDS must live in C_{p^n} x C_{p^n}");
  verify_pds(base_pds, true);
  const std::int64_t m = static_cast<std::int64_t>(ipow(p, n - 1)) + 1;
  if (!multiplier_check(base_pds, m))
    fail(ErrorCode::MultiplierFails, std::to_string(m) + " is not a multiplier of the base PDS");
  auto phi = aut_from_images(base_pds.group(), images_of_generators(*ab, [&](Elem s) { return ab->pow(s, m); }));
  std::vector<CandidateGenerator> gens{{{}, ab->unit(0)}, {{0}, ab->unit(1)}};
  if (add_y_power) gens.push_back({{}, ab->pow(ab->unit(1), p)});
  return make_transfer_instance(base_pds, {phi}, gens);
}

DesignSet mcfarland_base(unsigned q, unsigned s, std::vector<std::uint32_t> k_orders, std::vector<Elem> assignment) {
  auto [p, e] = prime_power(q);
  if (p == 0 || s < 1) fail(ErrorCode::InvalidArgument, "q must be a prime power and s >= 1");
  if (e > 1 && s != 1) fail(ErrorCode::InvalidArgument, "prime-power q is supported for s = 1 only");
  if (k_orders.empty()) fail(ErrorCode::EmptyOrders, "K needs at least one cyclic factor");

  std::vector<Hyperplane> hyps;
  std::uint32_t e_size = 0;
  std::vector<std::uint32_t> orders;
  if (s == 1) {
    auto f = field_make(static_cast<std::uint32_t>(p), e);
    hyps = hyperplanes(*f, 2);
    e_size = q * q;
    orders.assign(2 * e, static_cast<std::uint32_t>(p));
  } else {
    auto f = field_make(q, s + 1);
    hyps = hyperplanes(*f, 1);
    e_size = f->size();
    orders.assign(s + 1, q);
  }
  const std::size_t r = hyps.size();
  std::size_t k_size = 1;
  for (auto o : k_orders) k_size *= o;
  if (k_size != r + 1)
    fail(ErrorCode::InvalidArgument, "|K| = " + std::to_string(k_size) + " but r+1 = " + std::to_string(r + 1));
  if (assignment.empty())
    for (std::size_t i = 0; i < r; ++i) assignment.push_back(static_cast<Elem>(i + 1));
  if (assignment.size() != r) fail(ErrorCode::InvalidArgument, "assignment needs one K element per hyperplane");
  std::set<Elem> used;
  for (auto a : assignment) {
    if (a == 0 || a >= k_size) fail(ErrorCode::AssignmentNotInjective, "assignment uses the identity or a non-element");
    if (!used.insert(a).second)
      fail(ErrorCode::AssignmentNotInjective, "K element " + std::to_string(a) + " assigned twice");
  }
  orders.insert(orders.end(), k_orders.begin(), k_orders.end());
  auto g = abelian_make(orders);
  std::vector<Elem> members;
  for (std::size_t i = 0; i < r; ++i)
    for (auto pt : hyps[i].points) members.push_back(pt + e_size * assignment[i]);
  DesignSet d(g, std::move(members), mcfarland_params(q, s));
  verify_ds(d);
  return d;
}

// ---------------------------------------------------------------- the (16,6,2) chain

Construction fixture_16_6_2() {
  auto g = abelian_make({4, 2, 2});
  const Elem a = g->unit(0), b = g->unit(1), c = g->unit(2);
  auto m = [&](std::initializer_list<Elem> xs) {
    Elem r = 0;
    for (auto x : xs) r = g->mul(r, x);
    return r;
  };
  std::vector<Elem> members{0, a, b, c, g->pow(a, 3), m({a, a, b, c})};
  DesignSet d(g, members, DesignParams::ds(16, 6, 2));
  Subgroup x = subgroup_closure(g, {a, b});
  x.generators = {a, b};

  Construction out;
  out.family = "dihedral-converse";
  out.params = "";
  out.base = d;
  out.instance = dihedral_converse(d, x);
  out.log.push_back("G = C4 x C2 x C2 with a^4 = b^2 = c^2 = 1; X = <a, b>; y = " + g->format(c));
  out.claims = [a, c](const TransferReport& r) {
    const Ext& e = require_ext(r);
    std::vector<Claim> out;
    out.push_back(claim("transferred set is reversible", r.new_verification && r.new_verification->reversible));
    Elem ea = e.element({}, a), ey = e.element({0}, c);
    out.push_back(claim("(phi,y) inverts (1,a)", e.conj(ea, ey) == e.inv(ea),
                        e.format(ea) + " -> " + e.format(e.conj(ea, ey))));
    out.push_back(noncommuting(e, ey, ea, "nonabelian witness"));
    out.push_back(order_claim("(phi,y) has order", e.element_order(ey), 2));
    return out;
  };
  return out;
}

Construction chain_16_6_2() {
  Construction src = fixture_16_6_2();
  const auto& g = std::static_pointer_cast<const AbelianGroup>(src.design().group());
  auto target = abelian_make({8, 2});
  const Elem k = target->unit(0), x = target->unit(1);
  Subgroup xs = subgroup_closure(g, {g->unit(0), g->unit(1)});
  xs.generators = {g->unit(0), g->unit(1)};
  DesignSet s = corollary_chain(src.design(), xs, target, {target->pow(k, 2), x}, k);

  Construction out;
  out.family = "dillon-forward";
  out.base = s;
  out.log.push_back("target C8 x C2 = <k, x>; H = <k^2, x>, a -> k^2, b -> x, g -> k");
  out.log.push_back("S = " + [&] {
    std::string r;
    for (auto m : s.members()) r += target->format(m) + " ";
    return r;
  }());
  return out;
}

// ---------------------------------------------------------------- p-groups

Construction pgroup_family(unsigned p, unsigned n, unsigned s, unsigned variant) {
  if (variant != 1 && variant != 2) fail(ErrorCode::InvalidArgument, "pgroup-multiplier variant is 1 or 2");
  Construction out;
  out.family = "pgroup-multiplier";
  out.params = join_params({{"p", p}, {"n", n}, {"s", s}, {"variant", variant}});
  out.base = pcp_pds(p, n, s);
  out.instance = pgroup_multiplier_transfer(p, n, *out.base, variant == 2);
  const std::int64_t m = static_cast<std::int64_t>(ipow(p, n - 1)) + 1;
  const std::size_t N = ipow(p, n);
  out.log.push_back("phi: g -> g^" + std::to_string(m));
  // (phi,y)^2 = (1, y^(2^(n-1)+2)) is trivial when p^n = 4, so every (phi,g)
  // is an involution and <(1,x),(phi,y)> has order 8.
  if (p == 2 && n == 2)
    out.log.push_back("p = 2, n = 2: (phi,y)^2 = (1,y^4) = 1; the two-generator closure has order 8" +
                      std::string(variant == 1 ? "; variant 2 adds (1,y^2)" : ""));
  if (variant == 2 && p == 2 && n == 2) {
    // No subgroup of G x| <phi> meeting 1 x G in index 2 is C4 x|_3 C4, since
    // every element outside 1 x G is an involution. Claim only what holds.
    auto ab = std::static_pointer_cast<const AbelianGroup>(out.base->group());
    Elem bx = ab->unit(0), by = ab->unit(1);
    out.claims = [=](const TransferReport& r) {
      const Ext& e = require_ext(r);
      Elem x = e.element({}, bx), y = e.element({0}, by);
      return std::vector<Claim>{noncommuting(e, x, y, "nonabelian witness"),
                                order_claim("|G'| = p^(2n)", e.order(), N * N),
                                order_claim("(phi,y) is an involution", e.element_order(y), 2)};
    };
    return out;
  }
  auto ab = std::static_pointer_cast<const AbelianGroup>(out.base->group());
  Elem bx = ab->unit(0), by = ab->unit(1);
  out.claims = [=](const TransferReport& r) {
    const Ext& e = require_ext(r);
    std::vector<Claim> c;
    Elem x = e.element({}, bx), y = e.element({0}, by);
    c.push_back(noncommuting(e, x, y, "nonabelian witness"));
    c.push_back(order_claim("(1,x) has order p^n", e.element_order(x), N));
    c.push_back(order_claim("(phi,y) has order p^n", e.element_order(y), N));
    Subgroup cx = subgroup_closure(r.new_group, {x});
    c.push_back(claim("<(1,x)> is normal", is_normal(cx)));
    Subgroup cy = subgroup_closure(r.new_group, {y});
    bool trivial = true;
    for (auto m2 : cy.members)
      if (m2 != 0 && cx.contains(m2)) trivial = false;
    c.push_back(claim("<(phi,y)> meets <(1,x)> trivially", trivial));
    c.push_back(claim("(phi,y)^-1 (1,x) (phi,y) = (1,x)^m", e.conj(x, y) == e.pow(x, m),
                      e.format(e.conj(x, y))));
    return c;
  };
  return out;
}

// ---------------------------------------------------------------- Spence

Construction spence(unsigned d) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "spence needs d >= 1");
  const unsigned ext_deg = 3 * d;
  // d = 1 pins the modulus x^3 + 2x + 1 so that theta = x.
  auto f = d == 1 ? field_make(3, 3, Poly{1, 2, 0, 1}) : field_make(3, ext_deg);
  const std::uint32_t q = f->size();
  const std::uint32_t r = (q - 1) / 2;
  std::vector<std::uint32_t> orders(ext_deg, 3);
  orders.push_back(r);
  auto g = abelian_make(orders);
  auto idx = [q](std::uint32_t a, std::uint32_t j) { return static_cast<Elem>(a + q * j); };

  auto hyps = hyperplanes(*f, 1);
  std::vector<Elem> members;
  for (std::uint32_t a = 0; a < q; ++a)
    if (!hyps[0].contains(a)) members.push_back(idx(a, 0));
  for (std::uint32_t j = 1; j < r; ++j)
    for (auto a : hyps[j].points) members.push_back(idx(a, j));
  const std::int64_t n3 = q / 3;
  DesignSet D(g, std::move(members), DesignParams::ds(std::int64_t(q) * r, n3 * (q + 1) / 2, n3 * (n3 + 1) / 2));
  verify_ds(D);

  const std::uint32_t rho = static_cast<std::uint32_t>(ipow(3, d) % r);
  std::vector<Elem> images;
  for (unsigned i = 0; i < ext_deg; ++i) images.push_back(idx(f->frobenius(static_cast<std::uint32_t>(ipow(3, i)), d), 0));
  images.push_back(idx(0, rho));
  auto phi = aut_from_images(g, images);

  std::uint32_t a3 = 0;
  while (hyps[0].contains(a3)) ++a3;
  std::vector<Elem> h0(hyps[0].points.begin(), hyps[0].points.end());
  std::vector<Elem> basis = greedy_basis(g, h0);
  auto gens = plain(basis);
  gens.push_back({{}, idx(0, 1)});
  gens.push_back({{0}, idx(a3, 0)});

  Construction out;
  out.family = "spence";
  out.params = join_params({{"d", d}});
  out.base = D;
  out.instance = make_transfer_instance(D, {phi}, gens);
  out.log.push_back("field GF(" + std::to_string(q) + ") modulus " + poly_to_string(f->modulus(), 3));
  out.log.push_back("a_3d = " + f->format(a3) + " (code " + std::to_string(a3) + ")");
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    std::vector<Claim> c;
    Elem t = e.element({0}, idx(a3, 0));
    c.push_back(order_claim("(phi,a_3d) has order 9", e.element_order(t), 9));
    Elem t3 = e.pow(t, 3);
    c.push_back(claim("(phi,a_3d)^3 lies in 1 x H_0",
                      e.aut_part(t3) == 0 && e.base_part(t3) < q && hyps[0].contains(e.base_part(t3)), e.format(t3)));
    if (d == 1) c.push_back(claim("(phi,a_3)^3 = (1,(2,w^0))", e.aut_part(t3) == 0 && e.base_part(t3) == idx(2, 0)));
    std::vector<Elem> pg;
    for (auto b : basis) pg.push_back(e.element({}, b));
    pg.push_back(t);
    Subgroup p3 = subgroup_closure(rep.new_group, pg);
    c.push_back(order_claim("P_3 is a Sylow 3-subgroup", p3.order(), q));
    auto nc = noncommuting_pair(e, pg);
    c.push_back(claim("P_3 is nonabelian", nc.has_value(),
                      nc ? e.format(nc->first) + ", " + e.format(nc->second) : "generators commute"));
    c.push_back(not_normal(p3, "P_3 is not normal"));
    c.push_back(claim("transferred group is nonabelian", !e.is_abelian()));
    // Tr(c) = 3c = 0 for c in GF(3), so 1 x (GF(3), w^0) is fixed by phi and central.
    Subgroup z = center(rep.new_group);
    if (d == 1) c.push_back(order_claim("center order", z.order(), 3));
    c.push_back(claim("(1,(1,w^0)) is central", z.contains(e.element({}, idx(1, 0)))));
    return c;
  };
  return out;
}

// ---------------------------------------------------------------- Denniston

Construction denniston_even(unsigned m, unsigned r) {
  if (m < 2 || r < 1 || r >= m) fail(ErrorCode::InvalidArgument, "denniston_even needs m >= 2 and 1 <= r < m");
  auto f = field_make(2, m);
  const std::uint32_t q = f->size();
  std::optional<std::uint32_t> alpha;
  for (std::uint32_t a = 1; a < q && !alpha; ++a)
    if (f->mult_order(a) == q - 1 && f->trace(f->inv(a)) == 1) alpha = a;
  if (!alpha) fail(ErrorCode::NoValidAlpha, "no primitive alpha with tr(1/alpha) = 1");
  auto Q = [&](std::uint32_t a, std::uint32_t b) {
    return f->add(f->add(f->mul(a, a), f->mul(*alpha, f->mul(a, b))), f->mul(b, b));
  };
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      if ((a || b) && Q(a, b) == 0) fail(ErrorCode::NoValidAlpha, "Q has a nontrivial zero");

  const std::uint32_t k_bound = 1u << r;  // K = span of 1, x, ..., x^{r-1}
  auto g = abelian_make(std::vector<std::uint32_t>(3 * m, 2));
  auto idx = [q](std::uint32_t x, std::uint32_t y, std::uint32_t z) { return static_cast<Elem>(x + q * (y + q * z)); };
  std::vector<Elem> members;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      if (Q(a, b) < k_bound)
        for (std::uint32_t c = 1; c < q; ++c) members.push_back(idx(c, f->mul(c, a), f->mul(c, b)));
  DesignSet D(g, std::move(members), maximal_arc_params(q, k_bound));
  verify_pds(D, true);

  // M swaps the second and third coordinates.
  std::vector<Elem> images;
  for (unsigned i = 0; i < 3 * m; ++i) images.push_back(g->unit(i < m ? i : (i < 2 * m ? i + m : i - m)));
  auto M = aut_from_images(g, images);

  // X = kernel of the M-invariant functional "coefficient of 1 in x".
  std::vector<Elem> xbasis;
  for (unsigned i = 1; i < 3 * m; ++i) xbasis.push_back(g->unit(i));
  const Elem u = idx(1, 0, 0);
  auto gens = plain(xbasis);
  gens.push_back({{0}, u});

  Construction out;
  out.family = "denniston-even";
  out.params = join_params({{"m", m}, {"r", r}});
  out.base = D;
  out.instance = make_transfer_instance(D, {M}, gens);
  out.log.push_back("alpha = " + f->format(*alpha) + "; K = span{1..x^" + std::to_string(r - 1) + "}");
  out.log.push_back("X = {(x,y,z): x_0 = 0}, u = (1,0,0)");
  const Elem ey = idx(0, 1, 0);
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    return std::vector<Claim>{noncommuting(e, e.element({}, ey), e.element({0}, u), "nonabelian witness"),
                              claim("transferred set is regular", rep.new_verification && rep.new_verification->regular)};
  };
  return out;
}

Elem Gr4Data::element(GaloisRing::Code r, FiniteField::Code s) const {
  return static_cast<Elem>(r + ring->size() * s);
}

Gr4Data denniston_gr4_data(unsigned t) {
  if (t < 2) fail(ErrorCode::InvalidArgument, "denniston_gr4 needs t >= 2");
  Gr4Data out;
  out.ring = galois_ring_make(t);
  const GaloisRing& R = *out.ring;
  const FiniteField& F = *R.residue_field();
  const std::uint32_t n = F.size() - 1;
  std::vector<std::uint32_t> orders(t, 4);
  orders.insert(orders.end(), t, 2);
  out.group = abelian_make(orders);

  std::int64_t wexp = -1;
  for (std::uint32_t i = 0; i < n && wexp < 0; ++i)
    if (F.trace(F.prim_pow(i)) == 1) wexp = i;
  out.w = F.prim_pow(wexp);
  const auto w = out.w;
  auto hyps = hyperplanes(F, 1);
  std::vector<std::vector<GaloisRing::Code>> K(n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (auto y : hyps[j].points) K[j].push_back(R.ideal_iso(y));

  std::vector<Elem> members;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto gi = F.prim_pow(i);
    for (std::uint32_t j = 0; j < n; ++j) {
      auto a = R.lift01(F.add(F.mul(gi, F.add(1, w)), F.mul(F.prim_pow(j), w)));
      auto rep = R.add(R.add(R.h_pow(i), R.h_pow(2 * std::int64_t(i) - j)), R.times(2, a));
      for (auto kk : K[j]) members.push_back(out.element(R.add(rep, kk), gi));
    }
  }
  out.design = std::move(members);

  const auto tr_g = F.trace(F.prim_pow(1));
  for (unsigned l = 0; l < t; ++l) {
    std::vector<Elem> images;
    for (unsigned i = 0; i < t; ++i) {
      auto hi = R.h_pow(i);
      images.push_back(out.element(l == 0 ? R.neg(hi) : R.add(hi, R.times(2, R.mul(hi, R.h_pow(1ll << (l - 1))))), 0));
    }
    for (unsigned i = 0; i < t; ++i) {
      auto gi = F.prim_pow(i);
      GaloisRing::Code fl = 0;
      if (l > 0) {
        fl = R.mul(R.ideal_iso(tr_g), R.h_pow(i));
        for (unsigned k = 0; k < t; ++k) {
          if (k == (l + t - 1) % t || k == (l + 2 * t - 2) % t) continue;
          fl = R.add(fl, R.times(2, R.h_pow(std::int64_t(i) + (1ll << k))));
        }
      }
      images.push_back(out.element(fl, gi));
    }
    out.psi.push_back(aut_from_images(out.group, images));
  }
  return out;
}

Construction denniston_gr4(unsigned t, unsigned k) {
  if (k < 1 || k > t) fail(ErrorCode::InvalidArgument, "denniston_gr4 needs 1 <= k <= t");
  Gr4Data data = denniston_gr4_data(t);
  const std::int64_t q = std::int64_t(1) << t;
  DesignSet D(data.group, data.design, maximal_arc_params(q, q / 2));
  verify_pds(D, true);

  std::vector<unsigned> bad;
  for (unsigned l = 0; l < t; ++l)
    if (!data.psi[l].fixes_set(D.members())) bad.push_back(l);
  for (auto l : bad)
    if (l < k)
      fail(ErrorCode::PsiDoesNotFixD, "psi_" + std::to_string(l) + " moves D; usable k is at most " + std::to_string(l));

  const GaloisRing& R = *data.ring;
  const FiniteField& F = *R.residue_field();
  std::vector<CandidateGenerator> gens;
  for (unsigned i = 0; i < t; ++i) gens.push_back({{}, data.element(R.h_pow(i), 0)});
  for (unsigned j = k; j < t; ++j) gens.push_back({{}, data.element(0, F.prim_pow(j))});
  for (unsigned l = 0; l < k; ++l) gens.push_back({{l}, data.element(0, F.prim_pow(l))});
  std::vector<GroupAutomorphism> auts(data.psi.begin(), data.psi.begin() + k);

  Construction out;
  out.family = "denniston-gr4";
  out.params = join_params({{"t", t}, {"k", k}});
  out.base = D;
  out.instance = make_transfer_instance(D, auts, gens);
  out.log.push_back("Phi = " + poly_to_string(R.phi(), 4) + ", Phi_2 = " + poly_to_string(R.phi2(), 2));
  out.log.push_back("w = " + F.format(data.w));
  {
    std::string fixing;
    for (unsigned l = 0; l < t; ++l)
      fixing += "psi_" + std::to_string(l) + (std::find(bad.begin(), bad.end(), l) == bad.end() ? " fixes D; " : " moves D; ");
    out.log.push_back(fixing);
  }
  const Elem one = data.element(1, 0), d0 = data.element(0, 1);
  const std::size_t x_order = std::size_t(1) << (2 * t + t - k);
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    std::vector<Claim> c;
    c.push_back(noncommuting(e, e.element({}, one), e.element({0}, d0), "nonabelian witness"));
    const Subgroup& x = *rep.x_subgroup;
    c.push_back(order_claim("|X|", x.order(), x_order));
    bool abelian = true;
    std::size_t involutions = 0;
    std::size_t exponent = 1;
    for (auto m : x.members) {
      for (auto s : gens)
        if (s.aut_word.empty() && !data.group->commute(m, s.base)) abelian = false;
      auto o = data.group->element_order(m);
      exponent = std::max(exponent, o);
      if (o <= 2) ++involutions;
    }
    c.push_back(claim("X is C4^t x C2^(t-k)", abelian && exponent == 4 && involutions == (std::size_t(1) << (2 * t - k)),
                      std::to_string(involutions) + " elements of order <= 2"));

    // A complement: one involution per psi_l coset, pairwise commuting.
    const auto& auts_group = e.auts();
    std::vector<std::vector<Elem>> pools(k);
    for (Elem el = 0; el < e.order(); ++el)
      for (unsigned l = 0; l < k; ++l)
        if (e.aut_part(el) == auts_group.generator_index(l) && e.element_order(el) == 2) {
          Elem b = e.base_part(el);
          Elem shifted = data.group->mul(b, data.group->inv(data.element(0, F.prim_pow(l))));
          if (x.contains(shifted)) pools[l].push_back(el);
        }
    std::vector<Elem> chosen;
    std::function<bool(unsigned)> search = [&](unsigned l) {
      if (l == k) return true;
      for (auto cand : pools[l]) {
        bool ok = true;
        for (auto prev : chosen) ok = ok && e.commute(prev, cand);
        if (!ok) continue;
        chosen.push_back(cand);
        if (search(l + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    bool found = search(0);
    std::string detail = "not found";
    if (found) {
      Subgroup comp = subgroup_closure(rep.new_group, chosen);
      bool meet = true;
      for (auto m : comp.members)
        if (m != 0 && e.aut_part(m) == 0) meet = false;
      found = comp.order() == (std::size_t(1) << k) && meet;
      detail.clear();
      for (auto ch : chosen) detail += e.format(ch) + " ";
    }
    c.push_back(claim("split by an elementary abelian complement C2^k", found, detail));
    return c;
  };
  return out;
}

Construction denniston_odd(unsigned p, unsigned t) {
  if (p < 3 || !is_prime(p) || t < 1) fail(ErrorCode::InvalidArgument, "denniston_odd needs an odd prime p and t >= 1");
  const unsigned m = p * t;
  if (ipow(p, 3 * m) > (1u << 22)) fail(ErrorCode::InvalidArgument, "group order p^(3m) is too large");
  auto f1 = field_make(p, m);
  auto f2 = field_make(p, 2 * m);
  const std::uint32_t q1 = f1->size(), q2 = f2->size();
  const std::uint32_t N = (q1 - 1) / (p - 1);
  std::vector<std::uint32_t> orders(3 * m, p);
  auto g = abelian_make(orders);
  auto idx = [q1](std::uint32_t x, std::uint32_t y) { return static_cast<Elem>(x + q1 * y); };

  // Cosets of <alpha^N> in GF(q2)^*, by residue of the logarithm mod N.
  std::vector<std::vector<std::uint32_t>> classes(N);
  for (std::uint32_t y = 1; y < q2; ++y) classes[f2->log(y) % N].push_back(y);
  // The set is a PDS only when omega is the norm alpha^(q1+1), not for an
  // unrelated primitive omega. Any embedding of GF(q1) works: the choices
  // differ by a Frobenius map on the first factor.
  const std::vector<FiniteField::Code> into = embed(*f1, *f2);
  std::vector<Elem> members;
  for (std::uint32_t x = 1; x < q1; ++x) {
    const auto& cls = classes[(f2->log(into[x]) / (q1 + 1)) % N];
    members.push_back(idx(x, 0));
    for (auto y : cls) members.push_back(idx(x, y));
  }
  const std::int64_t pm = q1, pp = p;
  DesignParams params = DesignParams::pds(pm * pm * pm, (pm - 1) * ((pp - 1) * (pm + 1) + 1),
                                          pm - pp + (pm * pp - pm + pp) * (pp - 2), (pm * pp - pm + pp) * (pp - 1));
  DesignSet D(g, std::move(members), params);
  verify_pds(D, true);

  std::vector<Elem> images;
  for (unsigned i = 0; i < m; ++i) images.push_back(idx(f1->frobenius(static_cast<std::uint32_t>(ipow(p, i)), 2 * t), 0));
  for (unsigned i = 0; i < 2 * m; ++i) images.push_back(idx(0, f2->frobenius(static_cast<std::uint32_t>(ipow(p, i)), 2 * t)));
  auto phi = aut_from_images(g, images);

  // X = {(x,y): Tr(x) = 0}; the basis comes from the trace kernel of the first
  // coordinate plus all unit vectors of the second.
  std::vector<Elem> kernel;
  for (std::uint32_t x = 0; x < q1; ++x)
    if (f1->trace(x) == 0) kernel.push_back(idx(x, 0));
  std::vector<Elem> basis = greedy_basis(g, kernel);
  for (unsigned i = 0; i < 2 * m; ++i) basis.push_back(g->unit(m + i));
  std::uint32_t ux = 1;
  while (f1->trace(ux) == 0) ++ux;
  const Elem u = idx(ux, 0);
  auto gens = plain(basis);
  gens.push_back({{0}, u});

  Construction out;
  out.family = "denniston-odd";
  out.params = join_params({{"p", p}, {"t", t}});
  out.base = D;
  out.instance = make_transfer_instance(D, {phi}, gens);
  out.log.push_back("X = {(x,y): Tr(x) = 0}, u = (" + f1->format(ux) + ",0)");
  const Elem alpha = idx(0, f2->primitive_code());
  const std::size_t phi_order = phi.order();
  const unsigned pu = p;
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    std::vector<Claim> c;
    c.push_back(noncommuting(e, e.element({}, alpha), e.element({0}, u), "nonabelian witness"));
    c.push_back(order_claim("phi has order p", phi_order, pu));
    std::map<std::size_t, std::size_t> hist;
    for (Elem el = 0; el < e.order(); ++el) ++hist[e.element_order(el)];
    std::string h;
    for (auto [o, cnt] : hist) h += std::to_string(o) + ":" + std::to_string(cnt) + " ";
    c.push_back(claim("exponent p^2", hist.rbegin()->first == std::size_t(pu) * pu, h));
    c.push_back(claim("transferred set is regular", rep.new_verification && rep.new_verification->regular));
    return c;
  };
  return out;
}

// ---------------------------------------------------------------- McFarland

Construction mcfarland_even(unsigned d, unsigned variant) {
  if (variant < 1 || variant > 3) fail(ErrorCode::InvalidArgument, "variant must be 1, 2 or 3");
  const std::uint32_t q = 1u << d;
  const std::uint32_t n = (q + 2) / 2;
  if (d < 1 || n % 2 == 0) fail(ErrorCode::InvalidArgument, "(q+2)/2 must be odd; d >= 2 is required");
  auto f = field_make(2, d);
  auto lines = hyperplanes(*f, 2);
  const std::uint32_t e_size = q * q;
  auto swap_pt = [q](std::uint32_t pt) { return pt / q + q * (pt % q); };

  // Lines paired under the swap; <(1,1)> (index 2) is the only fixed one.
  std::map<std::vector<std::uint32_t>, std::size_t> line_index;
  for (std::size_t i = 0; i < lines.size(); ++i) line_index[lines[i].points] = i;
  auto swapped_line = [&](std::size_t i) {
    std::vector<std::uint32_t> pts;
    for (auto pt : lines[i].points) pts.push_back(swap_pt(pt));
    std::sort(pts.begin(), pts.end());
    return line_index.at(pts);
  };
  std::vector<std::pair<std::size_t, std::size_t>> line_pairs;
  std::vector<bool> seen(lines.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (seen[i]) continue;
    std::size_t j = swapped_line(i);
    seen[i] = seen[j] = true;
    if (i == j) {
      if (i != 2) fail(ErrorCode::InvalidArgument, "unexpected swap-fixed line");
      continue;
    }
    line_pairs.push_back({i, j});
  }

  // Basis e_1 = (1,0), e_2 = (0,1), then (x^j,0), (0,x^j).
  std::vector<Elem> ebasis{1, q};
  for (unsigned j = 1; j < d; ++j) {
    ebasis.push_back(1u << j);
    ebasis.push_back(q * (1u << j));
  }

  Construction out;
  out.family = "mcfarland-even";
  out.params = join_params({{"d", d}, {"variant", variant}});
  const DesignParams params = mcfarland_params(q, 1);

  if (variant != 3) {
    std::vector<std::uint32_t> orders(2 * d, 2);
    orders.push_back(q + 2);
    auto g = abelian_make(orders);
    const std::uint32_t u = n;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> k_pairs;
    for (std::uint32_t x = 1; x < q + 2; ++x)
      if (x != u && x < q + 2 - x) k_pairs.push_back({x, q + 2 - x});
    std::vector<Elem> assign(lines.size(), 0);
    assign[2] = u;
    for (std::size_t j = 0; j < line_pairs.size(); ++j) {
      assign[line_pairs[j].first] = k_pairs[j].first;
      assign[line_pairs[j].second] = k_pairs[j].second;
      out.log.push_back(lines[line_pairs[j].first].label + " -> " + std::to_string(k_pairs[j].first) + ", " +
                        lines[line_pairs[j].second].label + " -> " + std::to_string(k_pairs[j].second));
    }
    std::vector<Elem> members;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (auto pt : lines[i].points) members.push_back(pt + e_size * assign[i]);
    DesignSet D(g, std::move(members), params);
    verify_ds(D);
    std::vector<Elem> images;
    for (unsigned i = 0; i < 2 * d; ++i) images.push_back(g->unit(i < d ? i + d : i - d));
    images.push_back(g->inv(g->unit(2 * d)));
    auto phi = aut_from_images(g, images);
    const Elem ku = e_size * u, ky = e_size * 2;
    std::vector<CandidateGenerator> gens;
    if (variant == 1) {
      gens.push_back({{0}, ku});
      gens.push_back({{}, ky});
      for (auto b : ebasis) gens.push_back({{}, b});
    } else {
      gens.push_back({{0}, ebasis[0]});
      gens.push_back({{}, ky});
      gens.push_back({{}, ku});
      gens.push_back({{}, ebasis[0] ^ ebasis[1]});
      for (std::size_t i = 2; i < ebasis.size(); ++i) gens.push_back({{}, ebasis[i]});
    }
    out.base = D;
    out.instance = make_transfer_instance(D, {phi}, gens);
    const Elem e1 = ebasis[0], e12 = ebasis[0] ^ ebasis[1];
    out.claims = [=](const TransferReport& rep) {
      const Ext& e = require_ext(rep);
      std::vector<Claim> c;
      if (variant == 1) {
        c.push_back(noncommuting(e, e.element({0}, ku), e.element({}, e1), "nonabelian witness"));
        c.push_back(order_claim("(phi,0,u) has order 2", e.element_order(e.element({0}, ku)), 2));
      } else {
        Elem t = e.element({0}, e1);
        c.push_back(noncommuting(e, t, e.element({}, ky), "nonabelian witness"));
        c.push_back(claim("(phi,e1,0)^2 = (1,e1+e2,0)", e.mul(t, t) == e.element({}, e12), e.format(e.mul(t, t))));
      }
      return c;
    };
    return out;
  }

  // Variant 3: G' = E x D_n built as the extension of C2^{2d} x C_n by tau.
  std::vector<std::uint32_t> orders(2 * d, 2);
  orders.push_back(n);
  auto b = abelian_make(orders);
  std::vector<Elem> timg;
  for (unsigned i = 0; i < 2 * d; ++i) timg.push_back(b->unit(i));
  timg.push_back(b->inv(b->unit(2 * d)));
  auto tau = aut_from_images(b, timg);
  std::vector<CandidateGenerator> bgens;
  for (unsigned i = 0; i <= 2 * d; ++i) bgens.push_back({{}, b->unit(i)});
  bgens.push_back({{0}, 0});
  ExtPtr gp = ExtensionGroup::closure(b, {tau}, bgens);
  const Ext& G = *gp;
  auto embed_e = [&](Elem e) { return G.element({}, e); };
  const Elem y = G.element({}, b->unit(2 * d)), u = G.element({0}, 0);

  std::vector<Elem> kprime;
  for (Elem x = 0; x < G.order(); ++x)
    if (G.base_part(x) % e_size == 0) kprime.push_back(x);
  std::vector<std::pair<Elem, Elem>> k_pairs;
  std::vector<bool> used(G.order(), false);
  for (auto x : kprime) {
    if (x == 0 || x == u || used[x]) continue;
    Elem xc = G.conj(x, u);
    used[x] = used[xc] = true;
    k_pairs.push_back({x, xc});
  }
  std::vector<Elem> assign(lines.size(), 0);
  assign[2] = u;
  for (std::size_t j = 0; j < line_pairs.size(); ++j) {
    assign[line_pairs[j].first] = k_pairs[j].first;
    assign[line_pairs[j].second] = k_pairs[j].second;
    out.log.push_back(lines[line_pairs[j].first].label + " -> " + G.format(k_pairs[j].first) + ", " +
                      lines[line_pairs[j].second].label + " -> " + G.format(k_pairs[j].second));
  }
  std::vector<Elem> members;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (auto pt : lines[i].points) members.push_back(G.mul(embed_e(pt), assign[i]));
  DesignSet D(gp, std::move(members), params);
  verify_ds(D);

  std::vector<Elem> images;
  for (unsigned i = 0; i < 2 * d; ++i) images.push_back(embed_e(b->unit(i < d ? i + d : i - d)));
  images.push_back(G.conj(y, u));
  images.push_back(u);
  auto psi = aut_from_images(gp, images);
  const Elem e1 = embed_e(ebasis[0]), e12 = embed_e(ebasis[0] ^ ebasis[1]);
  std::vector<Elem> rest;
  for (std::size_t i = 2; i < ebasis.size(); ++i) rest.push_back(embed_e(ebasis[i]));
  std::vector<CandidateGenerator> gens{{{0}, e1}, {{}, y}, {{}, u}, {{}, e12}};
  for (auto r : rest) gens.push_back({{}, r});
  out.base = D;
  out.instance = make_transfer_instance(D, {psi}, gens);
  out.log.push_back("K' = D_" + std::to_string(n) + " = <y, u>, u = " + G.format(u));
  const std::size_t q2 = e_size;
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    std::vector<Claim> c;
    Elem cu = e.element({}, u), ct = e.element({0}, e1), cy = e.element({}, y), c12 = e.element({}, e12);
    std::vector<Elem> qg{cu, ct}, eg{cu, c12};
    for (auto r : rest) {
      qg.push_back(e.element({}, r));
      eg.push_back(e.element({}, r));
    }
    Subgroup Q = subgroup_closure(rep.new_group, qg);
    Subgroup E = subgroup_closure(rep.new_group, eg);
    c.push_back(order_claim("|Q'| = 2q^2", Q.order(), 2 * q2));
    c.push_back(order_claim("(psi,e1,1) has order 4", e.element_order(ct), 4));
    c.push_back(order_claim("|E'| = q^2", E.order(), q2));
    bool elem_ab = !noncommuting_pair(e, eg).has_value();
    for (auto x : eg) elem_ab = elem_ab && e.element_order(x) == 2;
    c.push_back(claim("E' is elementary abelian", elem_ab));
    Elem w = e.conj(cu, cy);
    c.push_back(claim("(1,0,y)^-1 (1,0,u) (1,0,y) lies outside Q'", !Q.contains(w), e.format(w)));
    c.push_back(not_normal(Q, "Q' is not normal"));
    c.push_back(not_normal(E, "E' is not normal"));
    c.push_back(noncommuting(e, ct, cy, "nonabelian witness"));
    return c;
  };
  return out;
}

Construction mcfarland_odd(unsigned q, unsigned s) {
  if (!is_prime(q) || q < 3) fail(ErrorCode::InvalidArgument, "mcfarland_odd needs an odd prime q");
  const std::uint64_t r = (ipow(q, s + 1) - 1) / (q - 1);
  if ((r + 1) % 2 != 0 || !is_prime((r + 1) / 2) || (r + 1) / 2 < 3)
    fail(ErrorCode::RPlusOneNotTwiceOddPrime, "r+1 = " + std::to_string(r + 1) + " is not twice an odd prime");
  if (s < 2 || s >= q) fail(ErrorCode::InvalidArgument, "mcfarland_odd needs 2 <= s < q");
  const std::uint32_t p = static_cast<std::uint32_t>((r + 1) / 2);
  if ((p - 1) % q != 0) fail(ErrorCode::InvalidArgument, "q does not divide p-1");
  const std::uint32_t kn = 2 * p;

  auto f = field_make(q, s + 1);
  auto hyps = hyperplanes(*f, 1);
  const std::uint32_t e_size = f->size();
  std::vector<std::uint32_t> orders(s + 1, q);
  orders.push_back(kn);
  auto g = abelian_make(orders);

  // M acts on coordinate vectors: (Mv)_i = v_i + v_{i+1}, (Mv)_s = v_s.
  auto apply_m = [&](std::uint32_t code) {
    auto v = f->coeffs(code);
    std::vector<std::uint32_t> w(s + 1);
    for (unsigned i = 0; i < s; ++i) w[i] = (v[i] + v[i + 1]) % q;
    w[s] = v[s];
    return f->from_coeffs(w);
  };
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < hyps.size(); ++i) index[hyps[i].points] = i;
  std::vector<std::size_t> m_of(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    std::vector<std::uint32_t> pts;
    for (auto pt : hyps[i].points) pts.push_back(apply_m(pt));
    std::sort(pts.begin(), pts.end());
    m_of[i] = index.at(pts);
  }
  std::vector<std::size_t> fixed;
  for (std::size_t i = 0; i < hyps.size(); ++i)
    if (m_of[i] == i) fixed.push_back(i);
  if (fixed.size() != 1) fail(ErrorCode::InvalidArgument, "M fixes " + std::to_string(fixed.size()) + " hyperplanes");
  const std::size_t h1 = fixed[0];
  for (auto pt : hyps[h1].points)
    if (f->coeffs(pt)[s] != 0) fail(ErrorCode::InvalidArgument, "M-fixed hyperplane is not span{e_1..e_s}");

  std::uint32_t c = 0;
  for (std::uint32_t x = 2; x < kn && !c; ++x)
    if (std::gcd(x, kn) == 1 && mult_order_mod(x, kn) == q) c = x;
  if (!c) fail(ErrorCode::InvalidArgument, "no order-q unit modulo 2p");

  std::vector<Elem> assign(hyps.size(), 0);
  assign[h1] = p;
  std::vector<bool> hseen(hyps.size(), false), kseen(kn, false);
  hseen[h1] = true;
  kseen[0] = kseen[p] = true;
  std::uint32_t next_k = 1;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (hseen[i]) continue;
    while (kseen[next_k]) ++next_k;
    std::size_t hcur = i;
    std::uint32_t kcur = next_k;
    for (unsigned j = 0; j < q; ++j) {
      if (hseen[hcur] || kseen[kcur]) fail(ErrorCode::InvalidArgument, "orbit sizes differ from q");
      hseen[hcur] = kseen[kcur] = true;
      assign[hcur] = kcur;
      hcur = m_of[hcur];
      kcur = static_cast<std::uint32_t>(std::uint64_t(kcur) * c % kn);
    }
  }
  std::vector<Elem> members;
  for (std::size_t i = 0; i < hyps.size(); ++i)
    for (auto pt : hyps[i].points) members.push_back(pt + e_size * assign[i]);
  DesignSet D(g, std::move(members), mcfarland_params(q, s));
  verify_ds(D);

  std::vector<Elem> images;
  for (unsigned j = 0; j <= s; ++j) images.push_back(apply_m(g->unit(j)));
  images.push_back(g->pow(g->unit(s + 1), c));
  auto phi = aut_from_images(g, images);
  std::vector<CandidateGenerator> gens{{{}, g->unit(s + 1)}};
  for (unsigned j = 0; j < s; ++j) gens.push_back({{}, g->unit(j)});
  gens.push_back({{0}, g->unit(s)});

  Construction out;
  out.family = "mcfarland-odd";
  out.params = join_params({{"q", q}, {"s", s}});
  out.base = D;
  out.instance = make_transfer_instance(D, {phi}, gens);
  out.log.push_back("K = Z/" + std::to_string(kn) + ", sigma: x -> " + std::to_string(c) + "x");
  out.log.push_back("H_1 = " + hyps[h1].label + " is the unique M-fixed hyperplane");
  const std::size_t qs1 = ipow(q, s + 1);
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    std::vector<Claim> cl;
    std::vector<Elem> qg{e.element({0}, g->unit(s))};
    for (unsigned j = 0; j < s; ++j) qg.push_back(e.element({}, g->unit(j)));
    Subgroup Q = subgroup_closure(rep.new_group, qg);
    cl.push_back(order_claim("|Q| = q^(s+1)", Q.order(), qs1));
    cl.push_back(noncommuting(e, qg[0], qg[2], "Q is nonabelian"));
    cl.push_back(not_normal(Q, "Q is not normal"));
    cl.push_back(claim("M fixes a unique hyperplane", true, "H_" + std::to_string(h1)));
    return cl;
  };
  return out;
}

// ---------------------------------------------------------------- relative difference sets

namespace {

struct RdsSetup {
  FieldPtr field;
  std::shared_ptr<const AbelianGroup> group;
  std::vector<Hyperplane> slots;  // index 0..Q
  std::vector<std::size_t> base_index;
  bool frobenius_compatible = true;
};

RdsSetup rds_setup(unsigned d, std::vector<std::string>* log) {
  if (d < 1 || 4 * d > 20) fail(ErrorCode::InvalidArgument, "rds needs 1 <= d <= 5");
  RdsSetup s;
  s.field = field_make(2, 2 * d);
  const FiniteField& F = *s.field;
  const std::uint32_t Q = F.size();
  auto lines = hyperplanes(F, 2);
  std::vector<std::uint32_t> orders{Q};
  orders.insert(orders.end(), 4 * d, 2);
  s.group = abelian_make(orders);

  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < lines.size(); ++i) index[lines[i].points] = i;
  auto frob = [&](std::size_t i) {
    std::vector<std::uint32_t> pts;
    for (auto pt : lines[i].points) pts.push_back(F.frobenius(pt % Q, d) + Q * F.frobenius(pt / Q, d));
    std::sort(pts.begin(), pts.end());
    return index.at(pts);
  };

  std::vector<std::int64_t> slot_of(lines.size(), -1);
  std::vector<std::int64_t> line_at(Q + 1, -1);
  auto place = [&](std::size_t line, std::size_t slot) {
    slot_of[line] = static_cast<std::int64_t>(slot);
    line_at[slot] = static_cast<std::int64_t>(line);
  };
  place(0, 0);
  place(1, Q / 2);
  place(2, Q);
  std::size_t next = 1;
  std::vector<std::size_t> leftovers;
  for (std::size_t i = 3; i < lines.size(); ++i) {
    if (slot_of[i] >= 0) continue;
    std::size_t j = frob(i);
    if (j == i) {
      leftovers.push_back(i);
      continue;
    }
    place(i, next);
    place(j, Q - next);
    ++next;
  }
  // Extra Frobenius-fixed lines only occur for d >= 2; they fill the
  // remaining slots and break the phi-invariance of R.
  for (auto i : leftovers) {
    while (line_at[next] >= 0) ++next;
    place(i, next);
    s.frobenius_compatible = false;
    if (log) log->push_back("Frobenius-fixed line " + lines[i].label + " placed at slot " + std::to_string(next));
  }
  for (std::size_t slot = 0; slot <= Q; ++slot) {
    s.slots.push_back(lines[line_at[slot]]);
    s.base_index.push_back(static_cast<std::size_t>(line_at[slot]));
  }
  if (log) {
    std::string perm = "slot -> base line:";
    for (std::size_t slot = 0; slot <= Q; ++slot) perm += " " + std::to_string(s.base_index[slot]);
    log->push_back(perm);
  }
  return s;
}

DesignSet rds_from_setup(const RdsSetup& s) {
  const std::uint32_t Q = s.field->size();
  std::vector<Elem> members;
  for (std::uint32_t i = 1; i <= Q; ++i)
    for (auto pt : s.slots[i].points) members.push_back((i % Q) + Q * pt);
  std::vector<Elem> forbidden;
  for (auto pt : s.slots[0].points) forbidden.push_back(Q * pt);
  Subgroup u = subset_as_subgroup(s.group, forbidden);
  u.generators = greedy_basis(s.group, forbidden);
  const std::int64_t qq = Q;
  DesignSet d(s.group, std::move(members), DesignParams::rds(qq * qq, qq, qq * qq, qq), u);
  verify_rds(d);
  return d;
}

}  // namespace

DesignSet rds_base(unsigned d, std::vector<std::string>* log) { return rds_from_setup(rds_setup(d, log)); }

Construction rds_transfer(unsigned d, unsigned variant) {
  if (variant < 1 || variant > 2) fail(ErrorCode::InvalidArgument, "variant must be 1 or 2");
  Construction out;
  out.family = "rds-transfer";
  out.params = join_params({{"d", d}, {"variant", variant}});
  RdsSetup s = rds_setup(d, &out.log);
  DesignSet R = rds_from_setup(s);
  out.base = R;
  const FiniteField& F = *s.field;
  const std::uint32_t Q = F.size();
  const auto& g = s.group;

  std::vector<Elem> images{g->inv(g->unit(0))};
  for (unsigned b = 0; b < 4 * d; ++b) {
    std::uint32_t pt = b < 2 * d ? F.frobenius(1u << b, d) : Q * F.frobenius(1u << (b - 2 * d), d);
    images.push_back(Q * pt);
  }
  auto phi = aut_from_images(g, images);

  std::vector<CandidateGenerator> gens;
  const Elem w = 1;
  std::uint32_t beta = 0;
  if (variant == 1) {
    gens.push_back({{0}, w});
    gens.push_back({{}, 2});
    for (unsigned b = 0; b < 4 * d; ++b) gens.push_back({{}, g->unit(b + 1)});
  } else {
    for (std::uint32_t c = 2; c < Q && !beta; ++c)
      if (F.mult_order(c) == Q - 1 && !F.in_subfield(c, d)) beta = c;
    std::uint32_t a = 0;
    for (std::uint32_t c = 1; c < Q && !a; ++c)
      if (F.in_subfield(c, d) && F.trace(F.mul(c, beta)) == 1) a = c;
    if (!beta || !a) fail(ErrorCode::InvalidArgument, "no beta outside GF(q) with a matching functional");
    std::vector<Elem> w0;
    for (std::uint32_t pt = 0; pt < Q * Q; ++pt)
      if (F.trace(F.mul(a, pt % Q)) == 0) w0.push_back(Q * pt);
    auto basis = greedy_basis(g, w0);
    gens.push_back({{0}, Q * beta});
    gens.push_back({{}, w});
    for (auto b : basis) gens.push_back({{}, b});
    out.log.push_back("beta = " + F.format(beta) + ", W_0 = ker Tr(" + F.format(a) + " x)");
  }
  out.instance = make_transfer_instance(R, {phi}, gens);
  const std::uint32_t alpha = F.primitive_code();
  out.claims = [=](const TransferReport& rep) {
    const Ext& e = require_ext(rep);
    std::vector<Claim> c;
    if (variant == 1) {
      c.push_back(noncommuting(e, e.element({0}, w), e.element({}, Q * alpha), "nonabelian witness"));
      return c;
    }
    const Subgroup& U = *rep.new_forbidden;
    Elem t = e.element({0}, Q * beta);
    c.push_back(claim("(phi,1,beta,0) lies in the forbidden subgroup", U.contains(t)));
    c.push_back(order_claim("(phi,1,beta,0) has order 4", e.element_order(t), 4));
    Claim nc{"forbidden subgroup has a noncommuting pair", false, "none found", (Q > 4)};
    if (Q > 4) {
      for (auto m : U.members)
        if (e.aut_part(m) == 0 && !e.commute(m, t)) {
          nc.holds = true;
          nc.detail = e.format(t) + ", " + e.format(m);
          break;
        }
    } else {
      nc.detail = "q = 2: not claimed";
    }
    c.push_back(nc);
    c.push_back(noncommuting(e, t, e.element({}, w), "nonabelian witness"));
    return c;
  };
  return out;
}

// ---------------------------------------------------------------- registry

std::vector<std::string> family_names() {
  return {"dihedral-converse", "dillon-forward", "pcp-pds",        "pgroup-multiplier", "spence",
          "denniston-even",    "denniston-gr4",  "denniston-odd",  "mcfarland-base",    "mcfarland-even",
          "mcfarland-odd",     "rds-base",       "rds-transfer"};
}

Construction build_family(const std::string& name, const FamilyParams& fp) {
  auto get = [](const std::optional<unsigned>& v, unsigned dflt) { return v.value_or(dflt); };
  if (name == "dihedral-converse") return fixture_16_6_2();
  if (name == "dillon-forward" || name == "corollary-chain") return chain_16_6_2();
  if (name == "pcp-pds") {
    const unsigned p = get(fp.p, 2), n = get(fp.n, 2), s = get(fp.s, 2);
    Construction c;
    c.family = name;
    c.params = join_params({{"p", p}, {"n", n}, {"s", s}});
    c.base = pcp_pds(p, n, s);
    return c;
  }
  if (name == "pgroup-multiplier") return pgroup_family(get(fp.p, 2), get(fp.n, 2), get(fp.s, 3), get(fp.variant, 1));
  if (name == "spence") return spence(get(fp.d, 1));
  if (name == "denniston-even") return denniston_even(get(fp.m, 2), get(fp.r, 1));
  if (name == "denniston-gr4") return denniston_gr4(get(fp.t, 2), get(fp.k, 1));
  if (name == "denniston-odd") return denniston_odd(get(fp.p, 3), get(fp.t, 1));
  if (name == "mcfarland-base") {
    const unsigned q = get(fp.q, 2), s = get(fp.s, 1);
    const auto r = (ipow(q, s + 1) - 1) / (q - 1);
    Construction c;
    c.family = name;
    c.params = join_params({{"q", q}, {"s", s}});
    c.base = mcfarland_base(q, s, {static_cast<std::uint32_t>(r + 1)});
    return c;
  }
  if (name == "mcfarland-even") return mcfarland_even(get(fp.d, 2), get(fp.variant, 1));
  if (name == "mcfarland-odd") return mcfarland_odd(get(fp.q, 3), get(fp.s, 2));
  if (name == "rds-base") {
    const unsigned d = get(fp.d, 1);
    Construction c;
    c.family = name;
    c.params = join_params({{"d", d}});
    c.base = rds_base(d, &c.log);
    return c;
  }
  if (name == "rds-transfer") return rds_transfer(get(fp.d, 1), get(fp.variant, 1));
  fail(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

std::vector<Claim> evaluate_claims(const Construction& c, const TransferReport& report) {
  if (!c.claims) return {};
  try {
    return c.claims(report);
  } catch (const Error& e) {
    return {claim("claims evaluated", false, e.what())};
  }
}

}  // namespace dset
