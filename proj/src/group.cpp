#include "dset/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "dset/error.hpp"
#include "dset/numtheory.hpp"

namespace dset {

// ------------------------------------------------------------------ Group

Elem Group::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = identity();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Group::commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

std::size_t Group::element_order(Elem a) const {
  std::size_t n = 1;
  for (Elem x = a; x != identity(); x = mul(x, a)) ++n;
  return n;
}

bool Group::is_abelian() const {
  const auto& gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commute(gens[i], gens[j])) return false;
  return true;
}

std::string Group::format(Elem a) const {
  std::ostringstream out;
  out << "(";
  auto c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
  out << ")";
  return out.str();
}

// ----------------------------------------------------------- AbelianGroup

AbelianGroup::AbelianGroup(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) fail(ErrorCode::EmptyOrders, "abelian group needs at least one factor");
  order_ = 1;
  for (auto n : orders_) {
    if (n < 2) fail(ErrorCode::InvalidArgument, "cyclic factor orders must be >= 2");
    strides_.push_back(order_);
    gens_.push_back(static_cast<Elem>(order_));
    order_ *= n;
    if (order_ > (std::size_t{1} << 30)) fail(ErrorCode::InvalidArgument, "group too large");
  }
}

Elem AbelianGroup::mul(Elem a, Elem b) const {
  Elem r = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::uint32_t n = orders_[i];
    std::uint32_t s = a % n + b % n;
    if (s >= n) s -= n;
    r += static_cast<Elem>(s * strides_[i]);
    a /= n;
    b /= n;
  }
  return r;
}

Elem AbelianGroup::inv(Elem a) const {
  Elem r = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::uint32_t n = orders_[i];
    std::uint32_t d = a % n;
    r += static_cast<Elem>(((n - d) % n) * strides_[i]);
    a /= n;
  }
  return r;
}

std::vector<std::int64_t> AbelianGroup::coords(Elem a) const {
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    c[i] = a % orders_[i];
    a /= orders_[i];
  }
  return c;
}

std::string AbelianGroup::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < orders_.size(); ++i) out << (i ? " x " : "") << "C" << orders_[i];
  return out.str();
}

Elem AbelianGroup::from_exps(std::span<const std::int64_t> exps) const {
  if (exps.size() != orders_.size()) fail(ErrorCode::InvalidArgument, "exponent vector length");
  Elem r = 0;
  for (std::size_t i = 0; i < exps.size(); ++i)
    r += static_cast<Elem>(mod(exps[i], orders_[i]) * strides_[i]);
  return r;
}

Elem AbelianGroup::from_exps(std::initializer_list<std::int64_t> exps) const {
  return from_exps(std::span<const std::int64_t>(exps.begin(), exps.size()));
}

std::shared_ptr<const AbelianGroup> abelian_make(std::vector<std::uint32_t> orders) {
  return std::make_shared<const AbelianGroup>(std::move(orders));
}

// ------------------------------------------------------ GroupAutomorphism

std::vector<Elem> GroupAutomorphism::generator_images() const {
  std::vector<Elem> out;
  for (auto s : group_->generators()) out.push_back(perm_[s]);
  return out;
}

GroupAutomorphism GroupAutomorphism::then(const GroupAutomorphism& next) const {
  std::vector<Elem> p(perm_.size());
  for (std::size_t x = 0; x < p.size(); ++x) p[x] = next.perm_[perm_[x]];
  return GroupAutomorphism(group_, std::move(p));
}

GroupAutomorphism GroupAutomorphism::inverse() const {
  std::vector<Elem> p(perm_.size());
  for (std::size_t x = 0; x < p.size(); ++x) p[perm_[x]] = static_cast<Elem>(x);
  return GroupAutomorphism(group_, std::move(p));
}

std::size_t GroupAutomorphism::order() const {
  std::vector<bool> seen(perm_.size(), false);
  std::size_t result = 1;
  for (std::size_t x = 0; x < perm_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = perm_[y]) {
      seen[y] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

bool GroupAutomorphism::is_identity() const {
  for (std::size_t x = 0; x < perm_.size(); ++x)
    if (perm_[x] != x) return false;
  return true;
}

bool GroupAutomorphism::fixes_set(std::span<const Elem> members) const {
  std::vector<bool> in(perm_.size(), false);
  for (auto m : members) in[m] = true;
  for (auto m : members)
    if (!in[perm_[m]]) return false;
  return true;
}

GroupAutomorphism certify_automorphism(GroupPtr group, std::vector<Elem> perm) {
  const std::size_t n = group->order();
  if (perm.size() != n) fail(ErrorCode::NotBijective, "map has wrong domain size");
  std::vector<bool> hit(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (perm[x] >= n || hit[perm[x]])
      fail(ErrorCode::NotBijective, "image " + group->format(perm[x] % n) + " repeated or out of range");
    hit[perm[x]] = true;
  }
  for (auto s : group->generators()) {
    for (std::size_t x = 0; x < n; ++x) {
      Elem lhs = perm[group->mul(static_cast<Elem>(x), s)];
      Elem rhs = group->mul(perm[x], perm[s]);
      if (lhs != rhs)
        fail(ErrorCode::NotHomomorphism, "f(x s) != f(x) f(s) at x = " + group->format(static_cast<Elem>(x)) +
                                             ", s = " + group->format(s));
    }
  }
  return GroupAutomorphism(std::move(group), std::move(perm));
}

GroupAutomorphism aut_from_images(GroupPtr group, std::span<const Elem> images) {
  const auto& gens = group->generators();
  if (images.size() != gens.size())
    fail(ErrorCode::InvalidArgument, "one image per distinguished generator required");
  const std::size_t n = group->order();
  for (auto im : images)
    if (im >= n) fail(ErrorCode::NotASubgroupMember, "generator image outside the group");
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> perm(n, unset);
  perm[group->identity()] = group->identity();
  std::deque<Elem> queue{group->identity()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = group->mul(x, gens[k]);
      Elem im = group->mul(perm[x], images[k]);
      if (perm[y] == unset) {
        perm[y] = im;
        queue.push_back(y);
      } else if (perm[y] != im) {
        fail(ErrorCode::NotHomomorphism, "images conflict at " + group->format(y));
      }
    }
  }
  if (std::find(perm.begin(), perm.end(), unset) != perm.end())
    fail(ErrorCode::InvalidArgument, "distinguished generators do not generate the group");
  return certify_automorphism(std::move(group), std::move(perm));
}

GroupAutomorphism identity_automorphism(GroupPtr group) {
  std::vector<Elem> perm(group->order());
  std::iota(perm.begin(), perm.end(), Elem{0});
  return certify_automorphism(std::move(group), std::move(perm));
}

// ---------------------------------------------------------------- AutGroup

AutGroup::AutGroup(GroupPtr base, std::vector<GroupAutomorphism> gens, std::size_t cap)
    : gens_(std::move(gens)) {
  for (const auto& g : gens_)
    if (g.group() != base && g.group()->order() != base->order())
      fail(ErrorCode::InvalidArgument, "automorphism of a different group");
  std::map<std::vector<Elem>, std::size_t> index;
  elems_.push_back(identity_automorphism(base));
  index[elems_[0].perm()] = 0;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (const auto& g : gens_) {
      GroupAutomorphism c = elems_[i].then(g);
      if (index.count(c.perm())) continue;
      if (elems_.size() >= cap) fail(ErrorCode::ClosureOverflow, "automorphism group exceeds cap");
      index[c.perm()] = elems_.size();
      elems_.push_back(std::move(c));
    }
  }
  const std::size_t n = elems_.size();
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = index.at(elems_[i].then(elems_[j]).perm());
      table_[i * n + j] = k;
      if (k == 0) inverse_[i] = j;
    }
  for (const auto& g : gens_) gen_index_.push_back(index.at(g.perm()));
}

std::size_t AutGroup::index_of_word(std::span<const std::size_t> word) const {
  std::size_t idx = 0;
  for (auto k : word) {
    if (k >= gen_index_.size()) fail(ErrorCode::InvalidArgument, "aut word letter out of range");
    idx = mul(idx, gen_index_[k]);
  }
  return idx;
}

// ---------------------------------------------------------- ExtensionGroup

ExtensionGroup::ExtensionGroup(GroupPtr base, AutGroup auts, std::vector<CandidateGenerator> cand)
    : base_(std::move(base)), auts_(std::move(auts)), cand_(std::move(cand)) {}

std::shared_ptr<const ExtensionGroup> ExtensionGroup::closure(GroupPtr base,
                                                              std::vector<GroupAutomorphism> aut_gens,
                                                              std::vector<CandidateGenerator> gens,
                                                              std::size_t cap) {
  const std::size_t nb = base->order();
  if (cap == 0) cap = 2 * nb;
  for (const auto& c : gens)
    if (c.base >= nb) fail(ErrorCode::NotASubgroupMember, "candidate generator outside the base group");
  AutGroup auts(base, std::move(aut_gens));
  std::shared_ptr<ExtensionGroup> g(new ExtensionGroup(base, std::move(auts), std::move(gens)));
  g->index_.assign(g->auts_.size() * nb, -1);
  g->elems_.push_back({0, base->identity()});
  g->index_[base->identity()] = 0;

  std::vector<std::pair<std::size_t, Elem>> step;
  for (const auto& c : g->cand_) step.push_back({g->auts_.index_of_word(c.aut_word), c.base});

  for (std::size_t i = 0; i < g->elems_.size(); ++i) {
    for (const auto& [a2, g2] : step) {
      auto [a1, g1] = g->elems_[i];
      std::size_t a = 0;
      Elem b = g->combine(a1, g1, a2, g2, a);
      std::int32_t& slot = g->index_[a * nb + b];
      if (slot >= 0) continue;
      if (g->elems_.size() >= cap)
        fail(ErrorCode::ClosureOverflow, "closure exceeds cap of " + std::to_string(cap) + " elements");
      slot = static_cast<std::int32_t>(g->elems_.size());
      g->elems_.push_back({a, b});
    }
  }
  for (const auto& [a, b] : step) g->gen_elems_.push_back(static_cast<Elem>(g->index_[a * nb + b]));
  return g;
}

Elem ExtensionGroup::combine(std::size_t a1, Elem g1, std::size_t a2, Elem g2, std::size_t& a_out) const {
  a_out = auts_.mul(a1, a2);
  return base_->mul(auts_.at(a2)(g1), g2);
}

Elem ExtensionGroup::mul(Elem x, Elem y) const {
  std::size_t a = 0;
  Elem b = combine(elems_[x].first, elems_[x].second, elems_[y].first, elems_[y].second, a);
  std::int32_t idx = index_[a * base_->order() + b];
  if (idx < 0) fail(ErrorCode::NotASubgroupMember, "product left the enumerated closure");
  return static_cast<Elem>(idx);
}

Elem ExtensionGroup::inv(Elem x) const {
  auto [a, g] = elems_[x];
  std::size_t ai = auts_.inv(a);
  Elem b = auts_.at(ai)(base_->inv(g));
  std::int32_t idx = index_[ai * base_->order() + b];
  if (idx < 0) fail(ErrorCode::NotASubgroupMember, "inverse left the enumerated closure");
  return static_cast<Elem>(idx);
}

std::vector<std::int64_t> ExtensionGroup::coords(Elem x) const {
  std::vector<std::int64_t> c{static_cast<std::int64_t>(elems_[x].first)};
  auto b = base_->coords(elems_[x].second);
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

std::string ExtensionGroup::describe() const {
  std::ostringstream out;
  out << "subgroup of order " << order() << " in (" << auts_.size() << " automorphisms) |x ("
      << base_->describe() << ")";
  return out.str();
}

std::optional<Elem> ExtensionGroup::find(std::size_t aut_index, Elem base) const {
  if (aut_index >= auts_.size() || base >= base_->order()) return std::nullopt;
  std::int32_t idx = index_[aut_index * base_->order() + base];
  if (idx < 0) return std::nullopt;
  return static_cast<Elem>(idx);
}

Elem ExtensionGroup::element(std::span<const std::size_t> aut_word, Elem base) const {
  auto e = find(auts_.index_of_word(aut_word), base);
  if (!e) fail(ErrorCode::NotASubgroupMember, "requested element is not in the closure");
  return *e;
}

Elem ExtensionGroup::element(std::initializer_list<std::size_t> aut_word, Elem base) const {
  return element(std::span<const std::size_t>(aut_word.begin(), aut_word.size()), base);
}

// --------------------------------------------------------------- Subgroup

Subgroup subgroup_closure(GroupPtr group, std::vector<Elem> gens) {
  const std::size_t n = group->order();
  for (auto g : gens)
    if (g >= n) fail(ErrorCode::NotASubgroupMember, "generator outside the group");
  Subgroup s;
  s.mask.assign(n, false);
  std::vector<Elem> members{group->identity()};
  s.mask[group->identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (auto g : gens) {
      Elem y = group->mul(members[i], g);
      if (!s.mask[y]) {
        s.mask[y] = true;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  s.parent = std::move(group);
  s.generators = std::move(gens);
  s.members = std::move(members);
  return s;
}

Subgroup subset_as_subgroup(GroupPtr group, std::vector<Elem> members) {
  Subgroup s;
  s.mask.assign(group->order(), false);
  for (auto m : members) {
    if (m >= group->order()) fail(ErrorCode::NotASubgroupMember, "member outside the group");
    s.mask[m] = true;
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  s.parent = std::move(group);
  s.generators = members;
  s.members = std::move(members);
  return s;
}

bool is_subgroup(const Group& group, std::span<const Elem> members) {
  std::vector<bool> in(group.order(), false);
  for (auto m : members) in[m] = true;
  if (members.empty() || !in[group.identity()]) return false;
  for (auto a : members)
    for (auto b : members)
      if (!in[group.mul(a, b)]) return false;
  return true;
}

std::string NormalityResult::describe(const Group& g) const {
  if (normal) return "normal";
  return "conjugate of " + g.format(element) + " by " + g.format(conjugator) + " is " + g.format(conjugate) +
         ", outside the subgroup";
}

NormalityResult check_normal(const Subgroup& sub) {
  const Group& g = *sub.parent;
  for (auto c : g.generators())
    for (auto x : sub.members) {
      Elem y = g.conj(x, c);
      if (!sub.contains(y)) return {false, c, x, y};
    }
  return {};
}

bool is_normal(const Subgroup& sub) { return check_normal(sub).normal; }

CosetTable right_cosets(const Subgroup& sub) {
  const Group& g = *sub.parent;
  const std::uint32_t unset = ~0u;
  CosetTable t;
  t.coset_of.assign(g.order(), unset);
  for (Elem h = 0; h < g.order(); ++h) {
    if (t.coset_of[h] != unset) continue;
    const auto id = static_cast<std::uint32_t>(t.representatives.size());
    t.representatives.push_back(h);
    for (auto x : sub.members) t.coset_of[g.mul(x, h)] = id;
  }
  return t;
}

TransitivityResult coset_action_transitive(const Subgroup& sub, std::span<const AffineAction> acting) {
  const Group& g = *sub.parent;
  CosetTable t = right_cosets(sub);
  TransitivityResult r;
  r.cosets = t.size();
  std::vector<bool> seen(t.size(), false);
  std::vector<std::uint32_t> orbit{t.coset_of[g.identity()]};
  seen[orbit[0]] = true;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    Elem h = t.representatives[orbit[i]];
    for (const auto& act : acting) {
      Elem image = g.mul(act.aut ? (*act.aut)(h) : h, act.translation);
      auto c = t.coset_of[image];
      if (!seen[c]) {
        seen[c] = true;
        orbit.push_back(c);
      }
    }
  }
  r.orbit_size = orbit.size();
  r.transitive = orbit.size() == t.size();
  for (std::size_t c = 0; c < t.size() && !r.transitive; ++c)
    if (!seen[c]) {
      r.unreached = t.representatives[c];
      break;
    }
  return r;
}

// ------------------------------------------------------------ fingerprint

Subgroup normal_closure(GroupPtr group, std::vector<Elem> gens) {
  Subgroup h = subgroup_closure(group, gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto c : group->generators()) {
      for (auto x : h.generators) {
        Elem y = group->conj(x, c);
        if (!h.contains(y)) {
          gens.push_back(y);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
    if (changed) h = subgroup_closure(group, gens);
  }
  return h;
}

Subgroup center(GroupPtr group) {
  std::vector<Elem> members;
  for (Elem x = 0; x < group->order(); ++x) {
    bool central = true;
    for (auto s : group->generators())
      if (!group->commute(x, s)) {
        central = false;
        break;
      }
    if (central) members.push_back(x);
  }
  return subset_as_subgroup(std::move(group), std::move(members));
}

Subgroup derived_subgroup(GroupPtr group) {
  std::vector<Elem> comms;
  const auto& gens = group->generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Elem c = group->commutator(gens[i], gens[j]);
      if (c != group->identity()) comms.push_back(c);
    }
  return normal_closure(std::move(group), std::move(comms));
}

namespace {
// Non-owning handle so fingerprint can take a plain reference.
GroupPtr borrow(const Group& g) { return GroupPtr(&g, [](const Group*) {}); }
}  // namespace

StructureReport fingerprint(const Group& group, std::span<const Subgroup> supplied) {
  StructureReport r;
  GroupPtr g = borrow(group);
  r.order = group.order();
  r.abelian = group.is_abelian();
  for (Elem x = 0; x < group.order(); ++x) {
    std::size_t o = group.element_order(x);
    ++r.order_histogram[o];
    r.exponent = std::lcm(r.exponent, o);
  }
  r.center_order = r.abelian ? r.order : center(g).order();
  r.derived_order = r.abelian ? 1 : derived_subgroup(g).order();
  for (auto p : prime_divisors(r.order)) {
    SylowInfo s{p, 1, std::nullopt};
    std::uint64_t n = r.order;
    while (n % p == 0) {
      n /= p;
      s.order *= p;
    }
    for (const auto& sub : supplied)
      if (sub.order() == s.order) s.normal = is_normal(sub);
    r.sylow.push_back(s);
  }
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size() && !r.noncommuting; ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!group.commute(gens[i], gens[j])) {
        r.noncommuting = std::make_pair(gens[i], gens[j]);
        break;
      }
  return r;
}

bool StructureReport::same_invariants(const StructureReport& o) const {
  if (order != o.order || abelian != o.abelian || exponent != o.exponent ||
      order_histogram != o.order_histogram || center_order != o.center_order ||
      derived_order != o.derived_order || sylow.size() != o.sylow.size())
    return false;
  for (std::size_t i = 0; i < sylow.size(); ++i)
    if (sylow[i].prime != o.sylow[i].prime || sylow[i].order != o.sylow[i].order ||
        sylow[i].normal != o.sylow[i].normal)
      return false;
  return true;
}

std::string StructureReport::to_string(const Group* g) const {
  std::ostringstream out;
  out << "order " << order << "\n";
  out << "abelian " << (abelian ? "yes" : "no") << "\n";
  out << "exponent " << exponent << "\n";
  out << "element orders";
  for (const auto& [o, c] : order_histogram) out << " " << o << ":" << c;
  out << "\n";
  out << "center order " << center_order << "\n";
  out << "derived subgroup order " << derived_order << "\n";
  for (const auto& s : sylow) {
    out << "sylow " << s.prime << " order " << s.order;
    if (s.normal) out << (*s.normal ? " normal" : " not normal");
    out << "\n";
  }
  if (noncommuting && g)
    out << "noncommuting pair " << g->format(noncommuting->first) << " " << g->format(noncommuting->second)
        << "\n";
  return out.str();
}

}  // namespace dset
