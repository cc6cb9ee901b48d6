/**
 * @file group.hpp
 * @brief Explicit finite groups on dense element indices.
 *
 * Every group enumerates its elements as 0..order()-1 with 0 the identity.
 * Automorphisms act on the right: x^{ab} = (x^a)^b, and extension elements
 * multiply as (a1,g1)(a2,g2) = (a1 a2, g1^{a2} g2).
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dset {

using Elem = std::uint32_t;

class Group {
 public:
  virtual ~Group() = default;

  virtual std::size_t order() const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem inv(Elem a) const = 0;
  // Distinguished generators; automorphisms are determined by their images.
  virtual const std::vector<Elem>& generators() const = 0;
  // Coordinate tuple used for display and serialization.
  virtual std::vector<std::int64_t> coords(Elem a) const = 0;
  virtual std::string describe() const = 0;

  Elem identity() const { return 0; }
  Elem pow(Elem a, std::int64_t e) const;
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }  // g^-1 x g
  Elem commutator(Elem a, Elem b) const;                              // a^-1 b^-1 a b
  std::size_t element_order(Elem a) const;
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }
  bool is_abelian() const;
  std::string format(Elem a) const;
};

using GroupPtr = std::shared_ptr<const Group>;

// Direct product of cyclic groups. Index = sum exps[i] * stride[i], with the
// first factor varying fastest.
class AbelianGroup : public Group {
 public:
  explicit AbelianGroup(std::vector<std::uint32_t> orders);

  std::size_t order() const override { return order_; }
  Elem mul(Elem a, Elem b) const override;
  Elem inv(Elem a) const override;
  const std::vector<Elem>& generators() const override { return gens_; }
  std::vector<std::int64_t> coords(Elem a) const override;
  std::string describe() const override;

  const std::vector<std::uint32_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  Elem unit(std::size_t i) const { return gens_[i]; }
  Elem from_exps(std::span<const std::int64_t> exps) const;
  Elem from_exps(std::initializer_list<std::int64_t> exps) const;
  std::uint32_t exp(Elem a, std::size_t i) const { return (a / strides_[i]) % orders_[i]; }
  std::size_t stride(std::size_t i) const { return strides_[i]; }

 private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::size_t> strides_;
  std::vector<Elem> gens_;
  std::size_t order_;
};

std::shared_ptr<const AbelianGroup> abelian_make(std::vector<std::uint32_t> orders);

class GroupAutomorphism {
 public:
  const GroupPtr& group() const { return group_; }
  Elem operator()(Elem x) const { return perm_[x]; }
  const std::vector<Elem>& perm() const { return perm_; }
  std::vector<Elem> generator_images() const;

  // x -> next(this(x)): "this then next".
  GroupAutomorphism then(const GroupAutomorphism& next) const;
  GroupAutomorphism inverse() const;
  std::size_t order() const;
  bool is_identity() const;
  bool fixes_set(std::span<const Elem> members) const;

 private:
  GroupAutomorphism(GroupPtr g, std::vector<Elem> perm) : group_(std::move(g)), perm_(std::move(perm)) {}
  friend GroupAutomorphism certify_automorphism(GroupPtr, std::vector<Elem>);
  GroupPtr group_;
  std::vector<Elem> perm_;
};

// Certification is exact at every order: bijectivity, then f(xs) = f(x)f(s)
// for every element x and distinguished generator s.
GroupAutomorphism certify_automorphism(GroupPtr group, std::vector<Elem> perm);
// Extends generator images along the Cayley graph, then certifies.
GroupAutomorphism aut_from_images(GroupPtr group, std::span<const Elem> images);
GroupAutomorphism identity_automorphism(GroupPtr group);

// Subgroup of Aut(base) enumerated from generators. Index 0 is the identity.
class AutGroup {
 public:
  AutGroup(GroupPtr base, std::vector<GroupAutomorphism> gens, std::size_t cap = 4096);

  std::size_t size() const { return elems_.size(); }
  const GroupAutomorphism& at(std::size_t i) const { return elems_[i]; }
  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  std::size_t inv(std::size_t i) const { return inverse_[i]; }
  std::size_t generator_index(std::size_t k) const { return gen_index_[k]; }
  std::size_t num_generators() const { return gen_index_.size(); }
  const std::vector<GroupAutomorphism>& generators() const { return gens_; }
  // Composite of the word's generators, left to right.
  std::size_t index_of_word(std::span<const std::size_t> word) const;

 private:
  std::vector<GroupAutomorphism> gens_;
  std::vector<GroupAutomorphism> elems_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> gen_index_;
};

struct CandidateGenerator {
  std::vector<std::size_t> aut_word;  // indices into the aut generators
  Elem base;
};

// The subgroup of A |x G generated by the candidate generators.
class ExtensionGroup : public Group {
 public:
  // Closure cap 0 means 2 * |base|.
  static std::shared_ptr<const ExtensionGroup> closure(GroupPtr base,
                                                       std::vector<GroupAutomorphism> aut_gens,
                                                       std::vector<CandidateGenerator> gens,
                                                       std::size_t cap = 0);

  std::size_t order() const override { return elems_.size(); }
  Elem mul(Elem a, Elem b) const override;
  Elem inv(Elem a) const override;
  const std::vector<Elem>& generators() const override { return gen_elems_; }
  std::vector<std::int64_t> coords(Elem a) const override;
  std::string describe() const override;

  const Group& base() const { return *base_; }
  const GroupPtr& base_ptr() const { return base_; }
  const AutGroup& auts() const { return auts_; }
  const std::vector<CandidateGenerator>& candidate_generators() const { return cand_; }
  std::size_t aut_part(Elem a) const { return elems_[a].first; }
  Elem base_part(Elem a) const { return elems_[a].second; }
  std::optional<Elem> find(std::size_t aut_index, Elem base) const;
  // Element (word, base); throws NotASubgroupMember when absent.
  Elem element(std::span<const std::size_t> aut_word, Elem base) const;
  Elem element(std::initializer_list<std::size_t> aut_word, Elem base) const;

 private:
  ExtensionGroup(GroupPtr base, AutGroup auts, std::vector<CandidateGenerator> cand);
  Elem combine(std::size_t a1, Elem g1, std::size_t a2, Elem g2, std::size_t& a_out) const;
  GroupPtr base_;
  AutGroup auts_;
  std::vector<CandidateGenerator> cand_;
  std::vector<std::pair<std::size_t, Elem>> elems_;
  std::vector<std::int32_t> index_;  // aut * |base| + base -> element or -1
  std::vector<Elem> gen_elems_;
};

struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> generators;
  std::vector<Elem> members;  // sorted
  std::vector<bool> mask;

  std::size_t order() const { return members.size(); }
  bool contains(Elem x) const { return x < mask.size() && mask[x]; }
};

Subgroup subgroup_closure(GroupPtr group, std::vector<Elem> gens);
// Treats an arbitrary element set as a would-be subgroup; members are not
// checked for closure. Used to test candidate sets.
Subgroup subset_as_subgroup(GroupPtr group, std::vector<Elem> members);
bool is_subgroup(const Group& group, std::span<const Elem> members);

struct NormalityResult {
  bool normal = true;
  // g^-1 x g lands outside the subgroup.
  Elem conjugator = 0, element = 0, conjugate = 0;
  std::string describe(const Group& g) const;
};
// Tests g^-1 x g for g over the parent's generators and x over the members.
NormalityResult check_normal(const Subgroup& sub);
bool is_normal(const Subgroup& sub);

struct CosetTable {
  std::vector<std::uint32_t> coset_of;  // element -> coset id
  std::vector<Elem> representatives;    // coset id -> smallest member
  std::size_t size() const { return representatives.size(); }
};
// Right cosets Xh.
CosetTable right_cosets(const Subgroup& sub);

// An element (phi, g) acting on right cosets by Xh -> X h^phi g.
struct AffineAction {
  const GroupAutomorphism* aut;  // null means identity
  Elem translation;
};

struct TransitivityResult {
  bool transitive = false;
  std::size_t orbit_size = 0;
  std::size_t cosets = 0;
  std::optional<Elem> unreached;  // representative of a coset outside the orbit
};
TransitivityResult coset_action_transitive(const Subgroup& sub, std::span<const AffineAction> acting);

struct SylowInfo {
  std::uint64_t prime = 0;
  std::uint64_t order = 0;          // p-part of |G|
  std::optional<bool> normal;       // set when a subgroup of that order was supplied
};

struct StructureReport {
  std::size_t order = 0;
  bool abelian = true;
  std::size_t exponent = 1;
  std::map<std::size_t, std::size_t> order_histogram;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  std::vector<SylowInfo> sylow;
  std::optional<std::pair<Elem, Elem>> noncommuting;  // labeling-dependent

  // Compares the isomorphism invariants only.
  bool same_invariants(const StructureReport& o) const;
  std::string to_string(const Group* g = nullptr) const;
};

StructureReport fingerprint(const Group& group, std::span<const Subgroup> supplied = {});
Subgroup center(GroupPtr group);
Subgroup derived_subgroup(GroupPtr group);
// Smallest normal subgroup containing the given elements.
Subgroup normal_closure(GroupPtr group, std::vector<Elem> gens);

}  // namespace dset
