#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dset/group.hpp"

namespace dset {

enum class DesignKind { DS, PDS, RDS };

const char* kind_name(DesignKind k);
DesignKind parse_kind(const std::string& s);

// DS (v,k,lambda); PDS (v,k,lambda,mu); RDS (m,u,k,lambda).
struct DesignParams {
  DesignKind kind = DesignKind::DS;
  std::vector<std::int64_t> values;

  static DesignParams ds(std::int64_t v, std::int64_t k, std::int64_t lambda);
  static DesignParams pds(std::int64_t v, std::int64_t k, std::int64_t lambda, std::int64_t mu);
  static DesignParams rds(std::int64_t m, std::int64_t u, std::int64_t k, std::int64_t lambda);

  std::int64_t k() const;
  bool operator==(const DesignParams& o) const { return kind == o.kind && values == o.values; }
  std::string to_string() const;
};

class DesignSet {
 public:
  // Members are stored sorted; duplicates or out-of-range members and a
  // size differing from k are rejected with InvalidDesign.
  DesignSet(GroupPtr group, std::vector<Elem> members, DesignParams claimed,
            std::optional<Subgroup> forbidden = std::nullopt);

  const GroupPtr& group() const { return group_; }
  const std::vector<Elem>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  DesignKind kind() const { return claimed_.kind; }
  const DesignParams& claimed() const { return claimed_; }
  const std::optional<Subgroup>& forbidden() const { return forbidden_; }
  bool contains(Elem x) const { return mask_[x]; }

 private:
  GroupPtr group_;
  std::vector<Elem> members_;
  std::vector<bool> mask_;
  DesignParams claimed_;
  std::optional<Subgroup> forbidden_;
};

struct DifferenceProfile {
  std::vector<std::uint32_t> counts;  // indexed by element
  std::uint64_t total() const;
};

DifferenceProfile difference_profile(const Group& group, std::span<const Elem> members, bool include_equal);
DifferenceProfile difference_profile(const DesignSet& d, bool include_equal);

struct Verification {
  DesignParams measured;
  bool regular = false;     // 1 not in D and D = D^(-1)
  bool reversible = false;  // D = D^(-1)
  bool contains_identity = false;
  std::string summary() const;
};

bool is_inverse_closed(const Group& group, std::span<const Elem> members);

Verification verify_ds(const DesignSet& d);
Verification verify_pds(const DesignSet& d, bool require_regular = false);
Verification verify_rds(const DesignSet& d);
Verification verify(const DesignSet& d);

// {d^m : d in D} == D for abelian groups; NotCoprime unless gcd(m, |G|) = 1.
bool multiplier_check(const DesignSet& d, std::int64_t m);

struct SrgParams {
  std::int64_t n = 0, k = 0, lambda = 0, mu = 0;
  bool degenerate = false;  // complete or empty graph, one of lambda/mu vacuous
  bool exhaustive = true;   // every vertex pair inspected
  std::string to_string() const;
};

struct SrgOptions {
  // Graphs up to this many vertices check all pairs; larger ones check all
  // pairs through `sample_vertices` evenly spread base vertices.
  std::size_t full_threshold = 1024;
  std::size_t sample_vertices = 8;
};

// Undirected Cayley graph x ~ d x; throws NotSRG with a witness pair.
SrgParams cayley_srg_check(const DesignSet& d, SrgOptions opts = {});

// Image of the member set under an automorphism.
std::vector<Elem> apply_to_set(const GroupAutomorphism& phi, std::span<const Elem> members);

}  // namespace dset
