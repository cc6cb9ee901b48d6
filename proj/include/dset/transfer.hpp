#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dset/design.hpp"
#include "dset/group.hpp"

namespace dset {

struct TransferInstance {
  DesignSet design;
  std::vector<GroupAutomorphism> aut_gens;
  std::vector<CandidateGenerator> candidate_gens;
  std::size_t closure_cap = 0;  // 0 means 2 * |G|

  const GroupPtr& source_group() const { return design.group(); }
};

// Rejects with DesignNotFixed any automorphism moving D (or R, or U).
TransferInstance make_transfer_instance(DesignSet design, std::vector<GroupAutomorphism> aut_gens,
                                        std::vector<CandidateGenerator> candidate_gens,
                                        std::size_t closure_cap = 0);

// Generators (id, e_i) for every distinguished generator: the identity transfer.
std::vector<CandidateGenerator> identity_generators(const Group& g);

struct ConditionResult {
  bool holds = false;
  std::string witness;  // empty when the condition holds
};

struct TransferReport {
  std::shared_ptr<const ExtensionGroup> new_group;  // null after ClosureOverflow
  std::optional<Subgroup> x_subgroup;
  ConditionResult cond_i, cond_ii, cond_iii;
  std::optional<DesignSet> new_design;
  std::optional<Subgroup> new_forbidden;
  std::optional<Verification> source_verification;
  std::optional<Verification> new_verification;

  bool all_hold() const { return cond_i.holds && cond_ii.holds && cond_iii.holds; }
  std::string conditions_text() const;
};

TransferReport check_conditions(const TransferInstance& inst);
// Both throw ConditionsFailed when a condition fails and re-verify the output.
TransferReport transfer_pds(const TransferInstance& inst);
TransferReport transfer_rds(const TransferInstance& inst);
TransferReport transfer(const TransferInstance& inst);

}  // namespace dset
