#include "dset/transfer.hpp"

#include <sstream>

#include "dset/error.hpp"

namespace dset {

TransferInstance make_transfer_instance(DesignSet design, std::vector<GroupAutomorphism> aut_gens,
                                        std::vector<CandidateGenerator> candidate_gens,
                                        std::size_t closure_cap) {
  const Group& g = *design.group();
  for (std::size_t i = 0; i < aut_gens.size(); ++i) {
    const auto& phi = aut_gens[i];
    if (phi.group()->order() != g.order())
      fail(ErrorCode::InvalidArgument, "automorphism " + std::to_string(i) + " acts on a different group");
    for (auto d : design.members())
      if (!design.contains(phi(d)))
        fail(ErrorCode::DesignNotFixed, "automorphism " + std::to_string(i) + " maps member " + g.format(d) +
                                            " to non-member " + g.format(phi(d)));
    if (design.forbidden())
      for (auto u : design.forbidden()->members)
        if (!design.forbidden()->contains(phi(u)))
          fail(ErrorCode::DesignNotFixed, "automorphism " + std::to_string(i) + " moves the forbidden subgroup");
  }
  return TransferInstance{std::move(design), std::move(aut_gens), std::move(candidate_gens), closure_cap};
}

std::vector<CandidateGenerator> identity_generators(const Group& g) {
  std::vector<CandidateGenerator> out;
  for (auto s : g.generators()) out.push_back({{}, s});
  return out;
}

std::string TransferReport::conditions_text() const {
  std::ostringstream out;
  auto line = [&](const char* name, const ConditionResult& c) {
    out << name << " " << (c.holds ? "true" : "false");
    if (!c.holds) out << " (" << c.witness << ")";
    out << "\n";
  };
  line("cond_i", cond_i);
  line("cond_ii", cond_ii);
  line("cond_iii", cond_iii);
  return out.str();
}

TransferReport check_conditions(const TransferInstance& inst) {
  TransferReport r;
  const GroupPtr& base = inst.source_group();
  const Group& g = *base;
  try {
    r.new_group = ExtensionGroup::closure(base, inst.aut_gens, inst.candidate_gens, inst.closure_cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ClosureOverflow) throw;
    r.cond_i = {false, e.what()};
    r.cond_ii = {false, "not evaluated"};
    r.cond_iii = {false, "not evaluated"};
    return r;
  }
  const ExtensionGroup& ext = *r.new_group;

  r.cond_i.holds = ext.order() == g.order();
  if (!r.cond_i.holds)
    r.cond_i.witness = "|closure| = " + std::to_string(ext.order()) + " but |G| = " + std::to_string(g.order());

  // X = {g : (id, g) in closure}.
  std::vector<Elem> xs;
  for (Elem e = 0; e < ext.order(); ++e)
    if (ext.aut_part(e) == 0) xs.push_back(ext.base_part(e));
  r.x_subgroup = subset_as_subgroup(base, std::move(xs));
  const Subgroup& x = *r.x_subgroup;

  NormalityResult in_g = check_normal(x);
  r.cond_ii.holds = in_g.normal;
  if (!in_g.normal) r.cond_ii.witness = "X not normal in G: " + in_g.describe(g);
  for (std::size_t k = 0; k < ext.generators().size() && r.cond_ii.holds; ++k) {
    Elem c = ext.generators()[k];
    for (auto m : x.members) {
      Elem y = ext.conj(*ext.find(0, m), c);
      if (ext.aut_part(y) != 0 || !x.contains(ext.base_part(y))) {
        r.cond_ii.holds = false;
        r.cond_ii.witness = "1 x X not normal in the closure: conjugate of " + ext.format(*ext.find(0, m)) +
                            " by " + ext.format(c) + " is " + ext.format(y);
        break;
      }
    }
  }

  std::vector<AffineAction> acting;
  for (auto c : ext.generators()) acting.push_back({&ext.auts().at(ext.aut_part(c)), ext.base_part(c)});
  TransitivityResult tr = coset_action_transitive(x, acting);
  r.cond_iii.holds = tr.transitive;
  if (!tr.transitive)
    r.cond_iii.witness = "orbit of X has " + std::to_string(tr.orbit_size) + " of " + std::to_string(tr.cosets) +
                         " cosets; coset X" + g.format(*tr.unreached) + " unreached";
  return r;
}

namespace {

TransferReport run_transfer(const TransferInstance& inst, bool relative) {
  TransferReport r = check_conditions(inst);
  if (!r.all_hold()) fail(ErrorCode::ConditionsFailed, "\n" + r.conditions_text());
  const DesignSet& d = inst.design;
  r.source_verification = verify(d);
  const ExtensionGroup& ext = *r.new_group;

  std::vector<Elem> members;
  std::vector<Elem> forbidden;
  for (Elem e = 0; e < ext.order(); ++e) {
    Elem b = ext.base_part(e);
    if (d.contains(b)) members.push_back(e);
    if (relative && d.forbidden()->contains(b)) forbidden.push_back(e);
  }
  if (members.size() != d.size())
    fail(ErrorCode::ParameterMismatch, "projection onto D is not a bijection");

  std::optional<Subgroup> u;
  if (relative) {
    if (!is_subgroup(ext, forbidden) || forbidden.size() != d.forbidden()->order())
      fail(ErrorCode::ForbiddenNotSubgroup, "lifted forbidden set is not a subgroup of order |U|");
    u = subset_as_subgroup(r.new_group, forbidden);
    r.new_forbidden = u;
  }
  r.new_design.emplace(r.new_group, std::move(members), r.source_verification->measured, u);
  r.new_verification = verify(*r.new_design);
  if (!(r.new_verification->measured == r.source_verification->measured))
    fail(ErrorCode::ParameterMismatch, "transferred parameters differ from the source");
  return r;
}

}  // namespace

TransferReport transfer_pds(const TransferInstance& inst) {
  if (inst.design.kind() == DesignKind::RDS) fail(ErrorCode::InvalidArgument, "transfer_pds on an RDS");
  return run_transfer(inst, false);
}

TransferReport transfer_rds(const TransferInstance& inst) {
  if (inst.design.kind() != DesignKind::RDS) fail(ErrorCode::InvalidArgument, "transfer_rds needs an RDS");
  return run_transfer(inst, true);
}

TransferReport transfer(const TransferInstance& inst) {
  return inst.design.kind() == DesignKind::RDS ? transfer_rds(inst) : transfer_pds(inst);
}

}  // namespace dset
