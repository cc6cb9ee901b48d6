#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dset/design.hpp"
#include "dset/galois_ring.hpp"
#include "dset/group.hpp"
#include "dset/transfer.hpp"

namespace dset {

struct Claim {
  std::string name;
  bool holds = false;
  std::string detail;
  bool applicable = true;
};

using ClaimCheck = std::function<std::vector<Claim>(const TransferReport&)>;

// A family's output: the base design, the transfer instance when the family
// has one, a construction log, and the structural claims made about the
// transferred group.
struct Construction {
  std::string family;
  std::string params;
  std::optional<DesignSet> base;
  std::optional<TransferInstance> instance;
  std::vector<std::string> log;
  ClaimCheck claims;

  const DesignSet& design() const { return *base; }
};

// ---- generic operations

TransferInstance dihedral_converse(const DesignSet& d, const Subgroup& x);
// D_1 u D_2 g with D_1, D_2 inside h is sent to D_1 u D_2 k in the target,
// pushing h forward along the generator images.
DesignSet dillon_forward(const DesignSet& dihedral_design, const Subgroup& h, Elem g, GroupPtr target,
                         const std::vector<Elem>& h_gen_images, Elem k);
DesignSet corollary_chain(const DesignSet& d, const Subgroup& x, GroupPtr target,
                          const std::vector<Elem>& x_gen_images, Elem k);

DesignSet pcp_pds(unsigned p, unsigned n, unsigned s);
TransferInstance pgroup_multiplier_transfer(unsigned p, unsigned n, const DesignSet& base_pds,
                                            bool add_y_power = false);

// Hyperplane/K-element pairs in E x K; assignment[i] is the K index for H_i.
DesignSet mcfarland_base(unsigned q, unsigned s, std::vector<std::uint32_t> k_orders,
                         std::vector<Elem> assignment = {});
DesignSet rds_base(unsigned d, std::vector<std::string>* log = nullptr);

// ---- families with claims

Construction fixture_16_6_2();                 // C4 x C2 x C2, the (16,6,2) set
Construction chain_16_6_2();                   // its image S in C8 x C2
Construction pgroup_family(unsigned p, unsigned n, unsigned s, unsigned variant = 1);
Construction spence(unsigned d);
Construction denniston_even(unsigned m, unsigned r);
Construction denniston_gr4(unsigned t, unsigned k);
Construction denniston_odd(unsigned p, unsigned t);
Construction mcfarland_even(unsigned d, unsigned variant);
Construction mcfarland_odd(unsigned q, unsigned s);
Construction rds_transfer(unsigned d, unsigned variant);

// The automorphisms psi_0..psi_{t-1} of C4^t x C2^t and whether each fixes D.
struct Gr4Data {
  RingPtr ring;
  std::shared_ptr<const AbelianGroup> group;
  std::vector<Elem> design;
  std::vector<GroupAutomorphism> psi;
  FiniteField::Code w = 0;
  Elem element(GaloisRing::Code r, FiniteField::Code s) const;
};
Gr4Data denniston_gr4_data(unsigned t);

struct FamilyParams {
  std::optional<unsigned> p, q, d, m, n, r, s, t, k, variant;
};

std::vector<std::string> family_names();
Construction build_family(const std::string& name, const FamilyParams& params);

// Evaluates the construction's claims against a transfer report.
std::vector<Claim> evaluate_claims(const Construction& c, const TransferReport& report);

}  // namespace dset
