#include "dset/design.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "dset/error.hpp"

namespace dset {

const char* kind_name(DesignKind k) {
  switch (k) {
    case DesignKind::DS: return "DS";
    case DesignKind::PDS: return "PDS";
    case DesignKind::RDS: return "RDS";
  }
  return "?";
}

DesignKind parse_kind(const std::string& s) {
  if (s == "DS") return DesignKind::DS;
  if (s == "PDS") return DesignKind::PDS;
  if (s == "RDS") return DesignKind::RDS;
  fail(ErrorCode::ParseError, "unknown design kind '" + s + "'");
}

DesignParams DesignParams::ds(std::int64_t v, std::int64_t k, std::int64_t lambda) {
  return {DesignKind::DS, {v, k, lambda}};
}
DesignParams DesignParams::pds(std::int64_t v, std::int64_t k, std::int64_t lambda, std::int64_t mu) {
  return {DesignKind::PDS, {v, k, lambda, mu}};
}
DesignParams DesignParams::rds(std::int64_t m, std::int64_t u, std::int64_t k, std::int64_t lambda) {
  return {DesignKind::RDS, {m, u, k, lambda}};
}

std::int64_t DesignParams::k() const { return kind == DesignKind::RDS ? values.at(2) : values.at(1); }

std::string DesignParams::to_string() const {
  std::ostringstream out;
  out << kind_name(kind) << "(";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  out << ")";
  return out.str();
}

DesignSet::DesignSet(GroupPtr group, std::vector<Elem> members, DesignParams claimed,
                     std::optional<Subgroup> forbidden)
    : group_(std::move(group)), members_(std::move(members)), claimed_(std::move(claimed)),
      forbidden_(std::move(forbidden)) {
  const std::size_t expected = claimed_.kind == DesignKind::DS ? 3 : 4;
  if (claimed_.values.size() != expected)
    fail(ErrorCode::InvalidDesign, "parameter tuple has wrong length for " + std::string(kind_name(claimed_.kind)));
  mask_.assign(group_->order(), false);
  for (auto m : members_) {
    if (m >= group_->order()) fail(ErrorCode::InvalidDesign, "member index " + std::to_string(m) + " outside the group");
    if (mask_[m]) fail(ErrorCode::InvalidDesign, "member " + group_->format(m) + " listed twice");
    mask_[m] = true;
  }
  std::sort(members_.begin(), members_.end());
  if (static_cast<std::int64_t>(members_.size()) != claimed_.k())
    fail(ErrorCode::InvalidDesign, "design has " + std::to_string(members_.size()) + " members but k = " +
                                       std::to_string(claimed_.k()));
  if (claimed_.kind == DesignKind::RDS) {
    if (!forbidden_) fail(ErrorCode::InvalidDesign, "relative difference set needs a forbidden subgroup");
    if (static_cast<std::int64_t>(forbidden_->order()) != claimed_.values[1])
      fail(ErrorCode::InvalidDesign, "forbidden subgroup order differs from u");
  }
}

std::uint64_t DifferenceProfile::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

DifferenceProfile difference_profile(const Group& group, std::span<const Elem> members, bool include_equal) {
  DifferenceProfile p;
  p.counts.assign(group.order(), 0);
  for (auto d2 : members) {
    Elem i2 = group.inv(d2);
    for (auto d1 : members) {
      if (d1 == d2 && !include_equal) continue;
      ++p.counts[group.mul(d1, i2)];
    }
  }
  return p;
}

DifferenceProfile difference_profile(const DesignSet& d, bool include_equal) {
  return difference_profile(*d.group(), d.members(), include_equal);
}

bool is_inverse_closed(const Group& group, std::span<const Elem> members) {
  std::vector<bool> in(group.order(), false);
  for (auto m : members) in[m] = true;
  for (auto m : members)
    if (!in[group.inv(m)]) return false;
  return true;
}

std::string Verification::summary() const {
  std::ostringstream out;
  out << measured.to_string() << " OK";
  switch (measured.kind) {
    case DesignKind::DS: out << ", reversible: " << (reversible ? "true" : "false"); break;
    case DesignKind::PDS: out << ", regular: " << (regular ? "true" : "false"); break;
    case DesignKind::RDS: out << ", forbidden subgroup order " << measured.values[1]; break;
  }
  return out.str();
}

namespace {

struct Offender {
  Elem element;
  std::int64_t expected, actual;
};

[[noreturn]] void report_mismatch(const DesignSet& d, const std::vector<Offender>& bad, std::size_t total) {
  std::ostringstream out;
  out << "claimed " << d.claimed().to_string() << " fails at " << total << " element(s):";
  for (const auto& o : bad)
    out << " " << d.group()->format(o.element) << " expected " << o.expected << " got " << o.actual << ";";
  fail(ErrorCode::ParameterMismatch, out.str());
}

template <typename Expect>
void check_counts(const DesignSet& d, const DifferenceProfile& prof, Expect expect) {
  std::vector<Offender> bad;
  std::size_t total = 0;
  for (Elem g = 0; g < prof.counts.size(); ++g) {
    if (g == d.group()->identity()) continue;
    std::int64_t want = expect(g);
    if (prof.counts[g] != want) {
      ++total;
      if (bad.size() < 3) bad.push_back({g, want, prof.counts[g]});
    }
  }
  if (total) report_mismatch(d, bad, total);
}

Verification base_flags(const DesignSet& d) {
  Verification v;
  v.measured = d.claimed();
  v.contains_identity = d.contains(d.group()->identity());
  v.reversible = is_inverse_closed(*d.group(), d.members());
  v.regular = v.reversible && !v.contains_identity;
  return v;
}

void check_order(const DesignSet& d, std::int64_t v) {
  if (static_cast<std::int64_t>(d.group()->order()) != v)
    fail(ErrorCode::ParameterMismatch, "claimed " + d.claimed().to_string() + " but the group has order " +
                                           std::to_string(d.group()->order()));
}

}  // namespace

Verification verify_ds(const DesignSet& d) {
  if (d.kind() != DesignKind::DS) fail(ErrorCode::InvalidArgument, "verify_ds on a non-DS design");
  check_order(d, d.claimed().values[0]);
  const std::int64_t lambda = d.claimed().values[2];
  check_counts(d, difference_profile(d, false), [&](Elem) { return lambda; });
  return base_flags(d);
}

Verification verify_pds(const DesignSet& d, bool require_regular) {
  if (d.kind() != DesignKind::PDS) fail(ErrorCode::InvalidArgument, "verify_pds on a non-PDS design");
  check_order(d, d.claimed().values[0]);
  const std::int64_t lambda = d.claimed().values[2], mu = d.claimed().values[3];
  check_counts(d, difference_profile(d, false), [&](Elem g) { return d.contains(g) ? lambda : mu; });
  Verification v = base_flags(d);
  if (require_regular) {
    if (v.contains_identity) fail(ErrorCode::NotRegular, "identity belongs to the set");
    if (!v.reversible) fail(ErrorCode::NotClosedUnderInverse, "set is not inverse-closed");
  }
  return v;
}

Verification verify_rds(const DesignSet& d) {
  if (d.kind() != DesignKind::RDS) fail(ErrorCode::InvalidArgument, "verify_rds on a non-RDS design");
  const Subgroup& u = *d.forbidden();
  if (!is_subgroup(*d.group(), u.members))
    fail(ErrorCode::ForbiddenNotSubgroup, "forbidden set is not a subgroup");
  const std::int64_t m = d.claimed().values[0], uo = d.claimed().values[1];
  if (static_cast<std::int64_t>(u.order()) != uo || static_cast<std::int64_t>(d.group()->order()) != m * uo)
    fail(ErrorCode::ParameterMismatch, "claimed " + d.claimed().to_string() + " inconsistent with |G| = " +
                                           std::to_string(d.group()->order()) + ", |U| = " +
                                           std::to_string(u.order()));
  const std::int64_t lambda = d.claimed().values[3];
  check_counts(d, difference_profile(d, false), [&](Elem g) { return u.contains(g) ? 0 : lambda; });
  return base_flags(d);
}

Verification verify(const DesignSet& d) {
  switch (d.kind()) {
    case DesignKind::DS: return verify_ds(d);
    case DesignKind::PDS: return verify_pds(d);
    case DesignKind::RDS: return verify_rds(d);
  }
  fail(ErrorCode::InvalidArgument, "unknown design kind");
}

bool multiplier_check(const DesignSet& d, std::int64_t m) {
  const Group& g = *d.group();
  if (!g.is_abelian()) fail(ErrorCode::InvalidArgument, "multiplier check needs an abelian group");
  const auto n = static_cast<std::int64_t>(g.order());
  if (std::gcd(m < 0 ? -m : m, n) != 1)
    fail(ErrorCode::NotCoprime, std::to_string(m) + " is not coprime to " + std::to_string(n));
  for (auto x : d.members())
    if (!d.contains(g.pow(x, m))) return false;
  return true;
}

std::string SrgParams::to_string() const {
  std::ostringstream out;
  out << "SRG(" << n << "," << k << "," << lambda << "," << mu << ")";
  if (degenerate) out << " degenerate";
  if (!exhaustive) out << " sampled";
  return out.str();
}

SrgParams cayley_srg_check(const DesignSet& d, SrgOptions opts) {
  const Group& g = *d.group();
  if (d.contains(g.identity())) fail(ErrorCode::NotRegular, "Cayley graph needs 1 outside the set");
  if (!is_inverse_closed(g, d.members())) fail(ErrorCode::NotClosedUnderInverse, "Cayley graph needs D = D^(-1)");
  const std::size_t n = g.order();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> adj(n * words, 0);
  auto row = [&](std::size_t x) { return adj.data() + x * words; };
  auto has = [&](std::size_t x, std::size_t y) { return (row(x)[y / 64] >> (y % 64)) & 1u; };
  for (Elem x = 0; x < n; ++x)
    for (auto s : d.members()) {
      Elem y = g.mul(s, x);
      row(x)[y / 64] |= std::uint64_t{1} << (y % 64);
    }

  SrgParams r;
  r.n = static_cast<std::int64_t>(n);
  r.k = static_cast<std::int64_t>(d.size());
  for (std::size_t x = 0; x < n; ++x) {
    std::int64_t deg = 0;
    for (std::size_t w = 0; w < words; ++w) deg += std::popcount(row(x)[w]);
    if (deg != r.k)
      fail(ErrorCode::NotSRG, "vertex " + g.format(static_cast<Elem>(x)) + " has degree " + std::to_string(deg));
    for (auto s : d.members()) {
      Elem y = g.mul(s, static_cast<Elem>(x));
      if (!has(y, x)) fail(ErrorCode::NotSRG, "adjacency not symmetric");
    }
  }

  std::vector<std::size_t> base;
  if (n <= opts.full_threshold) {
    base.resize(n);
    std::iota(base.begin(), base.end(), 0);
  } else {
    r.exhaustive = false;
    const std::size_t s = std::max<std::size_t>(opts.sample_vertices, 1);
    for (std::size_t i = 0; i < s; ++i) base.push_back(i * n / s);
  }

  std::optional<std::int64_t> lambda, mu;
  for (auto x : base) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      std::int64_t common = 0;
      for (std::size_t w = 0; w < words; ++w) common += std::popcount(row(x)[w] & row(y)[w]);
      std::optional<std::int64_t>& slot = has(x, y) ? lambda : mu;
      if (!slot) slot = common;
      if (*slot != common)
        fail(ErrorCode::NotSRG, "pair " + g.format(static_cast<Elem>(x)) + ", " + g.format(static_cast<Elem>(y)) +
                                    " has " + std::to_string(common) + " common neighbours, expected " +
                                    std::to_string(*slot));
    }
  }
  r.degenerate = !lambda || !mu;
  r.lambda = lambda.value_or(0);
  r.mu = mu.value_or(0);
  return r;
}

std::vector<Elem> apply_to_set(const GroupAutomorphism& phi, std::span<const Elem> members) {
  std::vector<Elem> out;
  out.reserve(members.size());
  for (auto m : members) out.push_back(phi(m));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dset
