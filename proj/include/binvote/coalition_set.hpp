#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "binvote/coalition.hpp"

namespace binvote {

struct MwcsReport;

/// A canonical collection of non-empty coalitions over a common population.
/// Members are kept sorted by (cardinality, numeric mask) with duplicates
/// collapsed, so equal sets compare equal element-for-element and all
/// derived output is byte-stable.
///
/// A set carries a `validated_mwcs` flag that is only ever set by
/// validate_mwcs() after checking minimality and Moulin's property; rule
/// evaluation and the transformation algorithms require the flag.
class CoalitionSet {
 public:
  CoalitionSet(int n, std::vector<Coalition> members) : n_(n) {
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("population size must be in 1..64");
    for (const Coalition& c : members) {
      if (c.n() != n)
        throw std::invalid_argument("coalition population mismatch");
      if (c.is_empty())
        throw std::invalid_argument("coalition set members must be non-empty");
    }
    std::sort(members.begin(), members.end(), CanonicalCoalitionLess{});
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
  }

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Coalition>& members() const { return members_; }

  bool contains(const Coalition& c) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), c,
                               CanonicalCoalitionLess{});
    return it != members_.end() && *it == c;
  }

  /// True when some member is a subset of `s` (i.e. `s` is winning).
  bool has_member_within(const Coalition& s) const {
    for (const Coalition& c : members_)
      if (c.subset_of(s)) return true;
    return false;
  }

  /// True when `s` intersects every member.
  bool meets_all_members(const Coalition& s) const {
    for (const Coalition& c : members_)
      if (!c.intersects(s)) return false;
    return true;
  }

  CoalitionSet with_members_added(const std::vector<Coalition>& extra) const {
    std::vector<Coalition> m = members_;
    m.insert(m.end(), extra.begin(), extra.end());
    return CoalitionSet(n_, std::move(m));
  }

  CoalitionSet with_members_removed(const std::vector<Coalition>& gone) const {
    std::vector<Coalition> m;
    for (const Coalition& c : members_)
      if (std::find(gone.begin(), gone.end(), c) == gone.end()) m.push_back(c);
    return CoalitionSet(n_, std::move(m));
  }

  bool operator==(const CoalitionSet& o) const {
    return n_ == o.n_ && members_ == o.members_;
  }

  bool validated_mwcs() const { return validated_; }

  /// Checks P1 + P2 and stamps `validated_mwcs` on success; defined after
  /// MwcsReport below.
  MwcsReport validate(int exhaustive_bound = kDefaultExhaustiveBound);

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ", ";
      s += members_[i].to_string();
    }
    return s + "}";
  }

 private:
  int n_;
  std::vector<Coalition> members_;
  bool validated_ = false;
};

/// Builds a canonical coalition set from 1-based voter index lists.
inline CoalitionSet make_coalition_set(int n,
                                       const std::vector<std::vector<int>>& raw) {
  if (n < 1 || n > kMaxVoters)
    throw std::invalid_argument("population size must be in 1..64");
  std::vector<Coalition> members;
  members.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].empty())
      throw std::invalid_argument("coalition " + std::to_string(i) +
                                  " has an empty member list");
    members.push_back(Coalition::from_voters(n, raw[i]));
  }
  return CoalitionSet(n, std::move(members));
}

/// P1 violation: `inner` is a proper subset of `outer`.
struct MinimalityViolation {
  Coalition inner;
  Coalition outer;
};

/// Returns the first (in canonical pair order) proper containment between
/// members, or nullopt when the set is minimal.
inline std::optional<MinimalityViolation> check_minimality(const CoalitionSet& cs) {
  const auto& m = cs.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i].proper_subset_of(m[j]))
        return MinimalityViolation{m[i], m[j]};
  return std::nullopt;
}

enum class MoulinMethod { direct, dual };

/// Exhaustive check of Moulin's property P2 over all 2^n voter subsets.
///
/// `direct` tests, for every subset C, the biconditional
///   [C contains some member]  <=>  [C intersects every member];
/// `dual` tests the equivalent self-duality: exactly one of C and its
/// complement contains a member.  Returns the first failing subset in
/// ascending mask order, or nullopt on pass.
inline std::optional<Coalition> check_moulin_property(
    const CoalitionSet& cs, MoulinMethod method = MoulinMethod::direct,
    int exhaustive_bound = kDefaultExhaustiveBound) {
  if (cs.empty())
    throw std::invalid_argument("Moulin's property is undefined for an empty family");
  const int n = cs.n();
  if (n > exhaustive_bound)
    throw BoundError("population " + std::to_string(n) +
                     " exceeds exhaustive P2 bound " + std::to_string(exhaustive_bound));
  const std::uint64_t full = full_mask(n);
  for (std::uint64_t m = 0; m <= full; ++m) {
    const Coalition c(n, m);
    if (method == MoulinMethod::direct) {
      if (cs.has_member_within(c) != cs.meets_all_members(c)) return c;
    } else {
      const bool here = cs.has_member_within(c);
      const bool there = cs.has_member_within(c.complement());
      if (here == there) return c;
    }
    if (m == full) break;  // n == 64 would wrap, though P2 never scans there
  }
  return std::nullopt;
}

struct MwcsReport {
  bool empty_family = false;
  std::optional<MinimalityViolation> p1_violation;
  std::optional<Coalition> p2_counterexample;

  bool ok() const {
    return !empty_family && !p1_violation.has_value() && !p2_counterexample.has_value();
  }
};

inline MwcsReport CoalitionSet::validate(int exhaustive_bound) {
  MwcsReport report;
  if (empty()) {
    report.empty_family = true;
    return report;
  }
  report.p1_violation = check_minimality(*this);
  report.p2_counterexample =
      check_moulin_property(*this, MoulinMethod::direct, exhaustive_bound);
  if (report.ok()) validated_ = true;
  return report;
}

/// Checks Definition P1 + P2 and stamps the set's `validated_mwcs` flag on
/// success.  Violations are reported, never thrown.
inline MwcsReport validate_mwcs(CoalitionSet& cs,
                                int exhaustive_bound = kDefaultExhaustiveBound) {
  return cs.validate(exhaustive_bound);
}

}  // namespace binvote
