#pragma once

#include <string>
#include <vector>

#include "binvote/coalition.hpp"

namespace binvote {

/// An ordered list (S_1,...,S_K) of voter subsets.  The container itself
/// only enforces a common population and K >= 1; the rule-level invariants
/// (non-empty, non-recurring, singleton backstop that appears nowhere else)
/// are checked by validate_sequence so that malformed inputs can be
/// reported rather than rejected at parse time.
class SubsetSequence {
 public:
  SubsetSequence(int n, std::vector<Coalition> sets) : n_(n), sets_(std::move(sets)) {
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("population size must be in 1..64");
    if (sets_.empty())
      throw std::invalid_argument("a subset sequence needs at least one set");
    for (const Coalition& s : sets_)
      if (s.n() != n) throw std::invalid_argument("coalition population mismatch");
  }

  static SubsetSequence from_lists(int n, const std::vector<std::vector<int>>& raw) {
    std::vector<Coalition> sets;
    sets.reserve(raw.size());
    for (const auto& voters : raw) sets.push_back(Coalition::from_voters(n, voters));
    return SubsetSequence(n, std::move(sets));
  }

  int n() const { return n_; }
  int length() const { return static_cast<int>(sets_.size()); }
  const std::vector<Coalition>& sets() const { return sets_; }
  /// 1-based accessor matching the S_k notation used in traces and reports.
  const Coalition& set_at(int k) const { return sets_.at(static_cast<std::size_t>(k - 1)); }
  const Coalition& backstop() const { return sets_.back(); }

  SubsetSequence with_set_removed(int k) const {
    std::vector<Coalition> sets = sets_;
    sets.erase(sets.begin() + (k - 1));
    return SubsetSequence(n_, std::move(sets));
  }

  bool operator==(const SubsetSequence& o) const {
    return n_ == o.n_ && sets_ == o.sets_;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (i) s += ", ";
      s += sets_[i].to_string();
    }
    return s + ")";
  }

 private:
  int n_;
  std::vector<Coalition> sets_;
};

enum class SequenceViolationKind {
  empty_set,
  recurring_set,
  last_not_singleton,
  backstop_reappears,
};

struct SequenceViolation {
  SequenceViolationKind kind;
  int index;  // 1-based position of the offending set

  std::string to_string() const {
    switch (kind) {
      case SequenceViolationKind::empty_set:
        return "set " + std::to_string(index) + " is empty";
      case SequenceViolationKind::recurring_set:
        return "set " + std::to_string(index) + " recurs earlier in the sequence";
      case SequenceViolationKind::last_not_singleton:
        return "last set is not a singleton";
      case SequenceViolationKind::backstop_reappears:
        return "backstop voter appears in set " + std::to_string(index);
    }
    return "";
  }
};

struct SequenceReport {
  std::vector<SequenceViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline SequenceReport validate_sequence(const SubsetSequence& seq) {
  SequenceReport report;
  const auto& sets = seq.sets();
  const int K = seq.length();
  for (int k = 1; k <= K; ++k) {
    if (sets[k - 1].is_empty())
      report.violations.push_back({SequenceViolationKind::empty_set, k});
    for (int l = 1; l < k; ++l)
      if (sets[l - 1] == sets[k - 1]) {
        report.violations.push_back({SequenceViolationKind::recurring_set, k});
        break;
      }
  }
  if (!seq.backstop().is_singleton()) {
    report.violations.push_back({SequenceViolationKind::last_not_singleton, K});
  } else {
    const int v = seq.backstop().sole_voter();
    for (int k = 1; k < K; ++k)
      if (sets[k - 1].contains(v))
        report.violations.push_back({SequenceViolationKind::backstop_reappears, k});
  }
  return report;
}

}  // namespace binvote
