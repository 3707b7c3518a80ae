#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "binvote/alg1.hpp"
#include "binvote/coalition_set.hpp"
#include "binvote/full_domain.hpp"
#include "binvote/profiles.hpp"
#include "binvote/rules.hpp"
#include "binvote/subset_sequence.hpp"

namespace binvote {

enum class Domain { strict, ternary };

struct VerifyBounds {
  int strict_max = kDefaultExhaustiveBound;  // 2^n profile scans
  int ternary_max = kDefaultTernaryBound;    // 3^n profile scans
};

/// A uniform handle over every rule family the verifier can exercise:
/// plain coalition/sequence rules on the strict domain, their full-domain
/// variants with a default, a default rule on its own, and constant test
/// rules.  Construction checks the component objects once so the scan
/// loops can evaluate without re-validating.
class RuleHandle {
 public:
  static RuleHandle mwc(CoalitionSet cs) {
    if (!cs.validated_mwcs())
      throw std::invalid_argument("coalition set has not passed validate_mwcs");
    return RuleHandle(Domain::strict, cs.n(), Mwc{std::move(cs)});
  }
  static RuleHandle su(SubsetSequence seq) {
    if (!validate_sequence(seq).ok())
      throw std::invalid_argument("sequence fails validate_sequence");
    return RuleHandle(Domain::strict, seq.n(), Su{std::move(seq)});
  }
  static RuleHandle mwc_with_default(CoalitionSet cs, DefaultRule f) {
    if (!cs.validated_mwcs())
      throw std::invalid_argument("coalition set has not passed validate_mwcs");
    const int n = cs.n();
    return RuleHandle(Domain::ternary, n, MwcDefault{std::move(cs), std::move(f)});
  }
  static RuleHandle su_with_default(SubsetSequence seq, DefaultRule f) {
    if (!validate_sequence(seq).ok())
      throw std::invalid_argument("sequence fails validate_sequence");
    const int n = seq.n();
    return RuleHandle(Domain::ternary, n, SuDefault{std::move(seq), std::move(f)});
  }
  static RuleHandle builtin(DefaultRule f, int n, Domain domain = Domain::ternary) {
    return RuleHandle(domain, n, Builtin{std::move(f)});
  }
  /// Constant rules are deliberately degenerate test subjects (e.g. the
  /// always-a rule, which is strategy-proof but not neutral).
  static RuleHandle constant(Choice value, int n, Domain domain = Domain::strict) {
    return RuleHandle(domain, n, Constant{value});
  }

  int n() const { return n_; }
  Domain domain() const { return domain_; }

  Outcome evaluate(const StrictProfile& p) const {
    if (domain_ != Domain::strict)
      throw std::invalid_argument("rule is defined on the ternary domain");
    if (p.n() != n_) throw std::invalid_argument("profile population mismatch");
    if (const auto* r = std::get_if<Mwc>(&impl_)) return evaluate_mwc_rule(r->cs, p);
    if (const auto* r = std::get_if<Su>(&impl_)) return evaluate_su_rule(r->seq, p);
    if (const auto* r = std::get_if<Builtin>(&impl_))
      return eval_default(r->f, TernaryProfile::from_strict(p));
    return Outcome{std::get<Constant>(impl_).value, std::nullopt, std::nullopt, false};
  }

  Outcome evaluate(const TernaryProfile& p) const {
    if (domain_ != Domain::ternary)
      throw std::invalid_argument("rule is defined on the strict domain");
    if (p.n() != n_) throw std::invalid_argument("profile population mismatch");
    if (const auto* r = std::get_if<MwcDefault>(&impl_))
      return evaluate_mwc_default(r->cs, r->f, p);
    if (const auto* r = std::get_if<SuDefault>(&impl_))
      return evaluate_su_default(r->seq, r->f, p);
    if (const auto* r = std::get_if<Builtin>(&impl_)) return eval_default(r->f, p);
    return Outcome{std::get<Constant>(impl_).value, std::nullopt, std::nullopt, false};
  }

 private:
  struct Mwc { CoalitionSet cs; };
  struct Su { SubsetSequence seq; };
  struct MwcDefault { CoalitionSet cs; DefaultRule f; };
  struct SuDefault { SubsetSequence seq; DefaultRule f; };
  struct Builtin { DefaultRule f; };
  struct Constant { Choice value; };

  RuleHandle(Domain domain, int n,
             std::variant<Mwc, Su, MwcDefault, SuDefault, Builtin, Constant> impl)
      : domain_(domain), n_(n), impl_(std::move(impl)) {
    if (n_ < 1 || n_ > kMaxVoters)
      throw std::invalid_argument("population size must be in 1..64");
  }

  Domain domain_;
  int n_;
  std::variant<Mwc, Su, MwcDefault, SuDefault, Builtin, Constant> impl_;
};

namespace detail {

inline void gate_scan(Domain domain, int n, const VerifyBounds& bounds) {
  const int limit = domain == Domain::strict ? bounds.strict_max : bounds.ternary_max;
  if (n > limit)
    throw BoundError("population " + std::to_string(n) +
                     " exceeds exhaustive scan bound " + std::to_string(limit));
}

inline std::uint64_t profile_count(Domain domain, int n) {
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= domain == Domain::strict ? 2 : 3;
  return count;
}

template <typename Fn>
void for_each_strict_profile(int n, Fn&& fn) {
  const std::uint64_t count = profile_count(Domain::strict, n);
  for (std::uint64_t idx = 0; idx < count; ++idx)
    if (!fn(StrictProfile::from_index(n, idx))) return;
}

template <typename Fn>
void for_each_ternary_profile(int n, Fn&& fn) {
  const std::uint64_t count = profile_count(Domain::ternary, n);
  for (std::uint64_t idx = 0; idx < count; ++idx)
    if (!fn(TernaryProfile::from_index(n, idx))) return;
}

template <typename Fn>
void for_each_profile(Domain domain, int n, Fn&& fn) {
  if (domain == Domain::strict)
    for_each_strict_profile(n, fn);
  else
    for_each_ternary_profile(n, fn);
}

}  // namespace detail

struct EquivalenceCounterexample {
  std::string profile;
  Choice first;
  Choice second;
};

struct EquivalenceResult {
  std::optional<EquivalenceCounterexample> counterexample;
  bool equal() const { return !counterexample.has_value(); }
};

/// Exhaustive agreement check over the common domain, in canonical profile
/// order; symmetric in its arguments up to swapping the reported outcomes.
inline EquivalenceResult check_equivalence(const RuleHandle& r1, const RuleHandle& r2,
                                           const VerifyBounds& bounds = {}) {
  if (r1.n() != r2.n())
    throw std::invalid_argument("rules have different populations");
  if (r1.domain() != r2.domain())
    throw std::invalid_argument("rules have different domains");
  detail::gate_scan(r1.domain(), r1.n(), bounds);
  EquivalenceResult result;
  detail::for_each_profile(r1.domain(), r1.n(), [&](const auto& p) {
    const Choice o1 = r1.evaluate(p).value;
    const Choice o2 = r2.evaluate(p).value;
    if (o1 != o2) {
      result.counterexample = EquivalenceCounterexample{p.to_string(), o1, o2};
      return false;
    }
    return true;
  });
  return result;
}

struct SpCounterexample {
  std::string profile;
  int voter;
  Choice misreport;
  Choice truthful_outcome;
  Choice deviated_outcome;
};

struct SpResult {
  std::optional<SpCounterexample> counterexample;
  bool strategy_proof() const { return !counterexample.has_value(); }
};

/// Exhaustive strategy-proofness scan.  On the ternary domain only voters
/// with a strict true preference can deviate profitably, so indifferent
/// voters are skipped.
inline SpResult check_strategy_proofness(const RuleHandle& r,
                                         const VerifyBounds& bounds = {}) {
  detail::gate_scan(r.domain(), r.n(), bounds);
  SpResult result;
  detail::for_each_profile(r.domain(), r.n(), [&](const auto& p) {
    const Choice truthful = r.evaluate(p).value;
    for (int voter = 1; voter <= r.n(); ++voter) {
      const Choice truth = p.ballot(voter);
      if (truth == Choice::tie) continue;
      for (Choice lie : {Choice::a, Choice::b, Choice::tie}) {
        if (lie == truth) continue;
        if (r.domain() == Domain::strict && lie == Choice::tie) continue;
        const Choice deviated = r.evaluate(p.with_ballot(voter, lie)).value;
        if (detail::preference_rank(deviated, truth) >
            detail::preference_rank(truthful, truth)) {
          result.counterexample =
              SpCounterexample{p.to_string(), voter, lie, truthful, deviated};
          return false;
        }
      }
    }
    return true;
  });
  return result;
}

struct NeutralityResult {
  std::optional<std::string> counterexample_profile;
  bool neutral() const { return !counterexample_profile.has_value(); }
};

/// Checks the candidate swap a<->b (the only nontrivial permutation fixing
/// the tie value) across all profiles.
inline NeutralityResult check_neutrality(const RuleHandle& r,
                                         const VerifyBounds& bounds = {}) {
  detail::gate_scan(r.domain(), r.n(), bounds);
  NeutralityResult result;
  detail::for_each_profile(r.domain(), r.n(), [&](const auto& p) {
    if (r.evaluate(p.flipped_all()).value != flipped(r.evaluate(p).value)) {
      result.counterexample_profile = p.to_string();
      return false;
    }
    return true;
  });
  return result;
}

struct EssentialityResult {
  std::vector<int> superfluous;  // 1-based indices k whose removal never matters
  bool backstop_reached = false;
  bool essential() const { return superfluous.empty(); }
};

/// A sequence is essential when deleting any non-final set changes the
/// outcome on some strict profile.  Requires non-empty, non-recurring sets
/// and a singleton last set; the backstop-exclusivity invariant is not
/// needed here, which lets the check run on enumeration-style sequences.
/// Whether any profile actually consults the backstop is reported as a
/// diagnostic.
inline EssentialityResult check_essential(const SubsetSequence& seq,
                                          const VerifyBounds& bounds = {}) {
  detail::gate_scan(Domain::strict, seq.n(), bounds);
  const int K = seq.length();
  for (const auto& v : validate_sequence(seq).violations)
    if (v.kind != SequenceViolationKind::backstop_reappears)
      throw std::invalid_argument("sequence not evaluable: " + v.to_string());

  EssentialityResult result;
  detail::for_each_strict_profile(seq.n(), [&](const StrictProfile& p) {
    if (evaluate_su_rule(seq, p).decisive_index == K) {
      result.backstop_reached = true;
      return false;
    }
    return true;
  });
  for (int k = 1; k < K; ++k) {
    const SubsetSequence reduced = seq.with_set_removed(k);
    bool matters = false;
    detail::for_each_strict_profile(seq.n(), [&](const StrictProfile& p) {
      if (evaluate_su_rule(seq, p).value != evaluate_su_rule(reduced, p).value) {
        matters = true;
        return false;
      }
      return true;
    });
    if (!matters) result.superfluous.push_back(k);
  }
  return result;
}

/// Witness that a one-voter swap between two winning coalitions leaves both
/// losing, certifying that the game is not weighted.
struct TradeCertificate {
  Coalition first;
  Coalition second;
  int voter_from_first;
  int voter_from_second;
};

inline bool verify_trade_certificate(const CoalitionSet& cs,
                                     const TradeCertificate& cert) {
  const Coalition& c1 = cert.first;
  const Coalition& c2 = cert.second;
  const int i = cert.voter_from_first;
  const int j = cert.voter_from_second;
  if (!cs.contains(c1) || !cs.contains(c2)) return false;
  if (!c1.contains(i) || c2.contains(i)) return false;
  if (!c2.contains(j) || c1.contains(j)) return false;
  const Coalition swapped1 = c1.without(i).with(j);
  const Coalition swapped2 = c2.without(j).with(i);
  return !cs.has_member_within(swapped1) && !cs.has_member_within(swapped2);
}

/// Scans all coalition pairs and voter swaps in canonical order; the first
/// verified certificate wins.  Returns nullopt for 2-trade-robust games.
inline std::optional<TradeCertificate> find_2trade_violation(const CoalitionSet& cs) {
  if (!cs.validated_mwcs())
    throw std::invalid_argument("coalition set has not passed validate_mwcs");
  const auto& m = cs.members();
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x + 1; y < m.size(); ++y) {
      const Coalition only_first(cs.n(), m[x].mask() & ~m[y].mask());
      const Coalition only_second(cs.n(), m[y].mask() & ~m[x].mask());
      for (int i : only_first.voters())
        for (int j : only_second.voters()) {
          const TradeCertificate cert{m[x], m[y], i, j};
          if (verify_trade_certificate(cs, cert)) return cert;
        }
    }
  return std::nullopt;
}

/// Integer voter weights and a threshold whose minimal winning coalitions
/// are exactly the given set.
struct WeightCertificate {
  std::vector<int> weights;  // indexed by voter-1
  long long threshold;
};

inline bool verify_weight_certificate(const CoalitionSet& cs,
                                      const WeightCertificate& cert) {
  const int n = cs.n();
  if (static_cast<int>(cert.weights.size()) != n || cert.threshold < 1) return false;
  for (int w : cert.weights)
    if (w < 0) return false;
  const std::uint64_t full = full_mask(n);
  std::vector<long long> weight_of(full + 1, 0);
  for (std::uint64_t s = 1; s <= full; ++s) {
    const std::uint64_t low = s & (~s + 1);
    weight_of[s] = weight_of[s & (s - 1)] +
                   cert.weights[static_cast<std::size_t>(std::countr_zero(low))];
  }
  for (std::uint64_t s = 0; s <= full; ++s) {
    const bool heavy = weight_of[s] >= cert.threshold;
    if (heavy != cs.has_member_within(Coalition(n, s))) return false;
    // No two disjoint subsets may both meet the threshold; it suffices to
    // rule out complementary pairs because weights are monotone.
    if (heavy && weight_of[full & ~s] >= cert.threshold) return false;
    if (s == full) break;
  }
  return true;
}

/// Bounded exhaustive search for an integer-weight representation.  Voters
/// with identical membership patterns across the set share a weight, and
/// for a fixed weight vector the only threshold that can work is one more
/// than the heaviest losing coalition.  A nullopt result is *not* a proof
/// of non-weightedness; pair it with find_2trade_violation for certificates
/// in the other direction.
inline std::optional<WeightCertificate> find_integer_weights(
    const CoalitionSet& cs, int w_max, std::uint64_t step_budget = 200000000) {
  if (!cs.validated_mwcs())
    throw std::invalid_argument("coalition set has not passed validate_mwcs");
  if (w_max < 0) throw std::invalid_argument("w_max must be non-negative");
  const int n = cs.n();
  const std::uint64_t full = full_mask(n);

  // Symmetry classes by membership signature, ordered by first voter.
  std::map<std::vector<bool>, std::vector<int>> by_signature;
  for (int voter = 1; voter <= n; ++voter) {
    std::vector<bool> signature;
    signature.reserve(cs.size());
    for (const Coalition& c : cs.members()) signature.push_back(c.contains(voter));
    by_signature[signature].push_back(voter);
  }
  std::vector<std::vector<int>> classes;
  classes.reserve(by_signature.size());
  for (auto& [sig, voters] : by_signature) classes.push_back(voters);
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    assignments *= static_cast<std::uint64_t>(w_max) + 1;
    if (assignments > step_budget) break;
  }
  if (assignments > step_budget / (full + 1))
    throw BoundError("weight search space exceeds the configured budget");

  std::vector<char> winning(full + 1, 0);
  for (std::uint64_t s = 0; s <= full; ++s) {
    winning[s] = cs.has_member_within(Coalition(n, s)) ? 1 : 0;
    if (s == full) break;
  }

  std::vector<int> class_weight(classes.size(), 0);
  std::vector<long long> voter_weight(static_cast<std::size_t>(n), 0);
  std::vector<long long> weight_of(full + 1, 0);
  for (;;) {
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int voter : classes[c])
        voter_weight[static_cast<std::size_t>(voter - 1)] = class_weight[c];

    for (std::uint64_t s = 1; s <= full; ++s) {
      const std::uint64_t low = s & (~s + 1);
      weight_of[s] = weight_of[s & (s - 1)] +
                     voter_weight[static_cast<std::size_t>(std::countr_zero(low))];
    }
    long long min_winning = std::numeric_limits<long long>::max();
    long long max_losing = std::numeric_limits<long long>::min();
    for (std::uint64_t s = 0; s <= full; ++s) {
      if (winning[s])
        min_winning = std::min(min_winning, weight_of[s]);
      else
        max_losing = std::max(max_losing, weight_of[s]);
      if (s == full) break;
    }
    if (max_losing < min_winning) {
      WeightCertificate cert{std::vector<int>(), max_losing + 1};
      cert.weights.reserve(static_cast<std::size_t>(n));
      for (long long w : voter_weight) cert.weights.push_back(static_cast<int>(w));
      if (verify_weight_certificate(cs, cert)) return cert;
      throw std::logic_error("weight search produced an invalid certificate");
    }

    // Next assignment in ascending lexicographic order over class weights.
    std::size_t pos = classes.size();
    while (pos > 0) {
      if (class_weight[pos - 1] < w_max) {
        ++class_weight[pos - 1];
        break;
      }
      class_weight[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) return std::nullopt;
  }
}

}  // namespace binvote
