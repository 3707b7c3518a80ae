#pragma once

#include <functional>
#include <optional>
#include <string>

#include "binvote/coalition_set.hpp"
#include "binvote/profiles.hpp"
#include "binvote/subset_sequence.hpp"

namespace binvote {

inline constexpr int kDefaultTernaryBound = 12;

namespace detail {

/// Preference rank of an outcome for a voter whose true ballot is `truth`:
/// own candidate > tie > other candidate.  Indifferent voters rank
/// everything equally.
inline int preference_rank(Choice outcome, Choice truth) {
  if (truth == Choice::tie) return 0;
  if (outcome == truth) return 2;
  if (outcome == Choice::tie) return 1;
  return 0;
}

}  // namespace detail

/// A neutral and strategy-proof full-domain rule used as the fallback when
/// coalition or sequence logic does not resolve a ternary profile.  The
/// built-in kinds carry these properties by construction; user-supplied
/// rules are admitted only through checked_custom, which verifies both
/// properties exhaustively at the configured population before accepting.
class DefaultRule {
 public:
  enum class Kind { majority, dictator, constant_tie, custom };

  static DefaultRule majority() { return DefaultRule(Kind::majority, 0, {}, "majority"); }
  static DefaultRule dictator(int voter) {
    if (voter < 1) throw std::invalid_argument("dictator voter must be positive");
    return DefaultRule(Kind::dictator, voter, {}, "dictator:" + std::to_string(voter));
  }
  static DefaultRule constant_tie() {
    return DefaultRule(Kind::constant_tie, 0, {}, "tie");
  }

  static DefaultRule checked_custom(std::function<Choice(const TernaryProfile&)> fn,
                                    int n, int ternary_bound = kDefaultTernaryBound) {
    if (!fn) throw std::invalid_argument("custom default rule is empty");
    if (n < 1 || n > ternary_bound)
      throw BoundError("custom default pre-check requires n <= " +
                       std::to_string(ternary_bound));
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const TernaryProfile p = TernaryProfile::from_index(n, idx);
      const Choice out = fn(p);
      if (fn(p.flipped_all()) != flipped(out))
        throw std::invalid_argument("custom default rule is not neutral");
      for (int voter = 1; voter <= n; ++voter) {
        const Choice truth = p.ballot(voter);
        if (truth == Choice::tie) continue;
        for (Choice lie : {Choice::a, Choice::b, Choice::tie}) {
          if (lie == truth) continue;
          const Choice deviated = fn(p.with_ballot(voter, lie));
          if (detail::preference_rank(deviated, truth) >
              detail::preference_rank(out, truth))
            throw std::invalid_argument("custom default rule is not strategy-proof");
        }
      }
    }
    return DefaultRule(Kind::custom, 0, std::move(fn), "custom");
  }

  Kind kind() const { return kind_; }
  int dictator_voter() const { return voter_; }
  const std::string& name() const { return name_; }

  Choice operator()(const TernaryProfile& r) const {
    switch (kind_) {
      case Kind::majority: {
        const int a = std::popcount(r.strict_a_mask());
        const int b = std::popcount(r.strict_b_mask());
        return a > b ? Choice::a : b > a ? Choice::b : Choice::tie;
      }
      case Kind::dictator:
        if (voter_ > r.n())
          throw std::invalid_argument("dictator voter exceeds population");
        return r.ballot(voter_);
      case Kind::constant_tie:
        return Choice::tie;
      case Kind::custom:
        return custom_(r);
    }
    return Choice::tie;
  }

 private:
  DefaultRule(Kind kind, int voter, std::function<Choice(const TernaryProfile&)> fn,
              std::string name)
      : kind_(kind), voter_(voter), custom_(std::move(fn)), name_(std::move(name)) {}

  Kind kind_;
  int voter_;
  std::function<Choice(const TernaryProfile&)> custom_;
  std::string name_;
};

inline Outcome eval_default(const DefaultRule& f, const TernaryProfile& r) {
  return Outcome{f(r), std::nullopt, std::nullopt, true};
}

/// M-winning coalition rule with a default: the candidate with a strictly
/// unanimous winning coalition when one exists, the default outcome
/// otherwise.
inline Outcome evaluate_mwc_default(const CoalitionSet& cs, const DefaultRule& f,
                                    const TernaryProfile& r) {
  if (!cs.validated_mwcs())
    throw std::invalid_argument("coalition set has not passed validate_mwcs");
  if (r.n() != cs.n()) throw std::invalid_argument("profile population mismatch");
  std::optional<Coalition> a_witness, b_witness;
  for (const Coalition& c : cs.members()) {
    if (!a_witness && (c.mask() & ~r.strict_a_mask()) == 0) a_witness = c;
    if (!b_witness && (c.mask() & ~r.strict_b_mask()) == 0) b_witness = c;
  }
  if (a_witness && b_witness)
    throw std::logic_error("two coalitions unanimous for opposite candidates");
  if (a_witness) return Outcome{Choice::a, std::nullopt, a_witness, false};
  if (b_witness) return Outcome{Choice::b, std::nullopt, b_witness, false};
  return eval_default(f, r);
}

/// Sequential unanimity rule with a default, scanning S_1,...,S_K:
///   - S_1 strictly unanimous for x decides immediately;
///   - a later S_k strictly unanimous for x decides only when every earlier
///     set holds at least one voter with a strict ballot for x;
///   - an entirely indifferent S_k stops the scan with the default outcome;
///   - a scan that never stops also falls back to the default.
inline Outcome evaluate_su_default(const SubsetSequence& seq, const DefaultRule& f,
                                   const TernaryProfile& r) {
  if (r.n() != seq.n()) throw std::invalid_argument("profile population mismatch");
  const int K = seq.length();
  const std::uint64_t a = r.strict_a_mask();
  const std::uint64_t b = r.strict_b_mask();

  const Coalition& first = seq.set_at(1);
  if ((first.mask() & ~a) == 0) return Outcome{Choice::a, 1, first, false};
  if ((first.mask() & ~b) == 0) return Outcome{Choice::b, 1, first, false};

  for (int k = 2; k <= K; ++k) {
    const Coalition& s = seq.set_at(k);
    for (Choice x : {Choice::a, Choice::b}) {
      const std::uint64_t supporters = x == Choice::a ? a : b;
      if ((s.mask() & ~supporters) != 0) continue;
      bool witnessed = true;
      for (int l = 1; l < k; ++l)
        if ((seq.set_at(l).mask() & supporters) == 0) {
          witnessed = false;
          break;
        }
      if (witnessed) return Outcome{x, k, s, false};
    }
    if ((s.mask() & (a | b)) == 0) {
      Outcome out = eval_default(f, r);
      out.decisive_index = k;
      return out;
    }
  }
  return eval_default(f, r);
}

}  // namespace binvote
