#pragma once

#include <concepts>
#include <optional>

#include "binvote/coalition_set.hpp"
#include "binvote/profiles.hpp"
#include "binvote/subset_sequence.hpp"

namespace binvote {

template <typename P>
concept BallotSource = requires(const P& p, int voter) {
  { p.n() } -> std::convertible_to<int>;
  { p.ballot(voter) } -> std::convertible_to<Choice>;
};

/// M-winning coalition rule: the outcome is the candidate unanimously
/// supported by some member of the validated set.  Existence and uniqueness
/// of that candidate are guaranteed by P1+P2 and re-asserted here; a failed
/// assertion means an unvalidated set slipped through.
inline Outcome evaluate_mwc_rule(const CoalitionSet& cs, const StrictProfile& r) {
  if (!cs.validated_mwcs())
    throw std::invalid_argument("coalition set has not passed validate_mwcs");
  if (r.n() != cs.n())
    throw std::invalid_argument("profile population mismatch");
  const std::uint64_t b_mask = r.index();
  const std::uint64_t a_mask = full_mask(r.n()) & ~b_mask;
  std::optional<Coalition> a_witness, b_witness;
  for (const Coalition& c : cs.members()) {
    if (!a_witness && (c.mask() & ~a_mask) == 0) a_witness = c;
    if (!b_witness && (c.mask() & ~b_mask) == 0) b_witness = c;
    if (a_witness && b_witness) break;
  }
  if (a_witness.has_value() == b_witness.has_value())
    throw std::logic_error(
        "M-winning coalition rule is ill-defined on this profile; "
        "the coalition set violates Moulin's property");
  Outcome out{a_witness ? Choice::a : Choice::b, std::nullopt,
              a_witness ? *a_witness : *b_witness, false};
  return out;
}

/// Sequential unanimity rule: scan S_1,...,S_K and output the preference of
/// the first internally unanimous set.  Ballots are only read for sets up
/// to and including the decisive one, which instrumented profiles can
/// observe.  Pre: the sequence passed validate_sequence.
template <BallotSource P>
Outcome evaluate_su_rule(const SubsetSequence& seq, const P& r) {
  if (static_cast<int>(r.n()) != seq.n())
    throw std::invalid_argument("profile population mismatch");
  const int K = seq.length();
  for (int k = 1; k <= K; ++k) {
    const Coalition& s = seq.set_at(k);
    std::optional<Choice> common;
    bool unanimous = true;
    for (std::uint64_t m = s.mask(); m; m &= m - 1) {
      const int voter = std::countr_zero(m) + 1;
      const Choice c = r.ballot(voter);
      if (!common) {
        common = c;
      } else if (*common != c) {
        unanimous = false;
        break;
      }
    }
    if (unanimous && common && *common != Choice::tie)
      return Outcome{*common, k, s, false};
  }
  throw std::logic_error(
      "sequence exhausted without a unanimous set; the singleton backstop "
      "invariant does not hold");
}

}  // namespace binvote
