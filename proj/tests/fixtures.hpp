#pragma once

// Shared test instances and randomized generators.  The generators build
// random strong simple games directly as monotone self-dual winning
// families, so they cover non-weighted games as well as weighted ones.

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "binvote/binvote.hpp"

namespace fixtures {

using namespace binvote;

inline Coalition co(int n, const std::vector<int>& voters) {
  return Coalition::from_voters(n, voters);
}

/// Seven-voter hiring panel: two senior voters with weight 4, two with 2,
/// three with 1, threshold 8.
inline CoalitionSet job_market() {
  return make_coalition_set(
      7, {{1, 2}, {1, 3, 4}, {2, 3, 4}, {1, 3, 5, 6}, {1, 3, 5, 7}, {1, 3, 6, 7},
          {1, 4, 5, 6}, {1, 4, 5, 7}, {1, 4, 6, 7}, {2, 3, 5, 6}, {2, 3, 5, 7},
          {2, 3, 6, 7}, {2, 4, 5, 6}, {2, 4, 5, 7}, {2, 4, 6, 7}});
}

/// Symmetric 5-of-9 majority game.
inline CoalitionSet c1_majority_five_of_nine() {
  std::vector<std::vector<int>> lists;
  for (std::uint64_t m = 0; m < (1u << 9); ++m) {
    if (std::popcount(m) != 5) continue;
    std::vector<int> voters;
    for (int v = 1; v <= 9; ++v)
      if ((m >> (v - 1)) & 1) voters.push_back(v);
    lists.push_back(std::move(voters));
  }
  return make_coalition_set(9, lists);
}

/// The eight-voter non-weighted game.
inline CoalitionSet c2_nonweighted() {
  return make_coalition_set(
      8, {{1, 2, 3}, {1, 2, 4}, {1, 2, 7}, {2, 3, 4}, {1, 3, 5, 6}, {1, 3, 5, 7},
          {1, 3, 6, 7}, {1, 4, 5, 6, 8}, {2, 3, 5}, {2, 3, 6}, {2, 3, 8}, {2, 5, 7},
          {2, 6, 7}, {2, 4, 5, 6}, {3, 4, 7}});
}

/// Five-voter shrink of the hiring panel: weights (2,2,1,1,1), threshold 4.
inline CoalitionSet five_voter_panel() {
  return make_coalition_set(5, {{1, 2}, {1, 3, 4}, {1, 3, 5}, {1, 4, 5}, {2, 3, 4},
                                {2, 3, 5}, {2, 4, 5}});
}

inline CoalitionSet validated(CoalitionSet cs) {
  if (!validate_mwcs(cs).ok())
    throw std::logic_error("fixture failed validation: " + cs.to_string());
  return cs;
}

inline SubsetSequence s1() {
  return SubsetSequence::from_lists(7, {{1, 2}, {3, 4}, {5, 6}, {7}});
}

inline SubsetSequence s2() {
  return SubsetSequence::from_lists(7, {{1, 2}, {3, 5, 7}, {3, 6, 7}, {3, 5, 6}, {4}});
}

inline SubsetSequence s3() {
  return SubsetSequence::from_lists(
      7, {{7, 5, 3, 1}, {5, 6, 3, 1}, {7, 5, 4, 1}, {5, 6, 4, 1}, {7, 6, 3, 1},
          {3, 4, 1}, {7, 6, 4, 1}, {2}});
}

/// The no-proviso run on the eight-voter game whose penultimate set {1,3,6}
/// is superfluous.
inline SubsetSequence footnote_sequence() {
  return SubsetSequence::from_lists(
      8, {{2, 3, 6}, {2, 3, 4}, {3, 4, 7}, {2, 6, 7}, {2, 3, 5}, {2, 5, 7},
          {2, 5, 6}, {1, 2}, {1, 3}, {1, 3, 6}, {8}});
}

/// The six-set path example: 16 paths from the first to the last set.
inline std::vector<Coalition> example3_sets() {
  return {co(8, {1, 2, 3}), co(8, {6, 7}),    co(8, {1, 2, 4}),
          co(8, {2, 5, 6}), co(8, {2, 8}),    co(8, {8})};
}

/// Ballot source that records which voters were consulted.
struct CountingProfile {
  const StrictProfile* base;
  mutable std::vector<int> reads;

  explicit CountingProfile(const StrictProfile& p)
      : base(&p), reads(static_cast<std::size_t>(p.n()), 0) {}
  int n() const { return base->n(); }
  Choice ballot(int voter) const {
    ++reads[static_cast<std::size_t>(voter - 1)];
    return base->ballot(voter);
  }
};

/// Uniformly random monotone self-dual winning family, reduced to its
/// minimal elements.  Complementary subset pairs are assigned in random
/// order; a pair is decided by coin flip unless monotonicity against
/// earlier assignments forces it.
inline CoalitionSet random_strong_game(std::mt19937_64& rng, int n) {
  const std::uint64_t full = full_mask(n);
  std::vector<signed char> win(full + 1, -1);
  win[0] = 0;
  win[full] = 1;
  std::vector<std::uint64_t> wins{full}, loses{0};

  std::vector<std::uint64_t> reps;
  for (std::uint64_t m = 1; m < full; ++m)
    if (m < (full & ~m)) reps.push_back(m);
  std::shuffle(reps.begin(), reps.end(), rng);

  // The lists always hold complementary pairs, so a superset of a winner
  // and a subset of a loser are the only forcing shapes to test.
  const auto subset_of = [](std::uint64_t a, std::uint64_t b) {
    return (a & ~b) == 0;
  };
  for (std::uint64_t m : reps) {
    const std::uint64_t comp = full & ~m;
    bool forced_win = false, forced_lose = false;
    for (std::uint64_t w : wins)
      if (subset_of(w, m)) {
        forced_win = true;
        break;
      }
    for (std::uint64_t l : loses)
      if (subset_of(m, l)) {
        forced_lose = true;
        break;
      }
    if (forced_win && forced_lose)
      throw std::logic_error("random game generator lost consistency");
    const bool m_wins =
        forced_win ||
        (!forced_lose && std::uniform_int_distribution<int>(0, 1)(rng) == 1);
    win[m] = m_wins ? 1 : 0;
    win[comp] = m_wins ? 0 : 1;
    (m_wins ? wins : loses).push_back(m);
    (m_wins ? loses : wins).push_back(comp);
  }

  std::vector<Coalition> members;
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (win[m] == 1) {
      bool minimal = true;
      for (std::uint64_t b = m; b; b &= b - 1) {
        const std::uint64_t low = b & (~b + 1);
        if (win[m ^ low] == 1) {
          minimal = false;
          break;
        }
      }
      if (minimal) members.emplace_back(n, m);
    }
    if (m == full) break;
  }
  return CoalitionSet(n, std::move(members));
}

/// Random sequence satisfying every rule-level invariant.
inline SubsetSequence random_valid_sequence(std::mt19937_64& rng, int n,
                                            int max_extra_sets = 6) {
  const int backstop = std::uniform_int_distribution<int>(1, n)(rng);
  const std::uint64_t others =
      full_mask(n) & ~(std::uint64_t{1} << (backstop - 1));
  std::set<std::uint64_t> used;
  std::vector<Coalition> sets;
  const int extras =
      others == 0 ? 0 : std::uniform_int_distribution<int>(0, max_extra_sets)(rng);
  std::uniform_int_distribution<std::uint64_t> draw(0, full_mask(n));
  for (int i = 0; i < extras; ++i) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const std::uint64_t mask = draw(rng) & others;
      if (mask != 0 && used.insert(mask).second) {
        sets.emplace_back(n, mask);
        break;
      }
    }
  }
  sets.push_back(Coalition::singleton(n, backstop));
  SubsetSequence seq(n, std::move(sets));
  if (!validate_sequence(seq).ok())
    throw std::logic_error("random sequence generator produced invalid sequence");
  return seq;
}

/// Random family of pairwise-intersecting coalitions (not necessarily P1/P2).
inline CoalitionSet random_intersecting_family(std::mt19937_64& rng, int n,
                                               int target = 6) {
  std::vector<Coalition> members;
  std::uniform_int_distribution<std::uint64_t> draw(1, full_mask(n));
  for (int attempt = 0; attempt < 40 * target; ++attempt) {
    if (static_cast<int>(members.size()) >= target) break;
    const Coalition c(n, draw(rng));
    bool compatible = true;
    for (const Coalition& m : members)
      if (!m.intersects(c)) {
        compatible = false;
        break;
      }
    if (compatible) members.push_back(c);
  }
  return CoalitionSet(n, std::move(members));
}

}  // namespace fixtures
