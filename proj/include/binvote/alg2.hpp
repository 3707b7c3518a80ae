#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "binvote/coalition_set.hpp"
#include "binvote/subset_sequence.hpp"

namespace binvote {

inline constexpr std::size_t kDefaultPathLimit = 1000000;

/// Raised when path enumeration for one window exceeds its limit.
class PathLimitError : public std::runtime_error {
 public:
  PathLimitError(std::size_t found, std::size_t limit)
      : std::runtime_error("path enumeration exceeded limit of " +
                           std::to_string(limit) + " paths"),
        paths_found(found) {}
  std::size_t paths_found;
};

/// A parsimonious voter traversal from window set S_l to S_k: each voter is
/// drawn from the head of the surviving subsequence and deletes every
/// surviving set containing it.  No path voter belongs to S_k.
struct Path {
  std::vector<int> voters;
  int source = 0;  // l
  int target = 0;  // k

  std::uint64_t voter_mask() const {
    std::uint64_t m = 0;
    for (int v : voters) m |= std::uint64_t{1} << (v - 1);
    return m;
  }
  bool operator==(const Path& o) const {
    return voters == o.voters && source == o.source && target == o.target;
  }
};

/// Enumerates every path from S_l to S_k (1-based indices into `sets`),
/// resolving each voter choice in ascending order so the output order is
/// deterministic.  Returns an empty list when the pruned window is empty.
/// Unlike rule sequences, the window may be any list of non-empty subsets.
inline std::vector<Path> enumerate_paths(std::span<const Coalition> sets, int l,
                                         int k,
                                         std::size_t limit = kDefaultPathLimit) {
  if (l < 1 || k <= l || k > static_cast<int>(sets.size()))
    throw std::invalid_argument("path window requires 1 <= l < k <= K");
  for (int j = l; j <= k; ++j)
    if (sets[static_cast<std::size_t>(j - 1)].is_empty())
      throw std::invalid_argument("path windows require non-empty subsets");

  const Coalition& target = sets[static_cast<std::size_t>(k - 1)];
  std::vector<std::uint64_t> window;  // step 0: drop sets meeting S_k
  for (int j = l; j <= k; ++j) {
    const Coalition& s = sets[static_cast<std::size_t>(j - 1)];
    if (!s.intersects(target)) window.push_back(s.mask());
  }

  std::vector<Path> paths;
  std::vector<int> current;
  auto dfs = [&](auto&& self, const std::vector<std::uint64_t>& remaining) -> void {
    if (remaining.empty()) {
      if (paths.size() >= limit) throw PathLimitError(paths.size(), limit);
      paths.push_back(Path{current, l, k});
      return;
    }
    for (std::uint64_t head = remaining.front(); head; head &= head - 1) {
      const int voter = std::countr_zero(head) + 1;
      const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
      std::vector<std::uint64_t> next;
      next.reserve(remaining.size());
      for (std::uint64_t s : remaining)
        if (!(s & bit)) next.push_back(s);
      current.push_back(voter);
      self(self, next);
      current.pop_back();
    }
  };
  if (!window.empty()) dfs(dfs, window);
  return paths;
}

inline std::vector<Path> enumerate_paths(const SubsetSequence& seq, int l, int k,
                                         std::size_t limit = kDefaultPathLimit) {
  return enumerate_paths(std::span<const Coalition>(seq.sets()), l, k, limit);
}

struct Alg2Iteration {
  int k;
  std::size_t path_count;
  std::vector<Coalition> added;       // new members surviving this iteration
  std::vector<Coalition> duplicates;  // candidate coalitions already present
  std::vector<Coalition> pruned;      // proper supersets removed
};

struct Alg2Trace {
  std::vector<Alg2Iteration> iterations;
};

struct Alg2Result {
  CoalitionSet coalitions;
  Alg2Trace trace;
};

namespace detail {

/// Keeps only inclusion-minimal masks; removed masks are appended to
/// `pruned` in canonical order.
inline void prune_supersets(std::vector<Coalition>& members,
                            std::vector<Coalition>& pruned) {
  std::sort(members.begin(), members.end(), CanonicalCoalitionLess{});
  std::vector<Coalition> kept;
  for (const Coalition& c : members) {
    bool has_proper_subset = false;
    for (const Coalition& small : kept) {
      if (small.size() >= c.size()) break;
      if (small.proper_subset_of(c)) {
        has_proper_subset = true;
        break;
      }
    }
    (has_proper_subset ? pruned : kept).push_back(c);
  }
  members = std::move(kept);
}

}  // namespace detail

/// Sequence-to-coalition-set transformation.  Starts from {S_1}; at every
/// later k each path p from S_1 to S_k contributes the coalition p union
/// S_k (S_k alone when no path exists), pruning duplicates and proper
/// supersets after each iteration.  The output provably satisfies P1+P2
/// and is re-validated here whenever the population admits the exhaustive
/// scan.
inline Alg2Result run_alg2(const SubsetSequence& seq,
                           std::size_t path_limit = kDefaultPathLimit,
                           int exhaustive_bound = kDefaultExhaustiveBound) {
  if (!validate_sequence(seq).ok())
    throw std::invalid_argument("input sequence fails validate_sequence");
  const int n = seq.n();
  const int K = seq.length();

  std::vector<Coalition> members{seq.set_at(1)};
  Alg2Trace trace;
  for (int k = 2; k <= K; ++k) {
    const std::vector<Path> paths = enumerate_paths(seq, 1, k, path_limit);
    std::vector<Coalition> batch;
    if (paths.empty()) {
      batch.push_back(seq.set_at(k));
    } else {
      batch.reserve(paths.size());
      for (const Path& p : paths)
        batch.emplace_back(n, p.voter_mask() | seq.set_at(k).mask());
    }

    Alg2Iteration iter{k, paths.size(), {}, {}, {}};
    std::sort(batch.begin(), batch.end(), CanonicalCoalitionLess{});
    std::vector<Coalition> fresh;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const bool repeat_in_batch = i > 0 && batch[i] == batch[i - 1];
      const bool already_member =
          std::find(members.begin(), members.end(), batch[i]) != members.end();
      if (repeat_in_batch || already_member)
        iter.duplicates.push_back(batch[i]);
      else
        fresh.push_back(batch[i]);
    }
    members.insert(members.end(), fresh.begin(), fresh.end());
    detail::prune_supersets(members, iter.pruned);
    for (const Coalition& c : fresh)
      if (std::find(iter.pruned.begin(), iter.pruned.end(), c) == iter.pruned.end())
        iter.added.push_back(c);
    trace.iterations.push_back(std::move(iter));
  }

  CoalitionSet out(n, members);
  // Pairwise intersection is cheap and holds for every valid input.
  for (std::size_t i = 0; i < out.members().size(); ++i)
    for (std::size_t j = i + 1; j < out.members().size(); ++j)
      if (!out.members()[i].intersects(out.members()[j]))
        throw std::logic_error("transformation produced disjoint coalitions");
  if (n <= exhaustive_bound) {
    if (!validate_mwcs(out, exhaustive_bound).ok())
      throw std::logic_error(
          "transformation output is not an M-winning coalition set");
  }
  return Alg2Result{std::move(out), std::move(trace)};
}

}  // namespace binvote
