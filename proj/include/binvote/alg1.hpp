#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "binvote/coalition_set.hpp"
#include "binvote/subset_sequence.hpp"

namespace binvote {

/// Raised when a scripted run supplies a choice that violates the active
/// selection criteria, or runs out of choices while candidates remain.
class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolves the "pick arbitrarily" steps of the coalition-to-sequence
/// transformation.  Lexicographic mode takes the smallest-index backstop and
/// the canonically smallest candidate; seeded mode draws uniformly from a
/// fixed-seed generator; scripted mode replays explicit choices and rejects
/// any that fail the criteria.
struct SelectionPolicy {
  enum class Mode { lexicographic, seeded_random, scripted };

  struct Script {
    int backstop = 0;
    std::vector<Coalition> choices;                        // N_2, N_3, ...
    std::optional<std::vector<Coalition>> leftover_order;  // explicit C* order
  };

  Mode mode = Mode::lexicographic;
  std::uint64_t seed = 0;
  std::optional<Script> script;
  bool essential_mode = false;

  static SelectionPolicy lex(bool essential = false) {
    SelectionPolicy p;
    p.essential_mode = essential;
    return p;
  }
  static SelectionPolicy seeded(std::uint64_t seed, bool essential = false) {
    SelectionPolicy p;
    p.mode = Mode::seeded_random;
    p.seed = seed;
    p.essential_mode = essential;
    return p;
  }
  static SelectionPolicy scripted(Script s, bool essential = false) {
    SelectionPolicy p;
    p.mode = Mode::scripted;
    p.script = std::move(s);
    p.essential_mode = essential;
    return p;
  }
};

/// Snapshot of the transformation after the backstop and the subsets
/// N_2..N_{k-1} have been chosen.  `remaining`/`discarded` partition the
/// input set; `discard_batches` records, per accepted subset, exactly the
/// coalitions it removed.
struct Alg1State {
  int n;
  Coalition backstop;
  std::vector<Coalition> chosen;             // N_2, ..., N_{k-1} in choice order
  CoalitionSet remaining;                    // C_{k-1}
  CoalitionSet discarded;                    // D_{k-1}
  std::vector<std::vector<Coalition>> discard_batches;  // E_2, ..., E_{k-1}
  bool essential_mode = false;

  /// Iteration about to run (the k of the next N_k).
  int next_iteration() const { return static_cast<int>(chosen.size()) + 2; }
};

inline Alg1State alg1_init(const CoalitionSet& cs, int backstop_voter,
                           bool essential_mode = false) {
  if (!cs.validated_mwcs())
    throw std::invalid_argument("coalition set has not passed validate_mwcs");
  if (backstop_voter < 1 || backstop_voter > cs.n())
    throw std::invalid_argument("backstop voter out of range");
  const Coalition backstop = Coalition::singleton(cs.n(), backstop_voter);
  std::vector<Coalition> kept, dropped;
  for (const Coalition& c : cs.members())
    (c.contains(backstop_voter) ? dropped : kept).push_back(c);
  return Alg1State{cs.n(),
                   backstop,
                   {},
                   CoalitionSet(cs.n(), std::move(kept)),
                   CoalitionSet(cs.n(), std::move(dropped)),
                   {},
                   essential_mode};
}

namespace detail {

/// Coalitions discarded at iterations 2..k-1, i.e. D_{k-1} minus D_1.
inline std::vector<Coalition> late_discards(const Alg1State& st) {
  std::vector<Coalition> out;
  for (const auto& batch : st.discard_batches)
    out.insert(out.end(), batch.begin(), batch.end());
  return out;
}

}  // namespace detail

/// All subsets eligible as the next N_k: size >= 2, proper subset of a
/// remaining coalition, meeting every discarded coalition, kept only if
/// inclusion-minimal among such subsets (the proviso).  In essential mode,
/// from the third iteration on, a candidate must additionally not be
/// contained in any coalition discarded after the backstop step.
/// An empty result signals termination.
inline std::vector<Coalition> candidate_subsets(const Alg1State& st) {
  std::set<std::uint64_t> satisfying;
  for (const Coalition& c : st.remaining.members()) {
    // Proper submasks of c; criterion (ii) bounds the search space.
    for (std::uint64_t sub = (c.mask() - 1) & c.mask(); sub;
         sub = (sub - 1) & c.mask()) {
      if (std::popcount(sub) < 2) continue;
      if (satisfying.count(sub)) continue;
      if (st.discarded.meets_all_members(Coalition(st.n, sub)))
        satisfying.insert(sub);
    }
  }
  // Proviso: drop proper supersets of another satisfying subset.
  std::vector<Coalition> minimal;
  for (std::uint64_t m : satisfying) {
    bool is_minimal = true;
    for (std::uint64_t other : satisfying)
      if (other != m && (other & ~m) == 0) {
        is_minimal = false;
        break;
      }
    if (is_minimal) minimal.emplace_back(st.n, m);
  }
  if (st.essential_mode && st.next_iteration() >= 3) {
    const std::vector<Coalition> excluded = detail::late_discards(st);
    std::erase_if(minimal, [&](const Coalition& cand) {
      return std::any_of(excluded.begin(), excluded.end(),
                         [&](const Coalition& c) { return cand.subset_of(c); });
    });
  }
  std::sort(minimal.begin(), minimal.end(), CanonicalCoalitionLess{});
  return minimal;
}

/// Advances the state by accepting `chosen` as N_k.  The caller is
/// responsible for having drawn it from candidate_subsets.
inline Alg1State alg1_step(const Alg1State& st, const Coalition& chosen) {
  std::vector<Coalition> batch, kept;
  for (const Coalition& c : st.remaining.members())
    (chosen.proper_subset_of(c) ? batch : kept).push_back(c);
  if (batch.empty())
    throw std::invalid_argument("subset discards nothing; criterion (ii) violated");
  Alg1State next = st;
  next.chosen.push_back(chosen);
  next.remaining = CoalitionSet(st.n, std::move(kept));
  next.discarded = st.discarded.with_members_added(batch);
  next.discard_batches.push_back(std::move(batch));
  return next;
}

struct Alg1Iteration {
  int k;
  Coalition chosen;                 // N_k
  std::vector<Coalition> removed;   // E_k
  CoalitionSet remaining;           // C_k
  CoalitionSet discarded;           // D_k
};

struct Alg1Trace {
  int backstop_voter;
  CoalitionSet initial_remaining;   // C_1
  CoalitionSet initial_discarded;   // D_1
  std::vector<Alg1Iteration> iterations;
  std::vector<Coalition> leftovers;  // C* in output order
  int stop_iteration = 0;            // k*
};

struct Alg1Result {
  SubsetSequence sequence;
  Alg1Trace trace;
};

namespace detail {

inline std::string explain_script_rejection(const Alg1State& st, const Coalition& c) {
  if (c.size() < 2) return "criterion (i): subset has fewer than two voters";
  bool proper = false;
  for (const Coalition& m : st.remaining.members())
    if (c.proper_subset_of(m)) {
      proper = true;
      break;
    }
  if (!proper)
    return "criterion (ii): subset is not a proper subset of any remaining coalition";
  for (const Coalition& d : st.discarded.members())
    if (!c.intersects(d))
      return "criterion (iii): subset misses discarded coalition " + d.to_string();
  if (st.essential_mode && st.next_iteration() >= 3)
    for (const Coalition& e : late_discards(st))
      if (c.subset_of(e))
        return "criterion (iv): subset is contained in previously discarded " +
               e.to_string();
  return "proviso: a smaller subset satisfying criteria (i)-(iii) exists";
}

}  // namespace detail

/// Runs the coalition-set-to-sequence transformation.  The output is the
/// leftover coalitions C* (canonical order unless scripted otherwise)
/// followed by the accepted subsets in reverse order of choice and the
/// backstop singleton.
inline Alg1Result run_alg1(const CoalitionSet& cs, const SelectionPolicy& policy) {
  const bool scripted = policy.mode == SelectionPolicy::Mode::scripted;
  if (scripted && !policy.script)
    throw std::invalid_argument("scripted policy without a script");

  std::mt19937_64 rng(policy.seed);
  int backstop = 1;
  switch (policy.mode) {
    case SelectionPolicy::Mode::lexicographic: backstop = 1; break;
    case SelectionPolicy::Mode::seeded_random:
      backstop = static_cast<int>(
          std::uniform_int_distribution<int>(1, cs.n())(rng));
      break;
    case SelectionPolicy::Mode::scripted: backstop = policy.script->backstop; break;
  }

  Alg1State state = alg1_init(cs, backstop, policy.essential_mode);
  Alg1Trace trace{backstop, state.remaining, state.discarded, {}, {}, 0};

  std::size_t script_used = 0;
  for (;;) {
    const std::vector<Coalition> candidates = candidate_subsets(state);
    if (candidates.empty()) {
      if (scripted && script_used < policy.script->choices.size())
        throw ScriptError(
            "script supplies subset " +
            policy.script->choices[script_used].to_string() + " for iteration " +
            std::to_string(state.next_iteration()) +
            " but no subset satisfies the criteria; " +
            detail::explain_script_rejection(state,
                                             policy.script->choices[script_used]));
      break;
    }
    Coalition chosen = candidates.front();
    switch (policy.mode) {
      case SelectionPolicy::Mode::lexicographic:
        break;
      case SelectionPolicy::Mode::seeded_random:
        chosen = candidates[std::uniform_int_distribution<std::size_t>(
            0, candidates.size() - 1)(rng)];
        break;
      case SelectionPolicy::Mode::scripted: {
        if (script_used >= policy.script->choices.size())
          throw ScriptError("script exhausted at iteration " +
                            std::to_string(state.next_iteration()) +
                            " while eligible subsets remain");
        chosen = policy.script->choices[script_used++];
        if (std::find(candidates.begin(), candidates.end(), chosen) ==
            candidates.end())
          throw ScriptError("scripted subset " + chosen.to_string() +
                            " rejected at iteration " +
                            std::to_string(state.next_iteration()) + "; " +
                            detail::explain_script_rejection(state, chosen));
        break;
      }
    }
    const int k = state.next_iteration();
    state = alg1_step(state, chosen);
    trace.iterations.push_back(Alg1Iteration{k, chosen, state.discard_batches.back(),
                                             state.remaining, state.discarded});
  }
  trace.stop_iteration = state.next_iteration();

  std::vector<Coalition> leftovers = state.remaining.members();
  if (scripted && policy.script->leftover_order) {
    const auto& order = *policy.script->leftover_order;
    std::vector<Coalition> sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end(), CanonicalCoalitionLess{});
    if (sorted_order != leftovers)
      throw ScriptError("scripted leftover order is not a permutation of C*");
    leftovers = order;
  }
  trace.leftovers = leftovers;

  std::vector<Coalition> sets = leftovers;
  for (auto it = state.chosen.rbegin(); it != state.chosen.rend(); ++it)
    sets.push_back(*it);
  sets.push_back(state.backstop);
  SubsetSequence sequence(cs.n(), std::move(sets));
  if (!validate_sequence(sequence).ok())
    throw std::logic_error("transformation produced an invalid sequence");
  return Alg1Result{std::move(sequence), std::move(trace)};
}

struct EnumerationLimits {
  std::size_t max_sequences = 100000;
  std::size_t max_iterations = 1000000;  // DFS node expansions
};

struct Alg1Family {
  std::vector<SubsetSequence> sequences;
  bool truncated = false;
};

/// Depth-first enumeration of every sequence reachable by some choice of
/// backstop and subsets, with leftovers in canonical order.  Results are
/// deduplicated and sorted; hitting either limit sets `truncated`.
inline Alg1Family enumerate_alg1_family(const CoalitionSet& cs,
                                        const EnumerationLimits& limits = {},
                                        bool essential_mode = false) {
  if (!cs.validated_mwcs())
    throw std::invalid_argument("coalition set has not passed validate_mwcs");
  std::set<std::vector<std::uint64_t>> seen;
  Alg1Family family;
  std::size_t expansions = 0;

  auto emit = [&](const Alg1State& st) {
    std::vector<std::uint64_t> key;
    for (const Coalition& c : st.remaining.members()) key.push_back(c.mask());
    std::vector<Coalition> sets = st.remaining.members();
    for (auto it = st.chosen.rbegin(); it != st.chosen.rend(); ++it) {
      key.push_back(it->mask());
      sets.push_back(*it);
    }
    key.push_back(st.backstop.mask());
    sets.push_back(st.backstop);
    if (seen.insert(std::move(key)).second)
      family.sequences.emplace_back(st.n, std::move(sets));
  };

  auto dfs = [&](auto&& self, const Alg1State& st) -> void {
    if (family.truncated) return;
    if (++expansions > limits.max_iterations) {
      family.truncated = true;
      return;
    }
    const std::vector<Coalition> candidates = candidate_subsets(st);
    if (candidates.empty()) {
      if (family.sequences.size() >= limits.max_sequences)
        family.truncated = true;
      else
        emit(st);
      return;
    }
    for (const Coalition& c : candidates) {
      if (family.truncated) return;
      self(self, alg1_step(st, c));
    }
  };

  for (int backstop = 1; backstop <= cs.n() && !family.truncated; ++backstop)
    dfs(dfs, alg1_init(cs, backstop, essential_mode));

  std::sort(family.sequences.begin(), family.sequences.end(),
            [](const SubsetSequence& a, const SubsetSequence& b) {
              const auto& sa = a.sets();
              const auto& sb = b.sets();
              return std::lexicographical_compare(
                  sa.begin(), sa.end(), sb.begin(), sb.end(),
                  [](const Coalition& x, const Coalition& y) {
                    return x.mask() < y.mask();
                  });
            });
  return family;
}

}  // namespace binvote
