#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "binvote/binvote.hpp"
#include "fixtures.hpp"

using namespace binvote;
using fixtures::co;

TEST_CASE("path enumeration on the six-set example") {
  const std::vector<Coalition> sets = fixtures::example3_sets();
  const std::vector<Path> paths = enumerate_paths(sets, 1, 6);

  const std::vector<std::vector<int>> expected = {
      {1, 6},       {1, 7, 2},    {1, 7, 5},    {1, 7, 6},
      {2, 6},       {2, 7},       {3, 6, 1},    {3, 6, 2},
      {3, 6, 4},    {3, 7, 1, 2}, {3, 7, 1, 5}, {3, 7, 1, 6},
      {3, 7, 2},    {3, 7, 4, 2}, {3, 7, 4, 5}, {3, 7, 4, 6}};
  REQUIRE(paths.size() == expected.size());
  std::set<std::vector<int>> got, want(expected.begin(), expected.end());
  for (const Path& p : paths) got.insert(p.voters);
  CHECK(got == want);
  // Ascending choice order makes the listing itself deterministic.
  for (std::size_t i = 0; i < paths.size(); ++i) CHECK(paths[i].voters == expected[i]);
}

TEST_CASE("path enumeration edge cases") {
  SECTION("disjoint pair window") {
    const std::vector<Coalition> sets = {co(4, {1, 2}), co(4, {3, 4})};
    const std::vector<Path> paths = enumerate_paths(sets, 1, 2);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].voters == std::vector<int>{1});
    CHECK(paths[1].voters == std::vector<int>{2});
  }
  SECTION("source intersecting target: no paths") {
    const std::vector<Coalition> sets = {co(3, {1, 3}), co(3, {3})};
    CHECK(enumerate_paths(sets, 1, 2).empty());
  }
  SECTION("interior windows are allowed") {
    const std::vector<Coalition> sets = fixtures::example3_sets();
    const std::vector<Path> paths = enumerate_paths(sets, 2, 4);
    for (const Path& p : paths) {
      CHECK(p.source == 2);
      CHECK(p.target == 4);
    }
    CHECK_FALSE(paths.empty());
  }
  SECTION("bad window bounds") {
    const std::vector<Coalition> sets = {co(3, {1}), co(3, {2})};
    CHECK_THROWS_AS(enumerate_paths(sets, 2, 2, 10), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_paths(sets, 1, 3, 10), std::invalid_argument);
  }
  SECTION("path limit") {
    // Ten pairwise-disjoint two-voter sets before a distant target: 2^10
    // paths exceed a tight limit.
    std::vector<Coalition> sets;
    for (int i = 0; i < 10; ++i) sets.push_back(co(21, {2 * i + 1, 2 * i + 2}));
    sets.push_back(co(21, {21}));
    CHECK_THROWS_AS(enumerate_paths(sets, 1, 11, 100), PathLimitError);
  }
}

TEST_CASE("sequence-to-coalitions golden runs") {
  const CoalitionSet jm = fixtures::validated(fixtures::job_market());

  SECTION("the disjoint sequence rebuilds the panel set") {
    const Alg2Result result = run_alg2(fixtures::s1());
    CHECK(result.coalitions == jm);
    CHECK(result.coalitions.validated_mwcs());
  }

  SECTION("the overlapping sequence rebuilds it too, with documented pruning") {
    const Alg2Result result = run_alg2(fixtures::s2());
    CHECK(result.coalitions == jm);

    REQUIRE(result.trace.iterations.size() == 4);
    const Alg2Iteration& last = result.trace.iterations.back();
    CHECK(last.k == 5);
    const auto contains = [](const std::vector<Coalition>& list, const Coalition& c) {
      return std::find(list.begin(), list.end(), c) != list.end();
    };
    CHECK(contains(last.pruned, co(7, {1, 3, 4, 5})));
    CHECK(contains(last.pruned, co(7, {1, 3, 4, 7})));
    CHECK(contains(last.pruned, co(7, {2, 3, 4, 5})));
    CHECK(contains(last.pruned, co(7, {2, 3, 4, 7})));
    CHECK(last.pruned.size() == 4);
    CHECK(contains(last.duplicates, co(7, {2, 4, 5, 7})));
    CHECK(contains(last.duplicates, co(7, {1, 4, 5, 7})));
  }

  SECTION("dictatorship") {
    const Alg2Result result = run_alg2(SubsetSequence::from_lists(1, {{1}}));
    CHECK(result.coalitions == make_coalition_set(1, {{1}}));
  }

  SECTION("invalid sequences are rejected") {
    CHECK_THROWS_AS(run_alg2(SubsetSequence::from_lists(3, {{1, 3}, {3}})),
                    std::invalid_argument);
  }
}

TEST_CASE("every output is an M-winning coalition set") {
  std::mt19937_64 rng(60601);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 10)(rng);
    const SubsetSequence seq = fixtures::random_valid_sequence(rng, n);
    const Alg2Result result = run_alg2(seq);
    CHECK(result.coalitions.validated_mwcs());
    const auto& members = result.coalitions.members();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        REQUIRE(members[i].intersects(members[j]));
  }
}

TEST_CASE("output rule equals input rule on every profile") {
  std::mt19937_64 rng(112358);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const SubsetSequence seq = fixtures::random_valid_sequence(rng, n);
    const Alg2Result result = run_alg2(seq);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const StrictProfile p(n, idx);
      REQUIRE(evaluate_su_rule(seq, p).value ==
              evaluate_mwc_rule(result.coalitions, p).value);
    }
  }
}

TEST_CASE("round trip: sequence of a game maps back to the same game") {
  SECTION("paper instances") {
    CoalitionSet jm = fixtures::validated(fixtures::job_market());
    CHECK(run_alg2(fixtures::s1()).coalitions == jm);
    CHECK(run_alg2(fixtures::s2()).coalitions == jm);
    CHECK(run_alg2(fixtures::s3()).coalitions == jm);

    CoalitionSet c2 = fixtures::validated(fixtures::c2_nonweighted());
    SelectionPolicy::Script script;
    script.backstop = 8;
    script.choices = {co(8, {1, 3}), co(8, {1, 2}), co(8, {2, 5, 6})};
    const Alg1Result forward = run_alg1(c2, SelectionPolicy::scripted(script));
    CHECK(run_alg2(forward.sequence).coalitions == c2);
  }

  SECTION("randomized games, mixed policies") {
    std::mt19937_64 rng(314159);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 8)(rng);
      CoalitionSet cs = fixtures::random_strong_game(rng, n);
      REQUIRE(validate_mwcs(cs).ok());
      const SelectionPolicy policy = trial % 3 == 0
                                         ? SelectionPolicy::lex(trial % 2)
                                         : SelectionPolicy::seeded(rng(), trial % 2);
      const Alg1Result forward = run_alg1(cs, policy);
      REQUIRE(run_alg2(forward.sequence).coalitions == cs);
    }
  }
}
