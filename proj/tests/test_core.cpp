#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "binvote/binvote.hpp"
#include "fixtures.hpp"

using namespace binvote;

TEST_CASE("coalition construction and canonical order") {
  const Coalition c = Coalition::from_voters(7, {4, 1, 3});
  CHECK(c.mask() == 0b0001101);
  CHECK(c.size() == 3);
  CHECK(c.voters() == std::vector<int>{1, 3, 4});
  CHECK(c.to_string() == "{1,3,4}");
  CHECK(c.contains(3));
  CHECK_FALSE(c.contains(2));

  CHECK(canonical_less(Coalition::from_voters(7, {1, 2}), c));        // smaller first
  CHECK(canonical_less(c, Coalition::from_voters(7, {2, 3, 4})));     // then by mask

  CHECK_THROWS_AS(Coalition::from_voters(3, {4}), std::invalid_argument);
  CHECK_THROWS_AS(Coalition(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Coalition(65, 0), std::invalid_argument);
}

TEST_CASE("make_coalition_set canonicalizes and rejects bad input") {
  SECTION("all 5-subsets of 9 voters") {
    const CoalitionSet c1 = fixtures::c1_majority_five_of_nine();
    CHECK(c1.size() == 126);
  }
  SECTION("duplicates collapse") {
    const CoalitionSet cs = make_coalition_set(3, {{1}, {1}});
    REQUIRE(cs.size() == 1);
    CHECK(cs.members()[0] == Coalition::singleton(3, 1));
  }
  SECTION("the fifteen intro coalitions canonicalize to fifteen") {
    const CoalitionSet cs = fixtures::job_market();
    CHECK(cs.size() == 15);
    CHECK(cs.members().front() == Coalition::from_voters(7, {1, 2}));
  }
  SECTION("errors") {
    CHECK_THROWS_AS(make_coalition_set(3, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(make_coalition_set(3, {{4}}), std::invalid_argument);
    CHECK_THROWS_AS(make_coalition_set(0, {{1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_coalition_set(65, {{1}}), std::invalid_argument);
  }
}

TEST_CASE("check_minimality") {
  CHECK_FALSE(check_minimality(fixtures::c1_majority_five_of_nine()).has_value());

  const auto violation = check_minimality(make_coalition_set(2, {{1}, {1, 2}}));
  REQUIRE(violation.has_value());
  CHECK(violation->inner == Coalition::singleton(2, 1));
  CHECK(violation->outer == Coalition::from_voters(2, {1, 2}));

  // The nesting Algorithm 2 prunes away mid-run.
  const auto nested = check_minimality(make_coalition_set(7, {{1, 3, 4}, {1, 5, 3, 4}}));
  REQUIRE(nested.has_value());
  CHECK(nested->inner == Coalition::from_voters(7, {1, 3, 4}));
  CHECK(nested->outer == Coalition::from_voters(7, {1, 3, 4, 5}));
}

TEST_CASE("check_moulin_property") {
  SECTION("the non-weighted eight-voter game passes") {
    CHECK_FALSE(check_moulin_property(fixtures::c2_nonweighted()).has_value());
  }
  SECTION("disjoint singletons fail, witness in ascending mask order") {
    const auto witness = check_moulin_property(make_coalition_set(2, {{1}, {2}}));
    REQUIRE(witness.has_value());
    CHECK(*witness == Coalition::singleton(2, 1));
  }
  SECTION("a lone pair on three voters fails via a blocking subset") {
    const auto witness = check_moulin_property(make_coalition_set(3, {{1, 2}}));
    REQUIRE(witness.has_value());
    // {1,3} and {2,3} meet {1,2} but contain no member; {1,3} scans first.
    CHECK(*witness == Coalition::from_voters(3, {1, 3}));
  }
  SECTION("bound gate") {
    CoalitionSet big = make_coalition_set(21, {{1}});
    CHECK_THROWS_AS(check_moulin_property(big), BoundError);
    CHECK_FALSE(check_moulin_property(big, MoulinMethod::direct, 21).has_value());
  }
}

TEST_CASE("validate_mwcs stamps the flag only on pass") {
  CoalitionSet jm = fixtures::job_market();
  CHECK_FALSE(jm.validated_mwcs());
  CHECK(validate_mwcs(jm).ok());
  CHECK(jm.validated_mwcs());

  CoalitionSet c1 = fixtures::c1_majority_five_of_nine();
  CHECK(validate_mwcs(c1).ok());

  CoalitionSet bad = make_coalition_set(2, {{1}, {1, 2}});
  const MwcsReport report = validate_mwcs(bad);
  CHECK_FALSE(report.ok());
  CHECK(report.p1_violation.has_value());
  CHECK_FALSE(bad.validated_mwcs());
}

TEST_CASE("validate_sequence") {
  CHECK(validate_sequence(fixtures::s1()).ok());

  const auto recurring = validate_sequence(
      SubsetSequence::from_lists(3, {{1, 2}, {1, 2}, {3}}));
  REQUIRE(recurring.violations.size() == 1);
  CHECK(recurring.violations[0].kind == SequenceViolationKind::recurring_set);
  CHECK(recurring.violations[0].index == 2);

  const auto reappears =
      validate_sequence(SubsetSequence::from_lists(3, {{1, 3}, {3}}));
  REQUIRE(reappears.violations.size() == 1);
  CHECK(reappears.violations[0].kind == SequenceViolationKind::backstop_reappears);
  CHECK(reappears.violations[0].index == 1);

  const auto not_singleton =
      validate_sequence(SubsetSequence::from_lists(3, {{1}, {2, 3}}));
  REQUIRE(not_singleton.violations.size() == 1);
  CHECK(not_singleton.violations[0].kind ==
        SequenceViolationKind::last_not_singleton);

  const auto empty = validate_sequence(SubsetSequence(3, {Coalition::empty(3),
                                                          Coalition::singleton(3, 1)}));
  CHECK_FALSE(empty.ok());
  CHECK(empty.violations[0].kind == SequenceViolationKind::empty_set);
}

TEST_CASE("evaluate_mwc_rule on the hiring panel") {
  CoalitionSet jm = fixtures::validated(fixtures::job_market());

  // Voters 1 and 2 prefer a: the senior pair decides.
  const Outcome both_seniors = evaluate_mwc_rule(jm, StrictProfile::from_string("aabbbbb"));
  CHECK(both_seniors.value == Choice::a);
  REQUIRE(both_seniors.witness.has_value());
  CHECK(*both_seniors.witness == Coalition::from_voters(7, {1, 2}));

  // Voters 1,3,5,6 prefer b, the rest a.
  const Outcome mixed = evaluate_mwc_rule(jm, StrictProfile::from_string("bababba"));
  CHECK(mixed.value == Choice::b);

  const Outcome unanimous = evaluate_mwc_rule(jm, StrictProfile(7, 0));
  CHECK(unanimous.value == Choice::a);

  CoalitionSet unvalidated = fixtures::job_market();
  CHECK_THROWS_AS(evaluate_mwc_rule(unvalidated, StrictProfile(7, 0)),
                  std::invalid_argument);
}

TEST_CASE("evaluate_su_rule follows the first unanimous set") {
  const SubsetSequence s1 = fixtures::s1();

  const Outcome second_set = evaluate_su_rule(s1, StrictProfile::from_string("abaaabb"));
  CHECK(second_set.value == Choice::a);
  CHECK(second_set.decisive_index == 2);

  const Outcome backstop = evaluate_su_rule(s1, StrictProfile::from_string("ababbab"));
  CHECK(backstop.value == Choice::b);
  CHECK(backstop.decisive_index == 4);

  const Outcome unanimous = evaluate_su_rule(s1, StrictProfile(7, full_mask(7)));
  CHECK(unanimous.value == Choice::b);
  CHECK(unanimous.decisive_index == 1);
}

TEST_CASE("well-definedness: exactly one candidate has a unanimous coalition") {
  std::mt19937_64 rng(20240401);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 7)(rng);
    CoalitionSet cs = fixtures::random_strong_game(rng, n);
    REQUIRE(validate_mwcs(cs).ok());
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const StrictProfile profile(n, idx);
      int unanimous_candidates = 0;
      for (Choice x : {Choice::a, Choice::b}) {
        const Coalition backers = profile.supporters(x);
        bool found = false;
        for (const Coalition& c : cs.members())
          if (c.subset_of(backers)) {
            found = true;
            break;
          }
        unanimous_candidates += found ? 1 : 0;
      }
      REQUIRE(unanimous_candidates == 1);
      // And the evaluator picks that candidate without throwing.
      (void)evaluate_mwc_rule(cs, profile);
    }
  }
}

TEST_CASE("direct and dual P2 methods agree witness-for-witness") {
  std::mt19937_64 rng(991);
  int failures_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const CoalitionSet family = fixtures::random_intersecting_family(rng, n);
    if (family.empty()) continue;
    const auto direct = check_moulin_property(family, MoulinMethod::direct);
    const auto dual = check_moulin_property(family, MoulinMethod::dual);
    CHECK(direct.has_value() == dual.has_value());
    if (direct && dual) {
      CHECK(*direct == *dual);
      ++failures_seen;
    }
  }
  CHECK(failures_seen > 0);  // the generator must exercise the failing side
}

TEST_CASE("lazy consultation: no ballot read beyond the decisive set") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 9)(rng);
    const SubsetSequence seq = fixtures::random_valid_sequence(rng, n);
    const StrictProfile profile(
        n, std::uniform_int_distribution<std::uint64_t>(0, full_mask(n))(rng));
    const fixtures::CountingProfile counting(profile);
    const Outcome out = evaluate_su_rule(seq, counting);
    REQUIRE(out.decisive_index.has_value());
    std::uint64_t consulted = 0;
    for (int k = 1; k <= *out.decisive_index; ++k)
      consulted |= seq.set_at(k).mask();
    for (int voter = 1; voter <= n; ++voter) {
      if (counting.reads[static_cast<std::size_t>(voter - 1)] > 0)
        REQUIRE((consulted >> (voter - 1) & 1) == 1);
    }
  }
}

TEST_CASE("neutrality of both evaluators on paper instances") {
  CoalitionSet jm = fixtures::validated(fixtures::job_market());
  const SubsetSequence s1 = fixtures::s1();
  for (std::uint64_t idx = 0; idx < (1u << 7); ++idx) {
    const StrictProfile p(7, idx);
    CHECK(evaluate_mwc_rule(jm, p.flipped_all()).value ==
          flipped(evaluate_mwc_rule(jm, p).value));
    CHECK(evaluate_su_rule(s1, p.flipped_all()).value ==
          flipped(evaluate_su_rule(s1, p).value));
  }
}

TEST_CASE("strategy-proofness of both evaluators at small n") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    CoalitionSet cs = fixtures::random_strong_game(rng, n);
    REQUIRE(validate_mwcs(cs).ok());
    const SubsetSequence seq = fixtures::random_valid_sequence(rng, n);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const StrictProfile p(n, idx);
      const Choice cs_truth = evaluate_mwc_rule(cs, p).value;
      const Choice seq_truth = evaluate_su_rule(seq, p).value;
      for (int voter = 1; voter <= n; ++voter) {
        const Choice truth = p.ballot(voter);
        const StrictProfile lie = p.with_ballot(voter, flipped(truth));
        if (cs_truth != truth) CHECK(evaluate_mwc_rule(cs, lie).value != truth);
        if (seq_truth != truth) CHECK(evaluate_su_rule(seq, lie).value != truth);
      }
    }
  }
}
