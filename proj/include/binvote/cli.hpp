#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binvote/binvote.hpp"

namespace binvote::cli {

// Exit codes: 0 pass/equal/success, 1 semantic failure or counterexample,
// 2 input error, 3 exhaustive-scan or search bound exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBound = 3;

namespace detail {

using nlohmann::ordered_json;

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw DocumentError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json load_json(const std::string& path) {
  return nlohmann::json::parse(read_input(path));
}

inline ordered_json violation_json(const SequenceViolation& v) {
  ordered_json j;
  j["kind"] = [&] {
    switch (v.kind) {
      case SequenceViolationKind::empty_set: return "empty_set";
      case SequenceViolationKind::recurring_set: return "recurring_set";
      case SequenceViolationKind::last_not_singleton: return "last_not_singleton";
      case SequenceViolationKind::backstop_reappears: return "backstop_reappears";
    }
    return "";
  }();
  j["index"] = v.index;
  j["message"] = v.to_string();
  return j;
}

inline ordered_json coalition_list_json(const std::vector<Coalition>& cs) {
  ordered_json arr = ordered_json::array();
  for (const Coalition& c : cs) arr.push_back(coalition_to_json(c));
  return arr;
}

inline ordered_json mwcs_report_json(const MwcsReport& report) {
  ordered_json j;
  j["valid"] = report.ok();
  if (report.empty_family) j["empty_family"] = true;
  if (report.p1_violation) {
    j["p1_violation"] = {{"inner", coalition_to_json(report.p1_violation->inner)},
                         {"outer", coalition_to_json(report.p1_violation->outer)}};
  }
  if (report.p2_counterexample)
    j["p2_counterexample"] = coalition_to_json(*report.p2_counterexample);
  return j;
}

inline ordered_json outcome_json(const Outcome& o) {
  ordered_json j;
  j["outcome"] = std::string(1, to_char(o.value));
  if (o.decisive_index) j["decisive_index"] = *o.decisive_index;
  if (o.witness) j["witness"] = coalition_to_json(*o.witness);
  j["via_default"] = o.via_default;
  return j;
}

inline ordered_json alg1_trace_json(const Alg1Trace& t) {
  ordered_json j;
  j["backstop"] = t.backstop_voter;
  j["initial_remaining"] = coalition_list_json(t.initial_remaining.members());
  j["initial_discarded"] = coalition_list_json(t.initial_discarded.members());
  ordered_json iters = ordered_json::array();
  for (const Alg1Iteration& it : t.iterations) {
    ordered_json ij;
    ij["k"] = it.k;
    ij["chosen"] = coalition_to_json(it.chosen);
    ij["removed"] = coalition_list_json(it.removed);
    ij["remaining"] = coalition_list_json(it.remaining.members());
    ij["discarded"] = coalition_list_json(it.discarded.members());
    iters.push_back(std::move(ij));
  }
  j["iterations"] = std::move(iters);
  j["leftovers"] = coalition_list_json(t.leftovers);
  j["stop_iteration"] = t.stop_iteration;
  return j;
}

inline ordered_json alg2_trace_json(const Alg2Trace& t) {
  ordered_json iters = ordered_json::array();
  for (const Alg2Iteration& it : t.iterations) {
    ordered_json ij;
    ij["k"] = it.k;
    ij["path_count"] = it.path_count;
    ij["added"] = coalition_list_json(it.added);
    ij["duplicates"] = coalition_list_json(it.duplicates);
    ij["pruned"] = coalition_list_json(it.pruned);
    iters.push_back(std::move(ij));
  }
  return ordered_json{{"iterations", std::move(iters)}};
}

inline void write_output_file(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw DocumentError(path, "cannot open output file");
  out << dump_document(doc);
}

inline DefaultRule parse_default(const std::string& spec) {
  if (spec == "majority") return DefaultRule::majority();
  if (spec == "tie") return DefaultRule::constant_tie();
  if (spec.rfind("dictator:", 0) == 0) {
    const int voter = std::stoi(spec.substr(9));
    return DefaultRule::dictator(voter);
  }
  throw DocumentError("--default",
                      "expected majority, dictator:i, or tie; got '" + spec + "'");
}

struct LoadedRule {
  std::optional<CoalitionSet> game;       // validated when present
  std::optional<SubsetSequence> sequence; // validate_sequence-clean when present
};

/// Loads a game or sequence document and checks the rule-level invariants,
/// writing the failure report to `out` when invalid.
inline std::optional<LoadedRule> load_rule(const std::string& path, std::ostream& out) {
  const nlohmann::json j = load_json(path);
  LoadedRule rule;
  if (looks_like_game(j)) {
    CoalitionSet cs = to_coalition_set(parse_game_document(j));
    const MwcsReport report = validate_mwcs(cs);
    if (!report.ok()) {
      ordered_json rj = mwcs_report_json(report);
      rj["input"] = path;
      out << dump_document(rj);
      return std::nullopt;
    }
    rule.game = std::move(cs);
  } else if (looks_like_sequence(j)) {
    SubsetSequence seq = to_subset_sequence(parse_sequence_document(j));
    const SequenceReport report = validate_sequence(seq);
    if (!report.ok()) {
      ordered_json rj;
      rj["valid"] = false;
      rj["input"] = path;
      ordered_json vs = ordered_json::array();
      for (const auto& v : report.violations) vs.push_back(violation_json(v));
      rj["violations"] = std::move(vs);
      out << dump_document(rj);
      return std::nullopt;
    }
    rule.sequence = std::move(seq);
  } else {
    throw DocumentError("$", "document has neither 'coalitions' nor 'sequence'");
  }
  return rule;
}

inline SelectionPolicy parse_policy(const std::string& spec, bool essential) {
  if (spec == "lex") return SelectionPolicy::lex(essential);
  if (spec.rfind("seed=", 0) == 0)
    return SelectionPolicy::seeded(std::stoull(spec.substr(5)), essential);
  if (spec.rfind("script=", 0) == 0) {
    const nlohmann::json j = load_json(spec.substr(7));
    if (!j.is_object() || !j.contains("backstop") ||
        !j.at("backstop").is_number_integer())
      throw DocumentError("backstop", "script needs an integer backstop voter");
    SelectionPolicy::Script script;
    script.backstop = j.at("backstop").get<int>();
    const auto read_lists = [&](const char* key) {
      std::vector<std::vector<int>> lists;
      if (j.contains(key)) {
        if (!j.at(key).is_array()) throw DocumentError(key, "expected an array");
        lists = j.at(key).get<std::vector<std::vector<int>>>();
      }
      return lists;
    };
    // Population is resolved against the game later; scripts carry raw lists.
    script.choices.clear();
    for (const auto& voters : read_lists("choices"))
      script.choices.push_back(Coalition::from_voters(kMaxVoters, voters));
    const auto leftover = read_lists("leftover_order");
    if (!leftover.empty()) {
      std::vector<Coalition> order;
      for (const auto& voters : leftover)
        order.push_back(Coalition::from_voters(kMaxVoters, voters));
      script.leftover_order = std::move(order);
    }
    return SelectionPolicy::scripted(std::move(script), essential);
  }
  throw DocumentError("--policy",
                      "expected lex, seed=N, or script=FILE; got '" + spec + "'");
}

/// Script coalitions are parsed before the game's population is known;
/// rebase them onto the actual n.
inline SelectionPolicy rebase_policy(const SelectionPolicy& policy, int n) {
  if (policy.mode != SelectionPolicy::Mode::scripted) return policy;
  SelectionPolicy::Script script;
  script.backstop = policy.script->backstop;
  for (const Coalition& c : policy.script->choices)
    script.choices.push_back(Coalition::from_voters(n, c.voters()));
  if (policy.script->leftover_order) {
    std::vector<Coalition> order;
    for (const Coalition& c : *policy.script->leftover_order)
      order.push_back(Coalition::from_voters(n, c.voters()));
    script.leftover_order = std::move(order);
  }
  return SelectionPolicy::scripted(std::move(script), policy.essential_mode);
}

}  // namespace detail

/// Runs the command-line front end; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using detail::ordered_json;

  CLI::App app{"Binary voting rules: winning-coalition and sequential-unanimity "
               "families, transformations, and exhaustive verification"};
  app.require_subcommand(1);

  std::string in_path, in_path2, profile_text, out_path;
  std::string policy_spec = "lex", domain_spec = "strict", default_spec = "majority";
  bool essential_flag = false, enumerate_flag = false;
  bool check_sp = false, check_neutral = false, check_ess = false, check_trade = false;
  std::size_t max_sequences = 1000, path_limit = kDefaultPathLimit;
  int weights_max = -1;

  CLI::App* validate = app.add_subcommand(
      "validate", "Check a game or sequence document against its definition");
  validate->add_option("input", in_path, "document file or - for stdin")->required();

  CLI::App* to_seq = app.add_subcommand(
      "to-sequence", "Transform a winning-coalition game into a sequence");
  to_seq->add_option("input", in_path, "game document")->required();
  to_seq->add_option("--policy", policy_spec, "lex | seed=N | script=FILE");
  to_seq->add_flag("--essential", essential_flag,
                   "restrict choices so the output rule is essential");
  to_seq->add_flag("--enumerate", enumerate_flag, "enumerate the whole family");
  to_seq->add_option("--max", max_sequences, "family size cap for --enumerate");
  to_seq->add_option("--output", out_path, "also write the bare document here");

  CLI::App* to_coal = app.add_subcommand(
      "to-coalitions", "Transform a sequence into a winning-coalition game");
  to_coal->add_option("input", in_path, "sequence document")->required();
  to_coal->add_option("--path-limit", path_limit, "max paths per window");
  to_coal->add_option("--output", out_path, "also write the bare document here");

  CLI::App* check = app.add_subcommand(
      "check", "Verify rule properties or the equivalence of two rules");
  check->add_option("first", in_path, "rule document")->required();
  check->add_option("second", in_path2, "second rule document (equivalence mode)");
  check->add_flag("--sp", check_sp, "strategy-proofness");
  check->add_flag("--neutral", check_neutral, "neutrality");
  check->add_flag("--essential", check_ess, "essentiality (sequences)");
  check->add_flag("--trade", check_trade, "2-trade robustness (games)");
  check->add_option("--weights", weights_max, "integer-weight search bound (games)");
  check->add_option("--domain", domain_spec, "strict | ternary");
  check->add_option("--default", default_spec,
                    "majority | dictator:i | tie (ternary domain)");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a rule on one profile");
  eval->add_option("rule", in_path, "rule document")->required();
  eval->add_option("profile", profile_text, "ballot string such as abab0ba")
      ->required();
  eval->add_option("--domain", domain_spec, "strict | ternary");
  eval->add_option("--default", default_spec,
                   "majority | dictator:i | tie (ternary domain)");

  std::vector<const char*> argv;
  argv.push_back("binvote");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (domain_spec != "strict" && domain_spec != "ternary")
      throw DocumentError("--domain", "expected strict or ternary");
    const bool ternary = domain_spec == "ternary";

    if (validate->parsed()) {
      const nlohmann::json j = detail::load_json(in_path);
      if (looks_like_game(j)) {
        CoalitionSet cs = to_coalition_set(parse_game_document(j));
        const MwcsReport report = validate_mwcs(cs);
        ordered_json rj;
        rj["kind"] = "game";
        rj.update(detail::mwcs_report_json(report));
        out << dump_document(rj);
        return report.ok() ? kExitOk : kExitFail;
      }
      if (looks_like_sequence(j)) {
        const SubsetSequence seq = to_subset_sequence(parse_sequence_document(j));
        const SequenceReport report = validate_sequence(seq);
        ordered_json rj;
        rj["kind"] = "sequence";
        rj["valid"] = report.ok();
        ordered_json vs = ordered_json::array();
        for (const auto& v : report.violations)
          vs.push_back(detail::violation_json(v));
        rj["violations"] = std::move(vs);
        out << dump_document(rj);
        return report.ok() ? kExitOk : kExitFail;
      }
      throw DocumentError("$", "document has neither 'coalitions' nor 'sequence'");
    }

    if (to_seq->parsed()) {
      auto rule = detail::load_rule(in_path, out);
      if (!rule) return kExitFail;
      if (!rule->game) throw DocumentError("$", "to-sequence expects a game document");
      const CoalitionSet& cs = *rule->game;
      if (enumerate_flag) {
        const Alg1Family family = enumerate_alg1_family(
            cs, EnumerationLimits{max_sequences, 1000000}, essential_flag);
        ordered_json rj;
        ordered_json docs = ordered_json::array();
        for (const SubsetSequence& s : family.sequences)
          docs.push_back(sequence_to_json(s));
        rj["documents"] = std::move(docs);
        rj["count"] = family.sequences.size();
        rj["truncated"] = family.truncated;
        out << dump_document(rj);
        return kExitOk;
      }
      const SelectionPolicy policy = detail::rebase_policy(
          detail::parse_policy(policy_spec, essential_flag), cs.n());
      const Alg1Result result = run_alg1(cs, policy);
      ordered_json rj;
      rj["document"] = sequence_to_json(result.sequence);
      rj["trace"] = detail::alg1_trace_json(result.trace);
      out << dump_document(rj);
      if (!out_path.empty())
        detail::write_output_file(out_path, sequence_to_json(result.sequence));
      return kExitOk;
    }

    if (to_coal->parsed()) {
      auto rule = detail::load_rule(in_path, out);
      if (!rule) return kExitFail;
      if (!rule->sequence)
        throw DocumentError("$", "to-coalitions expects a sequence document");
      const Alg2Result result = run_alg2(*rule->sequence, path_limit);
      ordered_json rj;
      rj["document"] = game_to_json(result.coalitions);
      rj["trace"] = detail::alg2_trace_json(result.trace);
      out << dump_document(rj);
      if (!out_path.empty())
        detail::write_output_file(out_path, game_to_json(result.coalitions));
      return kExitOk;
    }

    if (check->parsed()) {
      const DefaultRule fallback = detail::parse_default(default_spec);
      const auto as_handle = [&](const detail::LoadedRule& r) {
        if (r.game)
          return ternary ? RuleHandle::mwc_with_default(*r.game, fallback)
                         : RuleHandle::mwc(*r.game);
        return ternary ? RuleHandle::su_with_default(*r.sequence, fallback)
                       : RuleHandle::su(*r.sequence);
      };

      if (!in_path2.empty()) {
        auto r1 = detail::load_rule(in_path, out);
        if (!r1) return kExitFail;
        auto r2 = detail::load_rule(in_path2, out);
        if (!r2) return kExitFail;
        const EquivalenceResult result =
            check_equivalence(as_handle(*r1), as_handle(*r2));
        ordered_json rj;
        rj["check"] = "equivalence";
        rj["domain"] = domain_spec;
        rj["verdict"] = result.equal() ? "equal" : "counterexample";
        if (result.counterexample) {
          rj["counterexample"] = {
              {"profile", result.counterexample->profile},
              {"first", std::string(1, to_char(result.counterexample->first))},
              {"second", std::string(1, to_char(result.counterexample->second))}};
        }
        out << dump_document(rj);
        return result.equal() ? kExitOk : kExitFail;
      }

      const int flags = int(check_sp) + int(check_neutral) + int(check_ess) +
                        int(check_trade) + int(weights_max >= 0);
      if (flags != 1)
        throw DocumentError(
            "check", "pick exactly one of --sp --neutral --essential --trade "
                     "--weights, or pass two documents for equivalence");

      auto rule = detail::load_rule(in_path, out);
      if (!rule) return kExitFail;

      ordered_json rj;
      if (check_sp || check_neutral) {
        const RuleHandle handle = as_handle(*rule);
        rj["check"] = check_sp ? "strategy_proofness" : "neutrality";
        rj["domain"] = domain_spec;
        if (check_sp) {
          const SpResult result = check_strategy_proofness(handle);
          rj["verdict"] = result.strategy_proof() ? "pass" : "counterexample";
          if (result.counterexample) {
            rj["counterexample"] = {
                {"profile", result.counterexample->profile},
                {"voter", result.counterexample->voter},
                {"misreport", std::string(1, to_char(result.counterexample->misreport))}};
          }
          out << dump_document(rj);
          return result.strategy_proof() ? kExitOk : kExitFail;
        }
        const NeutralityResult result = check_neutrality(handle);
        rj["verdict"] = result.neutral() ? "pass" : "counterexample";
        if (result.counterexample_profile)
          rj["counterexample"] = {{"profile", *result.counterexample_profile}};
        out << dump_document(rj);
        return result.neutral() ? kExitOk : kExitFail;
      }

      if (check_ess) {
        if (!rule->sequence)
          throw DocumentError("--essential", "essentiality applies to sequences");
        const EssentialityResult result = check_essential(*rule->sequence);
        rj["check"] = "essential";
        rj["verdict"] = result.essential() ? "essential" : "superfluous";
        rj["superfluous_indices"] = result.superfluous;
        rj["backstop_reached"] = result.backstop_reached;
        out << dump_document(rj);
        return result.essential() ? kExitOk : kExitFail;
      }

      if (check_trade) {
        if (!rule->game)
          throw DocumentError("--trade", "trade robustness applies to games");
        const auto cert = find_2trade_violation(*rule->game);
        rj["check"] = "trade";
        rj["verdict"] = cert ? "violation" : "none";
        if (cert) {
          rj["certificate"] = {
              {"first", coalition_to_json(cert->first)},
              {"second", coalition_to_json(cert->second)},
              {"swap", {cert->voter_from_first, cert->voter_from_second}}};
        }
        out << dump_document(rj);
        return cert ? kExitFail : kExitOk;
      }

      // --weights
      if (!rule->game)
        throw DocumentError("--weights", "weight search applies to games");
      const auto cert = find_integer_weights(*rule->game, weights_max);
      rj["check"] = "weights";
      rj["w_max"] = weights_max;
      rj["verdict"] = cert ? "certificate" : "none-within-bound";
      if (cert) {
        rj["weights"] = cert->weights;
        rj["threshold"] = cert->threshold;
      }
      out << dump_document(rj);
      return cert ? kExitOk : kExitFail;
    }

    // eval
    auto rule = detail::load_rule(in_path, out);
    if (!rule) return kExitFail;
    Outcome outcome{Choice::tie, std::nullopt, std::nullopt, false};
    if (ternary) {
      const TernaryProfile profile = TernaryProfile::from_string(profile_text);
      const DefaultRule fallback = detail::parse_default(default_spec);
      outcome = rule->game
                    ? evaluate_mwc_default(*rule->game, fallback, profile)
                    : evaluate_su_default(*rule->sequence, fallback, profile);
    } else {
      const StrictProfile profile = StrictProfile::from_string(profile_text);
      outcome = rule->game ? evaluate_mwc_rule(*rule->game, profile)
                           : evaluate_su_rule(*rule->sequence, profile);
    }
    out << dump_document(detail::outcome_json(outcome));
    return kExitOk;
  } catch (const BoundError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBound;
  } catch (const PathLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const ScriptError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::parse_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace binvote::cli
