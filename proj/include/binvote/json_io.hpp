#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "binvote/coalition_set.hpp"
#include "binvote/subset_sequence.hpp"

namespace binvote {

inline constexpr int kSchemaVersion = 1;

/// Input document rejected; `where` names the offending field, e.g.
/// "coalitions[3][1]".
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct GameDocument {
  int schema_version = kSchemaVersion;
  int n = 0;
  std::vector<std::vector<int>> coalitions;
};

struct SequenceDocument {
  int schema_version = kSchemaVersion;
  int n = 0;
  std::vector<std::vector<int>> sequence;
};

namespace detail {

inline int read_int_field(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw DocumentError(key, "missing field");
  if (!j.at(key).is_number_integer()) throw DocumentError(key, "expected an integer");
  return j.at(key).get<int>();
}

inline std::vector<std::vector<int>> read_subset_lists(const nlohmann::json& j,
                                                       const std::string& key) {
  if (!j.contains(key)) throw DocumentError(key, "missing field");
  const nlohmann::json& lists = j.at(key);
  if (!lists.is_array()) throw DocumentError(key, "expected an array");
  std::vector<std::vector<int>> out;
  out.reserve(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!lists[i].is_array()) throw DocumentError(where, "expected an array");
    std::vector<int> voters;
    voters.reserve(lists[i].size());
    for (std::size_t v = 0; v < lists[i].size(); ++v) {
      if (!lists[i][v].is_number_integer())
        throw DocumentError(where + "[" + std::to_string(v) + "]",
                            "expected a voter index");
      voters.push_back(lists[i][v].get<int>());
    }
    out.push_back(std::move(voters));
  }
  return out;
}

inline void check_header(const nlohmann::json& j) {
  if (!j.is_object()) throw DocumentError("$", "expected a JSON object");
  const int version = read_int_field(j, "schema_version");
  if (version != kSchemaVersion)
    throw DocumentError("schema_version",
                        "unsupported version " + std::to_string(version));
  const int n = read_int_field(j, "n");
  if (n < 1 || n > kMaxVoters)
    throw DocumentError("n", "population must be in 1..64");
}

}  // namespace detail

inline bool looks_like_game(const nlohmann::json& j) {
  return j.is_object() && j.contains("coalitions");
}
inline bool looks_like_sequence(const nlohmann::json& j) {
  return j.is_object() && j.contains("sequence");
}

inline GameDocument parse_game_document(const nlohmann::json& j) {
  detail::check_header(j);
  GameDocument doc;
  doc.schema_version = j.at("schema_version").get<int>();
  doc.n = j.at("n").get<int>();
  doc.coalitions = detail::read_subset_lists(j, "coalitions");
  return doc;
}

inline SequenceDocument parse_sequence_document(const nlohmann::json& j) {
  detail::check_header(j);
  SequenceDocument doc;
  doc.schema_version = j.at("schema_version").get<int>();
  doc.n = j.at("n").get<int>();
  doc.sequence = detail::read_subset_lists(j, "sequence");
  return doc;
}

/// Converts the document to a canonical coalition set, re-annotating any
/// range/emptiness error with its document position.
inline CoalitionSet to_coalition_set(const GameDocument& doc) {
  std::vector<Coalition> members;
  members.reserve(doc.coalitions.size());
  for (std::size_t i = 0; i < doc.coalitions.size(); ++i) {
    const std::string where = "coalitions[" + std::to_string(i) + "]";
    if (doc.coalitions[i].empty()) throw DocumentError(where, "empty coalition");
    try {
      members.push_back(Coalition::from_voters(doc.n, doc.coalitions[i]));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where, e.what());
    }
  }
  if (members.empty()) throw DocumentError("coalitions", "empty coalition list");
  return CoalitionSet(doc.n, std::move(members));
}

/// Converts the document to a subset sequence candidate; rule-level
/// validity is reported separately by validate_sequence.
inline SubsetSequence to_subset_sequence(const SequenceDocument& doc) {
  std::vector<Coalition> sets;
  sets.reserve(doc.sequence.size());
  for (std::size_t i = 0; i < doc.sequence.size(); ++i) {
    const std::string where = "sequence[" + std::to_string(i) + "]";
    try {
      sets.push_back(Coalition::from_voters(doc.n, doc.sequence[i]));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where, e.what());
    }
  }
  if (sets.empty()) throw DocumentError("sequence", "empty sequence");
  return SubsetSequence(doc.n, std::move(sets));
}

inline nlohmann::ordered_json coalition_to_json(const Coalition& c) {
  return nlohmann::ordered_json(c.voters());
}

inline nlohmann::ordered_json game_to_json(const CoalitionSet& cs) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = cs.n();
  nlohmann::ordered_json lists = nlohmann::ordered_json::array();
  for (const Coalition& c : cs.members()) lists.push_back(coalition_to_json(c));
  j["coalitions"] = std::move(lists);
  return j;
}

inline nlohmann::ordered_json sequence_to_json(const SubsetSequence& seq) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = seq.n();
  nlohmann::ordered_json lists = nlohmann::ordered_json::array();
  for (const Coalition& s : seq.sets()) lists.push_back(coalition_to_json(s));
  j["sequence"] = std::move(lists);
  return j;
}

inline std::string dump_document(const nlohmann::ordered_json& j) {
  return j.dump(2) + "\n";
}

}  // namespace binvote
