#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "binvote/coalition.hpp"

namespace binvote {

/// Candidate a, candidate b, or the tie/indifference value 0.
enum class Choice : unsigned char { a, b, tie };

inline char to_char(Choice c) {
  switch (c) {
    case Choice::a: return 'a';
    case Choice::b: return 'b';
    case Choice::tie: return '0';
  }
  return '?';
}

inline Choice choice_from_char(char c) {
  switch (c) {
    case 'a': return Choice::a;
    case 'b': return Choice::b;
    case '0': return Choice::tie;
  }
  throw std::invalid_argument(std::string("bad ballot character '") + c + "'");
}

/// The candidate swap a<->b; the tie value is fixed.
inline Choice flipped(Choice c) {
  if (c == Choice::a) return Choice::b;
  if (c == Choice::b) return Choice::a;
  return Choice::tie;
}

/// A profile of strict ballots, one of {a,b} per voter.  Encoded as a bit
/// mask with bit i-1 set when voter i prefers b, so profile index m in
/// [0, 2^n) enumerates the domain canonically with voter 1 least
/// significant (index 0 is the all-a profile).
class StrictProfile {
 public:
  StrictProfile(int n, std::uint64_t b_mask) : n_(n), b_mask_(b_mask) {
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("population size must be in 1..64");
    if (b_mask & ~full_mask(n))
      throw std::invalid_argument("profile mask has voters outside 1..n");
  }

  static StrictProfile from_index(int n, std::uint64_t index) {
    return StrictProfile(n, index);
  }

  static StrictProfile from_string(std::string_view s) {
    const int n = static_cast<int>(s.size());
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("profile length must be in 1..64");
    std::uint64_t b = 0;
    for (int i = 0; i < n; ++i) {
      const Choice c = choice_from_char(s[static_cast<std::size_t>(i)]);
      if (c == Choice::tie)
        throw std::invalid_argument("strict profile cannot contain '0'");
      if (c == Choice::b) b |= std::uint64_t{1} << i;
    }
    return StrictProfile(n, b);
  }

  int n() const { return n_; }
  std::uint64_t index() const { return b_mask_; }

  Choice ballot(int voter) const {
    return (b_mask_ >> (voter - 1)) & 1 ? Choice::b : Choice::a;
  }

  /// Voters preferring the given candidate, as a coalition.
  Coalition supporters(Choice c) const {
    if (c == Choice::b) return Coalition(n_, b_mask_);
    if (c == Choice::a) return Coalition(n_, full_mask(n_) & ~b_mask_);
    throw std::invalid_argument("strict profiles have no tie supporters");
  }

  StrictProfile with_ballot(int voter, Choice c) const {
    if (voter < 1 || voter > n_) throw std::invalid_argument("voter out of range");
    if (c == Choice::tie)
      throw std::invalid_argument("strict profile cannot contain '0'");
    const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
    return StrictProfile(n_, c == Choice::b ? b_mask_ | bit : b_mask_ & ~bit);
  }

  StrictProfile flipped_all() const {
    return StrictProfile(n_, full_mask(n_) & ~b_mask_);
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), 'a');
    for (int i = 1; i <= n_; ++i) s[static_cast<std::size_t>(i - 1)] = to_char(ballot(i));
    return s;
  }

  bool operator==(const StrictProfile& o) const {
    return n_ == o.n_ && b_mask_ == o.b_mask_;
  }

 private:
  int n_;
  std::uint64_t b_mask_;
};

/// A full-domain profile: each ballot is a, b, or 0 (indifferent).
/// Canonical enumeration is base 3 with voter 1 least significant and
/// digit values 0 -> a, 1 -> b, 2 -> 0.
class TernaryProfile {
 public:
  TernaryProfile(int n, std::uint64_t a_mask, std::uint64_t b_mask)
      : n_(n), a_mask_(a_mask), b_mask_(b_mask) {
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("population size must be in 1..64");
    if ((a_mask | b_mask) & ~full_mask(n))
      throw std::invalid_argument("profile mask has voters outside 1..n");
    if (a_mask & b_mask)
      throw std::invalid_argument("a voter cannot strictly prefer both candidates");
  }

  static TernaryProfile from_index(int n, std::uint64_t index) {
    std::uint64_t a = 0, b = 0;
    for (int i = 0; i < n; ++i) {
      switch (index % 3) {
        case 0: a |= std::uint64_t{1} << i; break;
        case 1: b |= std::uint64_t{1} << i; break;
        default: break;
      }
      index /= 3;
    }
    if (index != 0) throw std::invalid_argument("ternary profile index out of range");
    return TernaryProfile(n, a, b);
  }

  static TernaryProfile from_string(std::string_view s) {
    const int n = static_cast<int>(s.size());
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("profile length must be in 1..64");
    std::uint64_t a = 0, b = 0;
    for (int i = 0; i < n; ++i) {
      switch (choice_from_char(s[static_cast<std::size_t>(i)])) {
        case Choice::a: a |= std::uint64_t{1} << i; break;
        case Choice::b: b |= std::uint64_t{1} << i; break;
        case Choice::tie: break;
      }
    }
    return TernaryProfile(n, a, b);
  }

  static TernaryProfile from_strict(const StrictProfile& p) {
    const std::uint64_t b = p.index();
    return TernaryProfile(p.n(), full_mask(p.n()) & ~b, b);
  }

  int n() const { return n_; }
  std::uint64_t strict_a_mask() const { return a_mask_; }
  std::uint64_t strict_b_mask() const { return b_mask_; }
  bool all_strict() const { return (a_mask_ | b_mask_) == full_mask(n_); }

  Choice ballot(int voter) const {
    const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
    if (a_mask_ & bit) return Choice::a;
    if (b_mask_ & bit) return Choice::b;
    return Choice::tie;
  }

  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      idx = idx * 3 + ((a_mask_ & bit) ? 0 : (b_mask_ & bit) ? 1 : 2);
    }
    return idx;
  }

  TernaryProfile with_ballot(int voter, Choice c) const {
    if (voter < 1 || voter > n_) throw std::invalid_argument("voter out of range");
    const std::uint64_t bit = std::uint64_t{1} << (voter - 1);
    std::uint64_t a = a_mask_ & ~bit, b = b_mask_ & ~bit;
    if (c == Choice::a) a |= bit;
    if (c == Choice::b) b |= bit;
    return TernaryProfile(n_, a, b);
  }

  /// Applies the neutrality permutation a<->b (0 stays fixed).
  TernaryProfile flipped_all() const { return TernaryProfile(n_, b_mask_, a_mask_); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 1; i <= n_; ++i) s[static_cast<std::size_t>(i - 1)] = to_char(ballot(i));
    return s;
  }

  bool operator==(const TernaryProfile& o) const {
    return n_ == o.n_ && a_mask_ == o.a_mask_ && b_mask_ == o.b_mask_;
  }

 private:
  int n_;
  std::uint64_t a_mask_;
  std::uint64_t b_mask_;
};

/// Rule output plus the evaluation trace: which set was decisive (1-based
/// sequence index), which coalition witnessed the outcome, and whether a
/// full-domain default rule produced the value.
struct Outcome {
  Choice value;
  std::optional<int> decisive_index;
  std::optional<Coalition> witness;
  bool via_default = false;
};

}  // namespace binvote
