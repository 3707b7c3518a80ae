#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace binvote {

/// Largest population representable by the bit-mask encoding.
inline constexpr int kMaxVoters = 64;

/// Exhaustive scans over all 2^n voter subsets refuse to run above this
/// population unless the caller raises the bound explicitly.
inline constexpr int kDefaultExhaustiveBound = 20;

/// Raised when an exhaustive scan or search budget would be exceeded.
class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// A subset of the voter population {1,...,n}, stored as a bit mask with
/// voter i mapped to bit i-1.  Coalitions may be empty; contexts that
/// require non-emptiness enforce it themselves.
class Coalition {
 public:
  Coalition(int n, std::uint64_t mask) : n_(n), mask_(mask) {
    if (n < 1 || n > kMaxVoters)
      throw std::invalid_argument("population size must be in 1..64");
    if (mask & ~full_mask(n))
      throw std::invalid_argument("coalition mask has voters outside 1..n");
  }

  static Coalition from_voters(int n, const std::vector<int>& voters) {
    std::uint64_t m = 0;
    for (int v : voters) {
      if (v < 1 || v > n)
        throw std::invalid_argument("voter index " + std::to_string(v) +
                                    " out of range 1.." + std::to_string(n));
      m |= std::uint64_t{1} << (v - 1);
    }
    return Coalition(n, m);
  }

  static Coalition singleton(int n, int voter) { return from_voters(n, {voter}); }
  static Coalition empty(int n) { return Coalition(n, 0); }
  static Coalition full(int n) { return Coalition(n, full_mask(n)); }

  int n() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool is_empty() const { return mask_ == 0; }
  bool is_singleton() const { return size() == 1; }

  bool contains(int voter) const {
    return voter >= 1 && voter <= n_ && (mask_ >> (voter - 1)) & 1;
  }
  bool subset_of(const Coalition& o) const { return (mask_ & ~o.mask_) == 0; }
  bool proper_subset_of(const Coalition& o) const {
    return subset_of(o) && mask_ != o.mask_;
  }
  bool intersects(const Coalition& o) const { return (mask_ & o.mask_) != 0; }

  Coalition complement() const { return Coalition(n_, full_mask(n_) & ~mask_); }
  Coalition united(const Coalition& o) const { return Coalition(n_, mask_ | o.mask_); }
  Coalition intersected(const Coalition& o) const { return Coalition(n_, mask_ & o.mask_); }
  Coalition without(int voter) const {
    return Coalition(n_, mask_ & ~(std::uint64_t{1} << (voter - 1)));
  }
  Coalition with(int voter) const {
    if (voter < 1 || voter > n_) throw std::invalid_argument("voter out of range");
    return Coalition(n_, mask_ | std::uint64_t{1} << (voter - 1));
  }

  /// Single member of a singleton coalition.
  int sole_voter() const {
    if (!is_singleton()) throw std::logic_error("coalition is not a singleton");
    return std::countr_zero(mask_) + 1;
  }

  std::vector<int> voters() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = mask_; m; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  bool operator==(const Coalition& o) const { return n_ == o.n_ && mask_ == o.mask_; }

  /// Canonical order: by (cardinality, numeric mask) ascending.
  friend bool canonical_less(const Coalition& a, const Coalition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask() < b.mask();
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : voters()) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }

 private:
  int n_;
  std::uint64_t mask_;
};

struct CanonicalCoalitionLess {
  bool operator()(const Coalition& a, const Coalition& b) const {
    return canonical_less(a, b);
  }
};

}  // namespace binvote
