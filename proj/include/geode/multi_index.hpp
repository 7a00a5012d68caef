#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geode {

// A list (m_1, ..., m_k) of non-negative exponents, k >= 1.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  // All-zero index with k entries.
  static MultiIndex zero(std::size_t k);

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  std::span<const int> exponents() const { return e_; }

  // m_1 + ... + m_k
  int total() const;
  // 1*m_1 + 2*m_2 + ... + k*m_k, the "V" in the hyper-Catalan formula.
  int weight() const;

  // m + delta * e_axis (axis is 0-based); nullopt if an entry goes negative.
  std::optional<MultiIndex> shifted(std::size_t axis, int delta) const;

  std::string to_string() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> e_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const noexcept;
};

// Calls fn(exponents) for every composition of n into k non-negative parts,
// in decreasing lexicographic order (n,0,...,0) first.
void for_each_composition(int n, std::size_t k,
                          const std::function<void(std::span<const int>)>& fn);

std::vector<MultiIndex> compositions(int n, std::size_t k);

// binom(n + k - 1, k - 1) as a saturating 64-bit count.
std::size_t composition_count(int n, std::size_t k);

}  // namespace geode
