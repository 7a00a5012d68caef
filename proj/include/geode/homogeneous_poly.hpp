#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "geode/bigint.hpp"

namespace geode {

// Sparse homogeneous polynomial in t_1..t_k with integer coefficients.
// Every stored exponent vector sums to degree(); zero coefficients are never
// stored. Iteration is lexicographically descending, which is graded-lex
// descending since all terms share one grade.
class HomogeneousPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, BigInt, std::greater<Exponents>>;

  HomogeneousPoly(int degree, std::size_t num_vars);

  int degree() const { return degree_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  // Coefficient at e (zero when absent). e must have num_vars() entries.
  BigInt coeff(std::span<const int> e) const;

  // Sets the coefficient; assigning zero erases the term.
  void set(std::span<const int> e, const BigInt& c);
  void add_to(std::span<const int> e, const BigInt& c);

  std::string to_string() const;

  friend bool operator==(const HomogeneousPoly&, const HomogeneousPoly&) = default;

 private:
  void check_exponents(std::span<const int> e) const;

  int degree_;
  std::size_t num_vars_;
  TermMap terms_;
};

}  // namespace geode
