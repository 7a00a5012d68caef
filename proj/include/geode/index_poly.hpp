#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geode/bigint.hpp"

namespace geode {

// Sparse multivariate polynomial over Z in the index variables (m_1..m_k, or
// n for diagonal sequences). Terms iterate in graded-lex descending order, so
// the first term is the leading term.
class IndexPolynomial {
 public:
  using Exponents = std::vector<int>;

  struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, BigInt, GradedLexGreater>;

  explicit IndexPolynomial(std::size_t num_vars = 1);

  static IndexPolynomial constant(std::size_t num_vars, const BigInt& c);
  // The variable with 0-based index `var`.
  static IndexPolynomial variable(std::size_t num_vars, std::size_t var);
  // sum_i coeffs[i] * x_i + constant, a convenient builder for factor lists.
  static IndexPolynomial linear(std::span<const long> coeffs, long constant);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;

  // Leading (graded-lex largest) term; requires a nonzero polynomial.
  const Exponents& leading_exponents() const;
  const BigInt& leading_coeff() const;

  void add_term(std::span<const int> e, const BigInt& c);
  BigInt coeff(std::span<const int> e) const;

  IndexPolynomial operator-() const;
  IndexPolynomial& operator+=(const IndexPolynomial& o);
  IndexPolynomial& operator-=(const IndexPolynomial& o);
  IndexPolynomial& operator*=(const BigInt& c);
  friend IndexPolynomial operator+(IndexPolynomial a, const IndexPolynomial& b) { return a += b; }
  friend IndexPolynomial operator-(IndexPolynomial a, const IndexPolynomial& b) { return a -= b; }
  friend IndexPolynomial operator*(const IndexPolynomial& a, const IndexPolynomial& b);
  friend IndexPolynomial operator*(IndexPolynomial a, const BigInt& c) { return a *= c; }

  BigInt evaluate(std::span<const BigInt> point) const;
  BigInt evaluate(std::span<const long> point) const;

  // Substitutes x_var = value; the result keeps num_vars() variables.
  IndexPolynomial substitute(std::size_t var, const BigInt& value) const;

  // gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  // Divides out the content and makes the leading coefficient positive.
  IndexPolynomial primitive_part() const;
  BigInt max_norm() const;

  // Exact quotient this / d, or nullopt if d does not divide this in Z[x].
  std::optional<IndexPolynomial> divide_exact(const IndexPolynomial& d) const;
  IndexPolynomial divide_by_integer(const BigInt& c) const;

  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const IndexPolynomial&, const IndexPolynomial&) = default;

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

// Greatest common divisor in Z[x_1..x_k], with positive leading coefficient.
// Uses the heuristic evaluation/interpolation algorithm, verified by trial
// division; throws InconsistencyError if every evaluation point fails.
IndexPolynomial gcd(const IndexPolynomial& a, const IndexPolynomial& b);

}  // namespace geode
