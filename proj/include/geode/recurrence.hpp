#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geode/bigint.hpp"
#include "geode/geode_core.hpp"
#include "geode/index_poly.hpp"
#include "geode/multi_index.hpp"

namespace geode {

// The index a pure recurrence advances: one axis, or the main diagonal.
class Direction {
 public:
  // 0-based axis.
  static Direction axis(std::size_t i) { return Direction(false, i); }
  static Direction diagonal() { return Direction(true, 0); }

  bool is_diagonal() const { return diagonal_; }
  std::size_t axis_index() const { return axis_; }
  std::string to_string() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  Direction(bool diag, std::size_t a) : diagonal_(diag), axis_(a) {}
  bool diagonal_;
  std::size_t axis_;
};

struct DegreeReport {
  int numerator = 0;
  int denominator = 0;
  friend bool operator==(const DegreeReport&, const DegreeReport&) = default;
};

class RationalCoeff {
 public:
  RationalCoeff(IndexPolynomial numerator, IndexPolynomial denominator);

  const IndexPolynomial& numerator() const { return num_; }
  const IndexPolynomial& denominator() const { return den_; }
  std::size_t num_vars() const { return num_.num_vars(); }

  // Common polynomial factors removed, then the sign fixed so the
  // denominator's leading coefficient is positive.
  RationalCoeff canonical() const;
  DegreeReport degrees() const { return {num_.total_degree(), den_.total_degree()}; }

  friend bool operator==(const RationalCoeff&, const RationalCoeff&) = default;

 private:
  IndexPolynomial num_;
  IndexPolynomial den_;
};

// G(m) = sum_{j=1..r} coeff_j(m) * G(m - j*e_d). For diagonal recurrences the
// single variable is n and G(n,...,n) = sum_j coeff_j(n) * G(n-j,...,n-j);
// dimension() records the k of that diagonal.
class PureRecurrence {
 public:
  PureRecurrence(std::size_t num_vars, Direction direction, std::vector<RationalCoeff> coeffs,
                 std::size_t dimension = 0);

  // From the operator form sum_{j=0..r} p_j(m) G(m - j e_d) = 0 (p_0 != 0).
  static PureRecurrence from_operator(Direction direction, std::span<const IndexPolynomial> p,
                                      std::size_t dimension = 0);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t dimension() const { return dimension_; }
  Direction direction() const { return direction_; }
  std::size_t order() const { return coeffs_.size(); }
  const std::vector<RationalCoeff>& coeffs() const { return coeffs_; }
  std::vector<RationalCoeff>& mutable_coeffs() { return coeffs_; }
  DegreeReport degree_report() const;
  std::vector<std::string> variable_names() const;

  // One forward step at `point` given shifted[j-1] = G(point - j e_d).
  // Returns nullopt if a denominator vanishes at the point; throws
  // NonIntegralStepError if the combination is not an integer.
  std::optional<BigInt> step(std::span<const long> point, std::span<const BigInt> shifted) const;

  friend bool operator==(const PureRecurrence&, const PureRecurrence&) = default;

 private:
  std::size_t num_vars_;
  Direction direction_;
  std::vector<RationalCoeff> coeffs_;
  std::size_t dimension_;
};

PureRecurrence canonicalize(const PureRecurrence& rec);

// One pure recurrence per axis plus the initial window: every m with all
// entries below window_size.
class RecurrenceSystem {
 public:
  RecurrenceSystem(std::size_t k, std::vector<PureRecurrence> by_axis, int window_size,
                   std::map<MultiIndex, BigInt> initial_values);

  // Window values taken from the definitional oracle.
  static RecurrenceSystem with_oracle_window(std::size_t k, std::vector<PureRecurrence> by_axis,
                                             int window_size);

  std::size_t k() const { return k_; }
  int window_size() const { return window_size_; }
  const PureRecurrence& recurrence(std::size_t axis) const { return recs_[axis]; }
  std::vector<PureRecurrence>& mutable_recurrences() { return recs_; }
  const std::vector<PureRecurrence>& recurrences() const { return recs_; }
  const std::map<MultiIndex, BigInt>& initial_values() const { return initial_; }
  bool in_window(std::span<const int> m) const;

  bool verified() const { return verified_window_ > 0; }
  int verified_window() const { return verified_window_; }
  // Records that verify_window passed on the cube of side K.
  void mark_verified(int window) { verified_window_ = window; }

 private:
  std::size_t k_;
  std::vector<PureRecurrence> recs_;
  int window_size_;
  std::map<MultiIndex, BigInt> initial_;
  int verified_window_ = 0;
};

struct EvalOptions {
  // Axis priority (0-based); empty means 0, 1, ..., k-1.
  std::vector<std::size_t> direction_order;
  bool require_verified = true;
  std::size_t oracle_cap = default_term_cap();
};

struct EvalReport {
  std::size_t recurrence_steps = 0;
  std::size_t direction_switches = 0;
  std::vector<MultiIndex> oracle_fallbacks;
};

// G(m) by reducing one coordinate at a time into the initial window. When
// the preferred axis has a vanishing denominator the next axis is tried;
// if every axis vanishes the oracle supplies the value (recorded in report).
BigInt eval_pure(const RecurrenceSystem& sys, const MultiIndex& m, const EvalOptions& opts = {},
                 EvalReport* report = nullptr);

// Several points sharing one call-local cache.
std::vector<BigInt> eval_pure_many(const RecurrenceSystem& sys, std::span<const MultiIndex> points,
                                   const EvalOptions& opts = {}, EvalReport* report = nullptr);

struct DiagonalReport {
  std::vector<long> fallback_steps;  // n where eval_pure replaced the recurrence
};

// G(n,...,n) by forward iteration from the two initial values (n = 1, 2).
// A vanishing denominator at some n is resolved through `fallback` when one
// is supplied, otherwise it is an error.
BigInt eval_diagonal(const PureRecurrence& rec, long n, const BigInt& g1, const BigInt& g2,
                     const RecurrenceSystem* fallback = nullptr, DiagonalReport* report = nullptr);

// All of G(0..n_max, ...) along the diagonal via the recurrence.
std::vector<BigInt> diagonal_sequence(const PureRecurrence& rec, long n_max, const BigInt& g1,
                                      const BigInt& g2, const RecurrenceSystem* fallback = nullptr,
                                      DiagonalReport* report = nullptr);

}  // namespace geode
