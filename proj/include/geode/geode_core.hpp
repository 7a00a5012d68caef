#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "geode/bigint.hpp"
#include "geode/homogeneous_poly.hpp"
#include "geode/multi_index.hpp"

namespace geode {

// Term budget shared by every definitional computation. Defaults to 10^7 and
// can be overridden through the GEODE_TERM_CAP environment variable.
std::size_t default_term_cap();

// C(m) = (2m_1 + ... + (k+1)m_k)! / ((1 + m_1 + 2m_2 + ... + k m_k)! m_1! ... m_k!)
BigInt hyper_catalan(const MultiIndex& m);
BigInt hyper_catalan(std::span<const int> m);

// P_{n,k} = sum over |m| = n of C(m) t^m.
HomogeneousPoly build_P(int n, std::size_t k, std::size_t term_cap = default_term_cap());

struct SimplexDivision {
  HomogeneousPoly quotient;
  HomogeneousPoly remainder;
};

// Exact division by t_1 + ... + t_k. Quotient terms are peeled off in
// decreasing lex order using t_1 as the leading variable:
//   q(m) = p(m + e_1) - sum_{i >= 2} q(m + e_1 - e_i).
SimplexDivision divide_by_simplex(const HomogeneousPoly& p);

// Q_{n,k} = P_{n+1,k} / (t_1 + ... + t_k). Throws InconsistencyError if the
// division leaves a remainder.
HomogeneousPoly geode_poly(int n, std::size_t k, std::size_t term_cap = default_term_cap());

// G(m), the coefficient of t^m in Q_{|m|,k}. Only the quotient coefficients
// reachable from m are evaluated: those obtained by moving units from
// coordinates 2..k into coordinate 1, a box of prod_{i>=2}(m_i + 1) points.
BigInt geode_number_oracle(const MultiIndex& m, std::size_t term_cap = default_term_cap());

// Exact G values keyed by index. A Full table holds every m with
// |m| <= max_total; a Diagonal table holds G(n,...,n) keyed by the
// one-entry index [n] for 0 <= n <= max_total.
class GeodeTable {
 public:
  enum class Kind { Full, Diagonal };

  GeodeTable(std::size_t num_vars, int max_total, Kind kind = Kind::Full,
             std::size_t ambient_dims = 0);

  Kind kind() const { return kind_; }
  // Number of index variables of the keys (1 for diagonal tables).
  std::size_t num_vars() const { return num_vars_; }
  // Dimension of the underlying Geode numbers (k of G(n,...,n) for diagonals).
  std::size_t ambient_dims() const { return ambient_dims_; }
  int max_total() const { return max_total_; }
  std::size_t size() const { return values_.size(); }

  bool contains(const MultiIndex& m) const;
  const BigInt& at(const MultiIndex& m) const;
  // G with the negative-index convention: zero if any entry is negative.
  // Throws std::out_of_range for non-negative indices missing from the table.
  BigInt value_or_zero(std::span<const int> e) const;
  const BigInt* find(std::span<const int> e) const;

  void insert(const MultiIndex& m, BigInt value);

  // All keys, sorted ascending.
  std::vector<MultiIndex> keys() const;

 private:
  std::size_t num_vars_;
  int max_total_;
  Kind kind_;
  std::size_t ambient_dims_;
  std::unordered_map<MultiIndex, BigInt, MultiIndexHash> values_;
};

// Every G(m) with |m| <= n_max, one decreasing-lex pass per degree. Degree
// slices are independent and are computed in parallel when OpenMP is on.
GeodeTable geode_table(int n_max, std::size_t k, std::size_t term_cap = default_term_cap());

// Serial reference for geode_table (same algorithm, no threading).
GeodeTable geode_table_serial(int n_max, std::size_t k,
                              std::size_t term_cap = default_term_cap());

}  // namespace geode
