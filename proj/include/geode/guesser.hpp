#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geode/bigint.hpp"
#include "geode/geode_core.hpp"
#include "geode/index_poly.hpp"
#include "geode/modular.hpp"
#include "geode/recurrence.hpp"

namespace geode {

// Shape of the unknown recurrence: sum_{j=0..order} p_j(m) G(m - j e_d) = 0
// with every p_j of total degree <= degree.
struct AnsatzSpec {
  std::size_t num_vars = 1;
  Direction direction = Direction::axis(0);
  int order = 1;
  int degree = 0;

  // Number of index variables of the p_j: k for a pure axis, 1 for a diagonal.
  std::size_t index_vars() const { return direction.is_diagonal() ? 1 : num_vars; }
  std::size_t monomial_count() const;
  std::size_t unknowns() const { return static_cast<std::size_t>(order + 1) * monomial_count(); }
  std::string to_string() const;
};

struct GuessOptions {
  double oversampling = 0.20;       // training rows >= unknowns * (1 + oversampling)
  double holdout_fraction = 0.10;   // of admissible rows, excluded from the solve
  std::size_t holdout_min = 25;
  std::uint64_t prime_seed = 0;     // start offset into the prime sequence
  std::uint64_t holdout_seed = 0x5eed;
  std::size_t max_primes = 64;
  std::size_t max_nullity = 64;
};

// Integer linear system whose residues can be taken modulo word primes and
// whose rows can be evaluated exactly.
class ExactSystem {
 public:
  virtual ~ExactSystem() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual modular::Matrix residues(std::uint32_t p) const = 0;
  virtual BigInt row_dot(std::size_t row, std::span<const BigInt> x) const = 0;
};

// A plain dense integer matrix.
class DenseIntegerSystem final : public ExactSystem {
 public:
  explicit DenseIntegerSystem(std::vector<std::vector<BigInt>> rows);
  std::size_t rows() const override { return rows_.size(); }
  std::size_t cols() const override { return cols_; }
  modular::Matrix residues(std::uint32_t p) const override;
  BigInt row_dot(std::size_t row, std::span<const BigInt> x) const override;

 private:
  std::vector<std::vector<BigInt>> rows_;
  std::size_t cols_;
};

// Rows of the ansatz at admissible data points. Row r is
// [ m^a * G(m - j e_d) ] over columns (j, a), j-major, monomials a in
// graded-lex descending order.
class AnsatzSystem final : public ExactSystem {
 public:
  AnsatzSystem(const GeodeTable& data, AnsatzSpec spec, std::vector<MultiIndex> points);

  std::size_t rows() const override { return points_.size(); }
  std::size_t cols() const override { return spec_.unknowns(); }
  modular::Matrix residues(std::uint32_t p) const override;
  BigInt row_dot(std::size_t row, std::span<const BigInt> x) const override;

  const AnsatzSpec& spec() const { return spec_; }
  const std::vector<MultiIndex>& points() const { return points_; }
  const std::vector<std::vector<int>>& monomials() const { return monomials_; }

  // Splits a solution vector into the polynomials p_0..p_order.
  std::vector<IndexPolynomial> unpack(std::span<const BigInt> x) const;

 private:
  const GeodeTable* data_;
  AnsatzSpec spec_;
  std::vector<MultiIndex> points_;
  std::vector<std::vector<int>> monomials_;
  std::vector<std::vector<BigInt>> shifted_;  // [row][j] = G(m - j e_d)
};

// Admissible points: every shifted point m - j e_d (j <= order) lies in the
// table. Deterministic order (ascending total, then descending lex).
std::vector<MultiIndex> admissible_points(const GeodeTable& data, const AnsatzSpec& spec);

// Smallest table max_total that yields `rows` admissible points for spec,
// or nullopt if not reachable below `limit`.
std::optional<int> table_size_for_rows(const AnsatzSpec& spec, std::size_t rows, int limit = 400);

// Smallest table max_total whose admissible rows cover both the training
// requirement and the held-out rows of `opts`.
std::optional<int> required_table_size(const AnsatzSpec& spec, const GuessOptions& opts = {},
                                       int limit = 400);

struct LinearSystemPlan {
  std::vector<MultiIndex> training;
  std::vector<MultiIndex> holdout;
  std::size_t admissible = 0;
  std::size_t rows_needed = 0;  // training rows required by the oversampling rule
};

// Splits the admissible points into training and held-out rows; throws
// InsufficientDataError if the training rows fall short of the requirement.
LinearSystemPlan plan_system(const GeodeTable& data, const AnsatzSpec& spec,
                             const GuessOptions& opts = {});

AnsatzSystem build_system(const GeodeTable& data, const AnsatzSpec& spec,
                          const GuessOptions& opts = {});

struct ModularSolution {
  std::vector<std::vector<BigInt>> basis;  // primitive integer nullspace vectors
  std::size_t rank = 0;
  std::vector<std::uint32_t> primes_used;
  std::vector<std::uint32_t> primes_discarded;
};

// Nullspace over Q from residues modulo the given primes: reduced bases are
// combined by CRT and lifted by rational reconstruction, stopping once two
// consecutive lifts agree and the vectors annihilate sampled exact rows.
// Primes whose rank or pivot pattern disagrees with the best seen are
// discarded. Throws ReconstructionError if the primes run out.
ModularSolution solve_modular(const ExactSystem& system, std::span<const std::uint32_t> primes,
                              std::size_t max_nullity = 64, std::uint64_t check_seed = 0);

enum class GuessStatus { Found, NoSolution, InsufficientData };
std::string to_string(GuessStatus s);

struct Candidate {
  std::vector<IndexPolynomial> operator_coeffs;  // p_0..p_r, primitive
  PureRecurrence recurrence;                     // canonical form
  DegreeReport degrees;
  std::vector<MultiIndex> leading_zeros;         // admissible points where p_0 vanishes
};

struct GuessReport {
  AnsatzSpec spec;
  GuessStatus status = GuessStatus::NoSolution;
  std::vector<Candidate> candidates;  // best (smallest degrees) first
  std::size_t unknowns = 0;
  std::size_t rows_admissible = 0;
  std::size_t rows_used = 0;
  std::size_t rows_needed = 0;
  std::size_t holdout_rows = 0;
  std::size_t nullity = 0;
  std::optional<int> table_needed;  // for insufficient data
  std::vector<std::uint32_t> primes_used;
  std::size_t candidates_rejected = 0;
  bool validated = false;  // every kept candidate passed all admissible rows
  double elapsed_ms = 0;
  std::string message;
};

GuessReport guess(const GeodeTable& data, const AnsatzSpec& spec, const GuessOptions& opts = {});

struct SearchOptions {
  GuessOptions guess;
  bool exhaustive = false;
};

// Tries every (order, degree) in the ranges in increasing unknown count and
// stops at the first success unless exhaustive.
std::vector<GuessReport> search(const GeodeTable& data, Direction direction,
                                std::pair<int, int> order_range, std::pair<int, int> degree_range,
                                const SearchOptions& opts = {});

// G(n,...,n) for n <= max n available in a full table.
GeodeTable diagonal_table(const GeodeTable& full);

// G(n,...,n) for 0 <= n <= n_max from a recurrence system.
GeodeTable diagonal_table(const RecurrenceSystem& sys, int n_max, const EvalOptions& opts = {});

}  // namespace geode
