#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geode/bigint.hpp"

namespace geode::modular {

// Word-size prime arithmetic. Primes are kept below 2^23 so that products fit
// a double mantissa with room for ~100 lazy accumulations.
inline constexpr std::uint32_t kPrimeBound = 1u << 23;

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t reduce(const BigInt& x, std::uint32_t p);
bool is_prime(std::uint32_t n);

// Deterministic list of `count` distinct primes below kPrimeBound. The seed
// selects where in the descending sequence of primes the list starts.
std::vector<std::uint32_t> pick_primes(std::size_t count, std::uint64_t seed = 0);

// Dense row-major matrix over Z/p.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return p_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

// Right nullspace in reduced form: pivot columns are those of the reduced
// row echelon form, and basis[i] has a 1 at free_cols[i], 0 at every other
// free column. This form is unique, so residues from different primes can be
// combined entry by entry.
struct Nullspace {
  std::uint32_t prime = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<std::uint32_t>> basis;
};

// Blocked incremental elimination with lazy reduction in double precision.
// Rows are processed in batches; each batch is reduced against the current
// echelon basis with the batch rows updated in parallel.
Nullspace nullspace(const Matrix& a, std::size_t max_nullity = 64);

// Textbook Gauss-Jordan elimination with exact modular arithmetic; the
// reference the blocked kernel is tested against.
Nullspace nullspace_serial(const Matrix& a, std::size_t max_nullity = 64);

// Entrywise CRT combination of residue vectors modulo distinct primes;
// values are kept in [0, M).
class CrtAccumulator {
 public:
  explicit CrtAccumulator(std::size_t width);

  std::size_t width() const { return values_.size(); }
  const BigInt& modulus() const { return modulus_; }
  std::size_t prime_count() const { return prime_count_; }

  void add(std::span<const std::uint32_t> residues, std::uint32_t p);
  const BigInt& value(std::size_t i) const { return values_[i]; }

 private:
  std::vector<BigInt> values_;  // in [0, modulus)
  BigInt modulus_ = 1;
  std::size_t prime_count_ = 0;
};

// Finds n/d with |n|, d <= sqrt(M/2) and n == a*d (mod M), if one exists.
std::optional<BigRat> rational_reconstruct(const BigInt& a, const BigInt& modulus);

// Reconstructs a whole vector using a running common denominator; returns
// the primitive integer vector proportional to it, or nullopt on failure.
std::optional<std::vector<BigInt>> reconstruct_integer_vector(
    const CrtAccumulator& acc, std::size_t offset, std::size_t length);

}  // namespace geode::modular
