#include <doctest.h>

#include <random>

#include "geode/modular.hpp"

using namespace geode;
using namespace geode::modular;

namespace {

// rows x cols matrix of rank <= rank: product of random (rows x rank) and (rank x cols).
Matrix low_rank(std::size_t rows, std::size_t cols, std::size_t rank, std::uint32_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> left(rows * rank), right(rank * cols);
  for (auto& x : left) x = static_cast<std::uint32_t>(rng() % p);
  for (auto& x : right) x = static_cast<std::uint32_t>(rng() % p);
  Matrix a(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < rank; ++i) s = (s + std::uint64_t(left[r * rank + i]) * right[i * cols + c]) % p;
      a.at(r, c) = static_cast<std::uint32_t>(s);
    }
  }
  return a;
}

void check_annihilates(const Matrix& a, const Nullspace& ns) {
  const std::uint32_t p = a.prime();
  for (const auto& v : ns.basis) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      std::uint64_t s = 0;
      for (std::size_t c = 0; c < a.cols(); ++c) s = (s + std::uint64_t(a.at(r, c)) * v[c]) % p;
      CHECK(s == 0);
    }
  }
}

}  // namespace

TEST_SUITE("modular") {

TEST_CASE("scalar arithmetic") {
  const std::uint32_t p = 8388593;  // largest prime below 2^23
  CHECK(is_prime(p));
  CHECK_FALSE(is_prime(p - 2));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(mul_mod(p - 1, p - 1, p) == 1);
  CHECK(pow_mod(3, p - 1, p) == 1);
  for (std::uint32_t a : {1u, 2u, 12345u, p - 1}) CHECK(mul_mod(a, inv_mod(a, p), p) == 1);
  CHECK(reduce(BigInt(-1), p) == p - 1);
  CHECK(reduce(BigInt(p) * p + 5, p) == 5);
}

TEST_CASE("prime selection") {
  auto ps = pick_primes(10);
  REQUIRE(ps.size() == 10);
  CHECK(ps.front() == 8388593);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(is_prime(ps[i]));
    CHECK(ps[i] < kPrimeBound);
    if (i) CHECK(ps[i] < ps[i - 1]);
  }
  auto shifted = pick_primes(5, 3);
  CHECK(shifted.front() == ps[3]);
}

TEST_CASE("blocked kernel matches the serial reference") {
  const std::uint32_t p = 8388593;
  struct Shape {
    std::size_t rows, cols, rank;
  };
  for (auto s : {Shape{5, 5, 5}, Shape{5, 8, 3}, Shape{40, 30, 29}, Shape{300, 120, 117}, Shape{17, 33, 0},
                 Shape{250, 240, 200}, Shape{1, 4, 1}}) {
    auto a = low_rank(s.rows, s.cols, s.rank, p, s.rows * 31 + s.cols);
    auto fast = nullspace(a, 256);
    auto ref = nullspace_serial(a, 256);
    CHECK(fast.rank == ref.rank);
    CHECK(fast.rank == std::min(s.rank, std::min(s.rows, s.cols)));
    CHECK(fast.pivot_cols == ref.pivot_cols);
    CHECK(fast.free_cols == ref.free_cols);
    CHECK(fast.basis == ref.basis);
    check_annihilates(a, fast);
  }
}

TEST_CASE("reduced basis normal form") {
  const std::uint32_t p = 8388593;
  auto a = low_rank(20, 12, 9, p, 7);
  auto ns = nullspace(a);
  REQUIRE(ns.free_cols.size() == 3);
  for (std::size_t i = 0; i < ns.basis.size(); ++i) {
    for (std::size_t j = 0; j < ns.free_cols.size(); ++j) {
      CHECK(ns.basis[i][ns.free_cols[j]] == (i == j ? 1u : 0u));
    }
  }
}

TEST_CASE("CRT and rational reconstruction") {
  auto ps = pick_primes(4);
  const BigRat target(BigInt(-123456789), BigInt(98765));
  CrtAccumulator acc(1);
  for (auto p : ps) {
    std::uint32_t num = reduce(target.get_num(), p);
    std::uint32_t den = reduce(target.get_den(), p);
    acc.add(std::vector<std::uint32_t>{mul_mod(num, inv_mod(den, p), p)}, p);
  }
  CHECK(acc.prime_count() == 4);
  CHECK(acc.modulus() == BigInt(ps[0]) * ps[1] * ps[2] * ps[3]);
  auto r = rational_reconstruct(acc.value(0), acc.modulus());
  REQUIRE(r.has_value());
  CHECK(*r == target);

  // Too large for a single prime.
  CrtAccumulator one(1);
  std::uint32_t p = ps[0];
  one.add(std::vector<std::uint32_t>{mul_mod(reduce(target.get_num(), p), inv_mod(reduce(target.get_den(), p), p), p)}, p);
  auto bad = rational_reconstruct(one.value(0), one.modulus());
  CHECK((!bad || *bad != target));
}

TEST_CASE("integer vector reconstruction") {
  auto ps = pick_primes(3);
  // The vector (6, -4, 2) / 8 has primitive form (3, -2, 1).
  const std::vector<BigRat> v{BigRat(3, 4), BigRat(-1, 2), BigRat(1, 4)};
  CrtAccumulator acc(3);
  for (auto p : ps) {
    std::vector<std::uint32_t> res;
    for (const auto& q : v) res.push_back(mul_mod(reduce(q.get_num(), p), inv_mod(reduce(q.get_den(), p), p), p));
    acc.add(res, p);
  }
  auto out = reconstruct_integer_vector(acc, 0, 3);
  REQUIRE(out.has_value());
  CHECK(*out == std::vector<BigInt>{3, -2, 1});
  CHECK_THROWS_AS(acc.add(std::vector<std::uint32_t>{1, 2}, ps[0]), std::invalid_argument);
}

}  // TEST_SUITE
