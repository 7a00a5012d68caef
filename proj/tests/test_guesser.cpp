#include <doctest.h>

#include <random>

#include "geode/closed_form_2d.hpp"
#include "geode/errors.hpp"
#include "geode/guesser.hpp"
#include "geode/serialization.hpp"
#include "oracle.hpp"

using namespace geode;

namespace {

IndexPolynomial lin(std::vector<long> c, long c0) { return IndexPolynomial::linear(c, c0); }

IndexPolynomial product(std::initializer_list<IndexPolynomial> fs) {
  IndexPolynomial p = IndexPolynomial::constant(2, 1);
  for (const auto& f : fs) p = p * f;
  return p;
}

// The displayed step ratios of the 2D numbers, expanded.
RationalCoeff displayed_ratio(std::size_t axis) {
  if (axis == 0) {
    return RationalCoeff(product({lin({2, 3}, 2), lin({2, 3}, 3), lin({2, 2}, 1), lin({1, 1}, 0)}),
                         product({lin({1, 0}, 0), lin({2, 2}, 3), lin({1, 1}, 1), lin({1, 2}, 2)}));
  }
  return RationalCoeff(product({lin({2, 3}, 1), lin({2, 3}, 2), lin({2, 3}, 3), lin({2, 2}, 1), lin({1, 1}, 0)}),
                       product({lin({0, 1}, 0), lin({2, 2}, 3), lin({1, 1}, 1), lin({1, 2}, 1), lin({1, 2}, 2)}));
}

const GeodeTable& table2() {
  static const GeodeTable t = geode_table(30, 2);
  return t;
}

}  // namespace

TEST_SUITE("guesser") {

TEST_CASE("unknown counts") {
  CHECK(AnsatzSpec{3, Direction::axis(0), 2, 11}.unknowns() == 1092);
  CHECK(AnsatzSpec{3, Direction::diagonal(), 2, 35}.unknowns() == 108);
  CHECK(AnsatzSpec{3, Direction::axis(2), 2, 17}.unknowns() == 3420);
  CHECK(AnsatzSpec{2, Direction::axis(0), 1, 4}.monomial_count() == 15);
}

TEST_CASE("admissible points and sizing") {
  AnsatzSpec s{2, Direction::axis(1), 2, 3};
  auto pts = admissible_points(table2(), s);
  CHECK(pts.size() == oracle::binomial(30, 2));  // total <= 28 after removing two units of m2
  for (const auto& m : pts) CHECK(m[1] >= 2);
  CHECK(required_table_size(AnsatzSpec{3, Direction::axis(2), 2, 17}) == 31);
  CHECK(required_table_size(AnsatzSpec{3, Direction::axis(0), 2, 11}).value() <= 30);
  CHECK(required_table_size(AnsatzSpec{3, Direction::diagonal(), 2, 35}) == 156);
  CHECK(table_size_for_rows(AnsatzSpec{2, Direction::axis(0), 1, 0}, 3) == 2);
  CHECK_THROWS_AS(plan_system(table2(), AnsatzSpec{2, Direction::axis(0), 2, 30}), InsufficientDataError);
  CHECK_THROWS_AS(admissible_points(table2(), AnsatzSpec{3, Direction::axis(0), 1, 1}), std::invalid_argument);
}

TEST_CASE("holdout split is disjoint and seeded") {
  AnsatzSpec s{2, Direction::axis(0), 1, 4};
  auto a = plan_system(table2(), s);
  auto b = plan_system(table2(), s);
  CHECK(a.training == b.training);
  CHECK(a.holdout.size() == 47);
  CHECK(a.training.size() + a.holdout.size() == a.admissible);
  for (const auto& h : a.holdout) CHECK(std::find(a.training.begin(), a.training.end(), h) == a.training.end());
  GuessOptions other;
  other.holdout_seed = 7;
  CHECK(plan_system(table2(), s, other).holdout != a.holdout);
}

TEST_CASE("the displayed 2D recurrence lies in the ansatz nullspace") {
  AnsatzSpec s{2, Direction::axis(0), 1, 4};
  AnsatzSystem sys(table2(), s, admissible_points(table2(), s));
  auto r = displayed_ratio(0);
  std::vector<BigInt> x;
  for (const auto* poly : {&r.denominator(), &r.numerator()}) {
    for (const auto& mono : sys.monomials()) x.push_back(poly == &r.numerator() ? -poly->coeff(mono) : poly->coeff(mono));
  }
  for (std::size_t row = 0; row < sys.rows(); ++row) CHECK(sys.row_dot(row, x) == 0);
}

TEST_CASE("residues agree with exact rows") {
  AnsatzSpec s{2, Direction::axis(1), 2, 3};
  auto pts = admissible_points(table2(), s);
  pts.resize(40);
  AnsatzSystem sys(table2(), s, pts);
  const std::uint32_t p = modular::pick_primes(1)[0];
  auto res = sys.residues(p);
  std::mt19937_64 rng(3);
  std::vector<BigInt> x(sys.cols());
  for (auto& v : x) v = BigInt(static_cast<long>(rng() % 2001) - 1000);
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < sys.cols(); ++c) acc = (acc + std::uint64_t(res.at(r, c)) * modular::reduce(x[c], p)) % p;
    CHECK(acc == modular::reduce(sys.row_dot(r, x), p));
  }
}

TEST_CASE("solve_modular on a dense system with a known kernel") {
  // Kernel spanned by (3, -2, 1, 0) and (1, 0, 0, -1).
  std::vector<std::vector<BigInt>> rows{{1, 2, 1, 1}, {2, 3, 0, 2}, {0, 1, 2, 0}, {5, 7, -1, 5}};
  DenseIntegerSystem sys(rows);
  auto primes = modular::pick_primes(8);
  auto sol = solve_modular(sys, primes);
  CHECK(sol.rank == 2);
  REQUIRE(sol.basis.size() == 2);
  for (const auto& v : sol.basis) {
    for (std::size_t r = 0; r < rows.size(); ++r) CHECK(sys.row_dot(r, v) == 0);
  }
  CHECK(sol.primes_used.size() == 2);
}

TEST_CASE("bad primes are discarded") {
  const std::uint32_t bad = modular::pick_primes(1)[0];
  // Rows coincide modulo `bad`, so the rank drops there.
  std::vector<std::vector<BigInt>> rows{{1, 1, 2}, {1, 1 + BigInt(bad), 2 + 3 * BigInt(bad)}};
  DenseIntegerSystem sys(rows);
  auto good = modular::pick_primes(6, 1);
  std::vector<std::uint32_t> with_bad{bad};
  with_bad.insert(with_bad.end(), good.begin(), good.end());
  auto a = solve_modular(sys, with_bad);
  auto b = solve_modular(sys, good);
  CHECK(a.basis == b.basis);
  REQUIRE(a.basis.size() == 1);
  CHECK(a.basis[0] == std::vector<BigInt>{1, -3, 1});
  CHECK(std::find(a.primes_discarded.begin(), a.primes_discarded.end(), bad) != a.primes_discarded.end());

  // A bad prime that comes after good ones is rejected outright.
  std::vector<std::uint32_t> late{good[0], bad, good[1], good[2], good[3]};
  auto c = solve_modular(sys, late);
  CHECK(c.basis == b.basis);
  CHECK(c.primes_discarded == std::vector<std::uint32_t>{bad});
}

TEST_CASE("reconstruction failure is reported") {
  std::vector<std::vector<BigInt>> rows{{BigInt("123456789012345678901234567890"), BigInt("987654321098765432109876543211")}};
  DenseIntegerSystem sys(rows);
  auto one = modular::pick_primes(1);
  CHECK_THROWS_AS(solve_modular(sys, one), ReconstructionError);
}

TEST_CASE("2D guessing recovers the displayed recurrences") {
  for (std::size_t axis : {0u, 1u}) {
    auto reps = search(table2(), Direction::axis(axis), {1, 1}, {0, 5});
    REQUIRE(!reps.empty());
    const auto& last = reps.back();
    REQUIRE(last.status == GuessStatus::Found);
    CHECK(last.validated);
    CHECK(last.spec.degree == (axis == 0 ? 4 : 5));
    const auto& rec = last.candidates.front().recurrence;
    CHECK(rec.coeffs().front() == displayed_ratio(axis).canonical());
    for (std::size_t i = 0; i + 1 < reps.size(); ++i) CHECK(reps[i].status == GuessStatus::NoSolution);
  }
}

TEST_CASE("recovered ratios match the step factors") {
  auto rep = guess(table2(), AnsatzSpec{2, Direction::axis(0), 1, 5});
  REQUIRE(rep.status == GuessStatus::Found);
  const auto& c = rep.candidates.front().recurrence.coeffs().front();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    long a = 1 + static_cast<long>(rng() % 60), b = static_cast<long>(rng() % 60);
    std::vector<long> pt{a, b};
    BigRat r(c.numerator().evaluate(pt), c.denominator().evaluate(pt));
    r.canonicalize();
    CHECK(r == g2_step_factor_m1({a, b}));
  }
}

TEST_CASE("larger nullspaces yield several validated candidates") {
  auto rep = guess(table2(), AnsatzSpec{2, Direction::axis(0), 2, 4});
  CHECK(rep.status == GuessStatus::Found);
  CHECK(rep.nullity == 2);
  CHECK(rep.candidates.size() + rep.candidates_rejected == 2);
  for (std::size_t i = 1; i < rep.candidates.size(); ++i) {
    const auto& a = rep.candidates[i - 1].degrees;
    const auto& b = rep.candidates[i].degrees;
    CHECK(a.numerator + a.denominator <= b.numerator + b.denominator);
  }
}

TEST_CASE("no first-order 3D recurrence at low degree") {
  auto t = geode_table(30, 3);
  SearchOptions opts;
  opts.exhaustive = true;
  auto reps = search(t, Direction::axis(0), {1, 1}, {0, 11}, opts);
  CHECK(reps.size() == 12);
  for (const auto& r : reps) CHECK(r.status == GuessStatus::NoSolution);
}

TEST_CASE("determinism") {
  AnsatzSpec s{2, Direction::axis(1), 1, 5};
  auto a = guess(table2(), s);
  auto b = guess(table2(), s);
  GuessOptions shifted;
  shifted.prime_seed = 17;
  auto c = guess(table2(), s, shifted);
  REQUIRE(a.status == GuessStatus::Found);
  auto dump = [](const GuessReport& r) { return io::dump(io::to_json(r.candidates.front().recurrence)); };
  CHECK(dump(a) == dump(b));
  CHECK(dump(a) == dump(c));
  CHECK(a.primes_used == b.primes_used);
  CHECK(a.primes_used != c.primes_used);
}

TEST_CASE("insufficient data is a report, not an error") {
  auto diag = diagonal_table(geode_table(24, 4));
  CHECK(diag.max_total() == 6);
  CHECK(diag.at(MultiIndex{1}) == oracle::geode({1, 1, 1, 1}));
  auto reps = search(diag, Direction::diagonal(), {1, 2}, {0, 10});
  CHECK(reps.size() == 22);
  for (const auto& r : reps) {
    CHECK(r.status == GuessStatus::InsufficientData);
    CHECK(r.table_needed.has_value());
    CHECK(!r.message.empty());
  }
}

}  // TEST_SUITE
