#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "geode/errors.hpp"
#include "geode/recurrence.hpp"
#include "geode/verifier.hpp"
#include "oracle.hpp"

using namespace geode;

namespace {

IndexPolynomial lin(std::vector<long> c, long c0) { return IndexPolynomial::linear(c, c0); }

IndexPolynomial product(std::initializer_list<IndexPolynomial> fs) {
  IndexPolynomial p = IndexPolynomial::constant(fs.begin()->num_vars(), 1);
  for (const auto& f : fs) p = p * f;
  return p;
}

std::vector<int> vec(const MultiIndex& m) { return {m.exponents().begin(), m.exponents().end()}; }

// The two first-order 2D step ratios, each multiplied above and below by an
// extra factor that vanishes on a line, to force direction switches.
RecurrenceSystem spoiled_2d_system() {
  auto r1 = RationalCoeff(product({lin({2, 3}, 2), lin({2, 3}, 3), lin({2, 2}, 1), lin({1, 1}, 0), lin({1, 0}, -3)}),
                          product({lin({1, 0}, 0), lin({2, 2}, 3), lin({1, 1}, 1), lin({1, 2}, 2), lin({1, 0}, -3)}));
  auto r2 = RationalCoeff(
      product({lin({2, 3}, 1), lin({2, 3}, 2), lin({2, 3}, 3), lin({2, 2}, 1), lin({1, 1}, 0), lin({0, 1}, -2)}),
      product({lin({0, 1}, 0), lin({2, 2}, 3), lin({1, 1}, 1), lin({1, 2}, 1), lin({1, 2}, 2), lin({0, 1}, -2)}));
  std::vector<PureRecurrence> recs{PureRecurrence(2, Direction::axis(0), {r1}),
                                   PureRecurrence(2, Direction::axis(1), {r2})};
  RecurrenceSystem sys(2, std::move(recs), 1, {{MultiIndex{0, 0}, BigInt(1)}});
  sys.mark_verified(1);
  return sys;
}

}  // namespace

TEST_SUITE("recurrence") {

TEST_CASE("canonical rational coefficients") {
  auto c = RationalCoeff(lin({2}, 2), lin({2}, 0)).canonical();
  CHECK(c.numerator() == lin({1}, 1));
  CHECK(c.denominator() == lin({1}, 0));
  CHECK(c.canonical() == c);
  auto neg = RationalCoeff(lin({1}, 1), lin({-3}, 0)).canonical();
  CHECK(neg.numerator() == lin({-1}, -1));
  CHECK(neg.denominator() == lin({3}, 0));
  auto zero = RationalCoeff(IndexPolynomial(1), lin({5}, 1)).canonical();
  CHECK(zero.numerator().is_zero());
  CHECK(zero.denominator() == IndexPolynomial::constant(1, 1));
  CHECK_THROWS_AS(RationalCoeff(lin({1}, 0), IndexPolynomial(1)), std::invalid_argument);
  CHECK(RationalCoeff(lin({1, 1}, 0), lin({2, 0}, 1)).degrees() == DegreeReport{1, 1});
}

TEST_CASE("operator form and single steps") {
  // (n + 1) G(n) - (4n - 2) G(n - 1) = 0 is the Catalan recurrence.
  std::vector<IndexPolynomial> p{lin({1}, 1), lin({-4}, 2)};
  auto rec = PureRecurrence::from_operator(Direction::axis(0), p);
  CHECK(rec.order() == 1);
  CHECK(rec.coeffs()[0].numerator() == lin({4}, -2));
  std::vector<long> at{4};
  std::vector<BigInt> prev{5};
  CHECK(rec.step(at, prev) == BigInt(14));
  std::vector<BigInt> odd{6};
  CHECK_THROWS_AS(rec.step(at, odd), NonIntegralStepError);
  std::vector<long> root{-1};
  CHECK_FALSE(rec.step(root, prev).has_value());
  CHECK(canonicalize(rec) == rec);
  CHECK(rec.degree_report() == DegreeReport{1, 1});
  CHECK(rec.variable_names() == std::vector<std::string>{"m1"});
  CHECK_THROWS_AS(PureRecurrence(1, Direction::axis(1), {RationalCoeff(lin({1}, 0), lin({1}, 1))}),
                  std::invalid_argument);
}

TEST_CASE("system validation") {
  auto one = PureRecurrence(1, Direction::axis(0), {RationalCoeff(lin({4}, -2), lin({1}, 1))});
  CHECK_THROWS_AS(RecurrenceSystem(1, {one}, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(RecurrenceSystem(2, {one}, 1, {{MultiIndex{0, 0}, BigInt(1)}}), std::invalid_argument);
  RecurrenceSystem ok(1, {one}, 1, {{MultiIndex{0}, BigInt(1)}});
  CHECK_FALSE(ok.verified());
  CHECK_THROWS_AS(eval_pure(ok, MultiIndex{3}), IntegrityError);
  EvalOptions loose;
  loose.require_verified = false;
  CHECK(eval_pure(ok, MultiIndex{10}, loose) == 16796);
}

TEST_CASE("direction switching and oracle fallback") {
  auto sys = spoiled_2d_system();
  EvalReport rep;
  CHECK(eval_pure(sys, MultiIndex{5, 5}, {}, &rep) == oracle::geode({5, 5}));
  CHECK(rep.direction_switches > 0);
  CHECK(std::find(rep.oracle_fallbacks.begin(), rep.oracle_fallbacks.end(), MultiIndex{3, 2}) !=
        rep.oracle_fallbacks.end());
  for (int a = 0; a <= 9; ++a) {
    for (int b = 0; b <= 9; ++b) CHECK(eval_pure(sys, MultiIndex{a, b}) == oracle::geode({a, b}));
  }
}

TEST_CASE("bundled 3D system") {
  auto sys = fixtures::system3();
  REQUIRE(sys.verified());
  CHECK(sys.window_size() == 2);
  CHECK(eval_pure(sys, MultiIndex{1, 1, 1}) == 319);
  CHECK(eval_pure(sys, MultiIndex{2, 2, 2}) == 669123);
  CHECK(eval_pure(sys, MultiIndex{4, 7, 8}) == parse_decimal("11258614474275030033600"));

  std::vector<MultiIndex> pts;
  for (int n = 0; n <= 24; ++n) {
    for (auto& m : compositions(n, 3)) pts.push_back(std::move(m));
  }
  auto values = eval_pure_many(sys, pts);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) bad += values[i] != oracle::geode(vec(pts[i]));
  CHECK(bad == 0);
  CHECK(sys.recurrence(0).degree_report().numerator <= 11);
  CHECK(sys.recurrence(1).degree_report().numerator <= 14);
  CHECK(sys.recurrence(2).degree_report().numerator <= 17);
}

TEST_CASE("path independence at random points") {
  auto sys = fixtures::system3();
  auto pts = random_points(3, 20, 100, 99);
  std::vector<std::size_t> perm{0, 1, 2};
  std::vector<BigInt> first;
  do {
    EvalOptions opts;
    opts.direction_order = perm;
    std::vector<BigInt> vals;
    for (const auto& m : pts) vals.push_back(eval_pure(sys, m, opts));
    if (first.empty()) {
      first = vals;
    } else {
      CHECK(vals == first);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("canonicalize preserves values") {
  auto sys = fixtures::system3();
  RecurrenceSystem twice = sys;
  for (auto& r : twice.mutable_recurrences()) r = canonicalize(canonicalize(r));
  for (std::size_t d = 0; d < 3; ++d) CHECK(twice.recurrence(d) == sys.recurrence(d));
  for (const auto& m : random_points(3, 18, 20, 5)) CHECK(eval_pure(twice, m) == eval_pure(sys, m));
}

TEST_CASE("diagonal recurrence") {
  auto d = fixtures::diagonal3();
  CHECK(d.recurrence.order() == 2);
  CHECK(d.recurrence.degree_report().numerator <= 35);
  CHECK(d.recurrence.degree_report().denominator <= 35);
  CHECK(eval_diagonal(d.recurrence, 1, d.g1, d.g2) == 319);
  CHECK(eval_diagonal(d.recurrence, 2, d.g1, d.g2) == 669123);
  auto seq = diagonal_sequence(d.recurrence, 200, d.g1, d.g2);  // throws on a non-integral step
  REQUIRE(seq.size() == 201);
  for (int n = 0; n <= 8; ++n) CHECK(seq[n] == oracle::geode({n, n, n}));
  CHECK_THROWS_AS(eval_diagonal(d.recurrence, 0, d.g1, d.g2), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_sequence(d.recurrence, 20, d.g1, d.g2 + 1), NonIntegralStepError);
}

}  // TEST_SUITE
