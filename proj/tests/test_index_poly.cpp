#include <doctest.h>

#include <random>

#include "geode/index_poly.hpp"

using namespace geode;

namespace {

IndexPolynomial lin(std::vector<long> c, long c0) { return IndexPolynomial::linear(c, c0); }

IndexPolynomial random_poly(std::mt19937_64& rng, std::size_t k, int degree, int terms) {
  IndexPolynomial p(k);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(k, 0);
    int left = static_cast<int>(rng() % (degree + 1));
    for (std::size_t i = 0; i + 1 < k && left > 0; ++i) {
      int take = static_cast<int>(rng() % (left + 1));
      e[i] = take;
      left -= take;
    }
    e[k - 1] += left;
    p.add_term(e, BigInt(static_cast<long>(rng() % 41) - 20));
  }
  return p;
}

}  // namespace

TEST_SUITE("index_poly") {

TEST_CASE("graded-lex term order and leading term") {
  auto x = IndexPolynomial::variable(2, 0);
  auto y = IndexPolynomial::variable(2, 1);
  auto p = x * y + y * y * y + x * x * x + IndexPolynomial::constant(2, 7);
  std::vector<std::vector<int>> order;
  for (const auto& [e, c] : p.terms()) order.push_back(e);
  CHECK(order == std::vector<std::vector<int>>{{3, 0}, {0, 3}, {1, 1}, {0, 0}});
  CHECK(p.leading_exponents() == std::vector<int>{3, 0});
  CHECK(p.total_degree() == 3);
  CHECK(p.degree_in(1) == 3);
  CHECK(IndexPolynomial(2).total_degree() == -1);
}

TEST_CASE("arithmetic and evaluation") {
  auto a = lin({2, 3}, 1);   // 2x + 3y + 1
  auto b = lin({1, -1}, 0);  // x - y
  auto prod = a * b;
  CHECK(prod.coeff(std::vector<int>{2, 0}) == 2);
  CHECK(prod.coeff(std::vector<int>{1, 1}) == 1);
  CHECK(prod.coeff(std::vector<int>{0, 2}) == -3);
  std::vector<long> pt{5, -2};
  CHECK(prod.evaluate(pt) == (10 - 6 + 1) * (5 + 2));
  std::vector<BigInt> big{BigInt("100000000000000000000"), 1};
  CHECK(b.evaluate(big) == BigInt("99999999999999999999"));
  CHECK((a - a).is_zero());
  CHECK((a * BigInt(0)).is_zero());
  CHECK(a.substitute(0, 2) == lin({0, 3}, 5));
}

TEST_CASE("content, primitive part, exact division") {
  auto p = lin({-4, 6}, 8);
  CHECK(p.content() == 2);
  CHECK(p.primitive_part() == lin({2, -3}, -4));
  CHECK(p.divide_by_integer(2) == lin({-2, 3}, 4));
  auto f = lin({1, 1}, 1);
  auto g = lin({2, 0}, -3);
  auto q = (f * g).divide_exact(f);
  REQUIRE(q.has_value());
  CHECK(*q == g);
  CHECK_FALSE((f * g + IndexPolynomial::constant(2, 1)).divide_exact(f).has_value());
  CHECK_FALSE(lin({1, 0}, 0).divide_exact(lin({2, 0}, 0)).has_value());
}

TEST_CASE("gcd of structured products") {
  const auto f1 = lin({2, 3, 0}, 3);
  const auto f2 = lin({1, 1, 1}, 1);
  const auto f3 = lin({1, 2, 0}, 2);
  const auto f4 = lin({0, 0, 1}, -5);
  auto g = gcd(f1 * f2 * f3 * BigInt(6), f2 * f3 * f4 * BigInt(4));
  auto expect = (f2 * f3 * BigInt(2)).primitive_part() * BigInt(2);
  CHECK(g == expect);
  CHECK(gcd(f1, f4) == IndexPolynomial::constant(3, 1));
  CHECK(gcd(IndexPolynomial(3), f1) == f1);
  CHECK(gcd(f1 * BigInt(-1), IndexPolynomial(3)) == f1);
}

TEST_CASE("gcd property: common factor is recovered") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t k = 1 + trial % 3;
    auto common = random_poly(rng, k, 3, 4);
    auto a = random_poly(rng, k, 3, 4);
    auto b = random_poly(rng, k, 3, 4);
    if (common.is_zero() || a.is_zero() || b.is_zero()) continue;
    auto g = gcd(common * a, common * b);
    CHECK((common * a).divide_exact(g).has_value());
    CHECK((common * b).divide_exact(g).has_value());
    CHECK(g.divide_exact(common.primitive_part()).has_value());
    CHECK(g.leading_coeff() > 0);
  }
}

TEST_CASE("to_string") {
  std::vector<std::string> names{"m1", "m2"};
  CHECK(lin({2, -1}, 3).to_string(names) == "2*m1 - m2 + 3");
  CHECK(IndexPolynomial(2).to_string(names) == "0");
}

}  // TEST_SUITE
