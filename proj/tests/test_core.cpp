#include <doctest.h>

#include <cstdlib>

#include "geode/bigint.hpp"
#include "geode/errors.hpp"
#include "geode/geode_core.hpp"
#include "geode/homogeneous_poly.hpp"
#include "geode/multi_index.hpp"
#include "oracle.hpp"

using namespace geode;

namespace {

std::vector<int> vec(const MultiIndex& m) { return {m.exponents().begin(), m.exponents().end()}; }

}  // namespace

TEST_SUITE("core") {

TEST_CASE("digit_count") {
  CHECK(digit_count(BigInt(319)) == 3);
  CHECK(digit_count(BigInt(669123)) == 6);
  CHECK(digit_count(BigInt(-7)) == 1);
  BigInt p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, 40);
  CHECK(digit_count(p10) == 41);
  CHECK(digit_count(p10 - 1) == 40);
  CHECK_THROWS_AS(digit_count(BigInt(0)), std::invalid_argument);
}

TEST_CASE("decimal strings") {
  CHECK(to_decimal(parse_decimal("-11258614474275030033600")) == "-11258614474275030033600");
  CHECK(parse_decimal("0") == 0);
  for (const char* bad : {"", "-", "12a", " 1", "1.5", "+-3", "0x10"}) {
    CHECK_THROWS_AS(parse_decimal(bad), std::invalid_argument);
  }
}

TEST_CASE("MultiIndex basics") {
  MultiIndex m{4, 7, 8};
  CHECK(m.total() == 19);
  CHECK(m.weight() == 4 + 14 + 24);
  CHECK(m.to_string() == "(4,7,8)");
  CHECK(m.shifted(0, -4) == MultiIndex{0, 7, 8});
  CHECK_FALSE(m.shifted(0, -5).has_value());
  CHECK(MultiIndex::zero(3) == MultiIndex{0, 0, 0});
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{1, -1}), std::invalid_argument);
  CHECK(MultiIndex{1, 2} < MultiIndex{2, 0});
}

TEST_CASE("compositions are complete and ordered") {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (int n = 0; n <= 7; ++n) {
      auto cs = compositions(n, k);
      CHECK(cs.size() == composition_count(n, k));
      CHECK(cs.size() == oracle::binomial(n + k - 1, k - 1).get_ui());
      for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1] > cs[i]);
      for (const auto& c : cs) CHECK(c.total() == n);
    }
  }
  CHECK(compositions(3, 2).front() == MultiIndex{3, 0});
}

TEST_CASE("HomogeneousPoly validates exponents") {
  HomogeneousPoly p(3, 2);
  p.set(std::vector<int>{1, 2}, 5);
  CHECK(p.coeff(std::vector<int>{1, 2}) == 5);
  CHECK_THROWS_AS(p.set(std::vector<int>{1, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.set(std::vector<int>{1, 1, 1}, 1), std::invalid_argument);
  p.add_to(std::vector<int>{1, 2}, -5);
  CHECK(p.is_zero());
}

TEST_CASE("hyper-Catalan numbers") {
  CHECK(hyper_catalan(MultiIndex{1, 1}) == 5);
  CHECK(hyper_catalan(MultiIndex{3}) == 5);
  CHECK(hyper_catalan(MultiIndex{0, 0, 0}) == 1);
  CHECK(hyper_catalan(MultiIndex{1, 0, 0}) == 1);
  // One coordinate gives the Catalan numbers.
  for (int n = 0; n <= 25; ++n) {
    CHECK(hyper_catalan(MultiIndex{n}) == oracle::binomial(2 * n, n) / (n + 1));
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    for (int n = 0; n <= 8; ++n) {
      for (const auto& m : compositions(n, k)) CHECK(hyper_catalan(m) == oracle::hyper_catalan(vec(m)));
    }
  }
}

TEST_CASE("simplex division leaves no remainder") {
  for (std::size_t k : {2u, 3u, 4u}) {
    for (int n = 1; n <= 12; ++n) CHECK(divide_by_simplex(build_P(n, k)).remainder.is_zero());
  }
  for (int n = 1; n <= 8; ++n) CHECK(divide_by_simplex(build_P(n, 5)).remainder.is_zero());
}

TEST_CASE("simplex division detects non-multiples") {
  auto p = build_P(5, 3);
  p.add_to(std::vector<int>{2, 2, 1}, 1);
  auto d = divide_by_simplex(p);
  CHECK_FALSE(d.remainder.is_zero());
  // quotient * (t1 + t2 + t3) + remainder reproduces p
  HomogeneousPoly back(5, 3);
  for (const auto& [e, c] : d.quotient.terms()) {
    for (std::size_t i = 0; i < 3; ++i) {
      auto f = e;
      ++f[i];
      back.add_to(f, c);
    }
  }
  for (const auto& [e, c] : d.remainder.terms()) back.add_to(e, c);
  CHECK(back == p);
}

TEST_CASE("Geode polynomials") {
  auto q = geode_poly(3, 3);
  CHECK(q.coeff(std::vector<int>{1, 1, 1}) == 319);
  for (const auto& [e, c] : q.terms()) CHECK(c == oracle::geode(e));
  CHECK(geode_poly(0, 4).coeff(std::vector<int>{0, 0, 0, 0}) == 1);
}

TEST_CASE("oracle reproduces published values") {
  CHECK(geode_number_oracle(MultiIndex{1, 1}) == 16);
  CHECK(geode_number_oracle(MultiIndex{1, 1, 1}) == 319);
  CHECK(geode_number_oracle(MultiIndex{2, 2, 2}) == 669123);
  CHECK(geode_number_oracle(MultiIndex{4, 7, 8}) == parse_decimal("11258614474275030033600"));
}

TEST_CASE("oracle agrees with the reference recursion") {
  for (int n = 0; n <= 20; ++n) {
    for (const auto& m : compositions(n, 2)) CHECK(geode_number_oracle(m) == oracle::geode(vec(m)));
  }
  for (int n = 0; n <= 12; ++n) {
    for (const auto& m : compositions(n, 3)) CHECK(geode_number_oracle(m) == oracle::geode(vec(m)));
  }
  for (int n = 0; n <= 8; ++n) {
    for (const auto& m : compositions(n, 4)) CHECK(geode_number_oracle(m) == oracle::geode(vec(m)));
  }
  CHECK(geode_number_oracle(MultiIndex{0, 0, 0}) == 1);
  CHECK(geode_number_oracle(MultiIndex{9}) == oracle::hyper_catalan({10}));
}

TEST_CASE("term cap") {
  CHECK_THROWS_AS(geode_number_oracle(MultiIndex{2, 20, 20}, 100), ResourceLimitError);
  CHECK_THROWS_AS(build_P(30, 4, 100), ResourceLimitError);
  CHECK(geode_number_oracle(MultiIndex{2, 2, 2}, 9) == 669123);
}

TEST_CASE("GEODE_TERM_CAP overrides the default") {
  setenv("GEODE_TERM_CAP", "1234", 1);
  CHECK(default_term_cap() == 1234);
  unsetenv("GEODE_TERM_CAP");
  CHECK(default_term_cap() == 10'000'000);
}

TEST_CASE("tables") {
  auto t = geode_table(10, 3);
  CHECK(t.size() == 286);
  CHECK(t.at(MultiIndex{1, 1, 1}) == 319);
  CHECK(t.value_or_zero(std::vector<int>{-1, 2, 3}) == 0);
  CHECK_THROWS_AS(t.value_or_zero(std::vector<int>{5, 5, 5}), std::out_of_range);
  CHECK(t.find(std::vector<int>{11, 0, 0}) == nullptr);
  for (const auto& m : t.keys()) CHECK(t.at(m) == oracle::geode(vec(m)));

  for (std::size_t k : {1u, 2u, 3u, 4u}) {
    auto par = geode_table(12, k);
    auto ser = geode_table_serial(12, k);
    REQUIRE(par.size() == ser.size());
    for (const auto& m : ser.keys()) CHECK(par.at(m) == ser.at(m));
  }
}

}  // TEST_SUITE
