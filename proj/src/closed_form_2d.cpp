#include "geode/closed_form_2d.hpp"

#include <stdexcept>

namespace geode {

namespace {

BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt linear(long a, long b, long c) { return BigInt(a) + b + c; }

// Numerator and denominator of the step ratios as products of linear factors.
void ratio_m1(long m1, long m2, BigInt& num, BigInt& den) {
  num = linear(2 * m1, 3 * m2, 2) * linear(2 * m1, 3 * m2, 3) * linear(2 * m1, 2 * m2, 1) * linear(m1, m2, 0);
  den = BigInt(m1) * linear(2 * m1, 2 * m2, 3) * linear(m1, m2, 1) * linear(m1, 2 * m2, 2);
}

void ratio_m2(long m1, long m2, BigInt& num, BigInt& den) {
  num = linear(2 * m1, 3 * m2, 1) * linear(2 * m1, 3 * m2, 2) * linear(2 * m1, 3 * m2, 3) *
        linear(2 * m1, 2 * m2, 1) * linear(m1, m2, 0);
  den = BigInt(m2) * linear(2 * m1, 2 * m2, 3) * linear(m1, m2, 1) * linear(m1, 2 * m2, 1) *
        linear(m1, 2 * m2, 2);
}

BigRat normalized(BigInt num, BigInt den) {
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Pair::Pair(long a, long b) : m1(a), m2(b) {
  if (a < 0 || b < 0) throw std::invalid_argument("Pair: indices must be non-negative");
}

BigInt g2_closed(Pair p) {
  BigInt num = factorial(2 * p.m1 + 3 * p.m2 + 3);
  BigInt den = linear(2 * p.m1, 2 * p.m2, 3) * linear(p.m1, p.m2, 1) * factorial(p.m1 + 2 * p.m2 + 2) *
               factorial(p.m1) * factorial(p.m2);
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigRat g2_misread(Pair p, StrayReading x) {
  long stray = x == StrayReading::Zero ? 0 : x == StrayReading::One ? 1 : p.m2;
  BigInt num = factorial(2 * p.m1 + 3 * p.m2 + 3);
  BigInt den = linear(2 * p.m1, 2 * p.m2, 3) * linear(p.m2, stray, 1) * factorial(p.m1 + 2 * p.m2 + 2) *
               factorial(p.m1) * factorial(p.m2);
  return normalized(std::move(num), std::move(den));
}

BigRat g2_step_factor_m1(Pair p) {
  if (p.m1 == 0) throw std::invalid_argument("g2_step_factor_m1: needs m1 >= 1");
  BigInt num, den;
  ratio_m1(p.m1, p.m2, num, den);
  return normalized(std::move(num), std::move(den));
}

BigRat g2_step_factor_m2(Pair p) {
  if (p.m2 == 0) throw std::invalid_argument("g2_step_factor_m2: needs m2 >= 1");
  BigInt num, den;
  ratio_m2(p.m1, p.m2, num, den);
  return normalized(std::move(num), std::move(den));
}

BigInt g2_fast(Pair p) {
  BigInt g = 1, num, den;
  for (long j = 1; j <= p.m2; ++j) {
    ratio_m2(0, j, num, den);
    g *= num;
    mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
  }
  for (long i = 1; i <= p.m1; ++i) {
    ratio_m1(i, p.m2, num, den);
    g *= num;
    mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
  }
  return g;
}

}  // namespace geode
