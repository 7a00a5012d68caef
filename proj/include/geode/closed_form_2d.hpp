#pragma once

#include "geode/bigint.hpp"

namespace geode {

struct Pair {
  long m1 = 0;
  long m2 = 0;
  Pair(long a, long b);
};

// G(m1, m2) = (2m1+3m2+3)! / ((2m1+2m2+3)(m1+m2+1) (m1+2m2+2)! m1! m2!)
BigInt g2_closed(Pair p);

// Readings of a misprinted form of the closed formula whose second linear
// factor is (m2 + x + 1) with x a stray symbol. Kept so the corrected factor
// (m1 + m2 + 1) can be checked against the alternatives.
enum class StrayReading { Zero, One, M2 };
BigRat g2_misread(Pair p, StrayReading x);

// G(m1, m2) / G(m1 - 1, m2); requires m1 >= 1.
BigRat g2_step_factor_m1(Pair p);
// G(m1, m2) / G(m1, m2 - 1); requires m2 >= 1.
BigRat g2_step_factor_m2(Pair p);

// Walks up m2 at m1 = 0, then up m1, applying the step ratios to a running
// integer. Cheaper than the factorials for large arguments.
BigInt g2_fast(Pair p);

}  // namespace geode
