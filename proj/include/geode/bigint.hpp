#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace geode {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Number of decimal digits of |x|. Throws std::invalid_argument for zero.
std::size_t digit_count(const BigInt& x);

std::string to_decimal(const BigInt& x);

// Accepts an optional leading '-' followed by decimal digits only.
BigInt parse_decimal(std::string_view text);

}  // namespace geode
