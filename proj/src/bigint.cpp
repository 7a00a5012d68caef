#include "geode/bigint.hpp"

#include <cctype>
#include <stdexcept>

namespace geode {

std::size_t digit_count(const BigInt& x) {
  if (x == 0) {
    throw std::invalid_argument("digit_count: zero has no digit count");
  }
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t n = mpz_sizeinbase(x.get_mpz_t(), 10);
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, n - 1);
  BigInt a = abs(x);
  return a < pow10 ? n - 1 : n;
}

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

BigInt parse_decimal(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty()) {
    throw std::invalid_argument("parse_decimal: empty integer literal");
  }
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("parse_decimal: invalid integer literal '" +
                                  std::string(text) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

}  // namespace geode
