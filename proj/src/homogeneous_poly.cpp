#include "geode/homogeneous_poly.hpp"

#include <numeric>
#include <stdexcept>

namespace geode {

HomogeneousPoly::HomogeneousPoly(int degree, std::size_t num_vars)
    : degree_(degree), num_vars_(num_vars) {
  if (degree < 0 || num_vars == 0) {
    throw std::invalid_argument("HomogeneousPoly: need degree >= 0 and k >= 1");
  }
}

void HomogeneousPoly::check_exponents(std::span<const int> e) const {
  if (e.size() != num_vars_) {
    throw std::invalid_argument("HomogeneousPoly: exponent vector has wrong length");
  }
  int sum = 0;
  for (int v : e) {
    if (v < 0) throw std::invalid_argument("HomogeneousPoly: negative exponent");
    sum += v;
  }
  if (sum != degree_) {
    throw std::invalid_argument("HomogeneousPoly: term is not of the polynomial's degree");
  }
}

BigInt HomogeneousPoly::coeff(std::span<const int> e) const {
  auto it = terms_.find(Exponents(e.begin(), e.end()));
  return it == terms_.end() ? BigInt(0) : it->second;
}

void HomogeneousPoly::set(std::span<const int> e, const BigInt& c) {
  check_exponents(e);
  Exponents key(e.begin(), e.end());
  if (c == 0) {
    terms_.erase(key);
  } else {
    terms_[std::move(key)] = c;
  }
}

void HomogeneousPoly::add_to(std::span<const int> e, const BigInt& c) {
  if (c == 0) return;
  check_exponents(e);
  Exponents key(e.begin(), e.end());
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string HomogeneousPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string cs = c.get_str();
    if (!first) {
      if (c < 0) {
        out += " - ";
        cs.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    first = false;
    bool monomial = std::accumulate(e.begin(), e.end(), 0) > 0;
    if (!monomial || (cs != "1" && cs != "-1")) {
      out += cs;
      if (monomial) out += "*";
    } else if (cs == "-1") {
      out += "-";
    }
    bool need_star = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out += "*";
      out += "t" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
      need_star = true;
    }
  }
  return out;
}

}  // namespace geode
