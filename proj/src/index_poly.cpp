#include "geode/index_poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "geode/errors.hpp"

namespace geode {

bool IndexPolynomial::GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return a > b;
}

IndexPolynomial::IndexPolynomial(std::size_t num_vars) : num_vars_(num_vars) {
  if (num_vars == 0) throw std::invalid_argument("IndexPolynomial: need at least one variable");
}

IndexPolynomial IndexPolynomial::constant(std::size_t num_vars, const BigInt& c) {
  IndexPolynomial p(num_vars);
  p.add_term(std::vector<int>(num_vars, 0), c);
  return p;
}

IndexPolynomial IndexPolynomial::variable(std::size_t num_vars, std::size_t var) {
  if (var >= num_vars) throw std::invalid_argument("IndexPolynomial::variable: index out of range");
  IndexPolynomial p(num_vars);
  std::vector<int> e(num_vars, 0);
  e[var] = 1;
  p.add_term(e, 1);
  return p;
}

IndexPolynomial IndexPolynomial::linear(std::span<const long> coeffs, long constant) {
  IndexPolynomial p(coeffs.size());
  std::vector<int> e(coeffs.size(), 0);
  p.add_term(e, constant);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    e[i] = 1;
    p.add_term(e, coeffs[i]);
    e[i] = 0;
  }
  return p;
}

bool IndexPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int IndexPolynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int IndexPolynomial::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

const IndexPolynomial::Exponents& IndexPolynomial::leading_exponents() const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return terms_.begin()->first;
}

const BigInt& IndexPolynomial::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return terms_.begin()->second;
}

void IndexPolynomial::add_term(std::span<const int> e, const BigInt& c) {
  if (e.size() != num_vars_) throw std::invalid_argument("IndexPolynomial: exponent length mismatch");
  if (c == 0) return;
  for (int v : e) {
    if (v < 0) throw std::invalid_argument("IndexPolynomial: negative exponent");
  }
  auto [it, inserted] = terms_.try_emplace(Exponents(e.begin(), e.end()), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt IndexPolynomial::coeff(std::span<const int> e) const {
  auto it = terms_.find(Exponents(e.begin(), e.end()));
  return it == terms_.end() ? BigInt(0) : it->second;
}

IndexPolynomial IndexPolynomial::operator-() const {
  IndexPolynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

IndexPolynomial& IndexPolynomial::operator+=(const IndexPolynomial& o) {
  if (o.num_vars_ != num_vars_) throw std::invalid_argument("IndexPolynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IndexPolynomial& IndexPolynomial::operator-=(const IndexPolynomial& o) {
  if (o.num_vars_ != num_vars_) throw std::invalid_argument("IndexPolynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IndexPolynomial& IndexPolynomial::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

IndexPolynomial operator*(const IndexPolynomial& a, const IndexPolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("IndexPolynomial: variable count mismatch");
  IndexPolynomial out(a.num_vars_);
  std::vector<int> e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

namespace {

template <typename T>
BigInt evaluate_impl(const IndexPolynomial::TermMap& terms, std::span<const T> point,
                     std::size_t num_vars) {
  if (point.size() != num_vars) throw std::invalid_argument("evaluate: point has wrong length");
  // Power tables per variable, then one product per term.
  std::vector<std::vector<BigInt>> powers(num_vars);
  std::vector<int> max_deg(num_vars, 0);
  for (const auto& [e, c] : terms) {
    for (std::size_t i = 0; i < num_vars; ++i) max_deg[i] = std::max(max_deg[i], e[i]);
  }
  for (std::size_t i = 0; i < num_vars; ++i) {
    powers[i].resize(static_cast<std::size_t>(max_deg[i]) + 1);
    powers[i][0] = 1;
    for (int d = 1; d <= max_deg[i]; ++d) powers[i][d] = powers[i][d - 1] * BigInt(point[i]);
  }
  BigInt sum = 0;
  BigInt term;
  for (const auto& [e, c] : terms) {
    term = c;
    for (std::size_t i = 0; i < num_vars; ++i) {
      if (e[i]) term *= powers[i][e[i]];
    }
    sum += term;
  }
  return sum;
}

}  // namespace

BigInt IndexPolynomial::evaluate(std::span<const BigInt> point) const {
  return evaluate_impl(terms_, point, num_vars_);
}

BigInt IndexPolynomial::evaluate(std::span<const long> point) const {
  return evaluate_impl(terms_, point, num_vars_);
}

IndexPolynomial IndexPolynomial::substitute(std::size_t var, const BigInt& value) const {
  IndexPolynomial out(num_vars_);
  std::vector<BigInt> powers(1, BigInt(1));
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(powers.size()) <= e[var]) powers.push_back(powers.back() * value);
    Exponents f = e;
    f[var] = 0;
    out.add_term(f, c * powers[e[var]]);
  }
  return out;
}

BigInt IndexPolynomial::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : terms_) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

IndexPolynomial IndexPolynomial::primitive_part() const {
  if (terms_.empty()) return *this;
  BigInt g = content();
  if (leading_coeff() < 0) g = -g;
  return divide_by_integer(g);
}

BigInt IndexPolynomial::max_norm() const {
  BigInt m = 0;
  for (const auto& [e, c] : terms_) {
    if (abs(c) > m) m = abs(c);
  }
  return m;
}

IndexPolynomial IndexPolynomial::divide_by_integer(const BigInt& c) const {
  if (c == 0) throw std::domain_error("IndexPolynomial: division by zero");
  IndexPolynomial out(num_vars_);
  for (const auto& [e, v] : terms_) {
    if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t())) {
      throw std::domain_error("IndexPolynomial: integer division is not exact");
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    out.terms_.emplace(e, std::move(q));
  }
  return out;
}

std::optional<IndexPolynomial> IndexPolynomial::divide_exact(const IndexPolynomial& d) const {
  if (d.num_vars_ != num_vars_) throw std::invalid_argument("IndexPolynomial: variable count mismatch");
  if (d.is_zero()) throw std::domain_error("IndexPolynomial: division by the zero polynomial");
  IndexPolynomial rem = *this;
  IndexPolynomial quot(num_vars_);
  const Exponents& dl = d.leading_exponents();
  const BigInt& dc = d.leading_coeff();
  // Upper bound on the quotient degree lets us bail out early on failure.
  const int max_q_deg = total_degree() - d.total_degree();
  Exponents qe(num_vars_);
  BigInt qc;
  while (!rem.is_zero()) {
    const Exponents& rl = rem.leading_exponents();
    for (std::size_t i = 0; i < num_vars_; ++i) {
      qe[i] = rl[i] - dl[i];
      if (qe[i] < 0) return std::nullopt;
    }
    if (std::accumulate(qe.begin(), qe.end(), 0) > max_q_deg) return std::nullopt;
    const BigInt& rc = rem.leading_coeff();
    if (!mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
    mpz_divexact(qc.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
    Exponents e(num_vars_);
    for (const auto& [de, dv] : d.terms_) {
      for (std::size_t i = 0; i < num_vars_; ++i) e[i] = de[i] + qe[i];
      rem.add_term(e, -(qc * dv));
    }
    quot.add_term(qe, qc);
  }
  return quot;
}

std::string IndexPolynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t i) {
    return i < names.size() ? names[i] : "x" + std::to_string(i + 1);
  };
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](int v) { return v > 0; });
    std::string body;
    if (!has_var || a != 1) body = a.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += name(i);
      if (e[i] > 1) body += "^" + std::to_string(e[i]);
    }
    out += body;
  }
  return out;
}

namespace {

// Symmetric residue of x modulo m, in (-m/2, m/2].
BigInt symmetric_mod(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

std::optional<std::size_t> main_variable(const IndexPolynomial& a, const IndexPolynomial& b) {
  for (std::size_t v = a.num_vars(); v-- > 0;) {
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
  }
  return std::nullopt;
}

IndexPolynomial gcd_primitive(const IndexPolynomial& a, const IndexPolynomial& b);

IndexPolynomial gcd_full(const IndexPolynomial& a, const IndexPolynomial& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  BigInt c = gcd(a.content(), b.content());
  return gcd_primitive(a.primitive_part(), b.primitive_part()) * c;
}

IndexPolynomial gcd_primitive(const IndexPolynomial& a, const IndexPolynomial& b) {
  const std::size_t k = a.num_vars();
  auto var = main_variable(a, b);
  if (!var || a.is_constant() || b.is_constant()) return IndexPolynomial::constant(k, 1);

  BigInt xi = 2 * std::min(a.max_norm(), b.max_norm()) + 29;
  for (int attempt = 0; attempt < 12; ++attempt) {
    IndexPolynomial ea = a.substitute(*var, xi);
    IndexPolynomial eb = b.substitute(*var, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      IndexPolynomial gamma = gcd_full(ea, eb);
      // xi-adic expansion of gamma's coefficients rebuilds a candidate in var.
      IndexPolynomial cand(k);
      int power = 0;
      while (!gamma.is_zero()) {
        IndexPolynomial digit(k);
        IndexPolynomial next(k);
        for (const auto& [e, c] : gamma.terms()) {
          BigInt d = symmetric_mod(c, xi);
          if (d != 0) {
            std::vector<int> f = e;
            f[*var] = power;
            cand.add_term(f, d);
          }
          BigInt rest = c - d;
          mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), xi.get_mpz_t());
          next.add_term(e, rest);
        }
        gamma = std::move(next);
        ++power;
      }
      if (!cand.is_zero()) {
        cand = cand.primitive_part();
        if (a.divide_exact(cand) && b.divide_exact(cand)) return cand;
      }
    }
    xi = xi * 73794 / 27011;
  }
  throw InconsistencyError("gcd: heuristic evaluation failed at every point");
}

}  // namespace

IndexPolynomial gcd(const IndexPolynomial& a, const IndexPolynomial& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("gcd: variable count mismatch");
  return gcd_full(a, b);
}

}  // namespace geode
