#include "geode/recurrence.hpp"

#include <stdexcept>
#include <unordered_map>

#include "geode/errors.hpp"

namespace geode {

std::string Direction::to_string() const {
  return diagonal_ ? std::string("diagonal") : std::to_string(axis_ + 1);
}

RationalCoeff::RationalCoeff(IndexPolynomial numerator, IndexPolynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::invalid_argument("RationalCoeff: zero denominator");
  if (num_.num_vars() != den_.num_vars()) {
    throw std::invalid_argument("RationalCoeff: numerator/denominator variable mismatch");
  }
}

RationalCoeff RationalCoeff::canonical() const {
  const std::size_t k = num_vars();
  if (num_.is_zero()) return RationalCoeff(IndexPolynomial(k), IndexPolynomial::constant(k, 1));
  IndexPolynomial g = gcd(num_, den_);
  auto n = num_.divide_exact(g);
  auto d = den_.divide_exact(g);
  if (!n || !d) throw InconsistencyError("RationalCoeff: gcd does not divide its arguments");
  if (d->leading_coeff() < 0) {
    *n = -*n;
    *d = -*d;
  }
  return RationalCoeff(std::move(*n), std::move(*d));
}

PureRecurrence::PureRecurrence(std::size_t num_vars, Direction direction,
                               std::vector<RationalCoeff> coeffs, std::size_t dimension)
    : num_vars_(num_vars),
      direction_(direction),
      coeffs_(std::move(coeffs)),
      dimension_(dimension == 0 ? num_vars : dimension) {
  if (coeffs_.empty()) throw std::invalid_argument("PureRecurrence: order must be >= 1");
  if (direction.is_diagonal() && num_vars != 1) {
    throw std::invalid_argument("PureRecurrence: diagonal recurrences have one variable");
  }
  if (!direction.is_diagonal() && direction.axis_index() >= num_vars) {
    throw std::invalid_argument("PureRecurrence: direction out of range");
  }
  for (const auto& c : coeffs_) {
    if (c.num_vars() != num_vars) {
      throw std::invalid_argument("PureRecurrence: coefficient variable count mismatch");
    }
  }
}

PureRecurrence PureRecurrence::from_operator(Direction direction,
                                             std::span<const IndexPolynomial> p,
                                             std::size_t dimension) {
  if (p.size() < 2) throw std::invalid_argument("from_operator: need p_0 and at least p_1");
  if (p[0].is_zero()) throw std::invalid_argument("from_operator: p_0 vanishes identically");
  std::vector<RationalCoeff> coeffs;
  for (std::size_t j = 1; j < p.size(); ++j) {
    coeffs.push_back(RationalCoeff(-p[j], p[0]).canonical());
  }
  return PureRecurrence(p[0].num_vars(), direction, std::move(coeffs), dimension);
}

DegreeReport PureRecurrence::degree_report() const {
  DegreeReport r{-1, -1};
  for (const auto& c : coeffs_) {
    auto d = c.degrees();
    r.numerator = std::max(r.numerator, d.numerator);
    r.denominator = std::max(r.denominator, d.denominator);
  }
  return r;
}

std::vector<std::string> PureRecurrence::variable_names() const {
  if (direction_.is_diagonal()) return {"n"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars_; ++i) names.push_back("m" + std::to_string(i + 1));
  return names;
}

std::optional<BigInt> PureRecurrence::step(std::span<const long> point,
                                           std::span<const BigInt> shifted) const {
  if (shifted.size() != coeffs_.size()) {
    throw std::invalid_argument("PureRecurrence::step: need one value per shift");
  }
  BigInt acc_num = 0;
  BigInt acc_den = 1;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    BigInt d = coeffs_[j].denominator().evaluate(point);
    if (d == 0) return std::nullopt;
    BigInt n = coeffs_[j].numerator().evaluate(point);
    if (n == 0 || shifted[j] == 0) continue;
    if (d == acc_den) {
      acc_num += n * shifted[j];
    } else {
      acc_num = acc_num * d + n * shifted[j] * acc_den;
      acc_den *= d;
    }
  }
  if (!mpz_divisible_p(acc_num.get_mpz_t(), acc_den.get_mpz_t())) {
    std::string where;
    for (long v : point) where += (where.empty() ? "" : ",") + std::to_string(v);
    throw NonIntegralStepError("recurrence step at (" + where + ") is not integral");
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), acc_num.get_mpz_t(), acc_den.get_mpz_t());
  return out;
}

PureRecurrence canonicalize(const PureRecurrence& rec) {
  std::vector<RationalCoeff> coeffs;
  coeffs.reserve(rec.order());
  for (const auto& c : rec.coeffs()) coeffs.push_back(c.canonical());
  return PureRecurrence(rec.num_vars(), rec.direction(), std::move(coeffs), rec.dimension());
}

RecurrenceSystem::RecurrenceSystem(std::size_t k, std::vector<PureRecurrence> by_axis,
                                   int window_size, std::map<MultiIndex, BigInt> initial_values)
    : k_(k), recs_(std::move(by_axis)), window_size_(window_size), initial_(std::move(initial_values)) {
  if (recs_.size() != k) throw std::invalid_argument("RecurrenceSystem: need one recurrence per axis");
  for (std::size_t i = 0; i < k; ++i) {
    const auto& r = recs_[i];
    if (r.direction().is_diagonal() || r.direction().axis_index() != i || r.num_vars() != k) {
      throw std::invalid_argument("RecurrenceSystem: recurrence " + std::to_string(i + 1) +
                                  " does not advance axis " + std::to_string(i + 1));
    }
    if (static_cast<int>(r.order()) > window_size) {
      throw std::invalid_argument("RecurrenceSystem: window smaller than recurrence order");
    }
  }
  // Every point of the window must be present.
  std::size_t expected = 1;
  for (std::size_t i = 0; i < k; ++i) expected *= static_cast<std::size_t>(window_size);
  std::size_t found = 0;
  for (const auto& [m, v] : initial_) {
    if (m.size() != k) throw std::invalid_argument("RecurrenceSystem: initial value of wrong dimension");
    if (in_window(m.exponents())) ++found;
  }
  if (found != expected) throw std::invalid_argument("RecurrenceSystem: incomplete initial window");
}

RecurrenceSystem RecurrenceSystem::with_oracle_window(std::size_t k,
                                                      std::vector<PureRecurrence> by_axis,
                                                      int window_size) {
  std::map<MultiIndex, BigInt> init;
  std::vector<int> e(k, 0);
  while (true) {
    MultiIndex m(e);
    init.emplace(m, geode_number_oracle(m));
    std::size_t i = 0;
    while (i < k && ++e[i] == window_size) e[i++] = 0;
    if (i == k) break;
  }
  return RecurrenceSystem(k, std::move(by_axis), window_size, std::move(init));
}

bool RecurrenceSystem::in_window(std::span<const int> m) const {
  for (int v : m) {
    if (v >= window_size_) return false;
  }
  return true;
}

namespace {

struct PendingStep {
  std::size_t axis;
};

using Cache = std::unordered_map<MultiIndex, BigInt, MultiIndexHash>;

void check_eval_preconditions(const RecurrenceSystem& sys, const MultiIndex& m,
                              const EvalOptions& opts) {
  if (opts.require_verified && !sys.verified()) {
    throw IntegrityError("eval_pure: recurrence system has not passed window verification");
  }
  if (m.size() != sys.k()) throw std::invalid_argument("eval_pure: index has wrong dimension");
}

BigInt eval_with_cache(const RecurrenceSystem& sys, const MultiIndex& target,
                       const EvalOptions& opts, EvalReport* report, Cache& cache) {
  std::vector<std::size_t> order = opts.direction_order;
  if (order.empty()) {
    for (std::size_t i = 0; i < sys.k(); ++i) order.push_back(i);
  }
  const int w = sys.window_size();
  std::unordered_map<MultiIndex, PendingStep, MultiIndexHash> pending;
  std::vector<MultiIndex> stack{target};
  std::vector<long> point(sys.k());

  while (!stack.empty()) {
    const MultiIndex m = stack.back();
    if (cache.count(m)) {
      stack.pop_back();
      continue;
    }
    if (sys.in_window(m.exponents())) {
      cache.emplace(m, sys.initial_values().at(m));
      stack.pop_back();
      continue;
    }
    for (std::size_t i = 0; i < m.size(); ++i) point[i] = m[i];

    auto it = pending.find(m);
    if (it == pending.end()) {
      std::optional<std::size_t> chosen;
      bool skipped = false;
      for (std::size_t axis : order) {
        if (m[axis] < w) continue;
        const auto& rec = sys.recurrence(axis);
        bool vanishes = false;
        for (const auto& c : rec.coeffs()) {
          if (c.denominator().evaluate(point) == 0) {
            vanishes = true;
            break;
          }
        }
        if (vanishes) {
          skipped = true;
          continue;
        }
        chosen = axis;
        break;
      }
      if (!chosen) {
        cache.emplace(m, geode_number_oracle(m, opts.oracle_cap));
        if (report) report->oracle_fallbacks.push_back(m);
        stack.pop_back();
        continue;
      }
      if (skipped && report) ++report->direction_switches;
      it = pending.emplace(m, PendingStep{*chosen}).first;
    }

    const std::size_t axis = it->second.axis;
    const auto& rec = sys.recurrence(axis);
    bool ready = true;
    for (std::size_t j = 1; j <= rec.order(); ++j) {
      MultiIndex dep = *m.shifted(axis, -static_cast<int>(j));
      if (!cache.count(dep)) {
        stack.push_back(std::move(dep));
        ready = false;
      }
    }
    if (!ready) continue;

    std::vector<BigInt> shifted;
    shifted.reserve(rec.order());
    for (std::size_t j = 1; j <= rec.order(); ++j) {
      shifted.push_back(cache.at(*m.shifted(axis, -static_cast<int>(j))));
    }
    auto value = rec.step(point, shifted);
    if (!value) throw InconsistencyError("eval_pure: denominator vanished after selection");
    cache.emplace(m, std::move(*value));
    pending.erase(m);
    if (report) ++report->recurrence_steps;
    stack.pop_back();
  }
  return cache.at(target);
}

}  // namespace

BigInt eval_pure(const RecurrenceSystem& sys, const MultiIndex& m, const EvalOptions& opts,
                 EvalReport* report) {
  check_eval_preconditions(sys, m, opts);
  Cache cache;
  return eval_with_cache(sys, m, opts, report, cache);
}

std::vector<BigInt> eval_pure_many(const RecurrenceSystem& sys, std::span<const MultiIndex> points,
                                   const EvalOptions& opts, EvalReport* report) {
  std::vector<BigInt> out;
  out.reserve(points.size());
  Cache cache;
  for (const auto& m : points) {
    check_eval_preconditions(sys, m, opts);
    out.push_back(eval_with_cache(sys, m, opts, report, cache));
  }
  return out;
}

std::vector<BigInt> diagonal_sequence(const PureRecurrence& rec, long n_max, const BigInt& g1,
                                      const BigInt& g2, const RecurrenceSystem* fallback,
                                      DiagonalReport* report) {
  if (!rec.direction().is_diagonal() || rec.order() != 2) {
    throw std::invalid_argument("eval_diagonal: needs an order-2 diagonal recurrence");
  }
  if (n_max < 0) throw std::invalid_argument("eval_diagonal: n must be >= 1");
  std::vector<BigInt> seq(static_cast<std::size_t>(std::max(n_max, 2L)) + 1);
  seq[0] = 1;
  seq[1] = g1;
  seq[2] = g2;
  std::vector<long> point(1);
  for (long n = 3; n <= n_max; ++n) {
    point[0] = n;
    const BigInt shifted[2] = {seq[static_cast<std::size_t>(n - 1)], seq[static_cast<std::size_t>(n - 2)]};
    auto v = rec.step(point, shifted);
    if (!v) {
      if (!fallback) {
        throw GeodeError("eval_diagonal: denominator vanishes at n = " + std::to_string(n) +
                         " and no recurrence system was supplied");
      }
      MultiIndex m(std::vector<int>(rec.dimension(), static_cast<int>(n)));
      v = eval_pure(*fallback, m);
      if (report) report->fallback_steps.push_back(n);
    }
    seq[static_cast<std::size_t>(n)] = std::move(*v);
  }
  seq.resize(static_cast<std::size_t>(n_max) + 1);
  return seq;
}

BigInt eval_diagonal(const PureRecurrence& rec, long n, const BigInt& g1, const BigInt& g2,
                     const RecurrenceSystem* fallback, DiagonalReport* report) {
  if (n < 1) throw std::invalid_argument("eval_diagonal: n must be >= 1");
  return diagonal_sequence(rec, n, g1, g2, fallback, report).back();
}

}  // namespace geode
