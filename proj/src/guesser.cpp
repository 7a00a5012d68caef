#include "geode/guesser.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "geode/errors.hpp"

namespace geode {

std::size_t AnsatzSpec::monomial_count() const {
  // binom(degree + v, v)
  return composition_count(degree, index_vars() + 1);
}

std::string AnsatzSpec::to_string() const {
  return "k=" + std::to_string(num_vars) + " direction=" + direction.to_string() +
         " order=" + std::to_string(order) + " degree=" + std::to_string(degree);
}

std::string to_string(GuessStatus s) {
  switch (s) {
    case GuessStatus::Found:
      return "found";
    case GuessStatus::NoSolution:
      return "no-solution";
    case GuessStatus::InsufficientData:
      return "insufficient-data";
  }
  return "unknown";
}

DenseIntegerSystem::DenseIntegerSystem(std::vector<std::vector<BigInt>> rows)
    : rows_(std::move(rows)), cols_(rows_.empty() ? 0 : rows_.front().size()) {
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw std::invalid_argument("DenseIntegerSystem: ragged rows");
  }
}

modular::Matrix DenseIntegerSystem::residues(std::uint32_t p) const {
  modular::Matrix m(rows_.size(), cols_, p);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.at(r, c) = modular::reduce(rows_[r][c], p);
  }
  return m;
}

BigInt DenseIntegerSystem::row_dot(std::size_t row, std::span<const BigInt> x) const {
  BigInt s = 0;
  for (std::size_t c = 0; c < cols_; ++c) s += rows_[row][c] * x[c];
  return s;
}

namespace {

// Monomials of total degree <= d in v variables, graded-lex descending.
std::vector<std::vector<int>> monomials_upto(int d, std::size_t v) {
  std::vector<std::vector<int>> out;
  for (int t = d; t >= 0; --t) {
    for_each_composition(t, v, [&](std::span<const int> e) { out.emplace_back(e.begin(), e.end()); });
  }
  return out;
}

std::vector<int> shifted_key(const MultiIndex& m, const AnsatzSpec& spec, int j) {
  std::vector<int> e(m.exponents().begin(), m.exponents().end());
  if (spec.direction.is_diagonal()) {
    e[0] -= j;
  } else {
    e[spec.direction.axis_index()] -= j;
  }
  return e;
}

void check_spec_against_data(const GeodeTable& data, const AnsatzSpec& spec) {
  if (spec.order < 1 || spec.degree < 0) throw std::invalid_argument("AnsatzSpec: need order >= 1, degree >= 0");
  if (spec.direction.is_diagonal()) {
    if (data.kind() != GeodeTable::Kind::Diagonal) {
      throw std::invalid_argument("guess: a diagonal ansatz needs a diagonal data table");
    }
  } else {
    if (data.kind() != GeodeTable::Kind::Full || data.num_vars() != spec.num_vars) {
      throw std::invalid_argument("guess: data table does not match the ansatz dimension");
    }
    if (spec.direction.axis_index() >= spec.num_vars) {
      throw std::invalid_argument("guess: direction out of range");
    }
  }
}

}  // namespace

std::vector<MultiIndex> admissible_points(const GeodeTable& data, const AnsatzSpec& spec) {
  check_spec_against_data(data, spec);
  std::vector<MultiIndex> out;
  if (spec.direction.is_diagonal()) {
    for (int n = spec.order; n <= data.max_total(); ++n) out.push_back(MultiIndex{n});
    return out;
  }
  const std::size_t d = spec.direction.axis_index();
  for (int t = spec.order; t <= data.max_total(); ++t) {
    for_each_composition(t, spec.num_vars, [&](std::span<const int> e) {
      if (e[d] >= spec.order) out.emplace_back(std::vector<int>(e.begin(), e.end()));
    });
  }
  return out;
}

std::optional<int> table_size_for_rows(const AnsatzSpec& spec, std::size_t rows, int limit) {
  std::size_t have = 0;
  for (int t = spec.order; t <= limit; ++t) {
    have += spec.direction.is_diagonal() ? 1 : composition_count(t - spec.order, spec.num_vars);
    if (have >= rows) return t;
  }
  return std::nullopt;
}

namespace {

std::size_t rows_needed(const AnsatzSpec& spec, const GuessOptions& opts) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(spec.unknowns()) * (1.0 + opts.oversampling)));
}

std::size_t holdout_rows(std::size_t admissible, const GuessOptions& opts) {
  return std::max(opts.holdout_min,
                  static_cast<std::size_t>(std::ceil(opts.holdout_fraction * static_cast<double>(admissible))));
}

}  // namespace

std::optional<int> required_table_size(const AnsatzSpec& spec, const GuessOptions& opts, int limit) {
  const std::size_t need = rows_needed(spec, opts);
  std::size_t have = 0;
  for (int t = spec.order; t <= limit; ++t) {
    have += spec.direction.is_diagonal() ? 1 : composition_count(t - spec.order, spec.num_vars);
    const std::size_t held = holdout_rows(have, opts);
    if (have > held && have - held >= need) return t;
  }
  return std::nullopt;
}

LinearSystemPlan plan_system(const GeodeTable& data, const AnsatzSpec& spec, const GuessOptions& opts) {
  LinearSystemPlan plan;
  auto points = admissible_points(data, spec);
  plan.admissible = points.size();
  plan.rows_needed = rows_needed(spec, opts);
  const std::size_t holdout = holdout_rows(points.size(), opts);
  if (holdout >= points.size() || points.size() - holdout < plan.rows_needed) {
    throw InsufficientDataError("guess: " + std::to_string(points.size()) +
                                " admissible rows; need " + std::to_string(plan.rows_needed) +
                                " training + " + std::to_string(holdout) + " held-out");
  }
  // Fisher-Yates with an explicit generator so the split is reproducible.
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(opts.holdout_seed);
  for (std::size_t i = idx.size(); i-- > 1;) std::swap(idx[i], idx[rng() % (i + 1)]);
  std::vector<bool> held(points.size(), false);
  for (std::size_t i = 0; i < holdout; ++i) held[idx[i]] = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    (held[i] ? plan.holdout : plan.training).push_back(points[i]);
  }
  return plan;
}

AnsatzSystem build_system(const GeodeTable& data, const AnsatzSpec& spec, const GuessOptions& opts) {
  auto plan = plan_system(data, spec, opts);
  return AnsatzSystem(data, spec, std::move(plan.training));
}

AnsatzSystem::AnsatzSystem(const GeodeTable& data, AnsatzSpec spec, std::vector<MultiIndex> points)
    : data_(&data),
      spec_(spec),
      points_(std::move(points)),
      monomials_(monomials_upto(spec.degree, spec.index_vars())) {
  check_spec_against_data(data, spec_);
  shifted_.resize(points_.size());
  for (std::size_t r = 0; r < points_.size(); ++r) {
    for (int j = 0; j <= spec_.order; ++j) {
      auto key = shifted_key(points_[r], spec_, j);
      const BigInt* v = data_->find(key);
      if (!v) throw std::out_of_range("AnsatzSystem: point " + points_[r].to_string() + " is not admissible");
      shifted_[r].push_back(*v);
    }
  }
}

modular::Matrix AnsatzSystem::residues(std::uint32_t p) const {
  const std::size_t nm = monomials_.size();
  const std::size_t v = spec_.index_vars();
  modular::Matrix out(points_.size(), spec_.unknowns(), p);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < points_.size(); ++r) {
    std::vector<std::vector<std::uint32_t>> powers(v, std::vector<std::uint32_t>(spec_.degree + 1));
    for (std::size_t i = 0; i < v; ++i) {
      std::uint32_t base = static_cast<std::uint32_t>(points_[r][i]) % p;
      powers[i][0] = 1;
      for (int d = 1; d <= spec_.degree; ++d) powers[i][d] = modular::mul_mod(powers[i][d - 1], base, p);
    }
    std::vector<std::uint32_t> mono(nm);
    for (std::size_t a = 0; a < nm; ++a) {
      std::uint32_t x = 1;
      for (std::size_t i = 0; i < v; ++i) x = modular::mul_mod(x, powers[i][monomials_[a][i]], p);
      mono[a] = x;
    }
    for (int j = 0; j <= spec_.order; ++j) {
      const std::uint32_t g = modular::reduce(shifted_[r][j], p);
      for (std::size_t a = 0; a < nm; ++a) {
        out.at(r, static_cast<std::size_t>(j) * nm + a) = modular::mul_mod(g, mono[a], p);
      }
    }
  }
  return out;
}

BigInt AnsatzSystem::row_dot(std::size_t row, std::span<const BigInt> x) const {
  const std::size_t nm = monomials_.size();
  const std::size_t v = spec_.index_vars();
  std::vector<std::vector<BigInt>> powers(v, std::vector<BigInt>(spec_.degree + 1));
  for (std::size_t i = 0; i < v; ++i) {
    powers[i][0] = 1;
    for (int d = 1; d <= spec_.degree; ++d) powers[i][d] = powers[i][d - 1] * points_[row][i];
  }
  BigInt total = 0;
  BigInt poly, term;
  for (int j = 0; j <= spec_.order; ++j) {
    poly = 0;
    for (std::size_t a = 0; a < nm; ++a) {
      const BigInt& c = x[static_cast<std::size_t>(j) * nm + a];
      if (c == 0) continue;
      term = c;
      for (std::size_t i = 0; i < v; ++i) {
        if (monomials_[a][i]) term *= powers[i][monomials_[a][i]];
      }
      poly += term;
    }
    total += poly * shifted_[row][j];
  }
  return total;
}

std::vector<IndexPolynomial> AnsatzSystem::unpack(std::span<const BigInt> x) const {
  const std::size_t nm = monomials_.size();
  std::vector<IndexPolynomial> out;
  for (int j = 0; j <= spec_.order; ++j) {
    IndexPolynomial p(spec_.index_vars());
    for (std::size_t a = 0; a < nm; ++a) p.add_term(monomials_[a], x[static_cast<std::size_t>(j) * nm + a]);
    out.push_back(std::move(p));
  }
  return out;
}

ModularSolution solve_modular(const ExactSystem& system, std::span<const std::uint32_t> primes,
                              std::size_t max_nullity, std::uint64_t check_seed) {
  if (primes.empty()) throw std::invalid_argument("solve_modular: need at least one prime");
  const std::size_t cols = system.cols();
  ModularSolution sol;
  std::optional<modular::Nullspace> best;
  std::optional<modular::CrtAccumulator> acc;
  std::optional<std::vector<std::vector<BigInt>>> previous;

  for (std::uint32_t p : primes) {
    auto ns = modular::nullspace(system.residues(p), max_nullity);
    if (ns.free_cols.size() > max_nullity) {
      throw ReconstructionError("solve_modular: nullity " + std::to_string(ns.free_cols.size()) +
                                " exceeds the cap of " + std::to_string(max_nullity));
    }
    // Reduction mod p can only lose rank or push pivots right; the true
    // structure is the maximal rank with lexicographically smallest pivots.
    bool better = !best || ns.rank > best->rank ||
                  (ns.rank == best->rank && ns.pivot_cols < best->pivot_cols);
    bool worse = best && (ns.rank < best->rank ||
                          (ns.rank == best->rank && ns.pivot_cols > best->pivot_cols));
    if (worse) {
      sol.primes_discarded.push_back(p);
      continue;
    }
    if (better) {
      if (best) {
        sol.primes_discarded.insert(sol.primes_discarded.end(), sol.primes_used.begin(),
                                    sol.primes_used.end());
        sol.primes_used.clear();
      }
      best = ns;
      acc.emplace(ns.free_cols.size() * cols);
      previous.reset();
    }
    sol.rank = ns.rank;
    sol.primes_used.push_back(p);
    if (ns.free_cols.empty()) {
      // Full column rank modulo p implies full column rank over Q.
      return sol;
    }
    std::vector<std::uint32_t> flat;
    flat.reserve(ns.basis.size() * cols);
    for (const auto& b : ns.basis) flat.insert(flat.end(), b.begin(), b.end());
    acc->add(flat, p);

    std::vector<std::vector<BigInt>> lifted;
    bool ok = true;
    for (std::size_t i = 0; i < ns.basis.size() && ok; ++i) {
      auto v = modular::reconstruct_integer_vector(*acc, i * cols, cols);
      if (!v) {
        ok = false;
      } else {
        lifted.push_back(std::move(*v));
      }
    }
    if (!ok) {
      previous.reset();
      continue;
    }
    if (previous && *previous == lifted) {
      std::mt19937_64 rng(check_seed);
      bool annihilates = true;
      const std::size_t checks = std::min<std::size_t>(10, system.rows());
      for (std::size_t t = 0; t < checks && annihilates; ++t) {
        std::size_t row = system.rows() ? rng() % system.rows() : 0;
        for (const auto& v : lifted) {
          if (system.row_dot(row, v) != 0) {
            annihilates = false;
            break;
          }
        }
      }
      if (annihilates) {
        sol.basis = std::move(lifted);
        return sol;
      }
    }
    previous = std::move(lifted);
  }
  throw ReconstructionError("solve_modular: rational reconstruction did not stabilise after " +
                            std::to_string(sol.primes_used.size()) + " primes");
}

namespace {

bool annihilates_all(const AnsatzSystem& sys, std::span<const BigInt> x) {
  bool ok = true;
#pragma omp parallel for schedule(dynamic, 16) reduction(&& : ok)
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    if (ok && sys.row_dot(r, x) != 0) ok = false;
  }
  return ok;
}

}  // namespace

GuessReport guess(const GeodeTable& data, const AnsatzSpec& spec, const GuessOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  GuessReport report;
  report.spec = spec;
  report.unknowns = spec.unknowns();
  auto finish = [&]() -> GuessReport {
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  check_spec_against_data(data, spec);
  LinearSystemPlan plan;
  try {
    plan = plan_system(data, spec, opts);
  } catch (const InsufficientDataError& e) {
    report.status = GuessStatus::InsufficientData;
    report.rows_admissible = admissible_points(data, spec).size();
    report.rows_needed = rows_needed(spec, opts);
    report.table_needed = required_table_size(spec, opts);
    report.message = e.what();
    if (report.table_needed) {
      report.message += "; a table with max total " + std::to_string(*report.table_needed) + " would suffice";
    }
    return finish();
  }
  report.rows_admissible = plan.admissible;
  report.rows_needed = plan.rows_needed;
  report.rows_used = plan.training.size();
  report.holdout_rows = plan.holdout.size();

  AnsatzSystem training(data, spec, plan.training);
  AnsatzSystem holdout(data, spec, plan.holdout);
  auto primes = modular::pick_primes(opts.max_primes, opts.prime_seed);
  ModularSolution sol = solve_modular(training, primes, opts.max_nullity, opts.prime_seed);
  report.primes_used = sol.primes_used;
  report.nullity = sol.basis.size();
  if (sol.basis.empty()) {
    report.status = GuessStatus::NoSolution;
    report.message = "trivial nullspace";
    return finish();
  }

  const std::size_t dims = spec.direction.is_diagonal() ? data.ambient_dims() : spec.num_vars;
  for (auto& x : sol.basis) {
    auto polys = training.unpack(x);
    if (polys[0].is_zero()) {
      ++report.candidates_rejected;
      continue;
    }
    if (polys[0].leading_coeff() < 0) {
      for (auto& c : x) c = -c;
      for (auto& p : polys) p = -p;
    }
    if (!annihilates_all(holdout, x) || !annihilates_all(training, x)) {
      ++report.candidates_rejected;
      continue;
    }
    Candidate cand{polys, PureRecurrence::from_operator(spec.direction, polys, dims), {}, {}};
    cand.degrees = cand.recurrence.degree_report();
    for (const auto* pts : {&plan.training, &plan.holdout}) {
      for (const auto& m : *pts) {
        std::vector<long> pt(m.exponents().begin(), m.exponents().end());
        if (polys[0].evaluate(pt) == 0) cand.leading_zeros.push_back(m);
      }
    }
    std::sort(cand.leading_zeros.begin(), cand.leading_zeros.end());
    report.candidates.push_back(std::move(cand));
  }
  std::stable_sort(report.candidates.begin(), report.candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     auto ka = std::make_pair(a.degrees.numerator + a.degrees.denominator, a.degrees.denominator);
                     auto kb = std::make_pair(b.degrees.numerator + b.degrees.denominator, b.degrees.denominator);
                     return ka < kb;
                   });
  if (report.candidates.empty()) {
    report.status = GuessStatus::NoSolution;
    report.message = "every nullspace vector was trivial or failed validation";
  } else {
    report.status = GuessStatus::Found;
    report.validated = true;
  }
  return finish();
}

std::vector<GuessReport> search(const GeodeTable& data, Direction direction,
                                std::pair<int, int> order_range, std::pair<int, int> degree_range,
                                const SearchOptions& opts) {
  const std::size_t k = data.kind() == GeodeTable::Kind::Diagonal ? data.ambient_dims() : data.num_vars();
  std::vector<AnsatzSpec> specs;
  for (int r = order_range.first; r <= order_range.second; ++r) {
    for (int d = degree_range.first; d <= degree_range.second; ++d) {
      specs.push_back(AnsatzSpec{k, direction, r, d});
    }
  }
  std::stable_sort(specs.begin(), specs.end(), [](const AnsatzSpec& a, const AnsatzSpec& b) {
    return a.unknowns() < b.unknowns();
  });
  std::vector<GuessReport> reports;
  for (const auto& spec : specs) {
    reports.push_back(guess(data, spec, opts.guess));
    if (!opts.exhaustive && reports.back().status == GuessStatus::Found) break;
  }
  return reports;
}

GeodeTable diagonal_table(const GeodeTable& full) {
  if (full.kind() != GeodeTable::Kind::Full) throw std::invalid_argument("diagonal_table: needs a full table");
  const int k = static_cast<int>(full.num_vars());
  const int n_max = full.max_total() / k;
  GeodeTable out(1, n_max, GeodeTable::Kind::Diagonal, full.num_vars());
  for (int n = 0; n <= n_max; ++n) {
    out.insert(MultiIndex{n}, full.at(MultiIndex(std::vector<int>(full.num_vars(), n))));
  }
  return out;
}

GeodeTable diagonal_table(const RecurrenceSystem& sys, int n_max, const EvalOptions& opts) {
  std::vector<MultiIndex> points;
  for (int n = 0; n <= n_max; ++n) points.emplace_back(std::vector<int>(sys.k(), n));
  auto values = eval_pure_many(sys, points, opts);
  GeodeTable out(1, n_max, GeodeTable::Kind::Diagonal, sys.k());
  for (int n = 0; n <= n_max; ++n) out.insert(MultiIndex{n}, std::move(values[static_cast<std::size_t>(n)]));
  return out;
}

}  // namespace geode
