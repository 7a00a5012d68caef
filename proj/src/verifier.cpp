#include "geode/verifier.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "geode/errors.hpp"

namespace geode {

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

namespace {

const char* kEvidenceNote =
    "window agreement is evidence only: the argument that it forces the difference "
    "sequence to vanish also needs order bounds, which are not computed here";

std::vector<MultiIndex> cube(std::size_t k, int K) {
  std::vector<MultiIndex> out;
  std::vector<int> e(k, 0);
  while (true) {
    out.emplace_back(e);
    std::size_t i = k;
    while (i-- > 0) {
      if (e[i] < K) {
        ++e[i];
        break;
      }
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// Marks failures in parallel, then reports the first one in point order.
template <class Fn>
std::optional<std::size_t> first_failing(std::size_t n, Fn&& fails) {
  std::vector<char> bad(n, 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < n; ++i) bad[i] = fails(i) ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (bad[i]) return i;
  }
  return std::nullopt;
}

CheckResult operator_check(const PureRecurrence& rec, const GeodeTable& oracle,
                           std::span<const MultiIndex> points, const std::string& name,
                           const std::string& params) {
  CheckResult c{name, params, true, std::nullopt, {}};
  const std::size_t axis = rec.direction().axis_index();
  const int r = static_cast<int>(rec.order());
  std::vector<MultiIndex> active;
  for (const auto& m : points) {
    if (m[axis] >= r) active.push_back(m);
  }
  std::vector<char> skipped(active.size(), 0);
  auto bad = first_failing(active.size(), [&](std::size_t i) {
    const MultiIndex& m = active[i];
    std::vector<long> point(m.exponents().begin(), m.exponents().end());
    std::vector<BigInt> shifted;
    for (int j = 1; j <= r; ++j) shifted.push_back(oracle.at(*m.shifted(axis, -j)));
    try {
      auto v = rec.step(point, shifted);
      if (!v) {
        skipped[i] = 1;
        return false;
      }
      return *v != oracle.at(m);
    } catch (const NonIntegralStepError&) {
      return true;
    }
  });
  const auto n_skipped = std::count(skipped.begin(), skipped.end(), 1);
  c.detail = std::to_string(active.size()) + " points";
  if (n_skipped) c.detail += ", " + std::to_string(n_skipped) + " skipped (vanishing denominator)";
  if (bad) {
    c.passed = false;
    c.counterexample = active[*bad];
    c.detail = "operator does not vanish at " + active[*bad].to_string();
  }
  return c;
}

}  // namespace

VerificationReport verify_window(const RecurrenceSystem& sys, int K) {
  if (K < 0) throw std::invalid_argument("verify_window: K must be >= 0");
  const std::size_t k = sys.k();
  VerificationReport rep;
  rep.subject = std::to_string(k) + "-dimensional system, window size " + std::to_string(sys.window_size());
  const std::string params = "K=" + std::to_string(K);
  const GeodeTable oracle = geode_table(static_cast<int>(k) * K, k);
  const auto points = cube(k, K);

  CheckResult agree{"window-agreement", params, true, std::nullopt, std::to_string(points.size()) + " points"};
  EvalOptions opts;
  opts.require_verified = false;
  std::vector<BigInt> values;
  try {
    values = eval_pure_many(sys, points, opts);
  } catch (const NonIntegralStepError& e) {
    values.clear();
    agree.passed = false;
    agree.detail = e.what();
  }
  if (!values.empty()) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (values[i] != oracle.at(points[i])) {
        agree.passed = false;
        agree.counterexample = points[i];
        agree.detail = "recurrence value differs from the oracle at " + points[i].to_string();
        break;
      }
    }
  } else {
    // Locate the first point whose own evaluation fails.
    for (const auto& m : points) {
      try {
        if (eval_pure(sys, m, opts) != oracle.at(m)) throw NonIntegralStepError("mismatch");
      } catch (const NonIntegralStepError&) {
        agree.counterexample = m;
        break;
      }
    }
  }
  rep.checks.push_back(std::move(agree));

  for (std::size_t d = 0; d < k; ++d) {
    rep.checks.push_back(operator_check(sys.recurrence(d), oracle, points,
                                        "operator-direction-" + std::to_string(d + 1), params));
  }
  if (K <= sys.window_size()) {
    rep.window_too_small = true;
    rep.notes.push_back("window too small: the cube barely extends past the initial values");
  }
  rep.notes.push_back(kEvidenceNote);
  return rep;
}

VerificationReport verify_pure(const PureRecurrence& rec, int K) {
  if (rec.direction().is_diagonal()) throw std::invalid_argument("verify_pure: needs an axis recurrence");
  const std::size_t k = rec.num_vars();
  VerificationReport rep;
  rep.subject = std::to_string(k) + "-dimensional recurrence in direction " + rec.direction().to_string();
  const GeodeTable oracle = geode_table(static_cast<int>(k) * K, k);
  const auto points = cube(k, K);
  rep.checks.push_back(operator_check(rec, oracle, points, "operator-direction-" + rec.direction().to_string(),
                                      "K=" + std::to_string(K)));
  if (K <= static_cast<int>(rec.order())) {
    rep.window_too_small = true;
    rep.notes.push_back("window too small: the cube barely extends past the recurrence order");
  }
  rep.notes.push_back(kEvidenceNote);
  return rep;
}

VerificationReport verify_diagonal(const PureRecurrence& rec, const BigInt& g1, const BigInt& g2, int K,
                                   long steps, const RecurrenceSystem* fallback) {
  if (!rec.direction().is_diagonal() || rec.order() != 2) {
    throw std::invalid_argument("verify_diagonal: needs an order-2 diagonal recurrence");
  }
  const std::size_t k = rec.dimension();
  VerificationReport rep;
  rep.subject = std::to_string(k) + "-dimensional diagonal recurrence";
  const long n_max = std::max<long>(steps, K);

  CheckResult integral{"integral-steps", "n<=" + std::to_string(n_max), true, std::nullopt, {}};
  std::vector<BigInt> seq{1, g1, g2};
  std::vector<long> point(1);
  std::size_t fallbacks = 0;
  for (long n = 3; n <= n_max; ++n) {
    point[0] = n;
    const BigInt shifted[2] = {seq[n - 1], seq[n - 2]};
    std::optional<BigInt> v;
    try {
      v = rec.step(point, shifted);
      if (!v) {
        if (!fallback) throw NonIntegralStepError("vanishing denominator");
        v = eval_pure(*fallback, MultiIndex(std::vector<int>(k, static_cast<int>(n))));
        ++fallbacks;
      }
    } catch (const NonIntegralStepError& e) {
      integral.passed = false;
      integral.counterexample = MultiIndex{static_cast<int>(n)};
      integral.detail = std::string(e.what()) + " at n = " + std::to_string(n);
      break;
    }
    seq.push_back(std::move(*v));
  }
  if (integral.passed && fallbacks) integral.detail = std::to_string(fallbacks) + " steps used the system";
  rep.checks.push_back(integral);

  CheckResult agree{"oracle-agreement", "1<=n<=" + std::to_string(K), true, std::nullopt, {}};
  for (int n = 1; n <= K && n < static_cast<int>(seq.size()); ++n) {
    if (seq[n] != geode_number_oracle(MultiIndex(std::vector<int>(k, n)))) {
      agree.passed = false;
      agree.counterexample = MultiIndex{n};
      agree.detail = "diagonal value differs from the oracle at n = " + std::to_string(n);
      break;
    }
  }
  if (!integral.passed && agree.passed && static_cast<long>(seq.size()) <= K) {
    agree.passed = false;
    agree.counterexample = integral.counterexample;
    agree.detail = "sequence stopped before n = " + std::to_string(K);
  }
  rep.checks.push_back(agree);
  if (K <= 2) {
    rep.window_too_small = true;
    rep.notes.push_back("window too small: only the initial values are compared");
  }
  rep.notes.push_back(kEvidenceNote);
  return rep;
}

VerificationReport verify_identity(const GeodeTable& table) {
  if (table.kind() != GeodeTable::Kind::Full) throw std::invalid_argument("verify_identity: needs a full table");
  VerificationReport rep;
  rep.subject = std::to_string(table.num_vars()) + "-dimensional table to total " +
                std::to_string(table.max_total());
  std::vector<MultiIndex> keys;
  for (auto& m : table.keys()) {
    if (m.total() >= 1) keys.push_back(std::move(m));
  }
  auto bad = first_failing(keys.size(), [&](std::size_t i) {
    std::vector<int> e(keys[i].exponents().begin(), keys[i].exponents().end());
    BigInt sum = 0;
    for (std::size_t a = 0; a < e.size(); ++a) {
      --e[a];
      sum += table.value_or_zero(e);
      ++e[a];
    }
    return sum != hyper_catalan(keys[i]);
  });
  CheckResult c{"defining-identity", "1<=total<=" + std::to_string(table.max_total()), true, std::nullopt,
                std::to_string(keys.size()) + " points"};
  if (bad) {
    c.passed = false;
    c.counterexample = keys[*bad];
    c.detail = "sum of G(m - e_i) differs from C(m) at " + keys[*bad].to_string();
  }
  rep.checks.push_back(std::move(c));
  return rep;
}

VerificationReport verify_divisibility(int n_max, std::size_t k) {
  VerificationReport rep;
  rep.subject = "P_{n," + std::to_string(k) + "} for 1<=n<=" + std::to_string(n_max);
  CheckResult c{"simplex-divisibility", "n<=" + std::to_string(n_max) + " k=" + std::to_string(k), true,
                std::nullopt, {}};
  for (int n = 1; n <= n_max; ++n) {
    auto div = divide_by_simplex(build_P(n, k));
    if (!div.remainder.is_zero()) {
      c.passed = false;
      std::vector<int> witness(k, 0);
      witness[0] = n;
      c.counterexample = MultiIndex(witness);
      c.detail = "nonzero remainder at degree " + std::to_string(n);
      break;
    }
  }
  rep.checks.push_back(std::move(c));
  return rep;
}

VerificationReport verify_compatibility(const RecurrenceSystem& sys, std::span<const MultiIndex> sample) {
  VerificationReport rep;
  rep.subject = std::to_string(sys.k()) + "-dimensional system";
  std::vector<MultiIndex> points(sample.begin(), sample.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<std::size_t> perm(sys.k());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<BigInt>> by_order;
  EvalOptions opts;
  opts.require_verified = false;
  CheckResult c{"path-independence", "", true, std::nullopt, std::to_string(points.size()) + " points"};
  do {
    opts.direction_order = perm;
    try {
      by_order.push_back(eval_pure_many(sys, points, opts));
    } catch (const NonIntegralStepError& e) {
      // A correct system never leaves the integers; find the first point
      // that does.
      c.passed = false;
      c.detail = e.what();
      for (const auto& m : points) {
        try {
          eval_pure(sys, m, opts);
        } catch (const NonIntegralStepError&) {
          c.counterexample = m;
          break;
        }
      }
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  c.parameters = std::to_string(by_order.size()) + " orderings";
  for (std::size_t i = 0; i < points.size() && c.passed; ++i) {
    for (std::size_t o = 1; o < by_order.size(); ++o) {
      if (by_order[o][i] != by_order[0][i]) {
        c.passed = false;
        c.counterexample = points[i];
        c.detail = "reduction orders disagree at " + points[i].to_string();
        break;
      }
    }
  }
  rep.checks.push_back(std::move(c));
  return rep;
}

std::vector<MultiIndex> random_points(std::size_t k, int max_total, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<MultiIndex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int t = static_cast<int>(rng() % static_cast<std::uint64_t>(max_total + 1));
    std::vector<int> cuts{0, t};
    for (std::size_t j = 1; j < k; ++j) cuts.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(t + 1)));
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> e(k);
    for (std::size_t j = 0; j < k; ++j) e[j] = cuts[j + 1] - cuts[j];
    out.emplace_back(std::move(e));
  }
  return out;
}

}  // namespace geode
