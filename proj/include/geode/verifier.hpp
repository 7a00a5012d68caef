#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geode/geode_core.hpp"
#include "geode/multi_index.hpp"
#include "geode/recurrence.hpp"

namespace geode {

struct CheckResult {
  std::string name;
  std::string parameters;
  bool passed = true;
  std::optional<MultiIndex> counterexample;  // set whenever passed is false
  std::string detail;
};

struct VerificationReport {
  std::string subject;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  bool window_too_small = false;

  bool passed() const;
  const CheckResult* first_failure() const;
};

// Agreement of the recurrence-defined G' with the oracle on the cube
// [0, K]^k, and the vanishing of every pure operator applied to oracle
// values on the same cube. This is evidence, not proof: a proof would also
// need order bounds for the difference sequence, which are not computed.
VerificationReport verify_window(const RecurrenceSystem& sys, int K);

// The operator of a single pure recurrence applied to oracle values on [0, K]^k.
VerificationReport verify_pure(const PureRecurrence& rec, int K);

// eval_diagonal against the oracle for 1 <= n <= K, plus integrality of
// every forward step up to `steps`.
VerificationReport verify_diagonal(const PureRecurrence& rec, const BigInt& g1, const BigInt& g2,
                                   int K, long steps = 200, const RecurrenceSystem* fallback = nullptr);

// sum_i G(m - e_i) = C(m) at every key with total >= 1 (negative indices read as 0).
VerificationReport verify_identity(const GeodeTable& table);

// Zero remainder of P_{n,k} modulo t_1 + ... + t_k for 1 <= n <= n_max.
VerificationReport verify_divisibility(int n_max, std::size_t k);

// eval_pure under every ordering of the reduction axes agrees at each point.
VerificationReport verify_compatibility(const RecurrenceSystem& sys, std::span<const MultiIndex> sample);

// Deterministic random points of N^k with total <= max_total.
std::vector<MultiIndex> random_points(std::size_t k, int max_total, std::size_t count, std::uint64_t seed);

}  // namespace geode
