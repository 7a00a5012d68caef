#include "geode/modular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geode::modular {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("inv_mod: zero has no inverse");
  return pow_mod(a, p - 2, p);
}

std::uint32_t reduce(const BigInt& x, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p));
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d : {2u, 3u, 5u, 7u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint32_t d = 11; static_cast<std::uint64_t>(d) * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> pick_primes(std::size_t count, std::uint64_t seed) {
  std::vector<std::uint32_t> out;
  std::uint64_t skip = seed;
  for (std::uint32_t n = kPrimeBound - 1; n > (kPrimeBound >> 1) && out.size() < count; n -= 2) {
    if (!is_prime(n)) continue;
    if (skip > 0) {
      --skip;
      continue;
    }
    out.push_back(n);
  }
  if (out.size() < count) throw std::runtime_error("pick_primes: ran out of primes");
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (p < 2 || p >= kPrimeBound) throw std::invalid_argument("Matrix: prime out of range");
}

namespace {

Nullspace finish_nullspace(std::uint32_t p, std::size_t cols,
                           std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> rows,
                           std::size_t max_nullity) {
  // rows: (lead column, row with 1 at lead and zeros before it). Back
  // substitution in descending lead order yields the reduced basis.
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Nullspace ns;
  ns.prime = p;
  ns.rank = rows.size();
  std::vector<bool> is_pivot(cols, false);
  for (const auto& r : rows) {
    ns.pivot_cols.push_back(r.first);
    is_pivot[r.first] = true;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) ns.free_cols.push_back(c);
  }
  if (ns.free_cols.size() > max_nullity) return ns;
  for (std::size_t f : ns.free_cols) {
    std::vector<std::uint32_t> x(cols, 0);
    x[f] = 1;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      const auto& [lead, r] = *it;
      std::uint64_t acc = 0;
      for (std::size_t j = lead + 1; j < cols; ++j) {
        if (x[j] && r[j]) acc = (acc + static_cast<std::uint64_t>(r[j]) * x[j]) % p;
      }
      x[lead] = static_cast<std::uint32_t>((p - acc) % p);
    }
    ns.basis.push_back(std::move(x));
  }
  return ns;
}

struct DoubleField {
  double p;
  double inv;
  explicit DoubleField(std::uint32_t prime)
      : p(static_cast<double>(prime)), inv(1.0 / static_cast<double>(prime)) {}

  double reduce(double x) const {
    double r = x - std::floor(x * inv) * p;
    if (r < 0) r += p;
    if (r >= p) r -= p;
    return r;
  }
};

// |x| grows by < p^2 per lazy update; 100 updates keep it below 2^53.
constexpr int kLazyLimit = 100;
constexpr std::size_t kBatch = 16;

void reduce_row(const DoubleField& f, double* v, std::size_t n) {
  const double p = f.p;
  const double inv = f.inv;
#pragma omp simd
  for (std::size_t j = 0; j < n; ++j) {
    double x = v[j];
    double r = x - std::floor(x * inv) * p;
    r = r < 0 ? r + p : r;
    r = r >= p ? r - p : r;
    v[j] = r;
  }
}

void axpy_lazy(double* v, const double* b, double factor, std::size_t n) {
#pragma omp simd
  for (std::size_t j = 0; j < n; ++j) v[j] = std::fma(-factor, b[j], v[j]);
}

}  // namespace

Nullspace nullspace(const Matrix& a, std::size_t max_nullity) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::uint32_t p = a.prime();
  const DoubleField field(p);

  std::vector<std::vector<double>> basis;
  std::vector<std::size_t> leads;
  basis.reserve(std::min(rows, cols));

  std::vector<std::vector<double>> batch(kBatch, std::vector<double>(cols));
  std::vector<int> pending(kBatch, 0);

  for (std::size_t start = 0; start < rows && basis.size() < cols; start += kBatch) {
    const std::size_t count = std::min(kBatch, rows - start);
    for (std::size_t b = 0; b < count; ++b) {
      auto src = a.row(start + b);
      std::copy(src.begin(), src.end(), batch[b].begin());
      pending[b] = 0;
    }

    // Against the existing basis: each basis row is streamed once per batch.
    const std::size_t existing = basis.size();
    for (std::size_t i = 0; i < existing; ++i) {
      const std::size_t lead = leads[i];
      const double* brow = basis[i].data();
#pragma omp parallel for schedule(static)
      for (std::size_t b = 0; b < count; ++b) {
        double* v = batch[b].data();
        double factor = field.reduce(v[lead]);
        if (factor == 0) {
          v[lead] = 0;
          continue;
        }
        axpy_lazy(v + lead, brow + lead, factor, cols - lead);
        v[lead] = 0;
        if (++pending[b] >= kLazyLimit) {
          reduce_row(field, v, cols);
          pending[b] = 0;
        }
      }
    }

    // Within the batch, sequentially.
    for (std::size_t b = 0; b < count; ++b) {
      double* v = batch[b].data();
      reduce_row(field, v, cols);
      for (std::size_t i = existing; i < basis.size(); ++i) {
        const std::size_t lead = leads[i];
        double factor = v[lead];
        if (factor == 0) continue;
        axpy_lazy(v + lead, basis[i].data() + lead, factor, cols - lead);
        reduce_row(field, v + lead, cols - lead);
      }
      std::size_t lead = 0;
      while (lead < cols && v[lead] == 0) ++lead;
      if (lead == cols) continue;
      const double inv = static_cast<double>(inv_mod(static_cast<std::uint32_t>(v[lead]), p));
      std::vector<double> row(cols, 0.0);
      for (std::size_t j = lead; j < cols; ++j) row[j] = field.reduce(v[j] * inv);
      basis.push_back(std::move(row));
      leads.push_back(lead);
    }
  }

  std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<std::uint32_t> r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = static_cast<std::uint32_t>(basis[i][j]);
    out.emplace_back(leads[i], std::move(r));
  }
  basis.clear();
  return finish_nullspace(p, cols, std::move(out), max_nullity);
}

Nullspace nullspace_serial(const Matrix& a, std::size_t max_nullity) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::uint32_t p = a.prime();
  std::vector<std::vector<std::uint32_t>> m(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = a.row(r);
    m[r].assign(src.begin(), src.end());
  }
  std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t piv = next;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[next]);
    const std::uint32_t inv = inv_mod(m[next][c], p);
    for (auto& x : m[next]) x = mul_mod(x, inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || m[r][c] == 0) continue;
      const std::uint64_t f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        m[r][j] = static_cast<std::uint32_t>((m[r][j] + (p - f) * m[next][j]) % p);
      }
    }
    pivots.emplace_back(c, m[next]);
    ++next;
  }
  return finish_nullspace(p, cols, std::move(pivots), max_nullity);
}

CrtAccumulator::CrtAccumulator(std::size_t width) : values_(width, 0) {}

void CrtAccumulator::add(std::span<const std::uint32_t> residues, std::uint32_t p) {
  if (residues.size() != values_.size()) {
    throw std::invalid_argument("CrtAccumulator: residue vector has wrong width");
  }
  if (prime_count_ == 0) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = residues[i];
    modulus_ = p;
    prime_count_ = 1;
    return;
  }
  // x' = x + M * ((r - x) * M^{-1} mod p)
  const std::uint32_t m_inv = inv_mod(reduce(modulus_, p), p);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::uint32_t x_mod = reduce(values_[i], p);
    std::uint32_t diff = (residues[i] + p - x_mod) % p;
    std::uint32_t t = mul_mod(diff, m_inv, p);
    if (t) values_[i] += modulus_ * t;
  }
  modulus_ *= p;
  ++prime_count_;
}

std::optional<BigRat> rational_reconstruct(const BigInt& a, const BigInt& modulus) {
  BigInt bound = sqrt(BigInt(modulus / 2));
  BigInt r0 = modulus;
  BigInt r1 = a % modulus;
  if (r1 < 0) r1 += modulus;
  BigInt t0 = 0, t1 = 1;
  BigInt q, tmp;
  while (r1 > bound) {
    q = r0 / r1;
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  BigRat out(t1 < 0 ? BigInt(-r1) : r1, abs(t1));
  out.canonicalize();
  return out;
}

std::optional<std::vector<BigInt>> reconstruct_integer_vector(const CrtAccumulator& acc,
                                                             std::size_t offset,
                                                             std::size_t length) {
  const BigInt& mod = acc.modulus();
  const BigInt half = mod / 2;
  const BigInt bound = sqrt(BigInt(mod / 2));
  BigInt denom = 1;
  std::vector<BigRat> vals;
  vals.reserve(length);
  BigInt y;
  for (std::size_t i = 0; i < length; ++i) {
    y = (acc.value(offset + i) * denom) % mod;
    if (y > half) y -= mod;
    if (abs(y) <= bound) {
      vals.emplace_back(y, denom);
      continue;
    }
    auto r = rational_reconstruct(y, mod);
    if (!r) return std::nullopt;
    BigInt den = r->get_den();
    vals.emplace_back(BigInt(r->get_num()), BigInt(denom * den));
    denom *= den;
  }
  std::vector<BigInt> out;
  out.reserve(length);
  BigInt g = 0;
  for (auto& v : vals) {
    v.canonicalize();
    BigInt x = v.get_num() * (denom / v.get_den());
    g = gcd(g, x);
    out.push_back(std::move(x));
  }
  if (g > 1) {
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

}  // namespace geode::modular
