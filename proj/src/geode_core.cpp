#include "geode/geode_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "geode/errors.hpp"

namespace geode {

std::size_t default_term_cap() {
  std::size_t c = 10'000'000;
  if (const char* env = std::getenv("GEODE_TERM_CAP")) {
    try {
      c = static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      // Malformed override; keep the default.
    }
  }
  return c;
}

namespace {

void check_cap(std::size_t needed, std::size_t cap, const char* what) {
  if (needed > cap) {
    throw ResourceLimitError(std::string(what) + ": needs " + std::to_string(needed) +
                             " terms, cap is " + std::to_string(cap));
  }
}

// total! / (m_1! ... m_k!) as a product of binomials.
BigInt multinomial(std::span<const int> m) {
  BigInt result = 1;
  BigInt b;
  unsigned long partial = 0;
  for (int v : m) {
    partial += static_cast<unsigned long>(v);
    mpz_bin_uiui(b.get_mpz_t(), partial, static_cast<unsigned long>(v));
    result *= b;
  }
  return result;
}

}  // namespace

BigInt hyper_catalan(std::span<const int> m) {
  unsigned long total = 0;
  unsigned long weight = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw std::invalid_argument("hyper_catalan: negative index");
    total += static_cast<unsigned long>(m[i]);
    weight += static_cast<unsigned long>(i + 1) * static_cast<unsigned long>(m[i]);
  }
  if (total == 0) return 1;
  // W!/((V+1)! prod m_i!) = binom(W, V+1) * multinomial(m) / |m|, W = |m| + V.
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), total + weight, weight + 1);
  result *= multinomial(m);
  mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), total);
  return result;
}

BigInt hyper_catalan(const MultiIndex& m) { return hyper_catalan(m.exponents()); }

HomogeneousPoly build_P(int n, std::size_t k, std::size_t term_cap) {
  if (n < 1 || k < 1) throw std::invalid_argument("build_P: need n >= 1 and k >= 1");
  check_cap(composition_count(n, k), term_cap, "build_P");
  HomogeneousPoly p(n, k);
  for_each_composition(n, k, [&](std::span<const int> e) { p.set(e, hyper_catalan(e)); });
  return p;
}

SimplexDivision divide_by_simplex(const HomogeneousPoly& p) {
  const int n = p.degree();
  const std::size_t k = p.num_vars();
  if (n < 1) throw std::invalid_argument("divide_by_simplex: degree must be >= 1");

  HomogeneousPoly q(n - 1, k);
  std::vector<int> up(k);
  std::vector<int> other(k);
  // Decreasing lex order guarantees every q(m + e_1 - e_i) is already known.
  for_each_composition(n - 1, k, [&](std::span<const int> m) {
    std::copy(m.begin(), m.end(), up.begin());
    up[0] += 1;
    BigInt c = p.coeff(up);
    for (std::size_t i = 1; i < k; ++i) {
      if (m[i] == 0) continue;
      std::copy(up.begin(), up.end(), other.begin());
      other[i] -= 1;
      c -= q.coeff(other);
    }
    q.set(m, c);
  });

  HomogeneousPoly r(n, k);
  std::vector<int> down(k);
  for_each_composition(n, k, [&](std::span<const int> a) {
    BigInt c = p.coeff(a);
    for (std::size_t i = 0; i < k; ++i) {
      if (a[i] == 0) continue;
      std::copy(a.begin(), a.end(), down.begin());
      down[i] -= 1;
      c -= q.coeff(down);
    }
    r.set(a, c);
  });
  return {std::move(q), std::move(r)};
}

HomogeneousPoly geode_poly(int n, std::size_t k, std::size_t term_cap) {
  if (n < 0 || k < 1) throw std::invalid_argument("geode_poly: need n >= 0 and k >= 1");
  auto div = divide_by_simplex(build_P(n + 1, k, term_cap));
  if (!div.remainder.is_zero()) {
    throw InconsistencyError("geode_poly: P_{" + std::to_string(n + 1) + "," +
                             std::to_string(k) + "} left a nonzero remainder");
  }
  return std::move(div.quotient);
}

BigInt geode_number_oracle(const MultiIndex& m, std::size_t term_cap) {
  const std::size_t k = m.size();
  const int total = m.total();
  std::vector<int> point(k);
  if (k == 1) {
    point[0] = total + 1;
    return hyper_catalan(point);
  }

  // Box over coordinates 2..k: b_i in [0, m_i]. Coordinate 1 is implied by
  // the total. The sweep rolls over coordinate 2 so only two slabs of
  // prod_{i>=3}(m_i + 1) values are live at once.
  std::size_t box = 1;
  for (std::size_t i = 1; i < k; ++i) {
    box = (box > term_cap) ? box : box * static_cast<std::size_t>(m[i] + 1);
  }
  check_cap(box, term_cap, "geode_number_oracle");

  std::size_t slab = 1;
  std::vector<std::size_t> stride(k, 0);
  for (std::size_t i = 2; i < k; ++i) {
    stride[i] = slab;
    slab *= static_cast<std::size_t>(m[i] + 1);
  }
  std::vector<BigInt> prev(slab), cur(slab);
  std::vector<int> rest(k, 0);

  for (int b2 = 0; b2 <= m[1]; ++b2) {
    std::fill(rest.begin(), rest.end(), 0);
    for (std::size_t idx = 0; idx < slab; ++idx) {
      int sum = b2;
      for (std::size_t i = 2; i < k; ++i) sum += rest[i];
      // q at (total - sum, b2, rest...) needs C at the point with coordinate 1 raised.
      point[0] = total - sum + 1;
      point[1] = b2;
      for (std::size_t i = 2; i < k; ++i) point[i] = rest[i];
      BigInt v = hyper_catalan(point);
      if (b2 > 0) v -= prev[idx];
      for (std::size_t i = 2; i < k; ++i) {
        if (rest[i] > 0) v -= cur[idx - stride[i]];
      }
      cur[idx] = std::move(v);
      // advance the mixed-radix counter over coordinates 3..k
      for (std::size_t i = 2; i < k; ++i) {
        if (++rest[i] <= m[i]) break;
        rest[i] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return prev[slab - 1];
}

GeodeTable::GeodeTable(std::size_t num_vars, int max_total, Kind kind, std::size_t ambient_dims)
    : num_vars_(num_vars),
      max_total_(max_total),
      kind_(kind),
      ambient_dims_(ambient_dims == 0 ? num_vars : ambient_dims) {
  if (num_vars == 0) throw std::invalid_argument("GeodeTable: need k >= 1");
  if (kind == Kind::Diagonal && num_vars != 1) {
    throw std::invalid_argument("GeodeTable: diagonal tables are keyed by a single index");
  }
}

bool GeodeTable::contains(const MultiIndex& m) const { return values_.count(m) != 0; }

const BigInt& GeodeTable::at(const MultiIndex& m) const {
  auto it = values_.find(m);
  if (it == values_.end()) {
    throw std::out_of_range("GeodeTable: no value for " + m.to_string());
  }
  return it->second;
}

const BigInt* GeodeTable::find(std::span<const int> e) const {
  for (int v : e) {
    if (v < 0) return nullptr;
  }
  auto it = values_.find(MultiIndex(std::vector<int>(e.begin(), e.end())));
  return it == values_.end() ? nullptr : &it->second;
}

BigInt GeodeTable::value_or_zero(std::span<const int> e) const {
  for (int v : e) {
    if (v < 0) return 0;
  }
  return at(MultiIndex(std::vector<int>(e.begin(), e.end())));
}

void GeodeTable::insert(const MultiIndex& m, BigInt value) {
  if (m.size() != num_vars_) throw std::invalid_argument("GeodeTable: index has wrong length");
  values_[m] = std::move(value);
}

std::vector<MultiIndex> GeodeTable::keys() const {
  std::vector<MultiIndex> out;
  out.reserve(values_.size());
  for (const auto& [m, v] : values_) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Q_{n,k} coefficients in decreasing lex order, as (index, value) pairs.
std::vector<std::pair<MultiIndex, BigInt>> geode_slice(int n, std::size_t k) {
  std::vector<std::pair<MultiIndex, BigInt>> out;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> pos;
  std::vector<int> up(k);
  for_each_composition(n, k, [&](std::span<const int> m) {
    std::copy(m.begin(), m.end(), up.begin());
    up[0] += 1;
    BigInt c = hyper_catalan(up);
    for (std::size_t i = 1; i < k; ++i) {
      if (m[i] == 0) continue;
      up[i] -= 1;
      c -= out[pos.at(MultiIndex(up))].second;
      up[i] += 1;
    }
    MultiIndex key(std::vector<int>(m.begin(), m.end()));
    pos.emplace(key, out.size());
    out.emplace_back(std::move(key), std::move(c));
  });
  return out;
}

std::size_t table_point_count(int n_max, std::size_t k) {
  std::size_t total = 0;
  for (int n = 0; n <= n_max; ++n) total += composition_count(n, k);
  return total;
}

}  // namespace

GeodeTable geode_table_serial(int n_max, std::size_t k, std::size_t term_cap) {
  if (n_max < 0 || k < 1) throw std::invalid_argument("geode_table: need n_max >= 0, k >= 1");
  check_cap(table_point_count(n_max, k), term_cap, "geode_table");
  GeodeTable table(k, n_max);
  for (int n = 0; n <= n_max; ++n) {
    for (auto& [m, v] : geode_slice(n, k)) table.insert(m, std::move(v));
  }
  return table;
}

GeodeTable geode_table(int n_max, std::size_t k, std::size_t term_cap) {
  if (n_max < 0 || k < 1) throw std::invalid_argument("geode_table: need n_max >= 0, k >= 1");
  check_cap(table_point_count(n_max, k), term_cap, "geode_table");
  std::vector<std::vector<std::pair<MultiIndex, BigInt>>> slices(static_cast<std::size_t>(n_max) + 1);
  // Largest slices first so the dynamic schedule balances.
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i <= n_max; ++i) {
    int n = n_max - i;
    slices[static_cast<std::size_t>(n)] = geode_slice(n, k);
  }
  GeodeTable table(k, n_max);
  for (auto& slice : slices) {
    for (auto& [m, v] : slice) table.insert(m, std::move(v));
  }
  return table;
}

}  // namespace geode
