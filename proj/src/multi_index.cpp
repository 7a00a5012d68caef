#include "geode/multi_index.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace geode {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  if (e_.empty()) {
    throw std::invalid_argument("MultiIndex: needs at least one entry");
  }
  for (int v : e_) {
    if (v < 0) {
      throw std::invalid_argument("MultiIndex: negative entry");
    }
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(std::size_t k) {
  return MultiIndex(std::vector<int>(k, 0));
}

int MultiIndex::total() const { return std::accumulate(e_.begin(), e_.end(), 0); }

int MultiIndex::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < e_.size(); ++i) w += static_cast<int>(i + 1) * e_[i];
  return w;
}

std::optional<MultiIndex> MultiIndex::shifted(std::size_t axis, int delta) const {
  if (e_[axis] + delta < 0) return std::nullopt;
  MultiIndex out = *this;
  out.e_[axis] += delta;
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

std::size_t MultiIndexHash::operator()(const MultiIndex& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : m.exponents()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void compositions_rec(int remaining, std::size_t pos, std::vector<int>& cur,
                      const std::function<void(std::span<const int>)>& fn) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    fn(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    compositions_rec(remaining - v, pos + 1, cur, fn);
  }
}

}  // namespace

void for_each_composition(int n, std::size_t k,
                          const std::function<void(std::span<const int>)>& fn) {
  if (k == 0 || n < 0) return;
  std::vector<int> cur(k, 0);
  compositions_rec(n, 0, cur, fn);
}

std::vector<MultiIndex> compositions(int n, std::size_t k) {
  std::vector<MultiIndex> out;
  for_each_composition(n, k, [&](std::span<const int> e) {
    out.emplace_back(std::vector<int>(e.begin(), e.end()));
  });
  return out;
}

std::size_t composition_count(int n, std::size_t k) {
  if (n < 0 || k == 0) return 0;
  // binom(n + k - 1, k - 1) computed incrementally; saturates on overflow.
  unsigned __int128 c = 1;
  const auto cap = static_cast<unsigned __int128>(std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 1; i < k; ++i) {
    c = c * static_cast<unsigned>(n + i) / i;
    if (c > cap) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(c);
}

}  // namespace geode
