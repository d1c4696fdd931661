#include "ordtop/catalog.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ordtop/errors.hpp"

namespace ordtop {

std::vector<FinitePoset> poset_catalog(size_t n) {
  if (n == 0) return {FinitePoset::antichain(0)};
  if (n > 6) throw contract_error("the exhaustive catalog is capped at 6 points");
  size_t pairs = n * (n - 1) / 2;
  std::vector<std::pair<size_t, size_t>> slots;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::set<std::vector<uint8_t>> seen;
  std::vector<FinitePoset> out;
  for (uint64_t bits = 0; bits < (uint64_t{1} << pairs); ++bits) {
    std::vector<bool> leq(n * n, false);
    for (size_t i = 0; i < n; ++i) leq[i * n + i] = true;
    for (size_t s = 0; s < pairs; ++s)
      if ((bits >> s) & 1) leq[slots[s].first * n + slots[s].second] = true;
    // transitive closure; stays antisymmetric because edges point upward
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i)
        if (leq[i * n + k])
          for (size_t j = 0; j < n; ++j)
            if (leq[k * n + j]) leq[i * n + j] = true;
    FinitePoset p = FinitePoset::from_leq(n, leq);
    auto code = p.canonical_code();
    if (seen.insert(code).second) out.push_back(std::move(p));
  }
  return out;
}

FinitePoset random_poset(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<bool> leq(n * n, false);
  for (size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (coin(rng) < 0.3) leq[i * n + j] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  return FinitePoset::from_leq(n, leq);
}

std::vector<size_t> random_monotone_idempotent(const FinitePoset& p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  size_t n = p.size();
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (int attempt = 0; attempt < 512; ++attempt) {
    std::vector<size_t> f(n);
    for (size_t i = 0; i < n; ++i) f[i] = pick(rng);
    bool mono = true;
    for (size_t i = 0; i < n && mono; ++i)
      for (size_t j = 0; j < n && mono; ++j)
        if (p.leq(i, j) && !p.leq(f[i], f[j])) mono = false;
    if (!mono) continue;
    // Iterated composition of a monotone self-map of a finite poset
    // reaches an idempotent.
    for (int round = 0; round < 64; ++round) {
      std::vector<size_t> ff(n);
      for (size_t i = 0; i < n; ++i) ff[i] = f[f[i]];
      if (ff == f) return f;
      f = std::move(ff);
    }
  }
  // The identity is always available.
  std::vector<size_t> id(n);
  for (size_t i = 0; i < n; ++i) id[i] = i;
  return id;
}

Mask random_upset(const FinitePoset& p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Mask gen = 0;
  for (size_t i = 0; i < p.size(); ++i)
    if (coin(rng) < 0.4) gen |= Mask{1} << i;
  return p.up_of(gen);
}

}  // namespace ordtop
