#include "ordtop/order_core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ordtop/errors.hpp"

namespace ordtop {

void FinitePoset::check_partial_order(const std::vector<bool>& leq) const {
  for (size_t i = 0; i < n_; ++i)
    if (!leq[i * n_ + i]) throw contract_error("relation is not reflexive");
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j)
      if (i != j && leq[i * n_ + j] && leq[j * n_ + i])
        throw contract_error("relation is not antisymmetric");
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j)
      for (size_t k = 0; k < n_; ++k)
        if (leq[i * n_ + j] && leq[j * n_ + k] && !leq[i * n_ + k])
          throw contract_error("relation is not transitive");
}

FinitePoset FinitePoset::from_leq(size_t n, const std::vector<bool>& leq, std::vector<std::string> names) {
  if (n > 64) throw contract_error("finite carriers are capped at 64 elements");
  if (leq.size() != n * n) throw contract_error("leq matrix size mismatch");
  FinitePoset p;
  p.n_ = n;
  p.check_partial_order(leq);
  p.up_.assign(n, 0);
  p.down_.assign(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (leq[i * n + j]) {
        p.up_[i] |= Mask{1} << j;
        p.down_[j] |= Mask{1} << i;
      }
  if (names.empty()) {
    for (size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  }
  if (names.size() != n) throw contract_error("name list size mismatch");
  p.names_ = std::move(names);
  return p;
}

FinitePoset FinitePoset::from_covers(size_t n, const std::vector<std::pair<int, int>>& covers,
                                     std::vector<std::string> names) {
  if (n > 64) throw contract_error("finite carriers are capped at 64 elements");
  std::vector<bool> leq(n * n, false);
  for (size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (auto [a, b] : covers) leq[a * n + b] = true;
  // Floyd-Warshall style closure.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  return from_leq(n, leq, std::move(names));
}

FinitePoset FinitePoset::chain(size_t n) {
  std::vector<bool> leq(n * n, false);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) leq[i * n + j] = true;
  return from_leq(n, leq);
}

FinitePoset FinitePoset::antichain(size_t n) {
  std::vector<bool> leq(n * n, false);
  for (size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  return from_leq(n, leq);
}

Mask FinitePoset::up_of(Mask s) const {
  Mask out = 0;
  for (size_t i = 0; i < n_; ++i)
    if ((s >> i) & 1) out |= up_[i];
  return out;
}

Mask FinitePoset::down_of(Mask s) const {
  Mask out = 0;
  for (size_t i = 0; i < n_; ++i)
    if ((s >> i) & 1) out |= down_[i];
  return out;
}

bool FinitePoset::is_upset(Mask s) const { return up_of(s) == s || s == 0; }
bool FinitePoset::is_downset(Mask s) const { return down_of(s) == s || s == 0; }

std::optional<size_t> FinitePoset::index_of(const std::string& name) const {
  for (size_t i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FinitePoset::is_directed_mask(Mask s) const {
  if (s == 0) return false;
  for (size_t i = 0; i < n_; ++i) {
    if (!((s >> i) & 1)) continue;
    for (size_t j = i; j < n_; ++j) {
      if (!((s >> j) & 1)) continue;
      if ((up_[i] & up_[j] & s) == 0) return false;
    }
  }
  return true;
}

std::vector<Mask> FinitePoset::directed_masks() const {
  std::vector<Mask> out;
  Mask all = all_mask();
  for (Mask s = 1; s <= all && s != 0; ++s)
    if (is_directed_mask(s)) out.push_back(s);
  return out;
}

std::optional<size_t> FinitePoset::sup_mask(Mask s) const {
  Mask ub = all_mask();
  for (size_t i = 0; i < n_; ++i)
    if ((s >> i) & 1) ub &= up_[i];
  for (size_t m = 0; m < n_; ++m)
    if (((ub >> m) & 1) && (ub & ~up_[m]) == 0) return m;
  return std::nullopt;
}

std::optional<size_t> FinitePoset::max_element(Mask s) const {
  for (size_t m = 0; m < n_; ++m)
    if (((s >> m) & 1) && (s & ~down_[m]) == 0) return m;
  return std::nullopt;
}

std::vector<std::pair<size_t, size_t>> FinitePoset::covers() const {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t a = 0; a < n_; ++a)
    for (size_t b = 0; b < n_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (size_t c = 0; c < n_ && direct; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

std::vector<uint8_t> FinitePoset::canonical_code() const {
  std::vector<size_t> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<uint8_t> best;
  do {
    std::vector<uint8_t> code(n_ * n_, 0);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) code[i * n_ + j] = leq(perm[i], perm[j]) ? 1 : 0;
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_directed(const DirectedFamily& fam, const LeqOracle& leq, uint64_t bound) {
  if (fam.is_generator()) {
    for (uint64_t n = fam.start; n < fam.start + bound; ++n)
      if (!leq(fam.generator->at(n), fam.generator->at(n + 1))) return false;
    return true;
  }
  if (fam.explicit_points.empty()) return false;  // directedness requires nonemptiness
  const auto& ps = fam.explicit_points;
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i; j < ps.size(); ++j) {
      bool has_ub = false;
      for (size_t k = 0; k < ps.size() && !has_ub; ++k)
        if (leq(ps[i], ps[k]) && leq(ps[j], ps[k])) has_ub = true;
      if (!has_ub) return false;
    }
  return true;
}

std::optional<size_t> sup_of_directed(const FinitePoset& p, const std::vector<size_t>& fam) {
  Mask s = 0;
  for (size_t i : fam) {
    if (i >= p.size()) throw contract_error("element index out of range");
    s |= Mask{1} << i;
  }
  if (!p.is_directed_mask(s)) throw contract_error("family is not directed");
  return p.sup_mask(s);
}

bool is_dcpo(const FinitePoset& p) {
  for (Mask d : p.directed_masks())
    if (!p.sup_mask(d)) return false;
  return true;
}

bool is_consistent_dcpo(const FinitePoset& p) {
  for (Mask d : p.directed_masks()) {
    Mask ub = p.all_mask();
    for (size_t i = 0; i < p.size(); ++i)
      if ((d >> i) & 1) ub &= p.up_mask(i);
    if (ub != 0 && !p.sup_mask(d)) return false;
  }
  return true;
}

}  // namespace ordtop
