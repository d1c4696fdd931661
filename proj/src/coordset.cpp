#include "ordtop/coordset.hpp"

#include <algorithm>
#include <sstream>

#include "ordtop/errors.hpp"

namespace ordtop {

std::string extra_name(Extra e) {
  switch (e) {
    case Extra::Inf: return "inf";
    case Extra::A: return "a";
    case Extra::W1: return "w1";
    case Extra::W2: return "w2";
  }
  return "?";
}

Coord Coord::nat(uint64_t n) {
  Coord c;
  if (n >= kExtraBase) throw contract_error("coordinate value out of range");
  c.raw_ = n;
  return c;
}

Coord Coord::extra(Extra e) {
  Coord c;
  c.raw_ = kExtraBase + static_cast<uint64_t>(e);
  return c;
}

uint64_t Coord::nat() const {
  if (!is_nat()) throw family_error("expected a natural coordinate");
  return raw_;
}

Extra Coord::extra() const {
  if (is_nat()) throw family_error("expected a named coordinate");
  return static_cast<Extra>(raw_ - kExtraBase);
}

std::string Coord::str() const {
  return is_nat() ? std::to_string(nat()) : extra_name(extra());
}

void CoordSet::normalize() {
  while (!bits_.empty() && bits_.back() == tail_) bits_.pop_back();
}

void CoordSet::align(CoordSet& a, CoordSet& b) {
  size_t n = std::max(a.bits_.size(), b.bits_.size());
  a.bits_.resize(n, a.tail_);
  b.bits_.resize(n, b.tail_);
}

CoordSet CoordSet::nat_full() {
  CoordSet s;
  s.tail_ = true;
  return s;
}

CoordSet CoordSet::nat_tail(uint64_t k) {
  CoordSet s;
  s.bits_.assign(k, false);
  s.tail_ = true;
  return s;
}

CoordSet CoordSet::nat_range(uint64_t lo, uint64_t hi) {
  CoordSet s;
  if (lo >= hi) return s;
  s.bits_.assign(hi, false);
  for (uint64_t i = lo; i < hi; ++i) s.bits_[i] = true;
  return s;
}

CoordSet CoordSet::nat_single(uint64_t n) { return nat_range(n, n + 1); }

CoordSet CoordSet::nat_finite(std::initializer_list<uint64_t> xs) {
  return nat_finite(std::vector<uint64_t>(xs));
}

CoordSet CoordSet::nat_finite(const std::vector<uint64_t>& xs) {
  CoordSet s;
  uint64_t hi = 0;
  for (uint64_t x : xs) hi = std::max(hi, x + 1);
  s.bits_.assign(hi, false);
  for (uint64_t x : xs) s.bits_[x] = true;
  s.normalize();
  return s;
}

CoordSet CoordSet::extras_only(uint8_t mask) {
  CoordSet s;
  s.extras_ = mask;
  return s;
}

CoordSet CoordSet::single(Coord c) {
  return c.is_nat() ? nat_single(c.nat()) : extras_only(extra_bit(c.extra()));
}

CoordSet CoordSet::with_extras(uint8_t mask) const {
  CoordSet s = *this;
  s.extras_ |= mask;
  return s;
}

CoordSet CoordSet::without_extras() const {
  CoordSet s = *this;
  s.extras_ = 0;
  return s;
}

bool CoordSet::contains(Coord c) const {
  return c.is_nat() ? contains_nat(c.nat()) : contains_extra(c.extra());
}

bool CoordSet::contains_nat(uint64_t n) const {
  if (n < bits_.size()) return bits_[n];
  return tail_;
}

CoordSet CoordSet::unions(const CoordSet& o) const {
  CoordSet a = *this, b = o;
  align(a, b);
  for (size_t i = 0; i < a.bits_.size(); ++i) a.bits_[i] = a.bits_[i] || b.bits_[i];
  a.tail_ = a.tail_ || b.tail_;
  a.extras_ |= b.extras_;
  a.normalize();
  return a;
}

CoordSet CoordSet::intersect(const CoordSet& o) const {
  CoordSet a = *this, b = o;
  align(a, b);
  for (size_t i = 0; i < a.bits_.size(); ++i) a.bits_[i] = a.bits_[i] && b.bits_[i];
  a.tail_ = a.tail_ && b.tail_;
  a.extras_ &= b.extras_;
  a.normalize();
  return a;
}

CoordSet CoordSet::minus(const CoordSet& o) const {
  CoordSet a = *this, b = o;
  align(a, b);
  for (size_t i = 0; i < a.bits_.size(); ++i) a.bits_[i] = a.bits_[i] && !b.bits_[i];
  a.tail_ = a.tail_ && !b.tail_;
  a.extras_ &= ~b.extras_;
  a.normalize();
  return a;
}

CoordSet CoordSet::complement_in(const CoordSet& domain) const { return domain.minus(*this); }

bool CoordSet::is_empty() const { return !tail_ && extras_ == 0 && nat_part_empty(); }

bool CoordSet::nat_part_empty() const {
  if (tail_) return false;
  return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

std::optional<uint64_t> CoordSet::nat_count() const {
  if (tail_) return std::nullopt;
  return static_cast<uint64_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::optional<uint64_t> CoordSet::nat_min() const {
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) return i;
  if (tail_) return bits_.size();
  return std::nullopt;
}

std::optional<uint64_t> CoordSet::nat_max() const {
  if (tail_) return std::nullopt;
  for (size_t i = bits_.size(); i-- > 0;)
    if (bits_[i]) return i;
  return std::nullopt;
}

std::optional<uint64_t> CoordSet::nat_min_at_least(uint64_t k) const {
  for (size_t i = k; i < bits_.size(); ++i)
    if (bits_[i]) return i;
  if (tail_) return std::max<uint64_t>(k, bits_.size());
  return std::nullopt;
}

std::optional<uint64_t> CoordSet::nat_max_at_most(uint64_t k) const {
  if (k >= bits_.size() && tail_) return k;
  for (size_t i = std::min<uint64_t>(k + 1, bits_.size()); i-- > 0;)
    if (bits_[i]) return i;
  return std::nullopt;
}

bool CoordSet::subset_of(const CoordSet& o) const { return minus(o).is_empty(); }

std::vector<uint64_t> CoordSet::sample_nats(uint64_t hi) const {
  std::vector<uint64_t> out;
  for (uint64_t n = 0; n < hi; ++n)
    if (contains_nat(n)) out.push_back(n);
  return out;
}

std::string CoordSet::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (!bits_[i]) continue;
    if (!first) os << ' ';
    os << i;
    first = false;
  }
  if (tail_) {
    if (!first) os << ' ';
    os << bits_.size() << "..";
    first = false;
  }
  for (int e = 0; e < kExtraCount; ++e) {
    if (!(extras_ & (1u << e))) continue;
    if (!first) os << ' ';
    os << extra_name(static_cast<Extra>(e));
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace ordtop
