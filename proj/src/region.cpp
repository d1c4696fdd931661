#include "ordtop/region.hpp"

#include <algorithm>
#include <sstream>

#include "ordtop/errors.hpp"

namespace ordtop {

bool Box::contains(const Point& p) const {
  if (p.arity() != coords.size()) throw family_error("point arity mismatch");
  for (size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].contains(p.at(i))) return false;
  return true;
}

bool Box::inside(const Box& o) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].subset_of(o.coords[i])) return false;
  return true;
}

bool FamilyCtx::point_in_domain(const Point& p) const {
  if (p.arity() != arity) return false;
  for (size_t i = 0; i < arity; ++i)
    if (!doms[i].full.contains(p.at(i))) return false;
  return true;
}

bool FamilyCtx::point_in_carrier(const Point& p) const {
  if (!point_in_domain(p)) return false;
  for (auto [i, j] : mono_edges) {
    if (!p.at(i).is_nat() || !p.at(j).is_nat()) return false;
    if (p.at(i).nat() > p.at(j).nat()) return false;
  }
  return true;
}

namespace {

// Topological order of coordinates under the constraint edges.
std::vector<size_t> topo_order(size_t n, const std::vector<std::pair<size_t, size_t>>& edges) {
  std::vector<int> indeg(n, 0);
  for (auto [i, j] : edges) {
    (void)i;
    ++indeg[j];
  }
  std::vector<size_t> order;
  std::vector<size_t> stack;
  for (size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [i, j] : edges)
      if (i == v && --indeg[j] == 0) stack.push_back(j);
  }
  if (order.size() != n) throw contract_error("carrier constraint has a cycle");
  return order;
}

}  // namespace

std::optional<Box> FamilyCtx::carrier_min_corner(const Box& b) const {
  // Greedy least feasible tuple: process in topological order, taking the
  // least member admitted by the already-fixed predecessors. The result is
  // pointwise least among carrier points of the box.
  auto order = topo_order(arity, mono_edges);
  std::vector<std::optional<uint64_t>> val(arity);
  for (size_t v : order) {
    uint64_t lo = 0;
    for (auto [i, j] : mono_edges)
      if (j == v && val[i]) lo = std::max(lo, *val[i]);
    auto m = b.coords[v].nat_min_at_least(lo);
    if (!m) return std::nullopt;
    val[v] = *m;
  }
  Box out;
  out.coords.resize(arity);
  for (size_t v = 0; v < arity; ++v) out.coords[v] = CoordSet::nat_single(*val[v]);
  return out;
}

std::optional<Box> FamilyCtx::carrier_down_corner(const Box& b) const {
  // Greedy greatest feasible tuple; nullopt coordinate bound = unbounded.
  auto order = topo_order(arity, mono_edges);
  std::vector<std::optional<uint64_t>> val(arity);  // nullopt = unbounded
  std::vector<bool> done(arity, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    size_t v = *it;
    std::optional<uint64_t> hi;  // min over successors
    for (auto [i, j] : mono_edges)
      if (i == v && done[j]) {
        if (!val[j]) continue;  // unbounded successor constrains nothing
        hi = hi ? std::min(*hi, *val[j]) : *val[j];
      }
    if (b.coords[v].is_empty()) return std::nullopt;
    if (!hi) {
      if (b.coords[v].nat_part_infinite()) {
        val[v] = std::nullopt;
      } else {
        auto mx = b.coords[v].nat_max();
        if (!mx) return std::nullopt;
        val[v] = *mx;
      }
    } else {
      auto mx = b.coords[v].nat_max_at_most(*hi);
      if (!mx) return std::nullopt;
      val[v] = *mx;
    }
    done[v] = true;
  }
  Box out;
  out.coords.resize(arity);
  for (size_t v = 0; v < arity; ++v)
    out.coords[v] = val[v] ? CoordSet::nat_range(0, *val[v] + 1) : CoordSet::nat_full();
  return out;
}

bool FamilyCtx::box_feasible(const Box& b) const {
  for (const CoordSet& s : b.coords)
    if (s.is_empty()) return false;
  if (!has_carrier_constraint()) return true;
  return carrier_min_corner(b).has_value();
}

Box FamilyCtx::full_box() const {
  Box b;
  b.coords.reserve(arity);
  for (const CoordDom& d : doms) b.coords.push_back(d.full);
  return b;
}

Region::Region(Family f, std::vector<Box> boxes) : fam_(std::move(f)), boxes_(std::move(boxes)) {
  normalize();
}

Region Region::empty(Family f) { return Region(std::move(f), {}); }

Region Region::full(Family f) {
  Box b = f->full_box();
  return Region(std::move(f), {std::move(b)});
}

Region Region::make(Family f, std::vector<Box> boxes) { return Region(std::move(f), std::move(boxes)); }

Region Region::of_box(Family f, Box b) { return Region(std::move(f), {std::move(b)}); }

Region Region::of_set(Family f, CoordSet s) {
  if (f->arity != 1) throw family_error("of_set requires an arity-1 family");
  Box b;
  b.coords.push_back(std::move(s));
  return Region(std::move(f), {std::move(b)});
}

Region Region::of_point(Family f, const Point& p) {
  if (!f->point_in_carrier(p)) throw family_error("point outside carrier: " + p.str());
  Box b;
  b.coords.reserve(p.arity());
  for (const Coord& c : p.coords()) b.coords.push_back(CoordSet::single(c));
  return Region(std::move(f), {std::move(b)});
}

void Region::normalize() {
  if (!fam_) return;
  for (Box& b : boxes_)
    for (size_t i = 0; i < b.coords.size(); ++i) b.coords[i] = b.coords[i].intersect(fam_->doms[i].full);
  std::erase_if(boxes_, [&](const Box& b) { return !fam_->box_feasible(b); });
  std::sort(boxes_.begin(), boxes_.end());
  boxes_.erase(std::unique(boxes_.begin(), boxes_.end()), boxes_.end());
  // Absorption: drop boxes componentwise inside another. Duplicates are
  // gone already, so mutual containment cannot occur here.
  std::vector<Box> keep;
  for (size_t i = 0; i < boxes_.size(); ++i) {
    bool absorbed = false;
    for (size_t j = 0; j < boxes_.size() && !absorbed; ++j)
      if (i != j && boxes_[i].inside(boxes_[j])) absorbed = true;
    if (!absorbed) keep.push_back(boxes_[i]);
  }
  boxes_ = std::move(keep);
}

bool Region::member(const Point& p) const {
  if (!fam_->point_in_carrier(p)) throw family_error("point outside carrier: " + p.str());
  for (const Box& b : boxes_)
    if (b.contains(p)) return true;
  return false;
}

bool Region::is_full() const { return Region::full(fam_).subset_of(*this); }

void require_same_family(const Region& a, const Region& b) {
  if (a.family() != b.family()) throw family_error("regions belong to different families");
}

Region Region::unions(const Region& o) const {
  require_same_family(*this, o);
  std::vector<Box> bs = boxes_;
  bs.insert(bs.end(), o.boxes_.begin(), o.boxes_.end());
  return Region(fam_, std::move(bs));
}

Region Region::intersect(const Region& o) const {
  require_same_family(*this, o);
  std::vector<Box> bs;
  for (const Box& x : boxes_)
    for (const Box& y : o.boxes_) {
      Box b;
      b.coords.reserve(fam_->arity);
      for (size_t i = 0; i < fam_->arity; ++i) b.coords.push_back(x.coords[i].intersect(y.coords[i]));
      bs.push_back(std::move(b));
    }
  return Region(fam_, std::move(bs));
}

Region Region::complement() const {
  // De Morgan over the disjoint prefix decomposition of each box.
  Region acc = Region::full(fam_);
  for (const Box& b : boxes_) {
    std::vector<Box> parts;
    for (size_t i = 0; i < fam_->arity; ++i) {
      Box part;
      part.coords.reserve(fam_->arity);
      for (size_t j = 0; j < i; ++j) part.coords.push_back(b.coords[j]);
      part.coords.push_back(b.coords[i].complement_in(fam_->doms[i].full));
      for (size_t j = i + 1; j < fam_->arity; ++j) part.coords.push_back(fam_->doms[j].full);
      parts.push_back(std::move(part));
    }
    acc = acc.intersect(Region(fam_, std::move(parts)));
  }
  return acc;
}

Region Region::minus(const Region& o) const { return intersect(o.complement()); }

bool Region::subset_of(const Region& o) const { return minus(o).is_empty(); }

bool Region::same_set(const Region& o) const { return subset_of(o) && o.subset_of(*this); }

Region Region::up_closure() const {
  std::vector<Box> out;
  for (const Box& b : boxes_) {
    if (fam_->custom_up) {
      auto more = fam_->custom_up(b);
      out.insert(out.end(), more.begin(), more.end());
    } else if (fam_->has_carrier_constraint()) {
      auto corner = fam_->carrier_min_corner(b);
      if (!corner) continue;
      Box u;
      u.coords.reserve(fam_->arity);
      for (size_t i = 0; i < fam_->arity; ++i) {
        auto m = corner->coords[i].nat_min();
        u.coords.push_back(CoordSet::nat_tail(m ? *m : 0));
      }
      out.push_back(std::move(u));
    } else {
      Box u;
      u.coords.reserve(fam_->arity);
      for (size_t i = 0; i < fam_->arity; ++i) u.coords.push_back(fam_->doms[i].up(b.coords[i]));
      out.push_back(std::move(u));
    }
  }
  return Region(fam_, std::move(out));
}

Region Region::down_closure() const {
  std::vector<Box> out;
  for (const Box& b : boxes_) {
    if (fam_->custom_down) {
      auto more = fam_->custom_down(b);
      out.insert(out.end(), more.begin(), more.end());
    } else if (fam_->has_carrier_constraint()) {
      auto corner = fam_->carrier_down_corner(b);
      if (!corner) continue;
      out.push_back(std::move(*corner));
    } else {
      Box d;
      d.coords.reserve(fam_->arity);
      for (size_t i = 0; i < fam_->arity; ++i) d.coords.push_back(fam_->doms[i].down(b.coords[i]));
      out.push_back(std::move(d));
    }
  }
  return Region(fam_, std::move(out));
}

CoordSet Region::as_coordset() const {
  if (fam_->arity != 1) throw family_error("as_coordset requires an arity-1 family");
  CoordSet s;
  for (const Box& b : boxes_) s = s.unions(b.coords[0]);
  return s;
}

std::string Region::str() const {
  if (boxes_.empty()) return "empty";
  std::ostringstream os;
  for (size_t k = 0; k < boxes_.size(); ++k) {
    if (k) os << " u ";
    const Box& b = boxes_[k];
    if (b.coords.size() == 1) {
      os << b.coords[0].str();
    } else {
      os << "box(";
      for (size_t i = 0; i < b.coords.size(); ++i) {
        if (i) os << ", ";
        os << b.coords[i].str();
      }
      os << ')';
    }
  }
  return os.str();
}

// --------------------------------------------------------------------

ParamCoord ParamCoord::tail(Aff a, uint8_t sticky_extras) {
  if (a.is_const()) return {CoordSet::nat_tail(a.off).with_extras(sticky_extras), std::nullopt, 0};
  return {CoordSet::nat_full(), a, sticky_extras};
}

CoordSet ParamCoord::at(uint64_t n) const {
  CoordSet s = base;
  if (clip) s = s.intersect(CoordSet::nat_tail(clip->at(n)));
  return s.with_extras(sticky);
}

CoordSet ParamCoord::limit() const {
  CoordSet s = base;
  if (clip) s = clip->is_const() ? s.intersect(CoordSet::nat_tail(clip->off)) : CoordSet::empty();
  return s.with_extras(sticky);
}

uint64_t ParamCoord::magnitude() const {
  uint64_t m = base.cutoff();
  if (clip) m = std::max(m, clip->off);
  return m;
}

Box ParamBox::at(uint64_t n) const {
  Box b;
  b.coords.reserve(coords.size());
  for (const ParamCoord& c : coords) b.coords.push_back(c.at(n));
  return b;
}

Region ParamRegion::at(uint64_t n) const {
  std::vector<Box> bs;
  bs.reserve(boxes.size());
  for (const ParamBox& b : boxes) bs.push_back(b.at(n));
  return Region::make(fam, std::move(bs));
}

Region ParamRegion::limit() const {
  // Each disjunct is descending in n, so the meet distributes over the
  // union and over box coordinates.
  std::vector<Box> bs;
  for (const ParamBox& b : boxes) {
    Box lb;
    lb.coords.reserve(b.coords.size());
    for (const ParamCoord& c : b.coords) lb.coords.push_back(c.limit());
    bs.push_back(std::move(lb));
  }
  return Region::make(fam, std::move(bs));
}

uint64_t ParamRegion::magnitude() const {
  uint64_t m = 0;
  for (const ParamBox& b : boxes)
    for (const ParamCoord& c : b.coords) m = std::max(m, c.magnitude());
  return m;
}

RegionChain RegionChain::symbolic(ParamRegion pr, uint64_t start) {
  RegionChain c;
  c.fam = pr.fam;
  c.start = start;
  ParamRegion copy = pr;
  c.eval = [copy](uint64_t n) { return copy.at(n); };
  c.sym = std::move(pr);
  return c;
}

RegionChain RegionChain::opaque(Family f, std::function<Region(uint64_t)> fn, uint64_t start) {
  RegionChain c;
  c.fam = std::move(f);
  c.start = start;
  c.eval = std::move(fn);
  return c;
}

ChainLimit chain_limit(const RegionChain& chain, uint64_t bound) {
  Region prev = chain.eval(chain.start);
  Region meet = prev;
  for (uint64_t n = chain.start + 1; n <= chain.start + bound; ++n) {
    Region cur = chain.eval(n);
    if (!cur.subset_of(prev)) throw contract_error("region chain is not descending at n=" + std::to_string(n));
    meet = meet.intersect(cur);
    prev = std::move(cur);
  }
  if (chain.sym) {
    Region lim = chain.sym->limit();
    return {std::move(lim), true, bound};
  }
  // ∅ is already the infinite meet; anything else is only bounded evidence.
  bool exact = meet.is_empty();
  return {std::move(meet), exact, bound};
}

}  // namespace ordtop
