#include "ordtop/families.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ordtop/errors.hpp"

namespace ordtop {

namespace {

constexpr uint64_t kSampleCap = 8;

CoordSet nat_up(const CoordSet& s) {
  auto m = s.nat_min();
  return m ? CoordSet::nat_tail(*m) : CoordSet::empty();
}

CoordSet nat_down(const CoordSet& s) {
  if (s.nat_part_infinite()) return CoordSet::nat_full();
  auto m = s.nat_max();
  return m ? CoordSet::nat_range(0, *m + 1) : CoordSet::empty();
}

// Upset test shared by the Alexandrov-style recognizers.
bool upset_region(const Region& r) { return r.same_set(r.up_closure()); }

// ----- Σℕ: the natural numbers with the usual order, Scott topology.
// Directed subsets with sups are exactly those with maxima, so the Scott
// opens coincide with the upper sets (the tails).
class SigmaNatSpace final : public Space {
 public:
  SigmaNatSpace() : Space("sigma-nat") {
    auto f = std::make_shared<FamilyCtx>();
    f->name = "sigma-nat";
    f->arity = 1;
    CoordDom d;
    d.full = CoordSet::nat_full();
    d.up = nat_up;
    d.down = nat_down;
    f->doms.push_back(std::move(d));
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override { return p.at(0).nat() <= q.at(0).nat(); }
  bool is_open(const Region& r) const override { return upset_region(r); }
  Region closure(const Region& r) const override { return r.down_closure(); }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    std::vector<Region> out{Region::full(fam_)};
    for (uint64_t k = 1; k <= bound; ++k)
      out.push_back(Region::of_set(fam_, CoordSet::nat_tail(k)));
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<Point> out;
    for (uint64_t n = 0; n <= bound; ++n) out.push_back(Point::nat(n));
    return out;
  }
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    if (t.coords.size() != 1 || (t.coords[0].constant && t.coords[0].constant->is_extra()))
      return std::nullopt;
    Aff a = t.coords[0].aff ? *t.coords[0].aff : Aff::constant(t.coords[0].constant->nat());
    ParamBox b;
    b.coords.push_back(ParamCoord::tail(a));
    return ParamRegion{fam_, {std::move(b)}};
  }
  std::optional<bool> dcpo_flag() const override { return false; }
  bool alexandrov() const override { return true; }
  std::string describe() const override {
    return "sigma-nat: Scott space of the naturals with the usual order\n"
           "  opens: {} plus the tails {n : n >= k}\n  not a dcpo (the whole chain has no sup)\n";
  }

 private:
  Family fam_;
};

// ----- Σ(ℕ ∪ {a}): the chain ℕ plus one incomparable point. No infinite
// directed subset has a sup, so again opens = upper sets; {a} is open.
class NatPlusASpace final : public Space {
 public:
  NatPlusASpace() : Space("nat-plus-a") {
    auto f = std::make_shared<FamilyCtx>();
    f->name = "nat-plus-a";
    f->arity = 1;
    CoordDom d;
    d.full = CoordSet::nat_full().with_extras(extra_bit(Extra::A));
    d.up = [](const CoordSet& s) { return nat_up(s).with_extras(s.extras()); };
    d.down = [](const CoordSet& s) { return nat_down(s).with_extras(s.extras()); };
    f->doms.push_back(std::move(d));
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override {
    const Coord &a = p.at(0), &b = q.at(0);
    if (a.is_extra() || b.is_extra()) return a == b;
    return a.nat() <= b.nat();
  }
  bool is_open(const Region& r) const override { return upset_region(r); }
  Region closure(const Region& r) const override { return r.down_closure(); }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    std::vector<Region> out{Region::full(fam_),
                            Region::of_set(fam_, CoordSet::extras_only(extra_bit(Extra::A)))};
    for (uint64_t k = 0; k <= bound; ++k)
      out.push_back(Region::of_set(fam_, CoordSet::nat_tail(k)));
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<Point> out{Point::extra(Extra::A)};
    for (uint64_t n = 0; n <= bound; ++n) out.push_back(Point::nat(n));
    return out;
  }
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    if (t.coords.size() != 1) return std::nullopt;
    const CoordTemplate& c = t.coords[0];
    ParamBox b;
    if (c.constant && c.constant->is_extra()) {
      b.coords.push_back(ParamCoord::fixed(CoordSet::extras_only(extra_bit(Extra::A))));
    } else {
      Aff a = c.aff ? *c.aff : Aff::constant(c.constant->nat());
      b.coords.push_back(ParamCoord::tail(a));
    }
    return ParamRegion{fam_, {std::move(b)}};
  }
  std::optional<bool> dcpo_flag() const override { return false; }
  bool alexandrov() const override { return true; }
  std::string describe() const override {
    return "nat-plus-a: Scott space of the chain of naturals with one incomparable point a\n"
           "  opens: upper sets; {a} is open since no infinite chain of naturals has a sup here\n";
  }

 private:
  Family fam_;
};

// ----- ℕ ∪ {ω₁, ω₂}: every natural below two incomparable tops. The
// chain of naturals has two minimal upper bounds and hence no sup.
class NatTwoTopsSpace final : public Space {
 public:
  NatTwoTopsSpace() : Space("nat-two-tops") {
    auto f = std::make_shared<FamilyCtx>();
    f->name = "nat-two-tops";
    f->arity = 1;
    uint8_t tops = extra_bit(Extra::W1) | extra_bit(Extra::W2);
    CoordDom d;
    d.full = CoordSet::nat_full().with_extras(tops);
    d.up = [tops](const CoordSet& s) {
      CoordSet out = CoordSet::extras_only(s.extras());
      if (!s.nat_part_empty()) out = out.unions(nat_up(s).with_extras(tops));
      return out;
    };
    d.down = [](const CoordSet& s) {
      CoordSet out = nat_down(s);
      if (s.contains_extra(Extra::W1))
        out = out.unions(CoordSet::nat_full().with_extras(extra_bit(Extra::W1)));
      if (s.contains_extra(Extra::W2))
        out = out.unions(CoordSet::nat_full().with_extras(extra_bit(Extra::W2)));
      return out;
    };
    f->doms.push_back(std::move(d));
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override {
    const Coord &a = p.at(0), &b = q.at(0);
    if (a.is_extra()) return a == b;
    if (b.is_extra()) return true;  // every natural sits below both tops
    return a.nat() <= b.nat();
  }
  bool is_open(const Region& r) const override { return upset_region(r); }
  Region closure(const Region& r) const override { return r.down_closure(); }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    uint8_t tops = extra_bit(Extra::W1) | extra_bit(Extra::W2);
    std::vector<Region> out{Region::full(fam_),
                            Region::of_set(fam_, CoordSet::extras_only(extra_bit(Extra::W1))),
                            Region::of_set(fam_, CoordSet::extras_only(extra_bit(Extra::W2))),
                            Region::of_set(fam_, CoordSet::extras_only(tops))};
    for (uint64_t k = 0; k <= bound; ++k)
      out.push_back(Region::of_set(fam_, CoordSet::nat_tail(k).with_extras(tops)));
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<Point> out{Point::extra(Extra::W1), Point::extra(Extra::W2)};
    for (uint64_t n = 0; n <= bound; ++n) out.push_back(Point::nat(n));
    return out;
  }
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    if (t.coords.size() != 1) return std::nullopt;
    const CoordTemplate& c = t.coords[0];
    ParamBox b;
    if (c.constant && c.constant->is_extra()) {
      b.coords.push_back(ParamCoord::fixed(CoordSet::extras_only(extra_bit(c.constant->extra()))));
    } else {
      Aff a = c.aff ? *c.aff : Aff::constant(c.constant->nat());
      b.coords.push_back(ParamCoord::tail(a, extra_bit(Extra::W1) | extra_bit(Extra::W2)));
    }
    return ParamRegion{fam_, {std::move(b)}};
  }
  std::optional<bool> dcpo_flag() const override { return false; }
  bool alexandrov() const override { return true; }
  std::string describe() const override {
    return "nat-two-tops: naturals below two incomparable tops w1, w2; Scott topology\n"
           "  not a dcpo: the chain of naturals has upper bounds {w1, w2} and no least one\n";
  }

 private:
  Family fam_;
};

// ----- ℕ with the cofinite topology plus an isolated point a. T₁, so the
// specialization order is equality and every subset is saturated.
class CofiniteNatIsoSpace final : public Space {
 public:
  CofiniteNatIsoSpace() : Space("cofinite-nat-iso") {
    auto f = std::make_shared<FamilyCtx>();
    f->name = "cofinite-nat-iso";
    f->arity = 1;
    CoordDom d;
    d.full = CoordSet::nat_full().with_extras(extra_bit(Extra::A));
    d.up = [](const CoordSet& s) { return s; };
    d.down = [](const CoordSet& s) { return s; };
    f->doms.push_back(std::move(d));
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override { return p == q; }
  bool is_open(const Region& r) const override {
    CoordSet s = r.as_coordset();
    // natural part empty or cofinite; the isolated point is free
    return s.nat_part_empty() || s.nat_part_infinite();
  }
  Region closure(const Region& r) const override {
    CoordSet s = r.as_coordset();
    if (s.nat_part_infinite()) s = CoordSet::nat_full().with_extras(s.extras());
    return Region::of_set(fam_, s);
  }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    std::vector<Region> out{Region::full(fam_),
                            Region::of_set(fam_, CoordSet::extras_only(extra_bit(Extra::A)))};
    for (uint64_t k = 0; k <= bound; ++k) {
      out.push_back(Region::of_set(fam_, CoordSet::nat_tail(k)));  // drop an initial segment
      out.push_back(Region::of_set(fam_, CoordSet::nat_full().minus(CoordSet::nat_single(k))));
      CoordSet holey = CoordSet::nat_full().minus(CoordSet::nat_finite({k, k + 2}));
      out.push_back(Region::of_set(fam_, holey));
    }
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<Point> out{Point::extra(Extra::A)};
    for (uint64_t n = 0; n <= bound; ++n) out.push_back(Point::nat(n));
    return out;
  }
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    // Order is equality: only constant templates have up-cones.
    if (t.coords.size() != 1 || !t.coords[0].is_const()) return std::nullopt;
    ParamBox b;
    b.coords.push_back(ParamCoord::fixed(CoordSet::single(*t.coords[0].constant)));
    return ParamRegion{fam_, {std::move(b)}};
  }
  std::optional<bool> dcpo_flag() const override { return true; }  // equality order
  std::string describe() const override {
    return "cofinite-nat-iso: naturals with the cofinite topology joined with an isolated point a\n"
           "  T1: every singleton is closed; opens are the cofinite-or-empty natural parts, a free\n";
  }

 private:
  Family fam_;
};

// ----- ℕ where every subset is open (the co-countable reading on a
// countable carrier collapses to the discrete topology).
class DiscreteNatSpace final : public Space {
 public:
  DiscreteNatSpace() : Space("discrete-nat") {
    auto f = std::make_shared<FamilyCtx>();
    f->name = "discrete-nat";
    f->arity = 1;
    CoordDom d;
    d.full = CoordSet::nat_full();
    d.up = [](const CoordSet& s) { return s; };
    d.down = [](const CoordSet& s) { return s; };
    f->doms.push_back(std::move(d));
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override { return p == q; }
  bool is_open(const Region&) const override { return true; }
  Region closure(const Region& r) const override { return r; }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    std::vector<Region> out{Region::full(fam_)};
    for (uint64_t k = 0; k <= bound; ++k) {
      out.push_back(Region::of_set(fam_, CoordSet::nat_single(k)));
      out.push_back(Region::of_set(fam_, CoordSet::nat_tail(k)));
    }
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<Point> out;
    for (uint64_t n = 0; n <= bound; ++n) out.push_back(Point::nat(n));
    return out;
  }
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    if (t.coords.size() != 1 || !t.coords[0].is_const()) return std::nullopt;
    ParamBox b;
    b.coords.push_back(ParamCoord::fixed(CoordSet::single(*t.coords[0].constant)));
    return ParamRegion{fam_, {std::move(b)}};
  }
  std::optional<bool> dcpo_flag() const override { return true; }
  bool alexandrov() const override { return true; }
  std::string describe() const override {
    return "discrete-nat: the naturals, every subset open (discrete reading of the co-countable example)\n";
  }

 private:
  Family fam_;
};

// ----- Johnstone's dcpo ℕ × (ℕ ∪ {∞}): columns rise to their own top,
// and a top dominates all cells with height at most its column index.
// (j,k) <= (m,n) iff j = m and k <= n, or n = ∞ and k <= m.
class JohnstoneSpace final : public Space {
 public:
  JohnstoneSpace() : Space("johnstone") {
    auto f = std::make_shared<FamilyCtx>();
    f->name = "johnstone";
    f->arity = 2;
    CoordDom cols;
    cols.full = CoordSet::nat_full();
    CoordDom heights;
    heights.full = CoordSet::nat_full().with_extras(extra_bit(Extra::Inf));
    f->doms.push_back(std::move(cols));
    f->doms.push_back(std::move(heights));
    f->custom_up = [](const Box& b) {
      std::vector<Box> out;
      const CoordSet& s1 = b.coords[0];
      const CoordSet& s2 = b.coords[1];
      auto k0 = s2.nat_min();
      if (k0) {
        out.push_back({{s1, CoordSet::nat_tail(*k0).with_extras(extra_bit(Extra::Inf))}});
        out.push_back({{CoordSet::nat_tail(*k0), CoordSet::extras_only(extra_bit(Extra::Inf))}});
      }
      if (s2.contains_extra(Extra::Inf))
        out.push_back({{s1, CoordSet::extras_only(extra_bit(Extra::Inf))}});
      return out;
    };
    f->custom_down = [](const Box& b) {
      std::vector<Box> out;
      const CoordSet& s1 = b.coords[0];
      const CoordSet& s2 = b.coords[1];
      if (!s2.nat_part_empty()) out.push_back({{s1, nat_down(s2)}});
      if (s2.contains_extra(Extra::Inf)) {
        out.push_back({{s1, CoordSet::nat_full().with_extras(extra_bit(Extra::Inf))}});
        CoordSet rows = s1.nat_part_infinite()
                            ? CoordSet::nat_full()
                            : CoordSet::nat_range(0, s1.nat_max() ? *s1.nat_max() + 1 : 0);
        out.push_back({{CoordSet::nat_full(), rows}});
      }
      return out;
    };
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }

  bool leq(const Point& p, const Point& q) const override {
    const Coord &j = p.at(0), &k = p.at(1), &m = q.at(0), &n = q.at(1);
    bool k_le_n = k.is_extra() ? n.is_extra() : (n.is_extra() || k.nat() <= n.nat());
    if (j == m && k_le_n) return true;
    return n.is_extra() && k.is_nat() && k.nat() <= m.nat();
  }

  // Scott-open: an upper set whose top-row points are reachable from
  // their own column, i.e. every column holding (j,∞) has a nonempty
  // finite part.
  bool is_open(const Region& r) const override {
    if (!upset_region(r)) return false;
    for (const auto& [cols, pattern] : column_patterns(r)) {
      (void)cols;
      if (pattern.contains_extra(Extra::Inf) && pattern.nat_part_empty()) return false;
    }
    return true;
  }

  Region closure(const Region& r) const override {
    // Down-close, then complete columns with unbounded finite part by
    // their top and re-close; the second pass only adds bounded rows, so
    // the loop settles quickly.
    Region c = r;
    for (int round = 0; round < 8; ++round) {
      c = c.down_closure();
      std::vector<Box> tops;
      for (const auto& [cols, pattern] : column_patterns(c))
        if (pattern.nat_part_infinite())
          tops.push_back({{cols, CoordSet::extras_only(extra_bit(Extra::Inf))}});
      if (tops.empty()) return c;
      Region t = Region::make(fam_, std::move(tops));
      if (t.subset_of(c)) return c;
      c = c.unions(t);
    }
    throw unsupported_error("johnstone closure failed to settle");
  }

  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    // Scott opens are column-height profiles: every top present needs a
    // nonempty finite part in its own column, and any inhabited height k
    // drags in every top from column k on. Four open shapes are enough
    // to separate all sampled points: a global floor, a floor on a
    // cofinal set of columns, one low column over a global floor, and
    // one column joined with a cofinal block.
    uint64_t cap = std::min(bound, uint64_t{12});
    std::vector<Region> out{Region::full(fam_)};
    uint8_t inf = extra_bit(Extra::Inf);
    auto floor_box = [&](uint64_t col_from, uint64_t k) {
      return Box{{CoordSet::nat_tail(col_from), CoordSet::nat_tail(k).with_extras(inf)}};
    };
    for (uint64_t k = 0; k <= cap; ++k) out.push_back(Region::of_box(fam_, floor_box(0, k)));
    for (uint64_t j = 1; j <= cap; ++j)
      for (uint64_t k = j; k <= cap; ++k) out.push_back(Region::of_box(fam_, floor_box(j, k)));
    for (uint64_t j = 0; j <= cap; ++j)
      for (uint64_t k = 1; k <= cap; ++k) {
        Box low{{CoordSet::nat_single(j), CoordSet::nat_full().with_extras(inf)}};
        out.push_back(Region::make(fam_, {low, floor_box(0, k)}));
        Box lifted{{CoordSet::nat_single(j).unions(CoordSet::nat_tail(k)),
                    CoordSet::nat_tail(k).with_extras(inf)}};
        out.push_back(Region::of_box(fam_, lifted));
      }
    return out;
  }

  std::vector<Point> sample_points(uint64_t bound) const override {
    uint64_t cap = std::min(bound, kSampleCap);
    std::vector<Point> out;
    for (uint64_t j = 0; j <= cap; ++j) {
      for (uint64_t k = 0; k <= cap; ++k) out.push_back(Point::pair(Coord::nat(j), Coord::nat(k)));
      out.push_back(Point::pair(Coord::nat(j), Coord::extra(Extra::Inf)));
    }
    return out;
  }

  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    if (t.coords.size() != 2 || !t.coords[0].is_const()) return std::nullopt;
    const Coord col = *t.coords[0].constant;
    if (col.is_extra()) return std::nullopt;
    const CoordTemplate& h = t.coords[1];
    uint8_t inf = extra_bit(Extra::Inf);
    if (h.is_const() && h.constant->is_extra()) {
      ParamBox b;
      b.coords.push_back(ParamCoord::fixed(CoordSet::nat_single(col.nat())));
      b.coords.push_back(ParamCoord::fixed(CoordSet::extras_only(inf)));
      return ParamRegion{fam_, {std::move(b)}};
    }
    Aff a = h.aff ? *h.aff : Aff::constant(h.constant->nat());
    ParamBox rise;
    rise.coords.push_back(ParamCoord::fixed(CoordSet::nat_single(col.nat())));
    rise.coords.push_back(ParamCoord::tail(a, inf));
    ParamBox tops;
    tops.coords.push_back(ParamCoord::tail(a));
    tops.coords.push_back(ParamCoord::fixed(CoordSet::extras_only(inf)));
    return ParamRegion{fam_, {std::move(rise), std::move(tops)}};
  }

  std::optional<bool> dcpo_flag() const override { return true; }

  std::string describe() const override {
    return "johnstone: the dcpo N x (N u {inf}); (j,k) <= (m,n) iff j=m and k<=n, or n=inf and k<=m\n"
           "  Scott opens: upper sets whose top-row members are limits of their own column\n";
  }

  // Partition of the column axis into classes with a uniform height
  // pattern, derived from the box normal form.
  static std::vector<std::pair<CoordSet, CoordSet>> column_patterns(const Region& r) {
    uint64_t cut = 0;
    for (const Box& b : r.boxes()) cut = std::max(cut, b.coords[0].cutoff());
    std::vector<std::pair<CoordSet, CoordSet>> out;
    for (uint64_t j = 0; j < cut; ++j) {
      CoordSet pat;
      for (const Box& b : r.boxes())
        if (b.coords[0].contains_nat(j)) pat = pat.unions(b.coords[1]);
      out.emplace_back(CoordSet::nat_single(j), pat);
    }
    CoordSet tail_pat;
    for (const Box& b : r.boxes())
      if (b.coords[0].nat_part_infinite()) tail_pat = tail_pat.unions(b.coords[1]);
    out.emplace_back(CoordSet::nat_tail(cut), tail_pat);
    return out;
  }

 private:
  Family fam_;
};

// ----- Products of Σℕ and finite factors (componentwise order; all
// factors Alexandrov, so product opens are the upper sets).
class BoxProductSpace final : public Space {
 public:
  BoxProductSpace(std::vector<ProductFactor> factors, std::string name)
      : Space(std::move(name)), factors_(std::move(factors)) {
    auto f = std::make_shared<FamilyCtx>();
    f->name = this->name();
    f->arity = factors_.size();
    for (const ProductFactor& fac : factors_) {
      CoordDom d;
      if (!fac.fin) {
        d.full = CoordSet::nat_full();
        d.up = nat_up;
        d.down = nat_down;
      } else {
        d = fac.fin->family()->doms[0];
      }
      f->doms.push_back(std::move(d));
    }
    fam_ = std::move(f);
  }
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override {
    for (size_t i = 0; i < factors_.size(); ++i) {
      uint64_t a = p.at(i).nat(), b = q.at(i).nat();
      if (factors_[i].fin ? !factors_[i].fin->poset().leq(a, b) : a > b) return false;
    }
    return true;
  }
  bool is_open(const Region& r) const override { return upset_region(r); }
  Region closure(const Region& r) const override { return r.down_closure(); }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    // Open boxes over factor subbasics.
    std::vector<std::vector<CoordSet>> per;
    for (const ProductFactor& fac : factors_) {
      std::vector<CoordSet> sets;
      if (!fac.fin) {
        for (uint64_t k = 0; k <= std::min(bound, uint64_t{22}); ++k) sets.push_back(CoordSet::nat_tail(k));
      } else {
        for (Mask u : fac.fin->opens())
          if (u != 0) sets.push_back(fac.fin->region_of_mask(u).as_coordset());
      }
      per.push_back(std::move(sets));
    }
    std::vector<Region> out{Region::full(fam_)};
    std::vector<size_t> idx(per.size(), 0);
    while (true) {
      Box b;
      for (size_t i = 0; i < per.size(); ++i) b.coords.push_back(per[i][idx[i]]);
      out.push_back(Region::of_box(fam_, std::move(b)));
      size_t i = 0;
      for (; i < per.size(); ++i) {
        if (++idx[i] < per[i].size()) break;
        idx[i] = 0;
      }
      if (i == per.size()) break;
    }
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<std::vector<Coord>> per;
    for (const ProductFactor& fac : factors_) {
      std::vector<Coord> cs;
      uint64_t hi = fac.fin ? fac.fin->size() : std::min<uint64_t>(bound, 22) + 1;
      for (uint64_t v = 0; v < hi; ++v) cs.push_back(Coord::nat(v));
      per.push_back(std::move(cs));
    }
    std::vector<Point> out;
    std::vector<size_t> idx(per.size(), 0);
    while (true) {
      std::vector<Coord> cs;
      for (size_t i = 0; i < per.size(); ++i) cs.push_back(per[i][idx[i]]);
      out.push_back(Point::tuple(std::move(cs)));
      size_t i = 0;
      for (; i < per.size(); ++i) {
        if (++idx[i] < per[i].size()) break;
        idx[i] = 0;
      }
      if (i == per.size()) break;
    }
    return out;
  }
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override {
    if (t.coords.size() != factors_.size()) return std::nullopt;
    ParamBox b;
    for (size_t i = 0; i < factors_.size(); ++i) {
      const CoordTemplate& c = t.coords[i];
      if (factors_[i].fin) {
        if (!c.is_const()) return std::nullopt;  // finite coordinates do not rise with n
        Mask up = factors_[i].fin->poset().up_mask(c.constant->nat());
        b.coords.push_back(ParamCoord::fixed(factors_[i].fin->region_of_mask(up).as_coordset()));
      } else {
        Aff a = c.aff ? *c.aff : Aff::constant(c.constant->nat());
        b.coords.push_back(ParamCoord::tail(a));
      }
    }
    return ParamRegion{fam_, {std::move(b)}};
  }
  std::optional<bool> dcpo_flag() const override { return false; }  // a Σℕ factor breaks dcpo-ness
  bool alexandrov() const override { return true; }
  std::string describe() const override {
    std::ostringstream os;
    os << name() << ": product of";
    for (const ProductFactor& fac : factors_) os << ' ' << (fac.fin ? fac.fin->name() : "sigma-nat");
    os << "; componentwise order, opens = upper sets (all factors Alexandrov)\n";
    return os.str();
  }

 private:
  std::vector<ProductFactor> factors_;
  Family fam_;
};

}  // namespace

SpacePtr sigma_nat_space() {
  static SpacePtr s = std::make_shared<SigmaNatSpace>();
  return s;
}
SpacePtr nat_plus_a_space() {
  static SpacePtr s = std::make_shared<NatPlusASpace>();
  return s;
}
SpacePtr nat_two_tops_space() {
  static SpacePtr s = std::make_shared<NatTwoTopsSpace>();
  return s;
}
SpacePtr cofinite_nat_iso_space() {
  static SpacePtr s = std::make_shared<CofiniteNatIsoSpace>();
  return s;
}
SpacePtr discrete_nat_space() {
  static SpacePtr s = std::make_shared<DiscreteNatSpace>();
  return s;
}
SpacePtr johnstone_space() {
  static SpacePtr s = std::make_shared<JohnstoneSpace>();
  return s;
}

FiniteSpacePtr sigma_two_space() {
  static FiniteSpacePtr s = FiniteSpace::scott(FinitePoset::chain(2), "sigma-two");
  return s;
}

SpacePtr box_product_space(std::vector<ProductFactor> factors, std::string name) {
  return std::make_shared<BoxProductSpace>(std::move(factors), std::move(name));
}

// --------------------------------------------------------------------
// Isbell function space TOP(X, Σℕ).

IsbellNatSpace::IsbellNatSpace(FiniteSpacePtr domain, std::string name)
    : Space(std::move(name)), dom_(std::move(domain)) {
  auto f = std::make_shared<FamilyCtx>();
  f->name = this->name();
  f->arity = dom_->size();
  for (size_t i = 0; i < f->arity; ++i) {
    CoordDom d;
    d.full = CoordSet::nat_full();
    d.up = nat_up;
    d.down = nat_down;
    f->doms.push_back(std::move(d));
  }
  // Monotone carrier: a continuous map out of a finite space is exactly
  // an order-preserving tuple.
  for (auto [a, b] : dom_->poset().covers()) f->mono_edges.emplace_back(a, b);
  fam_ = std::move(f);
}

bool IsbellNatSpace::leq(const Point& p, const Point& q) const {
  for (size_t i = 0; i < fam_->arity; ++i)
    if (p.at(i).nat() > q.at(i).nat()) return false;
  return true;
}

bool IsbellNatSpace::is_open(const Region& r) const { return upset_region(r); }

Region IsbellNatSpace::closure(const Region& r) const { return r.down_closure(); }

std::vector<std::vector<Mask>> IsbellNatSpace::open_lattice_upsets() const {
  const auto& opens = dom_->opens();
  if (opens.size() > 16) throw unsupported_error("open-set lattice too large to enumerate");
  std::vector<std::vector<Mask>> out;
  for (uint64_t sub = 0; sub < (uint64_t{1} << opens.size()); ++sub) {
    bool upset = true;
    for (size_t i = 0; i < opens.size() && upset; ++i)
      for (size_t j = 0; j < opens.size() && upset; ++j)
        if (((sub >> i) & 1) && (opens[i] & ~opens[j]) == 0 && !((sub >> j) & 1)) upset = false;
    if (!upset) continue;
    std::vector<Mask> h;
    for (size_t i = 0; i < opens.size(); ++i)
      if ((sub >> i) & 1) h.push_back(opens[i]);
    out.push_back(std::move(h));
  }
  return out;
}

Region IsbellNatSpace::nhv(const std::vector<Mask>& h, uint64_t k) const {
  // {f : f⁻¹({m : m >= k}) ∈ H} = ⋃_{u ∈ H} {f : f(x) >= k iff x ∈ u}.
  std::vector<Box> boxes;
  for (Mask u : h) {
    Box b;
    for (size_t x = 0; x < fam_->arity; ++x)
      b.coords.push_back(((u >> x) & 1) ? CoordSet::nat_tail(k) : CoordSet::nat_range(0, k));
    boxes.push_back(std::move(b));
  }
  return Region::make(fam_, std::move(boxes));
}

std::vector<Region> IsbellNatSpace::subbasic_opens(uint64_t bound) const {
  std::vector<Region> out{Region::full(fam_)};
  for (const auto& h : open_lattice_upsets()) {
    if (h.empty()) continue;
    for (uint64_t k = 1; k <= std::min(bound, uint64_t{8}); ++k) {
      Region r = nhv(h, k);
      if (!r.is_empty()) out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Point> IsbellNatSpace::sample_points(uint64_t bound) const {
  // keep the tuple grid small for wide domains
  uint64_t hi = std::min(bound, fam_->arity <= 2 ? uint64_t{7} : uint64_t{3}) + 1;
  std::vector<Point> out;
  std::vector<uint64_t> tuple(fam_->arity, 0);
  while (true) {
    bool mono = true;
    for (auto [a, b] : fam_->mono_edges)
      if (tuple[a] > tuple[b]) mono = false;
    if (mono) {
      std::vector<Coord> cs;
      for (uint64_t v : tuple) cs.push_back(Coord::nat(v));
      out.push_back(Point::tuple(std::move(cs)));
    }
    size_t i = 0;
    for (; i < tuple.size(); ++i) {
      if (++tuple[i] < hi) break;
      tuple[i] = 0;
    }
    if (i == tuple.size()) break;
  }
  return out;
}

std::optional<ParamRegion> IsbellNatSpace::up_template(const PointTemplate& t) const {
  if (t.coords.size() != fam_->arity) return std::nullopt;
  ParamBox b;
  for (const CoordTemplate& c : t.coords) {
    if (c.constant && c.constant->is_extra()) return std::nullopt;
    Aff a = c.aff ? *c.aff : Aff::constant(c.constant->nat());
    b.coords.push_back(ParamCoord::tail(a));
  }
  return ParamRegion{fam_, {std::move(b)}};
}

std::string IsbellNatSpace::describe() const {
  std::ostringstream os;
  os << name() << ": continuous maps " << dom_->name()
     << " -> sigma-nat under the Isbell topology\n"
     << "  points: monotone tuples indexed by the domain carrier\n"
     << "  subbasic opens: N(H <- V) for H an upper set of the domain's open lattice, V a tail\n";
  return os.str();
}

SpacePtr isbell_two_nat_space() {
  static SpacePtr s = std::make_shared<IsbellNatSpace>(sigma_two_space(), "isbell-two-nat");
  return s;
}

// --------------------------------------------------------------------
// Registry.

namespace {

std::string canonical_name(std::string s) {
  for (char& c : s)
    if (c == '_') c = '-';
  return s;
}

}  // namespace

SpacePtr builtin_space(const std::string& raw) {
  std::string name = canonical_name(raw);
  if (name == "sigma-nat") return sigma_nat_space();
  if (name == "sigma-two") return sigma_two_space();
  if (name == "johnstone") return johnstone_space();
  if (name == "nat-plus-a") return nat_plus_a_space();
  if (name == "nat-two-tops") return nat_two_tops_space();
  if (name == "cofinite-nat-iso") return cofinite_nat_iso_space();
  if (name == "discrete-nat") return discrete_nat_space();
  if (name == "prod-nat-two") {
    static SpacePtr s = box_product_space({ProductFactor::nat(), ProductFactor::finite(sigma_two_space())},
                                          "prod-nat-two");
    return s;
  }
  if (name == "isbell-two-nat") return isbell_two_nat_space();
  if (name == "qv-cofinite-nat-iso")
    return std::make_shared<SmythScenarioSpace>(cofinite_nat_iso_space(), CompactClass::AllNonempty,
                                                "qv-cofinite-nat-iso");
  if (name == "qv-discrete-nat")
    return std::make_shared<SmythScenarioSpace>(discrete_nat_space(), CompactClass::FiniteNonempty,
                                                "qv-discrete-nat");
  if (name.starts_with("chain") || name.starts_with("antichain")) {
    bool anti = name.starts_with("antichain");
    std::string digits = name.substr(anti ? 9 : 5);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); })) {
      size_t n = std::stoul(digits);
      if (n == 0 || n > 20) throw parse_error("chain/antichain size out of range: " + raw);
      return FiniteSpace::scott(anti ? FinitePoset::antichain(n) : FinitePoset::chain(n), name);
    }
  }
  throw parse_error("unknown builtin space: " + raw);
}

std::vector<std::string> builtin_names() {
  return {"sigma-nat",   "sigma-two",        "johnstone",       "nat-plus-a",
          "nat-two-tops", "cofinite-nat-iso", "discrete-nat",    "prod-nat-two",
          "isbell-two-nat", "qv-cofinite-nat-iso", "qv-discrete-nat", "chainN",
          "antichainN"};
}

}  // namespace ordtop
