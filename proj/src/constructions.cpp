#include "ordtop/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ordtop/errors.hpp"

namespace ordtop {

namespace {

const FiniteSpace* as_finite(const SpacePtr& s) { return dynamic_cast<const FiniteSpace*>(s.get()); }

uint64_t point_magnitude(const Point& p) {
  uint64_t m = 0;
  for (const Coord& c : p.coords())
    if (c.is_nat()) m = std::max(m, c.nat());
  return m;
}

}  // namespace

MapTable MapTable::table(FiniteSpacePtr dom, SpacePtr cod, std::vector<Point> graph) {
  if (graph.size() != dom->size()) throw contract_error("map table must cover the whole domain");
  for (const Point& p : graph)
    if (!cod->valid_point(p)) throw contract_error("map image outside codomain: " + p.str());
  MapTable f;
  f.rule_ = Rule::Table;
  f.dom_ = std::move(dom);
  f.cod_ = std::move(cod);
  f.graph_ = std::move(graph);
  return f;
}

MapTable MapTable::identity(SpacePtr s) {
  MapTable f;
  f.rule_ = Rule::Identity;
  f.dom_ = s;
  f.cod_ = std::move(s);
  return f;
}

MapTable MapTable::constant(SpacePtr dom, SpacePtr cod, Point value) {
  if (!cod->valid_point(value)) throw contract_error("constant value outside codomain");
  MapTable f;
  f.rule_ = Rule::Constant;
  f.dom_ = std::move(dom);
  f.cod_ = std::move(cod);
  f.value_ = std::move(value);
  return f;
}

MapTable MapTable::const_embed(SpacePtr y, std::shared_ptr<const IsbellNatSpace> fx) {
  MapTable f;
  f.rule_ = Rule::ConstEmbed;
  f.dom_ = std::move(y);
  f.cod_ = fx;
  f.fx_ = std::move(fx);
  return f;
}

MapTable MapTable::eval_at(std::shared_ptr<const IsbellNatSpace> fx, SpacePtr y, size_t x0) {
  if (x0 >= fx->family()->arity) throw contract_error("evaluation point outside the domain carrier");
  MapTable f;
  f.rule_ = Rule::EvalAt;
  f.dom_ = fx;
  f.cod_ = std::move(y);
  f.fx_ = std::move(fx);
  f.x0_ = x0;
  return f;
}

Point MapTable::apply(const Point& p) const {
  if (!dom_->valid_point(p)) throw contract_error("map applied outside its domain: " + p.str());
  switch (rule_) {
    case Rule::Table:
      return graph_[p.at(0).nat()];
    case Rule::Identity:
      return p;
    case Rule::Constant:
      return value_;
    case Rule::ConstEmbed: {
      std::vector<Coord> cs(fx_->family()->arity, p.at(0));
      return Point::tuple(std::move(cs));
    }
    case Rule::EvalAt:
      return Point::nat(p.at(p.arity() > x0_ ? x0_ : 0).nat());
  }
  throw contract_error("unreachable");
}

Region MapTable::preimage(const Region& r) const {
  if (r.family() != cod_->family()) throw family_error("preimage expects a codomain region");
  switch (rule_) {
    case Rule::Table: {
      const auto* fs = as_finite(dom_);
      Mask m = 0;
      for (size_t i = 0; i < graph_.size(); ++i)
        if (r.member(graph_[i])) m |= Mask{1} << i;
      return fs->region_of_mask(m);
    }
    case Rule::Identity:
      return r;
    case Rule::Constant:
      return r.member(value_) ? Region::full(dom_->family()) : Region::empty(dom_->family());
    case Rule::ConstEmbed: {
      // {y : the constant tuple at y lies in r} = union over boxes of the
      // meet of their coordinate sets.
      Region out = Region::empty(dom_->family());
      for (const Box& b : r.boxes()) {
        CoordSet s = b.coords[0];
        for (size_t i = 1; i < b.coords.size(); ++i) s = s.intersect(b.coords[i]);
        out = out.unions(Region::of_set(dom_->family(), s));
      }
      return out;
    }
    case Rule::EvalAt: {
      CoordSet s = r.as_coordset();
      Box b = fx_->family()->full_box();
      b.coords[x0_] = s;
      return Region::of_box(fx_->family(), b);
    }
  }
  throw contract_error("unreachable");
}

std::string MapTable::describe() const {
  std::ostringstream os;
  switch (rule_) {
    case Rule::Table: {
      os << "table " << dom_->name() << " -> " << cod_->name() << ':';
      for (size_t i = 0; i < graph_.size(); ++i) os << ' ' << i << "->" << graph_[i].str();
      break;
    }
    case Rule::Identity:
      os << "identity on " << dom_->name();
      break;
    case Rule::Constant:
      os << "constant " << value_.str() << " : " << dom_->name() << " -> " << cod_->name();
      break;
    case Rule::ConstEmbed:
      os << "constant-map embedding " << dom_->name() << " -> " << cod_->name();
      break;
    case Rule::EvalAt:
      os << "evaluation at index " << x0_ << " : " << dom_->name() << " -> " << cod_->name();
      break;
  }
  return os.str();
}

ContinuityResult is_continuous(const MapTable& f, uint64_t bound) {
  uint64_t b = bound;
  if (f.rule() == MapTable::Rule::Table) {
    // Preimages of tails stabilize beyond the largest image coordinate.
    for (const Point& p : f.graph()) b = std::max(b, point_magnitude(p) + 1);
  }
  for (const Region& u : f.cod()->subbasic_opens(b)) {
    Region pre = f.preimage(u);
    if (!f.dom()->is_open(pre)) return {false, u};
  }
  return {true, std::nullopt};
}

RetractionCheck verify_retraction(const RetractionPair& pair, uint64_t bound) {
  const MapTable& s = pair.section;
  const MapTable& r = pair.retraction;
  if (s.cod() != r.dom() || s.dom() != r.cod())
    return {false, "section and retraction do not compose"};
  auto cs = is_continuous(s, bound);
  if (!cs.ok) return {false, "section discontinuous at open " + cs.witness->str()};
  auto cr = is_continuous(r, bound);
  if (!cr.ok) return {false, "retraction discontinuous at open " + cr.witness->str()};
  for (const Point& p : s.dom()->sample_points(bound)) {
    if (r.apply(s.apply(p)) != p)
      return {false, "r(s(" + p.str() + ")) != " + p.str()};
  }
  return {true, ""};
}

// --------------------------------------------------------------------
// Subspaces.

FiniteSpacePtr finite_subspace(const FiniteSpace& space, Mask carrier) {
  std::vector<size_t> keep;
  for (size_t i = 0; i < space.size(); ++i)
    if ((carrier >> i) & 1) keep.push_back(i);
  std::vector<Mask> rel;
  for (Mask u : space.opens()) {
    Mask m = 0;
    for (size_t k = 0; k < keep.size(); ++k)
      if ((u >> keep[k]) & 1) m |= Mask{1} << k;
    rel.push_back(m);
  }
  std::vector<std::string> names;
  for (size_t i : keep) names.push_back(space.poset().name_of(i));
  return FiniteSpace::from_opens(keep.size(), std::move(rel), std::move(names),
                                 space.name() + "|sub");
}

namespace {

// Relative topology on a region of an Alexandrov base: a subset is
// relatively open iff its base up-closure meets the carrier in exactly
// the subset again (the witness open is that up-closure).
class OmegaSubspace final : public Space {
 public:
  OmegaSubspace(SpacePtr base, Region carrier, std::string name)
      : Space(std::move(name)), base_(std::move(base)), carrier_(std::move(carrier)) {}
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return base_->family(); }
  bool valid_point(const Point& p) const override {
    return base_->valid_point(p) && carrier_.member(p);
  }
  bool leq(const Point& p, const Point& q) const override { return base_->leq(p, q); }
  bool is_open(const Region& r) const override {
    Region rel = r.intersect(carrier_);
    return rel.up_closure().intersect(carrier_).same_set(rel);
  }
  Region closure(const Region& r) const override {
    return base_->closure(r.intersect(carrier_)).intersect(carrier_);
  }
  std::vector<Region> subbasic_opens(uint64_t bound) const override {
    std::vector<Region> out;
    for (const Region& u : base_->subbasic_opens(bound)) out.push_back(u.intersect(carrier_));
    return out;
  }
  std::vector<Point> sample_points(uint64_t bound) const override {
    std::vector<Point> out;
    for (const Point& p : base_->sample_points(bound))
      if (carrier_.member(p)) out.push_back(p);
    return out;
  }
  std::string describe() const override {
    return name() + ": subspace of " + base_->name() + " on " + carrier_.str() + "\n";
  }

 private:
  SpacePtr base_;
  Region carrier_;
};

SpacePtr make_subspace(SpacePtr space, const Region& r, bool saturated) {
  if (const auto* fs = as_finite(space)) {
    Mask m = fs->mask_of_region(r);
    if (saturated ? !fs->poset().is_upset(m) : !fs->is_open_mask(fs->poset().all_mask() & ~m))
      throw contract_error(saturated ? "subspace region is not saturated" : "subspace region is not closed");
    return finite_subspace(*fs, m);
  }
  if (!space->alexandrov())
    throw unsupported_error("omega subspaces are supported on Alexandrov bases only");
  if (saturated ? !space->saturation(r).same_set(r) : !space->is_closed(r))
    throw contract_error(saturated ? "subspace region is not saturated" : "subspace region is not closed");
  std::string tag = saturated ? "|sat" : "|closed";
  return std::make_shared<OmegaSubspace>(space, r, space->name() + tag);
}

}  // namespace

SpacePtr saturated_subspace(SpacePtr space, const Region& r) { return make_subspace(std::move(space), r, true); }
SpacePtr closed_subspace(SpacePtr space, const Region& r) { return make_subspace(std::move(space), r, false); }

// --------------------------------------------------------------------
// Products.

SpacePtr product_space(SpacePtr a, SpacePtr b) {
  const auto* fa = as_finite(a);
  const auto* fb = as_finite(b);
  if (fa && fb) {
    size_t n = fa->size(), m = fb->size();
    if (n * m > 16) throw unsupported_error("extensional products are capped at 16 points");
    // Product of finite spaces: minimal neighborhoods multiply, so the
    // topology is the Alexandrov topology of the componentwise order.
    std::vector<bool> leq(n * m * n * m, false);
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < m; ++j)
        names.push_back(fa->poset().name_of(i) + "." + fb->poset().name_of(j));
    for (size_t i = 0; i < n * m; ++i)
      for (size_t j = 0; j < n * m; ++j)
        leq[i * n * m + j] = fa->poset().leq(i / m, j / m) && fb->poset().leq(i % m, j % m);
    return FiniteSpace::scott(FinitePoset::from_leq(n * m, leq, std::move(names)),
                              a->name() + "*" + b->name());
  }
  auto factor = [](const SpacePtr& s) -> ProductFactor {
    if (as_finite(s)) return ProductFactor::finite(std::static_pointer_cast<const FiniteSpace>(s));
    if (s->name() == "sigma-nat") return ProductFactor::nat();
    throw unsupported_error("box products support sigma-nat and finite factors");
  };
  return box_product_space({factor(a), factor(b)}, a->name() + "*" + b->name());
}

// --------------------------------------------------------------------
// Smyth power space.

SmythFinite smyth_finite(const FiniteSpacePtr& x) {
  std::vector<Mask> q = x->compact_saturated();
  size_t n = q.size();
  if (n > 16) throw unsupported_error("finite Smyth spaces are capped at 16 compacts");
  // Subbasis □U over the base opens, then the lattice it generates.
  std::set<Mask> opens;
  Mask full = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
  opens.insert(0);
  opens.insert(full);
  for (Mask u : x->opens()) {
    Mask box = 0;
    for (size_t i = 0; i < n; ++i)
      if ((q[i] & ~u) == 0) box |= Mask{1} << i;
    opens.insert(box);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(opens.begin(), opens.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        if (opens.insert(cur[i] | cur[j]).second) grew = true;
        if (opens.insert(cur[i] & cur[j]).second) grew = true;
      }
  }
  std::vector<std::string> names;
  for (Mask k : q) {
    std::string s = "K{";
    for (size_t i = 0; i < x->size(); ++i)
      if ((k >> i) & 1) s += x->poset().name_of(i) + ",";
    if (s.back() == ',') s.pop_back();
    names.push_back(s + "}");
  }
  SmythFinite out;
  out.compacts = q;
  out.space = FiniteSpace::from_opens(n, std::vector<Mask>(opens.begin(), opens.end()),
                                      std::move(names), "Qv(" + x->name() + ")");
  return out;
}

SpacePtr smyth_power(SpacePtr x) {
  if (as_finite(x)) return smyth_finite(std::static_pointer_cast<const FiniteSpace>(x)).space;
  if (x->name() == "cofinite-nat-iso")
    return std::make_shared<SmythScenarioSpace>(x, CompactClass::AllNonempty, "qv-cofinite-nat-iso");
  if (x->name() == "discrete-nat")
    return std::make_shared<SmythScenarioSpace>(x, CompactClass::FiniteNonempty, "qv-discrete-nat");
  throw unsupported_error("no compact-code class declared for " + x->name());
}

bool smyth_specialization_matches(const FiniteSpace& x) {
  std::vector<Mask> q = x.compact_saturated();
  for (Mask k1 : q)
    for (Mask k2 : q) {
      bool sub_spec = true;  // K1 <= K2 from the □U subbasis
      for (Mask u : x.opens())
        if ((k1 & ~u) == 0 && (k2 & ~u) != 0) {
          sub_spec = false;
          break;
        }
      bool rev = (k2 & ~k1) == 0;  // K2 ⊆ K1
      if (sub_spec != rev) return false;
    }
  return true;
}

// --------------------------------------------------------------------
// Isbell function space, finite × finite.

IsbellFinite isbell_finite(const FiniteSpacePtr& x, const FiniteSpacePtr& y) {
  size_t n = x->size(), m = y->size();
  // Monotone maps X → Y; for finite Alexandrov spaces these are exactly
  // the continuous ones.
  std::vector<std::vector<size_t>> maps;
  std::vector<size_t> cur(n, 0);
  while (true) {
    bool mono = true;
    for (size_t i = 0; i < n && mono; ++i)
      for (size_t j = 0; j < n && mono; ++j)
        if (x->poset().leq(i, j) && !y->poset().leq(cur[i], cur[j])) mono = false;
    if (mono) maps.push_back(cur);
    size_t i = 0;
    for (; i < n; ++i) {
      if (++cur[i] < m) break;
      cur[i] = 0;
    }
    if (i == n) break;
  }
  size_t np = maps.size();
  if (np > 16) throw unsupported_error("extensional Isbell spaces are capped at 16 maps");
  // Subbasic N(H ← V): f ∈ N iff f⁻¹(V) ∈ H, H an upper set of O(X).
  const auto& ox = x->opens();
  std::set<Mask> opens;
  Mask full = (Mask{1} << np) - 1;
  opens.insert(0);
  opens.insert(full);
  std::vector<std::vector<Mask>> hs;
  {
    if (ox.size() > 16) throw unsupported_error("open-set lattice too large");
    for (uint64_t sub = 0; sub < (uint64_t{1} << ox.size()); ++sub) {
      bool upset = true;
      for (size_t i = 0; i < ox.size() && upset; ++i)
        for (size_t j = 0; j < ox.size() && upset; ++j)
          if (((sub >> i) & 1) && (ox[i] & ~ox[j]) == 0 && !((sub >> j) & 1)) upset = false;
      if (!upset) continue;
      std::vector<Mask> h;
      for (size_t i = 0; i < ox.size(); ++i)
        if ((sub >> i) & 1) h.push_back(ox[i]);
      hs.push_back(std::move(h));
    }
  }
  for (const auto& h : hs) {
    for (Mask v : y->opens()) {
      Mask nset = 0;
      for (size_t f = 0; f < np; ++f) {
        Mask pre = 0;
        for (size_t i = 0; i < n; ++i)
          if ((v >> maps[f][i]) & 1) pre |= Mask{1} << i;
        if (std::find(h.begin(), h.end(), pre) != h.end()) nset |= Mask{1} << f;
      }
      opens.insert(nset);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> curo(opens.begin(), opens.end());
    for (size_t i = 0; i < curo.size(); ++i)
      for (size_t j = i + 1; j < curo.size(); ++j) {
        if (opens.insert(curo[i] | curo[j]).second) grew = true;
        if (opens.insert(curo[i] & curo[j]).second) grew = true;
      }
  }
  std::vector<std::string> names;
  for (const auto& g : maps) {
    std::string s = "f(";
    for (size_t i = 0; i < n; ++i) s += y->poset().name_of(g[i]) + (i + 1 < n ? "," : "");
    names.push_back(s + ")");
  }
  IsbellFinite out;
  out.maps = maps;
  out.space = FiniteSpace::from_opens(np, std::vector<Mask>(opens.begin(), opens.end()),
                                      std::move(names), "[" + x->name() + "->" + y->name() + "]");
  return out;
}

RetractionPair isbell_retraction(SpacePtr y, std::shared_ptr<const IsbellNatSpace> fx, size_t x0) {
  RetractionPair pair{MapTable::const_embed(y, fx), MapTable::eval_at(fx, std::move(y), x0)};
  return pair;
}

}  // namespace ordtop
