#include <algorithm>
#include <bit>
#include <sstream>

#include "ordtop/errors.hpp"
#include "ordtop/spaces.hpp"

namespace ordtop {

bool Space::valid_point(const Point& p) const { return family()->point_in_carrier(p); }

Region Space::up_of_point(const Point& p) const {
  return Region::of_point(family(), p).up_closure();
}

Region Space::down_of_point(const Point& p) const {
  return Region::of_point(family(), p).down_closure();
}

std::string Space::describe() const { return name(); }

bool specialization_from_opens(const std::vector<Region>& opens, const Point& p, const Point& q) {
  for (const Region& u : opens)
    if (u.member(p) && !u.member(q)) return false;
  return true;
}

namespace {

// The family lambdas share ownership of the poset: regions may outlive
// the space that minted them.
Family finite_family(std::shared_ptr<const FinitePoset> poset, std::string name) {
  auto fam = std::make_shared<FamilyCtx>();
  fam->name = std::move(name);
  fam->arity = 1;
  size_t n = poset->size();
  CoordDom dom;
  dom.full = CoordSet::nat_range(0, n);
  auto to_mask = [n](const CoordSet& s) {
    Mask m = 0;
    for (uint64_t i = 0; i < n; ++i)
      if (s.contains_nat(i)) m |= Mask{1} << i;
    return m;
  };
  auto of_mask = [n](Mask m) {
    std::vector<uint64_t> xs;
    for (uint64_t i = 0; i < n; ++i)
      if ((m >> i) & 1) xs.push_back(i);
    return CoordSet::nat_finite(xs);
  };
  dom.up = [poset, to_mask, of_mask](const CoordSet& s) { return of_mask(poset->up_of(to_mask(s))); };
  dom.down = [poset, to_mask, of_mask](const CoordSet& s) { return of_mask(poset->down_of(to_mask(s))); };
  fam->doms.push_back(std::move(dom));
  return fam;
}

}  // namespace

FiniteSpace::FiniteSpace(FinitePoset p, std::vector<Mask> opens, std::string name)
    : Space(std::move(name)), poset_(std::move(p)), opens_(std::move(opens)) {
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  fam_ = finite_family(std::make_shared<const FinitePoset>(poset_),
                       this->name() + "#fin" + std::to_string(poset_.size()));
}

std::shared_ptr<const FiniteSpace> FiniteSpace::scott(FinitePoset p, std::string name) {
  size_t n = p.size();
  if (n > 20) throw contract_error("open-set enumeration is capped at 20 points");
  std::vector<Mask> opens;
  Mask all = p.all_mask();
  for (Mask s = 0;; ++s) {
    if (p.is_upset(s)) opens.push_back(s);
    if (s == all) break;
  }
  return std::shared_ptr<const FiniteSpace>(new FiniteSpace(std::move(p), std::move(opens), std::move(name)));
}

std::shared_ptr<const FiniteSpace> FiniteSpace::from_opens(size_t n, std::vector<Mask> opens,
                                                           std::vector<std::string> point_names,
                                                           std::string name) {
  if (n > 64) throw contract_error("finite carriers are capped at 64 elements");
  Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  auto has = [&](Mask m) { return std::binary_search(opens.begin(), opens.end(), m); };
  if (!has(0) || !has(all)) throw contract_error("opens must contain the empty set and the carrier");
  for (Mask u : opens) {
    if ((u & ~all) != 0) throw contract_error("open set mentions points outside the carrier");
    for (Mask v : opens) {
      if (!has(u | v)) throw contract_error("opens are not closed under union");
      if (!has(u & v)) throw contract_error("opens are not closed under intersection");
    }
  }
  // Specialization from opens; T₀ means it is antisymmetric.
  std::vector<bool> leq(n * n, false);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      bool le = true;
      for (Mask u : opens)
        if (((u >> i) & 1) && !((u >> j) & 1)) {
          le = false;
          break;
        }
      leq[i * n + j] = le;
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && leq[i * n + j] && leq[j * n + i])
        throw contract_error("space is not T0: points " + std::to_string(i) + " and " +
                             std::to_string(j) + " share all opens");
  FinitePoset p = FinitePoset::from_leq(n, leq, std::move(point_names));
  return std::shared_ptr<const FiniteSpace>(new FiniteSpace(std::move(p), std::move(opens), std::move(name)));
}

bool FiniteSpace::leq(const Point& p, const Point& q) const {
  return poset_.leq(p.at(0).nat(), q.at(0).nat());
}

bool FiniteSpace::is_open_mask(Mask s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

bool FiniteSpace::is_open(const Region& r) const { return is_open_mask(mask_of_region(r)); }

Mask FiniteSpace::closure_mask(Mask s) const {
  Mask best = poset_.all_mask();
  for (Mask u : opens_) {
    Mask c = poset_.all_mask() & ~u;  // closed set
    if ((s & ~c) == 0 && std::popcount(c) < std::popcount(best)) best = c;
  }
  return best;
}

Region FiniteSpace::closure(const Region& r) const { return region_of_mask(closure_mask(mask_of_region(r))); }

std::vector<Mask> FiniteSpace::closed_sets() const {
  std::vector<Mask> out;
  out.reserve(opens_.size());
  for (Mask u : opens_) out.push_back(poset_.all_mask() & ~u);
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteSpace::specialization_leq_opens(size_t i, size_t j) const {
  for (Mask u : opens_)
    if (((u >> i) & 1) && !((u >> j) & 1)) return false;
  return true;
}

bool FiniteSpace::is_irreducible_mask(Mask a) const {
  auto closeds = closed_sets();
  if (!std::binary_search(closeds.begin(), closeds.end(), a))
    throw contract_error("is_irreducible requires a closed input set");
  if (a == 0) return false;
  for (Mask b : closeds) {
    if ((a & ~b) == 0) continue;  // a ⊆ b
    for (Mask c : closeds) {
      if ((a & ~c) == 0) continue;
      if ((a & ~(b | c)) == 0) return false;
    }
  }
  return true;
}

std::vector<Mask> FiniteSpace::compact_saturated() const {
  // Every nonempty subset of a finite space is compact; the saturated
  // ones are the upper sets.
  std::vector<Mask> out;
  Mask all = poset_.all_mask();
  for (Mask s = 1; s <= all && s != 0; ++s)
    if (poset_.is_upset(s)) out.push_back(s);
  return out;
}

TopologyReport FiniteSpace::report() const {
  TopologyReport rep;
  rep.open_count = opens_.size();
  rep.closed_count = closed_sets().size();
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j)
      if (i != j && poset_.leq(i, j)) rep.specialization.emplace_back(i, j);
  for (Mask c : closed_sets())
    if (c != 0 && is_irreducible_mask(c)) rep.irreducible_closed.push_back(c);
  return rep;
}

Region FiniteSpace::region_of_mask(Mask s) const {
  std::vector<uint64_t> xs;
  for (size_t i = 0; i < size(); ++i)
    if ((s >> i) & 1) xs.push_back(i);
  return Region::of_set(fam_, CoordSet::nat_finite(xs));
}

Mask FiniteSpace::mask_of_region(const Region& r) const {
  if (r.family() != fam_) throw family_error("region belongs to a different space");
  Mask m = 0;
  CoordSet s = r.as_coordset();
  for (size_t i = 0; i < size(); ++i)
    if (s.contains_nat(i)) m |= Mask{1} << i;
  return m;
}

std::vector<Region> FiniteSpace::subbasic_opens(uint64_t) const {
  std::vector<Region> out;
  out.reserve(opens_.size());
  for (Mask u : opens_) out.push_back(region_of_mask(u));
  return out;
}

std::vector<Point> FiniteSpace::sample_points(uint64_t) const {
  std::vector<Point> out;
  out.reserve(size());
  for (size_t i = 0; i < size(); ++i) out.push_back(Point::nat(i));
  return out;
}

std::string FiniteSpace::describe() const {
  std::ostringstream os;
  os << name() << ": finite T0 space, " << size() << " points, " << opens_.size() << " opens\n";
  os << "  points:";
  for (size_t i = 0; i < size(); ++i) os << ' ' << poset_.name_of(i);
  os << "\n  covers:";
  for (auto [a, b] : poset_.covers()) os << ' ' << poset_.name_of(a) << '<' << poset_.name_of(b);
  os << '\n';
  return os.str();
}

SmythScenarioSpace::SmythScenarioSpace(SpacePtr base, CompactClass cls, std::string name)
    : Space(std::move(name)), base_(std::move(base)), cls_(cls) {}

bool SmythScenarioSpace::leq(const Point&, const Point&) const {
  throw contract_error("Smyth scenario spaces index points by compact codes, not coordinates");
}

Region SmythScenarioSpace::closure(const Region&) const {
  throw contract_error("Smyth scenario spaces do not enumerate their own region algebra");
}

bool SmythScenarioSpace::in_compact_class(const Region& r) const {
  if (r.is_empty()) return false;
  if (!r.same_set(r.up_closure())) return false;  // compact codes are saturated
  if (cls_ == CompactClass::FiniteNonempty) {
    CoordSet s = r.as_coordset();
    return !s.nat_part_infinite();
  }
  return true;
}

bool SmythScenarioSpace::leq_compact(const Region& k1, const Region& k2) const {
  return k2.subset_of(k1);
}

std::string SmythScenarioSpace::describe() const {
  std::ostringstream os;
  os << name() << ": Smyth power space of " << base_->name() << " (upper Vietoris; scenario space)\n";
  os << "  points: compact codes = " << (cls_ == CompactClass::AllNonempty ? "all nonempty saturated regions" : "finite nonempty regions") << '\n';
  os << "  order: K1 <= K2 iff K2 within K1; subbasic opens: boxed base opens\n";
  return os.str();
}

}  // namespace ordtop
