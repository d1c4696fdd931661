#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordtop/catalog.hpp"
#include "ordtop/errors.hpp"
#include "ordtop/families.hpp"
#include "ordtop/order_core.hpp"

using namespace ordtop;

namespace {

Point jp(uint64_t j, uint64_t k) { return Point::pair(Coord::nat(j), Coord::nat(k)); }
Point jtop(uint64_t j) { return Point::pair(Coord::nat(j), Coord::extra(Extra::Inf)); }

// Independent sup oracle: scan all upper bounds, pick the least one.
std::optional<size_t> brute_sup(const FinitePoset& p, Mask s) {
  std::vector<size_t> ubs;
  for (size_t u = 0; u < p.size(); ++u) {
    bool ub = true;
    for (size_t i = 0; i < p.size(); ++i)
      if (((s >> i) & 1) && !p.leq(i, u)) ub = false;
    if (ub) ubs.push_back(u);
  }
  for (size_t u : ubs) {
    bool least = true;
    for (size_t v : ubs)
      if (!p.leq(u, v)) least = false;
    if (least) return u;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("johnstone order rule") {
  auto j = johnstone_space();
  CHECK(j->leq(jp(1, 3), jp(1, 5)));   // same column, rising
  CHECK(j->leq(jp(1, 3), jtop(5)));    // a top dominates heights at most its column
  CHECK_FALSE(j->leq(jtop(3), jtop(5)));  // tops form an antichain
  CHECK(j->leq(jp(1, 2), jtop(3)));
  CHECK_FALSE(j->leq(jp(1, 7), jtop(3)));
  CHECK(j->leq(jtop(4), jtop(4)));
}

TEST_CASE("directedness checks") {
  auto j = johnstone_space();
  LeqOracle leq = [&](const Point& a, const Point& b) { return j->leq(a, b); };

  CHECK(is_directed(DirectedFamily::of_points({jp(1, 2), jp(1, 5)}), leq, 8));
  CHECK_FALSE(is_directed(DirectedFamily::of_points({jp(1, 0), jp(2, 0)}), leq, 8));
  CHECK_FALSE(is_directed(DirectedFamily::of_points({}), leq, 8));

  PointTemplate column{{CoordTemplate::fixed(Coord::nat(1)), CoordTemplate::affine(Aff::var_plus(0))}};
  CHECK(is_directed(DirectedFamily::of_generator(column), leq, 64));

  PointTemplate drift{{CoordTemplate::affine(Aff::var_plus(0)), CoordTemplate::fixed(Coord::nat(0))}};
  CHECK_FALSE(is_directed(DirectedFamily::of_generator(drift), leq, 8));
}

TEST_CASE("generator directedness is monotone in the bound") {
  auto j = johnstone_space();
  LeqOracle leq = [&](const Point& a, const Point& b) { return j->leq(a, b); };
  PointTemplate column{{CoordTemplate::fixed(Coord::nat(2)), CoordTemplate::affine(Aff::var_plus(1))}};
  DirectedFamily fam = DirectedFamily::of_generator(column);
  CHECK(is_directed(fam, leq, 64));
  for (uint64_t b : {1, 5, 17, 63}) CHECK(is_directed(fam, leq, b));
}

TEST_CASE("sup of directed families") {
  FinitePoset six = FinitePoset::chain(6);
  // oracle first: the least upper bound of {0..5} in the 6-chain
  Mask whole = six.all_mask();
  auto expected = brute_sup(six, whole);
  REQUIRE(expected.has_value());
  CHECK(*expected == 5);
  CHECK(sup_of_directed(six, {0, 1, 2, 3, 4, 5}) == expected);

  FinitePoset three = FinitePoset::chain(3);
  CHECK(sup_of_directed(three, {0, 1, 2}) == 2);
  CHECK(sup_of_directed(three, {1}) == 1);

  FinitePoset anti = FinitePoset::antichain(2);
  CHECK_THROWS_AS(sup_of_directed(anti, {0, 1}), contract_error);
}

TEST_CASE("sup agrees with the brute-force oracle across the catalog") {
  for (const FinitePoset& p : poset_catalog(4)) {
    Mask all = p.all_mask();
    for (Mask s = 1; s <= all && s != 0; ++s) {
      if (!p.is_directed_mask(s)) continue;
      CHECK(p.sup_mask(s) == brute_sup(p, s));
      // a finite directed family contains its own maximum
      auto mx = p.max_element(s);
      REQUIRE(mx.has_value());
      CHECK(p.sup_mask(s) == mx);
    }
  }
}

TEST_CASE("dcpo and consistent dcpo on small posets") {
  CHECK(is_dcpo(FinitePoset::antichain(2)));
  // a < c, b < c, a and b incomparable
  FinitePoset vee = FinitePoset::from_covers(3, {{0, 2}, {1, 2}});
  CHECK(is_consistent_dcpo(vee));
  CHECK(is_dcpo(vee));
  // fragment {0,1,2} chain plus incomparable a
  FinitePoset frag = FinitePoset::from_covers(4, {{0, 1}, {1, 2}});
  CHECK(is_consistent_dcpo(frag));
}

TEST_CASE("partial order violations are load errors") {
  std::vector<bool> bad(4, true);  // 2 points, both ways: antisymmetry violation
  CHECK_THROWS_AS(FinitePoset::from_leq(2, bad), contract_error);
  std::vector<bool> irrefl(4, false);
  CHECK_THROWS_AS(FinitePoset::from_leq(2, irrefl), contract_error);
}

TEST_CASE("catalog enumerations carry genuine partial orders") {
  // reflexivity, antisymmetry, transitivity re-verified by hand
  for (size_t n : {2, 3, 4}) {
    for (const FinitePoset& p : poset_catalog(n)) {
      for (size_t i = 0; i < n; ++i) CHECK(p.leq(i, i));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          if (i != j) CHECK_FALSE((p.leq(i, j) && p.leq(j, i)));
          for (size_t k = 0; k < n; ++k)
            if (p.leq(i, j) && p.leq(j, k)) CHECK(p.leq(i, k));
        }
    }
  }
}

TEST_CASE("catalog sizes match the known counts") {
  CHECK(poset_catalog(1).size() == 1);
  CHECK(poset_catalog(2).size() == 2);
  CHECK(poset_catalog(3).size() == 5);
  CHECK(poset_catalog(4).size() == 16);
  CHECK(poset_catalog(5).size() == 63);
}

TEST_CASE("omega families validate their order oracles on samples") {
  for (const char* name : {"sigma-nat", "nat-plus-a", "nat-two-tops", "johnstone"}) {
    auto sp = builtin_space(name);
    auto pts = sp->sample_points(5);
    for (const Point& p : pts) {
      CHECK(sp->leq(p, p));
      for (const Point& q : pts) {
        if (sp->leq(p, q) && sp->leq(q, p)) CHECK(p == q);
        for (const Point& r : pts)
          if (sp->leq(p, q) && sp->leq(q, r)) CHECK(sp->leq(p, r));
      }
    }
  }
}
