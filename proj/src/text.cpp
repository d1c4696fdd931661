#include "ordtop/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ordtop/errors.hpp"

namespace ordtop {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    line = line.substr(i);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

FinitePoset parse_poset(const std::string& text) {
  std::vector<std::string> names;
  std::map<std::string, size_t> index;
  auto intern = [&](const std::string& n) {
    auto it = index.find(n);
    if (it != index.end()) return it->second;
    index[n] = names.size();
    names.push_back(n);
    return names.size() - 1;
  };
  std::vector<std::pair<int, int>> covers;
  for (const std::string& line : split_lines(text)) {
    auto lt = line.find('<');
    if (lt == std::string::npos) {
      // a bare name declares an isolated point
      auto ts = tokens_of(line);
      for (const auto& t : ts) intern(t);
      continue;
    }
    auto ltoks = tokens_of(line.substr(0, lt));
    auto rtoks = tokens_of(line.substr(lt + 1));
    if (ltoks.size() != 1 || rtoks.size() != 1) throw parse_error("expected `a < b`: " + line);
    size_t a = intern(ltoks[0]), b = intern(rtoks[0]);
    if (a == b) throw parse_error("a point cannot cover itself: " + line);
    covers.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (names.empty()) throw parse_error("empty poset description");
  return FinitePoset::from_covers(names.size(), covers, names);
}

FiniteSpacePtr parse_finite_space(const std::string& text, const std::string& name) {
  if (text.find("opens:") == std::string::npos)
    return FiniteSpace::scott(parse_poset(text), name);
  std::vector<std::string> names;
  std::map<std::string, size_t> index;
  std::vector<Mask> opens;
  for (const std::string& line : split_lines(text)) {
    if (line.rfind("points:", 0) == 0) {
      for (const std::string& t : tokens_of(line.substr(7))) {
        if (index.count(t)) throw parse_error("duplicate point name: " + t);
        index[t] = names.size();
        names.push_back(t);
      }
    } else if (line.rfind("opens:", 0) == 0) {
      std::string rest = line.substr(6);
      size_t pos = 0;
      while ((pos = rest.find('{', pos)) != std::string::npos) {
        size_t end = rest.find('}', pos);
        if (end == std::string::npos) throw parse_error("unterminated open set");
        Mask m = 0;
        for (const std::string& t : tokens_of(rest.substr(pos + 1, end - pos - 1))) {
          auto it = index.find(t);
          if (it == index.end()) throw parse_error("open set uses unknown point: " + t);
          m |= Mask{1} << it->second;
        }
        opens.push_back(m);
        pos = end + 1;
      }
    } else {
      throw parse_error("unexpected line in explicit space: " + line);
    }
  }
  return FiniteSpace::from_opens(names.size(), std::move(opens), names, name);
}

// --------------------------------------------------------------------
// Region syntax.

namespace {

struct Lexer {
  std::string s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw parse_error(std::string("expected '") + c + "' in region at offset " + std::to_string(i));
  }
  std::string word() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '-')) ++i;
    if (start == i) throw parse_error("expected a token at offset " + std::to_string(i));
    return s.substr(start, i - start);
  }
  bool peek_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
};

std::optional<Extra> extra_of(const std::string& w) {
  for (int e = 0; e < kExtraCount; ++e)
    if (w == extra_name(static_cast<Extra>(e))) return static_cast<Extra>(e);
  return std::nullopt;
}

uint64_t num_of(const std::string& w) {
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw parse_error("expected a number, got: " + w);
  return std::stoull(w);
}

Coord parse_coord_token(Lexer& lx) {
  std::string w = lx.word();
  if (auto e = extra_of(w)) return Coord::extra(*e);
  return Coord::nat(num_of(w));
}

Point parse_point_inner(Lexer& lx, const Family& fam) {
  std::vector<Coord> cs;
  if (lx.eat('(')) {
    while (!lx.peek(')')) cs.push_back(parse_coord_token(lx));
    lx.expect(')');
  } else {
    cs.push_back(parse_coord_token(lx));
  }
  if (cs.size() != fam->arity) throw parse_error("point arity mismatch for family " + fam->name);
  return Point::tuple(std::move(cs));
}

CoordSet parse_cset(Lexer& lx);

CoordSet parse_cset_basic(Lexer& lx, const std::string& w) {
  if (w == "full") return CoordSet::nat_full().with_extras(0xF);
  if (w == "empty") return CoordSet::empty();
  if (w == "tail") return CoordSet::nat_tail(num_of(lx.word()));
  if (w == "finite") {
    lx.expect('{');
    CoordSet out;
    while (!lx.peek('}')) out = out.unions(CoordSet::single(parse_coord_token(lx)));
    lx.expect('}');
    return out;
  }
  if (w == "cofinite") {
    lx.expect('{');
    CoordSet cut;
    while (!lx.peek('}')) cut = cut.unions(CoordSet::nat_single(num_of(lx.word())));
    lx.expect('}');
    return CoordSet::nat_full().minus(cut);
  }
  if (w == "union") {
    lx.expect('(');
    CoordSet out;
    while (!lx.peek(')')) out = out.unions(parse_cset(lx));
    lx.expect(')');
    return out;
  }
  if (auto e = extra_of(w)) return CoordSet::extras_only(extra_bit(*e));
  throw parse_error("unknown coordinate set form: " + w);
}

CoordSet parse_cset(Lexer& lx) {
  if (lx.peek_digit()) return CoordSet::nat_single(num_of(lx.word()));
  return parse_cset_basic(lx, lx.word());
}

Region parse_region_expr(Lexer& lx, const SpacePtr& space);

Region parse_region_word(Lexer& lx, const SpacePtr& space, const std::string& w) {
  const Family& fam = space->family();
  if (w == "empty") return Region::empty(fam);
  if (w == "full") return Region::full(fam);
  if (w == "union" || w == "inter") {
    lx.expect('(');
    std::optional<Region> acc;
    while (!lx.peek(')')) {
      Region r = parse_region_expr(lx, space);
      acc = acc ? (w == "union" ? acc->unions(r) : acc->intersect(r)) : r;
    }
    lx.expect(')');
    if (!acc) throw parse_error(w + " of nothing");
    return *acc;
  }
  if (w == "complement") {
    lx.expect('(');
    Region r = parse_region_expr(lx, space);
    lx.expect(')');
    return r.complement();
  }
  if (w == "upcone") return space->up_of_point(parse_point_inner(lx, fam));
  if (w == "downcone") return space->down_of_point(parse_point_inner(lx, fam));
  if (w == "coltail") {
    if (fam->arity != 2) throw parse_error("coltail needs a column family");
    lx.expect('(');
    uint64_t j = num_of(lx.word());
    std::string h = lx.word();
    lx.expect(')');
    CoordSet heights = (extra_of(h) ? CoordSet::empty() : CoordSet::nat_tail(num_of(h)))
                           .with_extras(extra_bit(Extra::Inf));
    return Region::of_box(fam, {{CoordSet::nat_single(j), heights}});
  }
  if (w == "finite" && fam->arity > 1) {
    lx.expect('{');
    Region out = Region::empty(fam);
    while (!lx.peek('}')) out = out.unions(Region::of_point(fam, parse_point_inner(lx, fam)));
    lx.expect('}');
    return out;
  }
  if (w == "toprowtail") {
    if (fam->arity != 2) throw parse_error("toprowtail needs a column family");
    uint64_t k = num_of(lx.word());
    return Region::of_box(fam, {{CoordSet::nat_tail(k), CoordSet::extras_only(extra_bit(Extra::Inf))}});
  }
  if (w == "box") {
    lx.expect('(');
    Box b;
    while (!lx.peek(')')) b.coords.push_back(parse_cset(lx));
    lx.expect(')');
    if (b.coords.size() != fam->arity) throw parse_error("box arity mismatch");
    return Region::of_box(fam, std::move(b));
  }
  // Fall back to a one-dimensional coordinate set form.
  if (fam->arity != 1) throw parse_error("coordinate set form in a multi-coordinate family: " + w);
  return Region::of_set(fam, parse_cset_basic(lx, w));
}

Region parse_region_expr(Lexer& lx, const SpacePtr& space) {
  if (lx.peek_digit()) {
    if (space->family()->arity != 1) throw parse_error("bare number region in a multi-coordinate family");
    return Region::of_set(space->family(), CoordSet::nat_single(num_of(lx.word())));
  }
  if (lx.peek('(')) {
    // a bare point literal
    Point p = parse_point_inner(lx, space->family());
    return Region::of_point(space->family(), p);
  }
  return parse_region_word(lx, space, lx.word());
}

std::string cset_text(const CoordSet& s) {
  std::vector<std::string> parts;
  std::string fin;
  for (uint64_t i = 0; i < s.cutoff(); ++i)
    if (s.contains_nat(i)) fin += (fin.empty() ? "" : " ") + std::to_string(i);
  for (int e = 0; e < kExtraCount; ++e)
    if (s.contains_extra(static_cast<Extra>(e)))
      fin += (fin.empty() ? "" : " ") + extra_name(static_cast<Extra>(e));
  if (!fin.empty()) parts.push_back("finite{" + fin + "}");
  if (s.tail()) parts.push_back("tail " + std::to_string(s.cutoff()));
  if (parts.empty()) return "empty";
  if (parts.size() == 1) return parts[0];
  return "union(" + parts[0] + ", " + parts[1] + ")";
}

}  // namespace

Region parse_region(const std::string& text, const SpacePtr& space) {
  Lexer lx{text};
  Region r = parse_region_expr(lx, space);
  std::optional<Region> acc;
  // allow top-level juxtaposed unions like `union(...) ...`? No: require done.
  if (!lx.done()) throw parse_error("trailing characters in region: " + text.substr(lx.i));
  (void)acc;
  return r;
}

std::string region_text(const Region& r) {
  if (r.is_empty()) return "empty";
  if (r.is_full()) return "full";
  std::vector<std::string> parts;
  for (const Box& b : r.boxes()) {
    if (b.coords.size() == 1) {
      parts.push_back(cset_text(b.coords[0]));
    } else {
      std::string s = "box(";
      for (size_t i = 0; i < b.coords.size(); ++i) s += (i ? ", " : "") + cset_text(b.coords[i]);
      parts.push_back(s + ")");
    }
  }
  if (parts.size() == 1) return parts[0];
  std::string out = "union(";
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + ")";
}

Point parse_point(const std::string& text, const SpacePtr& space) {
  Lexer lx{text};
  Point p = parse_point_inner(lx, space->family());
  if (!lx.done()) throw parse_error("trailing characters in point: " + text);
  if (!space->valid_point(p)) throw family_error("point outside carrier: " + text);
  return p;
}

}  // namespace ordtop
