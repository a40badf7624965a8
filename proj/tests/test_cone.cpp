#include "conecalc/cone.hpp"

#include <algorithm>
#include <random>

#include "conecalc/serialize.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conecalc;

namespace {

AreaVec vec(const std::string& text, int n = -1) { return parse_area_vec(text, n); }

HomClass cls(const std::string& text, int n) { return parse_class(text, Manifold{1, n}); }

// rational pairing of the PD class against an integer class
Rat pd_pair(const RatClass& p, const HomClass& x) {
  Rat acc = p.a * Rat(x.b()) + p.b * Rat(x.a());
  for (std::size_t i = 0; i < p.m.size(); ++i) acc -= p.m[i] * Rat(x.m()[i]);
  return acc;
}

}  // namespace

TEST_CASE("area vector parsing and invariants") {
  AreaVec u = vec("mu=5 c=1/2,1/2");
  CHECK(u.mu == Rat(5));
  CHECK(u.f == Rat(1));
  CHECK(u.c == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  CHECK(format_area_vec(u) == "mu=5 f=1 c=1/2,1/2");
  CHECK(format_area_vec(vec("mu=3 f=2")) == "mu=3 f=2");
  CHECK_THROWS_AS(vec("c=1/2"), Error);          // mu missing
  CHECK_THROWS_AS(vec("mu=1 f=0"), Error);       // f > 0 is a type invariant
  CHECK_THROWS_AS(vec("mu=1 f=-2"), Error);
  CHECK_THROWS_AS(vec("mu=1 c=1/2", 3), Error);  // wrong n
  CHECK_THROWS_AS(vec("mu=1 q=2"), Error);       // unknown field
}

TEST_CASE("pd class solves the three pairing conditions") {
  AreaVec u = vec("mu=2 c=1/2,1/2");
  RatClass p = pd_class(u);
  CHECK(p.a == Rat(1));
  CHECK(p.b == Rat(2));
  CHECK(p.m == std::vector<Rat>{Rat(-1, 2), Rat(-1, 2)});
  CHECK(u_square(u) == Rat(7, 2));

  std::mt19937_64 rng(0xBEEF0001);
  for (int it = 0; it < 500; ++it) {
    int n = static_cast<int>(rng() % 5);
    std::vector<Rat> c;
    for (int i = 0; i < n; ++i) c.push_back(oracles::random_rat(rng, -8, 8, 9));
    AreaVec v(oracles::random_rat(rng, -8, 8, 9), oracles::random_rat(rng, 1, 8, 9), c);
    RatClass q = pd_class(v);
    // pair(P, X) = area(X) for every X, checked on random classes
    HomClass x = oracles::random_class(rng, n);
    REQUIRE(pd_pair(q, x) == area(v, x));
  }
}

TEST_CASE("cone membership") {
  Manifold d{2, 2};
  CHECK(cone_contains(d, vec("mu=2 c=1/2,1/2")).status == Membership::inside);

  ConeReport on_wall = cone_contains(d, vec("mu=1 c=1,1/2"));
  CHECK(on_wall.status == Membership::boundary);
  REQUIRE(on_wall.witnesses.size() == 1);
  CHECK(format_class(*on_wall.witnesses[0].cls) == "F-E1");
  CHECK(on_wall.witnesses[0].value == Rat(0));

  ConeReport neg = cone_contains(d, vec("mu=1/8 c=1/2,1/2"));
  CHECK(neg.status == Membership::outside);
  REQUIRE(neg.witnesses.size() == 1);
  CHECK_FALSE(neg.witnesses[0].cls.has_value());
  CHECK(neg.witnesses[0].value == Rat(-1, 4));

  CHECK(cone_contains(d, vec("mu=5 c=-1/2,1/2")).status == Membership::outside);
  CHECK_THROWS_AS(cone_contains(Manifold{0, 2}, vec("mu=2 c=1/2,1/2")), Error);
}

TEST_CASE("reduced vectors") {
  CHECK(is_reduced(vec("mu=3 c=1/2,1/2")).reduced);
  CHECK(is_reduced(vec("mu=3 c=1/2,1/2")).on_reduction_wall);  // c1 = c2
  ReducedReport order = is_reduced(vec("mu=3 c=1/4,1/2"));
  CHECK_FALSE(order.reduced);
  CHECK(order.witnesses[0].kind == "ordering");
  ReducedReport sum = is_reduced(vec("mu=3 c=7/10,3/5"));
  CHECK_FALSE(sum.reduced);
  CHECK(sum.witnesses[0].kind == "sum");
  ReducedReport wall = is_reduced(vec("mu=3 c=3/5,2/5"));
  CHECK(wall.reduced);
  CHECK(wall.on_reduction_wall);  // c1 + c2 = 1
  CHECK(is_reduced(vec("mu=3 c=3/5,1/5")).reduced);
  CHECK_FALSE(is_reduced(vec("mu=3 c=3/5,1/5")).on_reduction_wall);
  CHECK_FALSE(is_reduced(vec("mu=-1 c=1/2,1/4")).reduced);
  CHECK_FALSE(is_reduced(vec("mu=3 c=1,1/2")).reduced);
  CHECK_THROWS_AS(is_reduced(vec("mu=3 f=2 c=1/2,1/2")), Error);  // NotNormalized
}

TEST_CASE("exceptional set matches the brute-force oracle") {
  for (int g = 1; g <= 3; ++g) {
    for (int n = 0; n <= 4; ++n) {
      Manifold d{g, n};
      auto got = exceptional_set(d);
      CHECK(static_cast<int>(got.size()) == 2 * n);
      auto sorted = got;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == oracles::brute_exceptional_full(d, 5));
    }
  }
  CHECK(exceptional_set(Manifold{1, 0}).empty());
  CHECK_THROWS_AS(exceptional_set(Manifold{0, 2}), Error);
}

TEST_CASE("section candidates: worked enumeration g=1 n=2") {
  Manifold d{1, 2};
  auto sig = section_candidates(d, vec("mu=2 c=1/2,1/2"));
  // hand enumeration over l = 0,1,2 with k < l/2 and mu + k - sum c > 0,
  // in (k, I-lex) order
  std::vector<std::string> expect = {"B-F", "B-F-E1", "B-F-E2", "B-E1", "B-E1-E2", "B-E2"};
  REQUIRE(sig.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(format_class(sig[i]) == expect[i]);
}

TEST_CASE("section candidates: empty window g=1 n=0") {
  Manifold d{1, 0};
  CHECK(section_candidates(d, vec("mu=1/2")).empty());
}

TEST_CASE("section candidates have positive area and positive codim") {
  std::mt19937_64 rng(0xBEEF0002);
  for (int it = 0; it < 300; ++it) {
    int g = 1 + static_cast<int>(rng() % 3);
    int n = static_cast<int>(rng() % 5);
    Manifold d{g, n};
    AreaVec u = oracles::random_reduced(rng, n, Rat(1, 3));
    if (cone_contains(d, u).status != Membership::inside) continue;
    for (const HomClass& a : section_candidates(d, u)) {
      REQUIRE(area(u, a).sign() > 0);
      REQUIRE(codim(d, a) > 0);
      REQUIRE(is_section_type(a));
    }
  }
}

TEST_CASE("equal-size-1/2 signatures change exactly at half-integers") {
  Manifold d{2, 3};
  auto sig = [&](const Rat& mu) {
    return section_candidates(d, AreaVec(mu, Rat(1), {Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  };
  // constant on (k/2, (k+1)/2]
  CHECK(sig(Rat(19, 4)) == sig(Rat(5)));      // both in (9/2, 5]
  CHECK(sig(Rat(21, 4)) == sig(Rat(11, 2)));  // both in (5, 11/2]
  CHECK(sig(Rat(5)) != sig(Rat(21, 4)));      // wall at 5 crossed
  CHECK(sig(Rat(9, 2)) != sig(Rat(5)));       // wall at 9/2 crossed
}

TEST_CASE("same chamber: worked example g=2") {
  Manifold d{2, 2};
  AreaVec a = vec("mu=21/4 c=1/2,1/2");
  AreaVec b = vec("mu=11/2 c=1/2,1/2");
  AreaVec c = vec("mu=5 c=1/2,1/2");
  CHECK(same_chamber(d, a, b));
  CHECK_FALSE(same_chamber(d, c, b));
  CHECK(same_chamber(d, c, c));  // reflexive
  // reduction-wall side matters: c1 = c2 sits on the wall, c1 > c2 does not
  AreaVec off = vec("mu=21/4 c=3/5,2/5");
  CHECK_FALSE(same_chamber(d, a, off));
}

TEST_CASE("same chamber is an equivalence on sampled points") {
  Manifold d{2, 2};
  AreaVec p1 = vec("mu=21/4 c=1/2,1/3");
  AreaVec p2 = vec("mu=26/5 c=1/2,1/3");
  AreaVec p3 = vec("mu=103/20 c=1/2,1/3");
  CHECK(same_chamber(d, p1, p2));
  CHECK(same_chamber(d, p2, p3));
  CHECK(same_chamber(d, p1, p3));  // transitivity on this triple
  CHECK(same_chamber(d, p2, p1));  // symmetry
}

TEST_CASE("chamber interval: worked example (9/2, 5]") {
  Manifold d{2, 3};
  ChamberInterval iv = chamber_interval(d, vec("mu=5 c=1/2,1/2,1/2"));
  CHECK(iv.lo == Rat(9, 2));
  CHECK(iv.hi == Rat(5));
  ChamberInterval iv2 = chamber_interval(d, vec("mu=19/4 c=1/2,1/2,1/2"));
  CHECK(iv2.lo == Rat(9, 2));
  CHECK(iv2.hi == Rat(5));
}

TEST_CASE("segment walls: half-integer scan g=2 n=3") {
  Manifold d{2, 3};
  AreaVec u0 = vec("mu=4 c=1/2,1/2,1/2");
  AreaVec u1 = vec("mu=10 c=1/2,1/2,1/2");
  SegmentWalls walls = segment_walls(d, u0, u1, /*closed_end=*/true);
  // distinct crossing parameters map to mu in {9/2, 5, ..., 10}
  std::vector<Rat> mus;
  for (const auto& cr : walls.crossings) {
    Rat mu = (Rat(1) - cr.s) * u0.mu + cr.s * u1.mu;
    if (mus.empty() || mus.back() != mu) mus.push_back(mu);
    // substituting the crossing parameter back gives area exactly 0
    std::vector<Rat> c;
    for (int i = 0; i < 3; ++i) c.push_back((Rat(1) - cr.s) * u0.c[i] + cr.s * u1.c[i]);
    AreaVec at(mu, Rat(1), c);
    REQUIRE(area(at, cr.cls) == Rat(0));
    REQUIRE(cr.kind == WallKind::interior);
  }
  std::vector<Rat> expect;
  for (int k = 9; k <= 20; ++k) expect.push_back(Rat(k, 2));
  CHECK(mus == expect);  // 12 half-integer points in (4, 10]

  // open right end drops mu = 10
  SegmentWalls open_walls = segment_walls(d, u0, u1, false);
  std::vector<Rat> open_mus;
  for (const auto& cr : open_walls.crossings) {
    Rat mu = (Rat(1) - cr.s) * u0.mu + cr.s * u1.mu;
    if (open_mus.empty() || open_mus.back() != mu) open_mus.push_back(mu);
  }
  expect.pop_back();
  CHECK(open_mus == expect);

  // the reduction walls contain the whole segment: coincident, not crossings
  CHECK(walls.coincident.size() == 4);  // F-E1-E2, E1-E2, E1-E3, E2-E3
}

TEST_CASE("segment walls: inside one chamber and degenerate input") {
  Manifold d{2, 2};
  AreaVec u0 = vec("mu=21/4 c=1/2,1/3");
  AreaVec u1 = vec("mu=26/5 c=1/2,1/3");
  CHECK(segment_walls(d, u0, u1).crossings.empty());
  CHECK_THROWS_AS(segment_walls(d, u0, u0), Error);
  CHECK_THROWS_AS(segment_walls(d, u0, vec("mu=2 f=2 c=1,2/3")), Error);
}

TEST_CASE("segment walls: reduction crossing at c1 = c2") {
  Manifold d{1, 2};
  AreaVec u0 = vec("mu=3 c=3/4,1/4");
  AreaVec u1 = vec("mu=3 c=1/4,3/4");
  SegmentWalls walls = segment_walls(d, u0, u1);
  bool found = false;
  for (const auto& cr : walls.crossings) {
    if (cr.kind == WallKind::reduction) {
      CHECK(format_class(cr.cls) == "E1-E2");
      CHECK(cr.s == Rat(1, 2));
      found = true;
    }
  }
  CHECK(found);
  // mu = 3 and c1 + c2 = 1 on the whole segment, so F-E1-E2 and the
  // sections B-3F and B-2F-E1-E2 vanish identically
  REQUIRE(walls.coincident.size() == 3);
  CHECK(format_class(walls.coincident[0].first) == "F-E1-E2");
  CHECK(walls.coincident[0].second == WallKind::reduction);
  CHECK(format_class(walls.coincident[1].first) == "B-3F");
  CHECK(format_class(walls.coincident[2].first) == "B-2F-E1-E2");
  CHECK(walls.coincident[2].second == WallKind::interior);
}

TEST_CASE("segment walls: extremal crossing when leaving the cone") {
  Manifold d{1, 2};
  AreaVec u0 = vec("mu=3 c=1/2,1/4");
  AreaVec u1 = vec("mu=3 c=-1/4,1/4");
  SegmentWalls walls = segment_walls(d, u0, u1);
  bool extremal = false, reduction = false;
  for (const auto& cr : walls.crossings) {
    if (cr.kind == WallKind::extremal && format_class(cr.cls) == "E1") {
      CHECK(cr.s == Rat(2, 3));
      extremal = true;
    }
    if (cr.kind == WallKind::reduction && format_class(cr.cls) == "E1-E2") {
      CHECK(cr.s == Rat(1, 3));
      reduction = true;
    }
  }
  CHECK(extremal);
  CHECK(reduction);
}

TEST_CASE("reported interior slice lines meet the closed cone") {
  // sampled verification, independent of the arrangement's own cone test
  Manifold d{2, 2};
  SliceSpec spec;
  spec.c = {std::nullopt, Rat(1, 2)};
  SliceWindow win{Rat(1), Rat(4), Rat(0), Rat(1)};
  SliceArrangement arr = slice_arrangement(d, spec, win);
  int interior = 0;
  for (const SliceLine& line : arr.lines) {
    if (line.kind != WallKind::interior) continue;
    ++interior;
    bool witness = false;
    for (int j = 0; j <= 64 && !witness; ++j) {
      Rat x = win.x0 + (win.x1 - win.x0) * Rat(j, 64);
      if (line.coeff_y.is_zero()) continue;
      Rat y = (-line.cst - line.coeff_x * x) / line.coeff_y;
      if (y < win.y0 || y > win.y1) continue;
      // free pair here is (mu, c1); closed-cone constraints directly
      Rat mu = x, c1 = y, c2 = Rat(1, 2);
      Rat usq = Rat(2) * mu - c1 * c1 - c2 * c2;
      witness = usq.sign() >= 0 && c1.sign() >= 0 && c1 <= Rat(1) && c2.sign() >= 0 &&
                c2 <= Rat(1);
    }
    REQUIRE(witness);
  }
  CHECK(interior > 0);
}

TEST_CASE("monotonicity in mu: signatures only grow") {
  std::mt19937_64 rng(0xBEEF0003);
  for (int it = 0; it < 200; ++it) {
    int g = 1 + static_cast<int>(rng() % 2);
    int n = static_cast<int>(rng() % 4);
    Manifold d{g, n};
    AreaVec u = oracles::random_reduced(rng, n, Rat(1, 2));
    AreaVec up(u.mu + oracles::random_rat(rng, 1, 9, 7), u.f, u.c);
    auto a = section_candidates(d, u);
    auto b = section_candidates(d, up);
    for (const HomClass& cls : a) REQUIRE(std::find(b.begin(), b.end(), cls) != b.end());
  }
}

TEST_CASE("fiber-type diagnostic enumeration") {
  Manifold d{2, 2};
  AreaVec u = vec("mu=3 c=1/2,1/3");
  auto diag = fiber_negative_classes(d, u, 2);
  for (const HomClass& c : diag) {
    CHECK(is_fiber_type(c));
    CHECK(codim(d, c) > 0);
    CHECK(area(u, c).sign() > 0);
    CHECK_FALSE(is_reduction_class(c));
  }
  // F - E1 - E2 has positive area here but is a reduction class: excluded
  HomClass red = cls("F-E1-E2", 2);
  CHECK(area(u, red) == Rat(1, 6));
  CHECK(std::find(diag.begin(), diag.end(), red) == diag.end());
}

TEST_CASE("slice arrangement: fixed c2 = 1/2") {
  Manifold d{2, 2};
  SliceSpec spec;
  spec.mu = std::nullopt;
  spec.c = {std::nullopt, Rat(1, 2)};
  SliceArrangement arr = slice_arrangement(d, spec, SliceWindow{Rat(1), Rat(4), Rat(0), Rat(1)});
  CHECK(arr.free_x == 0);  // mu
  CHECK(arr.free_y == 1);  // c1
  bool e1 = false, fe1 = false, red = false;
  int interior = 0;
  for (const SliceLine& line : arr.lines) {
    if (format_class(line.cls) == "E1") {
      e1 = true;  // the extremal line c1 = 0
      CHECK(line.kind == WallKind::extremal);
      CHECK(line.coeff_x == Rat(0));
      CHECK(line.coeff_y == Rat(1));
      CHECK(line.cst == Rat(0));
    }
    if (format_class(line.cls) == "F-E1") fe1 = true;  // c1 = 1
    if (format_class(line.cls) == "E1-E2") {
      red = true;  // reduction line c1 = 1/2
      CHECK(line.kind == WallKind::reduction);
    }
    if (line.kind == WallKind::interior) {
      ++interior;
      // every interior line restricts mu + k - c1 - (1/2)[2 in I]
      CHECK(line.coeff_x == Rat(1));
    }
  }
  CHECK(e1);
  CHECK(fe1);
  CHECK(red);
  CHECK(interior > 0);
}

TEST_CASE("slice arrangement: window outside the cone has no interior walls") {
  Manifold d{2, 2};
  SliceSpec spec;
  spec.c = {std::nullopt, Rat(1, 2)};
  // mu in [-5,-1] is outside the cone; boundary lines still show
  SliceArrangement arr =
      slice_arrangement(d, spec, SliceWindow{Rat(-5), Rat(-1), Rat(0), Rat(1)});
  CHECK_FALSE(arr.lines.empty());
  for (const SliceLine& line : arr.lines) CHECK(line.kind != WallKind::interior);
}

TEST_CASE("slice arrangement: fixed mu keeps the c1 = c2 reduction line") {
  Manifold d{1, 2};
  SliceSpec spec;
  spec.mu = Rat(3);
  spec.c = {std::nullopt, std::nullopt};
  SliceArrangement arr =
      slice_arrangement(d, spec, SliceWindow{Rat(0), Rat(1), Rat(0), Rat(1)});
  bool found = false;
  for (const SliceLine& line : arr.lines)
    if (format_class(line.cls) == "E1-E2") {
      found = true;
      CHECK(line.coeff_x == Rat(1));
      CHECK(line.coeff_y == Rat(-1));
      CHECK(line.cst == Rat(0));
    }
  CHECK(found);
}

TEST_CASE("slice arrangement rejects bad specs") {
  Manifold d{1, 2};
  SliceSpec spec;
  spec.c = {std::nullopt, std::nullopt};
  // three free coordinates
  CHECK_THROWS_AS(slice_arrangement(d, spec, SliceWindow{Rat(0), Rat(1), Rat(0), Rat(1)}),
                  Error);
  spec.mu = Rat(3);
  spec.c = {Rat(1, 2), Rat(1, 2)};
  // zero free coordinates
  CHECK_THROWS_AS(slice_arrangement(d, spec, SliceWindow{Rat(0), Rat(1), Rat(0), Rat(1)}),
                  Error);
}

TEST_CASE("subset guard trips on large n") {
  Manifold d{1, 20};
  std::vector<Rat> c(20, Rat(1, 40));
  AreaVec u(Rat(30), Rat(1), c);
  CHECK_THROWS_AS(section_candidates(d, u, 1 << 10), Error);
}
