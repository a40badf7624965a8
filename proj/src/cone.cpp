#include "conecalc/cone.hpp"

#include <algorithm>
#include <bit>

namespace conecalc {

namespace {

void check_dims(const Manifold& desc, const AreaVec& u) {
  if (desc.n != u.n())
    fail(Errc::dimension_mismatch, "area vector has n=" + std::to_string(u.n()) +
                                       " but descriptor has n=" + std::to_string(desc.n));
}

void require_genus(const Manifold& desc) {
  if (desc.g < 1)
    fail(Errc::unsupported_genus,
         "g = 0 has an infinite exceptional set; only g >= 1 is supported");
}

void require_normalized(const AreaVec& u) {
  if (!u.normalized()) fail(Errc::not_normalized, "area vector needs f = 1, got f = " + u.f.str());
}

void require_inside(const Manifold& desc, const AreaVec& u) {
  if (cone_contains(desc, u).status != Membership::inside)
    fail(Errc::not_in_cone, "area vector is not in the open symplectic cone");
}

void check_subset_guard(int n, std::size_t guard) {
  if (n > 62 || (std::size_t(1) << n) > guard)
    fail(Errc::bound_too_large, "2^" + std::to_string(n) +
                                    " subsets exceed the enumeration guard (" +
                                    std::to_string(guard) + "); raise CONECALC_MAX_SUBSETS");
}

// largest k with codim(B + kF - sum_{i in I} E_i) > 0, i.e. k < (l+g-1)/2
long long section_k_max(int g, int l) {
  // floor((l+g-2)/2) also for negative l+g-2
  long long v = l + g - 2;
  return v >= 0 ? v / 2 : -((-v + 1) / 2);
}

HomClass section_class(int n, long long k, unsigned long long mask) {
  std::vector<long long> m(n, 0);
  for (int i = 0; i < n; ++i)
    if (mask & (1ull << i)) m[i] = -1;
  return HomClass(1, k, std::move(m));
}

std::vector<int> subtracted_indices(const HomClass& a) {
  std::vector<int> idx;
  for (int i = 0; i < a.n(); ++i)
    if (a.m()[i] == -1) idx.push_back(i + 1);
  return idx;
}

// pinned signature order: k ascending, then I lexicographic
bool section_order(const HomClass& x, const HomClass& y) {
  if (x.b() != y.b()) return x.b() < y.b();
  return subtracted_indices(x) < subtracted_indices(y);
}

}  // namespace

AreaVec::AreaVec(Rat mu_, Rat f_, std::vector<Rat> c_)
    : mu(std::move(mu_)), f(std::move(f_)), c(std::move(c_)) {
  if (f.sign() <= 0) fail(Errc::bad_input, "area vector needs f > 0, got f = " + f.str());
}

Rat area(const AreaVec& u, const HomClass& cls) {
  if (u.n() != cls.n())
    fail(Errc::dimension_mismatch, "class and area vector have different n");
  Rat acc = Rat(cls.a()) * u.mu + Rat(cls.b()) * u.f;
  for (int i = 0; i < u.n(); ++i) acc += Rat(cls.m()[i]) * u.c[i];
  return acc;
}

RatClass pd_class(const AreaVec& u) {
  RatClass p;
  p.a = u.f;
  p.b = u.mu;
  p.m.reserve(u.c.size());
  for (const Rat& ci : u.c) p.m.push_back(-ci);
  return p;
}

Rat u_square(const AreaVec& u) {
  Rat acc = Rat(2) * u.mu * u.f;
  for (const Rat& ci : u.c) acc -= ci * ci;
  return acc;
}

ConeReport cone_contains(const Manifold& desc, const AreaVec& u) {
  check_dims(desc, u);
  require_genus(desc);
  ConeReport rep{Membership::inside, u_square(u), {}};
  bool zero = false, negative = false;
  if (rep.usq.sign() <= 0) {
    rep.witnesses.push_back({std::nullopt, rep.usq});
    (rep.usq.sign() == 0 ? zero : negative) = true;
  }
  for (const HomClass& e : exceptional_set(desc)) {
    Rat v = area(u, e);
    if (v.sign() <= 0) {
      rep.witnesses.push_back({e, v});
      (v.sign() == 0 ? zero : negative) = true;
    }
  }
  rep.status = negative ? Membership::outside
                        : (zero ? Membership::boundary : Membership::inside);
  return rep;
}

ReducedReport is_reduced(const AreaVec& u) {
  require_normalized(u);
  ReducedReport rep;
  if (u.mu.sign() <= 0)
    rep.witnesses.push_back({"mu", "mu = " + u.mu.str() + " is not positive"});
  for (int i = 0; i < u.n(); ++i) {
    if (u.c[i].sign() <= 0 || u.c[i] >= Rat(1))
      rep.witnesses.push_back(
          {"range", "c" + std::to_string(i + 1) + " = " + u.c[i].str() + " outside (0,1)"});
  }
  for (int i = 0; i + 1 < u.n(); ++i) {
    if (u.c[i] < u.c[i + 1])
      rep.witnesses.push_back({"ordering", "c" + std::to_string(i + 1) + " = " + u.c[i].str() +
                                               " < c" + std::to_string(i + 2) + " = " +
                                               u.c[i + 1].str()});
    if (u.c[i] == u.c[i + 1]) rep.on_reduction_wall = true;
  }
  if (u.n() >= 2) {
    Rat s = u.c[0] + u.c[1];
    if (s > Rat(1))
      rep.witnesses.push_back({"sum", "c1+c2 = " + s.str() + " > 1"});
    if (s == Rat(1)) rep.on_reduction_wall = true;
  }
  rep.reduced = rep.witnesses.empty();
  return rep;
}

std::vector<HomClass> exceptional_set(const Manifold& desc) {
  require_genus(desc);
  std::vector<HomClass> out;
  out.reserve(2 * desc.n);
  for (int i = 1; i <= desc.n; ++i) out.push_back(HomClass::blowup(i, desc.n));
  for (int i = 1; i <= desc.n; ++i)
    out.push_back(HomClass::fiber(desc.n) - HomClass::blowup(i, desc.n));
  return out;
}

std::vector<HomClass> reduction_set(const Manifold& desc) {
  std::vector<HomClass> out;
  if (desc.n >= 2) {
    out.push_back(HomClass::fiber(desc.n) - HomClass::blowup(1, desc.n) -
                  HomClass::blowup(2, desc.n));
    for (int j = 1; j <= desc.n; ++j)
      for (int i = j + 1; i <= desc.n; ++i)
        out.push_back(HomClass::blowup(j, desc.n) - HomClass::blowup(i, desc.n));
  }
  return out;
}

std::vector<HomClass> section_candidates(const Manifold& desc, const AreaVec& u,
                                         std::size_t subset_guard) {
  check_dims(desc, u);
  require_normalized(u);
  require_inside(desc, u);
  check_subset_guard(desc.n, subset_guard);

  std::vector<HomClass> out;
  for (unsigned long long mask = 0; mask < (1ull << desc.n); ++mask) {
    int l = std::popcount(mask);
    Rat sumc(0);
    for (int i = 0; i < desc.n; ++i)
      if (mask & (1ull << i)) sumc += u.c[i];
    long long k_hi = section_k_max(desc.g, l);
    // smallest k with area mu + k - sumc strictly positive
    Rat bound = sumc - u.mu;
    long long k_lo = bound.is_integer() ? bound.floor_ll() + 1 : bound.ceil_ll();
    for (long long k = k_lo; k <= k_hi; ++k) out.push_back(section_class(desc.n, k, mask));
  }
  std::sort(out.begin(), out.end(), section_order);
  return out;
}

bool same_chamber(const Manifold& desc, const AreaVec& u0, const AreaVec& u1,
                  std::size_t subset_guard) {
  if (u0.n() != u1.n()) fail(Errc::dimension_mismatch, "area vectors have different n");
  if (section_candidates(desc, u0, subset_guard) != section_candidates(desc, u1, subset_guard))
    return false;
  for (const HomClass& d : reduction_set(desc))
    if (area(u0, d).sign() != area(u1, d).sign()) return false;
  return true;
}

ChamberInterval chamber_interval(const Manifold& desc, const AreaVec& u,
                                 std::size_t subset_guard) {
  check_dims(desc, u);
  require_normalized(u);
  require_inside(desc, u);
  check_subset_guard(desc.n, subset_guard);

  // walls met when mu varies with c fixed sit at w = sum_I c_i - k over the
  // codim > 0 window; each subset contributes the upward progression
  // {w_min, w_min+1, ...}
  std::optional<Rat> lo, hi;
  for (unsigned long long mask = 0; mask < (1ull << desc.n); ++mask) {
    int l = std::popcount(mask);
    Rat sumc(0);
    for (int i = 0; i < desc.n; ++i)
      if (mask & (1ull << i)) sumc += u.c[i];
    Rat w_min = sumc - Rat(section_k_max(desc.g, l));
    Rat delta = u.mu - w_min;
    long long j_up = std::max<long long>(0, delta.ceil_ll());
    Rat hi_cand = w_min + Rat(j_up);
    if (!hi || hi_cand < *hi) hi = hi_cand;
    if (delta.sign() > 0) {
      long long j_lo = delta.is_integer() ? delta.floor_ll() - 1 : delta.floor_ll();
      if (j_lo >= 0) {
        Rat lo_cand = w_min + Rat(j_lo);
        if (!lo || lo_cand > *lo) lo = lo_cand;
      }
    }
  }
  // the cone itself bounds the chamber from below: u.u > 0 means mu > sum c^2 / 2
  Rat cone_entry(0);
  for (const Rat& ci : u.c) cone_entry += ci * ci;
  cone_entry = cone_entry / Rat(2);
  if (!lo || cone_entry > *lo) lo = cone_entry;
  return {*lo, *hi};
}

const char* wall_kind_name(WallKind k) {
  switch (k) {
    case WallKind::interior: return "interior";
    case WallKind::extremal: return "extremal";
    case WallKind::reduction: return "reduction";
  }
  return "interior";
}

SegmentWalls segment_walls(const Manifold& desc, const AreaVec& u0, const AreaVec& u1,
                           bool closed_end, std::size_t subset_guard) {
  check_dims(desc, u0);
  check_dims(desc, u1);
  require_normalized(u0);
  require_normalized(u1);
  if (u0 == u1) fail(Errc::degenerate_segment, "segment endpoints coincide");
  check_subset_guard(desc.n, subset_guard);

  std::vector<std::pair<HomClass, WallKind>> candidates;
  for (const HomClass& e : exceptional_set(desc)) candidates.emplace_back(e, WallKind::extremal);
  for (const HomClass& d : reduction_set(desc)) candidates.emplace_back(d, WallKind::reduction);
  for (unsigned long long mask = 0; mask < (1ull << desc.n); ++mask) {
    int l = std::popcount(mask);
    // k solves mu(s) + k = sum_I c_i(s) somewhere on [0,1]
    Rat h0(0), h1(0);
    for (int i = 0; i < desc.n; ++i)
      if (mask & (1ull << i)) {
        h0 += u0.c[i];
        h1 += u1.c[i];
      }
    h0 -= u0.mu;
    h1 -= u1.mu;
    Rat kmin = std::min(h0, h1), kmax = std::max(h0, h1);
    long long k_hi = std::min(section_k_max(desc.g, l), kmax.floor_ll());
    for (long long k = kmin.ceil_ll(); k <= k_hi; ++k)
      candidates.emplace_back(section_class(desc.n, k, mask), WallKind::interior);
  }

  SegmentWalls out;
  for (auto& [cls, kind] : candidates) {
    Rat a0 = area(u0, cls), a1 = area(u1, cls);
    if (a0.is_zero() && a1.is_zero()) {
      out.coincident.emplace_back(cls, kind);
      continue;
    }
    if (a0 == a1) continue;
    Rat s = a0 / (a0 - a1);
    bool inside = s.sign() > 0 && (s < Rat(1) || (closed_end && s == Rat(1)));
    if (inside) out.crossings.push_back({s, cls, kind});
  }
  std::sort(out.crossings.begin(), out.crossings.end(),
            [](const WallCrossing& x, const WallCrossing& y) {
              if (x.s != y.s) return x.s < y.s;
              return x.cls < y.cls;
            });
  std::sort(out.coincident.begin(), out.coincident.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::vector<HomClass> fiber_negative_classes(const Manifold& desc, const AreaVec& u,
                                             int coeff_bound) {
  check_dims(desc, u);
  if (coeff_bound < 1) fail(Errc::bad_input, "coeff_bound must be >= 1");
  double combos = 1;
  for (int i = 0; i <= desc.n; ++i) combos *= 2 * coeff_bound + 1;
  if (combos > double(1 << 22)) fail(Errc::bound_too_large, "diagnostic window too large");

  std::vector<HomClass> out;
  std::vector<long long> v(desc.n + 1, -coeff_bound);  // (b, m)
  for (;;) {
    HomClass cls(0, v[0], std::vector<long long>(v.begin() + 1, v.end()));
    if (!cls.is_zero() && codim(desc, cls) > 0 && area(u, cls).sign() > 0 &&
        !is_reduction_class(cls))
      out.push_back(cls);
    std::size_t i = 0;
    for (; i < v.size(); ++i) {
      if (v[i] < coeff_bound) {
        ++v[i];
        break;
      }
      v[i] = -coeff_bound;
    }
    if (i == v.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- slice ---

namespace {

struct LinePoint {
  Rat x, y;
};

// line coeff_x*x + coeff_y*y + cst = 0 as point + direction
struct ParamLine {
  LinePoint p;
  LinePoint d;
};

ParamLine parametrize(const SliceLine& line) {
  ParamLine pl;
  pl.d = {line.coeff_y, -line.coeff_x};
  if (!line.coeff_x.is_zero()) {
    pl.p = {-line.cst / line.coeff_x, Rat(0)};
  } else {
    pl.p = {Rat(0), -line.cst / line.coeff_y};
  }
  return pl;
}

struct TInterval {
  Rat lo, hi;
  bool empty = false;
};

// clip by value(t) = v0 + t*dv >= 0
void clip_halfline(TInterval& iv, const Rat& v0, const Rat& dv) {
  if (iv.empty) return;
  if (dv.is_zero()) {
    if (v0.sign() < 0) iv.empty = true;
    return;
  }
  Rat t0 = -v0 / dv;
  if (dv.sign() > 0) {
    if (t0 > iv.lo) iv.lo = t0;
  } else {
    if (t0 < iv.hi) iv.hi = t0;
  }
  if (iv.lo > iv.hi) iv.empty = true;
}

}  // namespace

SliceArrangement slice_arrangement(const Manifold& desc, const SliceSpec& spec,
                                   const SliceWindow& window, std::size_t subset_guard) {
  require_genus(desc);
  if (static_cast<int>(spec.c.size()) != desc.n)
    fail(Errc::dimension_mismatch, "slice spec has wrong number of c entries");
  check_subset_guard(desc.n, subset_guard);

  std::vector<int> free_ids;
  if (!spec.mu) free_ids.push_back(0);
  for (int i = 0; i < desc.n; ++i)
    if (!spec.c[i]) free_ids.push_back(i + 1);
  if (free_ids.size() != 2)
    fail(Errc::bad_slice, "exactly 2 of (mu, c1..cn) must be free, got " +
                              std::to_string(free_ids.size()));
  if (window.x0 >= window.x1 || window.y0 >= window.y1)
    fail(Errc::bad_input, "slice window must have positive extent");

  SliceArrangement arr;
  arr.free_x = free_ids[0];
  arr.free_y = free_ids[1];
  arr.window = window;

  // affine restriction of area(A) to the slice plane (f = 1)
  auto restrict_line = [&](const HomClass& cls, WallKind kind) -> SliceLine {
    SliceLine line{cls, kind, Rat(0), Rat(0), Rat(cls.b())};
    auto coeff_of = [&](int coord) -> Rat {
      return coord == 0 ? Rat(cls.a()) : Rat(cls.m()[coord - 1]);
    };
    if (spec.mu)
      line.cst += Rat(cls.a()) * *spec.mu;
    for (int i = 0; i < desc.n; ++i)
      if (spec.c[i]) line.cst += Rat(cls.m()[i]) * *spec.c[i];
    line.coeff_x = coeff_of(arr.free_x);
    line.coeff_y = coeff_of(arr.free_y);
    return line;
  };

  // exact clip of a wall line to the window box; nullopt when disjoint
  auto box_clip = [&](const SliceLine& line) -> std::optional<std::pair<ParamLine, TInterval>> {
    if (line.coeff_x.is_zero() && line.coeff_y.is_zero()) return std::nullopt;
    ParamLine pl = parametrize(line);
    TInterval iv{Rat(-1), Rat(1), false};
    // seed the interval wide enough to contain the box in parameter space,
    // then clip; clip_affine only shrinks, so start from the box clips
    bool first = true;
    auto apply = [&](const Rat& v0, const Rat& dv, const Rat& a, const Rat& b) {
      if (dv.is_zero()) {
        if (v0 < a || v0 > b) iv.empty = true;
        return;
      }
      Rat t_at_a = (a - v0) / dv, t_at_b = (b - v0) / dv;
      Rat lo = std::min(t_at_a, t_at_b), hi = std::max(t_at_a, t_at_b);
      if (first) {
        iv.lo = lo;
        iv.hi = hi;
        first = false;
      } else {
        if (lo > iv.lo) iv.lo = lo;
        if (hi < iv.hi) iv.hi = hi;
        if (iv.lo > iv.hi) iv.empty = true;
      }
    };
    apply(pl.p.x, pl.d.x, window.x0, window.x1);
    if (!iv.empty) apply(pl.p.y, pl.d.y, window.y0, window.y1);
    if (iv.empty) return std::nullopt;
    if (first) return std::nullopt;  // both directions zero; unreachable
    return std::make_pair(pl, iv);
  };

  // value of coordinate `coord` along pl at parameter t: returns (v0, dv)
  auto coord_affine = [&](const ParamLine& pl, int coord) -> std::pair<Rat, Rat> {
    if (coord == arr.free_x) return {pl.p.x, pl.d.x};
    if (coord == arr.free_y) return {pl.p.y, pl.d.y};
    if (coord == 0) return {*spec.mu, Rat(0)};
    return {*spec.c[coord - 1], Rat(0)};
  };

  // does the clipped line meet the closed cone? exceptional areas are
  // affine along the line; u.u = 2 mu - sum c_i^2 is concave quadratic
  auto meets_cone = [&](const ParamLine& pl, TInterval iv) -> bool {
    for (const HomClass& e : exceptional_set(desc)) {
      Rat v0(0), dv(0);
      v0 += Rat(e.b());
      for (int coord = 0; coord <= desc.n; ++coord) {
        Rat coeff = coord == 0 ? Rat(e.a()) : Rat(e.m()[coord - 1]);
        if (coeff.is_zero()) continue;
        auto [c0, cd] = coord_affine(pl, coord);
        v0 += coeff * c0;
        dv += coeff * cd;
      }
      clip_halfline(iv, v0, dv);
      if (iv.empty) return false;
    }
    // q(t) = 2 mu(t) - sum c_i(t)^2, concave; max over [lo,hi] at the
    // clamped vertex
    auto [mu0, mud] = coord_affine(pl, 0);
    Rat q2(0), q1 = Rat(2) * mud, q0 = Rat(2) * mu0;
    for (int i = 1; i <= desc.n; ++i) {
      auto [c0, cd] = coord_affine(pl, i);
      q2 -= cd * cd;
      q1 -= Rat(2) * c0 * cd;
      q0 -= c0 * c0;
    }
    auto q_at = [&](const Rat& t) { return q2 * t * t + q1 * t + q0; };
    Rat best = std::max(q_at(iv.lo), q_at(iv.hi));
    if (!q2.is_zero()) {
      Rat vertex = -q1 / (Rat(2) * q2);
      if (vertex > iv.lo && vertex < iv.hi) best = std::max(best, q_at(vertex));
    }
    return best.sign() >= 0;
  };

  auto consider = [&](const HomClass& cls, WallKind kind) {
    SliceLine line = restrict_line(cls, kind);
    auto clipped = box_clip(line);
    if (!clipped) return;
    if (kind == WallKind::interior && !meets_cone(clipped->first, clipped->second)) return;
    arr.lines.push_back(line);
  };

  for (const HomClass& e : exceptional_set(desc)) consider(e, WallKind::extremal);
  for (const HomClass& d : reduction_set(desc)) consider(d, WallKind::reduction);

  // interior walls: per subset, k ranges over values where the line can
  // meet the box at all
  for (unsigned long long mask = 0; mask < (1ull << desc.n); ++mask) {
    int l = std::popcount(mask);
    SliceLine base = restrict_line(section_class(desc.n, 0, mask), WallKind::interior);
    // area = base + k over the box; min/max of the affine part at corners
    Rat corners[4] = {
        base.coeff_x * window.x0 + base.coeff_y * window.y0 + base.cst,
        base.coeff_x * window.x0 + base.coeff_y * window.y1 + base.cst,
        base.coeff_x * window.x1 + base.coeff_y * window.y0 + base.cst,
        base.coeff_x * window.x1 + base.coeff_y * window.y1 + base.cst,
    };
    Rat vmin = *std::min_element(corners, corners + 4);
    Rat vmax = *std::max_element(corners, corners + 4);
    long long k_hi = std::min(section_k_max(desc.g, l), (-vmin).floor_ll());
    for (long long k = (-vmax).ceil_ll(); k <= k_hi; ++k)
      consider(section_class(desc.n, k, mask), WallKind::interior);
  }

  auto rank = [](WallKind k) {
    return k == WallKind::extremal ? 0 : (k == WallKind::reduction ? 1 : 2);
  };
  std::stable_sort(arr.lines.begin(), arr.lines.end(),
                   [&](const SliceLine& a, const SliceLine& b) {
                     if (a.kind != b.kind) return rank(a.kind) < rank(b.kind);
                     if (a.cls.b() != b.cls.b()) return a.cls.b() < b.cls.b();
                     return a.cls < b.cls;
                   });
  return arr;
}

}  // namespace conecalc
