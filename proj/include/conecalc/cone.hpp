#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conecalc/lattice.hpp"
#include "conecalc/rational.hpp"

namespace conecalc {

// Cohomology class recorded by its areas (mu, f, c_1..c_n) on B, F, E_i.
// f > 0 is a type invariant; "normalized" means f = 1.
struct AreaVec {
  Rat mu;
  Rat f;
  std::vector<Rat> c;

  AreaVec(Rat mu_, Rat f_, std::vector<Rat> c_);
  int n() const { return static_cast<int>(c.size()); }
  bool normalized() const { return f == Rat(1); }

  friend bool operator==(const AreaVec& x, const AreaVec& y) {
    return x.mu == y.mu && x.f == y.f && x.c == y.c;
  }
  friend bool operator!=(const AreaVec& x, const AreaVec& y) { return !(x == y); }
};

Rat area(const AreaVec& u, const HomClass& cls);

// Rational-coefficient class; carries Poincare duals of area vectors.
struct RatClass {
  Rat a, b;
  std::vector<Rat> m;
};

// The class P with pair(P, X) = area(X) for every X: P = fB + muF - sum c_i E_i.
RatClass pd_class(const AreaVec& u);

// u.u = 2 mu f - sum c_i^2
Rat u_square(const AreaVec& u);

enum class Membership { inside, boundary, outside };

struct ConeWitness {
  std::optional<HomClass> cls;  // empty: the u.u > 0 constraint
  Rat value;
};

struct ConeReport {
  Membership status;
  Rat usq;
  std::vector<ConeWitness> witnesses;  // constraints with value <= 0
};

// Li-Liu membership: inside iff u.u > 0 and area(E) > 0 for every
// exceptional class E; g >= 1 only (the g = 0 exceptional set is infinite).
ConeReport cone_contains(const Manifold& desc, const AreaVec& u);

struct ReducedWitness {
  std::string kind;  // "mu" | "range" | "ordering" | "sum"
  std::string detail;
};

struct ReducedReport {
  bool reduced = false;
  bool on_reduction_wall = false;  // c1+c2 = 1 or some c_i = c_{i+1}
  std::vector<ReducedWitness> witnesses;
};

// mu > 0, 0 < c_i < 1 decreasing, c1+c2 <= 1; requires f = 1.
ReducedReport is_reduced(const AreaVec& u);

// For g >= 1: exactly {E_i} u {F-E_i}, listed E_1..E_n, F-E_1..F-E_n.
std::vector<HomClass> exceptional_set(const Manifold& desc);

// F-E1-E2 (when n >= 2) and E_j-E_i for j < i.
std::vector<HomClass> reduction_set(const Manifold& desc);

inline constexpr std::size_t kDefaultSubsetGuard = std::size_t(1) << 16;

// All section classes B + kF - sum_{i in I} E_i with codim > 0 and
// area > 0 at u, ordered by (k, then I lexicographic). This set is the
// chamber signature of u.
std::vector<HomClass> section_candidates(const Manifold& desc, const AreaVec& u,
                                         std::size_t subset_guard = kDefaultSubsetGuard);

// Equal signatures and equal signs on every reduction wall.
bool same_chamber(const Manifold& desc, const AreaVec& u0, const AreaVec& u1,
                  std::size_t subset_guard = kDefaultSubsetGuard);

// Walls met when mu varies with c fixed; the chamber through u is (lo, hi].
struct ChamberInterval {
  Rat lo, hi;
};
ChamberInterval chamber_interval(const Manifold& desc, const AreaVec& u,
                                 std::size_t subset_guard = kDefaultSubsetGuard);

enum class WallKind { interior, extremal, reduction };
const char* wall_kind_name(WallKind k);

struct WallCrossing {
  Rat s;  // parameter along the segment, area of cls at u(s) is exactly 0
  HomClass cls;
  WallKind kind;
};

struct SegmentWalls {
  std::vector<WallCrossing> crossings;
  // classes whose area vanishes identically on the segment (the segment
  // lies inside the wall); these have no crossing parameter
  std::vector<std::pair<HomClass, WallKind>> coincident;
};

// Scans u(s) = (1-s)u0 + s*u1 for s in (0,1), or (0,1] when closed_end.
SegmentWalls segment_walls(const Manifold& desc, const AreaVec& u0, const AreaVec& u1,
                           bool closed_end = false,
                           std::size_t subset_guard = kDefaultSubsetGuard);

// Diagnostic: fiber-type classes with codim > 0 and positive area at u,
// |b|,|m_i| <= coeff_bound. Not part of the chamber signature.
std::vector<HomClass> fiber_negative_classes(const Manifold& desc, const AreaVec& u,
                                             int coeff_bound);

// --- planar slice of the wall arrangement ---

// Partial assignment of the coordinates (mu, c_1..c_n); exactly two free.
struct SliceSpec {
  std::optional<Rat> mu;
  std::vector<std::optional<Rat>> c;
};

struct SliceWindow {
  Rat x0, x1, y0, y1;  // box for the two free coordinates, in (mu, c1..cn) order
};

struct SliceLine {
  HomClass cls;
  WallKind kind;
  Rat coeff_x, coeff_y, cst;  // area restricted to the slice: coeff_x*x + coeff_y*y + cst
};

struct SliceArrangement {
  int free_x = -1;  // coordinate ids: 0 = mu, i = c_i
  int free_y = -1;
  SliceWindow window{0, 0, 0, 0};
  std::vector<SliceLine> lines;
};

// Wall lines meeting the window. Interior walls must additionally meet the
// closed cone; extremal/reduction lines frame the picture regardless.
SliceArrangement slice_arrangement(const Manifold& desc, const SliceSpec& spec,
                                   const SliceWindow& window,
                                   std::size_t subset_guard = kDefaultSubsetGuard);

}  // namespace conecalc
