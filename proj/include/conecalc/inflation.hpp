#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/rational.hpp"

namespace conecalc {

// Formal inflation admits the closed upper endpoint of the parameter
// range; strict mode keeps the range open.
enum class InflationMode { formal, strict };

struct InflationStep {
  HomClass z;
  Rat t;
};

struct InflationPath {
  AreaVec start;
  std::vector<InflationStep> steps;
  AreaVec end;  // replaying the steps from start and normalizing gives end
};

// area'(X) = area(X) + t * pair(z, X). Requires area(z) > 0 at u and,
// when z.z < 0, t <= area(z)/(-z.z) (strict < in strict mode).
AreaVec inflate_once(const Manifold& desc, const AreaVec& u, const HomClass& z,
                     const Rat& t, InflationMode mode = InflationMode::formal);

AreaVec normalize_vector(const AreaVec& u);

// Composite inflation along A = B + kF - sum_{i in I} E_i with the
// correction schedule that restores every c_i after normalization:
// F-E_i by c_i*t for i not in I, E_i by (1-c_i)*t for i in I.
// End vector: mu' = (mu + t k + t sum_{i not in I} c_i)/(1+t), c' = c, f' = 1.
InflationPath section_descent(const Manifold& desc, const AreaVec& u, long long k,
                              const std::vector<int>& subtracted, const Rat& t,
                              InflationMode mode = InflationMode::formal);

// Alternating inflation along a mild pair: per round, inflate along S by
// half the current gap area(E)-area(X) (E = S+X), then along X by the same
// amount. Gap halves exactly each round and u_r = u_0 + tau_r * PD(E) with
// tau_r = (1 - 2^-r) * gap_0. Returns u_0..u_rounds.
std::vector<AreaVec> alternating_inflation(const Manifold& desc, const AreaVec& u,
                                           const HomClass& s_cls, const HomClass& x_cls,
                                           int rounds);

// Which classes the planner may inflate along. F is always available;
// sections and the listed mild pairs reflect the caller's stratum
// assumption (default: the open stratum, everything embedded).
struct PlanHints {
  bool sections = true;
  std::vector<std::pair<HomClass, HomClass>> mild_pairs;  // (S, X)
};

// Deterministic two-phase planner: optional c-adjustment via a hinted mild
// pair (dyadic rounds), then mu moves via an F-step or a single
// section_descent with the closed-form parameter.
InflationPath plan_path(const Manifold& desc, const AreaVec& from, const AreaVec& to,
                        const PlanHints& hints = {},
                        std::size_t subset_guard = kDefaultSubsetGuard);

// Applies the steps from path.start and normalizes. Does not compare with
// path.end; callers assert that separately.
AreaVec replay(const Manifold& desc, const InflationPath& path,
               InflationMode mode = InflationMode::formal);

}  // namespace conecalc
