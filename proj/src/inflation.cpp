#include "conecalc/inflation.hpp"

#include <algorithm>
#include <bit>

namespace conecalc {

namespace {

void check_dims(const Manifold& desc, const AreaVec& u) {
  if (desc.n != u.n())
    fail(Errc::dimension_mismatch, "area vector has n=" + std::to_string(u.n()) +
                                       " but descriptor has n=" + std::to_string(desc.n));
}

void require_normalized(const AreaVec& u) {
  if (!u.normalized()) fail(Errc::not_normalized, "area vector needs f = 1, got f = " + u.f.str());
}

void require_inside(const Manifold& desc, const AreaVec& u) {
  if (cone_contains(desc, u).status != Membership::inside)
    fail(Errc::not_in_cone, "area vector is not in the open symplectic cone");
}

}  // namespace

AreaVec inflate_once(const Manifold& desc, const AreaVec& u, const HomClass& z, const Rat& t,
                     InflationMode mode) {
  check_dims(desc, u);
  if (z.n() != u.n()) fail(Errc::dimension_mismatch, "inflation class has wrong n");
  Rat az = area(u, z);
  if (az.sign() <= 0)
    fail(Errc::nonpositive_area,
         "class " + format_class(z) + " has area " + az.str() + " <= 0");
  if (t.sign() < 0) fail(Errc::parameter_out_of_range, "t = " + t.str() + " is negative");
  long long sq = pair(z, z);
  if (sq < 0) {
    Rat bound = az / Rat(-sq);
    bool ok = mode == InflationMode::formal ? t <= bound : t < bound;
    if (!ok)
      fail(Errc::parameter_out_of_range,
           "t = " + t.str() + " exceeds the bound area(z)/(-z.z) = " + bound.str() +
               (mode == InflationMode::formal ? " (closed)" : " (open)"));
  }
  // area'(X) = area(X) + t * z.X on the basis classes
  Rat mu = u.mu + t * Rat(pair(z, HomClass::base(u.n())));
  Rat f = u.f + t * Rat(pair(z, HomClass::fiber(u.n())));
  std::vector<Rat> c(u.c);
  for (int i = 0; i < u.n(); ++i)
    c[i] += t * Rat(pair(z, HomClass::blowup(i + 1, u.n())));
  return AreaVec(std::move(mu), std::move(f), std::move(c));
}

AreaVec normalize_vector(const AreaVec& u) {
  if (u.normalized()) return u;
  std::vector<Rat> c(u.c);
  for (Rat& ci : c) ci /= u.f;
  return AreaVec(u.mu / u.f, Rat(1), std::move(c));
}

InflationPath section_descent(const Manifold& desc, const AreaVec& u, long long k,
                              const std::vector<int>& subtracted, const Rat& t,
                              InflationMode mode) {
  check_dims(desc, u);
  require_normalized(u);
  require_inside(desc, u);  // also gives 0 < c_i < 1, which makes the
                            // correction steps feasible
  std::vector<bool> in_set(desc.n, false);
  for (int i : subtracted) {
    if (i < 1 || i > desc.n)
      fail(Errc::dimension_mismatch, "index " + std::to_string(i) + " out of 1.." +
                                         std::to_string(desc.n));
    if (in_set[i - 1]) fail(Errc::bad_input, "repeated index in subtracted set");
    in_set[i - 1] = true;
  }
  if (t.sign() < 0) fail(Errc::parameter_out_of_range, "t = " + t.str() + " is negative");

  std::vector<long long> m(desc.n, 0);
  for (int i = 0; i < desc.n; ++i)
    if (in_set[i]) m[i] = -1;
  HomClass a(1, k, std::move(m));

  InflationPath path{u, {}, u};
  AreaVec cur = u;
  auto step = [&](const HomClass& z, const Rat& tz) {
    if (tz.is_zero()) return;
    cur = inflate_once(desc, cur, z, tz, mode);
    path.steps.push_back({z, tz});
  };

  step(a, t);  // fails with NonpositiveArea / ParameterOutOfRange as needed
  if (!t.is_zero()) {
    for (int i = 0; i < desc.n; ++i) {
      if (in_set[i]) continue;
      HomClass fe = HomClass::fiber(desc.n) - HomClass::blowup(i + 1, desc.n);
      Rat ti = u.c[i] * t;
      if (area(cur, fe) <= ti)  // provably never for c_i in (0,1)
        fail(Errc::infeasible_correction, "correction along " + format_class(fe) + " infeasible");
      step(fe, ti);
    }
    for (int i = 0; i < desc.n; ++i) {
      if (!in_set[i]) continue;
      HomClass e = HomClass::blowup(i + 1, desc.n);
      Rat si = (Rat(1) - u.c[i]) * t;
      if (area(cur, e) < si)
        fail(Errc::infeasible_correction, "correction along " + format_class(e) + " infeasible");
      step(e, si);
    }
  }
  path.end = normalize_vector(cur);
  return path;
}

std::vector<AreaVec> alternating_inflation(const Manifold& desc, const AreaVec& u,
                                           const HomClass& s_cls, const HomClass& x_cls,
                                           int rounds) {
  check_dims(desc, u);
  if (s_cls.n() != desc.n || x_cls.n() != desc.n)
    fail(Errc::dimension_mismatch, "mild pair classes have wrong n");
  if (rounds < 0) fail(Errc::bad_input, "rounds must be >= 0");
  HomClass e = s_cls + x_cls;
  if (pair(s_cls, s_cls) != -2) fail(Errc::not_mild_pair, "S must have square -2");
  if (adjunction_genus(desc, s_cls) != 0) fail(Errc::not_mild_pair, "S must have genus 0");
  if (!is_exceptional_class(desc, x_cls)) fail(Errc::not_mild_pair, "X must be exceptional");
  if (pair(s_cls, x_cls) != 1) fail(Errc::not_mild_pair, "S.X must be 1");
  if (pair(x_cls, e) != 0) fail(Errc::not_mild_pair, "X.(S+X) must be 0");
  if (area(u, s_cls).sign() <= 0)
    fail(Errc::nonpositive_area, "area(S) = " + area(u, s_cls).str() + " <= 0");
  if (area(u, x_cls).sign() <= 0)
    fail(Errc::nonpositive_area, "area(X) = " + area(u, x_cls).str() + " <= 0");

  std::vector<AreaVec> seq{u};
  AreaVec cur = u;
  for (int r = 0; r < rounds; ++r) {
    Rat gap = area(cur, e) - area(cur, x_cls);  // = area(S)
    Rat tr = gap / Rat(2);
    cur = inflate_once(desc, cur, s_cls, tr, InflationMode::formal);
    cur = inflate_once(desc, cur, x_cls, tr, InflationMode::formal);
    seq.push_back(cur);
  }
  return seq;
}

InflationPath plan_path(const Manifold& desc, const AreaVec& from, const AreaVec& to,
                        const PlanHints& hints, std::size_t subset_guard) {
  check_dims(desc, from);
  check_dims(desc, to);
  require_normalized(from);
  require_normalized(to);
  require_inside(desc, from);
  require_inside(desc, to);
  if (!is_reduced(from).reduced) fail(Errc::not_reduced, "start vector is not reduced");
  if (!is_reduced(to).reduced) fail(Errc::not_reduced, "target vector is not reduced");

  InflationPath path{from, {}, from};
  AreaVec cur = from;
  auto step = [&](const HomClass& z, const Rat& tz) {
    if (tz.is_zero()) return;
    cur = inflate_once(desc, cur, z, tz, InflationMode::formal);
    path.steps.push_back({z, tz});
  };

  // phase 1: c-adjustment along a hinted mild pair; u + tau*PD(S+X) must
  // land on to's c-vector with tau on the dyadic ladder (1 - 2^-r) * gap
  if (cur.c != to.c) {
    bool adjusted = false;
    for (const auto& [s_cls, x_cls] : hints.mild_pairs) {
      HomClass e = s_cls + x_cls;
      // required tau from each moved coordinate: delta_i = -tau * m_i(E)
      std::optional<Rat> tau;
      bool consistent = true;
      for (int i = 0; i < desc.n && consistent; ++i) {
        Rat delta = to.c[i] - cur.c[i];
        Rat coeff = Rat(pair(e, HomClass::blowup(i + 1, desc.n)));
        if (coeff.is_zero()) {
          if (!delta.is_zero()) consistent = false;
        } else {
          Rat cand = delta / coeff;
          if (tau && *tau != cand) consistent = false;
          tau = cand;
        }
      }
      if (!consistent || !tau || tau->sign() <= 0) continue;
      Rat gap = area(cur, s_cls);
      if (gap.sign() <= 0 || *tau >= gap) continue;
      // tau = (1 - 2^-r) * gap for integer r >= 1?
      Rat ratio = gap / (gap - *tau);  // = 2^r
      bool dyadic = false;
      int r = 0;
      for (Rat p(1); r <= 64; ++r, p *= Rat(2)) {
        if (p == ratio) {
          dyadic = true;
          break;
        }
        if (p > ratio) break;
      }
      if (!dyadic || r < 1) continue;
      for (int round = 0; round < r; ++round) {
        Rat g = area(cur, e) - area(cur, x_cls);
        Rat tr = g / Rat(2);
        step(s_cls, tr);
        step(x_cls, tr);
      }
      adjusted = cur.c == to.c;
      break;
    }
    if (!adjusted)
      fail(Errc::unreachable,
           "no hinted mild pair reaches the target c-vector on the dyadic ladder");
  }

  // phase 2: mu moves on the horizontal line
  if (cur.mu < to.mu) {
    step(HomClass::fiber(desc.n), to.mu - cur.mu);
  } else if (cur.mu > to.mu) {
    if (!hints.sections)
      fail(Errc::unreachable, "mu must decrease but section classes are unavailable; best"
                              " achievable mu is " + cur.mu.str());
    if (desc.n > 62 || (std::size_t(1) << desc.n) > subset_guard)
      fail(Errc::bound_too_large, "2^" + std::to_string(desc.n) +
                                      " subsets exceed the enumeration guard");
    // single section class + closed-form t: mu'(t) = (mu + tk + t*sum_{i not
    // in I} c_i)/(1+t) = target, decreasing iff limit = k + sum < target.
    // Candidates stay in the window k < g where a genus-g section embeds.
    std::optional<Rat> best_bound;
    std::optional<std::pair<long long, unsigned long long>> choice;
    Rat target = to.mu;
    std::vector<std::pair<long long, unsigned long long>> order;
    for (unsigned long long mask = 0; mask < (1ull << desc.n); ++mask) {
      Rat sum_in(0), sum_out(0);
      for (int i = 0; i < desc.n; ++i)
        ((mask >> i) & 1 ? sum_in : sum_out) += cur.c[i];
      // positive area: k > sum_in - mu
      Rat klo_r = sum_in - cur.mu;
      long long k_lo = klo_r.is_integer() ? klo_r.floor_ll() + 1 : klo_r.ceil_ll();
      // decreasing: limit k + sum_out < mu
      Rat kcap = cur.mu - sum_out;
      long long k_hi = kcap.is_integer() ? kcap.floor_ll() - 1 : kcap.floor_ll();
      k_hi = std::min<long long>(k_hi, desc.g - 1);
      for (long long k = k_lo; k <= k_hi; ++k) order.emplace_back(k, mask);
    }
    // deterministic candidate order: k descending, then subset mask
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (const auto& [k, mask] : order) {
      Rat sum_in(0), sum_out(0);
      for (int i = 0; i < desc.n; ++i)
        ((mask >> i) & 1 ? sum_in : sum_out) += cur.c[i];
      Rat limit = Rat(k) + sum_out;
      Rat achievable = limit;  // open limit as t -> infinity
      long long sq = 2 * k - std::popcount(mask);
      Rat t_star(-1);
      bool feasible = limit < target;
      if (feasible) t_star = (cur.mu - target) / (target - limit);
      if (sq < 0) {
        Rat area_a = cur.mu + Rat(k) - sum_in;
        Rat t_max = area_a / Rat(-sq);
        Rat mu_at_tmax = (cur.mu + t_max * Rat(k) + t_max * sum_out) / (Rat(1) + t_max);
        achievable = mu_at_tmax;  // closed endpoint under formal inflation
        if (feasible && t_star > t_max) feasible = false;
      }
      if (!best_bound || achievable < *best_bound) best_bound = achievable;
      if (feasible) {
        choice = {k, mask};
        break;
      }
    }
    if (!choice)
      fail(Errc::unreachable, "target mu " + target.str() + " below the reachable bound" +
                                  (best_bound ? " " + best_bound->str() : ""));
    std::vector<int> subtracted;
    for (int i = 0; i < desc.n; ++i)
      if ((choice->second >> i) & 1) subtracted.push_back(i + 1);
    Rat sum_in(0), sum_out(0);
    for (int i = 0; i < desc.n; ++i)
      (((choice->second) >> i) & 1 ? sum_in : sum_out) += cur.c[i];
    Rat limit = Rat(choice->first) + sum_out;
    Rat t_star = (cur.mu - target) / (target - limit);
    InflationPath sub = section_descent(desc, cur, choice->first, subtracted, t_star,
                                        InflationMode::formal);
    for (const auto& st : sub.steps) path.steps.push_back(st);
    cur = sub.end;
  }

  path.end = cur;
  if (path.end != to) fail(Errc::internal, "planner did not land on the target");
  return path;
}

AreaVec replay(const Manifold& desc, const InflationPath& path, InflationMode mode) {
  AreaVec cur = path.start;
  for (const auto& st : path.steps) cur = inflate_once(desc, cur, st.z, st.t, mode);
  return normalize_vector(cur);
}

}  // namespace conecalc
