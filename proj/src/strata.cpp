#include "conecalc/strata.hpp"

#include <algorithm>

namespace conecalc {

namespace {

void check_dims(const Manifold& desc, const HomClass& a) {
  if (desc.n != a.n())
    fail(Errc::dimension_mismatch, "class has n=" + std::to_string(a.n()) +
                                       " but descriptor has n=" + std::to_string(desc.n));
}

void require_inside(const Manifold& desc, const AreaVec& u) {
  if (cone_contains(desc, u).status != Membership::inside)
    fail(Errc::not_in_cone, "area vector is not in the open symplectic cone");
}

bool part_order(const DecompPart& a, const DecompPart& b) {
  if (a.cls != b.cls) return a.cls < b.cls;
  return a.mult < b.mult;
}

bool decomposition_order(const Decomposition& a, const Decomposition& b) {
  auto count = [](const Decomposition& d) {
    long long c = 0;
    for (const auto& p : d.parts) c += p.mult;
    return c;
  };
  long long ca = count(a), cb = count(b);
  if (ca != cb) return ca < cb;
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                      b.parts.end(), [](const DecompPart& x, const DecompPart& y) {
                                        return part_order(x, y);
                                      });
}

}  // namespace

bool is_trivial(const Decomposition& dec) {
  return dec.parts.size() == 1 && dec.parts[0].mult == 1 && dec.parts[0].cls == dec.total;
}

void validate_decomposition(const Manifold& desc, const Decomposition& dec) {
  check_dims(desc, dec.total);
  if (!is_exceptional_class(desc, dec.total) || !is_fiber_type(dec.total))
    fail(Errc::invalid_decomposition,
         format_class(dec.total) + " is not an exceptional class of this surface");
  if (dec.parts.empty()) fail(Errc::invalid_decomposition, "decomposition has no parts");
  HomClass sum = HomClass::zero(desc.n);
  for (const auto& [cls, mult] : dec.parts) {
    check_dims(desc, cls);
    if (mult < 1) fail(Errc::invalid_decomposition, "part multiplicity must be >= 1");
    if (!is_fiber_type(cls))
      fail(Errc::invalid_decomposition, "part " + format_class(cls) + " is not fiber-type");
    if (adjunction_genus(desc, cls) != 0)
      fail(Errc::invalid_decomposition, "part " + format_class(cls) + " has genus " +
                                            std::to_string(adjunction_genus(desc, cls)));
    if (pair(cls, cls) >= 0)
      fail(Errc::invalid_decomposition,
           "part " + format_class(cls) + " has square " + std::to_string(pair(cls, cls)));
    sum = sum + mult * cls;
  }
  if (sum != dec.total)
    fail(Errc::invalid_decomposition, "parts sum to " + format_class(sum) + ", not " +
                                          format_class(dec.total));
}

DecompEnumeration enumerate_decompositions(const Manifold& desc, const HomClass& e,
                                           const AreaVec& u, int max_parts, int coeff_bound) {
  check_dims(desc, e);
  if (desc.n != u.n()) fail(Errc::dimension_mismatch, "area vector has wrong n");
  if (!is_exceptional_class(desc, e) || !is_fiber_type(e))
    fail(Errc::bad_input, format_class(e) + " is not an exceptional class of this surface");
  if (!u.normalized()) fail(Errc::not_normalized, "area vector needs f = 1");
  require_inside(desc, u);
  if (max_parts < 1 || coeff_bound < 1)
    fail(Errc::bad_input, "max_parts and coeff_bound must be >= 1");

  // Inside the cone 0 < c_i < 1, so a genus-0 fiber-type part with positive
  // area has m entries in {-1,0,1}: each nonzero entry costs at least
  // min(c_i, 1-c_i) of the unit area budget and |m_i| >= 2 already
  // overshoots it. Genus 0 then pins b = 1 - #{m_i = +1}.
  std::vector<HomClass> candidates;
  std::vector<long long> m(desc.n, 0);
  Rat one(1);
  auto emit = [&]() {
    long long p = 0;
    for (long long v : m)
      if (v == 1) ++p;
    long long b = 1 - p;
    bool nonzero = false;
    for (long long v : m)
      if (v != 0) nonzero = true;
    if (!nonzero) return;  // square 0
    if (b < -coeff_bound || b > coeff_bound) return;
    HomClass cls(0, b, m);
    if (area(u, cls).sign() > 0) candidates.push_back(cls);
  };
  // DFS over m with the area budget sum term_i < 1, term_i = m(m+1)/2 - m c_i
  auto dfs = [&](auto&& self, int i, Rat budget) -> void {
    if (budget.sign() <= 0) return;
    if (i == desc.n) {
      emit();
      return;
    }
    for (long long v : {0LL, -1LL, 1LL}) {
      if (std::abs(v) > coeff_bound) continue;
      m[i] = v;
      Rat cost = v == 0 ? Rat(0) : (v == 1 ? one - u.c[i] : u.c[i]);
      self(self, i + 1, budget - cost);
    }
    m[i] = 0;
  };
  dfs(dfs, 0, one);
  std::sort(candidates.begin(), candidates.end());

  // compose multisets of candidates summing to e
  DecompEnumeration out;
  std::vector<DecompPart> current;
  auto rest_ok = [&](const HomClass& r) { return r.is_zero(); };
  auto compose = [&](auto&& self, std::size_t from, HomClass rest, Rat rest_area,
                     long long budget) -> void {
    if (rest_ok(rest)) {
      out.decompositions.push_back({e, current});
      return;
    }
    if (budget == 0 || rest_area.sign() <= 0) return;
    for (std::size_t j = from; j < candidates.size(); ++j) {
      const HomClass& cand = candidates[j];
      Rat cand_area = area(u, cand);
      HomClass r = rest;
      Rat ra = rest_area;
      for (long long mult = 1; mult <= budget; ++mult) {
        r = r - cand;
        ra -= cand_area;
        if (ra.sign() < 0) break;
        if (!r.is_zero() && ra.sign() == 0) break;
        current.push_back({cand, mult});
        self(self, j + 1, r, ra, budget - mult);
        current.pop_back();
      }
    }
  };
  compose(compose, 0, e, area(u, e), max_parts);
  std::sort(out.decompositions.begin(), out.decompositions.end(), decomposition_order);

  // completeness: the coefficient window always covers m (|m_i| <= 1); it
  // covers b when coeff_bound >= the largest achievable #{m_i=+1} - 1, and
  // the part budget covers everything when max_parts * (min candidate
  // area) >= area(e)
  std::vector<Rat> slack;
  for (const Rat& ci : u.c) slack.push_back(one - ci);
  std::sort(slack.begin(), slack.end());
  Rat acc(0);
  long long p_max = 0;
  for (const Rat& s : slack) {
    acc += s;
    if (acc < one)
      ++p_max;
    else
      break;
  }
  bool coeff_ok = coeff_bound >= std::max<long long>(1, p_max - 1);
  Rat min_area = area(u, e);
  for (const HomClass& cand : candidates) min_area = std::min(min_area, area(u, cand));
  bool parts_ok = Rat(max_parts) * min_area >= area(u, e);
  out.complete = coeff_ok && parts_ok;
  return out;
}

ExcStatus classify_decomposition(const Manifold& desc, const Decomposition& dec) {
  validate_decomposition(desc, dec);
  ExcStatus st;
  if (is_trivial(dec)) {
    st.kind = ExcKind::embedded;
    return st;
  }
  if (dec.parts.size() == 2 && dec.parts[0].mult == 1 && dec.parts[1].mult == 1) {
    long long sq0 = pair(dec.parts[0].cls, dec.parts[0].cls);
    long long sq1 = pair(dec.parts[1].cls, dec.parts[1].cls);
    if ((sq0 == -2 && sq1 == -1) || (sq0 == -1 && sq1 == -2)) {
      const HomClass& s = sq0 == -2 ? dec.parts[0].cls : dec.parts[1].cls;
      const HomClass& x = sq0 == -2 ? dec.parts[1].cls : dec.parts[0].cls;
      if (pair(x, dec.total) == 0 && pair(s, x) == 1) {
        st.kind = ExcKind::mild;
        st.mild = MildData{s, x};
        return st;
      }
    }
  }
  st.kind = ExcKind::bad;
  st.dec = dec;
  int deep_simple = 0;
  for (const auto& [cls, mult] : dec.parts) {
    long long sq = pair(cls, cls);
    if (mult == 1 && sq <= -2) ++deep_simple;
    if (mult == 1 && sq < -2)
      st.bad_reasons.push_back("part " + format_class(cls) + " has square " +
                               std::to_string(sq) + " < -2");
    if (mult >= 2) {
      CoverPairing cp = cover_pairing(cls, mult);
      if (cp.value.sign() > 0)
        st.bad_reasons.push_back("multiplicity " + std::to_string(mult) + " cover of " +
                                 format_class(cls) + " forces K-pairing " + cp.value.str() +
                                 " > 0");
    }
  }
  if (deep_simple >= 2)
    st.bad_reasons.push_back(std::to_string(deep_simple) + " parts of square <= -2");
  if (st.bad_reasons.empty())
    st.bad_reasons.push_back("not a single embedded curve and not a mild pair");
  return st;
}

CoverPairing cover_pairing(const HomClass& cls, long long mult) {
  if (mult < 1) fail(Errc::bad_input, "multiplicity must be >= 1");
  long long sq = pair(cls, cls);
  CoverPairing cp;
  cp.value = Rat(-2 - mult * mult * sq, mult);
  cp.positive_integer = cp.value.sign() > 0 && cp.value.is_integer();
  return cp;
}

long long admissible_codim(const Manifold& desc, const std::vector<HomClass>& classes) {
  if (classes.empty()) return 0;
  long long total = 0;
  for (const HomClass& a : classes) {
    check_dims(desc, a);
    if (codim(desc, a) <= 0)
      fail(Errc::bad_input, "class " + format_class(a) + " has codim " +
                                std::to_string(codim(desc, a)) + " <= 0");
    total += codim(desc, a);
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (pair(classes[i], classes[j]) < 0)
        fail(Errc::not_admissible, "pair(" + format_class(classes[i]) + ", " +
                                       format_class(classes[j]) + ") = " +
                                       std::to_string(pair(classes[i], classes[j])) + " < 0");
  return total;
}

const char* stratum_kind_name(StratumKind k) {
  switch (k) {
    case StratumKind::top: return "top";
    case StratumKind::cod2_mild: return "cod2-mild";
    case StratumKind::cod2_section: return "cod2-section";
    case StratumKind::high: return "high";
  }
  return "top";
}

StratumLabel classify_profile(const Manifold& desc, const JProfile& profile,
                              const AreaVec& u) {
  if (desc.n != u.n()) fail(Errc::dimension_mismatch, "area vector has wrong n");
  require_inside(desc, u);

  // the key set must be exactly the exceptional set
  std::vector<HomClass> expected = exceptional_set(desc);
  std::vector<HomClass> keys;
  for (const auto& [cls, st] : profile.exc) keys.push_back(cls);
  {
    auto sorted_keys = keys;
    auto sorted_expected = expected;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    std::sort(sorted_expected.begin(), sorted_expected.end());
    if (sorted_keys != sorted_expected)
      fail(Errc::inconsistent_profile, "profile keys are not the exceptional set");
  }

  auto require_positive_area = [&](const HomClass& cls, const std::string& role) {
    Rat v = area(u, cls);
    if (v.sign() <= 0)
      fail(Errc::inconsistent_profile,
           role + " " + format_class(cls) + " has area " + v.str() + " <= 0");
  };

  std::vector<HomClass> mild_classes;
  long long bad_total = 0;
  int bad_count = 0;
  for (const auto& [cls, st] : profile.exc) {
    switch (st.kind) {
      case ExcKind::embedded:
        require_positive_area(cls, "embedded class");
        break;
      case ExcKind::mild: {
        if (!st.mild) fail(Errc::inconsistent_profile, "mild status without pair data");
        const HomClass& s = st.mild->s;
        const HomClass& x = st.mild->x;
        if (s + x != cls || pair(s, s) != -2 || adjunction_genus(desc, s) != 0 ||
            !is_exceptional_class(desc, x) || pair(s, x) != 1 || pair(x, cls) != 0)
          fail(Errc::inconsistent_profile,
               "invalid mild pair for " + format_class(cls));
        require_positive_area(s, "mild component");
        require_positive_area(x, "mild component");
        mild_classes.push_back(cls);
        break;
      }
      case ExcKind::bad: {
        if (!st.dec) fail(Errc::inconsistent_profile, "bad status without decomposition");
        if (st.dec->total != cls)
          fail(Errc::inconsistent_profile, "bad decomposition is for a different class");
        ExcStatus check = classify_decomposition(desc, *st.dec);
        if (check.kind != ExcKind::bad)
          fail(Errc::inconsistent_profile,
               "decomposition for " + format_class(cls) + " is not badly degenerated");
        for (const auto& [pc, pm] : st.dec->parts) require_positive_area(pc, "bad component");
        ++bad_count;
        // itemized lower bound: simple deep parts contribute their codim,
        // covers contribute the forced index, floored to an even integer
        for (const auto& [pc, pm] : st.dec->parts) {
          long long sq = pair(pc, pc);
          if (pm == 1 && sq <= -2) {
            bad_total += 2 * (-sq - 1);
          } else if (pm >= 2) {
            Rat forced = Rat(2) + Rat(2) * cover_pairing(pc, pm).value;
            long long even_floor = 2 * (forced / Rat(2)).floor_ll();
            bad_total += std::max<long long>(2, even_floor);
          }
        }
        break;
      }
    }
  }

  std::vector<HomClass> deep_sections;  // index <= -2
  bool has_deeper = false;              // index < -2
  for (const HomClass& s : profile.sections) {
    check_dims(desc, s);
    if (!is_section_type(s))
      fail(Errc::inconsistent_profile, format_class(s) + " is not of section type");
    require_positive_area(s, "section");
    long long idx = riemann_index(desc, s);
    if (idx <= -2) {
      deep_sections.push_back(s);
      if (idx < -2) has_deeper = true;
    }
  }

  StratumLabel label;
  if (bad_count == 0 && mild_classes.empty() && deep_sections.empty()) {
    label.kind = StratumKind::top;
    label.codim_lower_bound = 0;
    return label;
  }
  if (bad_count == 0 && mild_classes.size() == 1 && deep_sections.empty()) {
    label.kind = StratumKind::cod2_mild;
    label.witness = mild_classes[0];
    label.codim_lower_bound = 2;
    return label;
  }
  if (bad_count == 0 && mild_classes.empty() && deep_sections.size() == 1 && !has_deeper) {
    label.kind = StratumKind::cod2_section;
    label.witness = deep_sections[0];
    label.codim_lower_bound = 2;
    return label;
  }
  label.kind = StratumKind::high;
  long long total = 2 * static_cast<long long>(mild_classes.size()) + bad_total;
  for (const HomClass& s : deep_sections) total += codim(desc, s);
  label.codim_lower_bound = std::max<long long>(4, total);
  return label;
}

}  // namespace conecalc
