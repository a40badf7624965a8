#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/rational.hpp"

namespace conecalc {

// One way an exceptional class can break: total = sum mult * cls over the
// parts. Every part is fiber-type, genus 0 and of negative square.
struct DecompPart {
  HomClass cls;
  long long mult = 1;
};

struct Decomposition {
  HomClass total;
  std::vector<DecompPart> parts;
};

bool is_trivial(const Decomposition& dec);

// Throws invalid_decomposition when the invariants fail.
void validate_decomposition(const Manifold& desc, const Decomposition& dec);

struct DecompEnumeration {
  std::vector<Decomposition> decompositions;
  // true when the coefficient window and part budget provably cover every
  // decomposition with positive-area parts
  bool complete = false;
};

// All decompositions of the exceptional class e whose parts additionally
// have positive u-area, at most max_parts components (counted with
// multiplicity) and coefficients bounded by coeff_bound. Includes the
// trivial decomposition. Genus 0 forces b = 1 - sum m_i(m_i+1)/2 on
// fiber-type parts.
DecompEnumeration enumerate_decompositions(const Manifold& desc, const HomClass& e,
                                           const AreaVec& u, int max_parts,
                                           int coeff_bound);

enum class ExcKind { embedded, mild, bad };

struct MildData {
  HomClass s;  // the square -2 sphere class
  HomClass x;  // the exceptional component, x.total = 0
};

struct ExcStatus {
  ExcKind kind = ExcKind::embedded;
  std::optional<MildData> mild;
  std::optional<Decomposition> dec;       // kept for bad statuses
  std::vector<std::string> bad_reasons;   // human-readable witnesses
};

// Trivial -> embedded; two simple parts of squares {-2,-1} -> mild;
// everything else -> bad (two parts of square <= -2, a part of square
// < -2, or a multiple cover whose forced K-pairing is positive).
ExcStatus classify_decomposition(const Manifold& desc, const Decomposition& dec);

struct CoverPairing {
  Rat value;  // the K-pairing (-2 - mult^2 * cls.cls)/mult forced on a
              // genus-0 mult-fold cover of cls
  bool positive_integer = false;
};

// mult >= 2 in the taxonomy; mult = 1 accepted for consistency checks.
CoverPairing cover_pairing(const HomClass& cls, long long mult);

// Verifies pairwise pair(A_i, A_j) >= 0 and returns sum codim(A_i).
// Classes must have positive codim. Throws not_admissible naming the
// violating pair.
long long admissible_codim(const Manifold& desc, const std::vector<HomClass>& classes);

// Degeneration data for every exceptional class plus the section classes
// asserted embedded. Purely homological stand-in for an almost complex
// structure.
struct JProfile {
  std::vector<std::pair<HomClass, ExcStatus>> exc;  // keyed by exceptional_set
  std::vector<HomClass> sections;
};

enum class StratumKind { top, cod2_mild, cod2_section, high };
const char* stratum_kind_name(StratumKind k);

struct StratumLabel {
  StratumKind kind = StratumKind::top;
  std::optional<HomClass> witness;  // the mild class, or the index -2 section
  long long codim_lower_bound = 0;
};

// The partition-table classifier: open stratum, the two codimension-2
// families, or the high stratum with an itemized even lower bound >= 4.
StratumLabel classify_profile(const Manifold& desc, const JProfile& profile,
                              const AreaVec& u);

}  // namespace conecalc
