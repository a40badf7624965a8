#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "conecalc/errors.hpp"

namespace conecalc {

// The blown-up ruled surface: base genus g, n blow-up points.
// g >= 0 and n >= 0 for raw lattice arithmetic; the classification
// operations (exceptional set, degeneration taxonomy) require g >= 1.
struct Manifold {
  int g = 1;
  int n = 0;
};

// Integer second-homology class a*B + b*F + sum_i m_i*E_i.
// The intersection form is B.B = F.F = 0, B.F = 1, E_i.E_j = -delta_ij,
// B.E_i = F.E_i = 0.
class HomClass {
 public:
  HomClass(long long a, long long b, std::vector<long long> m)
      : a_(a), b_(b), m_(std::move(m)) {}

  static HomClass zero(int n) { return HomClass(0, 0, std::vector<long long>(n, 0)); }
  static HomClass base(int n) { return HomClass(1, 0, std::vector<long long>(n, 0)); }
  static HomClass fiber(int n) { return HomClass(0, 1, std::vector<long long>(n, 0)); }
  static HomClass blowup(int i, int n);  // E_i, 1-based

  long long a() const { return a_; }
  long long b() const { return b_; }
  const std::vector<long long>& m() const { return m_; }
  int n() const { return static_cast<int>(m_.size()); }

  bool is_zero() const;

  friend bool operator==(const HomClass& x, const HomClass& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;
  }
  friend bool operator!=(const HomClass& x, const HomClass& y) { return !(x == y); }
  // deterministic total order: (a, b, m) lexicographic
  friend bool operator<(const HomClass& x, const HomClass& y);

  friend HomClass operator+(const HomClass& x, const HomClass& y);
  friend HomClass operator-(const HomClass& x, const HomClass& y);
  friend HomClass operator*(long long s, const HomClass& x);

 private:
  long long a_, b_;
  std::vector<long long> m_;
};

long long pair(const HomClass& x, const HomClass& y);

// K = -2B + (2g-2)F + sum E_i, pinned by adjunction on the basis classes.
HomClass canonical_class(const Manifold& desc);

// g(A) = 1 + (A.A + K.A)/2; defined for every integer class.
// The numerator is always even (sum m_i(1-m_i) is even).
long long adjunction_genus(const Manifold& desc, const HomClass& a);

// index(A) = 2 g(A) - 2 - 2 K.A = A.A - K.A
long long riemann_index(const Manifold& desc, const HomClass& a);

// cod(A) = 2(-A.A - 1 + g(A)) = K.A - A.A = -index(A)
long long codim(const Manifold& desc, const HomClass& a);

// square -1, genus 0
bool is_exceptional_class(const Manifold& desc, const HomClass& a);

// F-E1-E2 or E_j-E_i with j < i (generators normalized to pair >= 0
// against reduced vectors)
bool is_reduction_class(const HomClass& a);

// B + kF - sum_{i in I} E_i: a == 1, m entries in {0,-1}
bool is_section_type(const HomClass& a);
bool is_fiber_type(const HomClass& a);  // a == 0

// Grammar: class := ['+'|'-'] term (('+'|'-') term)*
//          term  := [coeff]('B'|'F'|'E'index) | coeff
// coeff is a nonnegative integer (omitted = 1), index in 1..n, whitespace
// insignificant. A bare coeff term is only valid as the zero class "0".
HomClass parse_class(std::string_view text, const Manifold& desc);

// Canonical form: terms in B, F, E1..En order, zero terms dropped,
// unit coefficients implicit; the zero class prints "0".
std::string format_class(const HomClass& a);

}  // namespace conecalc
