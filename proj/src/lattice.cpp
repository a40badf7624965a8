#include "conecalc/lattice.hpp"

#include <cctype>
#include <cstdlib>

namespace conecalc {

namespace {

void check_same_dim(const HomClass& x, const HomClass& y) {
  if (x.n() != y.n())
    fail(Errc::dimension_mismatch,
         "classes live in different lattices (n=" + std::to_string(x.n()) + " vs n=" +
             std::to_string(y.n()) + ")");
}

void check_desc(const Manifold& desc, const HomClass& a) {
  if (desc.n != a.n())
    fail(Errc::dimension_mismatch, "class has n=" + std::to_string(a.n()) +
                                       " but descriptor has n=" + std::to_string(desc.n));
}

void check_desc_valid(const Manifold& desc) {
  if (desc.g < 0 || desc.n < 0) fail(Errc::bad_input, "descriptor needs g >= 0 and n >= 0");
}

}  // namespace

HomClass HomClass::blowup(int i, int n) {
  if (i < 1 || i > n) fail(Errc::dimension_mismatch, "E index out of range");
  std::vector<long long> m(n, 0);
  m[i - 1] = 1;
  return HomClass(0, 0, std::move(m));
}

bool HomClass::is_zero() const {
  if (a_ != 0 || b_ != 0) return false;
  for (long long v : m_)
    if (v != 0) return false;
  return true;
}

bool operator<(const HomClass& x, const HomClass& y) {
  if (x.a_ != y.a_) return x.a_ < y.a_;
  if (x.b_ != y.b_) return x.b_ < y.b_;
  return x.m_ < y.m_;
}

HomClass operator+(const HomClass& x, const HomClass& y) {
  check_same_dim(x, y);
  std::vector<long long> m(x.m_);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += y.m_[i];
  return HomClass(x.a_ + y.a_, x.b_ + y.b_, std::move(m));
}

HomClass operator-(const HomClass& x, const HomClass& y) {
  check_same_dim(x, y);
  std::vector<long long> m(x.m_);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] -= y.m_[i];
  return HomClass(x.a_ - y.a_, x.b_ - y.b_, std::move(m));
}

HomClass operator*(long long s, const HomClass& x) {
  std::vector<long long> m(x.m_);
  for (auto& v : m) v *= s;
  return HomClass(s * x.a(), s * x.b(), std::move(m));
}

long long pair(const HomClass& x, const HomClass& y) {
  check_same_dim(x, y);
  long long p = x.a() * y.b() + x.b() * y.a();
  for (int i = 0; i < x.n(); ++i) p -= x.m()[i] * y.m()[i];
  return p;
}

HomClass canonical_class(const Manifold& desc) {
  check_desc_valid(desc);
  return HomClass(-2, 2LL * desc.g - 2, std::vector<long long>(desc.n, 1));
}

long long adjunction_genus(const Manifold& desc, const HomClass& a) {
  check_desc(desc, a);
  long long sq = pair(a, a);
  long long ka = pair(canonical_class(desc), a);
  // sq + ka is even for every integer class
  return 1 + (sq + ka) / 2;
}

long long riemann_index(const Manifold& desc, const HomClass& a) {
  check_desc(desc, a);
  return 2 * adjunction_genus(desc, a) - 2 - 2 * pair(canonical_class(desc), a);
}

long long codim(const Manifold& desc, const HomClass& a) {
  check_desc(desc, a);
  return 2 * (-pair(a, a) - 1 + adjunction_genus(desc, a));
}

bool is_exceptional_class(const Manifold& desc, const HomClass& a) {
  check_desc(desc, a);
  return pair(a, a) == -1 && pair(canonical_class(desc), a) == -1;
}

bool is_reduction_class(const HomClass& a) {
  if (a.a() != 0) return false;
  if (a.b() == 1) {
    // F - E1 - E2
    if (a.n() < 2 || a.m()[0] != -1 || a.m()[1] != -1) return false;
    for (int i = 2; i < a.n(); ++i)
      if (a.m()[i] != 0) return false;
    return true;
  }
  if (a.b() != 0) return false;
  // E_j - E_i with j < i
  int plus = -1, minus = -1;
  for (int i = 0; i < a.n(); ++i) {
    if (a.m()[i] == 1) {
      if (plus >= 0) return false;
      plus = i;
    } else if (a.m()[i] == -1) {
      if (minus >= 0) return false;
      minus = i;
    } else if (a.m()[i] != 0) {
      return false;
    }
  }
  return plus >= 0 && minus >= 0 && plus < minus;
}

bool is_section_type(const HomClass& a) {
  if (a.a() != 1) return false;
  for (long long v : a.m())
    if (v != 0 && v != -1) return false;
  return true;
}

bool is_fiber_type(const HomClass& a) { return a.a() == 0; }

namespace {

struct ClassParser {
  std::string_view text;
  std::size_t pos = 0;
  const Manifold& desc;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void err(const std::string& what) {
    fail(Errc::parse, what + " at position " + std::to_string(pos) + " in '" +
                          std::string(text) + "'");
  }

  bool parse_coeff(long long& out) {  // nonnegative integer; false if absent
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) return false;
    out = std::strtoll(std::string(text.substr(start, pos - start)).c_str(), nullptr, 10);
    return true;
  }

  HomClass run() {
    long long a = 0, b = 0;
    std::vector<long long> m(desc.n, 0);
    long long scalar = 0;
    bool any_scalar = false;

    skip_ws();
    if (pos == text.size()) err("empty class");
    long long sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    }
    for (;;) {
      long long coeff = 1;
      bool has_coeff = parse_coeff(coeff);
      skip_ws();
      char sym = pos < text.size() ? text[pos] : '\0';
      if (sym == 'B' || sym == 'F') {
        ++pos;
        (sym == 'B' ? a : b) += sign * coeff;
      } else if (sym == 'E') {
        ++pos;
        long long idx = 0;
        if (!parse_coeff(idx)) err("expected E index");
        if (idx < 1 || idx > desc.n)
          fail(Errc::dimension_mismatch,
               "E" + std::to_string(idx) + " exceeds n=" + std::to_string(desc.n));
        m[idx - 1] += sign * coeff;
      } else if (has_coeff) {
        scalar += sign * coeff;
        any_scalar = true;
      } else {
        err("expected term");
      }
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] == '+' || text[pos] == '-') {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
      } else {
        err("expected '+' or '-'");
      }
    }
    if (any_scalar && scalar != 0)
      err("scalar term " + std::to_string(scalar) + " is not a homology class");
    return HomClass(a, b, std::move(m));
  }
};

void append_term(std::string& out, long long coeff, const std::string& sym) {
  if (coeff == 0) return;
  if (out.empty()) {
    if (coeff < 0) out += '-';
  } else {
    out += coeff < 0 ? '-' : '+';
  }
  long long mag = coeff < 0 ? -coeff : coeff;
  if (mag != 1) out += std::to_string(mag);
  out += sym;
}

}  // namespace

HomClass parse_class(std::string_view text, const Manifold& desc) {
  check_desc_valid(desc);
  ClassParser p{text, 0, desc};
  return p.run();
}

std::string format_class(const HomClass& a) {
  std::string out;
  append_term(out, a.a(), "B");
  append_term(out, a.b(), "F");
  for (int i = 0; i < a.n(); ++i) append_term(out, a.m()[i], "E" + std::to_string(i + 1));
  if (out.empty()) out = "0";
  return out;
}

}  // namespace conecalc
