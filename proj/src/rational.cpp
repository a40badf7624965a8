#include "conecalc/rational.hpp"

#include <cctype>

namespace conecalc {

namespace {

bool valid_int_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Rat> Rat::try_parse(std::string_view text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) return std::nullopt;
  text = text.substr(begin, end - begin + 1);

  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!valid_int_token(num) || !valid_int_token(den)) return std::nullopt;
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  mpq_class q(n, d);
  q.canonicalize();
  return Rat(q);
}

Rat Rat::parse(std::string_view text) {
  auto r = try_parse(text);
  if (!r) fail(Errc::parse, "invalid rational '" + std::string(text) + "'");
  return *r;
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rat(mpq_class(q));
}

Rat Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rat(mpq_class(q));
}

long long Rat::floor_ll() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) fail(Errc::bad_input, "rational out of machine range");
  return q.get_si();
}

long long Rat::ceil_ll() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) fail(Errc::bad_input, "rational out of machine range");
  return q.get_si();
}

Rat pow2(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return Rat(mpq_class(p));
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse: return "ParseError";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::bad_input: return "BadInput";
    case Errc::bad_slice: return "BadSlice";
    case Errc::degenerate_segment: return "DegenerateSegment";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::not_in_cone: return "NotInCone";
    case Errc::not_reduced: return "NotReduced";
    case Errc::unsupported_genus: return "UnsupportedGenus";
    case Errc::parameter_out_of_range: return "ParameterOutOfRange";
    case Errc::nonpositive_area: return "NonpositiveArea";
    case Errc::infeasible_correction: return "InfeasibleCorrection";
    case Errc::not_mild_pair: return "NotMildPair";
    case Errc::invalid_decomposition: return "InvalidDecomposition";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::inconsistent_profile: return "InconsistentProfile";
    case Errc::bound_too_large: return "BoundTooLarge";
    case Errc::unreachable: return "Unreachable";
    case Errc::internal: return "InternalError";
  }
  return "InternalError";
}

int errc_status(Errc c) {
  switch (c) {
    case Errc::parse:
    case Errc::dimension_mismatch:
    case Errc::bad_input:
    case Errc::bad_slice:
      return 2;
    case Errc::bound_too_large:
    case Errc::unreachable:
      return 4;
    case Errc::internal:
      return 1;
    default:
      return 3;
  }
}

}  // namespace conecalc
