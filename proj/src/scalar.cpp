#include "hpc/scalar.hpp"

#include <stdexcept>

#include "hpc/error.hpp"

namespace hpc {

namespace {

thread_local std::uint32_t current_modulus = 0;

// Splits "a/b" into numerator and denominator strings. Denominator "1" when absent.
std::pair<std::string_view, std::string_view> split_fraction(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return {text, "1"};
  return {text.substr(0, slash), text.substr(slash + 1)};
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

boost::multiprecision::cpp_int parse_integer(std::string_view s, std::string_view whole) {
  if (!valid_integer(s))
    throw Error(ErrorKind::ParseError, "not an exact scalar: \"" + std::string(whole) + "\"");
  if (s.front() == '+') s.remove_prefix(1);
  return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p) || p > (1u << 31))
    throw Error(ErrorKind::ParseError, "field characteristic " + std::to_string(p) + " is not a supported prime");
  return {Kind::Prime, p};
}

std::string FieldSpec::name() const {
  return kind == Kind::Rationals ? "Q" : "F_" + std::to_string(p);
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = Base(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.v_ == 0) throw std::domain_error("division by zero");
  return Rational(a.v_ / b.v_);
}

std::uint32_t Modp::modulus() {
  if (current_modulus == 0) throw std::logic_error("Modp used outside a ModulusScope");
  return current_modulus;
}

Modp::Modp(long long n) {
  long long p = modulus();
  long long r = n % p;
  if (r < 0) r += p;
  v_ = static_cast<std::uint32_t>(r);
}

Modp Modp::inverse() const {
  if (v_ == 0) throw std::domain_error("division by zero");
  std::int64_t a = v_, m = modulus(), x0 = 1, x1 = 0;
  while (m != 0) {
    std::int64_t q = a / m;
    std::swap(a, m);
    m -= q * a;
    std::swap(x0, x1);
    x1 -= q * x0;
  }
  return Modp(x0);
}

ModulusScope::ModulusScope(std::uint32_t p) : saved_(current_modulus) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  current_modulus = p;
}

ModulusScope::~ModulusScope() { current_modulus = saved_; }

Rational scalar_traits<Rational>::parse(std::string_view text) {
  auto [num, den] = split_fraction(text);
  auto n = parse_integer(num, text);
  auto d = parse_integer(den, text);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  return Rational(Rational::Base(n, d));
}

std::string scalar_traits<Rational>::format(const Rational& x) {
  return x.value().str();
}

Modp scalar_traits<Modp>::parse(std::string_view text) {
  auto [num, den] = split_fraction(text);
  const auto p = Modp::modulus();
  auto reduce = [&](const boost::multiprecision::cpp_int& v) {
    boost::multiprecision::cpp_int r = v % p;
    if (r < 0) r += p;
    return Modp(r.convert_to<long long>());
  };
  Modp n = reduce(parse_integer(num, text));
  Modp d = reduce(parse_integer(den, text));
  if (d.is_zero())
    throw Error(ErrorKind::ParseError,
                "denominator of \"" + std::string(text) + "\" vanishes mod " + std::to_string(p));
  return n / d;
}

std::string scalar_traits<Modp>::format(const Modp& x) {
  return std::to_string(x.residue());
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::GradingMismatch: return "GradingMismatch";
    case ErrorKind::CodomainViolation: return "CodomainViolation";
    case ErrorKind::NotARightIdeal: return "NotARightIdeal";
    case ErrorKind::NotInKernelOfCounit: return "NotInKernelOfCounit";
    case ErrorKind::NotCovariant: return "NotCovariant";
    case ErrorKind::NotBicovariant: return "NotBicovariant";
    case ErrorKind::InternalMismatch: return "InternalMismatch";
    case ErrorKind::MissingCoaction: return "MissingCoaction";
    case ErrorKind::MissingPsi: return "MissingPsi";
    case ErrorKind::StructureInconsistent: return "StructureInconsistent";
    case ErrorKind::IncompatibleData: return "IncompatibleData";
    case ErrorKind::DimensionVariesAcrossGrading: return "DimensionVariesAcrossGrading";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownIdeal: return "UnknownIdeal";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Error";
}

}  // namespace hpc
