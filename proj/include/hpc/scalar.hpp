#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace hpc {

struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p);

  bool is_prime_field() const { return kind == Kind::Prime; }
  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

// Exact rational number. Thin value wrapper so that Eigen sees a plain scalar
// type without expression templates.
class Rational {
public:
  using Base = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : v_(n) {}
  Rational(long long num, long long den);
  explicit Rational(Base v) : v_(std::move(v)) {}

  const Base& value() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

  bool is_zero() const { return v_ == 0; }

private:
  Base v_;
};

// Residue modulo the prime installed by the innermost ModulusScope on this
// thread.
class Modp {
public:
  Modp() = default;
  Modp(long long n);

  std::uint32_t residue() const { return v_; }
  static std::uint32_t modulus();

  friend Modp operator+(Modp a, Modp b) { return raw(add(a.v_, b.v_)); }
  friend Modp operator-(Modp a, Modp b) { return raw(add(a.v_, modulus() - b.v_)); }
  friend Modp operator*(Modp a, Modp b) {
    return raw(static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % modulus()));
  }
  friend Modp operator/(Modp a, Modp b) { return a * b.inverse(); }
  Modp operator-() const { return raw(v_ == 0 ? 0 : modulus() - v_); }
  Modp& operator+=(Modp b) { return *this = *this + b; }
  Modp& operator-=(Modp b) { return *this = *this - b; }
  Modp& operator*=(Modp b) { return *this = *this * b; }
  Modp& operator/=(Modp b) { return *this = *this / b; }
  friend bool operator==(Modp a, Modp b) { return a.v_ == b.v_; }

  Modp inverse() const;
  bool is_zero() const { return v_ == 0; }

private:
  static Modp raw(std::uint32_t v) {
    Modp m;
    m.v_ = v;
    return m;
  }
  static std::uint32_t add(std::uint32_t a, std::uint32_t b) {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<std::uint32_t>(s >= modulus() ? s - modulus() : s);
  }

  std::uint32_t v_ = 0;
};

class ModulusScope {
public:
  explicit ModulusScope(std::uint32_t p);
  ~ModulusScope();
  ModulusScope(const ModulusScope&) = delete;
  ModulusScope& operator=(const ModulusScope&) = delete;

private:
  std::uint32_t saved_;
};

template <class Scalar>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static Rational parse(std::string_view text);
  static std::string format(const Rational& x);
};

template <>
struct scalar_traits<Modp> {
  static Modp parse(std::string_view text);
  static std::string format(const Modp& x);
};

template <class Scalar>
std::string format_scalar(const Scalar& x) {
  return scalar_traits<Scalar>::format(x);
}

template <class Scalar>
Scalar parse_scalar(std::string_view text) {
  return scalar_traits<Scalar>::parse(text);
}

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << format_scalar(x); }
inline std::ostream& operator<<(std::ostream& os, const Modp& x) { return os << format_scalar(x); }

}  // namespace hpc

namespace Eigen {

template <>
struct NumTraits<hpc::Rational> : GenericNumTraits<hpc::Rational> {
  using Real = hpc::Rational;
  using NonInteger = hpc::Rational;
  using Literal = hpc::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 40
  };
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

template <>
struct NumTraits<hpc::Modp> : GenericNumTraits<hpc::Modp> {
  using Real = hpc::Modp;
  using NonInteger = hpc::Modp;
  using Literal = hpc::Modp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

}  // namespace Eigen
