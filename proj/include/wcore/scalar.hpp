#pragma once

// Exact scalar backends carrying an involutive conjugation.
//
//   Rational          the field Q, conjugation = identity
//   GaussianRational  the field Q(i), conjugation = complex conjugation
//   PrimeField        F_p for p in {2, 3, 5}, conjugation = identity
//
// Every backend keeps a canonical representation, so `==` is exact equality.
// Each scalar type names a `domain_type` that knows how to build 0, 1 and
// integer constants; matrices carry the domain so identities can be formed
// for backends whose constants depend on runtime data (the modulus of F_p).

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "wcore/errors.hpp"

namespace wcore {

using BigInt = boost::multiprecision::cpp_int;

class Rational;
class GaussianRational;
class PrimeField;

struct RationalDomain {
  static constexpr bool finite = false;
  static constexpr std::string_view tag = "Q";
  Rational zero() const;
  Rational one() const;
  Rational from_int(long long k) const;
  friend bool operator==(const RationalDomain&, const RationalDomain&) = default;
};

struct GaussianDomain {
  static constexpr bool finite = false;
  static constexpr std::string_view tag = "Qi";
  GaussianRational zero() const;
  GaussianRational one() const;
  GaussianRational from_int(long long k) const;
  friend bool operator==(const GaussianDomain&, const GaussianDomain&) = default;
};

struct PrimeDomain {
  static constexpr bool finite = true;
  static constexpr std::string_view tag = "Fp";
  int modulus = 2;

  explicit PrimeDomain(int p);
  PrimeField zero() const;
  PrimeField one() const;
  PrimeField from_int(long long k) const;
  // Elements in the fixed order 0, 1, ..., p-1.
  PrimeField element(int index) const;
  int size() const { return modulus; }
  friend bool operator==(const PrimeDomain&, const PrimeDomain&) = default;
};

inline bool is_supported_prime(int p) { return p == 2 || p == 3 || p == 5; }

// ---------------------------------------------------------------------------

class Rational {
 public:
  using domain_type = RationalDomain;
  using value_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero();
    v_ = den < 0 ? value_type(-num, -den) : value_type(num, den);
  }
  explicit Rational(value_type v) : v_(std::move(v)) {}

  // Accepts "n" or "n/d" with optional leading sign on the numerator.
  static Rational parse(std::string_view text) {
    auto strip = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    auto parse_int = [&](std::string_view s, bool allow_sign) {
      s = strip(s);
      std::size_t i = 0;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) throw ArgumentError("malformed rational: '" + std::string(text) + "'");
      for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') {
          throw ArgumentError("malformed rational: '" + std::string(text) + "'");
        }
      }
      std::string digits(s.substr(s[0] == '+' ? 1 : 0));
      return BigInt(digits);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true), BigInt(1));
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    return Rational(num, den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }
  const value_type& raw() const { return v_; }

  std::string str() const {
    const BigInt d = denominator();
    if (d == 1) return numerator().str();
    return numerator().str() + "/" + d.str();
  }

  bool is_zero() const { return v_ == 0; }
  domain_type domain() const { return {}; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(value_type(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational conj(const Rational& x) { return x; }
  friend Rational inv(const Rational& x) {
    if (x.is_zero()) throw DivisionByZero();
    return Rational(value_type(1) / x.v_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

 private:
  value_type v_{0};
};

// ---------------------------------------------------------------------------

class GaussianRational {
 public:
  using domain_type = GaussianDomain;

  GaussianRational() = default;
  GaussianRational(long long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  domain_type domain() const { return {}; }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string out = re_.is_zero() ? "" : re_.str();
    if (im_ < Rational(0)) {
      out += "-" + (-im_).str();
    } else {
      out += (out.empty() ? "" : "+") + im_.str();
    }
    return out + "i";
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= inv(o); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend GaussianRational conj(const GaussianRational& z) { return {z.re_, -z.im_}; }
  friend GaussianRational inv(const GaussianRational& z) {
    if (z.is_zero()) throw DivisionByZero();
    const Rational norm = z.re_ * z.re_ + z.im_ * z.im_;
    return {z.re_ / norm, -z.im_ / norm};
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

// ---------------------------------------------------------------------------

class PrimeField {
 public:
  using domain_type = PrimeDomain;

  PrimeField(long long value, int modulus) : modulus_(static_cast<std::uint8_t>(modulus)) {
    if (!is_supported_prime(modulus)) {
      throw ArgumentError("unsupported prime modulus " + std::to_string(modulus) + " (expected 2, 3 or 5)");
    }
    long long r = value % modulus;
    if (r < 0) r += modulus;
    value_ = static_cast<std::uint8_t>(r);
  }

  int value() const { return value_; }
  int modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }
  domain_type domain() const { return PrimeDomain(modulus_); }
  std::string str() const { return std::to_string(value_); }

  PrimeField& operator+=(const PrimeField& o) {
    check(o);
    value_ = static_cast<std::uint8_t>((value_ + o.value_) % modulus_);
    return *this;
  }
  PrimeField& operator-=(const PrimeField& o) {
    check(o);
    value_ = static_cast<std::uint8_t>((value_ + modulus_ - o.value_) % modulus_);
    return *this;
  }
  PrimeField& operator*=(const PrimeField& o) {
    check(o);
    value_ = static_cast<std::uint8_t>((value_ * o.value_) % modulus_);
    return *this;
  }
  PrimeField& operator/=(const PrimeField& o) { return *this *= inv(o); }

  friend PrimeField operator+(PrimeField a, const PrimeField& b) { return a += b; }
  friend PrimeField operator-(PrimeField a, const PrimeField& b) { return a -= b; }
  friend PrimeField operator*(PrimeField a, const PrimeField& b) { return a *= b; }
  friend PrimeField operator/(PrimeField a, const PrimeField& b) { return a /= b; }
  friend PrimeField operator-(const PrimeField& a) { return PrimeField(-static_cast<int>(a.value_), a.modulus_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    a.check(b);
    return a.value_ == b.value_;
  }

  friend PrimeField conj(const PrimeField& x) { return x; }
  friend PrimeField inv(const PrimeField& x) {
    if (x.is_zero()) throw DivisionByZero();
    // Fermat: x^(p-2).
    int r = 1;
    for (int k = 0; k < x.modulus_ - 2; ++k) r = (r * x.value_) % x.modulus_;
    return PrimeField(r, x.modulus_);
  }
  friend std::ostream& operator<<(std::ostream& os, const PrimeField& x) { return os << x.str(); }

 private:
  void check(const PrimeField& o) const {
    if (modulus_ != o.modulus_) {
      throw BackendMismatch("prime-field moduli differ: " + std::to_string(modulus_) + " vs " +
                            std::to_string(o.modulus_));
    }
  }

  std::uint8_t value_ = 0;
  std::uint8_t modulus_ = 2;
};

// ---------------------------------------------------------------------------

inline Rational RationalDomain::zero() const { return Rational(0); }
inline Rational RationalDomain::one() const { return Rational(1); }
inline Rational RationalDomain::from_int(long long k) const { return Rational(k); }

inline GaussianRational GaussianDomain::zero() const { return GaussianRational(0); }
inline GaussianRational GaussianDomain::one() const { return GaussianRational(1); }
inline GaussianRational GaussianDomain::from_int(long long k) const { return GaussianRational(k); }

inline PrimeDomain::PrimeDomain(int p) : modulus(p) {
  if (!is_supported_prime(p)) {
    throw ArgumentError("unsupported prime modulus " + std::to_string(p) + " (expected 2, 3 or 5)");
  }
}
inline PrimeField PrimeDomain::zero() const { return PrimeField(0, modulus); }
inline PrimeField PrimeDomain::one() const { return PrimeField(1, modulus); }
inline PrimeField PrimeDomain::from_int(long long k) const { return PrimeField(k, modulus); }
inline PrimeField PrimeDomain::element(int index) const { return PrimeField(index, modulus); }

template <class S>
concept StarScalar = std::copy_constructible<S> && requires(const S x, const S y) {
  typename S::domain_type;
  { x + y } -> std::same_as<S>;
  { x - y } -> std::same_as<S>;
  { x * y } -> std::same_as<S>;
  { x / y } -> std::same_as<S>;
  { -x } -> std::same_as<S>;
  { conj(x) } -> std::same_as<S>;
  { inv(x) } -> std::same_as<S>;
  { x == y } -> std::convertible_to<bool>;
  { x.is_zero() } -> std::same_as<bool>;
  { x.domain() } -> std::same_as<typename S::domain_type>;
  { x.str() } -> std::same_as<std::string>;
};

template <StarScalar S>
inline constexpr bool is_finite_field_v = S::domain_type::finite;

static_assert(StarScalar<Rational>);
static_assert(StarScalar<GaussianRational>);
static_assert(StarScalar<PrimeField>);

}  // namespace wcore
