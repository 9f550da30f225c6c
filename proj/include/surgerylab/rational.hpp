#pragma once

#include "surgerylab/integer.hpp"

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace surgerylab {

/// Exact fraction, always stored in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(const Integer& n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(long long n) : num_(n), den_(1) {}       // NOLINT(implicit)
  Rational(int n) : num_(n), den_(1) {}             // NOLINT(implicit)
  Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Integer& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return surgerylab::sign(num_); }

  Integer floor() const { return floor_div(num_, den_); }
  Integer ceil() const { return ceil_div(num_, den_); }

  Rational reciprocal() const {
    if (num_ == 0) throw DomainError("reciprocal of zero");
    return Rational(den_, num_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw DomainError("division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Integer lhs = a.num_ * b.den_;
    Integer rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "a/b", or just "a" when the denominator is 1.
  std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

  /// Accepts "a/b" and plain integers.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer d = parse_integer(text.substr(slash + 1));
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash)), d);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ == 0) throw DomainError("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (den_ == 1) return;
    Integer g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Integer num_;
  Integer den_;
};

/// A point of the projective rational line: a Rational or the single Infinity.
///
/// 1/Infinity = 0, 1/0 = Infinity, and any sum with Infinity is Infinity.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational r) : value_(std::move(r)) {}  // NOLINT(implicit)
  ExtendedRational(const Integer& n) : value_(n) {}       // NOLINT(implicit)
  ExtendedRational(long long n) : value_(n) {}            // NOLINT(implicit)
  ExtendedRational(int n) : value_(n) {}                  // NOLINT(implicit)

  static ExtendedRational infinity() {
    ExtendedRational x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw DomainError("value() of Infinity");
    return value_;
  }

  ExtendedRational reciprocal() const {
    if (infinite_) return Rational(0);
    if (value_.sign() == 0) return infinity();
    return value_.reciprocal();
  }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return a.value_ + b.value_;
  }
  friend ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return a.value_ - b.value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }

  static ExtendedRational parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    return Rational::parse(text);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& r) {
    return os << r.str();
  }

 private:
  Rational value_;
  bool infinite_ = false;
};

}  // namespace surgerylab
