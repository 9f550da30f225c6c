#pragma once

#include "surgerylab/integer.hpp"
#include "surgerylab/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace surgerylab {

/// An integer or Infinity; the coefficient type of a continued fraction.
class ExtendedInteger {
 public:
  ExtendedInteger() : value_(Integer(0)) {}
  ExtendedInteger(Integer v) : value_(std::move(v)) {}  // NOLINT(implicit)
  ExtendedInteger(long long v) : value_(Integer(v)) {}  // NOLINT(implicit)
  ExtendedInteger(int v) : value_(Integer(v)) {}        // NOLINT(implicit)

  static ExtendedInteger infinity() {
    ExtendedInteger x;
    x.value_.reset();
    return x;
  }

  bool is_infinite() const { return !value_.has_value(); }
  const Integer& value() const {
    if (!value_) throw DomainError("value() of Infinity");
    return *value_;
  }
  ExtendedRational extended() const {
    return value_ ? ExtendedRational(*value_) : ExtendedRational::infinity();
  }
  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const ExtendedInteger&, const ExtendedInteger&) = default;

 private:
  std::optional<Integer> value_;
};

enum class Convention { Plus, Minus };

inline const char* to_string(Convention c) { return c == Convention::Plus ? "plus" : "minus"; }

/// [c1, ..., cn]^+ = c1 + 1/(c2 + ...)  or  [c1, ..., cn]^- = c1 - 1/(c2 - ...).
struct ContinuedFraction {
  Convention convention = Convention::Minus;
  std::vector<ExtendedInteger> coefficients;

  ContinuedFraction() = default;
  ContinuedFraction(Convention c, std::vector<ExtendedInteger> coeffs)
      : convention(c), coefficients(std::move(coeffs)) {
    if (coefficients.empty()) throw DomainError("continued fraction needs a coefficient");
  }
  static ContinuedFraction of(Convention c, std::span<const Integer> coeffs) {
    return ContinuedFraction(c, std::vector<ExtendedInteger>(coeffs.begin(), coeffs.end()));
  }

  std::size_t size() const { return coefficients.size(); }

  /// The coefficients as plain integers; throws if any is Infinity.
  std::vector<Integer> integers() const {
    std::vector<Integer> out;
    out.reserve(coefficients.size());
    for (const auto& c : coefficients) out.push_back(c.value());
    return out;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (i) s += ",";
      s += coefficients[i].str();
    }
    return s + (convention == Convention::Plus ? "]+" : "]-");
  }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Right-to-left fold x -> c + 1/x (Plus) or x -> c - 1/x (Minus) over the
/// projective line. Terms may be arbitrary extended rationals.
inline ExtendedRational fold_continued_fraction(Convention convention,
                                                std::span<const ExtendedRational> terms) {
  if (terms.empty()) throw DomainError("continued fraction needs a coefficient");
  ExtendedRational x = terms.back();
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) {
    ExtendedRational inv = x.reciprocal();
    x = convention == Convention::Plus ? *it + inv : *it - inv;
  }
  return x;
}

inline ExtendedRational eval_cf(const ContinuedFraction& cf) {
  std::vector<ExtendedRational> terms;
  terms.reserve(cf.size());
  for (const auto& c : cf.coefficients) terms.push_back(c.extended());
  return fold_continued_fraction(cf.convention, terms);
}

/// Canonical Plus: c1 >= 0, ci > 0 in the middle, cn > 1 (a lone integer is
/// canonical). Canonical Minus: positive coefficients with ai > 1 for i > 1.
inline bool is_canonical(const ContinuedFraction& cf) {
  if (cf.coefficients.empty()) return false;
  for (const auto& c : cf.coefficients) {
    if (c.is_infinite()) return false;
  }
  const std::size_t n = cf.size();
  if (cf.convention == Convention::Plus) {
    if (cf.coefficients[0].value() < 0) return false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (cf.coefficients[i].value() <= 0) return false;
    }
    return n == 1 || cf.coefficients[n - 1].value() > 1;
  }
  if (cf.coefficients[0].value() <= 0) return false;
  for (std::size_t i = 1; i < n; ++i) {
    if (cf.coefficients[i].value() <= 1) return false;
  }
  return true;
}

/// Euclidean-algorithm expansion of a positive rational.
inline ContinuedFraction cf_plus(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("cf_plus needs a positive rational, got " + x.str());
  std::vector<ExtendedInteger> coeffs;
  Integer a = x.numerator();
  Integer b = x.denominator();
  while (b != 0) {
    Integer c = a / b;
    Integer r = a - c * b;
    coeffs.emplace_back(std::move(c));
    a = std::move(b);
    b = std::move(r);
  }
  return ContinuedFraction(Convention::Plus, std::move(coeffs));
}

/// Hirzebruch-Jung expansion by the greedy ceiling rule a = ceil(x),
/// x <- 1/(a - x). Defined for every positive rational.
inline ContinuedFraction cf_minus(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("cf_minus needs a positive rational, got " + x.str());
  std::vector<ExtendedInteger> coeffs;
  // Work on num/den directly: a = ceil(n/d), next = d / (a d - n).
  Integer n = x.numerator();
  Integer d = x.denominator();
  for (;;) {
    Integer a = ceil_div(n, d);
    Integer rest = a * d - n;
    coeffs.emplace_back(a);
    if (rest == 0) break;
    n = std::move(d);
    d = std::move(rest);
  }
  return ContinuedFraction(Convention::Minus, std::move(coeffs));
}

inline ContinuedFraction reversed(const ContinuedFraction& cf) {
  ContinuedFraction out = cf;
  std::reverse(out.coefficients.begin(), out.coefficients.end());
  return out;
}

/// The b in [1, p] with a*b = 1 (mod p); b = p only for p = 1.
inline Integer mod_inverse(const Integer& a, const Integer& p) {
  if (p < 1) throw DomainError("mod_inverse: modulus must be positive");
  Integer r0 = ((a % p) + p) % p;
  Integer r1 = p;
  Integer s0 = 1, s1 = 0;
  // Extended Euclid on (a mod p, p).
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1 && p != 1) {
    throw DomainError("mod_inverse: " + a.str() + " is not invertible modulo " + p.str());
  }
  if (p == 1) return 1;
  Integer b = ((s0 % p) + p) % p;
  return b == 0 ? p : b;
}

namespace detail {

inline void require_coprime_pair(const Integer& p, const Integer& q, const Integer& q_min,
                                 const char* what) {
  if (!(p > q && q >= q_min)) {
    throw DomainError(std::string(what) + ": need p > q >= " + q_min.str() + ", got (" +
                      p.str() + "," + q.str() + ")");
  }
  if (gcd(p, q) != 1) {
    throw DomainError(std::string(what) + ": p and q must be coprime, got (" + p.str() + "," +
                      q.str() + ")");
  }
}

inline void append_twos(std::vector<ExtendedInteger>& out, const Integer& count) {
  for (Integer i = 0; i < count; ++i) out.emplace_back(2);
}

}  // namespace detail

struct TailSplit {
  Integer head;
  ContinuedFraction tail;
};

/// p = c1 q + r gives q/r = [c2, ..., cn]^+. Throws if the identity fails.
inline TailSplit cf_tail_check(const Integer& p, const Integer& q) {
  detail::require_coprime_pair(p, q, 2, "cf_tail_check");
  Integer c1 = p / q;
  Integer r = p - c1 * q;
  ContinuedFraction tail = cf_plus(Rational(q, r));
  ContinuedFraction whole = cf_plus(Rational(p, q));
  ContinuedFraction expected(Convention::Plus, std::vector<ExtendedInteger>(
                                                   whole.coefficients.begin() + 1,
                                                   whole.coefficients.end()));
  if (whole.coefficients.front().value() != c1 || tail != expected) {
    throw std::logic_error("cf_tail_check: tail identity failed for " + p.str() + "/" + q.str());
  }
  return {std::move(c1), std::move(tail)};
}

/// [c1,...,cn]^+ = [c1+1, 2 x (c2-1), c3+2, 2 x (c4-1), c5+2, ...]^-, ending
/// with cn+1 when n is odd and with cn-1 twos when n is even.
inline ContinuedFraction plus_to_minus(const ContinuedFraction& cf) {
  if (cf.convention != Convention::Plus || !is_canonical(cf)) {
    throw DomainError("plus_to_minus needs a canonical plus expansion, got " + cf.str());
  }
  const std::size_t n = cf.size();
  if (n < 2) {
    throw DomainError("plus_to_minus is undefined for a single-term expansion; use cf_minus");
  }
  const std::vector<Integer> c = cf.integers();
  std::vector<ExtendedInteger> out;
  out.emplace_back(c[0] + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const bool even_position = (i + 1) % 2 == 0;  // 1-based index i+1
    if (even_position) {
      detail::append_twos(out, c[i] - 1);
    } else if (i + 1 == n) {
      out.emplace_back(c[i] + 1);
    } else {
      out.emplace_back(c[i] + 2);
    }
  }
  return ContinuedFraction(Convention::Minus, std::move(out));
}

/// Minus expansion of p/(p-q) from p/q = [c1,...,cn]^+:
/// [2 x (c1-1), c2+2, 2 x (c3-1), c4+2, ...]^-, ending with cn+1 when n is
/// even and with cn-1 twos when n is odd. Cross-checked against cf_minus.
inline ContinuedFraction cf_complement(const Integer& p, const Integer& q) {
  detail::require_coprime_pair(p, q, 1, "cf_complement");
  const std::vector<Integer> c = cf_plus(Rational(p, q)).integers();
  const std::size_t n = c.size();
  std::vector<ExtendedInteger> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd_position = (i + 1) % 2 == 1;
    if (odd_position) {
      detail::append_twos(out, c[i] - 1);
    } else if (i + 1 == n) {
      out.emplace_back(c[i] + 1);
    } else {
      out.emplace_back(c[i] + 2);
    }
  }
  ContinuedFraction result(Convention::Minus, std::move(out));
  if (result != cf_minus(Rational(p, p - q))) {
    throw std::logic_error("cf_complement: pattern disagrees with cf_minus for " + p.str() +
                           "/" + q.str());
  }
  return result;
}

struct ReversedExpansion {
  Integer qstar;
  ContinuedFraction reversed;
};

/// Reversing the minus expansion of p/q yields p/q*, with q q* = 1 (mod p).
inline ReversedExpansion reverse_dual(const Integer& p, const Integer& q) {
  detail::require_coprime_pair(p, q, 1, "reverse_dual");
  Integer qstar = mod_inverse(q, p);
  ContinuedFraction rev = reversed(cf_minus(Rational(p, q)));
  if (eval_cf(rev) != ExtendedRational(Rational(p, qstar))) {
    throw std::logic_error("reverse_dual: reversal identity failed for " + p.str() + "/" +
                           q.str());
  }
  return {std::move(qstar), std::move(rev)};
}

}  // namespace surgerylab
