#pragma once

#include "surgerylab/integer.hpp"
#include "surgerylab/matrix.hpp"
#include "surgerylab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace surgerylab {

/// Counts of positive, zero and negative eigenvalues.
struct SignatureTriple {
  std::size_t n_plus = 0;
  std::size_t n_zero = 0;
  std::size_t n_minus = 0;

  std::size_t dim() const { return n_plus + n_zero + n_minus; }
  long long value() const {
    return static_cast<long long>(n_plus) - static_cast<long long>(n_minus);
  }
  bool positive_definite() const { return n_zero == 0 && n_minus == 0; }
  bool negative_definite() const { return n_zero == 0 && n_plus == 0; }

  std::string str() const {
    return "(" + std::to_string(n_plus) + "," + std::to_string(n_zero) + "," +
           std::to_string(n_minus) + ")";
  }
  friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
};

namespace detail {

struct Diagonalisation {
  SignatureTriple inertia;
  Rational det;
};

/// Exact congruence diagonalisation over the rationals. A nonzero diagonal
/// entry of least degree is used as the pivot; when the whole remaining
/// diagonal vanishes, a pair (i, j) with a_ij != 0 is split off as a
/// hyperbolic plane contributing (1, 0, 1) and -a_ij^2 to the determinant.
/// Adjacency is tracked so tree-like matrices cost O(n^2).
inline Diagonalisation diagonalise(const SymmetricMatrix& g) {
  const std::size_t n = g.dim();
  Matrix<Rational> a(n, n);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j) == 0) continue;
      a(i, j) = Rational(g(i, j));
      if (i != j) adj[i].push_back(j);
    }
  std::vector<bool> alive(n, true);
  std::size_t remaining = n;
  Diagonalisation out{{}, Rational(1)};
  SignatureTriple& s = out.inertia;

  auto live_neighbours = [&](std::size_t i) {
    std::vector<std::size_t> nb;
    for (std::size_t j : adj[i])
      if (alive[j] && a(i, j).sign() != 0) nb.push_back(j);
    adj[i] = nb;
    return nb;
  };
  auto link = [&](std::size_t x, std::size_t y) {
    if (std::find(adj[x].begin(), adj[x].end(), y) == adj[x].end()) adj[x].push_back(y);
    if (std::find(adj[y].begin(), adj[y].end(), x) == adj[y].end()) adj[y].push_back(x);
  };
  auto set = [&](std::size_t x, std::size_t y, const Rational& v) {
    a(x, y) = v;
    a(y, x) = v;
    if (x != y && v.sign() != 0) link(x, y);
  };

  while (remaining > 0) {
    std::size_t pivot = n;
    std::size_t best_degree = n + 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || a(i, i).sign() == 0) continue;
      const std::size_t d = live_neighbours(i).size();
      if (d < best_degree) {
        best_degree = d;
        pivot = i;
      }
    }
    if (pivot != n) {
      const Rational d = a(pivot, pivot);
      (d.sign() > 0 ? s.n_plus : s.n_minus) += 1;
      out.det = out.det * d;
      const auto nb = live_neighbours(pivot);
      for (std::size_t x : nb)
        for (std::size_t y : nb) {
          if (y < x) continue;
          set(x, y, a(x, y) - a(x, pivot) * a(pivot, y) / d);
        }
      alive[pivot] = false;
      --remaining;
      continue;
    }

    // Zero diagonal: look for a hyperbolic pair.
    std::size_t pi = n, pj = n;
    for (std::size_t x = 0; x < n && pi == n; ++x) {
      if (!alive[x]) continue;
      const auto nb = live_neighbours(x);
      if (!nb.empty()) {
        pi = x;
        pj = nb.front();
      }
    }
    if (pi == n) {
      s.n_zero += remaining;
      out.det = Rational(0);
      break;
    }
    const Rational b = a(pi, pj);
    out.det = out.det * -(b * b);
    std::vector<std::size_t> touched;
    for (std::size_t x : live_neighbours(pi))
      if (x != pj) touched.push_back(x);
    for (std::size_t x : live_neighbours(pj))
      if (x != pi && std::find(touched.begin(), touched.end(), x) == touched.end())
        touched.push_back(x);
    for (std::size_t x : touched)
      for (std::size_t y : touched) {
        if (y < x) continue;
        set(x, y, a(x, y) - (a(x, pj) * a(y, pi) + a(x, pi) * a(y, pj)) / b);
      }
    s.n_plus += 1;
    s.n_minus += 1;
    alive[pi] = false;
    alive[pj] = false;
    remaining -= 2;
  }
  return out;
}

}  // namespace detail

/// Counts of positive, zero and negative eigenvalues, by exact congruence
/// diagonalisation.
inline SignatureTriple signature(const SymmetricMatrix& g) { return detail::diagonalise(g).inertia; }

/// Signature of the chain matrix with diagonal a and unit off-diagonal, read
/// off from the signs of the entries. Valid when a1 >= 1, |ai| >= 2 for
/// 1 < i < n, and |an| >= 2 or an = -1.
inline long long tridiagonal_signature(std::span<const Integer> a) {
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("tridiagonal_signature: empty sequence");
  if (a[0] < 1) throw DomainError("tridiagonal_signature: need a1 >= 1");
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (abs(a[i]) < 2) throw DomainError("tridiagonal_signature: need |ai| >= 2 in the middle");
  if (!(abs(a[n - 1]) >= 2 || a[n - 1] == -1))
    throw DomainError("tridiagonal_signature: need |an| >= 2 or an = -1");
  long long sig = 0;
  for (const auto& x : a) sig += x > 0 ? 1 : -1;
  return sig;
}

/// Precondition test for tridiagonal_signature without throwing.
inline bool tridiagonal_signature_applies(std::span<const Integer> a) {
  const std::size_t n = a.size();
  if (n == 0 || a[0] < 1) return false;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (abs(a[i]) < 2) return false;
  return abs(a[n - 1]) >= 2 || a[n - 1] == -1;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int flips = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      ++flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Integer d = a(n - 1, n - 1);
  return flips % 2 ? Integer(-d) : d;
}

/// Determinant of a symmetric matrix as the product of the congruence pivots.
inline Integer determinant(const SymmetricMatrix& g) {
  if (g.dim() == 0) return 1;
  const Rational d = detail::diagonalise(g).det;
  if (!d.is_integer()) throw std::logic_error("determinant: non-integral pivot product");
  return d.numerator();
}

/// Invariant factors d1 | d2 | ... of an integer matrix; zeros come last.
struct SmithForm {
  std::vector<Integer> invariant_factors;

  std::size_t rank() const {
    return static_cast<std::size_t>(std::count_if(invariant_factors.begin(),
                                                  invariant_factors.end(),
                                                  [](const Integer& d) { return d != 0; }));
  }
  /// Product of the nonzero factors.
  Integer torsion_order() const {
    Integer p = 1;
    for (const auto& d : invariant_factors)
      if (d != 0) p *= d;
    return p;
  }
  bool all_units() const {
    return std::all_of(invariant_factors.begin(), invariant_factors.end(),
                       [](const Integer& d) { return d == 0 || d == 1; });
  }
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (i) s += ",";
      s += invariant_factors[i].str();
    }
    return s + ")";
  }
  friend bool operator==(const SmithForm&, const SmithForm&) = default;
};

inline SmithForm smith_invariants(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t r = std::min(m, n);
  SmithForm out;
  auto swap_rows = [&](std::size_t i, std::size_t k) {
    if (i != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(i, j), a(k, j));
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j != k)
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, j), a(i, k));
  };

  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = m, bj = n;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (bi == m || abs(a(i, j)) < best)) {
            best = abs(a(i, j));
            bi = i;
            bj = j;
          }
      if (bi == m) {
        out.invariant_factors.resize(r, 0);
        return out;
      }
      swap_rows(t, bi);
      swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        for (std::size_t j = t; j < n; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        for (std::size_t i = t; i < m; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = t; j < n; ++j) a(t, j) += a(bad, j);
    }
    out.invariant_factors.push_back(abs(a(t, t)));
  }
  return out;
}

/// L'/L for the lattice with Gram matrix g, as its nontrivial invariant
/// factors (an empty list is the trivial group).
inline SmithForm discriminant_group(const SymmetricMatrix& g) {
  if (determinant(g) == 0) throw DomainError("discriminant_group: singular form");
  SmithForm snf = smith_invariants(g.matrix());
  SmithForm out;
  for (auto& d : snf.invariant_factors)
    if (d != 1) out.invariant_factors.push_back(d);
  return out;
}

}  // namespace surgerylab
