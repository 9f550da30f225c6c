#pragma once

#include "surgerylab/continued_fraction.hpp"
#include "surgerylab/forms.hpp"
#include "surgerylab/integer.hpp"
#include "surgerylab/kirby.hpp"
#include "surgerylab/matrix.hpp"
#include "surgerylab/rational.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace surgerylab {

/// r-surgery on the torus knot T(p, q); q < 0 encodes T(p, -|q|).
struct TorusSurgery {
  Integer p;
  Integer q;
  Rational r;
};

/// Reported when a Seifert coefficient is 0, i.e. H1 of the result is infinite.
class InfiniteHomologyError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline void validate_torus_knot(const Integer& p, const Integer& q) {
  if (q == 0 || !(p > abs(q))) {
    throw DomainError("torus knot needs p > |q| >= 1, got (" + p.str() + "," + q.str() + ")");
  }
  if (gcd(p, q) != 1) {
    throw DomainError("torus knot needs coprime p and q, got (" + p.str() + "," + q.str() + ")");
  }
}

/// Number of steps of the Euclidean algorithm for p and q.
inline std::size_t euclid_length(const Integer& p, const Integer& q) {
  return cf_plus(Rational(p, q)).size();
}

/// The minimal slope bounding a negative-definite manifold, in closed form:
/// pq - q/p* for an even number of Euclidean steps, pq - p/q* for odd, and 0
/// for negative torus knots.
inline Rational mu(const Integer& p, const Integer& q) {
  validate_torus_knot(p, q);
  if (q < 0) return Rational(0);
  const std::size_t n = euclid_length(p, q);
  if (n % 2 == 0) {
    Integer pstar = mod_inverse(p, q);
    return Rational(p * q) - Rational(q, pstar);
  }
  Integer qstar = mod_inverse(q, p);
  return Rational(p * q) - Rational(p, qstar);
}

/// Y(e; a1/b1, a2/b2, ...): fractional surgeries on fibres of the degree-e
/// circle bundle over the sphere. Coefficients may be 0 or Infinity.
struct SeifertData {
  Integer e;
  std::vector<ExtendedRational> fibres;

  std::string str() const {
    std::string s = "Y(" + e.str() + ";";
    for (std::size_t i = 0; i < fibres.size(); ++i) s += (i ? ", " : " ") + fibres[i].str();
    return s + ")";
  }
  friend bool operator==(const SeifertData&, const SeifertData&) = default;
};

/// S^3_r(T(p,q)) = Y(2; p/q*, q/p*, (pq-r)/(pq-r-1)) for a positive torus knot.
inline SeifertData torus_surgery_to_seifert(const TorusSurgery& t) {
  validate_torus_knot(t.p, t.q);
  if (t.q < 1) throw DomainError("torus_surgery_to_seifert needs a positive torus knot");
  const Integer qstar = mod_inverse(t.q, t.p);
  const Integer pstar = mod_inverse(t.p, t.q);
  // The exceptional-fibre coefficients satisfy q*b1 + p*b2 = 1.
  const Integer beta1 = qstar;
  const Integer beta2 = pstar - t.q;
  if (t.q * beta1 + t.p * beta2 - 1 != 0) {
    throw std::logic_error("torus_surgery_to_seifert: q b1 + p b2 != 1");
  }
  const Rational pq(t.p * t.q);
  const Rational top = pq - t.r;
  const Rational bottom = top - Rational(1);
  ExtendedRational third =
      bottom.sign() == 0 ? ExtendedRational::infinity() : ExtendedRational(top / bottom);
  return SeifertData{2, {Rational(t.p, qstar), Rational(t.q, pstar), third}};
}

/// Star-shaped weighted tree: a central weight and ordered legs listed
/// outward from the centre.
struct PlumbingTree {
  Integer center;
  std::array<std::vector<Integer>, 3> legs;

  std::size_t vertex_count() const {
    return 1 + legs[0].size() + legs[1].size() + legs[2].size();
  }
  /// Gram index of vertex j (0-based, from the centre) on leg l.
  std::size_t index(std::size_t leg, std::size_t j) const {
    std::size_t base = 1;
    for (std::size_t l = 0; l < leg; ++l) base += legs[l].size();
    return base + j;
  }

  /// Plumbing form: weights on the diagonal, +1 for every edge. The centre
  /// comes first, then each leg outward.
  GramMatrix gram() const {
    GramMatrix g(vertex_count());
    g.set(0, 0, center);
    for (std::size_t l = 0; l < 3; ++l) {
      for (std::size_t j = 0; j < legs[l].size(); ++j) {
        const std::size_t v = index(l, j);
        g.set(v, v, legs[l][j]);
        g.set(v, j == 0 ? 0 : v - 1, 1);
      }
    }
    return g;
  }

  std::string to_dot() const {
    std::string s = "graph plumbing {\n  v0 [label=\"" + center.str() + "\"];\n";
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t j = 0; j < legs[l].size(); ++j) {
        const std::size_t v = index(l, j);
        const std::size_t parent = j == 0 ? 0 : v - 1;
        s += "  v" + std::to_string(v) + " [label=\"" + legs[l][j].str() + "\"];\n";
        s += "  v" + std::to_string(parent) + " -- v" + std::to_string(v) + ";\n";
      }
    return s + "}\n";
  }

  friend bool operator==(const PlumbingTree&, const PlumbingTree&) = default;
};

/// Star-shaped linking matrix of a Seifert description: centre e, one leg
/// cf_minus(a/b) per finite coefficient, nothing for Infinity.
inline FramedLinkMatrix seifert_to_matrix(const SeifertData& s) {
  std::vector<std::vector<Integer>> legs;
  for (const auto& f : s.fibres) {
    if (f.is_infinite()) continue;
    const Rational& x = f.value();
    if (x.sign() == 0) {
      throw InfiniteHomologyError("seifert_to_matrix: zero fibre coefficient (H1 is infinite)");
    }
    if (x.sign() < 0) throw DomainError("seifert_to_matrix: negative fibre coefficient " + x.str());
    legs.push_back(cf_minus(x).integers());
  }
  std::size_t n = 1;
  for (const auto& leg : legs) n += leg.size();
  FramedLinkMatrix m(n);
  m.set(0, 0, s.e);
  std::size_t v = 1;
  for (const auto& leg : legs) {
    for (std::size_t j = 0; j < leg.size(); ++j, ++v) {
      m.set(v, v, leg[j]);
      m.set(v, j == 0 ? 0 : v - 1, 1);
    }
  }
  return m;
}

namespace detail {

/// Minus expansion of [c1..cn]^+ (via plus_to_minus when n >= 2, the
/// integer itself when n = 1).
inline std::vector<Integer> minus_pattern(const std::vector<Integer>& plus) {
  if (plus.size() == 1) return {plus.front()};
  return plus_to_minus(ContinuedFraction::of(Convention::Plus, plus)).integers();
}

}  // namespace detail

/// The two legs determined by the knot alone, as listed from the centre:
/// {leg for p/q*, leg for q/p*}. Both are reversed minus patterns of
/// [c1..cn]^+ = p/q and of its tail [c2..cn]^+.
inline std::array<std::vector<Integer>, 2> torus_legs(const Integer& p, const Integer& q) {
  const std::vector<Integer> c = cf_plus(Rational(p, q)).integers();
  std::vector<Integer> full = detail::minus_pattern(c);
  std::vector<Integer> tail = detail::minus_pattern(std::vector<Integer>(c.begin() + 1, c.end()));
  std::reverse(full.begin(), full.end());
  std::reverse(tail.begin(), tail.end());
  return {full, tail};
}

/// Positive-definite three-legged plumbing bounded by S^3_r(T(p,q)) for
/// 0 < r < pq - 1. First leg: cf_minus((pq-r)/(pq-r-1)); second and third
/// legs: p/q* then q/p* when the Euclidean length n is odd, swapped when n is
/// even.
inline PlumbingTree surgery_plumbing(const TorusSurgery& t) {
  validate_torus_knot(t.p, t.q);
  if (t.q < 2) throw DomainError("surgery_plumbing needs q >= 2");
  const Rational pq(t.p * t.q);
  if (!(t.r.sign() > 0 && t.r < pq - Rational(1))) {
    throw DomainError("surgery_plumbing needs 0 < r < pq - 1, got r = " + t.r.str());
  }
  const Rational top = pq - t.r;
  PlumbingTree tree;
  tree.center = 2;
  tree.legs[0] = cf_minus(top / (top - Rational(1))).integers();
  auto [p_leg, q_leg] = torus_legs(t.p, t.q);
  if (euclid_length(t.p, t.q) % 2 == 1) {
    tree.legs[1] = std::move(p_leg);
    tree.legs[2] = std::move(q_leg);
  } else {
    tree.legs[1] = std::move(q_leg);
    tree.legs[2] = std::move(p_leg);
  }
  return tree;
}

inline FramedLinkMatrix plumbing_matrix(const PlumbingTree& tree) {
  return FramedLinkMatrix(static_cast<const SymmetricMatrix&>(tree.gram()));
}

/// The mu-plumbing with w - v parallel (+1)-framed meridians added to every
/// third-leg vertex of weight w and valency v (1 for the outermost vertex,
/// 2 otherwise). Meridians are appended after the tree vertices.
inline FramedLinkMatrix augmented_mu_diagram(const Integer& p, const Integer& q) {
  validate_torus_knot(p, q);
  if (q < 2) throw DomainError("augmented_mu_diagram needs q >= 2");
  const PlumbingTree tree = surgery_plumbing({p, q, mu(p, q)});
  FramedLinkMatrix m = plumbing_matrix(tree);
  const auto& third = tree.legs[2];
  for (std::size_t j = 0; j < third.size(); ++j) {
    const std::size_t vertex = tree.index(2, j);
    const Integer valency = j + 1 == third.size() ? 1 : 2;
    for (Integer k = 0; k < third[j] - valency; ++k) {
      std::vector<Integer> links(m.dim(), 0);
      links[vertex] = 1;
      m = add_component(m, 1, links);
    }
  }
  return m;
}

/// |H1| of the boundary of the 4-manifold described by m; 0 means infinite.
inline Integer h1_order(const SymmetricMatrix& m) { return abs(determinant(m)); }

}  // namespace surgerylab
