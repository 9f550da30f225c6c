#pragma once

#include "surgerylab/continued_fraction.hpp"
#include "surgerylab/forms.hpp"
#include "surgerylab/integer.hpp"
#include "surgerylab/kirby.hpp"
#include "surgerylab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace surgerylab {

struct StageCheck {
  std::string check;
  bool passed = false;

  friend bool operator==(const StageCheck&, const StageCheck&) = default;
};

/// One two-handle cobordism given by the linking matrix after attaching
/// `handles_added` components to `before`.
struct CobordismStage {
  std::string description;
  FramedLinkMatrix matrix;
  FramedLinkMatrix before;
  std::size_t handles_added = 0;
  /// Surgery coefficient on the outgoing boundary.
  Rational boundary_value;
  /// The cobordism is the reverse of the one described by the matrices, so
  /// signatures are compared after negating both.
  bool orientation_reversed = false;
  /// False for cases the matrix checks cannot witness.
  bool certified = true;
  /// Blow-downs (0-based, replayable) used to identify the result.
  std::vector<std::size_t> blowdowns;
  std::vector<StageCheck> checks;

  SignatureTriple signature_before() const {
    return signature(orientation_reversed ? FramedLinkMatrix(SymmetricMatrix(-before.matrix()))
                                          : before);
  }
  SignatureTriple signature_after() const {
    return signature(orientation_reversed ? FramedLinkMatrix(SymmetricMatrix(-matrix.matrix()))
                                          : matrix);
  }
  bool verified() const {
    return std::all_of(checks.begin(), checks.end(), [](const StageCheck& c) { return c.passed; });
  }
};

namespace detail {

inline void add_check(CobordismStage& stage, std::string name, bool passed) {
  stage.checks.push_back({std::move(name), passed});
}

/// n_plus unchanged and n_minus up by handles_added.
inline void check_bookkeeping(CobordismStage& stage) {
  const SignatureTriple a = stage.signature_before();
  const SignatureTriple b = stage.signature_after();
  add_check(stage, "n_plus unchanged " + a.str() + " -> " + b.str(), a.n_plus == b.n_plus);
  add_check(stage,
            "n_minus grows by " + std::to_string(stage.handles_added) + " " + a.str() + " -> " +
                b.str(),
            b.n_minus == a.n_minus + stage.handles_added && b.n_zero == a.n_zero);
}

/// Chain signature read off the signs agrees with the exact signature.
inline void check_tridiagonal(CobordismStage& stage, const std::vector<Integer>& weights) {
  if (!tridiagonal_signature_applies(weights)) {
    add_check(stage, "sign-count rule applies to " + ContinuedFraction::of(Convention::Minus, weights).str(),
              false);
    return;
  }
  const SignatureTriple exact = signature(chain_matrix(weights));
  add_check(stage, "sign-count signature matches exact signature",
            tridiagonal_signature(weights) == exact.value());
}

inline Rational eval_chain(const std::vector<Integer>& weights) {
  const ExtendedRational v = eval_cf(ContinuedFraction::of(Convention::Minus, weights));
  if (v.is_infinite()) throw std::logic_error("chain evaluates to infinity");
  return v.value();
}

inline std::vector<Integer> concat(std::vector<Integer> a, const std::vector<Integer>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// Negative-definite cobordism from S^3_s(K) to S^3_r(K), r > s > 0, as a
/// list of stages. With a common Minus-expansion head c1..cm and
/// l = c'_{m+1} - c_{m+1}:
///   W0 shortens the s-chain to [c1..c_{m+1}] (orientation reversed),
///   Wi (0 < i < l) adds a (-1)-meridian to [c1..c_{m+1}+i-1],
///   Wl replaces [c1..cm, c'_{m+1}-1] by [.., c'_{m+1}-1, -a1, .., -an]
///   where r'/(r'-1) = [a1..an]^- and r' is the tail of r.
/// When the expansion of r is a prefix of that of s only W0 is needed.
inline std::vector<CobordismStage> step_cobordism_chain(const Rational& s, const Rational& r) {
  if (s.sign() <= 0 || r.sign() <= 0) {
    throw DomainError("step_cobordism_chain needs positive coefficients, got s = " + s.str() +
                      ", r = " + r.str());
  }
  if (r < s) throw DomainError("step_cobordism_chain needs r >= s, got s = " + s.str() + ", r = " + r.str());
  std::vector<CobordismStage> stages;
  if (r == s) return stages;

  const std::vector<Integer> cs = cf_minus(s).integers();
  const std::vector<Integer> cr = cf_minus(r).integers();
  std::size_t m = 0;
  while (m < cs.size() && m < cr.size() && cs[m] == cr[m]) ++m;
  // s < r rules out s being a prefix of r.
  if (m == cs.size()) throw std::logic_error("step_cobordism_chain: s expansion is a prefix of r");

  if (m == cr.size() || cs.size() > m + 1) {
    // W0: positive-definite extension from the short chain to the s-chain, reversed.
    CobordismStage w0;
    const std::vector<Integer> short_chain =
        m == cr.size() ? cr : std::vector<Integer>(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(m + 1));
    w0.description = "W0: reverse of " + ContinuedFraction::of(Convention::Minus, short_chain).str() +
                     " extended to " + ContinuedFraction::of(Convention::Minus, cs).str();
    w0.before = chain_matrix(short_chain);
    w0.matrix = chain_matrix(cs);
    w0.handles_added = cs.size() - short_chain.size();
    w0.boundary_value = detail::eval_chain(short_chain);
    w0.orientation_reversed = true;
    detail::add_check(w0, "s-chain is positive-definite", signature(w0.matrix).positive_definite());
    detail::add_check(w0, "short chain is positive-definite", signature(w0.before).positive_definite());
    detail::add_check(w0, "s-chain evaluates to s", detail::eval_chain(cs) == s);
    detail::check_bookkeeping(w0);
    stages.push_back(std::move(w0));
  }
  if (m == cr.size()) return stages;

  const std::vector<Integer> prefix(cr.begin(), cr.begin() + static_cast<std::ptrdiff_t>(m));
  const Integer l = cr[m] - cs[m];
  for (Integer i = 1; i < l; ++i) {
    CobordismStage w;
    std::vector<Integer> base = prefix;
    base.push_back(cs[m] + i - 1);
    std::vector<Integer> extended = base;
    extended.push_back(-1);
    w.description = "W" + i.str() + ": (-1)-meridian on " +
                    ContinuedFraction::of(Convention::Minus, base).str();
    w.before = chain_matrix(base);
    w.matrix = chain_matrix(extended);
    w.handles_added = 1;
    w.boundary_value = detail::eval_chain(extended);
    detail::add_check(w, "boundary is [.., c+" + i.str() + "]^-",
                      w.boundary_value == detail::eval_chain(detail::concat(prefix, {cs[m] + i})));
    detail::check_tridiagonal(w, extended);
    detail::check_bookkeeping(w);
    stages.push_back(std::move(w));
  }

  // Wl: r' is the tail after c'_{m+1}; r'/(r'-1) is 1 when r' is infinite.
  const std::vector<Integer> tail(cr.begin() + static_cast<std::ptrdiff_t>(m + 1), cr.end());
  std::vector<Integer> a;
  if (tail.empty()) {
    a = {1};
  } else {
    const Rational rp = detail::eval_chain(tail);
    a = cf_minus(rp / (rp - Rational(1))).integers();
  }
  std::vector<Integer> base = prefix;
  base.push_back(cr[m] - 1);
  std::vector<Integer> extended = base;
  for (const auto& x : a) extended.push_back(-x);
  CobordismStage wl;
  wl.description = "W" + l.str() + ": " + ContinuedFraction::of(Convention::Minus, base).str() +
                   " to " + ContinuedFraction::of(Convention::Minus, extended).str();
  wl.before = chain_matrix(base);
  wl.matrix = chain_matrix(extended);
  wl.handles_added = a.size();
  wl.boundary_value = detail::eval_chain(extended);
  detail::add_check(wl, "final boundary equals r", wl.boundary_value == r);
  detail::check_tridiagonal(wl, extended);
  detail::check_bookkeeping(wl);
  stages.push_back(std::move(wl));

  for (std::size_t i = 1; i < stages.size(); ++i) {
    detail::add_check(stages[i], "boundary value increases",
                      stages[i - 1].boundary_value < stages[i].boundary_value);
  }
  detail::add_check(stages.front(), "first boundary exceeds s", s < stages.front().boundary_value);
  return stages;
}

/// K framed m and C framed n joined by a 0-framed component:
/// [[m,0,1],[0,n,1],[1,1,0]] with boundary S^3_{m+n}(K#C).
inline CobordismStage sum_cobordism_integer(const Integer& m, const Integer& n) {
  if (m < 0 || n < 0) {
    throw DomainError("sum_cobordism_integer needs m, n >= 0, got (" + m.str() + "," + n.str() + ")");
  }
  CobordismStage st;
  st.description = "0-framed handle joining K(" + m.str() + ") and C(" + n.str() + ")";
  st.before = FramedLinkMatrix({{m, 0}, {0, n}});
  st.matrix = FramedLinkMatrix({{m, 0, 1}, {0, n, 1}, {1, 1, 0}});
  st.handles_added = 1;
  st.boundary_value = Rational(m + n);
  if (m == 0 || n == 0) {
    // A degenerate incoming form does not witness relative definiteness.
    st.certified = false;
    return st;
  }
  const SignatureTriple sig = signature(st.matrix);
  detail::add_check(st, "signature (2,0,1), got " + sig.str(), sig == SignatureTriple{2, 0, 1});
  const Integer det = determinant(st.matrix);
  detail::add_check(st, "det = -(m+n), got " + det.str(), det == -(m + n));
  detail::check_bookkeeping(st);
  return st;
}

/// True when a = D b D for a diagonal sign matrix D.
inline bool signed_congruent(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) return false;
  std::vector<int> sign(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (sign[root]) continue;
    sign[root] = 1;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      if (a(i, i) != b(i, i)) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (abs(a(i, j)) != abs(b(i, j))) return false;
        if (a(i, j) == 0) continue;
        const int want = a(i, j) == b(i, j) ? sign[i] : -sign[i];
        if (!sign[j]) {
          sign[j] = want;
          stack.push_back(j);
        } else if (sign[j] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

/// r = m - q/p and s = n - (p-q)/p: K framed m with the chain p/q, C framed
/// n with the chain p/(p-q), plus one (+1)-framed unknot linking both chain
/// ends. Blowing down (+1) chain components must reach the integer form with
/// m + n - 1. Returns the fractional stage followed by that integer stage.
inline std::vector<CobordismStage> sum_cobordism_fractional(const Integer& m, const Integer& n,
                                                            const Integer& p, const Integer& q) {
  if (m < 1 || n < 1) {
    throw DomainError("sum_cobordism_fractional needs m, n >= 1, got (" + m.str() + "," + n.str() + ")");
  }
  if (p == 1 && q == 0) return {sum_cobordism_integer(m, n - 1)};
  if (!(p > q && q >= 1) || gcd(p, q) != 1) {
    throw DomainError("sum_cobordism_fractional needs coprime p > q >= 1, got (" + p.str() + "," +
                      q.str() + ")");
  }
  const Rational r = Rational(m) - Rational(q, p);
  const Rational s = Rational(n) - Rational(p - q, p);
  const std::vector<Integer> kchain = cf_minus(Rational(p, q)).integers();
  const std::vector<Integer> cchain = cf_minus(Rational(p, p - q)).integers();

  const std::vector<Integer> kpart = detail::concat({m}, kchain);
  const std::vector<Integer> cpart = detail::concat({n}, cchain);
  const std::size_t nk = kpart.size(), nc = cpart.size();
  FramedLinkMatrix left(nk + nc);
  for (std::size_t i = 0; i < nk; ++i) {
    left.set(i, i, kpart[i]);
    if (i + 1 < nk) left.set(i, i + 1, 1);
  }
  for (std::size_t i = 0; i < nc; ++i) {
    left.set(nk + i, nk + i, cpart[i]);
    if (i + 1 < nc) left.set(nk + i, nk + i + 1, 1);
  }
  std::vector<Integer> links(nk + nc, 0);
  links[nk - 1] = 1;
  links[nk + nc - 1] = 1;
  const FramedLinkMatrix w = add_component(left, 1, links);

  CobordismStage st;
  st.description = "(+1)-handle linking the ends of K(" + m.str() + ";" +
                   ContinuedFraction::of(Convention::Minus, kchain).str() + ") and C(" + n.str() +
                   ";" + ContinuedFraction::of(Convention::Minus, cchain).str() + ")";
  st.before = left;
  st.matrix = w;
  st.handles_added = 1;
  st.boundary_value = r + s;
  detail::add_check(st, "K diagram bounds r = " + r.str(), detail::eval_chain(kpart) == r);
  detail::add_check(st, "C diagram bounds s = " + s.str(), detail::eval_chain(cpart) == s);
  detail::add_check(st, "left diagram is positive-definite", signature(left).positive_definite());
  detail::check_bookkeeping(st);
  const Integer det = abs(determinant(w));
  detail::add_check(st, "|det| = m+n-1, got " + det.str(), det == m + n - 1);

  // Only the chain components and the new unknot may be blown down.
  BlowDownOptions options;
  options.allow_negative = false;
  options.allowed.assign(w.dim(), true);
  options.allowed[0] = false;
  options.allowed[nk] = false;
  const Integer total = m + n - 1;
  // K has the least index and is never removed; the other two survivors are
  // C and one chain component in either order.
  auto integer_form = [&](const FramedLinkMatrix& x, std::size_t c, std::size_t z) {
    const FramedLinkMatrix reordered({{x(0, 0), x(0, c), x(0, z)},
                                      {x(c, 0), x(c, c), x(c, z)},
                                      {x(z, 0), x(z, c), x(z, z)}});
    for (const auto& [a, b] : {std::pair{m - 1, n}, std::pair{m, n - 1}}) {
      if (a + b == total &&
          signed_congruent(reordered, FramedLinkMatrix({{a, 0, 1}, {0, b, 1}, {1, 1, 0}})))
        return true;
    }
    return false;
  };
  const Reduction red = reduce_by_blowdowns(
      w,
      [&](const FramedLinkMatrix& x) {
        return x.dim() == 3 && (integer_form(x, 1, 2) || integer_form(x, 2, 1));
      },
      options);
  st.blowdowns = red.steps;
  detail::add_check(st, "(+1)-blow-downs reach the integer form", red.success);

  bool det_kept = true;
  FramedLinkMatrix cur = w;
  std::vector<std::size_t> ids(w.dim());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  for (std::size_t k : red.steps) {
    cur = blow_down(cur, k);
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(k));
    det_kept = det_kept && abs(determinant(cur)) == det;
  }
  detail::add_check(st, "|det| preserved by every blow-down", det_kept);

  std::vector<CobordismStage> out{std::move(st)};
  if (red.success) {
    const std::size_t c = ids[1] == nk ? 1 : 2;
    out.push_back(sum_cobordism_integer(cur(0, 0), cur(c, c)));
  }
  return out;
}

/// K framed m with a (-2l)-meridian, C framed n with a (-2l)-meridian, and l
/// (-1)-framed unknots each linking both meridians once; the boundary is
/// S^3_{m+n+1/l}(K#C).
inline CobordismStage sum_cobordism_half(const Integer& l, const Integer& m, const Integer& n) {
  if (l < 2) throw DomainError("sum_cobordism_half needs l >= 2, got " + l.str());
  if (m < 0 || n < 0) {
    throw DomainError("sum_cobordism_half needs m, n >= 0, got (" + m.str() + "," + n.str() + ")");
  }
  FramedLinkMatrix left({{m, 1, 0, 0}, {1, -2 * l, 0, 0}, {0, 0, n, 1}, {0, 0, 1, -2 * l}});
  FramedLinkMatrix x = left;
  for (Integer i = 0; i < l; ++i) {
    std::vector<Integer> links(x.dim(), 0);
    links[1] = 1;
    links[3] = 1;
    x = add_component(x, -1, links);
  }
  CobordismStage st;
  st.description = "l = " + l.str() + " (-1)-handles joining the meridians of K(" + m.str() +
                   ";-" + (2 * l).str() + ") and C(" + n.str() + ";-" + (2 * l).str() + ")";
  st.before = left;
  st.matrix = x;
  st.handles_added = narrow<std::size_t>(l);
  st.boundary_value = Rational(m + n) + Rational(1, l);
  const Integer det = abs(determinant(x));
  detail::add_check(st, "|det| = l(m+n)+1, got " + det.str(), det == l * (m + n) + 1);
  detail::check_bookkeeping(st);
  return st;
}

}  // namespace surgerylab
