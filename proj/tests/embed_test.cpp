#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surgerylab;

namespace {

std::vector<oracle::Vec> to_vecs(const Embedding& e) {
  std::vector<oracle::Vec> rows(e.rows.rows(), oracle::Vec(e.rows.cols()));
  for (std::size_t i = 0; i < e.rows.rows(); ++i)
    for (std::size_t c = 0; c < e.rows.cols(); ++c) rows[i][c] = narrow<int>(e.rows(i, c));
  return rows;
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  const Integer r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

/// Largest a/b with b <= 3 strictly below x.
Rational largest_below(const Rational& x) {
  Rational best(0);
  for (int b = 1; b <= 3; ++b) {
    const Integer a = (x * Rational(b)).ceil() - 1;
    const Rational c(a, b);
    if (best < c) best = c;
  }
  return best;
}

/// Basis of the integer left kernel of a, by unimodular row reduction.
std::vector<std::vector<Integer>> left_kernel(std::vector<std::vector<Integer>> a, std::size_t cols) {
  const std::size_t n = a.size();
  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < n; ++c) {
    for (;;) {
      std::size_t piv = n;
      for (std::size_t i = row; i < n; ++i)
        if (a[i][c] != 0 && (piv == n || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
      if (piv == n) break;
      std::swap(a[row], a[piv]);
      std::swap(u[row], u[piv]);
      bool cleared = true;
      for (std::size_t i = row + 1; i < n; ++i) {
        if (a[i][c] == 0) continue;
        const Integer f = a[i][c] / a[row][c];
        for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[row][k];
        for (std::size_t k = 0; k < n; ++k) u[i][k] -= f * u[row][k];
        cleared = cleared && a[i][c] == 0;
      }
      if (cleared) {
        ++row;
        break;
      }
    }
  }
  return {u.begin() + static_cast<std::ptrdiff_t>(row), u.end()};
}

SymmetricMatrix restrict_gram(const SymmetricMatrix& g, const std::vector<std::size_t>& idx) {
  SymmetricMatrix s(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i; j < idx.size(); ++j) s.set(i, j, g(idx[i], idx[j]));
  return s;
}

const std::vector<std::pair<int, int>> kTorsionKnots{{3, 2},  {5, 2}, {5, 3},  {7, 2},  {7, 3},
                                                     {7, 4},  {7, 5}, {8, 3},  {8, 5},  {9, 2},
                                                     {9, 7},  {11, 4}, {11, 7}, {13, 5}, {13, 8}};

}  // namespace

TEST(Embedding, SmallExamples) {
  EmbeddingReport one = find_embedding(SymmetricMatrix({{1}}));
  ASSERT_TRUE(one.found);
  EXPECT_EQ(one.witnesses.front().rows, IntMatrix({{1}}));

  const auto two = enumerate_embeddings(SymmetricMatrix({{2}}));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.front().rows, IntMatrix({{1, 1}}));

  const auto three = enumerate_embeddings(SymmetricMatrix({{3}}));
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three.front().rows, IntMatrix({{1, 1, 1}}));
}

TEST(Embedding, Primitivity) {
  EXPECT_FALSE(is_primitive(Embedding{IntMatrix({{2, 0}})}));
  EXPECT_TRUE(is_primitive(Embedding{IntMatrix({{1, 1, 1, 1}})}));
}

TEST(Embedding, TrefoilFourSurgeryEmbedsNonPrimitively) {
  const GramMatrix g = surgery_plumbing({3, 2, Rational(4)}).gram();
  const EmbeddingReport r = find_embedding(g);
  ASSERT_TRUE(r.found);
  const Embedding& e = r.witnesses.front();
  EXPECT_EQ(e.gram(), g);
  EXPECT_FALSE(is_primitive(e));
  EXPECT_EQ(smith_invariants(e.rows).invariant_factors, (std::vector<Integer>{1, 1, 1, 1, 2}));
}

TEST(Embedding, E8HasNoDiagonalEmbedding) {
  const GramMatrix g = surgery_plumbing({3, 2, Rational(1)}).gram();
  const EmbeddingReport r = find_embedding(g);
  EXPECT_FALSE(r.found);
  EXPECT_TRUE(r.exhausted);
  EXPECT_EQ(r.k_max, 16u);
}

TEST(Embedding, BelowThresholdIsCertifiedEmpty) {
  const EmbeddingReport r = find_embedding(surgery_plumbing({3, 2, Rational(7, 2)}).gram());
  EXPECT_FALSE(r.found);
  EXPECT_TRUE(r.exhausted);
}

TEST(Embedding, NodeLimitLeavesSearchUnexhausted) {
  EmbeddingOptions tiny;
  tiny.node_limit = 3;
  const GramMatrix g = surgery_plumbing({3, 2, Rational(1)}).gram();
  const EmbeddingReport r = find_embedding(g, tiny);
  EXPECT_FALSE(r.found);
  EXPECT_FALSE(r.exhausted);
  EXPECT_THROW(enumerate_embeddings(g, tiny), DomainError);
}

TEST(Embedding, RejectsIndefiniteInput) {
  EXPECT_THROW(find_embedding(SymmetricMatrix({{1, 2}, {2, 1}})), DomainError);
  EXPECT_THROW(find_embedding(SymmetricMatrix({{0}})), DomainError);
}

TEST(Embedding, EnumerationMatchesUnprunedOracle) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> off(-1, 1);
  int checked = 0;
  for (int t = 0; checked < 60 && t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 4;
    SymmetricMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
      g.set(i, i, 1 + static_cast<int>(rng() % 4));
      for (std::size_t j = i + 1; j < n; ++j) g.set(i, j, off(rng));
    }
    if (signature(g).n_plus != n) continue;
    ++checked;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += g(i, i);
    const std::size_t k = std::min<std::size_t>(narrow<std::size_t>(trace), 6);
    EmbeddingOptions opt;
    opt.k_max = k;
    std::set<std::vector<oracle::Vec>> ours;
    for (const auto& e : enumerate_embeddings(g, opt)) {
      EXPECT_EQ(e.gram(), g);
      EXPECT_EQ(canonical_form(e), e);
      ours.insert(oracle::canonical(to_vecs(e)));
    }
    EXPECT_EQ(ours, oracle::all_embeddings(g, k)) << g.str();
  }
  EXPECT_EQ(checked, 60);
}

TEST(Embedding, CanonicalFormIgnoresSignedPermutations) {
  const Embedding e{IntMatrix({{1, -1, 0}, {0, 1, 1}})};
  const Embedding shuffled{IntMatrix({{0, 1, -1}, {-1, 0, 1}})};
  EXPECT_EQ(canonical_form(e), canonical_form(shuffled));
  EXPECT_EQ(canonical_form(e).gram(), e.gram());
}

TEST(Embedding, ObstructionAndRealisationSplitAtMu) {
  const std::vector<std::pair<int, int>> knots{{3, 2}, {5, 2}, {5, 3}, {7, 2},
                                               {7, 3}, {7, 4}, {7, 5}};
  for (const auto& [p, q] : knots) {
    const Rational m = mu(p, q);
    const EmbeddingReport at = find_embedding(surgery_plumbing({p, q, m}).gram());
    EXPECT_TRUE(at.found) << p << "," << q;
    const Rational below = largest_below(m);
    const EmbeddingReport under = find_embedding(surgery_plumbing({p, q, below}).gram());
    EXPECT_FALSE(under.found) << p << "," << q << " at " << below.str();
    EXPECT_TRUE(under.exhausted) << p << "," << q << " at " << below.str();
  }
}

TEST(Embedding, ThresholdOracleRecoversMuInWindows) {
  for (const auto& w : oracle_windows()) {
    const ThresholdResult t = mu_threshold_oracle(w.p, w.q, 2, w.lo, w.hi);
    EXPECT_EQ(t.value, mu(w.p, w.q));
    EXPECT_FALSE(t.certified_failures.empty());
    for (const auto& f : t.certified_failures) EXPECT_LT(f, t.value);
    EXPECT_EQ(t.witness.gram(), surgery_plumbing({w.p, w.q, t.value}).gram());
  }
  const ThresholdResult t = mu_threshold_oracle(3, 2, 2, Rational(1), Rational(5));
  EXPECT_NE(std::find(t.certified_failures.begin(), t.certified_failures.end(), Rational(7, 2)),
            t.certified_failures.end());
  EXPECT_NE(std::find(t.certified_failures.begin(), t.certified_failures.end(), Rational(3)),
            t.certified_failures.end());
}

TEST(Embedding, ThresholdOracleErrors) {
  EXPECT_THROW(mu_threshold_oracle(5, 1, 2, Rational(1), Rational(3)), DomainError);
  EXPECT_THROW(mu_threshold_oracle(3, 2, 0, Rational(1), Rational(5)), DomainError);
  // Nothing in [1, 3] embeds for the trefoil.
  EXPECT_THROW(mu_threshold_oracle(3, 2, 1, Rational(1), Rational(3)), DomainError);
}

TEST(TwoLegRecursion, BaseCase) {
  const TwoLegSequence s = two_leg_recursion({});
  EXPECT_EQ(s.vectors, IntMatrix({{-1, -1, 0}, {0, 1, 1}, {1, -1, 0}}));
  EXPECT_EQ(s.center, 1u);
  EXPECT_EQ(s.basis_size(), 2u);
  EXPECT_EQ(determinant(s.gram()), 4);
  EXPECT_EQ(determinant(two_leg_recursion({BlowupSide::Left}).gram()), 9);
}

TEST(TwoLegRecursion, RandomSequencesGiveLinearChains) {
  std::mt19937 rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<BlowupSide> steps(rng() % 7);
    for (auto& s : steps) s = rng() % 2 ? BlowupSide::Left : BlowupSide::Right;
    const TwoLegSequence seq = two_leg_recursion(steps);
    const GramMatrix g = seq.gram();
    ASSERT_EQ(g.dim(), steps.size() + 3);
    for (std::size_t i = 0; i < g.dim(); ++i) {
      EXPECT_GE(g(i, i), 2);
      for (std::size_t j = i + 1; j < g.dim(); ++j)
        EXPECT_EQ(abs(g(i, j)), j == i + 1 ? 1 : 0) << g.str();
    }
    const Integer det = abs(determinant(g));
    EXPECT_TRUE(is_perfect_square(det) && det > 1) << det.str();
  }
}

TEST(TwoLegRecursion, RealisesTheFiveThreeChain) {
  // Chain 3,2,2,3,2 (det 25) appears among short sequences.
  const std::vector<Integer> target{3, 2, 2, 3, 2};
  bool seen = false;
  for (unsigned mask = 0; mask < 4 && !seen; ++mask) {
    std::vector<BlowupSide> steps;
    for (int b = 0; b < 2; ++b) steps.push_back(mask >> b & 1 ? BlowupSide::Right : BlowupSide::Left);
    const GramMatrix g = two_leg_recursion(steps).gram();
    std::vector<Integer> diag, rdiag;
    for (std::size_t i = 0; i < g.dim(); ++i) diag.push_back(g(i, i));
    rdiag.assign(diag.rbegin(), diag.rend());
    seen = diag == target || rdiag == target;
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(determinant(chain_matrix(target)), 25);
}

TEST(Embedding, MuPlumbingEmbeddingsAreNeverPrimitive) {
  for (const auto& [p, q] : kTorsionKnots) {
    const auto all = enumerate_embeddings(surgery_plumbing({p, q, mu(p, q)}).gram());
    ASSERT_FALSE(all.empty()) << p << "," << q;
    for (const auto& e : all) EXPECT_FALSE(is_primitive(e)) << p << "," << q;
  }
}

TEST(Embedding, EdgeSignsDoNotAffectExistence) {
  std::mt19937 rng(41);
  for (const auto& [p, q] : kTorsionKnots) {
    const Rational m = mu(p, q);
    for (const Rational& r : {m, largest_below(m)}) {
      const GramMatrix g = surgery_plumbing({p, q, r}).gram();
      SymmetricMatrix flipped = g;
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
          if (g(i, j) != 0 && rng() % 2) flipped.set(i, j, -g(i, j));
      const EmbeddingReport a = find_embedding(g), b = find_embedding(flipped);
      EXPECT_EQ(a.found, b.found) << p << "," << q << " at " << r.str();
      EXPECT_TRUE(a.exhausted || a.found);
      EXPECT_TRUE(b.exhausted || b.found);
      if (b.found) {
        EXPECT_EQ(b.witnesses.front().gram(), flipped);
      }
    }
  }
}

// The chain (reversed r-leg, centre, next leg) has determinant p^2 when the
// Euclidean length is odd and q^2 when it is even; its legs span a coordinate
// sublattice Z^s and the full image meets Z^s in exactly their image.
TEST(Embedding, TwoLegSublatticeIsSaturatedInTheImage) {
  for (const auto& [p, q] : kTorsionKnots) {
    const PlumbingTree t = surgery_plumbing({p, q, mu(p, q)});
    const GramMatrix g = t.gram();
    std::vector<std::size_t> legs, chain;
    for (std::size_t j = t.legs[0].size(); j-- > 0;) legs.push_back(t.index(0, j));
    chain = legs;
    chain.push_back(0);
    for (std::size_t j = 0; j < t.legs[1].size(); ++j) {
      legs.push_back(t.index(1, j));
      chain.push_back(t.index(1, j));
    }
    const Integer side = euclid_length(p, q) % 2 == 1 ? p : q;
    EXPECT_EQ(determinant(restrict_gram(g, chain)), side * side) << p << "," << q;
    const Integer legs_det = determinant(restrict_gram(g, legs));

    for (const auto& e : enumerate_embeddings(g)) {
      std::set<std::size_t> support;
      for (std::size_t i : legs)
        for (std::size_t c = 0; c < e.rows.cols(); ++c)
          if (e.rows(i, c) != 0) support.insert(c);
      ASSERT_EQ(support.size(), legs.size()) << p << "," << q;

      std::vector<std::vector<Integer>> outside(g.dim());
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t c = 0; c < e.rows.cols(); ++c)
          if (!support.count(c)) outside[i].push_back(e.rows(i, c));
      const auto kernel = left_kernel(outside, e.rows.cols() - support.size());
      ASSERT_EQ(kernel.size(), support.size()) << p << "," << q;
      IntMatrix meet(kernel.size(), support.size());
      for (std::size_t r = 0; r < kernel.size(); ++r) {
        std::size_t col = 0;
        for (std::size_t c : support) {
          Integer x = 0;
          for (std::size_t i = 0; i < g.dim(); ++i) x += kernel[r][i] * e.rows(i, c);
          meet(r, col++) = x;
        }
      }
      // Equal covolumes: the legs' image has index 1 in the intersection.
      const Integer covolume = determinant(meet);
      EXPECT_EQ(covolume * covolume, legs_det) << p << "," << q;
    }
  }
}
