#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surgerylab;

TEST(Kirby, BlowUpExample) {
  const FramedLinkMatrix m({{2}});
  const std::vector<Integer> links{1};
  EXPECT_EQ(blow_up(m, -1, links), FramedLinkMatrix({{1, 1}, {1, -1}}));
}

TEST(Kirby, BlowDownInvertsBlowUp) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> entry(-3, 3), link(-2, 2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 4;
    FramedLinkMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, entry(rng));
    std::vector<Integer> links(n);
    for (auto& x : links) x = link(rng);
    const int sign = t % 2 ? 1 : -1;
    const FramedLinkMatrix up = blow_up(m, sign, links);
    EXPECT_EQ(blow_down(up, n), m);
    // Blow-ups change |det| by a unit factor and the signature by the sign.
    EXPECT_EQ(abs(determinant(up)), abs(determinant(m)));
    SignatureTriple s = signature(m);
    (sign > 0 ? s.n_plus : s.n_minus) += 1;
    EXPECT_EQ(signature(up), s);
  }
}

TEST(Kirby, BlowDownRejectsNonUnitFraming) {
  EXPECT_THROW(blow_down(FramedLinkMatrix({{2, 1}, {1, 3}}), 0), DomainError);
  EXPECT_THROW(blow_down(FramedLinkMatrix({{1}}), 1), DomainError);
  const std::vector<Integer> wrong_size{1, 2};
  EXPECT_THROW(blow_up(FramedLinkMatrix({{1}}), 1, wrong_size), DomainError);
  EXPECT_THROW(blow_up(FramedLinkMatrix({{1}}), 2, std::vector<Integer>{1}), DomainError);
}

TEST(Kirby, BlowDownFormula) {
  const FramedLinkMatrix m({{3, 1, 0}, {1, -1, 2}, {0, 2, 5}});
  // l'_ij = l_ij - e l_ik l_jk with k = 1 and e = -1.
  EXPECT_EQ(blow_down(m, 1), FramedLinkMatrix({{4, 2}, {2, 9}}));
}

TEST(Kirby, ChainOfOnesReducesToZero) {
  // [1,1] blows down to [0].
  const Reduction r = reduce_to_zero(chain_matrix({1, 1}));
  ASSERT_TRUE(r.success);
  EXPECT_EQ(replay_blowdowns(chain_matrix({1, 1}), r.steps), FramedLinkMatrix({{0}}));
}

TEST(Kirby, FailedReductionIsExhausted) {
  const Reduction r = reduce_to_zero(chain_matrix({2, 2}));
  EXPECT_FALSE(r.success);
  EXPECT_TRUE(r.exhausted);
  EXPECT_EQ(r.residue, chain_matrix({2, 2}));
}

TEST(Kirby, RespectsSignAndMaskOptions) {
  BlowDownOptions only_positive;
  only_positive.allow_negative = false;
  EXPECT_TRUE(reduce_to_zero(chain_matrix({-1, -1})).success);
  EXPECT_FALSE(reduce_to_zero(chain_matrix({-1, -1}), only_positive).success);
  BlowDownOptions masked;
  masked.allowed = {true, false};
  const Reduction r = reduce_to_zero(chain_matrix({1, 1}), masked);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.steps, (std::vector<std::size_t>{0}));
}

TEST(Kirby, ReductionPreservesDeterminantAlongTheWay) {
  const FramedLinkMatrix m = augmented_mu_diagram(5, 3);
  const Reduction r = reduce_to_zero(m);
  ASSERT_TRUE(r.success);
  FramedLinkMatrix cur = m;
  const Integer det = abs(determinant(m));
  for (std::size_t k : r.steps) {
    cur = blow_down(cur, k);
    EXPECT_EQ(abs(determinant(cur)), det);
  }
  EXPECT_EQ(det, 0);
}

TEST(Kirby, AddComponentLeavesOthersUntouched) {
  const std::vector<Integer> links{1, 0};
  EXPECT_EQ(add_component(chain_matrix({2, 3}), 4, links),
            FramedLinkMatrix({{2, 1, 1}, {1, 3, 0}, {1, 0, 4}}));
}
