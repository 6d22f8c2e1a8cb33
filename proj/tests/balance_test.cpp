#include <random>

#include <gtest/gtest.h>

#include "cellsync/balance.hpp"
#include "support.hpp"

namespace cellsync {
namespace {

using testing::P;

// Independent quotient oracle: class column sums at *every* cell of class s,
// which must agree with each other and with quotient entry (s, t).
void expect_representative_independent(const Network& net, const Partition& p) {
  const auto q = quotient(net, p);
  for (std::size_t k = 0; k < net.arrow_types(); ++k)
    for (std::size_t i = 0; i < net.cells; ++i)
      for (std::size_t t = 0; t < p.rank(); ++t) {
        Count sum = 0;
        for (std::size_t j = 0; j < net.cells; ++j)
          if (p.class_of(j) == t) sum += net.matrices[k](i, j);
        EXPECT_EQ(sum, q.quotient.matrices[k](p.class_of(i), t)) << to_normal_form(p) << " cell " << i + 1;
      }
}

TEST(BalanceTest, WorkedExamples) {
  const Network g5 = testing::load_fixture("g5.net");
  EXPECT_FALSE(is_balanced(g5, P("(135)(24)", 5)));
  EXPECT_FALSE(is_balanced_projection_oracle(g5, P("(135)(24)", 5)));
  EXPECT_TRUE(is_balanced(g5, P("(124)(3)(5)", 5)));
  EXPECT_TRUE(is_balanced(g5, Partition::discrete(5)));
  EXPECT_TRUE(is_balanced(testing::load_fixture("g3.net"), P("(13)(245)", 5)));
}

TEST(BalanceTest, CellTypesMustAgree) {
  // identical inputs, different cell types
  const Network net = make_network({IntMatrix(2, 2)}, {}, {0, 1});
  EXPECT_FALSE(is_balanced(net, Partition::single_class(2)));
  EXPECT_FALSE(is_balanced_projection_oracle(net, Partition::single_class(2)));
}

TEST(BalanceTest, ThreeCellBlockStructure) {
  // a21 = a31 and a22 + a23 = a32 + a33
  const IntMatrix good{{1, 2, 0}, {3, 1, 2}, {3, 0, 3}};
  EXPECT_TRUE(is_balanced(make_network({good}), P("(1)(23)", 3)));
  EXPECT_TRUE(is_balanced_projection_oracle(make_network({good}), P("(1)(23)", 3)));
  const IntMatrix bad{{1, 2, 0}, {3, 1, 2}, {3, 0, 2}};
  EXPECT_FALSE(is_balanced(make_network({bad}), P("(1)(23)", 3)));
  EXPECT_FALSE(is_balanced_projection_oracle(make_network({bad}), P("(1)(23)", 3)));
}

TEST(BalanceTest, SizeMismatchThrows) {
  const Network g5 = testing::load_fixture("g5.net");
  EXPECT_THROW(is_balanced(g5, Partition::discrete(4)), std::invalid_argument);
  EXPECT_THROW(is_balanced_projection_oracle(g5, Partition::discrete(4)), std::invalid_argument);
  EXPECT_THROW(quotient(g5, Partition::discrete(6)), std::invalid_argument);
}

TEST(BalanceTest, ClassColumnSumsReproduceInDegrees) {
  const Network g5 = testing::load_fixture("g5.net");
  const auto sums = class_column_sums(g5, P("(124)(3)(5)", 5));
  ASSERT_EQ(sums.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(sums[k].cols(), 3u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(sums[k].row_sum(i), g5.matrices[k].row_sum(i));
  }
}

TEST(QuotientTest, G5ThreeClassQuotient) {
  const auto q = quotient(testing::load_fixture("g5.net"), P("(124)(3)(5)", 5));
  EXPECT_EQ(q.representatives, (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(q.quotient.cells, 3u);
  EXPECT_EQ(q.quotient.matrices[0], (IntMatrix{{2, 0, 0}, {0, 1, 1}, {0, 1, 1}}));
  EXPECT_EQ(q.quotient.matrices[1], (IntMatrix{{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}));
  EXPECT_TRUE(validate(q.quotient).ok());
}

TEST(QuotientTest, G3Quotients) {
  const Network g3 = testing::load_fixture("g3.net");
  const auto q3 = quotient(g3, P("(13)(24)(5)", 5));
  EXPECT_EQ(q3.quotient.cells, 3u);
  EXPECT_EQ(q3.quotient.cell_types, (std::vector<CellType>{0, 1, 1}));
  EXPECT_EQ(q3.quotient.matrices[0], (IntMatrix{{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}));
  EXPECT_EQ(q3.quotient.matrices[1], (IntMatrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
  const auto q2 = quotient(g3, P("(13)(245)", 5));
  EXPECT_EQ(q2.quotient.cells, 2u);
  EXPECT_EQ(q2.quotient.matrices[0], (IntMatrix{{0, 0}, {1, 0}}));
  EXPECT_EQ(q2.quotient.matrices[1], (IntMatrix{{0, 1}, {0, 0}}));
  expect_representative_independent(g3, P("(13)(24)(5)", 5));
  expect_representative_independent(g3, P("(13)(245)", 5));
}

TEST(QuotientTest, BottomQuotientIsOriginal) {
  for (const char* name : {"g3.net", "g5.net", "neurons9_two_types.net"}) {
    const Network net = testing::load_fixture(name);
    EXPECT_EQ(quotient(net, Partition::discrete(net.cells)).quotient, net) << name;
  }
}

TEST(QuotientTest, RejectsUnbalancedPartition) {
  EXPECT_THROW(quotient(testing::load_fixture("g5.net"), P("(135)(24)", 5)), NotBalancedError);
}

TEST(BalanceOracleTest, ExhaustiveAgreementUpToSixCells) {
  std::mt19937 rng(1234);
  std::size_t balanced_seen = 0;
  for (int trial = 0; trial < 126; ++trial) {
    const std::size_t n = 1 + trial % 6;
    // every partition of a fully connected network is balanced
    const Network net = trial >= 120 ? fully_connected_network(n) : testing::random_network(rng, n, 3, trial % 2 == 0);
    BalanceTester tester(net);
    for (const auto& p : enumerate_all(n)) {
      const bool fast = tester(p);
      ASSERT_EQ(fast, is_balanced_projection_oracle(net, p)) << to_normal_form(p);
      ASSERT_EQ(fast, testing::balanced_by_definition(net, p)) << to_normal_form(p);
      balanced_seen += fast;
    }
  }
  EXPECT_GT(balanced_seen, 600u);  // keeps the agreement from being vacuous
}

TEST(BalanceOracleTest, SampledAgreementOnLargerNetworks) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 7 + trial % 6;
    const Network net = testing::random_network(rng, n, 3, true);
    // half the samples use the top node so balanced cases show up
    const Partition p = trial % 2 ? minimal_balanced_coloring(net) : testing::random_partition(rng, n);
    EXPECT_EQ(is_balanced(net, p), is_balanced_projection_oracle(net, p));
    EXPECT_EQ(is_balanced(net, p), testing::balanced_by_definition(net, p));
  }
}

TEST(BalancePropertyTest, BalancedRefinesInputEquivalenceAndQuotientsAgree) {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Network net = testing::random_network(rng, n, 3, true);
    const Partition ie = input_equivalence(net);
    for (const auto& p : enumerate_all(n)) {
      if (!is_balanced(net, p)) continue;
      EXPECT_TRUE(refines(p, ie));
      expect_representative_independent(net, p);
      const auto q = quotient(net, p);
      for (std::size_t k = 0; k < net.arrow_types(); ++k)
        for (std::size_t s = 0; s < p.rank(); ++s)
          EXPECT_EQ(q.quotient.matrices[k].row_sum(s), net.matrices[k].row_sum(q.representatives[s]));
    }
  }
}

TEST(BalancePropertyTest, Equivariance) {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Network net = testing::random_network(rng, n, 3, trial % 3 != 0);
    const auto sigma = testing::random_permutation(rng, n);
    const Network moved = testing::relabel(net, sigma);
    for (int s = 0; s < 20; ++s) {
      const Partition p = testing::random_partition(rng, n);
      EXPECT_EQ(is_balanced(net, p), is_balanced(moved, testing::relabel(p, sigma)));
    }
  }
}

}  // namespace
}  // namespace cellsync
