#include "enaslab/fitness_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace enaslab {
namespace {

// 30-digit references: (n/2 T + n/4 S) / pi.
constexpr double kEmpty16 = 0.493623839601108161278819619086;
constexpr double kEmpty8 = 0.475079079039276517388799797752;

// Test-side evaluation of the literal level formula by counting blocks one
// at a time instead of through min/max algebra.
Levels literal_levels_by_counting(const Architecture& x, int a, int b, int c) {
  int i = 0, j = 0;
  for (int t = 0; t < x.n_b; ++t) {
    if (t < b) { ++i; ++j; }
  }
  for (int t = 0; t < x.n_c; ++t) {
    if (t < c) ++i;
  }
  for (int t = 0; t < x.n_a; ++t) {
    if (t < a) ++j;
  }
  // Each surplus B block without a matching C deficit is harmless; a surplus
  // B block paired with a missing C block misclassifies one white segment.
  int surplus_b = std::max(0, x.n_b - b);
  int missing_c = std::max(0, c - x.n_c);
  while (surplus_b > 0 && missing_c > 0) {
    --j;
    --surplus_b;
    --missing_c;
  }
  return {i, j};
}

TEST(FitnessModelTest, LiteralLevelsExamples) {
  const UniformInstance inst = make_instance(16);
  EXPECT_EQ(literal_levels({8, 4, 4}, inst), (Levels{8, 12}));
  EXPECT_EQ(literal_levels({0, 0, 0}, inst), (Levels{0, 0}));
  EXPECT_EQ(literal_levels({8, 6, 2}, inst), (Levels{6, 10}));
}

TEST(FitnessModelTest, LiteralLevelsMatchCountingOracle) {
  for (const int n : {8, 16, 24}) {
    const UniformInstance inst = make_instance(n);
    for (int a = 0; a <= 16; ++a)
      for (int b = 0; b <= 16; ++b)
        for (int c = 0; c <= 16; ++c) {
          const Architecture x{a, b, c};
          ASSERT_EQ(literal_levels(x, inst),
                    literal_levels_by_counting(x, inst.a(), inst.b(), inst.c()));
        }
  }
}

TEST(FitnessModelTest, LiteralFitnessValues) {
  EXPECT_NEAR(literal_fitness({8, 4, 4}, make_instance(16)).value, 1.0, 1e-12);
  EXPECT_NEAR(literal_fitness({0, 0, 0}, make_instance(16)).value, kEmpty16, 1e-12);
  EXPECT_NEAR(literal_fitness({0, 0, 0}, make_instance(8)).value, kEmpty8, 1e-12);
  EXPECT_EQ(literal_fitness({0, 0, 0}, make_instance(8)).semantics, Semantics::Literal);
}

TEST(FitnessModelTest, EndpointValuesForAllSizes) {
  for (int n = 8; n <= 200; n += 4) {
    const UniformInstance inst = make_instance(n);
    EXPECT_NEAR(fitness_value(optimal_levels(inst), inst), 1.0, 1e-12) << n;
    const double empty = (n / 2.0 * inst.triangle_area() + n / 4.0 * inst.segment_area()) /
                         std::numbers::pi;
    EXPECT_DOUBLE_EQ(fitness_value({0, 0}, inst), empty);
  }
}

TEST(FitnessModelTest, AllocationLevels) {
  const UniformInstance inst = make_instance(16);
  EXPECT_EQ(allocation_levels({}, inst), (Levels{0, 0}));
  EXPECT_EQ(allocation_levels({4, 0, 4, 0, 8, 0}, inst), (Levels{8, 12}));
  EXPECT_EQ(allocation_levels({4, 2, 2, 0, 8, 0}, inst), (Levels{8, 10}));
  EXPECT_THROW(allocation_levels({5, 0, 0, 0, 0, 0}, inst), std::invalid_argument);
  EXPECT_THROW(allocation_levels({0, 0, 0, 0, -1, 0}, inst), std::invalid_argument);
  EXPECT_THROW(allocation_levels({2, 0, 0, 0, 0, 3}, inst), std::invalid_argument);
}

TEST(FitnessModelTest, GreedyExamples) {
  const UniformInstance inst = make_instance(16);
  EXPECT_EQ(best_allocation_greedy({10, 2, 6}, inst), (Allocation{2, 0, 4, 2, 8, 2}));
  EXPECT_EQ(best_allocation_greedy({8, 6, 2}, inst), (Allocation{4, 2, 2, 0, 8, 0}));
  EXPECT_EQ(best_allocation_greedy({0, 0, 0}, inst), Allocation{});
  EXPECT_EQ(allocation_levels(best_allocation_greedy({10, 2, 6}, inst), inst), (Levels{8, 12}));
}

TEST(FitnessModelTest, BruteForceExamples) {
  const UniformInstance inst = make_instance(16);
  EXPECT_EQ(allocation_levels(best_allocation_bruteforce({8, 4, 4}, inst, 10), inst),
            (Levels{8, 12}));
  EXPECT_EQ(best_allocation_bruteforce({0, 0, 0}, inst, 10), Allocation{});
  const Allocation compensated = best_allocation_bruteforce({10, 2, 6}, inst, 10);
  EXPECT_EQ(allocation_levels(compensated, inst), (Levels{8, 12}));
  EXPECT_NEAR(fitness_value(allocation_levels(compensated, inst), inst), 1.0, 1e-12);
  EXPECT_EQ(allocation_levels(best_allocation_bruteforce({8, 6, 2}, inst, 10), inst),
            (Levels{8, 10}));
}

TEST(FitnessModelTest, BruteForceBudget) {
  const UniformInstance inst = make_instance(16);
  EXPECT_THROW(best_allocation_bruteforce({0, 9, 0}, inst, 7), std::length_error);
  // Counts beyond their useful maximum are clamped before the budget check.
  EXPECT_NO_THROW(best_allocation_bruteforce({100, 100, 100}, inst, 12));
  EXPECT_EQ(allocation_levels(best_allocation_bruteforce({100, 100, 100}, inst, 12), inst),
            optimal_levels(inst));
}

TEST(FitnessModelTest, BruteForceResultIsFeasible) {
  const UniformInstance inst = make_instance(16);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = 0; c <= 6; ++c) {
        const Architecture x{a, b, c};
        EXPECT_TRUE(is_feasible(best_allocation_bruteforce(x, inst, 10), x, inst));
        EXPECT_TRUE(is_feasible(best_allocation_greedy(x, inst), x, inst));
      }
}

TEST(FitnessModelTest, GreedyMatchesBruteForce) {
  for (const int n : {8, 12, 16, 20}) {
    const UniformInstance inst = make_instance(n);
    for (int a = 0; a <= 10; ++a)
      for (int b = 0; b <= 10; ++b)
        for (int c = 0; c <= 10; ++c) {
          const Architecture x{a, b, c};
          ASSERT_EQ(allocation_levels(best_allocation_greedy(x, inst), inst),
                    allocation_levels(best_allocation_bruteforce(x, inst, 10), inst))
              << "n=" << n << " x=(" << a << ',' << b << ',' << c << ')';
        }
  }
}

TEST(FitnessModelTest, PlacementExamples) {
  const UniformInstance inst = make_instance(16);
  const FitnessScore mixed = placement_fitness({8, 6, 2}, inst);
  EXPECT_EQ(mixed.levels, (Levels{8, 10}));
  EXPECT_EQ(mixed.semantics, Semantics::Placement);
  EXPECT_NE(mixed.levels, literal_levels({8, 6, 2}, inst));
  EXPECT_NEAR(placement_fitness({8, 4, 4}, inst).value, 1.0, 1e-12);
  EXPECT_EQ(placement_fitness({0, 0, 0}, inst).levels, (Levels{0, 0}));
}

TEST(FitnessModelTest, LevelBoundsDominanceAndMonotonicity) {
  for (const int n : {8, 16, 32}) {
    const UniformInstance inst = make_instance(n);
    const Levels top = optimal_levels(inst);
    for (int a = 0; a <= 20; ++a)
      for (int b = 0; b <= 20; ++b)
        for (int c = 0; c <= 20; ++c) {
          const Architecture x{a, b, c};
          const FitnessScore lit = literal_fitness(x, inst);
          const FitnessScore pl = placement_fitness(x, inst);
          for (const FitnessScore& f : {lit, pl}) {
            ASSERT_GE(f.levels.i, 0);
            ASSERT_LE(f.levels.i, top.i);
            ASSERT_GE(f.levels.j, 0);
            ASSERT_LE(f.levels.j, top.j);
            ASSERT_GE(f.value, 0.0);
            ASSERT_LE(f.value, 1.0 + 1e-12);
          }
          ASSERT_GE(pl.levels.i, lit.levels.i);
          ASSERT_GE(pl.levels, lit.levels);
          ASSERT_GE(pl.value, lit.value - 1e-15);
          for (const BlockKind kind : {BlockKind::A, BlockKind::B, BlockKind::C}) {
            Architecture bigger = x;
            ++bigger.count(kind);
            ASSERT_GE(placement_fitness(bigger, inst).levels, pl.levels);
          }
        }
  }
}

TEST(FitnessModelTest, LexicographicOrderEqualsValueOrder) {
  for (int n = 8; n <= 100; n += 4) {
    const UniformInstance inst = make_instance(n);
    const Levels top = optimal_levels(inst);
    for (int i1 = 0; i1 <= top.i; ++i1)
      for (int j1 = 0; j1 <= top.j; ++j1)
        for (int i2 = 0; i2 <= top.i; ++i2)
          for (int j2 = 0; j2 <= top.j; ++j2) {
            const Levels l1{i1, j1}, l2{i2, j2};
            const double v1 = fitness_value(l1, inst), v2 = fitness_value(l2, inst);
            const auto lex = l1 <=> l2;
            if (lex < 0) ASSERT_LT(v1, v2);
            else if (lex > 0) ASSERT_GT(v1, v2);
          }
  }
}

TEST(FitnessModelTest, CompareExamples) {
  const UniformInstance inst = make_instance(16);
  auto score = [&](int i, int j) {
    return FitnessScore{{i, j}, fitness_value({i, j}, inst), Semantics::Literal};
  };
  EXPECT_GT(inst.triangle_area(), 12 * inst.segment_area());
  EXPECT_EQ(compare(score(3, 0), score(2, 12)), std::strong_ordering::greater);
  EXPECT_EQ(compare(score(2, 5), score(2, 5)), std::strong_ordering::equal);
  EXPECT_EQ(compare(score(0, 0), score(0, 1)), std::strong_ordering::less);
  FitnessScore other = score(0, 0);
  other.semantics = Semantics::Placement;
  EXPECT_THROW(compare(score(0, 0), other), std::invalid_argument);
}

TEST(FitnessModelTest, OptimalityExamples) {
  const UniformInstance inst = make_instance(16);
  EXPECT_TRUE(is_optimal({8, 4, 4}, inst, Semantics::Literal));
  EXPECT_TRUE(is_optimal({8, 4, 4}, inst, Semantics::Placement));
  EXPECT_TRUE(is_optimal({10, 2, 6}, inst, Semantics::Placement));
  EXPECT_FALSE(is_optimal({10, 2, 6}, inst, Semantics::Literal));
  EXPECT_FALSE(is_optimal({0, 0, 0}, inst, Semantics::Literal));
  EXPECT_FALSE(is_optimal({0, 0, 0}, inst, Semantics::Placement));
}

TEST(FitnessModelTest, OptimalityCharacterisations) {
  for (const int n : {8, 16, 24}) {
    const UniformInstance inst = make_instance(n);
    const int a = inst.a(), b = inst.b(), c = inst.c();
    for (int na = 0; na <= 24; ++na)
      for (int nb = 0; nb <= 16; ++nb)
        for (int nc = 0; nc <= 16; ++nc) {
          const Architecture x{na, nb, nc};
          ASSERT_EQ(is_optimal(x, inst, Semantics::Literal), na >= a && nb >= b && nc >= c);
          const bool threshold = na >= a + std::max(0, b - nb) && nb + nc >= b + c && nc >= c;
          ASSERT_EQ(is_optimal(x, inst, Semantics::Placement), threshold)
              << n << ' ' << na << ' ' << nb << ' ' << nc;
        }
  }
}

}  // namespace
}  // namespace enaslab
