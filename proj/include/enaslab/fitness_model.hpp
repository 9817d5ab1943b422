#pragma once

#include <compare>

#include "enaslab/uniform_geometry.hpp"

namespace enaslab {

enum class BlockKind { A, B, C };

const char* to_string(BlockKind kind) noexcept;

/// Search point of the architecture search: block counts per type.
/// Counts are unbounded above during search.
struct Architecture {
  int n_a = 0;
  int n_b = 0;
  int n_c = 0;

  int& count(BlockKind kind) noexcept;
  int count(BlockKind kind) const noexcept;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// Level pair (i, j). The defaulted ordering is lexicographic, which is the
/// fitness order for every valid instance.
struct Levels {
  int i = 0;  // triangles correctly classified
  int j = 0;  // green segments correct minus white segments misclassified

  friend auto operator<=>(const Levels&, const Levels&) = default;
};

enum class Semantics { Literal, Placement };

const char* to_string(Semantics semantics) noexcept;

struct FitnessScore {
  Levels levels;
  double value = 0.0;  // classification accuracy in [0, 1]
  Semantics semantics = Semantics::Literal;
};

/// Assignment of blocks to regions. Field names read "<block>_on_<region>".
struct Allocation {
  int b_on_b = 0;  // B blocks on B-regions (whole green sector)
  int b_on_c = 0;  // B blocks on C-regions (green triangle + white segment)
  int c_on_c = 0;  // C blocks on C-region triangles
  int c_on_b = 0;  // C blocks on B-region triangles
  int a_on_a = 0;  // A blocks on A-region segments
  int a_on_b = 0;  // A blocks on B-region segments

  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

// Fitness as an affine function of the levels:
//   f = ((n/2 + i) T + (n/4 + j) S) / pi
double fitness_value(Levels levels, const UniformInstance& inst);

/// The level pair of a global optimum, (b + c, a + b).
Levels optimal_levels(const UniformInstance& inst);

/// Closed-form levels:
///   i = min(nB, b) + min(nC, c)
///   j = min(nA, a) + min(nB, b) - max(0, min(nB - b, c - nC))
Levels literal_levels(const Architecture& x, const UniformInstance& inst);
FitnessScore literal_fitness(const Architecture& x, const UniformInstance& inst);

/// Region-side constraints only: no triangle or segment covered twice, and
/// every field non-negative.
bool fits_regions(const Allocation& al, const UniformInstance& inst);
/// Region constraints plus block budget of x.
bool is_feasible(const Allocation& al, const Architecture& x, const UniformInstance& inst);

/// Throws std::invalid_argument if the allocation violates region constraints.
Levels allocation_levels(const Allocation& al, const UniformInstance& inst);

/// Exhaustive search over all feasible allocations maximising T*i + S*j.
/// Ties go to the lexicographically smallest allocation. Block counts are
/// clamped to their largest useful values (nA to a+b, nB and nC to b+c);
/// throws std::length_error if any clamped count exceeds cap.
Allocation best_allocation_bruteforce(const Architecture& x, const UniformInstance& inst,
                                      int cap);

/// Closed-form optimal placement (six greedy steps).
Allocation best_allocation_greedy(const Architecture& x, const UniformInstance& inst);

FitnessScore placement_fitness(const Architecture& x, const UniformInstance& inst);

FitnessScore evaluate(const Architecture& x, const UniformInstance& inst, Semantics semantics);

/// Exact comparison on levels; never compares reals. Throws
/// std::invalid_argument when the scores come from different semantics.
std::strong_ordering compare(const FitnessScore& lhs, const FitnessScore& rhs);

bool is_optimal(const Architecture& x, const UniformInstance& inst, Semantics semantics);

}  // namespace enaslab
