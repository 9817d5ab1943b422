#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "enaslab/fitness_model.hpp"
#include "enaslab/random.hpp"

namespace enaslab {

// (1+1) evolutionary architecture search over block counts.

struct AddBlock {
  BlockKind kind;
  friend bool operator==(const AddBlock&, const AddBlock&) = default;
};
struct RemoveBlock {
  BlockKind kind;
  friend bool operator==(const RemoveBlock&, const RemoveBlock&) = default;
};
/// Turns one block of `from` into one block of `to`; from != to.
struct ModifyBlock {
  BlockKind from;
  BlockKind to;
  friend bool operator==(const ModifyBlock&, const ModifyBlock&) = default;
};

using MutationOp = std::variant<AddBlock, RemoveBlock, ModifyBlock>;

/// Dense index in [0, 12): Add A/B/C = 0..2, Remove A/B/C = 3..5,
/// Modify A->B, A->C, B->A, B->C, C->A, C->B = 6..11.
int operator_index(const MutationOp& op);
MutationOp operator_from_index(int index);

enum class MutationMode { OneBit, MultiBit };

const char* to_string(MutationMode mode) noexcept;

/// n_A, n_B, n_C drawn independently and uniformly from {0, ..., s}.
Architecture init_architecture(int s, Rng& rng);

/// Operator class uniform over {Add, Remove, Modify}; kind uniform over
/// {A, B, C}; a Modify target is uniform over the two other kinds.
MutationOp sample_op(Rng& rng);

/// Remove and Modify on an empty source kind leave x unchanged.
Architecture apply_op(Architecture x, const MutationOp& op);

/// Number of operators per generation: 1 for OneBit, 1 + Poisson(1) for
/// MultiBit (product-of-uniforms method).
int sample_k(MutationMode mode, Rng& rng);

struct Mutation {
  Architecture offspring;
  int k;
};

/// Applies K independently drawn operators sequentially.
Mutation mutate(const Architecture& x, MutationMode mode, Rng& rng);

struct TrialConfig {
  int n = 16;
  int s = 4;
  MutationMode mode = MutationMode::OneBit;
  Semantics semantics = Semantics::Literal;
  std::uint64_t seed = 0;
  std::int64_t max_generations = 10'000'000;
  bool record_trajectory = false;
  /// Accept only strictly better offspring instead of better-or-equal.
  bool strict_selection = false;
};

/// Parent state after a generation. Generation 0 is the initial solution
/// (k = 0, accepted = true).
struct TrajectoryRecord {
  std::int64_t generation;
  Architecture parent;
  Levels levels;
  bool accepted;
  int k;
};

struct TrialResult {
  std::int64_t generations = 0;  // offspring evaluations until optimal
  Architecture initial;
  Architecture final;
  bool hit_cap = false;
  std::optional<std::vector<TrajectoryRecord>> trajectory;
};

/// Throws std::invalid_argument for an invalid configuration.
void validate(const TrialConfig& cfg);

/// Elitist loop until the parent is optimal under cfg.semantics or the
/// generation cap is hit. Deterministic in cfg.
TrialResult run_trial(const TrialConfig& cfg);

}  // namespace enaslab
