#include "enaslab/enas_core.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "enaslab/uniform_geometry.hpp"

namespace enaslab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr std::array<BlockKind, 3> kKinds{BlockKind::A, BlockKind::B, BlockKind::C};

int kind_index(BlockKind kind) { return static_cast<int>(kind); }

// Modify targets for each source kind, in index order.
constexpr std::array<std::array<BlockKind, 2>, 3> kModifyTargets{{
    {BlockKind::B, BlockKind::C},
    {BlockKind::A, BlockKind::C},
    {BlockKind::A, BlockKind::B},
}};

}  // namespace

const char* to_string(MutationMode mode) noexcept {
  return mode == MutationMode::OneBit ? "onebit" : "multibit";
}

int operator_index(const MutationOp& op) {
  return std::visit(
      Overloaded{
          [](const AddBlock& add) { return kind_index(add.kind); },
          [](const RemoveBlock& remove) { return 3 + kind_index(remove.kind); },
          [](const ModifyBlock& modify) {
            const auto& targets = kModifyTargets[kind_index(modify.from)];
            const int slot = targets[0] == modify.to ? 0 : 1;
            return 6 + 2 * kind_index(modify.from) + slot;
          },
      },
      op);
}

MutationOp operator_from_index(int index) {
  if (index < 0 || index >= 12) throw std::out_of_range("operator index out of range");
  if (index < 3) return AddBlock{kKinds[index]};
  if (index < 6) return RemoveBlock{kKinds[index - 3]};
  const int from = (index - 6) / 2;
  return ModifyBlock{kKinds[from], kModifyTargets[from][(index - 6) % 2]};
}

Architecture init_architecture(int s, Rng& rng) {
  if (s < 0) throw std::invalid_argument("initialisation bound s must be >= 0");
  Architecture x;
  x.n_a = static_cast<int>(rng.uniform_int(0, s));
  x.n_b = static_cast<int>(rng.uniform_int(0, s));
  x.n_c = static_cast<int>(rng.uniform_int(0, s));
  return x;
}

MutationOp sample_op(Rng& rng) {
  const auto op_class = rng.uniform_int(0, 2);
  const BlockKind kind = kKinds[rng.uniform_int(0, 2)];
  switch (op_class) {
    case 0: return AddBlock{kind};
    case 1: return RemoveBlock{kind};
    default: return ModifyBlock{kind, kModifyTargets[kind_index(kind)][rng.uniform_int(0, 1)]};
  }
}

Architecture apply_op(Architecture x, const MutationOp& op) {
  std::visit(Overloaded{
                 [&](const AddBlock& add) { ++x.count(add.kind); },
                 [&](const RemoveBlock& remove) {
                   if (x.count(remove.kind) > 0) --x.count(remove.kind);
                 },
                 [&](const ModifyBlock& modify) {
                   if (x.count(modify.from) > 0) {
                     --x.count(modify.from);
                     ++x.count(modify.to);
                   }
                 },
             },
             op);
  return x;
}

int sample_k(MutationMode mode, Rng& rng) {
  if (mode == MutationMode::OneBit) return 1;
  static const double threshold = std::exp(-1.0);
  int poisson = 0;
  double product = rng.uniform01();
  while (product > threshold) {
    ++poisson;
    product *= rng.uniform01();
  }
  return 1 + poisson;
}

Mutation mutate(const Architecture& x, MutationMode mode, Rng& rng) {
  const int k = sample_k(mode, rng);
  Architecture y = x;
  for (int t = 0; t < k; ++t) y = apply_op(y, sample_op(rng));
  return {y, k};
}

void validate(const TrialConfig& cfg) {
  make_instance(cfg.n);
  if (cfg.s < 0) throw std::invalid_argument("initialisation bound s must be >= 0");
  if (cfg.max_generations < 1) throw std::invalid_argument("max_generations must be >= 1");
}

TrialResult run_trial(const TrialConfig& cfg) {
  validate(cfg);
  const UniformInstance inst = make_instance(cfg.n);
  const Levels target = optimal_levels(inst);
  Rng rng(cfg.seed);

  TrialResult result;
  Architecture parent = init_architecture(cfg.s, rng);
  FitnessScore parent_score = evaluate(parent, inst, cfg.semantics);
  result.initial = parent;
  if (cfg.record_trajectory) {
    result.trajectory.emplace();
    result.trajectory->push_back({0, parent, parent_score.levels, true, 0});
  }

  std::int64_t generation = 0;
  while (parent_score.levels != target) {
    if (generation >= cfg.max_generations) {
      result.hit_cap = true;
      break;
    }
    ++generation;
    const Mutation mutation = mutate(parent, cfg.mode, rng);
    const FitnessScore child_score = evaluate(mutation.offspring, inst, cfg.semantics);
    const auto order = compare(child_score, parent_score);
    const bool accepted = cfg.strict_selection ? order > 0 : order >= 0;
    if (accepted) {
      parent = mutation.offspring;
      parent_score = child_score;
    }
    if (result.trajectory) {
      result.trajectory->push_back(
          {generation, parent, parent_score.levels, accepted, mutation.k});
    }
  }
  result.generations = generation;
  result.final = parent;
  return result;
}

}  // namespace enaslab
