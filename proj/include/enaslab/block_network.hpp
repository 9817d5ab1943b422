#pragma once

#include <cstdint>
#include <vector>

#include "enaslab/fitness_model.hpp"
#include "enaslab/random.hpp"
#include "enaslab/uniform_geometry.hpp"

namespace enaslab {

enum class Sense { AtLeast, AtMost };

/// Binary threshold unit: fires iff r cos(phi - weight_angle) >= bias
/// (AtLeast) or <= bias (AtMost).
struct ThresholdUnit {
  double weight_angle;
  double bias;
  Sense sense;
};

/// A block is the AND of its units.
struct PlacedBlock {
  BlockKind kind;
  int sector;
  std::vector<ThresholdUnit> neurons;
};

/// Fixed-parameter block for a sector:
///   A: one unit at the sector centre with bias cos(pi/n), AtLeast (segment)
///   B: two zero-bias units with normals 2 pi/n apart bounding the sector
///   C: the two B units plus the A unit flipped to AtMost (triangle)
PlacedBlock make_block(BlockKind kind, int sector, const UniformInstance& inst);

/// OR over blocks. Immutable after construction.
class Classifier {
 public:
  Classifier(UniformInstance inst, std::vector<PlacedBlock> blocks);

  int classify(const DiskPoint& p) const;
  int classify_xy(double x, double y) const;

  const UniformInstance& instance() const noexcept { return instance_; }
  const std::vector<PlacedBlock>& blocks() const noexcept { return blocks_; }

 private:
  struct CompiledUnit {
    double wx, wy, bias;
    Sense sense;
  };
  struct CompiledBlock {
    std::size_t first, last;
  };

  UniformInstance instance_;
  std::vector<PlacedBlock> blocks_;
  std::vector<CompiledUnit> units_;
  std::vector<CompiledBlock> compiled_;
};

/// Places the allocation on concrete sectors, lowest index first:
/// B blocks on B-regions, then C blocks on C-regions, leftover C blocks on
/// the next B-regions, leftover B blocks on the next C-regions, A blocks on
/// A-regions and leftover A blocks on B-regions not taken by B blocks.
/// Throws std::invalid_argument for an allocation that over-covers regions.
Classifier build_network(const Allocation& al, const UniformInstance& inst);

struct AccuracyEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t correct = 0;
};

AccuracyEstimate accuracy_from_counts(std::int64_t correct, std::int64_t samples);

/// Fraction of uniformly sampled disk points where the classifier agrees
/// with the ground-truth label. Requires samples >= 1.
AccuracyEstimate monte_carlo_accuracy(const Classifier& cl, std::int64_t samples, Rng& rng);

/// Sharded variant: samples are cut into fixed-size chunks with one derived
/// stream each, so the result depends on (seed, samples) but not on workers.
AccuracyEstimate monte_carlo_accuracy(const Classifier& cl, std::int64_t samples,
                                      std::uint64_t seed, int workers);

}  // namespace enaslab
