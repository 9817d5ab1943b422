#include "enaslab/block_network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "enaslab/parallel.hpp"

namespace enaslab {

PlacedBlock make_block(BlockKind kind, int sector, const UniformInstance& inst) {
  if (sector < 0 || sector >= inst.n()) throw std::out_of_range("block sector out of range");
  const double width = inst.sector_width();
  const double start = sector * width;
  const double centre = start + 0.5 * width;
  constexpr double quarter_turn = 0.5 * std::numbers::pi;
  // Left of the start ray and right of the end ray; normals differ by 2 pi/n.
  const ThresholdUnit lower_edge{start + quarter_turn, 0.0, Sense::AtLeast};
  const ThresholdUnit upper_edge{start + width + quarter_turn, 0.0, Sense::AtMost};

  PlacedBlock block{kind, sector, {}};
  switch (kind) {
    case BlockKind::A:
      block.neurons = {{centre, inst.chord_distance(), Sense::AtLeast}};
      break;
    case BlockKind::B:
      block.neurons = {lower_edge, upper_edge};
      break;
    case BlockKind::C:
      block.neurons = {lower_edge, upper_edge, {centre, inst.chord_distance(), Sense::AtMost}};
      break;
  }
  return block;
}

Classifier::Classifier(UniformInstance inst, std::vector<PlacedBlock> blocks)
    : instance_(inst), blocks_(std::move(blocks)) {
  for (const PlacedBlock& block : blocks_) {
    const std::size_t first = units_.size();
    for (const ThresholdUnit& unit : block.neurons) {
      units_.push_back(
          {std::cos(unit.weight_angle), std::sin(unit.weight_angle), unit.bias, unit.sense});
    }
    compiled_.push_back({first, units_.size()});
  }
}

int Classifier::classify_xy(double x, double y) const {
  for (const CompiledBlock& block : compiled_) {
    bool fires = true;
    for (std::size_t u = block.first; u < block.last && fires; ++u) {
      const CompiledUnit& unit = units_[u];
      const double activation = unit.wx * x + unit.wy * y;
      fires = unit.sense == Sense::AtLeast ? activation >= unit.bias : activation <= unit.bias;
    }
    if (fires) return 1;
  }
  return 0;
}

int Classifier::classify(const DiskPoint& p) const {
  return classify_xy(p.r * std::cos(p.phi), p.r * std::sin(p.phi));
}

namespace {

std::vector<int> sectors_of_kind(const UniformInstance& inst, RegionKind kind) {
  std::vector<int> out;
  for (int k = 0; k < inst.n(); ++k) {
    if (region_of(inst, k).kind == kind) out.push_back(k);
  }
  return out;
}

void place(std::vector<PlacedBlock>& blocks, const UniformInstance& inst, BlockKind kind,
           const std::vector<int>& sectors, int from, int count) {
  for (int t = 0; t < count; ++t) blocks.push_back(make_block(kind, sectors.at(from + t), inst));
}

}  // namespace

Classifier build_network(const Allocation& al, const UniformInstance& inst) {
  if (!fits_regions(al, inst)) {
    throw std::invalid_argument("cannot build network: allocation over-covers regions");
  }
  const std::vector<int> a_regions = sectors_of_kind(inst, RegionKind::A);
  const std::vector<int> b_regions = sectors_of_kind(inst, RegionKind::B);
  const std::vector<int> c_regions = sectors_of_kind(inst, RegionKind::C);

  std::vector<PlacedBlock> blocks;
  place(blocks, inst, BlockKind::B, b_regions, 0, al.b_on_b);
  place(blocks, inst, BlockKind::C, c_regions, 0, al.c_on_c);
  place(blocks, inst, BlockKind::C, b_regions, al.b_on_b, al.c_on_b);
  place(blocks, inst, BlockKind::B, c_regions, al.c_on_c, al.b_on_c);
  place(blocks, inst, BlockKind::A, a_regions, 0, al.a_on_a);
  // Fills the segments above C-covered B triangles first ("A+C" pairs).
  place(blocks, inst, BlockKind::A, b_regions, al.b_on_b, al.a_on_b);
  return Classifier(inst, std::move(blocks));
}

AccuracyEstimate accuracy_from_counts(std::int64_t correct, std::int64_t samples) {
  const double p = static_cast<double>(correct) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, correct};
}

namespace {

std::int64_t count_correct(const Classifier& cl, std::int64_t samples, Rng& rng) {
  const UniformInstance& inst = cl.instance();
  std::int64_t correct = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const DiskPoint p = sample_disk_point(rng);
    if (cl.classify(p) == label_point(inst, p)) ++correct;
  }
  return correct;
}

constexpr std::int64_t kChunk = 1 << 16;

}  // namespace

AccuracyEstimate monte_carlo_accuracy(const Classifier& cl, std::int64_t samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_accuracy needs samples >= 1");
  return accuracy_from_counts(count_correct(cl, samples, rng), samples);
}

AccuracyEstimate monte_carlo_accuracy(const Classifier& cl, std::int64_t samples,
                                      std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_accuracy needs samples >= 1");
  const auto chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<std::int64_t> correct(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t chunk) {
    const std::int64_t begin = static_cast<std::int64_t>(chunk) * kChunk;
    const std::int64_t size = std::min(kChunk, samples - begin);
    Rng rng(derive_seed(seed, {chunk}));
    correct[chunk] = count_correct(cl, size, rng);
  });
  std::int64_t total = 0;
  for (const std::int64_t c : correct) total += c;
  return accuracy_from_counts(total, samples);
}

}  // namespace enaslab
