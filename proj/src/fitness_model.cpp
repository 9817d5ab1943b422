#include "enaslab/fitness_model.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace enaslab {

const char* to_string(BlockKind kind) noexcept {
  switch (kind) {
    case BlockKind::A: return "A";
    case BlockKind::B: return "B";
    case BlockKind::C: return "C";
  }
  return "?";
}

const char* to_string(Semantics semantics) noexcept {
  return semantics == Semantics::Literal ? "literal" : "placement";
}

int& Architecture::count(BlockKind kind) noexcept {
  switch (kind) {
    case BlockKind::A: return n_a;
    case BlockKind::B: return n_b;
    case BlockKind::C: break;
  }
  return n_c;
}

int Architecture::count(BlockKind kind) const noexcept {
  return const_cast<Architecture&>(*this).count(kind);
}

double fitness_value(Levels levels, const UniformInstance& inst) {
  const double n = inst.n();
  return ((n / 2.0 + levels.i) * inst.triangle_area() +
          (n / 4.0 + levels.j) * inst.segment_area()) /
         std::numbers::pi;
}

Levels optimal_levels(const UniformInstance& inst) {
  return {inst.b() + inst.c(), inst.a() + inst.b()};
}

Levels literal_levels(const Architecture& x, const UniformInstance& inst) {
  const int a = inst.a(), b = inst.b(), c = inst.c();
  const int i = std::min(x.n_b, b) + std::min(x.n_c, c);
  const int penalty = std::max(0, std::min(x.n_b - b, c - x.n_c));
  const int j = std::min(x.n_a, a) + std::min(x.n_b, b) - penalty;
  return {i, j};
}

FitnessScore literal_fitness(const Architecture& x, const UniformInstance& inst) {
  const Levels levels = literal_levels(x, inst);
  return {levels, fitness_value(levels, inst), Semantics::Literal};
}

bool fits_regions(const Allocation& al, const UniformInstance& inst) {
  const bool non_negative = al.b_on_b >= 0 && al.b_on_c >= 0 && al.c_on_c >= 0 &&
                            al.c_on_b >= 0 && al.a_on_a >= 0 && al.a_on_b >= 0;
  return non_negative &&
         al.b_on_b + al.c_on_b <= inst.b() &&  // B-region triangles
         al.c_on_c + al.b_on_c <= inst.c() &&  // C-region triangles
         al.a_on_a <= inst.a() &&              // A-region segments
         al.b_on_b + al.a_on_b <= inst.b();    // B-region segments
}

bool is_feasible(const Allocation& al, const Architecture& x, const UniformInstance& inst) {
  return fits_regions(al, inst) && al.b_on_b + al.b_on_c <= x.n_b &&
         al.c_on_c + al.c_on_b <= x.n_c && al.a_on_a + al.a_on_b <= x.n_a;
}

Levels allocation_levels(const Allocation& al, const UniformInstance& inst) {
  if (!fits_regions(al, inst)) {
    throw std::invalid_argument("allocation over-covers regions or has negative fields");
  }
  const int i = al.b_on_b + al.c_on_b + al.c_on_c + al.b_on_c;
  const int j = al.b_on_b + al.a_on_b + al.a_on_a - al.b_on_c;
  return {i, j};
}

Allocation best_allocation_bruteforce(const Architecture& x, const UniformInstance& inst,
                                      int cap) {
  const int a = inst.a(), b = inst.b(), c = inst.c();
  const Architecture clamped{std::clamp(x.n_a, 0, a + b), std::clamp(x.n_b, 0, b + c),
                             std::clamp(x.n_c, 0, b + c)};
  if (clamped.n_a > cap || clamped.n_b > cap || clamped.n_c > cap) {
    throw std::length_error("brute-force budget exceeded: effective counts (" +
                            std::to_string(clamped.n_a) + ", " + std::to_string(clamped.n_b) +
                            ", " + std::to_string(clamped.n_c) + ") > cap " +
                            std::to_string(cap));
  }

  const double t = inst.triangle_area();
  const double s = inst.segment_area();
  Allocation best{};
  double best_score = 0.0;
  // Loops run in lexicographic field order and only strict improvements
  // replace the incumbent, so ties keep the smallest tuple.
  Allocation al{};
  for (al.b_on_b = 0; al.b_on_b <= std::min(clamped.n_b, b); ++al.b_on_b)
    for (al.b_on_c = 0; al.b_on_c <= std::min(clamped.n_b - al.b_on_b, c); ++al.b_on_c)
      for (al.c_on_c = 0; al.c_on_c <= std::min(clamped.n_c, c - al.b_on_c); ++al.c_on_c)
        for (al.c_on_b = 0; al.c_on_b <= std::min(clamped.n_c - al.c_on_c, b - al.b_on_b);
             ++al.c_on_b)
          for (al.a_on_a = 0; al.a_on_a <= std::min(clamped.n_a, a); ++al.a_on_a)
            for (al.a_on_b = 0; al.a_on_b <= std::min(clamped.n_a - al.a_on_a, b - al.b_on_b);
                 ++al.a_on_b) {
              const int i = al.b_on_b + al.c_on_b + al.c_on_c + al.b_on_c;
              const int j = al.b_on_b + al.a_on_b + al.a_on_a - al.b_on_c;
              const double score = t * i + s * j;
              if (score > best_score) {
                best_score = score;
                best = al;
              }
            }
  return best;
}

Allocation best_allocation_greedy(const Architecture& x, const UniformInstance& inst) {
  const int a = inst.a(), b = inst.b(), c = inst.c();
  const int n_a = std::max(x.n_a, 0), n_b = std::max(x.n_b, 0), n_c = std::max(x.n_c, 0);
  Allocation al;
  al.b_on_b = std::min(n_b, b);
  al.c_on_c = std::min(n_c, c);
  al.c_on_b = std::min(n_c - al.c_on_c, b - al.b_on_b);
  al.b_on_c = std::min(n_b - al.b_on_b, c - al.c_on_c);
  al.a_on_a = std::min(n_a, a);
  al.a_on_b = std::min(n_a - al.a_on_a, b - al.b_on_b);
  return al;
}

FitnessScore placement_fitness(const Architecture& x, const UniformInstance& inst) {
  const Levels levels = allocation_levels(best_allocation_greedy(x, inst), inst);
  return {levels, fitness_value(levels, inst), Semantics::Placement};
}

FitnessScore evaluate(const Architecture& x, const UniformInstance& inst, Semantics semantics) {
  return semantics == Semantics::Literal ? literal_fitness(x, inst) : placement_fitness(x, inst);
}

std::strong_ordering compare(const FitnessScore& lhs, const FitnessScore& rhs) {
  if (lhs.semantics != rhs.semantics) {
    throw std::invalid_argument("cannot compare literal and placement fitness scores");
  }
  return lhs.levels <=> rhs.levels;
}

bool is_optimal(const Architecture& x, const UniformInstance& inst, Semantics semantics) {
  return evaluate(x, inst, semantics).levels == optimal_levels(inst);
}

}  // namespace enaslab
