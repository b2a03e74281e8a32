#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "satotate/groups.hpp"

namespace satotate {

/// Radical inverse of `index` in `base` (the Halton coordinate).
double halton(std::uint64_t index, unsigned base);

/// Deterministic verification grid of `count` Halton points on one component
/// (a single point on a rank-0 component).
std::vector<ClassPoint> halton_grid(const GroupModel& model, int component, int count = 1000);

/// Per-component grids concatenated in component order.
std::vector<ClassPoint> halton_grid_all(const GroupModel& model, int count = 1000);

/// Uniform doubles in [0, 1) from mt19937_64, portable across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed class points: uniform component, then rejection sampling
/// from the Weyl density on that component.
std::vector<ClassPoint> sample_haar_points(const GroupModel& model, std::size_t n, std::uint64_t seed);

}  // namespace satotate
