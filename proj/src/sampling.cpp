#include "satotate/sampling.hpp"

#include <algorithm>

namespace satotate {

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<ClassPoint> halton_grid(const GroupModel& model, int component, int count) {
  const ComponentSpec& spec = model.component_specs.at(component);
  if (spec.rank == 0) return {model.canonical(component, std::span<const double>{})};
  static constexpr unsigned kBases[kMaxRank] = {2, 3};
  const std::vector<Interval> box = spec.box();
  std::vector<ClassPoint> grid;
  grid.reserve(count);
  for (int i = 1; i <= count; ++i) {
    std::array<double, kMaxRank> raw{};
    for (int d = 0; d < spec.rank; ++d) {
      raw[d] = box[d].lo + halton(static_cast<std::uint64_t>(i), kBases[d]) * box[d].length();
    }
    grid.push_back(model.canonical(component, std::span<const double>(raw.data(), spec.rank)));
  }
  return grid;
}

std::vector<ClassPoint> halton_grid_all(const GroupModel& model, int count) {
  std::vector<ClassPoint> all;
  for (int c = 0; c < model.order(); ++c) {
    auto g = halton_grid(model, c, count);
    all.insert(all.end(), g.begin(), g.end());
  }
  return all;
}

std::vector<ClassPoint> sample_haar_points(const GroupModel& model, std::size_t n, std::uint64_t seed) {
  UniformSource u(seed);
  std::vector<ClassPoint> out;
  out.reserve(n);
  const int order = model.order();
  for (std::size_t k = 0; k < n; ++k) {
    const int c = std::min(order - 1, static_cast<int>(u.next() * order));
    const ComponentSpec& spec = model.component_specs[c];
    if (spec.rank == 0) {
      out.push_back(model.canonical(c, std::span<const double>{}));
      continue;
    }
    const std::vector<Interval> box = spec.box();
    std::array<double, kMaxRank> raw{};
    for (;;) {
      for (int d = 0; d < spec.rank; ++d) raw[d] = box[d].lo + u.next() * box[d].length();
      const std::span<const double> a(raw.data(), spec.rank);
      const double density = spec.weight(a) / spec.normalizer;
      if (u.next() * spec.density_bound <= density) break;
    }
    out.push_back(model.canonical(c, std::span<const double>(raw.data(), spec.rank)));
  }
  return out;
}

}  // namespace satotate
