#include "ctgeo/probes.hpp"

namespace ctgeo {

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

ProbeGrid halton_grid(const DomainBox& box, int count, std::uint64_t seed,
                      double tolerance) {
  if (count <= 0) throw ArgumentError("probe count must be positive");
  constexpr std::array<int, 3> kBases = {2, 3, 5};
  constexpr double kShrink = 0.05;
  ProbeGrid grid;
  grid.seed = seed;
  grid.tolerance = tolerance;
  grid.points.reserve(count);
  const std::uint64_t start = 1 + seed * 1009;
  for (int n = 0; n < count; ++n) {
    Point p;
    for (int a = 0; a < 3; ++a) {
      const double width = box[a].hi - box[a].lo;
      const double lo = box[a].lo + kShrink * width;
      const double hi = box[a].hi - kShrink * width;
      p[a] = lo + (hi - lo) * radical_inverse(start + n, kBases[a]);
    }
    grid.points.push_back(p);
  }
  return grid;
}

}  // namespace ctgeo
