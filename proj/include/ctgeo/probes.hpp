#pragma once

#include <cstdint>
#include <vector>

#include "ctgeo/field.hpp"

namespace ctgeo {

struct ProbeGrid {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

/// Halton points (bases 2, 3, 5) in the box shrunk by 5% per side. The seed
/// offsets the sequence start, so distinct seeds give disjoint point sets.
ProbeGrid halton_grid(const DomainBox& box, int count, std::uint64_t seed,
                      double tolerance);

double radical_inverse(std::uint64_t index, int base);

}  // namespace ctgeo
