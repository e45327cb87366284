#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gliomorph/volio/label_volume.hpp"

namespace gliomorph::morpho {

// Voxel indices of a structure's border, with the grid spacing needed to
// place them in physical space. Points are unique and sorted
// lexicographically by (x, y, z).
struct BorderPointSet {
  std::vector<std::array<int, 3>> points;
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
};

// Border voxels of the mask {v : label(v) in labels}: mask voxels with at
// least one of their six face neighbours outside the mask. The volume edge
// counts as outside.
BorderPointSet extract_border(const volio::LabelVolume& volume,
                              std::span<const std::int32_t> labels);

}  // namespace gliomorph::morpho
