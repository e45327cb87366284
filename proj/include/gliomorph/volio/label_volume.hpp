#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gliomorph/error.hpp"

namespace gliomorph::volio {

// Dense 3D label image on a regular grid. Voxel (x, y, z) has its center at
// physical position (x*spacing[0], y*spacing[1], z*spacing[2]) mm. Storage is
// x-fastest. Label 0 is background; labels are non-negative.
class LabelVolume {
 public:
  LabelVolume(std::array<int, 3> dims, std::array<double, 3> spacing)
      : dims_(dims), spacing_(spacing) {
    for (int d = 0; d < 3; ++d) {
      if (dims_[d] < 1) fail(ErrorKind::Validation, "volume dims must be >= 1");
      if (!(spacing_[d] > 0.0)) fail(ErrorKind::Validation, "voxel spacing must be positive");
    }
    labels_.assign(static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2], 0);
  }

  const std::array<int, 3>& dims() const noexcept { return dims_; }
  const std::array<double, 3>& spacing() const noexcept { return spacing_; }
  std::size_t voxel_count() const noexcept { return labels_.size(); }

  std::size_t index(int x, int y, int z) const noexcept {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims_[0]) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims_[1]) * z);
  }

  std::int32_t at(int x, int y, int z) const {
    check_bounds(x, y, z);
    return labels_[index(x, y, z)];
  }

  void set(int x, int y, int z, std::int32_t value) {
    check_bounds(x, y, z);
    if (value < 0) fail(ErrorKind::Validation, "labels must be non-negative");
    labels_[index(x, y, z)] = value;
  }

  // Raw x-fastest payload; used by readers/writers and full-volume scans.
  const std::vector<std::int32_t>& data() const noexcept { return labels_; }
  std::vector<std::int32_t>& mutable_data() noexcept { return labels_; }

  bool same_grid(const LabelVolume& other) const noexcept {
    return dims_ == other.dims_ && spacing_ == other.spacing_;
  }

  double voxel_volume_mm3() const noexcept { return spacing_[0] * spacing_[1] * spacing_[2]; }

 private:
  void check_bounds(int x, int y, int z) const {
    if (x < 0 || y < 0 || z < 0 || x >= dims_[0] || y >= dims_[1] || z >= dims_[2])
      fail(ErrorKind::Validation, "voxel index out of bounds");
  }

  std::array<int, 3> dims_;
  std::array<double, 3> spacing_;
  std::vector<std::int32_t> labels_;
};

}  // namespace gliomorph::volio
