#include "gliomorph/morpho/border.hpp"

#include <algorithm>

namespace gliomorph::morpho {

namespace {

// Membership test as a dense byte mask over the volume; cheaper than set
// lookups in the full-volume scan.
std::vector<std::uint8_t> build_mask(const volio::LabelVolume& volume,
                                     std::span<const std::int32_t> labels) {
  std::int32_t max_label = 0;
  for (auto l : labels) max_label = std::max(max_label, l);
  std::vector<std::uint8_t> lut(static_cast<std::size_t>(max_label) + 1, 0);
  for (auto l : labels)
    if (l >= 0) lut[l] = 1;

  const auto& data = volume.data();
  std::vector<std::uint8_t> mask(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::int32_t v = data[i];
    mask[i] = (v >= 0 && v <= max_label) ? lut[v] : 0;
  }
  return mask;
}

}  // namespace

BorderPointSet extract_border(const volio::LabelVolume& volume,
                              std::span<const std::int32_t> labels) {
  BorderPointSet out;
  out.spacing = volume.spacing();
  if (labels.empty()) return out;

  auto mask = build_mask(volume, labels);
  const auto& dims = volume.dims();
  const int nx = dims[0], ny = dims[1], nz = dims[2];
  const std::size_t sx = 1;
  const std::size_t sy = static_cast<std::size_t>(nx);
  const std::size_t sz = static_cast<std::size_t>(nx) * ny;

  std::size_t idx = 0;
  for (int z = 0; z < nz; ++z) {
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x, ++idx) {
        if (!mask[idx]) continue;
        bool border = x == 0 || x == nx - 1 || y == 0 || y == ny - 1 || z == 0 || z == nz - 1 ||
                      !mask[idx - sx] || !mask[idx + sx] || !mask[idx - sy] || !mask[idx + sy] ||
                      !mask[idx - sz] || !mask[idx + sz];
        if (border) out.points.push_back({x, y, z});
      }
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace gliomorph::morpho
