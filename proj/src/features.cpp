#include "gliomorph/morpho/features.hpp"

#include <algorithm>
#include <unordered_set>

#include "gliomorph/morpho/hd95.hpp"
#include "gliomorph/volio/cohort.hpp"

namespace gliomorph::morpho {

std::optional<std::array<double, 3>> center_of_mass(const volio::LabelVolume& volume,
                                                    std::span<const std::int32_t> labels) {
  std::int32_t max_label = 0;
  for (auto l : labels) max_label = std::max(max_label, l);
  std::vector<std::uint8_t> lut(static_cast<std::size_t>(max_label) + 1, 0);
  for (auto l : labels)
    if (l >= 0) lut[l] = 1;

  const auto& dims = volume.dims();
  const auto& data = volume.data();
  double sx = 0.0, sy = 0.0, sz = 0.0;
  std::size_t count = 0;
  std::size_t idx = 0;
  for (int z = 0; z < dims[2]; ++z) {
    for (int y = 0; y < dims[1]; ++y) {
      for (int x = 0; x < dims[0]; ++x, ++idx) {
        std::int32_t v = data[idx];
        if (v > 0 && v <= max_label && lut[v]) {
          sx += x;
          sy += y;
          sz += z;
          ++count;
        }
      }
    }
  }
  if (count == 0) return std::nullopt;
  double n = static_cast<double>(count);
  return std::array<double, 3>{sx / n * volume.spacing()[0], sy / n * volume.spacing()[1],
                               sz / n * volume.spacing()[2]};
}

std::array<double, 4> component_volumes(const volio::LabelVolume& volume,
                                        const volio::StructureMap& map) {
  std::array<std::int64_t, 4> counts{0, 0, 0, 0};
  std::array<std::int32_t, 4> wanted{-1, -1, -1, -1};
  for (int c = 0; c < 4; ++c)
    if (map.tumor_labels[c]) wanted[c] = *map.tumor_labels[c];

  for (std::int32_t v : volume.data()) {
    if (v == 0) continue;
    for (int c = 0; c < 4; ++c)
      if (v == wanted[c]) ++counts[c];
  }

  double voxel_ml = volume.voxel_volume_mm3() / 1000.0;
  std::array<double, 4> out;
  for (int c = 0; c < 4; ++c) out[c] = static_cast<double>(counts[c]) * voxel_ml;
  return out;
}

void check_labels_mapped(const volio::LabelVolume& volume, const volio::StructureMap& map,
                         const std::string& what) {
  std::unordered_set<std::int32_t> known;
  for (const auto& s : map.structures)
    for (auto l : s.labels) known.insert(l);
  for (auto l : map.present_tumor_labels()) known.insert(l);

  std::unordered_set<std::int32_t> reported;
  for (std::int32_t v : volume.data()) {
    if (v == 0) continue;
    if (!known.contains(v) && reported.insert(v).second)
      fail(ErrorKind::Validation,
           what + ": label " + std::to_string(v) + " is not in the structure map");
  }
}

FeatureRow extract_feature_row(const volio::LabelVolume& subject,
                               const volio::LabelVolume& atlas,
                               const volio::StructureMap& map) {
  if (!subject.same_grid(atlas))
    fail(ErrorKind::Validation, "subject and atlas must share dims and spacing");
  check_labels_mapped(subject, map, "subject volume");
  check_labels_mapped(atlas, map, "atlas volume");

  FeatureRow row;
  row.hd95.reserve(map.structures.size());
  for (const auto& s : map.structures) row.hd95.push_back(structure_hd95(subject, atlas, s));

  auto tumor_labels = map.present_tumor_labels();
  if (!tumor_labels.empty()) row.com = center_of_mass(subject, tumor_labels);
  row.tcv = component_volumes(subject, map);
  row.cev = row.tcv[static_cast<int>(volio::TumorComponent::Enhancing)];
  return row;
}

std::vector<std::string> feature_column_names(const volio::StructureMap& map) {
  std::vector<std::string> cols;
  cols.reserve(map.structures.size() + 8);
  for (const auto& s : map.structures) cols.push_back("hd95_" + s.name);
  cols.insert(cols.end(), {"com_x", "com_y", "com_z", "cev"});
  for (const char* c : volio::kTumorComponentNames) cols.push_back(std::string("tcv_") + c);
  return cols;
}

std::vector<double> flatten_feature_row(const FeatureRow& row) {
  std::vector<double> out;
  out.reserve(row.hd95.size() + 8);
  out.insert(out.end(), row.hd95.begin(), row.hd95.end());
  for (int d = 0; d < 3; ++d) out.push_back(row.com ? (*row.com)[d] : volio::missing_value());
  out.push_back(row.cev);
  for (int c = 0; c < 4; ++c) out.push_back(row.tcv[c]);
  return out;
}

}  // namespace gliomorph::morpho
