#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gliomorph/volio/label_volume.hpp"
#include "gliomorph/volio/structure_map.hpp"

namespace gliomorph::morpho {

// Unweighted mean of voxel-center coordinates (mm) over the mask; empty if
// no voxel carries one of the labels.
std::optional<std::array<double, 3>> center_of_mass(const volio::LabelVolume& volume,
                                                    std::span<const std::int32_t> labels);

// Volume of each tumor component in millilitres (voxel count times voxel
// volume in mm^3, divided by 1000). Components absent from the map or from
// the volume contribute 0.
std::array<double, 4> component_volumes(const volio::LabelVolume& volume,
                                        const volio::StructureMap& map);

// One subject's imaging features.
struct FeatureRow {
  std::vector<double> hd95;                     // per structure, map order
  std::optional<std::array<double, 3>> com;     // tumor center of mass, mm; empty if no tumor
  double cev = 0.0;                             // enhancing component volume, mL
  std::array<double, 4> tcv{0, 0, 0, 0};        // component volumes, mL, component order
};

// Hd95 for every structure in map order, tumor center of mass over all
// tumor labels, and component volumes. Both volumes must share the grid and
// must not contain labels outside the map.
FeatureRow extract_feature_row(const volio::LabelVolume& subject,
                               const volio::LabelVolume& atlas,
                               const volio::StructureMap& map);

// Serialized column order: hd95_<structure> per structure in map order, then
// com_x, com_y, com_z, cev, tcv_edema, tcv_enhancing, tcv_nonenhancing,
// tcv_cavity.
std::vector<std::string> feature_column_names(const volio::StructureMap& map);

// Feature row flattened in feature_column_names order; a missing center of
// mass becomes the missing marker.
std::vector<double> flatten_feature_row(const FeatureRow& row);

// Validation helper: every non-zero label in the volume must belong to the
// map (a structure or a tumor component).
void check_labels_mapped(const volio::LabelVolume& volume, const volio::StructureMap& map,
                         const std::string& what);

}  // namespace gliomorph::morpho
