#pragma once

#include "gliomorph/morpho/border.hpp"
#include "gliomorph/volio/structure_map.hpp"

namespace gliomorph::morpho {

// 95th-percentile symmetric Hausdorff distance in millimetres. Nearest-
// neighbour distances from every point of a to b and from every point of b
// to a are pooled; the result is the pooled multiset's 95th percentile by
// the nearest-rank rule (sorted ascending, 1-based index ceil(0.95 n)).
// Distances are exact voxel-center distances; the lookup uses a spatial
// index, never an all-pairs scan. Requires two non-empty sets with
// identical spacing.
double hd95(const BorderPointSet& a, const BorderPointSet& b);

// Hd95 between a structure's borders in a subject volume and an atlas
// volume. If the structure is absent from the subject, its border set is
// replaced by the single voxel whose center is nearest the atlas
// structure's center of mass (per-axis nearest index, ties to the smaller
// index). An empty atlas structure is a data error; mismatched grids are a
// validation error.
double structure_hd95(const volio::LabelVolume& subject, const volio::LabelVolume& atlas,
                      const volio::Structure& structure);

}  // namespace gliomorph::morpho
