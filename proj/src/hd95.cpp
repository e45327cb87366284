#include "gliomorph/morpho/hd95.hpp"

#include <algorithm>
#include <cmath>

#include "gliomorph/detail/kdtree.hpp"
#include "gliomorph/morpho/features.hpp"

namespace gliomorph::morpho {

namespace {

void append_directed_distances(const BorderPointSet& from, const BorderPointSet& to,
                               std::vector<double>& pooled) {
  detail::VoxelKdTree tree(to.points, to.spacing);
  for (const auto& p : from.points) pooled.push_back(std::sqrt(tree.nearest_sq(p)));
}

}  // namespace

double hd95(const BorderPointSet& a, const BorderPointSet& b) {
  if (a.points.empty() || b.points.empty())
    fail(ErrorKind::Validation, "hd95 requires non-empty point sets");
  if (a.spacing != b.spacing) fail(ErrorKind::Validation, "hd95 requires identical spacing");

  std::vector<double> pooled;
  pooled.reserve(a.points.size() + b.points.size());
  append_directed_distances(a, b, pooled);
  append_directed_distances(b, a, pooled);

  // nearest-rank percentile: 1-based index ceil(0.95 n), in integers
  std::size_t n = pooled.size();
  std::size_t rank = (19 * n + 19) / 20;
  std::nth_element(pooled.begin(), pooled.begin() + (rank - 1), pooled.end());
  return pooled[rank - 1];
}

double structure_hd95(const volio::LabelVolume& subject, const volio::LabelVolume& atlas,
                      const volio::Structure& structure) {
  if (!subject.same_grid(atlas))
    fail(ErrorKind::Validation, "subject and atlas must share dims and spacing");

  BorderPointSet atlas_border = extract_border(atlas, structure.labels);
  if (atlas_border.points.empty())
    fail(ErrorKind::Data, "atlas structure is empty: " + structure.name);

  BorderPointSet subject_border = extract_border(subject, structure.labels);
  if (subject_border.points.empty()) {
    auto com = center_of_mass(atlas, structure.labels);
    // com is present: the atlas border was non-empty
    std::array<int, 3> voxel;
    for (int d = 0; d < 3; ++d) {
      double q = (*com)[d] / atlas.spacing()[d];
      int lo = static_cast<int>(std::floor(q));
      int hi = lo + 1;
      double d_lo = std::fabs(static_cast<double>(lo) * atlas.spacing()[d] - (*com)[d]);
      double d_hi = std::fabs(static_cast<double>(hi) * atlas.spacing()[d] - (*com)[d]);
      int pick = d_lo <= d_hi ? lo : hi;  // tie goes to the smaller index
      pick = std::clamp(pick, 0, atlas.dims()[d] - 1);
      voxel[d] = pick;
    }
    subject_border.points.push_back(voxel);
    subject_border.spacing = subject.spacing();
  }

  return hd95(subject_border, atlas_border);
}

}  // namespace gliomorph::morpho
