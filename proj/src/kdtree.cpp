#include "gliomorph/detail/kdtree.hpp"

#include <algorithm>
#include <limits>

namespace gliomorph::detail {

VoxelKdTree::VoxelKdTree(std::span<const std::array<int, 3>> points,
                         std::array<double, 3> spacing)
    : spacing_(spacing) {
  scratch_.assign(points.begin(), points.end());
  nodes_.reserve(scratch_.size());
  root_ = build(0, scratch_.size());
  scratch_.clear();
  scratch_.shrink_to_fit();
}

int VoxelKdTree::build(std::size_t lo, std::size_t hi) {
  if (lo >= hi) return -1;

  // Split along the axis with the largest physical extent of this range.
  std::array<int, 3> mn = scratch_[lo], mx = scratch_[lo];
  for (std::size_t i = lo + 1; i < hi; ++i) {
    for (int d = 0; d < 3; ++d) {
      mn[d] = std::min(mn[d], scratch_[i][d]);
      mx[d] = std::max(mx[d], scratch_[i][d]);
    }
  }
  int axis = 0;
  double best_extent = -1.0;
  for (int d = 0; d < 3; ++d) {
    double extent = static_cast<double>(mx[d] - mn[d]) * spacing_[d];
    if (extent > best_extent) {
      best_extent = extent;
      axis = d;
    }
  }

  std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(scratch_.begin() + lo, scratch_.begin() + mid, scratch_.begin() + hi,
                   [axis](const std::array<int, 3>& a, const std::array<int, 3>& b) {
                     return a[axis] < b[axis];
                   });

  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back({scratch_[mid], -1, -1, axis});
  int left = build(lo, mid);
  int right = build(mid + 1, hi);
  nodes_[idx].left = left;
  nodes_[idx].right = right;
  return idx;
}

double VoxelKdTree::nearest_sq(const std::array<int, 3>& q) const {
  double best = std::numeric_limits<double>::infinity();
  search(root_, q, best);
  return best;
}

void VoxelKdTree::search(int node, const std::array<int, 3>& q, double& best) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  double d2 = voxel_sq_dist(q, n.p, spacing_);
  if (d2 < best) best = d2;

  double diff = static_cast<double>(q[n.axis] - n.p[n.axis]) * spacing_[n.axis];
  int near = diff <= 0.0 ? n.left : n.right;
  int far = diff <= 0.0 ? n.right : n.left;
  search(near, q, best);
  // Every point on the far side is at least |diff| away along this axis.
  if (diff * diff < best) search(far, q, best);
}

}  // namespace gliomorph::detail
