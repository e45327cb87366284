#pragma once

#include <array>
#include <span>
#include <vector>

namespace gliomorph::detail {

// Squared physical-space distance between two voxel centers. Both the tree
// and any reference implementation must use this exact expression so results
// agree to the last bit: one rounding per axis (integer difference times
// spacing), then left-to-right summation.
inline double voxel_sq_dist(const std::array<int, 3>& a, const std::array<int, 3>& b,
                            const std::array<double, 3>& spacing) {
  double dx = static_cast<double>(a[0] - b[0]) * spacing[0];
  double dy = static_cast<double>(a[1] - b[1]) * spacing[1];
  double dz = static_cast<double>(a[2] - b[2]) * spacing[2];
  return dx * dx + dy * dy + dz * dz;
}

// Exact nearest-neighbour index over voxel coordinates in anisotropic
// physical space. Median-split tree; pruning uses conservative >= bounds so
// the returned minimum equals the brute-force minimum exactly.
class VoxelKdTree {
 public:
  VoxelKdTree(std::span<const std::array<int, 3>> points, std::array<double, 3> spacing);

  // Smallest squared physical distance from q to any indexed point.
  double nearest_sq(const std::array<int, 3>& q) const;

  bool empty() const { return nodes_.empty(); }

 private:
  struct Node {
    std::array<int, 3> p;
    int left = -1;
    int right = -1;
    int axis = 0;
  };

  int build(std::size_t lo, std::size_t hi);
  void search(int node, const std::array<int, 3>& q, double& best) const;

  std::vector<Node> nodes_;
  std::vector<std::array<int, 3>> scratch_;
  std::array<double, 3> spacing_;
  int root_ = -1;
};

}  // namespace gliomorph::detail
