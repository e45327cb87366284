#pragma once

// Shared test utilities: independent reference implementations (all-pairs
// surface distance, byte-level NIfTI writer) and deterministic data
// builders. Reference code deliberately avoids the library's search
// structures so agreement is meaningful.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gliomorph/morpho/border.hpp"
#include "gliomorph/volio/cohort.hpp"
#include "gliomorph/volio/label_volume.hpp"

namespace testutil {

// All-pairs pooled 95th percentile surface distance. Same per-pair
// arithmetic as the production contract (one rounding per axis, then
// left-to-right summation), nearest-neighbour search by exhaustive scan,
// percentile by full sort.
double brute_hd95(const gliomorph::morpho::BorderPointSet& a,
                  const gliomorph::morpho::BorderPointSet& b);

// Directed nearest distances from every point of `from` to `to`, exhaustive
// scan, sqrt applied per point.
std::vector<double> brute_directed_distances(const gliomorph::morpho::BorderPointSet& from,
                                             const gliomorph::morpho::BorderPointSet& to);

// Volume with the given voxels set to `label`, everything else background.
gliomorph::volio::LabelVolume make_volume(std::array<int, 3> dims, std::array<double, 3> spacing,
                                          const std::vector<std::array<int, 3>>& voxels,
                                          std::int32_t label = 1);

// Random blob-ish mask: a handful of random solid boxes unioned together,
// so borders have structure instead of salt-and-pepper noise.
gliomorph::volio::LabelVolume random_boxes_volume(std::array<int, 3> dims,
                                                  std::array<double, 3> spacing,
                                                  std::uint64_t seed, int n_boxes = 4,
                                                  std::int32_t label = 1);

// Cohort with continuous times (ties have probability zero) and roughly
// censor_frac censored records. Times are positive.
std::vector<gliomorph::volio::SurvivalRecord> random_cohort(int n, std::uint64_t seed,
                                                            double censor_frac = 0.3);

// Independent byte-level NIfTI-1 writer (348-byte header + 4-byte extension
// pad, datatype int16, magic "n+1"). Written from the format description,
// not via the library. Supports both byte orders.
void write_reference_nifti_int16(const std::string& path, std::array<int, 3> dims,
                                 std::array<float, 3> spacing,
                                 const std::vector<std::int16_t>& values, bool big_endian);

// Temp-file path inside the build dir sandbox.
std::string temp_path(const std::string& name);

}  // namespace testutil
