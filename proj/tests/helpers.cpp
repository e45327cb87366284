#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "gliomorph/detail/rng.hpp"
#include "gliomorph/error.hpp"

namespace testutil {

using gliomorph::morpho::BorderPointSet;
using gliomorph::volio::LabelVolume;
using gliomorph::volio::SurvivalRecord;

std::vector<double> brute_directed_distances(const BorderPointSet& from,
                                             const BorderPointSet& to) {
  std::vector<double> out;
  out.reserve(from.points.size());
  for (const auto& p : from.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to.points) {
      double dx = static_cast<double>(p[0] - q[0]) * from.spacing[0];
      double dy = static_cast<double>(p[1] - q[1]) * from.spacing[1];
      double dz = static_cast<double>(p[2] - q[2]) * from.spacing[2];
      double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best) best = d2;
    }
    out.push_back(std::sqrt(best));
  }
  return out;
}

double brute_hd95(const BorderPointSet& a, const BorderPointSet& b) {
  std::vector<double> pooled = brute_directed_distances(a, b);
  std::vector<double> back = brute_directed_distances(b, a);
  pooled.insert(pooled.end(), back.begin(), back.end());
  std::sort(pooled.begin(), pooled.end());
  std::size_t n = pooled.size();
  std::size_t rank = (19 * n + 19) / 20;
  return pooled[rank - 1];
}

LabelVolume make_volume(std::array<int, 3> dims, std::array<double, 3> spacing,
                        const std::vector<std::array<int, 3>>& voxels, std::int32_t label) {
  LabelVolume v(dims, spacing);
  for (const auto& p : voxels) v.set(p[0], p[1], p[2], label);
  return v;
}

LabelVolume random_boxes_volume(std::array<int, 3> dims, std::array<double, 3> spacing,
                                std::uint64_t seed, int n_boxes, std::int32_t label) {
  gliomorph::detail::Rng rng(gliomorph::detail::derive_seed(seed, 0xb0135));
  LabelVolume v(dims, spacing);
  for (int b = 0; b < n_boxes; ++b) {
    std::array<int, 3> lo, hi;
    for (int d = 0; d < 3; ++d) {
      int max_extent = std::max(1, dims[d] / 3);
      lo[d] = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(dims[d])));
      int extent = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(max_extent)));
      hi[d] = std::min(dims[d] - 1, lo[d] + extent);
    }
    for (int z = lo[2]; z <= hi[2]; ++z)
      for (int y = lo[1]; y <= hi[1]; ++y)
        for (int x = lo[0]; x <= hi[0]; ++x) v.set(x, y, z, label);
  }
  // guarantee non-empty
  v.set(dims[0] / 2, dims[1] / 2, dims[2] / 2, label);
  return v;
}

std::vector<SurvivalRecord> random_cohort(int n, std::uint64_t seed, double censor_frac) {
  gliomorph::detail::Rng rng(gliomorph::detail::derive_seed(seed, 0xc047));
  std::vector<SurvivalRecord> records(n);
  for (int i = 0; i < n; ++i) {
    records[i].subject_id = "t" + std::to_string(i);
    records[i].time_months = 1.0 + 59.0 * rng.next_open_unit();
    records[i].event = rng.next_unit() >= censor_frac;
  }
  return records;
}

namespace {

void put_bytes(std::vector<unsigned char>& out, const void* data, std::size_t size,
               bool big_endian) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  if (big_endian)
    for (std::size_t i = size; i > 0; --i) out.push_back(p[i - 1]);
  else
    for (std::size_t i = 0; i < size; ++i) out.push_back(p[i]);
}

void put_i16(std::vector<unsigned char>& out, std::int16_t v, bool be) {
  put_bytes(out, &v, 2, be);
}
void put_i32(std::vector<unsigned char>& out, std::int32_t v, bool be) {
  put_bytes(out, &v, 4, be);
}
void put_f32(std::vector<unsigned char>& out, float v, bool be) { put_bytes(out, &v, 4, be); }

}  // namespace

void write_reference_nifti_int16(const std::string& path, std::array<int, 3> dims,
                                 std::array<float, 3> spacing,
                                 const std::vector<std::int16_t>& values, bool big_endian) {
  const bool be = big_endian;
  std::vector<unsigned char> buf;
  buf.reserve(352 + values.size() * 2);

  put_i32(buf, 348, be);                        // sizeof_hdr
  buf.insert(buf.end(), 35, 0);                 // data_type[10] + db_name[18] + extents..regular
  buf.push_back(0);                             // dim_info
  put_i16(buf, 3, be);                          // dim[0]
  put_i16(buf, static_cast<std::int16_t>(dims[0]), be);
  put_i16(buf, static_cast<std::int16_t>(dims[1]), be);
  put_i16(buf, static_cast<std::int16_t>(dims[2]), be);
  for (int i = 4; i < 8; ++i) put_i16(buf, 1, be);  // dim[4..7]
  put_f32(buf, 0, be);                          // intent_p1
  put_f32(buf, 0, be);                          // intent_p2
  put_f32(buf, 0, be);                          // intent_p3
  put_i16(buf, 0, be);                          // intent_code
  put_i16(buf, 4, be);                          // datatype = int16
  put_i16(buf, 16, be);                         // bitpix
  put_i16(buf, 0, be);                          // slice_start
  put_f32(buf, 1, be);                          // pixdim[0]
  put_f32(buf, spacing[0], be);
  put_f32(buf, spacing[1], be);
  put_f32(buf, spacing[2], be);
  for (int i = 4; i < 8; ++i) put_f32(buf, 0, be);  // pixdim[4..7]
  put_f32(buf, 352, be);                        // vox_offset
  put_f32(buf, 1, be);                          // scl_slope
  put_f32(buf, 0, be);                          // scl_inter
  put_i16(buf, 0, be);                          // slice_end
  buf.push_back(0);                             // slice_code
  buf.push_back(2);                             // xyzt_units = mm
  put_f32(buf, 0, be);                          // cal_max
  put_f32(buf, 0, be);                          // cal_min
  put_f32(buf, 0, be);                          // slice_duration
  put_f32(buf, 0, be);                          // toffset
  put_i32(buf, 0, be);                          // glmax
  put_i32(buf, 0, be);                          // glmin
  buf.insert(buf.end(), 80, 0);                 // descrip
  buf.insert(buf.end(), 24, 0);                 // aux_file
  put_i16(buf, 0, be);                          // qform_code
  put_i16(buf, 0, be);                          // sform_code
  for (int i = 0; i < 6; ++i) put_f32(buf, 0, be);   // quatern b,c,d + qoffset x,y,z
  for (int i = 0; i < 12; ++i) put_f32(buf, 0, be);  // srow_x/y/z
  buf.insert(buf.end(), 16, 0);                 // intent_name
  buf.push_back('n');                           // magic
  buf.push_back('+');
  buf.push_back('1');
  buf.push_back(0);
  if (buf.size() != 348) gliomorph::fail(gliomorph::ErrorKind::Internal, "reference header size");
  buf.insert(buf.end(), 4, 0);  // extension indicator

  for (std::int16_t v : values) put_i16(buf, v, be);

  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  out.flush();
  if (!out) gliomorph::fail(gliomorph::ErrorKind::Io, "cannot write " + path);
}

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gliomorph_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace testutil
