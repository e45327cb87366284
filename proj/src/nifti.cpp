#include "gliomorph/volio/nifti.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace gliomorph::volio {

namespace {

constexpr int kHeaderSize = 348;
constexpr std::int16_t kDtUint8 = 2;
constexpr std::int16_t kDtInt16 = 4;
constexpr std::int16_t kDtInt32 = 8;

// Header field offsets (NIfTI-1, fixed 348-byte layout).
constexpr int kOffSizeofHdr = 0;
constexpr int kOffDim = 40;        // short dim[8]
constexpr int kOffDatatype = 70;   // short
constexpr int kOffBitpix = 72;     // short
constexpr int kOffPixdim = 76;     // float pixdim[8]
constexpr int kOffVoxOffset = 108; // float
constexpr int kOffMagic = 344;     // char[4]

inline std::uint16_t bswap16(std::uint16_t v) {
  return static_cast<std::uint16_t>((v >> 8) | (v << 8));
}
inline std::uint32_t bswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0x0000ff00u) | ((v << 8) & 0x00ff0000u) | (v << 24);
}

struct HeaderReader {
  const unsigned char* bytes;
  bool swap;

  std::int16_t i16(int off) const {
    std::uint16_t v;
    std::memcpy(&v, bytes + off, 2);
    if (swap) v = bswap16(v);
    std::int16_t out;
    std::memcpy(&out, &v, 2);
    return out;
  }
  std::int32_t i32(int off) const {
    std::uint32_t v;
    std::memcpy(&v, bytes + off, 4);
    if (swap) v = bswap32(v);
    std::int32_t out;
    std::memcpy(&out, &v, 4);
    return out;
  }
  float f32(int off) const {
    std::uint32_t v;
    std::memcpy(&v, bytes + off, 4);
    if (swap) v = bswap32(v);
    float out;
    std::memcpy(&out, &v, 4);
    return out;
  }
};

}  // namespace

LabelVolume read_nifti(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open volume: " + path);

  unsigned char hdr[kHeaderSize];
  if (!in.read(reinterpret_cast<char*>(hdr), kHeaderSize))
    fail(ErrorKind::Io, path + ": truncated header");

  std::int32_t raw_size;
  std::memcpy(&raw_size, hdr + kOffSizeofHdr, 4);
  bool swap;
  if (raw_size == kHeaderSize) {
    swap = false;
  } else {
    std::uint32_t u;
    std::memcpy(&u, hdr + kOffSizeofHdr, 4);
    u = bswap32(u);
    std::int32_t swapped;
    std::memcpy(&swapped, &u, 4);
    if (swapped != kHeaderSize) fail(ErrorKind::Format, path + ": not a NIfTI-1 file");
    swap = true;
  }

  char magic[4];
  std::memcpy(magic, hdr + kOffMagic, 4);
  if (std::memcmp(magic, "n+1", 4) != 0) {
    if (std::memcmp(magic, "ni1", 4) == 0)
      fail(ErrorKind::Unsupported, path + ": two-file NIfTI (.hdr/.img) is not supported");
    fail(ErrorKind::Format, path + ": bad NIfTI magic");
  }

  HeaderReader h{hdr, swap};
  std::int16_t ndim = h.i16(kOffDim);
  if (ndim != 3)
    fail(ErrorKind::Unsupported,
         path + ": only 3-dimensional volumes are supported (dim[0]=" + std::to_string(ndim) + ")");

  std::array<int, 3> dims;
  for (int d = 0; d < 3; ++d) {
    std::int16_t v = h.i16(kOffDim + 2 * (d + 1));
    if (v < 1) fail(ErrorKind::Format, path + ": non-positive dim[" + std::to_string(d + 1) + "]");
    dims[d] = v;
  }

  std::array<double, 3> spacing;
  for (int d = 0; d < 3; ++d) {
    float v = h.f32(kOffPixdim + 4 * (d + 1));
    if (!(v > 0.0f))
      fail(ErrorKind::Format, path + ": non-positive pixdim[" + std::to_string(d + 1) + "]");
    spacing[d] = static_cast<double>(v);
  }

  std::int16_t datatype = h.i16(kOffDatatype);
  int bytes_per_voxel;
  switch (datatype) {
    case kDtUint8: bytes_per_voxel = 1; break;
    case kDtInt16: bytes_per_voxel = 2; break;
    case kDtInt32: bytes_per_voxel = 4; break;
    default:
      fail(ErrorKind::Unsupported,
           path + ": unsupported datatype " + std::to_string(datatype) +
               " (need uint8, int16, or int32)");
  }
  std::int16_t bitpix = h.i16(kOffBitpix);
  if (bitpix != 8 * bytes_per_voxel)
    fail(ErrorKind::Format, path + ": bitpix does not match datatype");

  float vox_offset_f = h.f32(kOffVoxOffset);
  auto vox_offset = static_cast<std::int64_t>(vox_offset_f);
  if (vox_offset < kHeaderSize || static_cast<float>(vox_offset) != vox_offset_f)
    fail(ErrorKind::Format, path + ": bad vox_offset");

  LabelVolume vol(dims, spacing);
  std::size_t n = vol.voxel_count();
  std::vector<unsigned char> payload(n * bytes_per_voxel);
  in.seekg(vox_offset, std::ios::beg);
  if (!in.read(reinterpret_cast<char*>(payload.data()),
               static_cast<std::streamsize>(payload.size())))
    fail(ErrorKind::Io, path + ": truncated voxel payload");

  auto& labels = vol.mutable_data();
  const unsigned char* p = payload.data();
  for (std::size_t i = 0; i < n; ++i) {
    std::int32_t value;
    switch (datatype) {
      case kDtUint8:
        value = p[i];
        break;
      case kDtInt16: {
        std::uint16_t v;
        std::memcpy(&v, p + 2 * i, 2);
        if (swap) v = bswap16(v);
        std::int16_t s;
        std::memcpy(&s, &v, 2);
        value = s;
        break;
      }
      default: {
        std::uint32_t v;
        std::memcpy(&v, p + 4 * i, 4);
        if (swap) v = bswap32(v);
        std::memcpy(&value, &v, 4);
        break;
      }
    }
    if (value < 0) fail(ErrorKind::Validation, path + ": negative label value");
    labels[i] = value;
  }
  return vol;
}

void write_nifti(const std::string& path, const LabelVolume& volume) {
  std::int32_t max_label = 0;
  for (std::int32_t v : volume.data())
    if (v > max_label) max_label = v;

  std::int16_t datatype;
  int bytes_per_voxel;
  if (max_label <= std::numeric_limits<std::uint8_t>::max()) {
    datatype = kDtUint8;
    bytes_per_voxel = 1;
  } else if (max_label <= std::numeric_limits<std::int16_t>::max()) {
    datatype = kDtInt16;
    bytes_per_voxel = 2;
  } else {
    datatype = kDtInt32;
    bytes_per_voxel = 4;
  }

  unsigned char hdr[kHeaderSize + 4] = {};  // header plus zero extension flag
  auto put_i32 = [&hdr](int off, std::int32_t v) { std::memcpy(hdr + off, &v, 4); };
  auto put_i16 = [&hdr](int off, std::int16_t v) { std::memcpy(hdr + off, &v, 2); };
  auto put_f32 = [&hdr](int off, float v) { std::memcpy(hdr + off, &v, 4); };

  put_i32(kOffSizeofHdr, kHeaderSize);
  put_i16(kOffDim, 3);
  for (int d = 0; d < 3; ++d)
    put_i16(kOffDim + 2 * (d + 1), static_cast<std::int16_t>(volume.dims()[d]));
  for (int d = 4; d < 8; ++d) put_i16(kOffDim + 2 * d, 1);
  put_i16(kOffDatatype, datatype);
  put_i16(kOffBitpix, static_cast<std::int16_t>(8 * bytes_per_voxel));
  put_f32(kOffPixdim, 1.0f);  // qfac
  for (int d = 0; d < 3; ++d)
    put_f32(kOffPixdim + 4 * (d + 1), static_cast<float>(volume.spacing()[d]));
  put_f32(kOffVoxOffset, 352.0f);
  put_f32(112, 1.0f);       // scl_slope
  hdr[123] = 2;             // xyzt_units: millimetres
  std::memcpy(hdr + kOffMagic, "n+1", 4);

  for (int d = 0; d < 3; ++d) {
    if (volume.dims()[d] > std::numeric_limits<std::int16_t>::max())
      fail(ErrorKind::Validation, "volume dimension too large for NIfTI-1");
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write volume: " + path);
  out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));

  const auto& labels = volume.data();
  std::vector<unsigned char> payload(labels.size() * bytes_per_voxel);
  unsigned char* p = payload.data();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    switch (datatype) {
      case kDtUint8:
        p[i] = static_cast<unsigned char>(labels[i]);
        break;
      case kDtInt16: {
        auto v = static_cast<std::int16_t>(labels[i]);
        std::memcpy(p + 2 * i, &v, 2);
        break;
      }
      default:
        std::memcpy(p + 4 * i, &labels[i], 4);
        break;
    }
  }
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) fail(ErrorKind::Io, "failed writing volume: " + path);
}

}  // namespace gliomorph::volio
