#pragma once

#include <string>

#include "gliomorph/volio/label_volume.hpp"

namespace gliomorph::volio {

// Reads a single-file uncompressed NIfTI-1 label image (magic "n+1").
// Supported subset: 3 spatial dims; datatype uint8, int16, or int32; both
// byte orders (detected from the header). Orientation fields are ignored;
// scl_slope/scl_inter are ignored; dims come from dim[1..3] and spacing from
// pixdim[1..3]. Anything outside the subset raises an unsupported error;
// files that are not NIfTI-1 at all raise a format error; short reads raise
// an I/O error.
LabelVolume read_nifti(const std::string& path);

// Writes the volume as single-file NIfTI-1 in native byte order, picking the
// narrowest supported datatype that holds the largest label. Spacing is
// stored as float32 (a format limit); values round-trip exactly whenever the
// spacing is float-representable, which holds for anything read from a
// NIfTI file.
void write_nifti(const std::string& path, const LabelVolume& volume);

}  // namespace gliomorph::volio
