// Field snapshots: magic "HPE1", little-endian u32 nx, ny, nz, ncomp, then
// ncomp*nx*ny*nz little-endian f64 in component-major, x-major, z-fastest
// order (the in-memory layout of RealField).  One file per field per time.

#pragma once

#include "hpe/grid.hpp"

#include <iosfwd>

namespace hpe {

void save_snapshot(std::ostream& os, const RealField& f);

// Throws std::runtime_error on bad magic, malformed dimensions or short
// reads.
RealField load_snapshot(std::istream& is);

} // namespace hpe
