#pragma once

#include <filesystem>

#include "slipmhd/state.hpp"

namespace slipmhd {

/// Writes `<stem>.bin` and `<stem>.json`.
///
/// The binary file holds the components u1 u2 u3 [B1 B2 B3] back to back.
/// Each component is the coefficient array in grid spectral order
/// ([kz][i1][i2h], i2h fastest) as interleaved (re, im) little-endian
/// 64-bit floats. The JSON header records n1 n2 n3 L1 L2 L3, the parity of
/// every component, time, epsilon and variant.
void write_snapshot(const MhdState& s, const std::filesystem::path& stem);

/// Inverse of write_snapshot. Builds a fresh grid from the header unless
/// `grid` is given, in which case the header must match it.
MhdState read_snapshot(const std::filesystem::path& stem, GridPtr grid = nullptr);

}  // namespace slipmhd
