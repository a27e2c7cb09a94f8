#pragma once

// Named initial data.  Every preset is deterministic given (name, grid, seed).

#include <cstdint>
#include <string>

#include "dhs/grid.hpp"

namespace dhs {

/// zero, sin, two_mode, gaussian_bump, random_decay(sigma).
///
/// sin is sin(2 pi x / L); two_mode adds cos(4 pi x / L) / 2.  random_decay
/// places amplitude 2^{-sigma log2 |xi|} (flat below |xi| = 1) with seeded
/// phases on every mode up to a quarter of the largest wavenumber.
SpectralField preset_data(const std::string& name, const Grid& grid, std::uint64_t seed);

/// "preset:<name>" or the base path of a stored field.
SpectralField resolve_data(const std::string& spec, const Grid& grid, std::uint64_t seed);

}  // namespace dhs
