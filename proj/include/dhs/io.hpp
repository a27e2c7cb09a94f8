#pragma once

// Field serialization and small file utilities shared by the CLI and tests.
//
// A field is stored as <base>.bin (n little-endian float64 samples) next to a
// JSON sidecar <base>.json holding {"n": ..., "length": ...}.

#include <filesystem>
#include <string>
#include <string_view>

#include "dhs/grid.hpp"

namespace dhs::io {

void write_field(const std::filesystem::path& base, const SpectralField& f);
SpectralField read_field(const std::filesystem::path& base);

/// CSV with header "x,value".
void write_field_csv(const std::filesystem::path& path, const SpectralField& f);

/// Git blob hash (SHA-1 over "blob <size>\0" + content), hex encoded.
std::string git_blob_hash(std::string_view content);
std::string git_blob_hash_file(const std::filesystem::path& path);

/// Git blob hash of the little-endian sample bytes of a field.
std::string field_hash(const SpectralField& f);

std::string read_text(const std::filesystem::path& path);

/// Fixed-format decimal rendering used by every CSV writer (17 significant digits).
std::string format_real(double value);

}  // namespace dhs::io
