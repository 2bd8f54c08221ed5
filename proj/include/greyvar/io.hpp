#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greyvar/path.hpp"
#include "greyvar/variation.hpp"

namespace greyvar {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

/// CSV with '#'-prefixed header lines (grid, level, params, seed) followed
/// by a "t,value" table.
void write_path_csv(std::ostream& out, const SamplePath& path);
SamplePath read_path_csv(std::istream& in);

/// Binary run bundle: little-endian, magic "GVPB", format version, path
/// count, then one record per path (grid kind, resolution, params, seeds,
/// values).
inline constexpr std::uint32_t kBundleVersion = 1;
void write_bundle(std::ostream& out, std::span<const SamplePath> paths);
std::vector<SamplePath> read_bundle(std::istream& in);
std::vector<SamplePath> read_bundle_file(const std::filesystem::path& file);

/// "level,p,value" table.
void write_variation_csv(std::ostream& out, std::span<const VariationRecord> records);

/// Writes to a sibling temporary file, then renames over target.
void write_file_atomic(const std::filesystem::path& target, std::string_view contents);

}  // namespace greyvar
