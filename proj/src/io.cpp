#include "greyvar/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "greyvar/error.hpp"

namespace greyvar {
namespace {

constexpr std::array<char, 4> kBundleMagic{'G', 'V', 'P', 'B'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    fail(ErrorKind::Input, "truncated run bundle");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) fail(ErrorKind::Io, "failed to format number");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    fail(ErrorKind::Input, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
  const Grid& grid = path.grid();
  out << "# greyvar path\n";
  out << "# grid=" << (grid.is_dyadic() ? "dyadic" : "uniform") << "\n";
  out << "# resolution=" << grid.resolution() << "\n";
  if (path.params()) {
    out << "# alpha=" << format_double(path.params()->alpha()) << "\n";
    out << "# beta=" << format_double(path.params()->beta()) << "\n";
  }
  out << "# master_seed=" << path.seed().master_seed << "\n";
  out << "# stream_id=" << path.seed().stream_id << "\n";
  out << "t,value\n";
  const auto values = path.values();
  for (std::size_t j = 0; j < values.size(); ++j) {
    out << format_double(grid.time(j)) << ',' << format_double(values[j]) << '\n';
  }
}

SamplePath read_path_csv(std::istream& in) {
  std::map<std::string, std::string, std::less<>> header;
  std::string line;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line.starts_with('#')) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        header[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (line == "t,value") {
      saw_columns = true;
      break;
    }
    fail(ErrorKind::Input, "unexpected line before path table: '" + line + "'");
  }
  if (!saw_columns) fail(ErrorKind::Input, "path CSV lacks a 't,value' header");
  auto require = [&](const char* key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end()) fail(ErrorKind::Input, std::string("path CSV lacks '") + key + "'");
    return it->second;
  };
  const std::size_t resolution = std::stoull(require("resolution"));
  const std::string& kind = require("grid");
  const Grid grid = kind == "dyadic"    ? Grid::dyadic(static_cast<int>(resolution))
                    : kind == "uniform" ? Grid::uniform(resolution)
                                        : (fail(ErrorKind::Input, "unknown grid '" + kind + "'"),
                                           Grid::uniform(1));
  std::optional<GreyParams> params;
  if (header.contains("alpha") && header.contains("beta")) {
    params.emplace(parse_double(header["alpha"]), parse_double(header["beta"]));
  }
  const RngSpec seed{std::stoull(require("master_seed")), std::stoull(require("stream_id"))};
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorKind::Input, "malformed path row '" + line + "'");
    values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  return SamplePath(grid, std::move(values), params, seed);
}

void write_bundle(std::ostream& out, std::span<const SamplePath> paths) {
  out.write(kBundleMagic.data(), kBundleMagic.size());
  put_le<std::uint32_t>(out, kBundleVersion);
  put_le<std::uint64_t>(out, paths.size());
  for (const auto& path : paths) {
    put_le<std::uint8_t>(out, path.grid().is_dyadic() ? 0 : 1);
    put_le<std::uint64_t>(out, path.grid().resolution());
    put_le<std::uint8_t>(out, path.params() ? 1 : 0);
    put_le<double>(out, path.params() ? path.params()->alpha() : 0.0);
    put_le<double>(out, path.params() ? path.params()->beta() : 0.0);
    put_le<std::uint64_t>(out, path.seed().master_seed);
    put_le<std::uint64_t>(out, path.seed().stream_id);
    put_le<std::uint64_t>(out, path.size());
    for (double v : path.values()) put_le<double>(out, v);
  }
  if (!out) fail(ErrorKind::Io, "failed writing run bundle");
}

std::vector<SamplePath> read_bundle(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kBundleMagic) {
    fail(ErrorKind::Input, "not a greyvar run bundle");
  }
  const auto version = get_le<std::uint32_t>(in);
  if (version != kBundleVersion) {
    fail(ErrorKind::Input, "unsupported bundle version " + std::to_string(version));
  }
  const auto count = get_le<std::uint64_t>(in);
  std::vector<SamplePath> paths;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto kind = get_le<std::uint8_t>(in);
    const auto resolution = get_le<std::uint64_t>(in);
    const auto has_params = get_le<std::uint8_t>(in);
    const auto alpha = get_le<double>(in);
    const auto beta = get_le<double>(in);
    const RngSpec seed{get_le<std::uint64_t>(in), get_le<std::uint64_t>(in)};
    const auto n = get_le<std::uint64_t>(in);
    if (kind > 1) fail(ErrorKind::Input, "unknown grid kind in bundle");
    const Grid grid = kind == 0 ? Grid::dyadic(static_cast<int>(resolution)) : Grid::uniform(resolution);
    if (n != grid.points()) fail(ErrorKind::Input, "bundle path length does not match its grid");
    std::vector<double> values(n);
    for (auto& v : values) v = get_le<double>(in);
    std::optional<GreyParams> params;
    if (has_params) params.emplace(alpha, beta);
    paths.emplace_back(grid, std::move(values), params, seed);
  }
  return paths;
}

std::vector<SamplePath> read_bundle_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + file.string());
  return read_bundle(in);
}

void write_variation_csv(std::ostream& out, std::span<const VariationRecord> records) {
  out << "level,p,value\n";
  for (const auto& r : records) {
    out << r.resolution << ',' << format_double(r.p) << ',' << format_double(r.value) << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& target, std::string_view contents) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) fail(ErrorKind::Io, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::Io, "cannot move output into place at " + target.string() + ": " + ec.message());
  }
}

}  // namespace greyvar
