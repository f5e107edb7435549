#include "equinorm/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "tensor file formats mandate a little-endian host");

namespace equinorm {

namespace {

using Kind = TensorFileError::Kind;

std::string ctx(const std::filesystem::path& path, const std::string& msg) {
  return path.string() + ": " + msg;
}

template <typename T>
T read_pod(std::istream& in, const std::filesystem::path& path) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
    throw TensorFileError(Kind::truncated, ctx(path, "unexpected end of file"));
  return value;
}

FeatureMap payload_to_map(std::istream& in, const std::filesystem::path& path,
                          const Dims& dims, int scalar_width) {
  const Eigen::Index n = dims.count();
  Eigen::ArrayXd data(n);
  if (scalar_width == 8) {
    if (!in.read(reinterpret_cast<char*>(data.data()),
                 static_cast<std::streamsize>(n * 8)))
      throw TensorFileError(Kind::truncated, ctx(path, "payload shorter than dims"));
  } else {
    std::vector<float> buf(static_cast<std::size_t>(n));
    if (!in.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(n * 4)))
      throw TensorFileError(Kind::truncated, ctx(path, "payload shorter than dims"));
    for (Eigen::Index i = 0; i < n; ++i) data[i] = static_cast<double>(buf[static_cast<std::size_t>(i)]);
  }
  // Reject trailing bytes so a wrong-dims header cannot pass silently.
  if (in.peek() != std::char_traits<char>::eof())
    throw TensorFileError(Kind::truncated, ctx(path, "payload longer than dims"));
  return FeatureMap(dims, std::move(data));
}

FeatureMap read_native(std::istream& in, const std::filesystem::path& path) {
  const auto version = read_pod<std::uint8_t>(in, path);
  if (version != 1)
    throw TensorFileError(Kind::bad_version,
                          ctx(path, "unsupported EQTN version " + std::to_string(version)));
  const auto ndim = read_pod<std::uint8_t>(in, path);
  if (ndim != 4)
    throw TensorFileError(Kind::wrong_ndim,
                          ctx(path, "expected 4 dims, got " + std::to_string(ndim)));
  Dims dims;
  dims.b = read_pod<std::uint32_t>(in, path);
  dims.c = read_pod<std::uint32_t>(in, path);
  dims.h = read_pod<std::uint32_t>(in, path);
  dims.w = read_pod<std::uint32_t>(in, path);
  const auto code = read_pod<std::uint8_t>(in, path);
  if (code != 4 && code != 8)
    throw TensorFileError(Kind::unsupported_dtype,
                          ctx(path, "unsupported scalar code " + std::to_string(code)));
  return payload_to_map(in, path, dims, code);
}

// Minimal parser for the version 1.0 dict header: fields are extracted with
// plain string searches, which covers every writer of the format in practice.
FeatureMap read_npy(std::istream& in, const std::filesystem::path& path) {
  const auto major = read_pod<std::uint8_t>(in, path);
  const auto minor = read_pod<std::uint8_t>(in, path);
  if (major != 1 || minor != 0)
    throw TensorFileError(Kind::bad_version, ctx(path, "only format version 1.0 is supported"));
  const auto header_len = read_pod<std::uint16_t>(in, path);
  std::string header(header_len, '\0');
  if (!in.read(header.data(), header_len))
    throw TensorFileError(Kind::truncated, ctx(path, "truncated header"));

  int scalar_width = 0;
  if (header.find("'<f8'") != std::string::npos)
    scalar_width = 8;
  else if (header.find("'<f4'") != std::string::npos)
    scalar_width = 4;
  else
    throw TensorFileError(Kind::unsupported_dtype,
                          ctx(path, "element type must be little-endian f4 or f8"));
  if (header.find("'fortran_order': False") == std::string::npos)
    throw TensorFileError(Kind::unsupported_dtype, ctx(path, "payload must be C-order"));

  const auto open = header.find("'shape': (");
  const auto close = header.find(')', open);
  if (open == std::string::npos || close == std::string::npos)
    throw TensorFileError(Kind::truncated, ctx(path, "malformed shape field"));
  std::string shape = header.substr(open + 10, close - open - 10);
  std::vector<Eigen::Index> extents;
  std::size_t pos = 0;
  while (pos < shape.size()) {
    while (pos < shape.size() && !std::isdigit(static_cast<unsigned char>(shape[pos]))) ++pos;
    if (pos >= shape.size()) break;
    std::size_t used = 0;
    extents.push_back(static_cast<Eigen::Index>(std::stoll(shape.substr(pos), &used)));
    pos += used;
  }
  if (extents.size() != 4)
    throw TensorFileError(Kind::wrong_ndim,
                          ctx(path, "expected a 4-D array, got " +
                                        std::to_string(extents.size()) + " dims"));
  return payload_to_map(in, path, Dims{extents[0], extents[1], extents[2], extents[3]},
                        scalar_width);
}

}  // namespace

FeatureMap read_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TensorFileError(Kind::io, ctx(path, "cannot open for reading"));

  char magic[6] = {};
  if (!in.read(magic, 4))
    throw TensorFileError(Kind::truncated, ctx(path, "file shorter than any magic"));
  if (std::memcmp(magic, "EQTN", 4) == 0) return read_native(in, path);

  if (!in.read(magic + 4, 2))
    throw TensorFileError(Kind::bad_magic, ctx(path, "unrecognized magic bytes"));
  if (std::memcmp(magic, "\x93NUMPY", 6) == 0) return read_npy(in, path);
  throw TensorFileError(Kind::bad_magic, ctx(path, "unrecognized magic bytes"));
}

void write_tensor(const FeatureMap& x, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TensorFileError(Kind::io, ctx(path, "cannot open for writing"));
  out.write("EQTN", 4);
  const std::uint8_t version = 1, ndim = 4, code = 8;
  out.write(reinterpret_cast<const char*>(&version), 1);
  out.write(reinterpret_cast<const char*>(&ndim), 1);
  for (Axis a : {Axis::B, Axis::C, Axis::H, Axis::W}) {
    const auto e = static_cast<std::uint32_t>(x.dims().extent(a));
    out.write(reinterpret_cast<const char*>(&e), 4);
  }
  out.write(reinterpret_cast<const char*>(&code), 1);
  out.write(reinterpret_cast<const char*>(x.data().data()),
            static_cast<std::streamsize>(x.size() * 8));
  if (!out) throw TensorFileError(Kind::io, ctx(path, "write failed"));
}

std::vector<FeatureMap> load_maps(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".eqtn" || ext == ".npy") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw Error("no .eqtn or .npy files in " + dir.string());
  std::vector<FeatureMap> maps;
  maps.reserve(paths.size());
  for (const auto& p : paths) maps.push_back(read_tensor(p));
  return maps;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

namespace {

nlohmann::ordered_json meta_json(const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["tool"] = "equinorm";
  j["version"] = "0.1.0";
  for (const auto& [key, value] : meta) j[key] = value;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TensorFileError(Kind::io, ctx(path, "cannot open for writing"));
  out << text;
  if (!out) throw TensorFileError(Kind::io, ctx(path, "write failed"));
}

void write_json_mirror(const std::filesystem::path& csv_path, nlohmann::ordered_json j) {
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");
  write_text(json_path, j.dump(2) + "\n");
}

}  // namespace

void write_measure_report(const std::vector<MeasureRow>& rows, const RunMeta& meta,
                          const std::filesystem::path& csv_path) {
  std::string csv = "layer,group,mean,stderr,n\n";
  nlohmann::ordered_json j = meta_json(meta);
  j["rows"] = nlohmann::ordered_json::array();
  for (const MeasureRow& r : rows) {
    csv += r.layer;
    csv += ',';
    csv += group_name(r.group);
    csv += ',' + format_sci(r.cell.mean) + ',' + format_sci(r.cell.std_error) + ',' +
           std::to_string(r.cell.trials) + '\n';
    j["rows"].push_back({{"layer", r.layer},
                         {"group", group_name(r.group)},
                         {"mean", r.cell.mean},
                         {"stderr", r.cell.std_error},
                         {"n", r.cell.trials}});
  }
  write_text(csv_path, csv);
  write_json_mirror(csv_path, std::move(j));
}

void write_psd_report(const std::vector<PsdRow>& rows, const RunMeta& meta,
                      const std::filesystem::path& csv_path) {
  std::string csv = "layer,r_lo,r_hi,power,count\n";
  nlohmann::ordered_json j = meta_json(meta);
  j["layers"] = nlohmann::ordered_json::array();
  for (const PsdRow& r : rows) {
    for (Eigen::Index i = 0; i < r.psd.bins(); ++i) {
      csv += r.layer;
      csv += ',' + format_sci(r.psd.edges[i]) + ',' + format_sci(r.psd.edges[i + 1]) +
             ',' + format_sci(r.psd.power[i]) + ',' +
             std::to_string(static_cast<long>(r.psd.counts[i])) + '\n';
    }
    j["layers"].push_back({{"layer", r.layer},
                           {"band_energy", r.band_energy},
                           {"total_energy", r.total},
                           {"energy_ratio", r.energy_ratio}});
  }
  write_text(csv_path, csv);
  write_json_mirror(csv_path, std::move(j));
}

void write_sweep_report(const std::vector<SweepRow>& rows, const RunMeta& meta,
                        const std::filesystem::path& csv_path) {
  std::string csv = "center,scale,affine,predicted,shift_error,translation_error,measured,agree\n";
  long disagreements = 0, indeterminate = 0;
  for (const SweepRow& r : rows) {
    csv += r.center_axes.to_string() + ',' + r.scale_axes.to_string() + ',';
    csv += r.affine_axes.has_value() ? r.affine_axes->to_string() : "none";
    csv += ',';
    csv += class_name(r.predicted);
    csv += ',' + format_sci(r.shift_error) + ',' + format_sci(r.translation_error) + ',';
    csv += r.measured.has_value() ? class_name(*r.measured) : "indeterminate";
    csv += ',';
    csv += r.agreement ? "true" : "false";
    csv += '\n';
    if (!r.measured.has_value()) ++indeterminate;
    else if (!r.agreement) ++disagreements;
  }
  nlohmann::ordered_json j = meta_json(meta);
  j["rows"] = static_cast<long>(rows.size());
  j["disagreements"] = disagreements;
  j["indeterminate"] = indeterminate;
  write_text(csv_path, csv);
  write_json_mirror(csv_path, std::move(j));
}

}  // namespace equinorm
