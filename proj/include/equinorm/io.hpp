#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "equinorm/feature_map.hpp"
#include "equinorm/metrics.hpp"
#include "equinorm/spectral.hpp"
#include "equinorm/verify.hpp"

namespace equinorm {

// Native tensor format, little-endian throughout:
//   magic "EQTN", version u8 = 1, ndim u8 = 4, four u32 dims,
//   scalar-width u8 (4: f32, 8: f64), C-order payload.
// read_tensor also accepts the \x93NUMPY interchange format, version 1.0,
// C-order, little-endian f4/f8, 4-D only. f32 payloads are widened to double.
FeatureMap read_tensor(const std::filesystem::path& path);
void write_tensor(const FeatureMap& x, const std::filesystem::path& path);

// All *.eqtn / *.npy files in a directory, in lexicographic order.
std::vector<FeatureMap> load_maps(const std::filesystem::path& dir);

// Scientific notation with 6 significant digits, '.' decimal separator.
std::string format_sci(double v);

struct MeasureRow {
  std::string layer;
  TransformGroup group = TransformGroup::shift;
  ReportCell cell;
};

// Key/value run metadata mirrored into the JSON report, in insertion order.
using RunMeta = std::vector<std::pair<std::string, std::string>>;

// CSV with header layer,group,mean,stderr,n plus a JSON mirror (same path
// with .json extension) carrying the rows and the run metadata.
void write_measure_report(const std::vector<MeasureRow>& rows, const RunMeta& meta,
                          const std::filesystem::path& csv_path);

struct PsdRow {
  std::string layer;
  RadialPsd psd;
  double band_energy = 0.0;
  double total = 0.0;
  double energy_ratio = 0.0;
};

// CSV with header layer,r_lo,r_hi,power,count plus a JSON mirror with the
// per-layer aliasing-band summaries.
void write_psd_report(const std::vector<PsdRow>& rows, const RunMeta& meta,
                      const std::filesystem::path& csv_path);

// CSV with header center,scale,affine,predicted,shift_error,
// translation_error,measured,agree plus a JSON mirror with the tallies.
void write_sweep_report(const std::vector<SweepRow>& rows, const RunMeta& meta,
                        const std::filesystem::path& csv_path);

}  // namespace equinorm
