#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "equinorm/io.hpp"
#include "equinorm/synthetic.hpp"

namespace equinorm {

// The four CLI workflows, callable as a library so tests exercise the same
// code paths as the tool.

struct GenOptions {
  Dims dims{8, 16, 32, 32};
  int n = 8;
  MapSpectrum spectrum = MapSpectrum::white();
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

// Writes map_0000.eqtn .. map_{n-1}.eqtn; returns the paths written.
std::vector<std::filesystem::path> run_gen(const GenOptions& opts);

struct MeasureOptions {
  std::vector<std::string> layers = {"all"};
  std::vector<TransformGroup> groups = {TransformGroup::shift, TransformGroup::translation};
  std::optional<std::filesystem::path> maps_dir;  // alternative to synthetic
  Dims synthetic_dims{8, 16, 32, 32};
  int n_maps = 8;
  MapSpectrum spectrum = MapSpectrum::lowpass(0.375);
  int trials = 256;
  SchemeMix schemes = SchemeMix::both;
  ModeMix bn_modes = ModeMix::both;
  double training_fraction = 0.5;
  std::uint64_t seed = 0;
};

std::vector<MeasureRow> run_measure(const MeasureOptions& opts);
void run_measure_to_file(const MeasureOptions& opts, const std::filesystem::path& csv);

struct SpectrumOptions {
  std::vector<std::string> layers = {"BatchNorm", "InstanceNorm", "LayerNorm-C",
                                     "LayerNorm-AF"};
  std::optional<std::filesystem::path> maps_dir;
  Dims synthetic_dims{2, 16, 32, 32};
  int n_maps = 4;
  MapSpectrum spectrum = MapSpectrum::white();
  int bins = 64;
  std::uint64_t seed = 0;
};

// Rows for the raw upsampled input plus each requested layer.
std::vector<PsdRow> run_spectrum(const SpectrumOptions& opts);
void run_spectrum_to_file(const SpectrumOptions& opts, const std::filesystem::path& csv);

struct SweepRunOptions {
  SweepOptions sweep;
};

std::vector<SweepRow> run_sweep(const SweepRunOptions& opts);
// Returns true when every row agrees with its prediction (no indeterminate
// rows); the CLI exit status keys off this.
bool run_sweep_to_file(const SweepRunOptions& opts, const std::filesystem::path& csv);

// Canonical list of the five preset layer names, or resolves the "all" token.
std::vector<std::string> resolve_layers(const std::vector<std::string>& requested);

}  // namespace equinorm
