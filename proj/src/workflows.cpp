#include "equinorm/workflows.hpp"

#include <cctype>
#include <cstdio>

namespace equinorm {

namespace {

std::string seed_string(std::uint64_t seed) { return std::to_string(seed); }

std::vector<FeatureMap> source_maps(const std::optional<std::filesystem::path>& dir,
                                    const Dims& dims, int n, const MapSpectrum& spectrum,
                                    std::uint64_t seed) {
  if (dir.has_value()) return load_maps(*dir);
  return gen_maps(dims, n, spectrum, seed);
}

}  // namespace

std::vector<std::filesystem::path> run_gen(const GenOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
  const std::vector<FeatureMap> maps = gen_maps(opts.dims, opts.n, opts.spectrum, opts.seed);
  std::vector<std::filesystem::path> written;
  written.reserve(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "map_%04zu.eqtn", i);
    const std::filesystem::path p = opts.out_dir / name;
    write_tensor(maps[i], p);
    written.push_back(p);
  }
  return written;
}

std::vector<std::string> resolve_layers(const std::vector<std::string>& requested) {
  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  std::vector<std::string> out;
  for (const std::string& name : requested) {
    if (lower(name) == "all") {
      for (Preset p : kAllPresets) out.push_back(preset_name(p));
      continue;
    }
    bool found = false;
    for (Preset p : kAllPresets)
      if (lower(name) == lower(preset_name(p))) {
        out.push_back(preset_name(p));
        found = true;
        break;
      }
    if (!found) throw Error("unknown normalization preset: " + name);
  }
  return out;
}

std::vector<MeasureRow> run_measure(const MeasureOptions& opts) {
  const std::vector<std::string> layers = resolve_layers(opts.layers);
  const std::vector<FeatureMap> maps = source_maps(
      opts.maps_dir, opts.synthetic_dims, opts.n_maps, opts.spectrum, opts.seed);

  std::vector<MeasureRow> rows;
  std::uint64_t cell_index = 0;
  for (const std::string& layer : layers)
    for (TransformGroup group : opts.groups) {
      TrialPlan plan;
      plan.group = group;
      plan.n_trials = opts.trials;
      plan.schemes = opts.schemes;
      plan.bn_modes = opts.bn_modes;
      plan.training_fraction = opts.training_fraction;
      plan.seed = Rng(opts.seed).fork(0xC0FFEEull + cell_index).seed();
      ++cell_index;
      rows.push_back({layer, group, equivariance_error(preset(layer), maps, plan)});
    }
  return rows;
}

void run_measure_to_file(const MeasureOptions& opts, const std::filesystem::path& csv) {
  const std::vector<MeasureRow> rows = run_measure(opts);
  RunMeta meta;
  meta.emplace_back("command", "measure");
  meta.emplace_back("seed", seed_string(opts.seed));
  meta.emplace_back("maps", opts.maps_dir.has_value() ? opts.maps_dir->string() : "synthetic");
  if (!opts.maps_dir.has_value()) {
    meta.emplace_back("dims", opts.synthetic_dims.to_string());
    meta.emplace_back("n_maps", std::to_string(opts.n_maps));
    meta.emplace_back("spectrum", opts.spectrum.to_string());
  }
  meta.emplace_back("trials", std::to_string(opts.trials));
  write_measure_report(rows, meta, csv);
}

std::vector<PsdRow> run_spectrum(const SpectrumOptions& opts) {
  const std::vector<std::string> layers = resolve_layers(opts.layers);
  const std::vector<FeatureMap> maps = source_maps(
      opts.maps_dir, opts.synthetic_dims, opts.n_maps, opts.spectrum, opts.seed);

  std::vector<PsdRow> rows;

  // Raw upsampled input first: the band should be structurally empty.
  std::vector<FeatureMap> upsampled;
  upsampled.reserve(maps.size());
  for (const FeatureMap& m : maps) upsampled.push_back(upsample2x_sinc(m));
  PsdRow input_row;
  input_row.layer = "input";
  input_row.psd = radial_psd(upsampled, opts.bins);
  input_row.band_energy = aliasing_energy(input_row.psd);
  input_row.total = total_energy(input_row.psd);
  input_row.energy_ratio = input_row.total > 0.0 ? input_row.band_energy / input_row.total : 0.0;
  rows.push_back(std::move(input_row));

  for (const std::string& layer : layers) {
    const NormConfig cfg = preset(layer);
    const AffineParams params =
        init_params(cfg, maps.front().dims(), InitScheme::defaults, opts.seed);
    const AliasingProbe probe = aliasing_probe(cfg, params, maps, opts.bins);
    rows.push_back({layer, probe.psd, probe.band_energy, probe.total, probe.energy_ratio});
  }
  return rows;
}

void run_spectrum_to_file(const SpectrumOptions& opts, const std::filesystem::path& csv) {
  const std::vector<PsdRow> rows = run_spectrum(opts);
  RunMeta meta;
  meta.emplace_back("command", "spectrum");
  meta.emplace_back("seed", seed_string(opts.seed));
  meta.emplace_back("maps", opts.maps_dir.has_value() ? opts.maps_dir->string() : "synthetic");
  if (!opts.maps_dir.has_value()) {
    meta.emplace_back("dims", opts.synthetic_dims.to_string());
    meta.emplace_back("n_maps", std::to_string(opts.n_maps));
    meta.emplace_back("spectrum", opts.spectrum.to_string());
  }
  meta.emplace_back("bins", std::to_string(opts.bins));
  write_psd_report(rows, meta, csv);
}

std::vector<SweepRow> run_sweep(const SweepRunOptions& opts) {
  return equivariance_sweep(opts.sweep);
}

bool run_sweep_to_file(const SweepRunOptions& opts, const std::filesystem::path& csv) {
  const std::vector<SweepRow> rows = run_sweep(opts);
  RunMeta meta;
  meta.emplace_back("command", "sweep");
  meta.emplace_back("seed", seed_string(opts.sweep.seed));
  meta.emplace_back("dims", opts.sweep.dims.to_string());
  meta.emplace_back("t_lo", format_sci(opts.sweep.t_lo));
  meta.emplace_back("t_hi", format_sci(opts.sweep.t_hi));
  write_sweep_report(rows, meta, csv);
  for (const SweepRow& r : rows)
    if (!r.agreement) return false;
  return true;
}

}  // namespace equinorm
