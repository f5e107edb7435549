#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "equinorm/workflows.hpp"

namespace {

using namespace equinorm;

Dims parse_dims(const std::vector<unsigned>& v) {
  if (v.size() != 4) throw CLI::ValidationError("--dims expects B,C,H,W");
  return Dims{static_cast<Eigen::Index>(v[0]), static_cast<Eigen::Index>(v[1]),
              static_cast<Eigen::Index>(v[2]), static_cast<Eigen::Index>(v[3])};
}

std::vector<TransformGroup> parse_groups(const std::vector<std::string>& names) {
  std::vector<TransformGroup> groups;
  for (const std::string& n : names) {
    if (n == "shift")
      groups.push_back(TransformGroup::shift);
    else if (n == "translation")
      groups.push_back(TransformGroup::translation);
    else
      throw CLI::ValidationError("--groups entries must be shift or translation");
  }
  return groups;
}

SchemeMix parse_schemes(const std::vector<std::string>& names) {
  bool def = false, gauss = false;
  for (const std::string& n : names) {
    if (n == "default")
      def = true;
    else if (n == "gaussian")
      gauss = true;
    else
      throw CLI::ValidationError("--schemes entries must be default or gaussian");
  }
  if (def && gauss) return SchemeMix::both;
  return def ? SchemeMix::defaults : SchemeMix::gaussian;
}

ModeMix parse_modes(const std::vector<std::string>& names) {
  bool train = false, eval = false;
  for (const std::string& n : names) {
    if (n == "training")
      train = true;
    else if (n == "evaluation")
      eval = true;
    else
      throw CLI::ValidationError("--bn-modes entries must be training or evaluation");
  }
  if (train && eval) return ModeMix::both;
  return train ? ModeMix::training : ModeMix::evaluation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariance toolkit for axis-parameterized normalization layers"};
  app.require_subcommand(1);

  // --- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate synthetic feature-map files");
  std::vector<unsigned> gen_dims = {8, 16, 32, 32};
  int gen_n = 8;
  std::string gen_spectrum = "white";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dims", gen_dims, "map dims B,C,H,W")->delimiter(',');
  gen->add_option("--n", gen_n, "number of maps");
  gen->add_option("--spectrum", gen_spectrum, "white or lowpass:BW");
  gen->add_option("--seed", gen_seed, "rng seed")->envname("EQUINORM_SEED");
  gen->add_option("--out", gen_out, "output directory")->required();

  // --- measure -------------------------------------------------------------
  auto* measure = app.add_subcommand("measure", "Monte-Carlo equivariance errors");
  std::vector<std::string> m_layers = {"all"};
  std::vector<std::string> m_groups = {"shift", "translation"};
  std::string m_maps_dir;
  std::vector<unsigned> m_dims = {8, 16, 32, 32};
  int m_nmaps = 8;
  std::string m_spectrum = "lowpass:0.375";
  int m_trials = 256;
  std::vector<std::string> m_schemes = {"default", "gaussian"};
  std::vector<std::string> m_modes = {"training", "evaluation"};
  std::uint64_t m_seed = 0;
  std::string m_out;
  measure->add_option("--layers", m_layers, "layer names or all")->delimiter(',');
  measure->add_option("--groups", m_groups, "shift,translation")->delimiter(',');
  auto* m_maps_opt = measure->add_option("--maps", m_maps_dir, "directory of tensor files");
  auto* m_synth_opt =
      measure->add_option("--synthetic", m_dims, "synthetic map dims B,C,H,W")->delimiter(',');
  m_maps_opt->excludes(m_synth_opt);
  measure->add_option("--n-maps", m_nmaps, "synthetic map count");
  measure->add_option("--spectrum", m_spectrum, "synthetic spectrum, white or lowpass:BW");
  measure->add_option("--trials", m_trials, "trials per (layer, group) cell");
  measure->add_option("--schemes", m_schemes, "default,gaussian")->delimiter(',');
  measure->add_option("--bn-modes", m_modes, "training,evaluation")->delimiter(',');
  measure->add_option("--seed", m_seed, "rng seed")->envname("EQUINORM_SEED");
  measure->add_option("--out", m_out, "report CSV path")->required();

  // --- spectrum ------------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "radial PSD and aliasing-band energy");
  std::vector<std::string> s_layers = {"BatchNorm", "InstanceNorm", "LayerNorm-C",
                                       "LayerNorm-AF"};
  std::string s_maps_dir;
  std::vector<unsigned> s_dims = {2, 16, 32, 32};
  int s_nmaps = 4;
  std::string s_spectrum = "white";
  int s_bins = 64;
  std::uint64_t s_seed = 0;
  std::string s_out;
  spectrum->add_option("--layers", s_layers, "shift-equivariant layer names")->delimiter(',');
  auto* s_maps_opt = spectrum->add_option("--maps", s_maps_dir, "directory of tensor files");
  auto* s_synth_opt =
      spectrum->add_option("--synthetic", s_dims, "synthetic map dims B,C,H,W")->delimiter(',');
  s_maps_opt->excludes(s_synth_opt);
  spectrum->add_option("--n-maps", s_nmaps, "synthetic map count");
  spectrum->add_option("--spectrum", s_spectrum, "synthetic spectrum");
  spectrum->add_option("--bins", s_bins, "radial bins");
  spectrum->add_option("--seed", s_seed, "rng seed")->envname("EQUINORM_SEED");
  spectrum->add_option("--out", s_out, "PSD CSV path")->required();

  // --- sweep ---------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "classify every axis configuration");
  std::vector<unsigned> w_dims = {2, 3, 8, 8};
  double w_tlo = 1e-8, w_thi = 1e-4;
  int w_maps = 2;
  std::uint64_t w_seed = 0;
  std::string w_out;
  sweep->add_option("--dims", w_dims, "map dims B,C,H,W")->delimiter(',');
  sweep->add_option("--t-lo", w_tlo, "equivariant threshold");
  sweep->add_option("--t-hi", w_thi, "non-equivariant threshold");
  sweep->add_option("--maps-per-config", w_maps, "maps drawn per configuration");
  sweep->add_option("--seed", w_seed, "rng seed")->envname("EQUINORM_SEED");
  sweep->add_option("--out", w_out, "sweep CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      GenOptions opts;
      opts.dims = parse_dims(gen_dims);
      opts.n = gen_n;
      opts.spectrum = MapSpectrum::parse(gen_spectrum);
      opts.seed = gen_seed;
      opts.out_dir = gen_out;
      const auto written = run_gen(opts);
      std::printf("wrote %zu map(s) to %s\n", written.size(), gen_out.c_str());
      return 0;
    }
    if (measure->parsed()) {
      MeasureOptions opts;
      opts.layers = m_layers;
      opts.groups = parse_groups(m_groups);
      if (!m_maps_dir.empty()) opts.maps_dir = m_maps_dir;
      opts.synthetic_dims = parse_dims(m_dims);
      opts.n_maps = m_nmaps;
      opts.spectrum = MapSpectrum::parse(m_spectrum);
      opts.trials = m_trials;
      opts.schemes = parse_schemes(m_schemes);
      opts.bn_modes = parse_modes(m_modes);
      opts.seed = m_seed;
      run_measure_to_file(opts, m_out);
      std::printf("wrote %s\n", m_out.c_str());
      return 0;
    }
    if (spectrum->parsed()) {
      SpectrumOptions opts;
      opts.layers = s_layers;
      if (!s_maps_dir.empty()) opts.maps_dir = s_maps_dir;
      opts.synthetic_dims = parse_dims(s_dims);
      opts.n_maps = s_nmaps;
      opts.spectrum = MapSpectrum::parse(s_spectrum);
      opts.bins = s_bins;
      opts.seed = s_seed;
      run_spectrum_to_file(opts, s_out);
      std::printf("wrote %s\n", s_out.c_str());
      return 0;
    }
    if (sweep->parsed()) {
      SweepRunOptions opts;
      opts.sweep.dims = parse_dims(w_dims);
      opts.sweep.t_lo = w_tlo;
      opts.sweep.t_hi = w_thi;
      opts.sweep.maps_per_config = w_maps;
      opts.sweep.seed = w_seed;
      const bool all_agree = run_sweep_to_file(opts, w_out);
      std::printf("wrote %s (%s)\n", w_out.c_str(),
                  all_agree ? "all rows agree" : "DISAGREEMENT");
      return all_agree ? 0 : 2;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
