#include "equinorm/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "equinorm/dft.hpp"
#include "equinorm/rng.hpp"

namespace equinorm {

MapSpectrum MapSpectrum::parse(std::string_view text) {
  if (text == "white") return white();
  constexpr std::string_view prefix = "lowpass:";
  if (text.size() > prefix.size() && text.substr(0, prefix.size()) == prefix) {
    const double bw = std::stod(std::string(text.substr(prefix.size())));
    if (!(bw > 0.0 && bw <= 0.5))
      throw std::invalid_argument("lowpass bandwidth must be in (0, 1/2]");
    return lowpass(bw);
  }
  throw std::invalid_argument("bad spectrum '" + std::string(text) +
                              "', expected white or lowpass:BW");
}

std::string MapSpectrum::to_string() const {
  if (kind == SpectrumKind::white) return "white";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "lowpass:%g", bandwidth);
  return buf;
}

FeatureMap lowpass_filter(const FeatureMap& x, double bandwidth) {
  const Dims& d = x.dims();
  const double bw2 = bandwidth * bandwidth + 1e-12;
  FeatureMap out = FeatureMap::zeros(d);
  for (Eigen::Index b = 0; b < d.b; ++b)
    for (Eigen::Index c = 0; c < d.c; ++c) {
      Eigen::ArrayXXcd spec = dft2(Eigen::ArrayXXd(x.slice(b, c)));
      for (Eigen::Index kh = 0; kh < d.h; ++kh)
        for (Eigen::Index kw = 0; kw < d.w; ++kw) {
          const double fh = static_cast<double>(symmetric_frequency(kh, d.h)) /
                            static_cast<double>(d.h);
          const double fw = static_cast<double>(symmetric_frequency(kw, d.w)) /
                            static_cast<double>(d.w);
          if (fh * fh + fw * fw > bw2) spec(kh, kw) = Complex(0.0, 0.0);
        }
      out.slice(b, c) = idft2(spec).real();
    }
  return out;
}

std::vector<FeatureMap> gen_maps(const Dims& dims, int n, const MapSpectrum& spectrum,
                                 std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("gen_maps needs n >= 0");
  std::vector<FeatureMap> maps;
  maps.reserve(static_cast<std::size_t>(n));
  const Rng base(seed);
  for (int i = 0; i < n; ++i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    Eigen::ArrayXd data(dims.count());
    for (Eigen::Index j = 0; j < data.size(); ++j) data[j] = rng.normal();
    FeatureMap m(dims, std::move(data));
    if (spectrum.kind == SpectrumKind::lowpass)
      m = lowpass_filter(m, spectrum.bandwidth);
    maps.push_back(std::move(m));
  }
  return maps;
}

}  // namespace equinorm
