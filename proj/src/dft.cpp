#include "equinorm/dft.hpp"

#include <unsupported/Eigen/FFT>

namespace equinorm {

namespace {

enum class Direction { forward, inverse };

Eigen::VectorXcd transform(Eigen::FFT<double>& fft, const Eigen::VectorXcd& in,
                           Direction dir) {
  if (in.size() <= 1) return in;
  Eigen::VectorXcd out;
  if (dir == Direction::forward)
    fft.fwd(out, in);
  else
    fft.inv(out, in);
  return out;
}

// One FFT object per thread keeps kissfft plans cached across calls.
Eigen::FFT<double>& cached_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

Eigen::ArrayXXcd transform2(const Eigen::ArrayXXcd& in, Direction dir) {
  Eigen::MatrixXcd m = in.matrix();
  Eigen::FFT<double>& fft = cached_fft();
  Eigen::VectorXcd buf;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    buf = m.col(j);
    m.col(j) = transform(fft, buf, dir);
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    buf = m.row(i).transpose();
    m.row(i) = transform(fft, buf, dir).transpose();
  }
  return m.array();
}

}  // namespace

Eigen::ArrayXcd dft1(const Eigen::ArrayXcd& in) {
  return transform(cached_fft(), in.matrix(), Direction::forward).array();
}

Eigen::ArrayXcd idft1(const Eigen::ArrayXcd& in) {
  return transform(cached_fft(), in.matrix(), Direction::inverse).array();
}

Eigen::ArrayXXcd dft2(const Eigen::ArrayXXcd& in) {
  return transform2(in, Direction::forward);
}

Eigen::ArrayXXcd idft2(const Eigen::ArrayXXcd& in) {
  return transform2(in, Direction::inverse);
}

Eigen::ArrayXXcd dft2(const Eigen::ArrayXXd& in) {
  return dft2(in.cast<Complex>().eval());
}

}  // namespace equinorm
