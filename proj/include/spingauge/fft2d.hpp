#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace spingauge {

using ComplexGrid = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;

/// Separable 2D discrete Fourier transform on an nx-by-ny array (x along
/// rows). inverse(forward(a)) == a up to rounding.
class Fft2d {
 public:
  Fft2d(int nx, int ny);

  void forward(ComplexGrid& a);
  void inverse(ComplexGrid& a);

 private:
  void transform(ComplexGrid& a, bool fwd);

  int nx_;
  int ny_;
  Eigen::FFT<double> fft_;
  std::vector<std::complex<double>> in_;
  std::vector<std::complex<double>> out_;
};

}  // namespace spingauge
