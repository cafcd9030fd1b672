#include "spingauge/fft2d.hpp"

namespace spingauge {

Fft2d::Fft2d(int nx, int ny)
    : nx_(nx), ny_(ny), in_(static_cast<std::size_t>(std::max(nx, ny))),
      out_(static_cast<std::size_t>(std::max(nx, ny))) {}

void Fft2d::forward(ComplexGrid& a) { transform(a, true); }

void Fft2d::inverse(ComplexGrid& a) { transform(a, false); }

void Fft2d::transform(ComplexGrid& a, bool fwd) {
  // Columns are contiguous in Eigen's default storage.
  for (int j = 0; j < ny_; ++j) {
    std::complex<double>* col = a.col(j).data();
    if (fwd) {
      fft_.fwd(out_.data(), col, nx_);
    } else {
      fft_.inv(out_.data(), col, nx_);
    }
    std::copy_n(out_.data(), nx_, col);
  }
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < ny_; ++j) in_[static_cast<std::size_t>(j)] = a(i, j);
    if (fwd) {
      fft_.fwd(out_.data(), in_.data(), ny_);
    } else {
      fft_.inv(out_.data(), in_.data(), ny_);
    }
    for (int j = 0; j < ny_; ++j) a(i, j) = out_[static_cast<std::size_t>(j)];
  }
}

}  // namespace spingauge
