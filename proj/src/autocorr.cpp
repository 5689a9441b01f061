#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "runsum/approx.hpp"
#include "runsum/error.hpp"

namespace runsum {

namespace {
// The FFTW planner is not reentrant.
std::mutex fftw_planner_mutex;
}  // namespace

AutocorrModel::AutocorrModel(std::vector<double> values) : phi_(std::move(values)) {
  if (phi_.size() < 3 || phi_.size() % 2 == 0) {
    throw InvalidArgument("AutocorrModel: phi needs an odd length >= 3");
  }
  radius_ = phi_.size() / 2;
  double scale = 0.0;
  for (double v : phi_) {
    if (!std::isfinite(v)) throw InvalidArgument("AutocorrModel: non-finite phi");
    scale = std::max(scale, std::abs(v));
  }
  for (std::size_t j = 1; j <= radius_; ++j) {
    double& neg = phi_[radius_ - j];
    const double pos = phi_[radius_ + j];
    if (std::abs(neg - pos) > 1e-12 * scale) {
      throw InvalidArgument("AutocorrModel: phi is not even");
    }
    neg = pos;
  }

  const std::size_t dim = dimension();
  matrix_.resize(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) {
      matrix_[j * dim + k] = phi(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(k));
    }
  }
}

AutocorrModel build_autocorr(std::size_t r, double dc_value) {
  if (r == 0) throw InvalidArgument("build_autocorr: r must be >= 1");
  if (!std::isfinite(dc_value)) throw InvalidArgument("build_autocorr: non-finite DC value");

  const std::size_t n = 2 * r + 1;
  fftw_complex* spectrum = fftw_alloc_complex(r + 1);
  double* signal = fftw_alloc_real(n);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex);
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), spectrum, signal, FFTW_ESTIMATE);
  }
  spectrum[0][0] = dc_value;
  spectrum[0][1] = 0.0;
  for (std::size_t u = 1; u <= r; ++u) {
    const double ud = static_cast<double>(u);
    spectrum[u][0] = 1.0 / (ud * ud);
    spectrum[u][1] = 0.0;
  }
  fftw_execute(plan);

  std::vector<double> phi(n);
  for (std::size_t j = 0; j <= r; ++j) {
    const double v = signal[j] / static_cast<double>(n);
    phi[r + j] = v;
    phi[r - j] = v;
  }
  {
    std::lock_guard lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(signal);
  fftw_free(spectrum);
  return AutocorrModel(std::move(phi));
}

AutocorrModel identity_model(std::size_t r) {
  if (r == 0) throw InvalidArgument("identity_model: r must be >= 1");
  std::vector<double> phi(2 * r + 1, 0.0);
  phi[r] = 1.0;
  return AutocorrModel(std::move(phi));
}

}  // namespace runsum
