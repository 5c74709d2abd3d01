#include "nevpick/kernels.hpp"

#include <omp.h>

#include "nevpick/analysis.hpp"

namespace nevpick::kernels {

namespace {

std::vector<Complex> filter_one(std::span<const double> y, Complex pole) {
  std::vector<Complex> u(y.size());
  Complex state = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    state = pole * state + y[t];
    u[t] = state;
  }
  return u;
}

Complex second_moment_one(std::span<const double> y, Complex pole) {
  Complex state = 0.0, acc = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    state = pole * state + y[t];
    acc += state * state;
  }
  return y.empty() ? Complex(0.0) : acc / static_cast<double>(y.size());
}

}  // namespace

std::vector<std::vector<Complex>> filter_bank_serial(std::span<const double> y, std::span<const Complex> poles) {
  std::vector<std::vector<Complex>> out(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) out[k] = filter_one(y, poles[k]);
  return out;
}

std::vector<std::vector<Complex>> filter_bank_parallel(std::span<const double> y, std::span<const Complex> poles) {
  const auto m = static_cast<std::ptrdiff_t>(poles.size());
  std::vector<std::vector<Complex>> out(poles.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) out[k] = filter_one(y, poles[k]);
  return out;
}

std::vector<Complex> bank_second_moments_serial(std::span<const double> y, std::span<const Complex> poles) {
  std::vector<Complex> out(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) out[k] = second_moment_one(y, poles[k]);
  return out;
}

std::vector<Complex> bank_second_moments_parallel(std::span<const double> y, std::span<const Complex> poles) {
  const auto m = static_cast<std::ptrdiff_t>(poles.size());
  std::vector<Complex> out(poles.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) out[k] = second_moment_one(y, poles[k]);
  return out;
}

Vec spectral_density_serial(const Solution& solution, std::span<const double> thetas) {
  Vec out(static_cast<Eigen::Index>(thetas.size()));
  for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = spectral_density(solution, thetas[i]);
  return out;
}

Vec spectral_density_parallel(const Solution& solution, std::span<const double> thetas) {
  const auto m = static_cast<std::ptrdiff_t>(thetas.size());
  Vec out(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) out[i] = spectral_density(solution, thetas[i]);
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace nevpick::kernels
