#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version; the parallel split never changes the per-element summation order,
// so both return bit-identical results.

#include <span>
#include <vector>

#include "nevpick/polyalg.hpp"

namespace nevpick {

struct Solution;

enum class Execution { kSerial, kParallel };

namespace kernels {

/// u_k(t) = p_k u_k(t-1) + y(t), u_k(-1) = 0, for every pole.
std::vector<std::vector<Complex>> filter_bank_serial(std::span<const double> y, std::span<const Complex> poles);
std::vector<std::vector<Complex>> filter_bank_parallel(std::span<const double> y, std::span<const Complex> poles);

/// mean_t u_k(t)^2 (plain square, not |u_k|^2) without storing the series.
std::vector<Complex> bank_second_moments_serial(std::span<const double> y, std::span<const Complex> poles);
std::vector<Complex> bank_second_moments_parallel(std::span<const double> y, std::span<const Complex> poles);

Vec spectral_density_serial(const Solution& solution, std::span<const double> thetas);
Vec spectral_density_parallel(const Solution& solution, std::span<const double> thetas);

/// Maximum omp threads available (1 without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace nevpick
