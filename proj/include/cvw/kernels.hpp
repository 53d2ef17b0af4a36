#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// straightforward reference kept for testing and benchmarking, `parallel` is
// the OpenMP version the library calls. Results agree to rounding.
//
// 2D arrays are row-major with n1 rows (first mode) and n2 columns.

#include <span>
#include <vector>

#include "cvw/fourier.hpp"
#include "cvw/grid.hpp"

namespace cvw::kernels {

namespace serial {

std::vector<double> linear_convolution(std::span<const double> a, std::span<const double> b);
/// out[k] = Σ_{i+j=k} P[i][j], k = 0..n1+n2-2.
std::vector<double> anti_diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
/// out[k] = Σ_{i-j=k-(n2-1)} P[i][j], k = 0..n1+n2-2.
std::vector<double> diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
std::vector<double> row_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
std::vector<double> column_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
void transform_rows(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op);
void transform_columns(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op);
std::vector<double> squared_modulus(std::span<const cplx> data);

}  // namespace serial

namespace parallel {

std::vector<double> linear_convolution(std::span<const double> a, std::span<const double> b);
std::vector<double> anti_diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
std::vector<double> diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
std::vector<double> row_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
std::vector<double> column_sums(std::span<const double> p, std::size_t n1, std::size_t n2);
void transform_rows(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op);
void transform_columns(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op);
std::vector<double> squared_modulus(std::span<const cplx> data);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace cvw::kernels
