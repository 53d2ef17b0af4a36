#include "cvw/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cvw::kernels {

namespace {

void check_shape(std::size_t size, std::size_t n1, std::size_t n2) {
  if (size != n1 * n2) throw std::invalid_argument("kernel: array size does not match shape");
}

using index_t = std::int64_t;

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------- serial

namespace serial {

std::vector<double> linear_convolution(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> anti_diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  std::vector<double> out(n1 + n2 - 1, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out[i + j] += p[i * n2 + j];
  return out;
}

std::vector<double> diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  std::vector<double> out(n1 + n2 - 1, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out[i + (n2 - 1) - j] += p[i * n2 + j];
  return out;
}

std::vector<double> row_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  std::vector<double> out(n1, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out[i] += p[i * n2 + j];
  return out;
}

std::vector<double> column_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  std::vector<double> out(n2, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out[j] += p[i * n2 + j];
  return out;
}

void transform_rows(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op) {
  check_shape(data.size(), n1, n2);
  for (std::size_t i = 0; i < n1; ++i) op.apply(data.subspan(i * n2, n2));
}

void transform_columns(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op) {
  check_shape(data.size(), n1, n2);
  std::vector<cplx> column(n1);
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) column[i] = data[i * n2 + j];
    op.apply(column);
    for (std::size_t i = 0; i < n1; ++i) data[i * n2 + j] = column[i];
  }
}

std::vector<double> squared_modulus(std::span<const cplx> data) {
  std::vector<double> out(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) out[k] = std::norm(data[k]);
  return out;
}

}  // namespace serial

// -------------------------------------------------------------- parallel

namespace parallel {

std::vector<double> linear_convolution(std::span<const double> a, std::span<const double> b) {
  const index_t na = static_cast<index_t>(a.size());
  const index_t nb = static_cast<index_t>(b.size());
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  const index_t n = static_cast<index_t>(out.size());
#pragma omp parallel for schedule(static)
  for (index_t k = 0; k < n; ++k) {
    index_t lo = std::max<index_t>(0, k - nb + 1);
    index_t hi = std::min<index_t>(k, na - 1);
    double s = 0.0;
    for (index_t i = lo; i <= hi; ++i) s += a[i] * b[k - i];
    out[k] = s;
  }
  return out;
}

std::vector<double> anti_diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  const index_t r = static_cast<index_t>(n1);
  const index_t c = static_cast<index_t>(n2);
  std::vector<double> out(n1 + n2 - 1, 0.0);
  const index_t n = static_cast<index_t>(out.size());
#pragma omp parallel for schedule(static)
  for (index_t k = 0; k < n; ++k) {
    index_t lo = std::max<index_t>(0, k - c + 1);
    index_t hi = std::min<index_t>(k, r - 1);
    double s = 0.0;
    for (index_t i = lo; i <= hi; ++i) s += p[i * c + (k - i)];
    out[k] = s;
  }
  return out;
}

std::vector<double> diagonal_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  const index_t r = static_cast<index_t>(n1);
  const index_t c = static_cast<index_t>(n2);
  std::vector<double> out(n1 + n2 - 1, 0.0);
  const index_t n = static_cast<index_t>(out.size());
#pragma omp parallel for schedule(static)
  for (index_t k = 0; k < n; ++k) {
    // i - j = k - (c - 1)  =>  j = i - k + c - 1
    index_t shift = k - (c - 1);
    index_t lo = std::max<index_t>(0, shift);
    index_t hi = std::min<index_t>(r - 1, shift + c - 1);
    double s = 0.0;
    for (index_t i = lo; i <= hi; ++i) s += p[i * c + (i - shift)];
    out[k] = s;
  }
  return out;
}

std::vector<double> row_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  const index_t r = static_cast<index_t>(n1);
  const index_t c = static_cast<index_t>(n2);
  std::vector<double> out(n1, 0.0);
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < r; ++i) {
    double s = 0.0;
    for (index_t j = 0; j < c; ++j) s += p[i * c + j];
    out[i] = s;
  }
  return out;
}

std::vector<double> column_sums(std::span<const double> p, std::size_t n1, std::size_t n2) {
  check_shape(p.size(), n1, n2);
  const index_t r = static_cast<index_t>(n1);
  const index_t c = static_cast<index_t>(n2);
  std::vector<double> out(n2, 0.0);
#pragma omp parallel for schedule(static)
  for (index_t j = 0; j < c; ++j) {
    double s = 0.0;
    for (index_t i = 0; i < r; ++i) s += p[i * c + j];
    out[j] = s;
  }
  return out;
}

void transform_rows(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op) {
  check_shape(data.size(), n1, n2);
  const index_t r = static_cast<index_t>(n1);
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < r; ++i) op.apply(data.subspan(static_cast<std::size_t>(i) * n2, n2));
}

void transform_columns(std::span<cplx> data, std::size_t n1, std::size_t n2, const FractionalFourier& op) {
  check_shape(data.size(), n1, n2);
  const index_t c = static_cast<index_t>(n2);
#pragma omp parallel
  {
    std::vector<cplx> column(n1);
#pragma omp for schedule(static)
    for (index_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < n1; ++i) column[i] = data[i * n2 + j];
      op.apply(column);
      for (std::size_t i = 0; i < n1; ++i) data[i * n2 + j] = column[i];
    }
  }
}

std::vector<double> squared_modulus(std::span<const cplx> data) {
  const index_t n = static_cast<index_t>(data.size());
  std::vector<double> out(data.size());
#pragma omp parallel for schedule(static)
  for (index_t k = 0; k < n; ++k) out[k] = std::norm(data[k]);
  return out;
}

}  // namespace parallel

}  // namespace cvw::kernels
