// Serial vs OpenMP timings for the 2D kernels on an n x n grid.
// Usage: cvw_bench [n] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "cvw/kernels.hpp"

namespace k = cvw::kernels;

namespace {

double seconds(const std::function<void()>& f, int repeats) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1024;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  if (!cvw::is_power_of_two(n) || repeats < 1) {
    std::fprintf(stderr, "usage: cvw_bench [n (power of two)] [repeats]\n");
    return 2;
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n * n);
  for (auto& x : p) x = u(rng);
  std::vector<cvw::cplx> amp(n * n);
  for (auto& z : amp) z = cvw::cplx(u(rng) - 0.5, u(rng) - 0.5);
  const cvw::Grid1D grid = cvw::Grid1D::self_dual(n);
  const cvw::FractionalFourier op(grid, 0.7);

  std::printf("n = %zu, repeats = %d, threads = %d\n", n, repeats, k::max_threads());
  std::printf("%-20s %12s %12s %9s %12s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "max |diff|");

  auto row = [&](const char* name, const std::function<std::vector<double>()>& s,
                 const std::function<std::vector<double>()>& par) {
    std::vector<double> rs, rp;
    const double ts = seconds([&] { rs = s(); }, repeats);
    const double tp = seconds([&] { rp = par(); }, repeats);
    std::printf("%-20s %12.5f %12.5f %9.2f %12.3g\n", name, ts, tp, ts / tp, max_abs_diff(rs, rp));
  };

  row("anti_diagonal_sums", [&] { return k::serial::anti_diagonal_sums(p, n, n); },
      [&] { return k::parallel::anti_diagonal_sums(p, n, n); });
  row("diagonal_sums", [&] { return k::serial::diagonal_sums(p, n, n); },
      [&] { return k::parallel::diagonal_sums(p, n, n); });
  row("row_sums", [&] { return k::serial::row_sums(p, n, n); }, [&] { return k::parallel::row_sums(p, n, n); });
  row("column_sums", [&] { return k::serial::column_sums(p, n, n); },
      [&] { return k::parallel::column_sums(p, n, n); });
  row("squared_modulus", [&] { return k::serial::squared_modulus(amp); },
      [&] { return k::parallel::squared_modulus(amp); });

  auto transform = [&](bool parallel, bool rows) {
    std::vector<cvw::cplx> work = amp;
    if (rows) {
      parallel ? k::parallel::transform_rows(work, n, n, op) : k::serial::transform_rows(work, n, n, op);
    } else {
      parallel ? k::parallel::transform_columns(work, n, n, op) : k::serial::transform_columns(work, n, n, op);
    }
    return k::serial::squared_modulus(work);
  };
  row("transform_rows", [&] { return transform(false, true); }, [&] { return transform(true, true); });
  row("transform_columns", [&] { return transform(false, false); }, [&] { return transform(true, false); });

  std::vector<double> a(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n));
  row("linear_convolution", [&] { return k::serial::linear_convolution(a, a); },
      [&] { return k::parallel::linear_convolution(a, a); });
  return 0;
}
