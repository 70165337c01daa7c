// Wall-clock comparison of the OpenMP kernels against their serial
// references on production-sized operands.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "faddeev/grids.hpp"
#include "faddeev/kernels.hpp"

using namespace faddeev;
using cplx = std::complex<double>;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  f();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.3f ms   openmp %9.3f ms   speedup %5.2f\n", name, 1e3 * serial, 1e3 * parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int n_block = argc > 1 ? std::atoi(argv[1]) : 512;  // channels x alpha
  const int n_rho = argc > 2 ? std::atoi(argv[2]) : 500;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 5;
  std::printf("operands %d x %d, %d OpenMP threads\n", n_block, n_rho, omp_get_max_threads());

  std::mt19937 gen(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::MatrixXcd u(n_block, n_rho), y(n_block, n_rho);
  Eigen::MatrixXd v(n_block, n_rho);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u.data()[i] = cplx(d(gen), d(gen));
    v.data()[i] = d(gen);
  }
  Eigen::VectorXcd lam(n_block), gam(n_rho);
  for (auto& z : lam) z = cplx(2.0 + d(gen), d(gen));
  for (auto& z : gam) z = cplx(2.0 + d(gen), d(gen));

  y = u;
  report("hadamard_accumulate", seconds([&] { kernels::serial::hadamard_accumulate(y, v, u); }, reps),
         seconds([&] { kernels::omp::hadamard_accumulate(y, v, u); }, reps));

  Eigen::MatrixXcd x = u;
  report("divide_by_sum", seconds([&] { x = u; kernels::serial::divide_by_sum(x, lam, gam); }, reps),
         seconds([&] { x = u; kernels::omp::divide_by_sum(x, lam, gam); }, reps));

  const int blocks = 2;
  Eigen::MatrixXcd m(n_block / blocks, n_block / blocks);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(d(gen), d(gen));
  report("block_diagonal_apply",
         seconds([&] { y = kernels::serial::block_diagonal_apply(m, u, blocks); }, reps),
         seconds([&] { y = kernels::omp::block_diagonal_apply(m, u, blocks); }, reps));

  const auto basis = apply_alpha_dirichlet(build_alpha_grid(n_block / blocks, std::nullopt, 1.0));
  const auto pts = basis.collocation_points();
  const double phi = 3.14159265358979323846 / 3;
  Eigen::VectorXd lo(static_cast<Eigen::Index>(pts.size())), hi(lo.size());
  for (Eigen::Index q = 0; q < lo.size(); ++q) {
    lo(q) = std::abs(phi - pts[q]);
    hi(q) = 3.14159265358979323846 / 2 - std::abs(3.14159265358979323846 / 2 - phi - pts[q]);
  }
  Eigen::MatrixXd k;
  report("window_integrals", seconds([&] { k = kernels::serial::window_integrals(basis, lo, hi, 1.0); }, reps),
         seconds([&] { k = kernels::omp::window_integrals(basis, lo, hi, 1.0); }, reps));
  return 0;
}
