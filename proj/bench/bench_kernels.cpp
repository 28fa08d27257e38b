// Times the OpenMP kernels against their serial references on random data.
// Usage: bench_kernels [rows] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "occelm/kernels.hpp"
#include "occelm/random.hpp"

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, occelm::Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

double best_of(int repeats, const std::function<Eigen::MatrixXd()>& f, Eigen::MatrixXd& result) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    result = f();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

void row(const char* name, int repeats, const std::function<Eigen::MatrixXd()>& parallel,
         const std::function<Eigen::MatrixXd()>& serial) {
  Eigen::MatrixXd a, b;
  const double tp = best_of(repeats, parallel, a);
  const double ts = best_of(repeats, serial, b);
  const bool same = a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
  std::printf("%-18s %12.3f %12.3f %8.2fx  %s\n", name, ts * 1e3, tp * 1e3, ts / tp, same ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const Eigen::Index n = argc > 1 ? std::atol(argv[1]) : 600;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  namespace k = occelm::kernels;
  namespace ref = occelm::kernels::reference;

  occelm::Rng rng(2024);
  const Eigen::MatrixXd X = random_matrix(n, 9, rng);
  const Eigen::MatrixXd W = random_matrix(200, 9, rng);
  const Eigen::VectorXd b = random_matrix(200, 1, rng).col(0).cwiseAbs();
  const Eigen::MatrixXd beta = random_matrix(n, 9, rng);

  std::printf("rows=%ld threads=%d repeats=%d\n", static_cast<long>(n), omp_get_max_threads(), repeats);
  std::printf("%-18s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");
  row("sigmoid_features", repeats, [&] { return k::sigmoid_features(X, W, b); },
      [&] { return ref::sigmoid_features(X, W, b); });
  row("rbf_features", repeats, [&] { return k::rbf_features(X, W, b); }, [&] { return ref::rbf_features(X, W, b); });
  row("rbf_gram", repeats, [&] { return k::rbf_gram(X, X, 1.5); }, [&] { return ref::rbf_gram(X, X, 1.5); });
  row("linear_gram", repeats, [&] { return k::linear_gram(X, X); }, [&] { return ref::linear_gram(X, X); });
  row("polynomial_gram", repeats, [&] { return k::polynomial_gram(X, X, 3, 1); },
      [&] { return ref::polynomial_gram(X, X, 3, 1); });
  row("wavelet_gram", repeats, [&] { return k::wavelet_gram(X, X, 1.75, 1, 2); },
      [&] { return ref::wavelet_gram(X, X, 1.75, 1, 2); });
  const Eigen::MatrixXd K = k::rbf_gram(X, X, 1.5);
  row("multiply", repeats, [&] { return k::multiply(K, beta); }, [&] { return ref::multiply(K, beta); });
  row("distance_range", repeats,
      [&] {
        const auto [lo, hi] = k::distance_range(X);
        return Eigen::MatrixXd{{lo, hi}};
      },
      [&] {
        const auto [lo, hi] = ref::distance_range(X);
        return Eigen::MatrixXd{{lo, hi}};
      });
  return 0;
}
