#include "hdcoint/random.hpp"

#include <cmath>

namespace hdcoint {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL));
  return splitmix64(h ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

Eigen::MatrixXd standard_normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = normal(rng);
    }
  }
  return m;
}

double chi_variate(Rng& rng, double df) {
  std::gamma_distribution<double> gamma(0.5 * df, 2.0);
  return std::sqrt(gamma(rng));
}

}  // namespace hdcoint
