#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace hdcoint {

using Rng = std::mt19937_64;

// Independent streams for the different consumers of a base seed. Sub-seeds
// are derived from (base, stream, index) so that any replication can be
// regenerated on its own, in any order, on any worker.
enum class Stream : std::uint64_t {
  noise = 1,
  replication = 2,
  haar = 3,
  wishart = 4,
  tridiagonal = 5,
  reference = 6,
  jacobi_pool = 7,
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

Eigen::MatrixXd standard_normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

// Chi-distributed variate with `df` > 0 degrees of freedom.
double chi_variate(Rng& rng, double df);

}  // namespace hdcoint
