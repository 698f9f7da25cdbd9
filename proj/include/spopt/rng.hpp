#pragma once

#include <cstdint>
#include <random>

#include "spopt/core.hpp"

namespace spopt {

/// Seeded random stream with a fixed, portable algorithm.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Distributions are implemented here rather than taken from
/// <random>, because the standard leaves their algorithms unspecified:
///   uniform(): top 53 bits of one engine draw, scaled by 2^-53, in [0, 1);
///   normal():  Box-Muller on two uniforms (u1 mapped to (0, 1]), returning
///              the cosine branch first and the cached sine branch second.
/// Matrices are filled in column-major order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace spopt
