#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyproj/geometry.hpp"

namespace hyproj {

// Seedable generator with a fully pinned normal-variate transform so that outputs
// are bit-identical across platforms and standard libraries: uniforms come from
// mt19937_64 as (x >> 11) * 2^-53, normals from the polar-free Box-Muller pair
//   z0 = sqrt(-2 ln(1-u1)) cos(2 pi u2),  z1 = sqrt(-2 ln(1-u1)) sin(2 pi u2),
// with the second value cached.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}

  double uniform();  // [0, 1)
  double normal();   // standard normal

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Kronecker (additive golden-ratio style) low-discrepancy sequence in [0,1)^dim,
// x_k[j] = frac((k+1) sqrt(p_j)) with p_j the j-th prime. Deterministic.
std::vector<Vec> kronecker_sequence(int dim, int count);

// Acklam-style rational approximation of the standard normal quantile,
// accurate to ~1e-9. Used to turn low-discrepancy uniforms into directions.
double inverse_normal_cdf(double p);

}  // namespace hyproj
