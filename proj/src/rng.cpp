#include "hyproj/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hyproj {

double NormalSampler::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double NormalSampler::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));  // ln(1-u1), u1 in [0,1) so arg > 0
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

namespace {

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  primes.reserve(count);
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool composite = false;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        composite = true;
        break;
      }
    }
    if (!composite) primes.push_back(c);
  }
  return primes;
}

}  // namespace

std::vector<Vec> kronecker_sequence(int dim, int count) {
  if (dim < 1 || count < 0) throw std::invalid_argument("kronecker_sequence: bad arguments");
  const std::vector<int> primes = first_primes(dim);
  Vec alpha(dim);
  for (int j = 0; j < dim; ++j) {
    double r = std::sqrt(static_cast<double>(primes[j]));
    alpha[j] = r - std::floor(r);
  }
  std::vector<Vec> out;
  out.reserve(count);
  Vec x = Vec::Zero(dim);
  for (int k = 0; k < count; ++k) {
    for (int j = 0; j < dim; ++j) {
      x[j] += alpha[j];
      if (x[j] >= 1.0) x[j] -= 1.0;
    }
    out.push_back(x);
  }
  return out;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");
  // Acklam's coefficients.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r, x;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    q = p - 0.5;
    r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement step against the actual CDF.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

}  // namespace hyproj
