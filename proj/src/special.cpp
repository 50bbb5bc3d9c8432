#include <cmath>
#include <numbers>

#include "fqbias/bias.hpp"

namespace fqbias {

double bessel_j0(double z) { return std::cyl_bessel_j(0.0, std::abs(z)); }

double gaussian_mixture_cdf(double x, double b, std::uint64_t q) {
  const double sq = std::sqrt(static_cast<double>(q));
  const double m1 = 2 * b / (sq + 1), m2 = 2 * b * sq / (sq + 1);
  auto Phi = [](double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); };
  return 0.5 * (Phi(x - m1) + Phi(x - m2));
}

}  // namespace fqbias
