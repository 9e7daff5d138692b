#include "isoperi/sampling.hpp"

#include <cmath>
#include <numbers>

namespace isoperi {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double gaussian(Rng& rng) {
  const double u = 1.0 - uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::vector<double> random_unit(std::size_t dim, Rng& rng) {
  for (;;) {
    std::vector<double> x(dim);
    double s = 0.0;
    for (double& v : x) {
      v = gaussian(rng);
      s += v * v;
    }
    if (s < 1e-24) continue;
    s = std::sqrt(s);
    for (double& v : x) v /= s;
    return x;
  }
}

}  // namespace isoperi
