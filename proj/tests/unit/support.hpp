#pragma once

#include <cmath>
#include <random>

#include "hencky/tensor.hpp"

namespace testing {

inline double max_abs_diff(const hencky::Tensor3& a, const hencky::Tensor3& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double max_abs_diff(const hencky::SymTensor3& a, const hencky::SymTensor3& b) {
  return max_abs_diff(a.full(), b.full());
}

inline hencky::SymTensor3 random_sym(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {scale * u(rng), scale * u(rng), scale * u(rng), scale * u(rng), scale * u(rng), scale * u(rng)};
}

// Rotation from a random unit quaternion.
inline hencky::Tensor3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
  const double s = std::sqrt(w * w + x * x + y * y + z * z);
  w /= s, x /= s, y /= s, z /= s;
  return hencky::Tensor3({1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
                          2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
                          2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)});
}

}  // namespace testing
