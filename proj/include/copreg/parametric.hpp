#pragma once

#include <cstdint>
#include <string_view>

#include "copreg/sample.hpp"

namespace copreg {

enum class CopulaFamily { amh, clayton, m, pi };

CopulaFamily copula_family_from_string(std::string_view s);
std::string_view to_string(CopulaFamily f);

// Closed-form reference copulas used as ground truth. Pure value type;
// all members are re-entrant.
class CopulaSpec {
 public:
  static CopulaSpec amh(double theta);      // theta in [-1, 1)
  static CopulaSpec clayton(double theta);  // theta in [-1, inf) \ {0}
  static CopulaSpec m();
  static CopulaSpec pi();
  static CopulaSpec make(CopulaFamily family, double theta = 0.0);

  CopulaFamily family() const { return family_; }
  double theta() const { return theta_; }

  // Whether (x,y) -> K(x,[0,y]) admits a continuous version. False for
  // Clayton (discontinuity at x = 0) and for M (diagonal jumps).
  bool has_continuous_kernel() const;

  double cdf(double u, double v) const;

  // Markov kernel K(x, [0,y]). Clayton at x = 0 has no continuous
  // version; we return the y > 0 limit (1 for y > 0, 0 at y = 0) so
  // evaluation grids touching the boundary stay usable.
  double kernel(double x, double y) const;

  // n i.i.d. pairs via conditional inversion: V solves
  // K(U, [0,V]) = W with (U, W) uniform. Clayton inverts in closed
  // form, AMH by bisection (60 halvings), M gives (U,U), Pi (U,W).
  BivariateSample sample(std::size_t n, std::uint64_t seed) const;

 private:
  CopulaSpec(CopulaFamily f, double theta) : family_(f), theta_(theta) {}

  CopulaFamily family_;
  double theta_;
};

}  // namespace copreg
