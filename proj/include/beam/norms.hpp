#pragma once
#include <limits>
#include <vector>

#include "beam/field.hpp"

namespace beam {

enum class SobolevFlavor { homogeneous, inhomogeneous };

// Sobolev index + flavor. Weight per mode:
//   inhomogeneous: (1 + |xi|^2)^s
//   homogeneous:   |xi|^{2s}, with the k=0 weight 1 at s=0 and 0 for s>0;
//                  s<0 requires a mean-zero field (relative tolerance 1e-12), else NumericError.
struct NormSpec {
  double s = 0.0;
  SobolevFlavor flavor = SobolevFlavor::inhomogeneous;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Physical normalization: ||f||^2 = L^n * sum_k w(xi_k) |c_k|^2, so that ||1||_{L^2} = L^{n/2}.
double sobolev_norm(const Spectrum& s, NormSpec spec);
double sobolev_norm(const Field& f, NormSpec spec);

// Rectangle-rule Lebesgue norm, r in [1, inf]; r = kInf gives the max norm.
double lebesgue_norm(const Field& f, double r);

// Composite-trapezoid-in-time L^p_t L^r_x norm of a sampled curve t -> field.
// p = kInf gives sup over samples. times must be strictly increasing, size >= 2 for finite p.
double spacetime_norm(const std::vector<double>& times, const std::vector<Field>& fields,
                      double p, double r);

}  // namespace beam
