#pragma once

#include <cstddef>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

/// The numerical radius of a square matrix with the angle and unit vector that attain it.
struct RadiusEstimate {
  double value = 0.0;
  double theta_star = 0.0;  // in [0, 2*pi)
  Vector witness;
  std::size_t grid_points = 0;
  bool refined = false;
};

/// Samples <T x_theta, x_theta> of the boundary of the numerical range.
struct RangeBoundary {
  std::vector<Complex> points;
  std::vector<double> thetas;
};

inline constexpr std::size_t kDefaultCoarseGrid = 512;
inline constexpr double kDefaultAngleTolerance = 1e-12;

/// (e^{i theta} T + e^{-i theta} T*) / 2.
ComplexMatrix rotated_real_part(const ComplexMatrix& t, double theta);

/// w(T) = max over theta of the top eigenvalue of the rotated real part.
///
/// The coarse grid is swept first, then every grid-local maximum that could
/// hide the global one is refined by golden-section search until the angle
/// bracket is narrower than `tol`. For dimensions above 32 the coarse grid is
/// doubled per doubling of dimension, capped at 8192 points.
RadiusEstimate numerical_radius(const ComplexMatrix& t, std::size_t coarse = kDefaultCoarseGrid,
                                double tol = kDefaultAngleTolerance);

/// Plain maximum over `m` uniform angles with no refinement. Splits the angle
/// range across the worker threads configured for the process.
double numerical_radius_gridsearch(const ComplexMatrix& t, std::size_t m);

RangeBoundary numerical_range_boundary(const ComplexMatrix& t, std::size_t m);

/// <T x, x> / <x, x>.
Complex rayleigh(const ComplexMatrix& t, std::span<const Complex> x);

}  // namespace numrad
