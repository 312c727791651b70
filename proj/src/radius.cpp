#include "numrad/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "numrad/linalg.hpp"
#include "numrad/parallel.hpp"

namespace numrad {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498948482;  // 1/golden ratio
constexpr std::size_t kMaxCoarseGrid = 8192;
constexpr std::size_t kMaxRefinedCandidates = 64;
constexpr double kNearTieGap = 1e-9;

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + " requires a square matrix, got " + a.shape());
  }
}

// f(theta) = lambda_max(cos(theta) Re T - sin(theta) Im T), evaluated into a
// reusable buffer.
class RotatedSpectrum {
 public:
  explicit RotatedSpectrum(const ComplexMatrix& t) : n_(t.rows()), buf_(n_ * n_) {
    const CartesianPair parts = cartesian_parts(t);
    re_.assign(parts.t1.entries().begin(), parts.t1.entries().end());
    im_.assign(parts.t2.entries().begin(), parts.t2.entries().end());
  }

  double operator()(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t k = i * n_ + j;
        buf_[k] = c * re_[k] - s * im_[k];
      }
    }
    return detail::largest_eigenvalue_inplace(buf_, n_);
  }

 private:
  std::size_t n_;
  std::vector<Complex> re_;
  std::vector<Complex> im_;
  std::vector<Complex> buf_;
};

struct Peak {
  double theta;
  double value;
};

// Golden-section maximization of f on [a, b]; `seed` is a known point inside.
Peak golden_maximize(RotatedSpectrum& f, double a, double b, Peak seed, double tol) {
  Peak best = seed;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      if (f1 > best.value) best = {x1, f1};
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      if (f2 > best.value) best = {x2, f2};
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 > best.value) best = {x1, f1};
  if (f2 > best.value) best = {x2, f2};
  return best;
}

std::size_t effective_grid(std::size_t coarse, std::size_t dim) {
  std::size_t grid = coarse;
  for (std::size_t limit = 32; dim > limit && grid < kMaxCoarseGrid; limit *= 2) {
    grid = std::min(kMaxCoarseGrid, grid * 2);
  }
  return std::max(grid, coarse);
}

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Vector top_eigenvector(const ComplexMatrix& t, double theta) {
  const EigenResult eig = hermitian_eigen(rotated_real_part(t, theta), true);
  const ComplexMatrix& vecs = *eig.vectors;
  const std::size_t n = vecs.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = vecs(i, n - 1);
  const double norm = vector_norm(x);
  for (Complex& z : x) z /= norm;
  return x;
}

}  // namespace

ComplexMatrix rotated_real_part(const ComplexMatrix& t, double theta) {
  require_square(t, "rotated_real_part");
  const std::size_t n = t.rows();
  const Complex e = std::polar(1.0, theta);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex v = 0.5 * (e * t(i, j) + std::conj(e * t(j, i)));
      if (i == j) v = v.real();
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

RadiusEstimate numerical_radius(const ComplexMatrix& t, std::size_t coarse, double tol) {
  require_square(t, "numerical_radius");
  if (coarse < 8) throw InvalidArgumentError("numerical_radius: coarse grid must be at least 8");
  if (!(tol > 0.0)) throw InvalidArgumentError("numerical_radius: tolerance must be positive");

  const std::size_t grid = effective_grid(coarse, t.rows());
  const double step = kTwoPi / static_cast<double>(grid);
  RotatedSpectrum f(t);

  std::vector<double> values(grid);
  for (std::size_t k = 0; k < grid; ++k) values[k] = f(step * static_cast<double>(k));

  const auto max_it = std::max_element(values.begin(), values.end());
  const auto [min_v, max_v] = std::minmax_element(values.begin(), values.end());
  Peak best{step * static_cast<double>(max_it - values.begin()), *max_it};

  RadiusEstimate est;
  est.grid_points = grid;

  const bool flat = *max_v - *min_v <= 1e-12 * std::max(1.0, std::abs(*max_v));
  if (!flat) {
    // A peak between grid points can exceed its grid neighbours by about the
    // local second difference, so anything that close to the incumbent is refined.
    double curvature = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
      const double prev = values[(k + grid - 1) % grid];
      const double next = values[(k + 1) % grid];
      curvature = std::max(curvature, std::abs(prev - 2.0 * values[k] + next));
    }
    const double window = std::max(kNearTieGap, curvature);

    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < grid; ++k) {
      const double prev = values[(k + grid - 1) % grid];
      const double next = values[(k + 1) % grid];
      if (values[k] >= prev && values[k] >= next && values[k] >= best.value - window) {
        candidates.push_back(k);
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    if (candidates.size() > kMaxRefinedCandidates) candidates.resize(kMaxRefinedCandidates);

    for (std::size_t k : candidates) {
      const double center = step * static_cast<double>(k);
      const Peak peak = golden_maximize(f, center - step, center + step, {center, values[k]}, tol);
      if (peak.value > best.value) best = peak;
    }
    est.refined = !candidates.empty();
  }

  est.value = std::max(best.value, 0.0);
  est.theta_star = wrap_angle(best.theta);
  est.witness = top_eigenvector(t, est.theta_star);
  return est;
}

double numerical_radius_gridsearch(const ComplexMatrix& t, std::size_t m) {
  require_square(t, "numerical_radius_gridsearch");
  if (m < 16) throw InvalidArgumentError("numerical_radius_gridsearch: m must be at least 16");
  const double step = kTwoPi / static_cast<double>(m);
  const std::size_t workers = std::min<std::size_t>(configured_workers(), m / 1024 + 1);
  std::vector<double> chunk_max(workers, -std::numeric_limits<double>::infinity());
  parallel_chunks(m, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    RotatedSpectrum f(t);
    double local = -std::numeric_limits<double>::infinity();
    for (std::size_t k = begin; k < end; ++k) local = std::max(local, f(step * static_cast<double>(k)));
    chunk_max[chunk] = local;
  });
  return std::max(0.0, *std::max_element(chunk_max.begin(), chunk_max.end()));
}

RangeBoundary numerical_range_boundary(const ComplexMatrix& t, std::size_t m) {
  require_square(t, "numerical_range_boundary");
  if (m < 3) throw InvalidArgumentError("numerical_range_boundary: need at least 3 points");
  RangeBoundary boundary;
  boundary.points.reserve(m);
  boundary.thetas.reserve(m);
  const double step = kTwoPi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = step * static_cast<double>(k);
    const Vector x = top_eigenvector(t, theta);
    boundary.thetas.push_back(theta);
    boundary.points.push_back(rayleigh(t, x));
  }
  return boundary;
}

Complex rayleigh(const ComplexMatrix& t, std::span<const Complex> x) {
  if (!t.is_square() || x.size() != t.cols()) {
    throw DimensionError("rayleigh: vector of length " + std::to_string(x.size()) +
                         " does not conform to " + t.shape());
  }
  const double nx2 = std::real(inner(x, x));
  if (nx2 == 0.0) throw InvalidArgumentError("rayleigh: zero vector");
  const Vector tx = apply(t, x);
  return inner(tx, x) / nx2;
}

}  // namespace numrad
