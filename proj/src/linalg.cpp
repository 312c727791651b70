#include "numrad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace numrad {
namespace {

constexpr double kHermitianTolerance = 1e-12;

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + " requires a square matrix, got " + a.shape());
  }
}

double max_abs_entry(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) acc += std::norm(a[i * n + j]);
  return std::sqrt(acc);
}

// Sturm count: number of eigenvalues of the symmetric tridiagonal (d, e2 = e^2)
// strictly below x.
int eigenvalues_below(const double* d, const double* e2, std::size_t n, double x) {
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (q == 0.0) q = std::numeric_limits<double>::min();
    q = d[i] - x - e2[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// Largest eigenvalue of the symmetric tridiagonal (d, e2 = e^2) inside
// [lo, hi], with hi strictly above the spectrum. Laguerre iteration started
// from above the spectrum decreases monotonically onto the top eigenvalue;
// Sturm bisection takes over if rounding ever pushes an iterate below it.
double largest_tridiagonal_eigenvalue(const double* d, const double* e2, std::size_t n,
                                      double lo, double hi, double width) {
  const double nn = static_cast<double>(n);
  const double eps = std::numeric_limits<double>::epsilon();
  double x = hi;
  bool below = false;
  for (int iter = 0; iter < 64; ++iter) {
    double q = d[0] - x;
    double dq = -1.0;
    double ddq = 0.0;
    if (q >= 0.0) {
      below = true;
      break;
    }
    double g = dq / q;
    double dg = -g * g;
    bool above = true;
    for (std::size_t i = 1; i < n; ++i) {
      const double inv = 1.0 / q;
      const double ratio = e2[i - 1] * inv;
      const double nq = d[i] - x - ratio;
      const double ndq = -1.0 + ratio * dq * inv;
      const double nddq = ratio * inv * (ddq - 2.0 * dq * dq * inv);
      q = nq;
      dq = ndq;
      ddq = nddq;
      if (q >= 0.0) {
        above = false;
        break;
      }
      const double r = dq / q;
      g += r;
      dg += ddq / q - r * r;
    }
    if (!above) {
      below = true;
      break;
    }
    hi = x;
    const double h = -dg;
    const double disc = std::max(0.0, (nn - 1.0) * (nn * h - g * g));
    const double step = nn / (g + std::sqrt(disc));
    if (!(step > 4.0 * eps * width)) return x;
    x -= step;
  }
  // Finish by bisection on [lo, hi], tightened by the last iterate when it
  // landed at or below the top eigenvalue.
  if (below) lo = std::max(lo, x);
  const int total = static_cast<int>(n);
  while (hi - lo > 2.0 * eps * width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (eigenvalues_below(d, e2, n, mid) == total) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EigenResult hermitian_eigen(const ComplexMatrix& h, bool want_vectors) {
  require_square(h, "hermitian_eigen");
  const std::size_t n = h.rows();
  const double scale_ref = std::max(1.0, max_abs_entry(h));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > kHermitianTolerance * scale_ref) {
        throw DimensionError("hermitian_eigen: input is not Hermitian at tolerance");
      }
    }
  }

  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a[i * n + j] = v;
      a[j * n + i] = std::conj(v);
    }
  }
  std::vector<Complex> v;
  if (want_vectors) {
    v.assign(n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  double frob = 0.0;
  for (const Complex& z : a) frob += std::norm(z);
  frob = std::sqrt(frob);
  const double threshold = kJacobiTolerance * frob;

  bool converged = false;
  double off = off_diagonal_norm(a, n);
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const Complex phase = apq / r;

        // Real rotation annihilating [[app, r], [r, aqq]], conjugated by the phase.
        const double tau = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s*phase], [-s*conj(phase), c]]
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);

        // A <- A J (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = akp * c + akq * jqp;
          a[k * n + q] = akp * jpq + akq * c;
        }
        // A <- J* A (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = c * apk + std::conj(jqp) * aqk;
          a[q * n + k] = std::conj(jpq) * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v[k * n + p];
            const Complex vkq = v[k * n + q];
            v[k * n + p] = vkp * c + vkq * jqp;
            v[k * n + q] = vkp * jpq + vkq * c;
          }
        }
      }
    }
    off = off_diagonal_norm(a, n);
  }
  if (!converged && off > threshold) {
    std::ostringstream os;
    os << "hermitian_eigen: no convergence after " << kMaxJacobiSweeps
       << " sweeps, off-diagonal norm " << off;
    throw ConvergenceError(os.str(), off);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() < a[y * n + y].real();
  });

  EigenResult result;
  result.values.reserve(n);
  for (std::size_t k : order) result.values.push_back(a[k * n + k].real());
  if (want_vectors) {
    ComplexMatrix vecs(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t row = 0; row < n; ++row) vecs(row, col) = v[row * n + order[col]];
    result.vectors = std::move(vecs);
  }
  return result;
}

namespace detail {

double largest_eigenvalue_inplace(std::span<Complex> a, std::size_t n) {
  if (n == 1) return a[0].real();
  if (n == 2) {
    const double p = a[0].real();
    const double q = a[3].real();
    const double half_gap = 0.5 * (p - q);
    return 0.5 * (p + q) + std::hypot(half_gap, std::abs(a[2]));
  }

  thread_local std::vector<double> d;
  thread_local std::vector<double> e2;
  thread_local std::vector<Complex> v;
  thread_local std::vector<Complex> w;
  if (d.size() < n) {
    d.resize(n);
    e2.resize(n);
    v.resize(n);
    w.resize(n);
  }

  // Householder reduction of the lower triangle; entries above the diagonal
  // are never read.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const Complex x0 = a[(k + 1) * n + k];
    double tail2 = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail2 += std::norm(a[(k + 1 + i) * n + k]);
    const double sigma2 = std::norm(x0) + tail2;
    const double sigma = std::sqrt(sigma2);
    e2[k] = sigma2;
    if (tail2 == 0.0) continue;

    const double ax0 = std::abs(x0);
    const Complex phase = ax0 == 0.0 ? Complex{1.0} : x0 / ax0;
    for (std::size_t i = 0; i < m; ++i) v[i] = a[(k + 1 + i) * n + k];
    v[0] += phase * sigma;
    const double vnorm2 = tail2 + std::norm(v[0]);
    const double tau = 2.0 / vnorm2;

    // p = tau * B v with B the trailing Hermitian block (lower triangle stored).
    for (std::size_t i = 0; i < m; ++i) {
      Complex acc{};
      const std::size_t row = k + 1 + i;
      for (std::size_t j = 0; j <= i; ++j) acc += a[row * n + (k + 1 + j)] * v[j];
      for (std::size_t j = i + 1; j < m; ++j) acc += std::conj(a[(k + 1 + j) * n + row]) * v[j];
      w[i] = tau * acc;
    }
    Complex vp{};
    for (std::size_t i = 0; i < m; ++i) vp += std::conj(v[i]) * w[i];
    const double kappa = 0.5 * tau * vp.real();
    for (std::size_t i = 0; i < m; ++i) w[i] -= kappa * v[i];
    // B <- B - v w* - w v*
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t row = k + 1 + i;
      for (std::size_t j = 0; j <= i; ++j) {
        a[row * n + (k + 1 + j)] -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i].real();
  e2[n - 2] = std::norm(a[(n - 1) * n + (n - 2)]);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::sqrt(e2[i - 1]);
    if (i + 1 < n) radius += std::sqrt(e2[i]);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  const double width = std::max(std::abs(lo), std::abs(hi));
  if (width == 0.0) return 0.0;
  hi += 1e-12 * width;
  return largest_tridiagonal_eigenvalue(d.data(), e2.data(), n, lo, hi, width);
}

}  // namespace detail

double largest_eigenvalue(const ComplexMatrix& h) {
  require_square(h, "largest_eigenvalue");
  std::vector<Complex> buf(h.entries().begin(), h.entries().end());
  return detail::largest_eigenvalue_inplace(buf, h.rows());
}

namespace {

double scaled_norm(const Complex* x, std::size_t m) {
  double scale = 0.0;
  for (std::size_t k = 0; k < m; ++k) scale = std::max({scale, std::abs(x[k].real()), std::abs(x[k].imag())});
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) sum += std::norm(x[k] / scale);
  return scale * std::sqrt(sum);
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& a) {
  // One-sided Jacobi on the columns of A (or of A* when A is wide): rotate
  // column pairs until they are mutually orthogonal, then read off the norms.
  const bool wide = a.rows() < a.cols();
  const std::size_t m = wide ? a.cols() : a.rows();
  const std::size_t n = wide ? a.rows() : a.cols();
  std::vector<Complex> col(m * n);  // column j occupies [j*m, (j+1)*m)
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (wide) {
        col[i * m + j] = std::conj(a(i, j));
      } else {
        col[j * m + i] = a(i, j);
      }
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  bool converged = false;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Complex* cp = &col[p * m];
        Complex* cq = &col[q * m];
        const double np = scaled_norm(cp, m);
        const double nq = scaled_norm(cq, m);
        Complex apq{};
        for (std::size_t k = 0; k < m; ++k) apq += std::conj(cp[k]) * cq[k];
        const double r = std::abs(apq);
        if (r <= eps * np * nq || r < std::numeric_limits<double>::min()) continue;
        converged = false;
        const Complex phase = apq / r;
        const double tau = ((nq - np) / r) * ((nq + np) / 2.0);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        const Complex jpq = sn * phase;
        const Complex jqp = -sn * std::conj(phase);
        for (std::size_t k = 0; k < m; ++k) {
          const Complex xp = cp[k];
          const Complex xq = cq[k];
          cp[k] = xp * c + xq * jqp;
          cq[k] = xp * jpq + xq * c;
        }
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("singular_values: one-sided Jacobi did not converge", 0.0);
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    sv[j] = scaled_norm(&col[j * m], m);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double operator_norm(const ComplexMatrix& a) { return singular_values(a).front(); }

double alpha(const ComplexMatrix& a) {
  require_square(a, "alpha");
  const double smallest = singular_values(a).back();
  return smallest * smallest;
}

bool is_invertible(const ComplexMatrix& a) {
  if (!a.is_square()) return false;
  const std::vector<double> sv = singular_values(a);
  return sv.back() > kInvertibilityThreshold * sv.front();
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse");
  if (!is_invertible(a)) {
    throw NotInvertibleError("inverse: matrix " + a.shape() + " is not invertible at tolerance");
  }
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(pivot, j), lu(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Complex diag = lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / diag;
      if (f == Complex{}) continue;
      for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
      for (std::size_t j = 0; j < n; ++j) inv(r, j) -= f * inv(col, j);
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    const Complex diag = lu(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = inv(col, j);
      for (std::size_t k = col + 1; k < n; ++k) acc -= lu(col, k) * inv(k, j);
      inv(col, j) = acc / diag;
    }
  }
  return inv;
}

}  // namespace numrad
