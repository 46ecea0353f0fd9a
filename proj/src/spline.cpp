#include "hrvauth/spline.hpp"

#include <algorithm>
#include <cmath>

namespace hrvauth {

CubicSpline::CubicSpline(const std::vector<double>& x, const std::vector<double>& y)
    : x_(x), y_(y) {
  const size_t n = x_.size();
  if (n < 4)
    throw InsufficientDataError("cubic spline needs at least 4 points, got " +
                                std::to_string(n));
  if (y_.size() != n) throw ValidationError("spline: x/y size mismatch");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw ValidationError("spline: knots must be strictly increasing");

  std::vector<double> h(n - 1), d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  // Solve for the interior moments M_1..M_{n-2}. The not-a-knot rows at
  // both ends are folded into the first and last interior equations so
  // the system stays tridiagonal:
  //   M_0     = ((h0+h1) M_1 - h0 M_2) / h1
  //   M_{n-1} = ((h[n-2]+h[n-3]) M_{n-2} - h[n-2] M_{n-3}) / h[n-3]
  const size_t m = n - 2;
  std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
  for (size_t i = 1; i <= m; ++i) {
    const size_t r = i - 1;
    lower[r] = h[i - 1];
    diag[r] = 2.0 * (h[i - 1] + h[i]);
    upper[r] = h[i];
    rhs[r] = 6.0 * (d[i] - d[i - 1]);
  }
  diag[0] += h[0] * (h[0] + h[1]) / h[1];
  upper[0] -= h[0] * h[0] / h[1];
  diag[m - 1] += h[n - 2] * (h[n - 2] + h[n - 3]) / h[n - 3];
  lower[m - 1] -= h[n - 2] * h[n - 2] / h[n - 3];

  // Thomas algorithm.
  for (size_t r = 1; r < m; ++r) {
    const double w = lower[r] / diag[r - 1];
    diag[r] -= w * upper[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  std::vector<double> sol(m);
  sol[m - 1] = rhs[m - 1] / diag[m - 1];
  for (size_t r = m - 1; r-- > 0;) sol[r] = (rhs[r] - upper[r] * sol[r + 1]) / diag[r];

  m_.assign(n, 0.0);
  for (size_t i = 1; i <= m; ++i) m_[i] = sol[i - 1];
  m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
  m_[n - 1] = ((h[n - 2] + h[n - 3]) * m_[n - 2] - h[n - 2] * m_[n - 3]) / h[n - 3];
}

double CubicSpline::operator()(double t) const {
  const size_t n = x_.size();
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  const size_t j =
      static_cast<size_t>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
  const double h = x_[j + 1] - x_[j];
  const double a = x_[j + 1] - t;
  const double b = t - x_[j];
  return m_[j] * a * a * a / (6.0 * h) + m_[j + 1] * b * b * b / (6.0 * h) +
         (y_[j] / h - m_[j] * h / 6.0) * a + (y_[j + 1] / h - m_[j + 1] * h / 6.0) * b;
}

}  // namespace hrvauth
