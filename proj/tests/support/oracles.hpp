// Test-only reference implementations. These stay independent of the
// production code paths they check.
#pragma once

#include "ucq/entropy.hpp"
#include "ucq/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ucq::oracle {

// Classical Renyi divergence (1/(a-1)) log2 sum p^a q^{1-a}.
inline double classical_renyi(double alpha, const std::vector<double>& p,
                              const std::vector<double>& q) {
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    acc += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  return std::log2(acc) / (alpha - 1.0);
}

// S_alpha(sigma_XQ || sigma_X (x) omega) for an ensemble, reduced over the
// classical register: (1/(a-1)) log2 sum_x p_x tr(sigma_x^a omega^{1-a}).
inline double renyi_cq(double alpha, const Ensemble& e, const Mat& omega) {
  EigH ew = eigh(omega);
  Mat wpow = Mat::Zero(omega.rows(), omega.cols());
  for (Eigen::Index i = 0; i < ew.values.size(); ++i) {
    const double v = ew.values(i);
    if (v > 1e-14)
      wpow += std::pow(v, 1.0 - alpha) * ew.vectors.col(i) *
              ew.vectors.col(i).adjoint();
  }
  double acc = 0.0;
  for (int x = 0; x < e.k(); ++x) {
    EigH es = eigh(e.states[x].mat());
    Mat spow = Mat::Zero(omega.rows(), omega.cols());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      const double v = es.values(i);
      if (v > 1e-14)
        spow += std::pow(v, alpha) * es.vectors.col(i) *
                es.vectors.col(i).adjoint();
    }
    acc += e.probs[x] * (spow * wpow).trace().real();
  }
  return std::log2(acc) / (alpha - 1.0);
}

// Direct numerical minimization of S_alpha(sigma_XQ || sigma_X (x) omega)
// over qubit omega: Bloch-ball grid of step `step` plus pattern refinement.
inline double chi_alpha_variational(double alpha, const Ensemble& e,
                                    double step = 0.02) {
  auto eval = [&](double x, double y, double z) {
    Mat w(2, 2);
    w(0, 0) = 0.5 * (1.0 + z);
    w(1, 1) = 0.5 * (1.0 - z);
    w(0, 1) = 0.5 * Complex(x, -y);
    w(1, 0) = 0.5 * Complex(x, y);
    return renyi_cq(alpha, e, w);
  };

  double best = 1e300, bx = 0, by = 0, bz = 0;
  const int m = static_cast<int>(std::round(1.0 / step));
  for (int ix = -m; ix <= m; ++ix)
    for (int iy = -m; iy <= m; ++iy)
      for (int iz = -m; iz <= m; ++iz) {
        const double x = ix * step, y = iy * step, z = iz * step;
        if (x * x + y * y + z * z > 1.0) continue;
        const double v = eval(x, y, z);
        if (v < best) {
          best = v;
          bx = x;
          by = y;
          bz = z;
        }
      }

  // Pattern search refinement inside the ball.
  double h = step;
  while (h > 1e-7) {
    bool improved = false;
    const double cand[6][3] = {{h, 0, 0}, {-h, 0, 0}, {0, h, 0},
                               {0, -h, 0}, {0, 0, h}, {0, 0, -h}};
    for (const auto& c : cand) {
      const double x = bx + c[0], y = by + c[1], z = bz + c[2];
      if (x * x + y * y + z * z > 1.0) continue;
      const double v = eval(x, y, z);
      if (v < best - 1e-15) {
        best = v;
        bx = x;
        by = y;
        bz = z;
        improved = true;
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

// Exhaustive maximization of tr[Q (A - B)] over all sums Q of eigenprojectors
// of (A - B).
inline double best_subset_projection(const Mat& a, const Mat& b) {
  EigH e = eigh(a - b);
  const int d = static_cast<int>(e.values.size());
  double best = 0.0;  // empty subset
  for (int mask = 1; mask < (1 << d); ++mask) {
    double v = 0.0;
    for (int i = 0; i < d; ++i)
      if (mask & (1 << i)) v += e.values(i);
    best = std::max(best, v);
  }
  return best;
}

// Exact probability mass of delta-typical binomial types for a two-point
// eigenvalue distribution (lam, 1-lam) at block length n.
inline double binomial_typical_mass(double lam, int n, double delta) {
  double total = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double f1 = static_cast<double>(m) / n;
    const double f2 = 1.0 - f1;
    const bool ok1 = std::abs(f1 - lam) <= lam * delta + 1e-15;
    const bool ok2 = std::abs(f2 - (1.0 - lam)) <= (1.0 - lam) * delta + 1e-15;
    if (!ok1 || !ok2) continue;
    double logc = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                  std::lgamma(n - m + 1.0);
    total += std::exp(logc + m * std::log(lam) + (n - m) * std::log(1.0 - lam));
  }
  return total;
}

}  // namespace ucq::oracle
