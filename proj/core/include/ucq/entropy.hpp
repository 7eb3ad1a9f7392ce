#pragma once

#include "ucq/qmat.hpp"
#include "ucq/types.hpp"

#include <vector>

namespace ucq {

/// An ensemble {p_x, sigma_x} of states on a common space.
struct Ensemble {
  InputDist probs;
  std::vector<DensityOp> states;

  Ensemble(InputDist p, std::vector<DensityOp> s);
  Eigen::Index dim() const { return states.front().dim(); }
  int k() const { return probs.k(); }
  /// The average state sum_x p_x sigma_x.
  DensityOp average() const;
};

/// von Neumann entropy in bits; 0 log 0 = 0.
double vn_entropy(const DensityOp& rho);

/// Quantum relative entropy S(rho || sigma) in bits. Returns +infinity when
/// supp(rho) is not contained in supp(sigma).
double rel_entropy(const DensityOp& rho, const HermOp& sigma);

/// Relative Renyi entropy of order alpha in (0, 1), fractional powers on the
/// support. Rejects alpha outside (0, 1).
double renyi_rel_entropy(double alpha, const DensityOp& rho, const HermOp& sigma);

/// Holevo quantity chi(E) = S(avg) - sum p_x S(sigma_x).
double holevo(const Ensemble& e);

/// alpha-chi quantity, closed form:
/// (alpha/(alpha-1)) log2 Tr[(sum_x p_x sigma_x^alpha)^{1/alpha}].
double alpha_chi(double alpha, const Ensemble& e);

/// Classical relative entropy D(q || lambda) in bits; +infinity if some
/// q_i > 0 has lambda_i = 0.
double kl(const InputDist& q, const InputDist& lambda);

/// The classical-quantum state sigma_XQ = sum_x p_x |x><x| (x) sigma_x,
/// block-diagonal of size k*dim.
Mat cq_state(const Ensemble& e);

}  // namespace ucq
