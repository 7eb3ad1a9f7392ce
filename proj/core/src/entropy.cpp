#include "ucq/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucq {

Ensemble::Ensemble(InputDist p, std::vector<DensityOp> s)
    : probs(std::move(p)), states(std::move(s)) {
  if (states.empty() || static_cast<int>(states.size()) != probs.k())
    throw std::invalid_argument("Ensemble: one state per letter required");
  for (const DensityOp& st : states)
    if (st.dim() != states.front().dim())
      throw std::invalid_argument("Ensemble: mixed dimensions");
}

DensityOp Ensemble::average() const {
  Mat avg = Mat::Zero(dim(), dim());
  for (int x = 0; x < k(); ++x) avg += probs[x] * states[x].mat();
  return DensityOp::trusted(0.5 * (avg + avg.adjoint()));
}

double vn_entropy(const DensityOp& rho) {
  EigH e = eigh(rho.mat());
  double h = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double v = e.values(i);
    if (v > kEigTol) h -= v * std::log2(v);
  }
  return h;
}

double rel_entropy(const DensityOp& rho, const HermOp& sigma) {
  EigH es = eigh(sigma.mat());
  const double smax = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  const double cut = kEigTol * std::max(smax, 1e-300);

  // Weight of rho outside supp(sigma) decides finiteness.
  double outside = 0.0;
  double cross = 0.0;  // tr rho log sigma, restricted to supp(sigma)
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double w =
        (es.vectors.col(i).adjoint() * rho.mat() * es.vectors.col(i))(0, 0).real();
    if (es.values(i) <= cut) {
      outside += w;
    } else {
      cross += w * std::log2(es.values(i));
    }
  }
  if (outside > 1e-10) return std::numeric_limits<double>::infinity();

  EigH er = eigh(rho.mat());
  double self = 0.0;  // tr rho log rho
  for (Eigen::Index i = 0; i < er.values.size(); ++i) {
    const double v = er.values(i);
    if (v > kEigTol) self += v * std::log2(v);
  }
  return self - cross;
}

double renyi_rel_entropy(double alpha, const DensityOp& rho, const HermOp& sigma) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("renyi_rel_entropy: alpha must lie in (0,1)");
  Mat ra = frac_power(HermOp(rho.mat()), alpha).mat();
  Mat sb = frac_power(sigma, 1.0 - alpha).mat();
  const double tr = (ra * sb).trace().real();
  return std::log2(tr) / (alpha - 1.0);
}

double holevo(const Ensemble& e) {
  double h = vn_entropy(e.average());
  for (int x = 0; x < e.k(); ++x) h -= e.probs[x] * vn_entropy(e.states[x]);
  return h;
}

double alpha_chi(double alpha, const Ensemble& e) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha_chi: alpha must lie in (0,1)");
  Mat acc = Mat::Zero(e.dim(), e.dim());
  for (int x = 0; x < e.k(); ++x)
    acc += e.probs[x] * frac_power(HermOp(e.states[x].mat()), alpha).mat();
  acc = 0.5 * (acc + acc.adjoint());
  const double tr = frac_power(HermOp(acc), 1.0 / alpha).mat().trace().real();
  return (alpha / (alpha - 1.0)) * std::log2(tr);
}

double kl(const InputDist& q, const InputDist& lambda) {
  if (q.k() != lambda.k()) throw std::invalid_argument("kl: size mismatch");
  double d = 0.0;
  for (int i = 0; i < q.k(); ++i) {
    if (q[i] == 0.0) continue;
    if (lambda[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += q[i] * std::log2(q[i] / lambda[i]);
  }
  return d;
}

Mat cq_state(const Ensemble& e) {
  const Eigen::Index d = e.dim();
  Mat out = Mat::Zero(e.k() * d, e.k() * d);
  for (int x = 0; x < e.k(); ++x)
    out.block(x * d, x * d, d, d) = e.probs[x] * e.states[x].mat();
  return out;
}

}  // namespace ucq
