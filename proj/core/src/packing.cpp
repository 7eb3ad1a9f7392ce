#include "ucq/packing.hpp"

#include "ucq/parallel.hpp"
#include "ucq/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ucq {

CqChannel::CqChannel(Alphabet a, std::vector<DensityOp> outs)
    : alphabet(a), outputs(std::move(outs)) {
  if (outputs.empty() || static_cast<int>(outputs.size()) != alphabet.k)
    throw std::invalid_argument("CqChannel: one output state per letter");
  for (const DensityOp& o : outputs)
    if (o.dim() != outputs.front().dim())
      throw std::invalid_argument("CqChannel: mixed output dimensions");
}

Ensemble CqChannel::ensemble(const InputDist& p) const {
  return Ensemble(p, outputs);
}

Mat PovmSet::remainder() const {
  Mat acc = Mat::Identity(dim(), dim());
  for (const Mat& e : elements) acc -= e;
  return acc;
}

void PovmSet::validate(double tol) const {
  Mat sum = Mat::Zero(dim(), dim());
  for (const Mat& e : elements) {
    if (max_abs(e - e.adjoint()) > kProjTol)
      throw std::runtime_error("PovmSet: element not Hermitian");
    if (min_eig(e) < -tol)
      throw std::runtime_error("PovmSet: element not PSD");
    sum += e;
  }
  if (min_eig(Mat::Identity(dim(), dim()) - sum) < -tol)
    throw std::runtime_error("PovmSet: elements sum beyond the identity");
}

DensityOp channel_output(const CqChannel& w, const Seq& x) {
  Mat out = Mat::Identity(1, 1);
  for (int a : x) {
    if (a < 0 || a >= w.alphabet.k)
      throw std::invalid_argument("channel_output: letter out of range");
    out = kron(out, w.outputs[a].mat());
  }
  return DensityOp::trusted(std::move(out));
}

ProjectorOp lambda_projector(const Seq& x, double gamma_n, int n, int d_B,
                             std::uint64_t seed) {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("lambda_projector: sequence length != n");
  const Mat om = omega(x, d_B, seed).mat();
  const Mat tau = tau_n(n, d_B, seed).op.mat();
  // {omega - 2^{n gamma} tau >= 0} is scale-invariant; divide by the larger
  // power so nothing overflows for extreme gamma_n.
  const double e = n * gamma_n;
  if (e >= 0.0)
    return positive_part_projector(HermOp(std::pow(2.0, -e) * om), HermOp(tau));
  return positive_part_projector(HermOp(om), HermOp(std::pow(2.0, e) * tau));
}

PovmSet sqrt_measurement(const std::vector<Mat>& lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("sqrt_measurement: empty");
  const Eigen::Index d = lambdas.front().rows();
  Mat s = Mat::Zero(d, d);
  for (const Mat& l : lambdas) s += l;
  const Mat root = pinv_sqrt(HermOp(0.5 * (s + s.adjoint()))).mat();
  PovmSet povm;
  povm.elements.reserve(lambdas.size());
  for (const Mat& l : lambdas) {
    Mat y = root * l * root;
    povm.elements.push_back(0.5 * (y + y.adjoint()));
  }
  return povm;
}

PovmSet build_sqrt_povm(const std::vector<Seq>& codewords, double gamma_n,
                        int n, int d_B, std::uint64_t seed) {
  if (codewords.empty())
    throw std::invalid_argument("build_sqrt_povm: no codewords");
  std::vector<Mat> lambdas;
  lambdas.reserve(codewords.size());
  for (const Seq& x : codewords)
    lambdas.push_back(lambda_projector(x, gamma_n, n, d_B, seed).mat());
  return sqrt_measurement(lambdas);
}

CqCode make_code(std::vector<Seq> codewords, double gamma_n, int n, int d_B,
                 std::uint64_t symm_seed) {
  PovmSet povm = build_sqrt_povm(codewords, gamma_n, n, d_B, symm_seed);
  return CqCode{std::move(codewords), std::move(povm), gamma_n, symm_seed};
}

double avg_error_prob(const CqChannel& w, const CqCode& code) {
  const auto m = static_cast<long long>(code.codewords.size());
  double acc = 0.0;
  for (long long i = 0; i < m; ++i) {
    const Mat out = channel_output(w, code.codewords[i]).mat();
    acc += 1.0 - (out * code.povm.elements[i]).trace().real();
  }
  double pe = acc / static_cast<double>(m);
  return std::min(1.0, std::max(0.0, pe));
}

std::pair<double, double> hayashi_nagaoka_check(const CqChannel& w,
                                                const CqCode& code) {
  const int n = static_cast<int>(code.codewords.front().size());
  const auto m = static_cast<long long>(code.codewords.size());
  std::vector<Mat> lambdas;
  std::vector<Mat> outs;
  for (const Seq& x : code.codewords) {
    lambdas.push_back(
        lambda_projector(x, code.gamma_n, n, w.dim(), code.symm_seed).mat());
    outs.push_back(channel_output(w, x).mat());
  }
  double first = 0.0, second = 0.0;
  const Mat id = Mat::Identity(outs.front().rows(), outs.front().cols());
  for (long long i = 0; i < m; ++i) {
    first += ((id - lambdas[i]) * outs[i]).trace().real();
    for (long long j = 0; j < m; ++j)
      if (j != i) second += (lambdas[j] * outs[i]).trace().real();
  }
  const double rhs = (2.0 * first + 4.0 * second) / static_cast<double>(m);
  return {avg_error_prob(w, code), rhs};
}

RateParams rate_params(double R, double t, int n, int k, int d_B,
                       double chi_ref) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("rate_params: t must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("rate_params: n >= 1");
  RateParams rp;
  rp.R = R;
  rp.t = t;
  rp.n = n;
  rp.r_t = (t / (t + 1.0)) * (chi_ref - R);
  rp.vacuous = (R >= chi_ref);
  const int dd = d_B * d_B + d_B;
  rp.gamma_n = R + rp.r_t - zeta(n, k * dd);
  const double exponent = n * (R - zeta(n, (k + 1) * dd));
  double m = (exponent > 62) ? 9e18 : std::round(std::pow(2.0, exponent));
  rp.M_n = std::max(1LL, static_cast<long long>(m));
  return rp;
}

double e16_bound(const RateParams& rp, int k, int d_B, double chi_1mt,
                 double eps) {
  const int dd = d_B * d_B + d_B;
  const double term1 =
      std::pow(2.0, -rp.n * rp.t * (chi_1mt - rp.gamma_n - zeta(rp.n, k * dd)));
  const double term2 = 4.0 / (1.0 - eps) * static_cast<double>(rp.M_n) *
                       std::pow(2.0, -rp.n * (rp.gamma_n - zeta(rp.n, dd)));
  return term1 + term2 + 2.0 * eps;
}

McErrorStats expected_error_mc(const CqChannel& w, const InputDist& p, int n,
                               double delta, long long M_n, double gamma_n,
                               long long trials, std::uint64_t seed,
                               int threads) {
  if (trials < 1) throw std::invalid_argument("expected_error_mc: trials >= 1");
  if (M_n < 1) throw std::invalid_argument("expected_error_mc: M_n >= 1");
  const std::uint64_t symm_seed = derive_seed(seed, 0);
  // Warm the shared tau cache before fanning out.
  tau_n(n, w.dim(), symm_seed);

  std::vector<double> pe(trials);
  parallel_trials(trials, threads, [&](long long trial) {
    ConditionalSampler draw(p, n, delta, derive_seed(seed, trial + 1));
    std::vector<Seq> cw;
    cw.reserve(M_n);
    for (long long i = 0; i < M_n; ++i) cw.push_back(draw());
    CqCode code = make_code(std::move(cw), gamma_n, n, w.dim(), symm_seed);
    pe[trial] = avg_error_prob(w, code);
  });

  McErrorStats st;
  st.trials = trials;
  for (double v : pe) st.mean += v;
  st.mean /= static_cast<double>(trials);
  if (trials > 1) {
    double var = 0.0;
    for (double v : pe) var += (v - st.mean) * (v - st.mean);
    var /= static_cast<double>(trials - 1);
    st.se = std::sqrt(var / static_cast<double>(trials));
  }
  return st;
}

}  // namespace ucq
