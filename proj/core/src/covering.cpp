#include "ucq/covering.hpp"

#include "ucq/parallel.hpp"
#include "ucq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ucq {

double obfuscation_error(const CqChannel& w_e, const InputDist& p,
                         const CoveringSet& s) {
  if (s.sequences.empty())
    throw std::invalid_argument("obfuscation_error: empty covering set");
  const int n = static_cast<int>(s.sequences.front().size());
  const Mat wbar = w_e.ensemble(p).average().mat();
  long long dn = 1;
  for (int i = 0; i < n; ++i) dn *= w_e.dim();
  Mat avg = Mat::Zero(dn, dn);
  for (const Seq& x : s.sequences) avg += channel_output(w_e, x).mat();
  avg /= static_cast<double>(s.sequences.size());
  return trace_norm(avg - kron_pow(wbar, n));
}

double obfus_threshold(int k_alphabet, double eps) {
  const double ke = k_alphabet * eps;
  return eps + 4.0 * std::sqrt(ke) +
         8.0 * std::sqrt(3.0 * eps + 2.0 * std::sqrt(ke));
}

double eps_prime_n(int n, double chi1, double chi, double s_bar, double c,
                   double delta, double eps) {
  const double exponent =
      -k_chernoff * eps * eps * eps * std::pow(2.0, n * (chi1 - chi)) +
      n * (s_bar + c * delta);
  return 2.0 * std::pow(2.0, exponent);
}

CoveringContext::CoveringContext(CqChannel w_e, InputDist p, int n,
                                 double delta, double eps)
    : w_(std::move(w_e)),
      p_(std::move(p)),
      n_(n),
      delta_(delta),
      eps_(eps),
      typ_(typical_set(p_, n, delta)) {
  if (n < 1) throw std::invalid_argument("CoveringContext: n >= 1");
  if (eps <= 0.0) throw std::invalid_argument("CoveringContext: eps > 0");
  if (typ_.sequences.empty())
    throw std::runtime_error("CoveringContext: empty typical set");

  c_ = shannon_entropy(p_.p());
  const Ensemble ens = w_.ensemble(p_);
  const DensityOp wbar = ens.average();
  s_bar_ = vn_entropy(wbar);
  s_letters_ = 0.0;
  for (int a = 0; a < w_.alphabet.k; ++a)
    s_letters_ += p_[a] * vn_entropy(w_.outputs[a]);
  chi_ = s_bar_ - s_letters_;

  wbar_n_ = kron_pow(wbar.mat(), n_);
  pi_bar_ = typical_projector(wbar, n_, delta_).mat();

  // Population average phi_bar = E phi(X) over the conditional distribution,
  // by exact enumeration of the typical set.
  phi_bar_ = Mat::Zero(wbar_n_.rows(), wbar_n_.cols());
  for (const Seq& x : typ_.sequences) {
    SmoothingChain ch = smoothing_chain_impl_phi_only(x);
    phi_bar_ += weight(x) * ch.phi;
  }
  phi_bar_ = 0.5 * (phi_bar_ + phi_bar_.adjoint());

  cutoff_ = eps_ * std::pow(2.0, -n_ * (s_bar_ + c_ * delta_));
  pi_hat_ =
      positive_part_projector(HermOp(phi_bar_), HermOp(cutoff_ * pi_bar_)).mat();
  phi_bar_prime_ = pi_hat_ * phi_bar_ * pi_hat_;
  phi_bar_prime_ = 0.5 * (phi_bar_prime_ + phi_bar_prime_.adjoint());

  psi_scale_ = std::pow(2.0, n_ * (s_letters_ - c_ * delta_));
  chern_t_ = eps_ * std::pow(2.0, -n_ * (chi_ + 2.0 * c_ * delta_));
}

double CoveringContext::weight(const Seq& x) const {
  return seq_prob(p_, x) / typ_.Q_n;
}

const Mat& CoveringContext::letter_typical_proj(int a, int m) const {
  auto key = std::make_pair(a, m);
  auto it = letter_proj_.find(key);
  if (it != letter_proj_.end()) return it->second;
  Mat proj = typical_projector(w_.outputs[a], m, delta_).mat();
  return letter_proj_.emplace(key, std::move(proj)).first->second;
}

ProjectorOp CoveringContext::cond_typical_projector(const Seq& x) const {
  auto [xo, s] = ordered_rep(x);
  Mat block = Mat::Identity(1, 1);
  int i = 0;
  const int len = static_cast<int>(x.size());
  while (i < len) {
    int j = i;
    while (j < len && xo[j] == xo[i]) ++j;
    block = kron(block, letter_typical_proj(xo[i], j - i));
    i = j;
  }
  return ProjectorOp::trusted(
      conj_by_permutation(block, s, w_.dim(), len));
}

SmoothingChain CoveringContext::smoothing_chain_impl_phi_only(const Seq& x) const {
  SmoothingChain ch;
  ch.x = x;
  const Mat out = channel_output(w_, x).mat();
  const Mat pc = cond_typical_projector(x).mat();
  ch.sigma = pc * out * pc;
  ch.sigma = 0.5 * (ch.sigma + ch.sigma.adjoint());
  ch.tr_sigma = ch.sigma.trace().real();
  ch.phi = pi_bar_ * ch.sigma * pi_bar_;
  ch.phi = 0.5 * (ch.phi + ch.phi.adjoint());
  ch.tr_phi = ch.phi.trace().real();

  // Per-letter typicality guarantees, measured.
  auto [xo, s] = ordered_rep(x);
  ch.per_letter_trace_min = 1.0;
  int i = 0;
  const int len = static_cast<int>(x.size());
  while (i < len) {
    int j = i;
    while (j < len && xo[j] == xo[i]) ++j;
    const int a = xo[i], m = j - i;
    const double tr = (letter_typical_proj(a, m) *
                       kron_pow(w_.outputs[a].mat(), m))
                          .trace()
                          .real();
    ch.per_letter_trace_min = std::min(ch.per_letter_trace_min, tr);
    i = j;
  }
  ch.per_letter_eps_ok = (ch.per_letter_trace_min >= 1.0 - eps_ - 1e-12);
  return ch;
}

SmoothingChain CoveringContext::smoothing_chain(const Seq& x) const {
  SmoothingChain ch = smoothing_chain_impl_phi_only(x);
  ch.theta = pi_hat_ * ch.phi * pi_hat_;
  ch.theta = 0.5 * (ch.theta + ch.theta.adjoint());
  ch.tr_theta = ch.theta.trace().real();
  ch.psi_scale = psi_scale_;
  ch.psi = psi_scale_ * ch.theta;
  return ch;
}

Mat CoveringContext::theta(const Seq& x) const { return smoothing_chain(x).theta; }

Mat CoveringContext::psi(const Seq& x) const { return smoothing_chain(x).psi; }

ProjectorOp cond_typical_projector(const CqChannel& w_e, const Seq& x,
                                   double delta) {
  auto [xo, s] = ordered_rep(x);
  Mat block = Mat::Identity(1, 1);
  int i = 0;
  const int len = static_cast<int>(x.size());
  while (i < len) {
    int j = i;
    while (j < len && xo[j] == xo[i]) ++j;
    block = kron(block,
                 typical_projector(w_e.outputs[xo[i]], j - i, delta).mat());
    i = j;
  }
  return ProjectorOp::trusted(conj_by_permutation(block, s, w_e.dim(), len));
}

CoveringStats covering_experiment(const CqChannel& w_e, const InputDist& p,
                                  int n, double delta, double eps, long long L_n,
                                  long long trials, std::uint64_t seed,
                                  int threads) {
  if (trials < 1) throw std::invalid_argument("covering_experiment: trials >= 1");
  if (L_n < 1) throw std::invalid_argument("covering_experiment: L_n >= 1");

  CoveringContext ctx(w_e, p, n, delta, eps);

  // theta(x) for every typical sequence, reused across trials.
  std::map<Seq, Mat> thetas;
  for (const Seq& x : ctx.typical().sequences) thetas.emplace(x, ctx.theta(x));

  CoveringStats st;
  st.n = n;
  st.L_n = L_n;
  st.delta = delta;
  st.eps = eps;
  st.threshold_obfus = obfus_threshold(p.k(), eps);
  const double implied_chi1 =
      std::log2(static_cast<double>(L_n)) / n - 2.0 * ctx.c() * delta;
  st.eps_prime = eps_prime_n(n, implied_chi1, ctx.chi(), ctx.avg_entropy(),
                             ctx.c(), delta, eps);
  const double rank_pi_bar = ctx.pi_bar().trace().real();
  st.chernoff_bound =
      2.0 * rank_pi_bar *
      std::pow(2.0, -static_cast<double>(L_n) * k_chernoff * eps * eps *
                         ctx.chernoff_t());

  st.deltas.assign(trials, 0.0);
  std::vector<char> window_ok(trials, 0);
  parallel_trials(trials, threads, [&](long long trial) {
    ConditionalSampler draw(p, n, delta, derive_seed(seed, trial + 1));
    CoveringSet s;
    s.sequences.reserve(L_n);
    Mat theta_avg = Mat::Zero(ctx.phi_bar().rows(), ctx.phi_bar().cols());
    for (long long i = 0; i < L_n; ++i) {
      Seq x = draw();
      theta_avg += thetas.at(x);
      s.sequences.push_back(std::move(x));
    }
    theta_avg /= static_cast<double>(L_n);
    st.deltas[trial] = obfuscation_error(w_e, p, s);
    const Mat upper = (1.0 + eps) * ctx.phi_bar_prime() - theta_avg;
    const Mat lower = theta_avg - (1.0 - eps) * ctx.phi_bar_prime();
    window_ok[trial] =
        (min_eig(upper) >= -1e-9 && min_eig(lower) >= -1e-9) ? 1 : 0;
  });

  long long fail_delta = 0, fail_window = 0;
  double mean = 0.0;
  for (long long i = 0; i < trials; ++i) {
    mean += st.deltas[i];
    if (st.deltas[i] >= st.threshold_obfus) ++fail_delta;
    if (!window_ok[i]) ++fail_window;
    if (window_ok[i] && st.deltas[i] > st.threshold_obfus)
      ++st.implication_violations;
  }
  st.delta_mean = mean / static_cast<double>(trials);
  if (trials > 1) {
    double var = 0.0;
    for (double v : st.deltas) var += (v - st.delta_mean) * (v - st.delta_mean);
    var /= static_cast<double>(trials - 1);
    st.delta_se = std::sqrt(var / static_cast<double>(trials));
  }
  st.freq_delta_ge_threshold = static_cast<double>(fail_delta) / trials;
  st.chernoff_fail_freq = static_cast<double>(fail_window) / trials;
  return st;
}

ChernoffResult chernoff_check(const std::vector<double>& probs,
                              const std::vector<Mat>& ops, long long N,
                              double eps, double t_thresh, long long trials,
                              std::uint64_t seed, int threads) {
  if (probs.size() != ops.size() || ops.empty())
    throw std::invalid_argument("chernoff_check: probs/ops mismatch");
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("chernoff_check: eps must lie in (0, 1/2)");
  if (!(t_thresh > 0.0 && t_thresh < 1.0))
    throw std::invalid_argument("chernoff_check: t must lie in (0,1)");
  if (N < 1 || trials < 1)
    throw std::invalid_argument("chernoff_check: N, trials >= 1");

  const Eigen::Index d = ops.front().rows();
  const Mat id = Mat::Identity(d, d);
  Mat omega = Mat::Zero(d, d);
  double psum = 0.0;
  for (size_t i = 0; i < ops.size(); ++i) {
    if (min_eig(ops[i]) < -1e-9 || min_eig(id - ops[i]) < -1e-9)
      throw std::invalid_argument("chernoff_check: operator outside [0, I]");
    omega += probs[i] * ops[i];
    psum += probs[i];
  }
  if (std::abs(psum - 1.0) > 1e-9)
    throw std::invalid_argument("chernoff_check: probabilities must sum to 1");
  omega = 0.5 * (omega + omega.adjoint());
  if (min_eig(omega - t_thresh * id) < -1e-9)
    throw std::invalid_argument("chernoff_check: mean below t * identity");

  std::vector<double> cum(probs.size());
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;

  std::vector<char> fail(trials, 0);
  parallel_trials(trials, threads, [&](long long trial) {
    Rng rng(derive_seed(seed, trial + 1));
    Mat avg = Mat::Zero(d, d);
    for (long long i = 0; i < N; ++i) {
      const double u = rng.uniform();
      size_t idx = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
      if (idx >= ops.size()) idx = ops.size() - 1;
      avg += ops[idx];
    }
    avg /= static_cast<double>(N);
    const Mat upper = (1.0 + eps) * omega - avg;
    const Mat lower = avg - (1.0 - eps) * omega;
    fail[trial] = (min_eig(upper) < -1e-9 || min_eig(lower) < -1e-9) ? 1 : 0;
  });

  ChernoffResult res;
  res.trials = trials;
  for (char f : fail) res.failures += f;
  res.empirical = static_cast<double>(res.failures) / trials;
  res.bound = 2.0 * static_cast<double>(d) *
              std::pow(2.0, -static_cast<double>(N) * k_chernoff * eps * eps *
                                 t_thresh);
  return res;
}

}  // namespace ucq
