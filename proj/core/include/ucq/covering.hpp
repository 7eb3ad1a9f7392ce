#pragma once

#include "ucq/packing.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace ucq {

/// A covering set: a list (multiset) of delta-typical sequences.
struct CoveringSet {
  std::vector<Seq> sequences;
};

/// Obfuscation error Delta(S) = || (1/|S|) sum_x W^{(x)n}(x^n) - Wbar^{(x)n} ||_1,
/// computed exactly. Invariant under reordering of S.
double obfuscation_error(const CqChannel& w_e, const InputDist& p,
                         const CoveringSet& s);

/// One sequence's smoothing chain sigma -> phi -> theta -> psi together with
/// the measured trace losses.
struct SmoothingChain {
  Seq x;
  Mat sigma, phi, theta, psi;
  double tr_sigma = 0.0;
  double tr_phi = 0.0;
  double tr_theta = 0.0;
  double per_letter_trace_min = 1.0;  // min_i tr[Pi^{m_i} W(a_i)^{(x)m_i}]
  bool per_letter_eps_ok = false;     // every per-letter trace >= 1 - eps
  double psi_scale = 1.0;
};

/// Shared machinery of the covering analysis for one (W^E, p, n, delta, eps):
/// conditional typical projectors, the population average phi_bar (computed
/// by exact enumeration of the typical set), the cutoff projector, and the
/// operator ensemble driving the concentration step.
class CoveringContext {
 public:
  CoveringContext(CqChannel w_e, InputDist p, int n, double delta, double eps);

  const CqChannel& channel() const { return w_; }
  const TypicalSet& typical() const { return typ_; }
  int n() const { return n_; }
  double delta() const { return delta_; }
  double eps() const { return eps_; }
  double c() const { return c_; }            // typicality constant, = H(p)
  double chi() const { return chi_; }        // chi(p, W^E)
  double avg_entropy() const { return s_bar_; }     // S(Wbar^E)
  double letter_entropy() const { return s_letters_; }  // sum p_i S(W(i))

  ProjectorOp cond_typical_projector(const Seq& x) const;
  SmoothingChain smoothing_chain(const Seq& x) const;

  const Mat& pi_bar() const { return pi_bar_; }
  const Mat& phi_bar() const { return phi_bar_; }
  const Mat& pi_hat() const { return pi_hat_; }
  const Mat& phi_bar_prime() const { return phi_bar_prime_; }
  const Mat& wbar_n() const { return wbar_n_; }

  double psi_scale() const { return psi_scale_; }
  double cutoff() const { return cutoff_; }        // eps 2^{-n[S(Wbar)+c delta]}
  double chernoff_t() const { return chern_t_; }   // eps 2^{-n[chi+2c delta]}

  /// p'-weight of a typical sequence (p^n / Q_n).
  double weight(const Seq& x) const;

  Mat theta(const Seq& x) const;
  Mat psi(const Seq& x) const;

 private:
  const Mat& letter_typical_proj(int a, int m) const;
  SmoothingChain smoothing_chain_impl_phi_only(const Seq& x) const;

  CqChannel w_;
  InputDist p_;
  int n_;
  double delta_, eps_, c_;
  double s_bar_, s_letters_, chi_;
  TypicalSet typ_;
  mutable std::map<std::pair<int, int>, Mat> letter_proj_;  // (letter, m) -> typical projector
  Mat wbar_n_, pi_bar_, phi_bar_, pi_hat_, phi_bar_prime_;
  double psi_scale_, cutoff_, chern_t_;
};

/// Free-function form of the conditional typical projector
/// U_s (Pi^{m_1} (x) ... (x) Pi^{m_k}) U_s^dag.
ProjectorOp cond_typical_projector(const CqChannel& w_e, const Seq& x,
                                   double delta);

/// eps + 4 sqrt(k eps) + 8 sqrt(3 eps + 2 sqrt(k eps)).
double obfus_threshold(int k_alphabet, double eps);

/// Matrix concentration constant 1/(2 ln^2 2).
inline constexpr double k_chernoff = 1.0 / (2.0 * 0.6931471805599453 * 0.6931471805599453);

/// eps'_n = 2 * 2^{-k eps^3 2^{n[chi1 - chi]} + n[S(Wbar) + c delta]}.
double eps_prime_n(int n, double chi1, double chi, double s_bar, double c,
                   double delta, double eps);

struct CoveringStats {
  int n = 0;
  long long L_n = 0;
  double delta = 0.0, eps = 0.0;
  double delta_mean = 0.0;
  double delta_se = 0.0;
  double threshold_obfus = 0.0;
  double freq_delta_ge_threshold = 0.0;
  double eps_prime = 0.0;          // the asymptotic-form bound
  double chernoff_bound = 0.0;     // finite-n form 2 rank(Pi_bar) 2^{-L k eps^2 t}
  double chernoff_fail_freq = 0.0; // empirical window failures
  long long implication_violations = 0;  // window held but Delta > threshold
  std::vector<double> deltas;      // per-trial obfuscation errors
};

/// Draws `trials` random covering sets of size L_n from the conditional
/// distribution and records exact obfuscation errors, the concentration
/// window events against phi_bar', and the analytic bounds.
CoveringStats covering_experiment(const CqChannel& w_e, const InputDist& p,
                                  int n, double delta, double eps, long long L_n,
                                  long long trials, std::uint64_t seed,
                                  int threads = 1);

struct ChernoffResult {
  double empirical = 0.0;
  double bound = 0.0;
  long long failures = 0;
  long long trials = 0;
};

/// Samples N-fold means of the ensemble {probs, ops} (each 0 <= op <= I,
/// mean Omega >= t_thresh * I, verified) and counts exits from the window
/// [1 +- eps] Omega, against the bound 2 dim 2^{-N k eps^2 t}.
ChernoffResult chernoff_check(const std::vector<double>& probs,
                              const std::vector<Mat>& ops, long long N,
                              double eps, double t_thresh, long long trials,
                              std::uint64_t seed, int threads = 1);

}  // namespace ucq
