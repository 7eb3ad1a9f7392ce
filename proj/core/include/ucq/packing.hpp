#pragma once

#include "ucq/entropy.hpp"
#include "ucq/qmat.hpp"
#include "ucq/symm.hpp"
#include "ucq/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ucq {

/// Classical-quantum channel: one output state per input letter.
struct CqChannel {
  Alphabet alphabet;
  std::vector<DensityOp> outputs;

  CqChannel(Alphabet a, std::vector<DensityOp> outs);
  int dim() const { return static_cast<int>(outputs.front().dim()); }
  Ensemble ensemble(const InputDist& p) const;
};

/// POVM given by an explicit list of PSD elements summing to at most the
/// identity; the deficiency I - sum is the implicit failure outcome.
struct PovmSet {
  std::vector<Mat> elements;

  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements.front().rows()); }
  Mat remainder() const;
  /// Throws unless every element is PSD and the sum is <= I within tol.
  void validate(double tol = 1e-8) const;
};

/// A c-q block code: codewords, square-root decoding POVM, and the
/// threshold exponent used to build the decoder.
struct CqCode {
  std::vector<Seq> codewords;
  PovmSet povm;
  double gamma_n = 0.0;
  std::uint64_t symm_seed = 0;  // seed of the underlying tau constructions
};

/// Code-sizing parameters for rate R at block length n.
struct RateParams {
  double R = 0.0;       // requested rate, bits per channel use
  double t = 0.5;       // Renyi exponent parameter, in (0,1)
  int n = 1;
  long long M_n = 1;    // round(2^{n[R - zeta_n((k+1)(dB^2+dB))]}), floored at 1
  double gamma_n = 0.0; // R + r_t - zeta_n(k(dB^2+dB))
  double r_t = 0.0;     // (t/(t+1)) (chi_ref - R)
  bool vacuous = false; // R >= chi_ref: the random-coding bound says nothing
};

/// W^{(x)n}(x^n) = W(x_1) (x) ... (x) W(x_n).
DensityOp channel_output(const CqChannel& w, const Seq& x);

/// {omega_{x^n} - 2^{n gamma_n} tau_n >= 0}. Channel-independent by
/// construction: the signature admits no channel argument.
ProjectorOp lambda_projector(const Seq& x, double gamma_n, int n, int d_B,
                             std::uint64_t seed);

/// Square-root measurement of a list of PSD operators:
/// Y_i = S^{-1/2} L_i S^{-1/2}, S = sum L_j, inverse root on supp(S).
PovmSet sqrt_measurement(const std::vector<Mat>& lambdas);

/// The universal decoder for a codebook: square-root measurement of the
/// codewords' lambda projectors.
PovmSet build_sqrt_povm(const std::vector<Seq>& codewords, double gamma_n,
                        int n, int d_B, std::uint64_t seed);

CqCode make_code(std::vector<Seq> codewords, double gamma_n, int n, int d_B,
                 std::uint64_t symm_seed);

/// Exact average error probability (1/M) sum_i tr[W(x_i) (I - Y_i)].
double avg_error_prob(const CqChannel& w, const CqCode& code);

/// Returns (p_e, Hayashi-Nagaoka right-hand side)
/// rhs = (2/M) sum_i tr (I-L_i) W(X_i) + (4/M) sum_{i != j} tr L_j W(X_i).
std::pair<double, double> hayashi_nagaoka_check(const CqChannel& w,
                                                const CqCode& code);

/// Code sizing from the requested rate and a caller-supplied chi estimate
/// (e.g. the known lower bound chi_0). Keeps the decoder universal: the
/// channel matrices never enter.
RateParams rate_params(double R, double t, int n, int k, int d_B, double chi_ref);

/// Random-coding bound on E[p_e]:
/// 2^{-nt[chi_{1-t} - gamma_n - zeta_n(k(dB^2+dB))]}
///   + 4 (1-eps)^{-1} M_n 2^{-n(gamma_n - zeta_n(dB^2+dB))} + 2 eps.
double e16_bound(const RateParams& rp, int k, int d_B, double chi_1mt, double eps);

struct McErrorStats {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  long long trials = 0;
};

/// Monte Carlo estimate of E[p_e] over random conditional-typical codebooks.
/// Deterministic given seed; per-trial seeds are counter-derived so the
/// result does not depend on the thread schedule.
McErrorStats expected_error_mc(const CqChannel& w, const InputDist& p, int n,
                               double delta, long long M_n, double gamma_n,
                               long long trials, std::uint64_t seed,
                               int threads = 1);

}  // namespace ucq
