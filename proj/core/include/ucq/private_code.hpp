#pragma once

#include "ucq/covering.hpp"
#include "ucq/packing.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ucq {

/// c->qq channel: each letter maps to a bipartite state on H_B (x) H_E.
struct BipartiteCqChannel {
  Alphabet alphabet;
  std::vector<DensityOp> outputs;
  int d_B = 2;
  int d_E = 2;

  BipartiteCqChannel(Alphabet a, std::vector<DensityOp> outs, int dB, int dE);
};

/// Receiver / eavesdropper marginal channels (tr_E, tr_B per letter).
std::pair<CqChannel, CqChannel> marginals(const BipartiteCqChannel& w);

/// I_c = chi(p, W^B) - chi(p, W^E); may be negative.
double private_rate(const InputDist& p, const BipartiteCqChannel& w);

/// Construction knobs. chi0/chi1 drive the code sizing; the overrides exist
/// because the asymptotic sizing formulas collapse at desk-scale block
/// lengths (M_n below 1, J_n = 0).
struct PrivateCodeParams {
  double chi0 = 1.0;  // lower bound on chi(p, W^B)
  double chi1 = 0.5;  // upper bound on chi(p, W^E)
  int n = 4;
  int d_B = 2;
  double delta = 0.5;
  double eps = 0.1;
  double t = 0.5;
  long long Mn_override = 0;   // 0: size by 2^{n[chi0 - zeta_n((k+1)(dB^2+dB))]}
  long long Ln_override = 0;   // 0: size by 2^{n[chi1 + 2 c delta]}
  std::optional<double> gamma_override;  // default: chi0 + r(t) - zeta_n(k(dB^2+dB))
  bool strict_disjoint = false;  // resample colliding draws (<= 100 retries each)
  std::optional<double> c_override;  // typicality constant, default H(p)
};

/// A (j, l)-indexed private code. Codeword (j, l) sits at index j*L_n + l;
/// covering set S_j is the j-th block of L_n codewords. The decoding POVM
/// distinguishes all J_n * L_n pairs.
struct PrivateCode {
  long long J_n = 1;
  long long L_n = 1;
  std::vector<Seq> codewords;
  PovmSet povm;
  double gamma_n = 0.0;
  std::uint64_t symm_seed = 0;
  long long collisions = 0;   // draws equal to an earlier draw
  bool chi_warning = false;   // chi0 <= chi1 forced J_n to 1
  int n = 0;
  int d_B = 2;

  CoveringSet covering_set(long long j) const;
  /// The flat (j,l) message view used for decoding-error evaluation.
  CqCode flat_code() const;
};

/// Builds the code from (p, params, seed) alone; no channel matrices enter.
PrivateCode build_private_code(const InputDist& p, const PrivateCodeParams& par,
                               std::uint64_t seed);

struct PrivateVerdict {
  double p_e = 1.0;
  std::vector<double> deltas;  // obfuscation error per covering set
  double delta_max = 0.0;
  bool pass = false;
};

/// p_e over all (j, l) messages against W^B plus Delta(S_j) for every j
/// against W^E; pass iff p_e <= eps_target and max_j Delta <= delta_target.
PrivateVerdict evaluate_private_code(const BipartiteCqChannel& w,
                                     const InputDist& p, const PrivateCode& code,
                                     double eps_target, double delta_target);

struct EventStats {
  long long trials = 0;
  double eps_n = 0.0;        // random-coding bound at the code's parameters
  double sqrt_eps_n = 0.0;
  double eps_prime = 0.0;    // covering bound per set
  double union_bound = 0.0;  // J_n * eps'_n + sqrt(eps_n)
  double freq_pe_fail = 0.0; // empirical Pr{p_e > sqrt(eps_n)}
  std::vector<double> freq_cover_fail;  // per j: Pr{Delta(S_j) >= threshold}
  double freq_any_fail = 0.0;
  double obfus_thresh = 0.0;
};

/// Empirical event frequencies over random code draws next to the analytic
/// union bound.
EventStats event_analysis(const BipartiteCqChannel& w, const InputDist& p,
                          const PrivateCodeParams& par, long long trials,
                          std::uint64_t seed, int threads = 1);

}  // namespace ucq
