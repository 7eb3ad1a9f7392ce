#include "ucq/private_code.hpp"

#include "ucq/parallel.hpp"
#include "ucq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ucq {

BipartiteCqChannel::BipartiteCqChannel(Alphabet a, std::vector<DensityOp> outs,
                                       int dB, int dE)
    : alphabet(a), outputs(std::move(outs)), d_B(dB), d_E(dE) {
  if (outputs.empty() || static_cast<int>(outputs.size()) != alphabet.k)
    throw std::invalid_argument("BipartiteCqChannel: one output per letter");
  for (const DensityOp& o : outputs)
    if (o.dim() != static_cast<Eigen::Index>(d_B) * d_E)
      throw std::invalid_argument("BipartiteCqChannel: output dim != d_B * d_E");
}

std::pair<CqChannel, CqChannel> marginals(const BipartiteCqChannel& w) {
  std::vector<DensityOp> outs_b, outs_e;
  outs_b.reserve(w.alphabet.k);
  outs_e.reserve(w.alphabet.k);
  const std::vector<int> dims{w.d_B, w.d_E};
  for (const DensityOp& o : w.outputs) {
    HermOp h(o.mat());
    outs_b.push_back(DensityOp::trusted(partial_trace(h, dims, {0}).mat()));
    outs_e.push_back(DensityOp::trusted(partial_trace(h, dims, {1}).mat()));
  }
  return {CqChannel(w.alphabet, std::move(outs_b)),
          CqChannel(w.alphabet, std::move(outs_e))};
}

double private_rate(const InputDist& p, const BipartiteCqChannel& w) {
  auto [wb, we] = marginals(w);
  return holevo(wb.ensemble(p)) - holevo(we.ensemble(p));
}

CoveringSet PrivateCode::covering_set(long long j) const {
  if (j < 0 || j >= J_n)
    throw std::invalid_argument("PrivateCode: covering set index out of range");
  CoveringSet s;
  s.sequences.assign(codewords.begin() + j * L_n,
                     codewords.begin() + (j + 1) * L_n);
  return s;
}

CqCode PrivateCode::flat_code() const {
  return CqCode{codewords, povm, gamma_n, symm_seed};
}

PrivateCode build_private_code(const InputDist& p, const PrivateCodeParams& par,
                               std::uint64_t seed) {
  const int k = p.k();
  const double c = par.c_override.value_or(shannon_entropy(p.p()));

  PrivateCode code;
  code.n = par.n;
  code.d_B = par.d_B;
  code.chi_warning = (par.chi0 <= par.chi1);

  long long mn = par.Mn_override;
  if (mn <= 0)
    mn = rate_params(par.chi0, par.t, par.n, k, par.d_B, par.chi0).M_n;
  long long ln = par.Ln_override;
  if (ln <= 0) {
    const double e = par.n * (par.chi1 + 2.0 * c * par.delta);
    ln = (e > 62) ? (1LL << 62)
                  : std::max(1LL, static_cast<long long>(
                                      std::round(std::pow(2.0, e))));
  }
  code.L_n = std::max(1LL, ln);
  code.J_n = std::max(1LL, mn / code.L_n);

  if (par.gamma_override) {
    code.gamma_n = *par.gamma_override;
  } else {
    code.gamma_n =
        rate_params(par.chi0, par.t, par.n, k, par.d_B, par.chi0).gamma_n;
  }

  code.symm_seed = derive_seed(seed, 0);
  ConditionalSampler draw(p, par.n, par.delta, derive_seed(seed, 1));

  const long long total = code.J_n * code.L_n;
  std::set<Seq> taken;
  code.codewords.reserve(total);
  for (long long i = 0; i < total; ++i) {
    Seq x = draw();
    if (taken.count(x)) {
      if (par.strict_disjoint) {
        int retry = 0;
        while (taken.count(x) && retry < 100) {
          x = draw();
          ++retry;
        }
      }
      if (taken.count(x)) ++code.collisions;
    }
    taken.insert(x);
    code.codewords.push_back(std::move(x));
  }

  code.povm = build_sqrt_povm(code.codewords, code.gamma_n, par.n, par.d_B,
                              code.symm_seed);
  return code;
}

PrivateVerdict evaluate_private_code(const BipartiteCqChannel& w,
                                     const InputDist& p, const PrivateCode& code,
                                     double eps_target, double delta_target) {
  auto [wb, we] = marginals(w);
  PrivateVerdict v;
  v.p_e = avg_error_prob(wb, code.flat_code());
  v.deltas.reserve(code.J_n);
  for (long long j = 0; j < code.J_n; ++j)
    v.deltas.push_back(obfuscation_error(we, p, code.covering_set(j)));
  v.delta_max = *std::max_element(v.deltas.begin(), v.deltas.end());
  v.pass = (v.p_e <= eps_target) && (v.delta_max <= delta_target);
  return v;
}

EventStats event_analysis(const BipartiteCqChannel& w, const InputDist& p,
                          const PrivateCodeParams& par, long long trials,
                          std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("event_analysis: trials >= 1");
  auto [wb, we] = marginals(w);
  const double c = par.c_override.value_or(shannon_entropy(p.p()));

  // One reference build fixes the sizing actually in force.
  PrivateCode ref = build_private_code(p, par, seed);

  RateParams rp = rate_params(par.chi0, par.t, par.n, p.k(), par.d_B, par.chi0);
  rp.M_n = ref.J_n * ref.L_n;
  rp.gamma_n = ref.gamma_n;
  const double chi_1mt = alpha_chi(1.0 - par.t, wb.ensemble(p));
  const Ensemble ens_e = we.ensemble(p);
  const double chi_e = holevo(ens_e);
  const double s_bar_e = vn_entropy(ens_e.average());

  EventStats st;
  st.trials = trials;
  st.eps_n = e16_bound(rp, p.k(), par.d_B, chi_1mt, par.eps);
  st.sqrt_eps_n = std::sqrt(st.eps_n);
  st.eps_prime =
      eps_prime_n(par.n, par.chi1, chi_e, s_bar_e, c, par.delta, par.eps);
  st.union_bound = static_cast<double>(ref.J_n) * st.eps_prime + st.sqrt_eps_n;
  st.obfus_thresh = obfus_threshold(p.k(), par.eps);

  std::vector<char> pe_fail(trials, 0);
  std::vector<std::vector<char>> cover_fail(trials);
  parallel_trials(trials, threads, [&](long long trial) {
    PrivateCode code = build_private_code(p, par, derive_seed(seed, trial + 1));
    const double pe = avg_error_prob(wb, code.flat_code());
    pe_fail[trial] = (pe > st.sqrt_eps_n) ? 1 : 0;
    cover_fail[trial].assign(code.J_n, 0);
    for (long long j = 0; j < code.J_n; ++j) {
      const double d = obfuscation_error(we, p, code.covering_set(j));
      cover_fail[trial][j] = (d >= st.obfus_thresh) ? 1 : 0;
    }
  });

  const long long jn = ref.J_n;
  st.freq_cover_fail.assign(jn, 0.0);
  long long pe_count = 0, any_count = 0;
  for (long long trial = 0; trial < trials; ++trial) {
    bool any = pe_fail[trial];
    pe_count += pe_fail[trial];
    for (long long j = 0; j < jn; ++j) {
      if (cover_fail[trial][j]) {
        st.freq_cover_fail[j] += 1.0;
        any = true;
      }
    }
    any_count += any ? 1 : 0;
  }
  st.freq_pe_fail = static_cast<double>(pe_count) / trials;
  for (double& f : st.freq_cover_fail) f /= static_cast<double>(trials);
  st.freq_any_fail = static_cast<double>(any_count) / trials;
  return st;
}

}  // namespace ucq
