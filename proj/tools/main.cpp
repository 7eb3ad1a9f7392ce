// ucq: batch experiment driver for universal c->q coding at small block
// length. Channel fixtures in, CSV verdicts and invariant reports out.

#include <CLI11.hpp>

#include "ucq/channel_io.hpp"
#include "ucq/covering.hpp"
#include "ucq/entropy.hpp"
#include "ucq/packing.hpp"
#include "ucq/private_code.hpp"
#include "ucq/verify.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace ucq;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Options {
  std::string channel;
  std::string out;
  int n = 4;
  double delta = 0.5;
  double eps = 0.1;
  double t = 0.5;
  double rate = 0.5;
  std::optional<double> chi0;
  std::optional<double> chi1;
  long long mn = 0;
  long long ln = 0;
  long long trials = 100;
  std::uint64_t seed = 42;
  int threads = 1;
  bool strict_disjoint = false;
  std::optional<double> eps_target;
  std::optional<double> delta_target;
};

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
  }
}

void check_common(const Options& o) {
  if (o.n < 1 || o.n > 10)
    throw std::invalid_argument("--n must lie in [1, 10]");
  if (o.delta <= 0.0) throw std::invalid_argument("--delta must be positive");
  if (o.eps <= 0.0) throw std::invalid_argument("--eps must be positive");
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (o.threads < 1) throw std::invalid_argument("--threads must be >= 1");
}

// Simple channel view of a fixture: the B marginal when bipartite.
CqChannel load_simple(const std::string& path, InputDist* p_out) {
  ChannelSpec spec = load_channel(path);
  *p_out = spec.dist();
  if (spec.bipartite) return marginals(to_bipartite(spec)).first;
  return to_cq(spec);
}

CqChannel load_eavesdropper(const std::string& path, InputDist* p_out) {
  ChannelSpec spec = load_channel(path);
  *p_out = spec.dist();
  if (spec.bipartite) return marginals(to_bipartite(spec)).second;
  return to_cq(spec);
}

int run_verify(const Options& o) {
  if (!o.channel.empty()) load_channel(o.channel);  // validation only
  auto results = run_verify_suite(o.seed);
  std::ostringstream os;
  int passed = 0;
  for (const auto& r : results) {
    os << "check=" << r.name << " params=\"" << r.params
       << "\" margin=" << fmt12(r.margin) << " tol=" << fmt12(r.tol)
       << " status=" << (r.pass ? "PASS" : "FAIL") << "\n";
    passed += r.pass ? 1 : 0;
  }
  os << "verify: " << passed << "/" << results.size()
     << " checks passed (seed=" << o.seed << ")\n";
  emit(os.str(), o.out);
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int run_entropy(const Options& o) {
  if (o.channel.empty()) throw std::invalid_argument("--channel is required");
  ChannelSpec spec = load_channel(o.channel);
  const InputDist p = spec.dist();
  std::ostringstream os;
  os << "quantity,value\n";
  const double alpha = 1.0 - o.t;
  if (spec.bipartite) {
    BipartiteCqChannel w = to_bipartite(spec);
    auto [wb, we] = marginals(w);
    const Ensemble eb = wb.ensemble(p), ee = we.ensemble(p);
    os << "holevo_B," << fmt12(holevo(eb)) << "\n";
    os << "holevo_E," << fmt12(holevo(ee)) << "\n";
    os << "private_rate," << fmt12(private_rate(p, w)) << "\n";
    os << "avg_state_entropy_B," << fmt12(vn_entropy(eb.average())) << "\n";
    os << "avg_state_entropy_E," << fmt12(vn_entropy(ee.average())) << "\n";
    os << "chi_alpha_B(alpha=" << fmt12(alpha) << "),"
       << fmt12(alpha_chi(alpha, eb)) << "\n";
  } else {
    CqChannel w = to_cq(spec);
    const Ensemble e = w.ensemble(p);
    double letter = 0.0;
    for (int x = 0; x < w.alphabet.k; ++x)
      letter += p[x] * vn_entropy(w.outputs[x]);
    os << "holevo," << fmt12(holevo(e)) << "\n";
    os << "avg_state_entropy," << fmt12(vn_entropy(e.average())) << "\n";
    os << "avg_letter_entropy," << fmt12(letter) << "\n";
    os << "chi_alpha(alpha=" << fmt12(alpha) << "),"
       << fmt12(alpha_chi(alpha, e)) << "\n";
  }
  emit(os.str(), o.out);
  return 0;
}

int run_packing(const Options& o) {
  if (o.channel.empty()) throw std::invalid_argument("--channel is required");
  InputDist p({1.0});
  CqChannel w = load_simple(o.channel, &p);
  const Ensemble ens = w.ensemble(p);
  const double chi_ref = o.chi0.value_or(holevo(ens));

  RateParams rp = rate_params(o.rate, o.t, o.n, w.alphabet.k, w.dim(), chi_ref);
  if (o.mn > 0) rp.M_n = o.mn;
  const double chi_1mt = alpha_chi(1.0 - o.t, ens);
  const double bound = e16_bound(rp, w.alphabet.k, w.dim(), chi_1mt, o.eps);

  McErrorStats st = expected_error_mc(w, p, o.n, o.delta, rp.M_n, rp.gamma_n,
                                      o.trials, o.seed, o.threads);
  const double r_eff = std::log2(static_cast<double>(rp.M_n)) / o.n;

  std::ostringstream os;
  os << "n,R_requested,R_effective,M_n,gamma_n,t,p_e_mean,p_e_stderr,bound_e16,"
        "seed\n";
  os << o.n << "," << fmt12(o.rate) << "," << fmt12(r_eff) << "," << rp.M_n
     << "," << fmt12(rp.gamma_n) << "," << fmt12(o.t) << "," << fmt12(st.mean)
     << "," << fmt12(st.se) << "," << fmt12(bound) << "," << o.seed << "\n";
  emit(os.str(), o.out);
  return 0;
}

int run_covering(const Options& o) {
  if (o.channel.empty()) throw std::invalid_argument("--channel is required");
  InputDist p({1.0});
  CqChannel w = load_eavesdropper(o.channel, &p);
  const double c = shannon_entropy(p.p());
  const double chi1 = o.chi1.value_or(holevo(w.ensemble(p)));
  long long L = o.ln;
  if (L <= 0) {
    const double e = o.n * (chi1 + 2.0 * c * o.delta);
    L = (e > 62) ? (1LL << 62)
                 : std::max(1LL, static_cast<long long>(
                                     std::round(std::pow(2.0, e))));
  }

  CoveringStats st = covering_experiment(w, p, o.n, o.delta, o.eps, L, o.trials,
                                         o.seed, o.threads);
  std::ostringstream os;
  os << "n,L_n,delta,eps,Delta_mean,Delta_stderr,threshold_obfus,eps_prime_n,"
        "seed\n";
  os << o.n << "," << st.L_n << "," << fmt12(o.delta) << "," << fmt12(o.eps)
     << "," << fmt12(st.delta_mean) << "," << fmt12(st.delta_se) << ","
     << fmt12(st.threshold_obfus) << "," << fmt12(st.eps_prime) << "," << o.seed
     << "\n";
  emit(os.str(), o.out);
  return 0;
}

int run_private(const Options& o) {
  if (o.channel.empty()) throw std::invalid_argument("--channel is required");
  ChannelSpec spec = load_channel(o.channel);
  if (!spec.bipartite)
    throw ChannelError("private requires a bipartite channel fixture");
  BipartiteCqChannel w = to_bipartite(spec);
  const InputDist p = spec.dist();
  auto [wb, we] = marginals(w);

  PrivateCodeParams par;
  par.chi0 = o.chi0.value_or(holevo(wb.ensemble(p)));
  par.chi1 = o.chi1.value_or(holevo(we.ensemble(p)));
  par.n = o.n;
  par.d_B = w.d_B;
  par.delta = o.delta;
  par.eps = o.eps;
  par.t = o.t;
  par.Mn_override = o.mn;
  par.Ln_override = o.ln;
  par.strict_disjoint = o.strict_disjoint;

  PrivateCode code = build_private_code(p, par, o.seed);

  // Default verdict thresholds are the analytic ones; both exceed 1 at very
  // small n, so the flags exist to pin meaningful desk-scale targets.
  RateParams rp = rate_params(par.chi0, par.t, par.n, p.k(), par.d_B, par.chi0);
  rp.M_n = code.J_n * code.L_n;
  rp.gamma_n = code.gamma_n;
  const double chi_1mt = alpha_chi(1.0 - par.t, wb.ensemble(p));
  const double eps_n = e16_bound(rp, p.k(), par.d_B, chi_1mt, par.eps);
  const double eps_target = o.eps_target.value_or(std::sqrt(eps_n));
  const double delta_target =
      o.delta_target.value_or(obfus_threshold(p.k(), par.eps));

  PrivateVerdict v = evaluate_private_code(w, p, code, eps_target, delta_target);

  std::ostringstream os;
  os << "n,J_n,L_n,p_e,Delta_max,verdict,collisions,seed\n";
  os << o.n << "," << code.J_n << "," << code.L_n << "," << fmt12(v.p_e) << ","
     << fmt12(v.delta_max) << "," << (v.pass ? "pass" : "fail") << ","
     << code.collisions << "," << o.seed << "\n";
  emit(os.str(), o.out);
  return v.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal c->q coding laboratory"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool needs_channel) {
    if (needs_channel)
      cmd->add_option("--channel", o.channel, "channel fixture (JSON)");
    cmd->add_option("--n", o.n, "block length (1..10)");
    cmd->add_option("--delta", o.delta, "typicality width");
    cmd->add_option("--eps", o.eps, "analysis epsilon");
    cmd->add_option("--seed", o.seed, "64-bit seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--threads", o.threads, "worker threads (output-invariant)");
    cmd->add_option("--out", o.out, "also write the report to this path");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, true);

  CLI::App* entropy = app.add_subcommand("entropy", "entropic quantities of a fixture");
  add_common(entropy, true);
  entropy->add_option("--t", o.t, "Renyi parameter t (alpha = 1 - t)");

  CLI::App* packing = app.add_subcommand("packing", "random-codebook decoding error");
  add_common(packing, true);
  packing->add_option("--rate", o.rate, "requested rate R (bits/use)");
  packing->add_option("--t", o.t, "Renyi parameter t in (0,1)");
  packing->add_option("--chi0", o.chi0, "chi estimate (default: channel Holevo)");
  packing->add_option("--mn", o.mn, "override codebook size M_n");

  CLI::App* covering = app.add_subcommand("covering", "covering-set obfuscation error");
  add_common(covering, true);
  covering->add_option("--chi1", o.chi1, "chi upper bound (default: channel Holevo)");
  covering->add_option("--ln", o.ln, "override covering size L_n");

  CLI::App* priv = app.add_subcommand("private", "private-code verdict");
  add_common(priv, true);
  priv->add_option("--t", o.t, "Renyi parameter t in (0,1)");
  priv->add_option("--chi0", o.chi0, "lower bound on chi(p, W^B)");
  priv->add_option("--chi1", o.chi1, "upper bound on chi(p, W^E)");
  priv->add_option("--mn", o.mn, "override M_n");
  priv->add_option("--ln", o.ln, "override L_n");
  priv->add_flag("--strict-disjoint", o.strict_disjoint,
                 "resample colliding codewords (<=100 retries)");
  priv->add_option("--eps-target", o.eps_target,
                   "verdict threshold on p_e (default sqrt(eps_n))");
  priv->add_option("--delta-target", o.delta_target,
                   "verdict threshold on max_j Delta (default analytic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    check_common(o);
    if (verify->parsed()) return run_verify(o);
    if (entropy->parsed()) return run_entropy(o);
    if (packing->parsed()) return run_packing(o);
    if (covering->parsed()) return run_covering(o);
    if (priv->parsed()) return run_private(o);
  } catch (const ucq::ChannelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
