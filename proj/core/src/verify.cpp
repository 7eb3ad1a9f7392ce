#include "ucq/verify.hpp"

#include "ucq/covering.hpp"
#include "ucq/entropy.hpp"
#include "ucq/packing.hpp"
#include "ucq/qmat.hpp"
#include "ucq/rng.hpp"
#include "ucq/symm.hpp"
#include "ucq/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ucq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VerifyResult make_result(std::string name, std::string params, double margin,
                         double tol) {
  VerifyResult r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.margin = margin;
  r.tol = tol;
  r.pass = margin >= -tol;
  return r;
}

VerifyResult check_lemma1(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 101));
  double margin = kInf;
  for (int rep = 0; rep < 20; ++rep) {
    DensityOp sigma = DensityOp::trusted(random_density(2, rng));
    for (int n = 1; n <= 4; ++n)
      margin = std::min(margin, lemma1_gap(sigma, n, derive_seed(seed, 7)));
  }
  return make_result("lemma1_tau_dominates", "d=2 n=1..4 states=20", margin, 1e-9);
}

VerifyResult check_lemma2(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 102));
  double margin = kInf;
  const double gammas[] = {-2.0, 0.0, 2.0};
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 3;
    HermOp rho(random_density(d, rng));
    HermOp om(random_psd(d, 0.5 + rng.uniform(), rng));
    for (double g : gammas) {
      const Mat proj =
          positive_part_projector(rho, HermOp(std::pow(2.0, -g) * om.mat())).mat();
      const double traced = (proj * om.mat()).trace().real();
      margin = std::min(margin, std::pow(2.0, g) - traced);
    }
  }
  return make_result("lemma2_threshold_trace", "d=2..4 reps=50 gamma={-2,0,2}",
                     margin, 1e-9);
}

VerifyResult check_gentle_measurement(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 103));
  double margin = kInf;
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 3;
    DensityOp rho = DensityOp::trusted(random_density(d, rng));
    Mat lam = random_contraction(d, rng);
    // Bias toward high-overlap instances where the bound is informative.
    lam = 0.5 * (lam + Mat::Identity(d, d));
    lam = 0.5 * (lam + lam.adjoint());
    const double overlap = (rho.mat() * lam).trace().real();
    const double dl = std::max(0.0, 1.0 - overlap);
    const Mat root = frac_power(HermOp(lam), 0.5).mat();
    const double dist = trace_norm(rho.mat() - root * rho.mat() * root);
    margin = std::min(margin, 2.0 * std::sqrt(dl) - dist);
  }
  return make_result("gentle_measurement", "d=2..4 reps=50", margin, 1e-9);
}

VerifyResult check_chernoff(std::uint64_t seed) {
  // Two-outcome qubit ensemble with mean I/2.
  Mat a(2, 2), b(2, 2);
  a << 0.8, 0.1, 0.1, 0.3;
  b << 0.2, -0.1, -0.1, 0.7;
  ChernoffResult res = chernoff_check({0.5, 0.5}, {a, b}, 200, 0.3, 0.5, 200,
                                      derive_seed(seed, 104));
  const double se =
      std::sqrt(std::max(res.empirical * (1.0 - res.empirical), 1e-12) /
                static_cast<double>(res.trials));
  const double margin = res.bound + 3.0 * se - res.empirical;
  return make_result("lemma3_operator_chernoff", "d=2 N=200 eps=0.3 trials=200",
                     margin, 0.0);
}

VerifyResult check_lemma4(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 105));
  double margin = kInf;
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 2;
    const double t = 0.1 + 0.8 * rng.uniform();
    HermOp a(random_psd(d, 1.0 + rng.uniform(), rng));
    const double rhs =
        std::pow(frac_power(a, 1.0 / (1.0 - t)).mat().trace().real(), 1.0 - t);
    // Analytic maximizer sigma* ~ A^{1/(1-t)}.
    Mat opt = frac_power(a, 1.0 / (1.0 - t)).mat();
    opt /= opt.trace().real();
    const double at_opt =
        (a.mat() * frac_power(HermOp(opt), t).mat()).trace().real();
    margin = std::min(margin, -std::abs(at_opt - rhs));
    for (int probe = 0; probe < 5; ++probe) {
      Mat sig = random_density(d, rng);
      const double at_probe =
          (a.mat() * frac_power(HermOp(sig), t).mat()).trace().real();
      margin = std::min(margin, rhs - at_probe);
    }
  }
  return make_result("lemma4_max_trace_power", "d=2..3 reps=50 probes=5", margin,
                     1e-9);
}

VerifyResult check_hayashi_nagaoka(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 106));
  double margin = kInf;
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 3;
    const Mat s = random_contraction(d, rng);
    const Mat t = random_psd(d, 1.5 * rng.uniform() + 1e-3, rng);
    const Mat root = pinv_sqrt(HermOp(s + t)).mat();
    const Mat id = Mat::Identity(d, d);
    const Mat lhs = id - root * s * root;
    const Mat rhs = 2.0 * (id - s) + 4.0 * t;
    margin = std::min(margin, min_eig(rhs - 0.5 * (lhs + lhs.adjoint())));
  }
  return make_result("hayashi_nagaoka_inequality", "d=2..4 reps=50", margin, 1e-9);
}

VerifyResult check_eq_dim(std::uint64_t seed) {
  double margin = kInf;
  bool stable = true;
  for (int n = 1; n <= 4; ++n) {
    for (const TypeVec& q : enumerate_types(n, 2)) {
      long long ranks[3];
      for (int s = 0; s < 3; ++s)
        ranks[s] = projector_tildeIq(q, 2, derive_seed(seed, 200 + s)).rank;
      stable = stable && ranks[0] == ranks[1] && ranks[1] == ranks[2];
      const double kq = type_class_size(q);
      const double upper = std::pow(n + 1.0, 4) * kq;
      margin = std::min(margin, static_cast<double>(ranks[0]) - kq);
      margin = std::min(margin, upper - static_cast<double>(ranks[0]));
    }
  }
  VerifyResult r = make_result("appendix_a_rank_bounds",
                               "d=2 n=1..4 all types seeds=3", margin, 1e-9);
  r.pass = r.pass && stable;
  return r;
}

VerifyResult check_commutators(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 107));
  double worst = 0.0;
  const std::uint64_t symm_seed = derive_seed(seed, 7);
  for (int n = 1; n <= 4; ++n) {
    const Mat tau = tau_n(n, 2, symm_seed).op.mat();
    long long dn = 1;
    for (int i = 0; i < n; ++i) dn *= 2;
    for (long long idx = 0; idx < dn; ++idx) {
      const Seq x = index_seq(idx, 2, n);
      const Mat om = omega(x, 2, symm_seed).mat();
      worst = std::max(worst, max_abs(om * tau - tau * om));
    }
    for (int rep = 0; rep < 5; ++rep) {
      const Mat sn = kron_pow(random_density(2, rng), n);
      worst = std::max(worst, max_abs(sn * tau - tau * sn));
    }
  }
  return make_result("appendix_b_commutators", "d=2 k=2 n=1..4 all x^n", -worst,
                     1e-9);
}

VerifyResult check_eq_a(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 108));
  const std::uint64_t symm_seed = derive_seed(seed, 7);
  double margin = kInf;
  const double ts[] = {0.3, 0.7};
  const double gammas[] = {0.2, 0.5};
  for (int n = 1; n <= 3; ++n) {
    const Mat tau = tau_n(n, 2, symm_seed).op.mat();
    for (int rep = 0; rep < 9; ++rep) {
      Seq x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform_int(0, 1);
      const Mat om = omega(x, 2, symm_seed).mat();
      for (double t : ts) {
        for (double g : gammas) {
          const Mat lam = lambda_projector(x, g, n, 2, symm_seed).mat();
          const Mat omt = frac_power(HermOp(om), -t / 2.0).mat();
          const Mat rhs =
              std::pow(2.0, n * t * g) * omt *
              frac_power(HermOp(tau), t).mat() * omt;
          const Mat id = Mat::Identity(om.rows(), om.cols());
          margin = std::min(
              margin, min_eig(0.5 * (rhs + rhs.adjoint()) - (id - lam)));
        }
      }
    }
  }
  return make_result("eq_a_lambda_dominated",
                     "d=2 n=1..3 t={0.3,0.7} gamma={0.2,0.5}", margin, 1e-9);
}

VerifyResult check_eq_c(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 109));
  const std::uint64_t symm_seed = derive_seed(seed, 7);
  double margin = kInf;
  for (int rep = 0; rep < 10; ++rep) {
    const int k = 2 + rep % 2;
    std::vector<DensityOp> outs;
    for (int a = 0; a < k; ++a)
      outs.push_back(DensityOp::trusted(random_density(2, rng)));
    CqChannel w(Alphabet{k}, outs);
    for (int n = 1; n <= 3; ++n) {
      Seq x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform_int(0, k - 1);
      const Mat lhs = channel_output(w, x).mat();
      const Mat rhs =
          std::pow(n + 1.0, k * 6.0) * omega(x, 2, symm_seed).mat();
      margin = std::min(margin, min_eig(rhs - lhs));
    }
  }
  return make_result("eq_c_channel_dominated", "d_B=2 k=2..3 n=1..3 reps=10",
                     margin, 1e-9);
}

VerifyResult check_eq_iqiq(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 110));
  const std::uint64_t symm_seed = derive_seed(seed, 7);
  double margin = kInf;
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      // sigma diagonal in the computational basis, matching I_q's basis.
      const double lam = 0.05 + 0.9 * rng.uniform();
      Mat sigma(2, 2);
      sigma << lam, 0.0, 0.0, 1.0 - lam;
      const Mat sn = kron_pow(sigma, n);
      for (const TypeVec& q : enumerate_types(n, 2)) {
        const Mat iq = projector_Iq(q, 2).proj.mat();
        const Mat lhs = iq * sn * iq;
        const Mat rhs = std::pow(n + 1.0, 4) * tau_q(q, 2, symm_seed).mat();
        margin = std::min(margin, min_eig(rhs - 0.5 * (lhs + lhs.adjoint())));
      }
    }
  }
  return make_result("eq_iqiq_chain", "d=2 n=1..3 all types reps=5", margin, 1e-9);
}

VerifyResult check_typical_sandwich(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 111));
  double margin = kInf;
  for (int rep = 0; rep < 5; ++rep) {
    DensityOp sigma = DensityOp::trusted(random_density(2, rng));
    const double s = vn_entropy(sigma);
    const double c = s;  // typicality constant for the eigenvalue distribution
    for (int n = 2; n <= 6; n += 2) {
      const double delta = 0.6;
      const Mat pi = typical_projector(sigma, n, delta).mat();
      if (std::llround(pi.trace().real()) == 0) continue;
      const Mat sn = kron_pow(sigma.mat(), n);
      const Mat mid = pi * sn * pi;
      const double lo = std::pow(2.0, -n * (s + c * delta));
      const double hi = std::pow(2.0, -n * (s - c * delta));
      margin = std::min(margin, min_eig(hi * pi - 0.5 * (mid + mid.adjoint())));
      margin = std::min(margin, min_eig(0.5 * (mid + mid.adjoint()) - lo * pi));
      // Cardinality bound tr Pi <= 2^{n[S + c delta]}.
      margin = std::min(margin, std::pow(2.0, n * (s + c * delta)) -
                                    pi.trace().real());
    }
  }
  return make_result("typical_projector_sandwich", "d=2 n={2,4,6} delta=0.6",
                     margin, 1e-9);
}

VerifyResult check_entropy_identities(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 112));
  double margin = kInf;
  for (int rep = 0; rep < 10; ++rep) {
    const int k = 2 + rep % 2;
    std::vector<double> pv(k);
    double sum = 0.0;
    for (double& v : pv) sum += (v = 0.1 + rng.uniform());
    for (double& v : pv) v /= sum;
    // Exact renormalization so InputDist's 1e-12 gate cannot trip.
    double acc = 0.0;
    for (int i = 0; i + 1 < k; ++i) acc += pv[i];
    pv[k - 1] = 1.0 - acc;
    std::vector<DensityOp> states;
    for (int i = 0; i < k; ++i)
      states.push_back(DensityOp::trusted(random_density(2, rng)));
    Ensemble e(InputDist(pv), states);

    // chi via the relative-entropy form S(sigma_XQ || sigma_X (x) sigma_Q).
    const Mat xq = cq_state(e);
    Mat sx = Mat::Zero(k, k);
    for (int i = 0; i < k; ++i) sx(i, i) = pv[i];
    const Mat prod = kron(sx, e.average().mat());
    const double direct = rel_entropy(DensityOp::trusted(xq), HermOp(prod));
    margin = std::min(margin, -std::abs(direct - holevo(e)));

    // alpha-chi converges to chi from below.
    const double near = alpha_chi(0.999, e);
    margin = std::min(margin, 0.01 - std::abs(near - holevo(e)));
    double prev = kInf;
    for (double t = 0.05; t < 0.96; t += 0.1) {
      const double cur = alpha_chi(1.0 - t, e);
      margin = std::min(margin, prev - cur);  // non-increasing in t
      margin = std::min(margin, holevo(e) - cur);
      prev = cur;
    }
  }
  return make_result("entropy_identities", "qubit ensembles k=2..3 reps=10",
                     margin, 1e-9);
}

VerifyResult check_prob_dis(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 113));
  double margin = kInf;
  for (int rep = 0; rep < 6; ++rep) {
    std::vector<double> pv{0.3 + 0.4 * rng.uniform(), 0.0};
    pv[1] = 1.0 - pv[0];
    InputDist p(pv);
    const int n = 2 + rep % 5;
    const double delta = 0.3 + 0.5 * rng.uniform();
    TypicalSet ts = typical_set(p, n, delta);
    // ||p - p'||_1 evaluates to exactly 2 (1 - Q_n).
    double tv = 0.0;
    long long kn = 1;
    for (int i = 0; i < n; ++i) kn *= 2;
    std::vector<char> typical_flag(kn, 0);
    for (const Seq& x : ts.sequences) typical_flag[seq_index(x, 2)] = 1;
    for (long long idx = 0; idx < kn; ++idx) {
      const Seq x = index_seq(idx, 2, n);
      const double px = seq_prob(p, x);
      const double qx = typical_flag[idx] ? px / ts.Q_n : 0.0;
      tv += std::abs(px - qx);
    }
    const double eps = 1.0 - ts.Q_n;
    margin = std::min(margin, 2.0 * eps - tv);
  }
  return make_result("conditional_distribution_tv", "k=2 n=2..6", margin, 1e-9);
}

}  // namespace

std::vector<VerifyResult> run_verify_suite(std::uint64_t seed) {
  std::vector<VerifyResult> out;
  out.push_back(check_lemma1(seed));
  out.push_back(check_lemma2(seed));
  out.push_back(check_gentle_measurement(seed));
  out.push_back(check_chernoff(seed));
  out.push_back(check_lemma4(seed));
  out.push_back(check_hayashi_nagaoka(seed));
  out.push_back(check_eq_dim(seed));
  out.push_back(check_commutators(seed));
  out.push_back(check_eq_a(seed));
  out.push_back(check_eq_c(seed));
  out.push_back(check_eq_iqiq(seed));
  out.push_back(check_typical_sandwich(seed));
  out.push_back(check_entropy_identities(seed));
  out.push_back(check_prob_dis(seed));
  return out;
}

}  // namespace ucq
