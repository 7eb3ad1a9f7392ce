#include "ucq/symm.hpp"

#include "ucq/rng.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace ucq {

namespace {

struct TildeKey {
  int d;
  std::vector<int> counts;
  std::uint64_t seed;
  auto operator<=>(const TildeKey&) const = default;
};

std::mutex g_cache_mutex;
std::map<TildeKey, std::shared_ptr<const InvariantProjector>> g_tilde_cache;

int checked_sum(const TypeVec& q) {
  int sum = std::accumulate(q.counts.begin(), q.counts.end(), 0);
  if (sum != q.n) throw std::invalid_argument("type counts do not sum to n");
  return sum;
}

InvariantProjector build_tildeIq(const TypeVec& q, int d, std::uint64_t seed) {
  const int n = checked_sum(q);
  long long dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;

  // Orthonormal accumulation, seeded with the type-class basis vectors
  // themselves (U = identity belongs to the orbit).
  Mat basis(dn, dn);
  Eigen::Index r = 0;
  std::vector<long long> class_indices;
  for (const Seq& y : TypeClassRange(q)) {
    class_indices.push_back(seq_index(y, d));
    basis.col(r).setZero();
    basis(class_indices.back(), r) = 1.0;
    ++r;
  }

  constexpr double mgs_tol = 1e-9;
  auto absorb = [&](CVec v) -> bool {
    // Two-pass modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < r; ++j)
        v -= basis.col(j).dot(v) * basis.col(j);
    const double nrm = v.norm();
    if (nrm <= mgs_tol) return false;
    basis.col(r++) = v / nrm;
    return true;
  };

  Rng rng(seed);
  int stale = 0, iters = 0;
  while (stale < 3 && iters < 200 && r < dn) {
    Mat un = kron_pow(haar_unitary(d, rng), n);
    bool gained = false;
    for (long long idx : class_indices)
      if (absorb(un.col(idx))) gained = true;
    ++iters;
    stale = gained ? 0 : stale + 1;
  }
  if (stale < 3 && r < dn)
    throw std::runtime_error("projector_tildeIq: rank saturation not reached "
                             "within 200 unitaries");

  Mat qcols = basis.leftCols(r);
  Mat p = qcols * qcols.adjoint();
  return InvariantProjector{q, ProjectorOp::trusted(0.5 * (p + p.adjoint())),
                            static_cast<long long>(r)};
}

std::shared_ptr<const InvariantProjector> tildeIq_cached(const TypeVec& q, int d,
                                                         std::uint64_t seed) {
  TildeKey key{d, q.counts, seed};
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_tilde_cache.find(key);
    if (it != g_tilde_cache.end()) return it->second;
  }
  auto built = std::make_shared<const InvariantProjector>(build_tildeIq(q, d, seed));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = g_tilde_cache.emplace(key, built);
  return it->second;
}

}  // namespace

void clear_symm_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_tilde_cache.clear();
}

TypeProjector projector_Iq(const TypeVec& q, int d) {
  const int n = checked_sum(q);
  long long dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  Mat p = Mat::Zero(dn, dn);
  for (const Seq& y : TypeClassRange(q)) {
    long long idx = seq_index(y, d);
    p(idx, idx) = 1.0;
  }
  return TypeProjector{q, ProjectorOp::trusted(std::move(p))};
}

InvariantProjector projector_tildeIq(const TypeVec& q, int d, std::uint64_t seed) {
  return *tildeIq_cached(q, d, seed);
}

DensityOp tau_q(const TypeVec& q, int d, std::uint64_t seed) {
  auto ip = tildeIq_cached(q, d, seed);
  return DensityOp::trusted(ip->proj.mat() / static_cast<double>(ip->rank));
}

UniversalState tau_n(int n, int d, std::uint64_t seed) {
  const auto types = enumerate_types(n, d);
  long long dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  Mat acc = Mat::Zero(dn, dn);
  for (const TypeVec& q : types) acc += tau_q(q, d, seed).mat();
  acc /= static_cast<double>(types.size());
  return UniversalState{n, DensityOp::trusted(0.5 * (acc + acc.adjoint()))};
}

DensityOp omega(const Seq& x, int d, std::uint64_t seed) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw std::invalid_argument("omega: empty sequence");
  auto [xo, s] = ordered_rep(x);
  Mat block = Mat::Identity(1, 1);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && xo[j] == xo[i]) ++j;
    block = kron(block, tau_n(j - i, d, seed).op.mat());
    i = j;
  }
  return DensityOp::trusted(conj_by_permutation(block, s, d, n));
}

ProjectorOp typical_projector(const DensityOp& sigma, int n, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("typical_projector: delta > 0");
  EigH e = eigh(sigma.mat());
  const int d = static_cast<int>(sigma.dim());
  std::vector<double> lambda(d);
  for (int i = 0; i < d; ++i) lambda[i] = std::max(0.0, e.values(i));
  InputDist lam([&] {
    double s = 0;
    for (double& v : lambda) s += v;
    std::vector<double> norm(lambda);
    for (double& v : norm) v /= s;
    return norm;
  }());

  long long dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  RVec indicator = RVec::Zero(dn);
  bool all = true, none = true;
  for (const TypeVec& q : typical_set(lam, n, delta, /*materialize=*/false).types) {
    for (const Seq& y : TypeClassRange(q)) indicator(seq_index(y, d)) = 1.0;
  }
  const long long marked = std::llround(indicator.sum());
  all = (marked == dn);
  none = (marked == 0);
  if (none) return ProjectorOp::trusted(Mat::Zero(dn, dn));
  if (all) return ProjectorOp::trusted(Mat::Identity(dn, dn));

  Mat vn = kron_pow(e.vectors, n);
  Mat p = vn * indicator.asDiagonal() * vn.adjoint();
  return ProjectorOp::trusted(0.5 * (p + p.adjoint()));
}

double lemma1_gap(const DensityOp& sigma, int n, std::uint64_t seed) {
  const int d = static_cast<int>(sigma.dim());
  const double scale = std::pow(n + 1.0, d * d + d);
  Mat lhs = scale * tau_n(n, d, seed).op.mat() - kron_pow(sigma.mat(), n);
  return min_eig(lhs);
}

}  // namespace ucq
