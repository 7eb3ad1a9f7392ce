#include "ucq/qmat.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ucq {

double max_abs(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

static void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

HermOp::HermOp(Mat m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), "HermOp: matrix not square");
  require(max_abs(m_ - m_.adjoint()) <= kHermTol,
          "HermOp: not Hermitian within tolerance");
}

DensityOp::DensityOp(Mat m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), "DensityOp: matrix not square");
  require(max_abs(m_ - m_.adjoint()) <= kHermTol,
          "DensityOp: not Hermitian within tolerance");
  require(std::abs(m_.trace().real() - 1.0) <= 1e-10 &&
              std::abs(m_.trace().imag()) <= 1e-10,
          "DensityOp: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -kEigTol,
          "DensityOp: negative eigenvalue beyond tolerance");
}

DensityOp::DensityOp(Mat m, trusted_tag) : m_(std::move(m)) {}

DensityOp DensityOp::trusted(Mat m) { return DensityOp(std::move(m), trusted_tag{}); }

ProjectorOp::ProjectorOp(Mat m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), "ProjectorOp: matrix not square");
  require(max_abs(m_ - m_.adjoint()) <= kHermTol,
          "ProjectorOp: not Hermitian within tolerance");
  require(max_abs(m_ * m_ - m_) <= kProjTol,
          "ProjectorOp: not idempotent within tolerance");
}

ProjectorOp::ProjectorOp(Mat m, trusted_tag) : m_(std::move(m)) {}

ProjectorOp ProjectorOp::trusted(Mat m) {
  return ProjectorOp(std::move(m), trusted_tag{});
}

long long ProjectorOp::rank() const {
  return std::llround(m_.trace().real());
}

EigH eigh(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver did not converge");
  return EigH{es.eigenvalues(), es.eigenvectors()};
}

double min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_eig: eigensolver did not converge");
  return es.eigenvalues().minCoeff();
}

double min_eig(const HermOp& a) { return min_eig(a.mat()); }

Mat kron(const Mat& a, const Mat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

HermOp kron(const HermOp& a, const HermOp& b) {
  return HermOp(kron(a.mat(), b.mat()));
}

Mat kron_pow(const Mat& a, int n) {
  require(n >= 0, "kron_pow: negative power");
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

ProjectorOp positive_part_projector(const HermOp& a, const HermOp& b) {
  require(a.dim() == b.dim(), "positive_part_projector: dimension mismatch");
  EigH e = eigh(a.mat() - b.mat());
  const Eigen::Index d = a.dim();
  Mat basis(d, d);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (e.values(i) >= -kEigTol) basis.col(r++) = e.vectors.col(i);
  }
  if (r == 0) return ProjectorOp::trusted(Mat::Zero(d, d));
  Mat q = basis.leftCols(r);
  return ProjectorOp::trusted(q * q.adjoint());
}

double trace_norm(const Mat& hermitian) {
  EigH e = eigh(hermitian);
  return e.values.cwiseAbs().sum();
}

double trace_norm(const HermOp& a) { return trace_norm(a.mat()); }

HermOp partial_trace(const HermOp& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  long long total = 1;
  for (int d : dims) {
    require(d >= 1, "partial_trace: factor dimension < 1");
    total *= d;
  }
  require(total == m.dim(), "partial_trace: product of dims != dim(M)");
  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (size_t i = 0; i < keep.size(); ++i) {
    require(keep[i] >= 0 && keep[i] < nf, "partial_trace: keep index out of range");
    require(i == 0 || keep[i] > keep[i - 1], "partial_trace: keep not increasing");
    kept[keep[i]] = true;
  }

  long long dk = 1, dt = 1;
  for (int f = 0; f < nf; ++f) (kept[f] ? dk : dt) *= dims[f];

  // Strides of each factor in the full index.
  std::vector<long long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> kept_f, traced_f;
  for (int f = 0; f < nf; ++f) (kept[f] ? kept_f : traced_f).push_back(f);

  auto expand = [&](long long packed, const std::vector<int>& facs) {
    long long full = 0;
    for (int i = static_cast<int>(facs.size()) - 1; i >= 0; --i) {
      int f = facs[i];
      full += (packed % dims[f]) * stride[f];
      packed /= dims[f];
    }
    return full;
  };

  Mat out = Mat::Zero(dk, dk);
  for (long long r = 0; r < dk; ++r) {
    long long rbase = expand(r, kept_f);
    for (long long c = 0; c < dk; ++c) {
      long long cbase = expand(c, kept_f);
      Complex acc(0, 0);
      for (long long t = 0; t < dt; ++t) {
        long long off = expand(t, traced_f);
        acc += m.mat()(rbase + off, cbase + off);
      }
      out(r, c) = acc;
    }
  }
  return HermOp(out);
}

HermOp frac_power(const HermOp& h, double t) {
  EigH e = eigh(h.mat());
  const double vmax = e.values.size() ? e.values.cwiseAbs().maxCoeff() : 0.0;
  const double cut = kEigTol * std::max(vmax, 1e-300);
  RVec pw(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double v = e.values(i);
    if (v <= cut) {
      require(v >= -cut - kEigTol, "frac_power: operator not PSD");
      pw(i) = 0.0;
    } else {
      pw(i) = std::pow(v, t);
    }
  }
  Mat out = e.vectors * pw.asDiagonal() * e.vectors.adjoint();
  return HermOp(0.5 * (out + out.adjoint()));
}

bool psd_leq(const HermOp& a, const HermOp& b, double tol) {
  require(a.dim() == b.dim(), "psd_leq: dimension mismatch");
  return min_eig(b.mat() - a.mat()) >= -tol;
}

HermOp pinv_sqrt(const HermOp& a) {
  EigH e = eigh(a.mat());
  const double vmax = e.values.size() ? e.values.cwiseAbs().maxCoeff() : 0.0;
  const double cut = kEigTol * std::max(vmax, 1e-300);
  RVec pw(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double v = e.values(i);
    pw(i) = (v <= cut) ? 0.0 : 1.0 / std::sqrt(v);
  }
  Mat out = e.vectors * pw.asDiagonal() * e.vectors.adjoint();
  return HermOp(0.5 * (out + out.adjoint()));
}

long long seq_index(const Seq& y, int d) {
  long long idx = 0;
  for (int v : y) idx = idx * d + v;
  return idx;
}

Seq index_seq(long long idx, int d, int n) {
  Seq y(n);
  for (int i = n - 1; i >= 0; --i) {
    y[i] = static_cast<int>(idx % d);
    idx /= d;
  }
  return y;
}

Perm perm_identity(int n) {
  Perm s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

Perm perm_inverse(const Perm& s) {
  Perm inv(s.size());
  for (size_t i = 0; i < s.size(); ++i) inv[s[i]] = static_cast<int>(i);
  return inv;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

// Index map on sequences induced by s: y -> s.y with (s.y)_i = y_{s^-1(i)}.
static std::vector<long long> perm_index_map(const Perm& s, int d, int n) {
  const Perm sinv = perm_inverse(s);
  long long dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  std::vector<long long> map(dn);
  for (long long idx = 0; idx < dn; ++idx) {
    Seq y = index_seq(idx, d, n);
    Seq z(n);
    for (int i = 0; i < n; ++i) z[i] = y[sinv[i]];
    map[idx] = seq_index(z, d);
  }
  return map;
}

Mat permutation_unitary(const Perm& s, int d) {
  const int n = static_cast<int>(s.size());
  auto map = perm_index_map(s, d, n);
  const long long dn = static_cast<long long>(map.size());
  Mat u = Mat::Zero(dn, dn);
  for (long long c = 0; c < dn; ++c) u(map[c], c) = 1.0;
  return u;
}

Mat conj_by_permutation(const Mat& a, const Perm& s, int d, int n) {
  auto map = perm_index_map(s, d, n);
  const long long dn = static_cast<long long>(map.size());
  if (a.rows() != dn || a.cols() != dn)
    throw std::invalid_argument("conj_by_permutation: dimension mismatch");
  Mat out(dn, dn);
  for (long long r = 0; r < dn; ++r)
    for (long long c = 0; c < dn; ++c) out(map[r], map[c]) = a(r, c);
  return out;
}

}  // namespace ucq
