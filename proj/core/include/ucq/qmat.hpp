#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace ucq {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// A length-n word over a finite alphabet, letters 0-based.
using Seq = std::vector<int>;
/// A permutation of {0,...,n-1}; s[i] is the image of position i.
using Perm = std::vector<int>;

// Kernel tolerances. Block lengths stay small (dim <= 2^10), so fixed
// absolute tolerances are adequate throughout.
inline constexpr double kHermTol = 1e-12;  // max-entry deviation from A = A^dag
inline constexpr double kEigTol = 1e-10;   // support threshold; slack for {A >= B}
inline constexpr double kProjTol = 1e-9;   // idempotence tolerance

double max_abs(const Mat& m);

/// Hermitian operator on a finite-dimensional space. Construction checks
/// self-adjointness to kHermTol and throws std::invalid_argument otherwise.
class HermOp {
 public:
  explicit HermOp(Mat m);
  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Mat m_;
};

/// Positive semidefinite unit-trace operator (a state).
/// Eigenvalues must be >= -kEigTol and the trace must be 1 within 1e-10.
class DensityOp {
 public:
  explicit DensityOp(Mat m);
  /// Wraps without re-running the eigenvalue check. For results whose
  /// invariants hold by construction (tensor products of valid states,
  /// unitary conjugations).
  static DensityOp trusted(Mat m);
  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  struct trusted_tag {};
  DensityOp(Mat m, trusted_tag);
  Mat m_;
};

/// Orthogonal projector: Hermitian with ||P^2 - P||_max <= kProjTol.
class ProjectorOp {
 public:
  explicit ProjectorOp(Mat m);
  static ProjectorOp trusted(Mat m);
  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  /// Numerical rank = round(trace).
  long long rank() const;

 private:
  struct trusted_tag {};
  ProjectorOp(Mat m, trusted_tag);
  Mat m_;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct EigH {
  RVec values;
  Mat vectors;
};
EigH eigh(const Mat& m);

double min_eig(const Mat& m);
double min_eig(const HermOp& a);

HermOp kron(const HermOp& a, const HermOp& b);
Mat kron(const Mat& a, const Mat& b);
Mat kron_pow(const Mat& a, int n);

/// {A >= B}: projector onto the span of eigenvectors of (A - B) with
/// eigenvalue >= -kEigTol.
ProjectorOp positive_part_projector(const HermOp& a, const HermOp& b);

/// Sum of absolute eigenvalues.
double trace_norm(const HermOp& a);
double trace_norm(const Mat& hermitian);

/// Partial trace over the factors not listed in `keep`. `dims` are the
/// tensor-factor dimensions (their product must equal dim(M)); `keep` is a
/// strictly increasing list of 0-based factor indices to retain.
HermOp partial_trace(const HermOp& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// H^t with the power taken on the support: eigenvalues below
/// kEigTol * max|eig| map to zero. Requires H >= 0 up to tolerance.
HermOp frac_power(const HermOp& h, double t);

/// True iff min-eig(B - A) >= -tol.
bool psd_leq(const HermOp& a, const HermOp& b, double tol);

/// B with B*A*B = projector onto supp(A); inverse square root on the support.
HermOp pinv_sqrt(const HermOp& a);

// --- permutation machinery -------------------------------------------------

long long seq_index(const Seq& y, int d);
Seq index_seq(long long idx, int d, int n);

Perm perm_identity(int n);
Perm perm_inverse(const Perm& s);
/// (a o b)(i) = a[b[i]].
Perm perm_compose(const Perm& a, const Perm& b);

/// Unitary representation of s on (C^d)^{tensor n}:
/// U_s |y_1 ... y_n> = |y_{s^-1(1)} ... y_{s^-1(n)}>.
Mat permutation_unitary(const Perm& s, int d);

/// U_s A U_s^dag computed by index relabeling (no matrix multiplies).
Mat conj_by_permutation(const Mat& a, const Perm& s, int d, int n);

}  // namespace ucq
