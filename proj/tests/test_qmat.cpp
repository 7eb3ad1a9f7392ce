#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "ucq/qmat.hpp"
#include "ucq/rng.hpp"

#include <cmath>

using namespace ucq;

namespace {

Mat ket_proj(int b, int d) {
  Mat m = Mat::Zero(d, d);
  m(b, b) = 1.0;
  return m;
}

Mat plus_proj() {
  Mat m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

}  // namespace

TEST_CASE("kron basics") {
  const Mat i2 = Mat::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - Mat::Identity(4, 4)) == 0.0);

  Mat d10 = Mat::Zero(2, 2), d01 = Mat::Zero(2, 2);
  d10(0, 0) = 1.0;
  d01(1, 1) = 1.0;
  Mat expect = Mat::Zero(4, 4);
  expect(1, 1) = 1.0;
  CHECK(max_abs(kron(d10, d01) - expect) == 0.0);

  // X (x) X sends |00> to |11>; checked against the hand 4x4 expansion.
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  Mat xx_hand = Mat::Zero(4, 4);
  xx_hand(0, 3) = xx_hand(1, 2) = xx_hand(2, 1) = xx_hand(3, 0) = 1.0;
  const Mat xx = kron(x, x);
  CHECK(max_abs(xx - xx_hand) == 0.0);
  CVec v00 = CVec::Zero(4);
  v00(0) = 1.0;
  CVec v11 = CVec::Zero(4);
  v11(3) = 1.0;
  CHECK((xx * v00 - v11).norm() == 0.0);
}

TEST_CASE("herm/density/projector validation") {
  Mat bad(2, 2);
  bad << 1.0, Complex(0, 1), Complex(0, 1), 1.0;  // not Hermitian
  CHECK_THROWS_AS(HermOp{bad}, std::invalid_argument);

  Mat neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityOp{neg}, std::invalid_argument);
  CHECK_NOTHROW(DensityOp{ket_proj(0, 2)});

  Mat notproj(2, 2);
  notproj << 0.5, 0, 0, 0.5;
  CHECK_THROWS_AS(ProjectorOp{notproj}, std::invalid_argument);
  CHECK_NOTHROW(ProjectorOp{ket_proj(1, 2)});
}

TEST_CASE("positive_part_projector") {
  Mat a = Mat::Zero(2, 2), b = Mat::Identity(2, 2);
  a(0, 0) = 2.0;
  const Mat p = positive_part_projector(HermOp(a), HermOp(b)).mat();
  CHECK(max_abs(p - ket_proj(0, 2)) < 1e-12);

  // A = B: zero eigenvalues count as nonnegative.
  const Mat q = positive_part_projector(HermOp(b), HermOp(b)).mat();
  CHECK(max_abs(q - Mat::Identity(2, 2)) < 1e-12);

  // tr[P (A - B)] attains the maximum over all eigenprojector subsets.
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Mat ra = random_hermitian(3, rng);
    const Mat rb = random_hermitian(3, rng);
    const Mat pp = positive_part_projector(HermOp(ra), HermOp(rb)).mat();
    const double got = (pp * (ra - rb)).trace().real();
    const double best = oracle::best_subset_projection(ra, rb);
    CHECK(got == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("positive parts of (A,B) and (B,A) are complementary") {
  Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 3;
    const Mat a = random_hermitian(d, rng);
    const Mat b = random_hermitian(d, rng);
    const Mat p = positive_part_projector(HermOp(a), HermOp(b)).mat();
    const Mat q = positive_part_projector(HermOp(b), HermOp(a)).mat();
    CHECK(min_eig(Mat::Identity(d, d) - p - q) >= -1e-9);
    // Generic difference is nonsingular, so the parts tile the space.
    CHECK(max_abs(p + q - Mat::Identity(d, d)) < 1e-7);
  }
}

TEST_CASE("trace_norm") {
  const Mat z = Mat::Zero(3, 3);
  CHECK(trace_norm(z) == 0.0);
  CHECK(trace_norm(Mat(ket_proj(0, 2) - ket_proj(1, 2))) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // |0><0| - |+><+| has eigenvalues +-1/sqrt(2).
  CHECK(trace_norm(Mat(ket_proj(0, 2) - plus_proj())) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  Rng rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    const Mat a = random_hermitian(3, rng);
    const Mat b = random_hermitian(3, rng);
    CHECK(trace_norm(Mat(a + b)) <= trace_norm(a) + trace_norm(b) + 1e-9);
  }
}

TEST_CASE("partial_trace") {
  Rng rng(14);
  const Mat rho = random_density(2, rng);
  const Mat sig = random_density(3, rng);
  const Mat prod = kron(rho, sig);
  CHECK(max_abs(partial_trace(HermOp(prod), {2, 3}, {0}).mat() - rho) < 1e-12);
  CHECK(max_abs(partial_trace(HermOp(prod), {2, 3}, {1}).mat() - sig) < 1e-12);

  const Mat all = partial_trace(HermOp(prod), {2, 3}, {}).mat();
  CHECK(all.rows() == 1);
  CHECK(std::abs(all(0, 0).real() - 1.0) < 1e-12);

  // Bell state: both marginals are maximally mixed.
  CVec bell = CVec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const Mat bellp = bell * bell.adjoint();
  CHECK(max_abs(partial_trace(HermOp(bellp), {2, 2}, {0}).mat() -
                0.5 * Mat::Identity(2, 2)) < 1e-12);

  CHECK_THROWS_AS(partial_trace(HermOp(prod), {2, 2}, {0}),
                  std::invalid_argument);
}

TEST_CASE("frac_power") {
  const Mat i3 = Mat::Identity(3, 3);
  CHECK(max_abs(frac_power(HermOp(i3), -0.7).mat() - i3) < 1e-12);

  Mat d40 = Mat::Zero(2, 2);
  d40(0, 0) = 4.0;
  Mat d20 = Mat::Zero(2, 2);
  d20(0, 0) = 2.0;
  CHECK(max_abs(frac_power(HermOp(d40), 0.5).mat() - d20) < 1e-12);

  Rng rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    const Mat rho = random_density(3, rng);
    const double t = 0.1 + 0.8 * rng.uniform();
    const Mat recomposed = frac_power(HermOp(rho), t).mat() *
                           frac_power(HermOp(rho), 1.0 - t).mat();
    CHECK(max_abs(recomposed - rho) < 1e-10);
  }
}

TEST_CASE("psd_leq") {
  const Mat z = Mat::Zero(2, 2), i2 = Mat::Identity(2, 2);
  CHECK(psd_leq(HermOp(z), HermOp(i2), 1e-10));
  CHECK_FALSE(psd_leq(HermOp(Mat(2.0 * i2)), HermOp(i2), 1e-10));
}

TEST_CASE("pinv_sqrt") {
  const Mat i3 = Mat::Identity(3, 3);
  CHECK(max_abs(pinv_sqrt(HermOp(i3)).mat() - i3) < 1e-12);

  Mat d40 = Mat::Zero(2, 2);
  d40(0, 0) = 4.0;
  Mat dhalf = Mat::Zero(2, 2);
  dhalf(0, 0) = 0.5;
  CHECK(max_abs(pinv_sqrt(HermOp(d40)).mat() - dhalf) < 1e-12);

  // Projectors are their own pseudo-inverse square root.
  Mat p = Mat::Zero(3, 3);
  p(0, 0) = p(2, 2) = 1.0;
  CHECK(max_abs(pinv_sqrt(HermOp(p)).mat() - p) < 1e-12);

  // B A B = projector onto supp(A).
  Rng rng(16);
  const Mat a = random_psd(3, 1.7, rng);
  const Mat b = pinv_sqrt(HermOp(a)).mat();
  const Mat bab = b * a * b;
  CHECK(max_abs(bab * bab - bab) < 1e-9);
}

TEST_CASE("eigendecomposition reconstructs input") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 4;
    const Mat a = random_hermitian(d, rng);
    EigH e = eigh(a);
    const Mat back =
        e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
    CHECK(max_abs(back - a) < 1e-10);
  }
}

TEST_CASE("permutation_unitary") {
  // Identity permutation.
  CHECK(max_abs(permutation_unitary(perm_identity(2), 2) -
                Mat::Identity(4, 4)) == 0.0);

  // n=2 swap gives the 4x4 SWAP matrix.
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  CHECK(max_abs(permutation_unitary({1, 0}, 2) - swap) == 0.0);

  // Composition: U_s U_s' = U_{s o s'}.
  Rng rng(18);
  for (int rep = 0; rep < 10; ++rep) {
    Perm a = perm_identity(3), b = perm_identity(3);
    for (int i = 2; i > 0; --i) {
      std::swap(a[i], a[rng.uniform_int(0, i)]);
      std::swap(b[i], b[rng.uniform_int(0, i)]);
    }
    const Mat ua = permutation_unitary(a, 2);
    const Mat ub = permutation_unitary(b, 2);
    const Mat uab = permutation_unitary(perm_compose(a, b), 2);
    CHECK(max_abs(ua * ub - uab) == 0.0);
    // Unitarity.
    CHECK(max_abs(ua * ua.adjoint() - Mat::Identity(8, 8)) == 0.0);
  }
}

TEST_CASE("conj_by_permutation matches explicit conjugation") {
  Rng rng(19);
  for (int rep = 0; rep < 5; ++rep) {
    Perm s = perm_identity(3);
    for (int i = 2; i > 0; --i) std::swap(s[i], s[rng.uniform_int(0, i)]);
    const Mat a = random_hermitian(8, rng);
    const Mat u = permutation_unitary(s, 2);
    CHECK(max_abs(conj_by_permutation(a, s, 2, 3) - u * a * u.adjoint()) <
          1e-12);
  }
}

TEST_CASE("threshold-trace bound (states vs PSD operators)") {
  Rng rng(20);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 3;
    const Mat rho = random_density(d, rng);
    const Mat om = random_psd(d, 0.4 + rng.uniform(), rng);
    for (double g : {-2.0, 0.0, 2.0}) {
      const Mat proj =
          positive_part_projector(HermOp(rho),
                                  HermOp(Mat(std::pow(2.0, -g) * om)))
              .mat();
      CHECK((proj * om).trace().real() <= std::pow(2.0, g) + 1e-9);
    }
  }
}

TEST_CASE("gentle measurement") {
  Rng rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 3;
    const Mat rho = random_density(d, rng);
    Mat lam = 0.5 * (random_contraction(d, rng) + Mat::Identity(d, d));
    lam = 0.5 * (lam + lam.adjoint());
    const double dl = std::max(0.0, 1.0 - (rho * lam).trace().real());
    const Mat root = frac_power(HermOp(lam), 0.5).mat();
    CHECK(trace_norm(Mat(rho - root * rho * root)) <=
          2.0 * std::sqrt(dl) + 1e-9);
  }
}

TEST_CASE("square-root-inverse sandwich inequality") {
  Rng rng(22);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 3;
    const Mat s = random_contraction(d, rng);
    const Mat t = random_psd(d, 1.2 * rng.uniform() + 1e-3, rng);
    const Mat root = pinv_sqrt(HermOp(Mat(s + t))).mat();
    const Mat id = Mat::Identity(d, d);
    Mat lhs = id - root * s * root;
    lhs = 0.5 * (lhs + lhs.adjoint());
    CHECK(min_eig(Mat(2.0 * (id - s) + 4.0 * t - lhs)) >= -1e-9);
  }
}

TEST_CASE("max trace against fractional state powers") {
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 2;
    const double t = 0.15 + 0.7 * rng.uniform();
    const Mat a = random_psd(d, 1.0 + rng.uniform(), rng);
    const double rhs = std::pow(
        frac_power(HermOp(a), 1.0 / (1.0 - t)).mat().trace().real(), 1.0 - t);
    Mat opt = frac_power(HermOp(a), 1.0 / (1.0 - t)).mat();
    opt /= opt.trace().real();
    const double at_opt =
        (a * frac_power(HermOp(opt), t).mat()).trace().real();
    CHECK(at_opt == doctest::Approx(rhs).epsilon(1e-9));
    for (int probe = 0; probe < 4; ++probe) {
      const Mat sig = random_density(d, rng);
      CHECK((a * frac_power(HermOp(sig), t).mat()).trace().real() <=
            rhs + 1e-9);
    }
  }
}
