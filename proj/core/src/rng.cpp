#include "ucq/rng.hpp"

#include <cmath>

namespace ucq {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t base = splitmix64(s);
  s = base ^ (index * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
  return splitmix64(s);
}

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

double Rng::uniform() { return unif_(gen_); }
double Rng::normal() { return normal_(gen_); }

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(gen_);
}

std::uint64_t Rng::raw() { return gen_(); }

Mat random_complex_gaussian(int d, Rng& rng) {
  Mat g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  return g;
}

Mat haar_unitary(int d, Rng& rng) {
  Mat g = random_complex_gaussian(d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    double a = std::abs(rjj);
    Complex phase = (a > 0) ? rjj / a : Complex(1, 0);
    q.col(j) *= phase;
  }
  return q;
}

Mat random_density(int d, Rng& rng) {
  Mat g = random_complex_gaussian(d, rng);
  Mat m = g * g.adjoint();
  m /= m.trace().real();
  return 0.5 * (m + m.adjoint());
}

Mat random_hermitian(int d, Rng& rng) {
  Mat g = random_complex_gaussian(d, rng);
  return 0.5 * (g + g.adjoint());
}

Mat random_psd(int d, double top, Rng& rng) {
  Mat g = random_complex_gaussian(d, rng);
  Mat m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint());
  double vmax = min_eig(-m);  // -lambda_min(-m) = lambda_max(m)
  vmax = -vmax;
  if (vmax > 0) m *= top / vmax;
  return m;
}

Mat random_contraction(int d, Rng& rng) {
  Mat u = haar_unitary(d, rng);
  RVec vals(d);
  for (int i = 0; i < d; ++i) vals(i) = rng.uniform();
  Mat m = u * vals.asDiagonal() * u.adjoint();
  return 0.5 * (m + m.adjoint());
}

}  // namespace ucq
