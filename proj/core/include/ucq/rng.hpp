#pragma once

#include "ucq/qmat.hpp"

#include <cstdint>
#include <random>

namespace ucq {

/// SplitMix64 step; also the basis of counter-derived stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for stream `index` of a master seed. Monte Carlo trials use
/// derive_seed(seed, trial + 1); stream 0 is reserved for the shared
/// symmetric-operator constructions so that all trials of one experiment
/// reuse one cache.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic generator wrapper. Instances are cheap; create one per
/// trial/stream and never share across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();                 // [0, 1)
  double normal();                  // standard normal
  int uniform_int(int lo, int hi);  // inclusive bounds
  std::uint64_t raw();

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase
/// convention that makes R's diagonal positive.
Mat haar_unitary(int d, Rng& rng);

Mat random_complex_gaussian(int d, Rng& rng);
/// Hilbert-Schmidt random density matrix G G^dag / tr.
Mat random_density(int d, Rng& rng);
Mat random_hermitian(int d, Rng& rng);
/// Random PSD operator G G^dag scaled so the largest eigenvalue is `top`.
Mat random_psd(int d, double top, Rng& rng);
/// Random operator with eigenvalues uniform in [0, 1] (so 0 <= A <= I).
Mat random_contraction(int d, Rng& rng);

}  // namespace ucq
