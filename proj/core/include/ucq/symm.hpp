#pragma once

#include "ucq/qmat.hpp"
#include "ucq/types.hpp"

#include <cstdint>

namespace ucq {

/// Projector I_q onto the span of computational-basis sequences of type q.
struct TypeProjector {
  TypeVec q;
  ProjectorOp proj;
};

/// Projector onto span{ U^{(x)n} |y^n> : U in U(d), y^n of type q }, the
/// basis-free enlargement of the type subspace, plus its numerical rank.
struct InvariantProjector {
  TypeVec q;
  ProjectorOp proj;
  long long rank;
};

/// Permutation- and basis-invariant state tau_n on (C^d)^{(x)n}.
struct UniversalState {
  int n;
  DensityOp op;
};

TypeProjector projector_Iq(const TypeVec& q, int d);

/// Rank-saturation construction: accumulate orbit vectors U^{(x)n}|y^n> for
/// Haar-random U through modified Gram-Schmidt (tolerance 1e-9), stopping
/// after 3 consecutive unitaries add no rank (cap 200; throws on cap).
/// Results are memoized per (d, q, seed) for the lifetime of the process.
InvariantProjector projector_tildeIq(const TypeVec& q, int d, std::uint64_t seed);

/// Maximally mixed state on the invariant subspace of type q.
DensityOp tau_q(const TypeVec& q, int d, std::uint64_t seed);

/// tau_n = (1/|P^n|) sum_q tau_q, the uniform mixture over all types.
UniversalState tau_n(int n, int d, std::uint64_t seed);

/// omega_{x^n}: tau-blocks per letter of the ordered representative,
/// conjugated back by the ordering permutation. Depends only on x^n, d.
DensityOp omega(const Seq& x, int d, std::uint64_t seed);

/// Delta-typical projector of sigma^{(x)n} in sigma's eigenbasis.
ProjectorOp typical_projector(const DensityOp& sigma, int n, double delta);

/// min-eig[(n+1)^{d^2+d} tau_n - sigma^{(x)n}]; nonnegative up to tolerance
/// for every state sigma.
double lemma1_gap(const DensityOp& sigma, int n, std::uint64_t seed);

/// Drops all memoized invariant projectors (mainly for tests/benchmarks).
void clear_symm_cache();

}  // namespace ucq
