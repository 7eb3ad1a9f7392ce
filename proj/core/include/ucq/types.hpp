#pragma once

#include "ucq/qmat.hpp"
#include "ucq/rng.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace ucq {

struct Alphabet {
  int k = 1;  // letters are 0..k-1, ordered
};

/// A type (empirical count vector) of length-n sequences over k letters.
struct TypeVec {
  std::vector<int> counts;
  int n = 0;

  int k() const { return static_cast<int>(counts.size()); }
  bool operator==(const TypeVec& o) const = default;
};

/// Probability distribution on an alphabet; entries >= 0, sum 1 within 1e-12.
class InputDist {
 public:
  explicit InputDist(std::vector<double> p);
  const std::vector<double>& p() const { return p_; }
  int k() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// All compositions of n into k nonnegative parts, lexicographic by counts.
std::vector<TypeVec> enumerate_types(int n, int k);

TypeVec type_of(const Seq& x, int k);
/// |T(q)| = n! / prod(q_i!), as a double (exact at these block lengths).
double type_class_size(const TypeVec& q);

/// Lazy lexicographic iteration over the sequences of type q.
class TypeClassRange {
 public:
  explicit TypeClassRange(TypeVec q);

  class iterator {
   public:
    using value_type = Seq;
    iterator() : done_(true) {}
    explicit iterator(Seq first) : cur_(std::move(first)), done_(false) {}
    const Seq& operator*() const { return cur_; }
    iterator& operator++();
    bool operator!=(const iterator& o) const { return done_ != o.done_; }

   private:
    Seq cur_;
    bool done_;
  };

  iterator begin() const;
  iterator end() const { return iterator(); }

 private:
  TypeVec q_;
};

/// Materialized type class (guarded; use TypeClassRange above ~10^6 members).
std::vector<Seq> type_class(const TypeVec& q);

double shannon_entropy(const std::vector<double>& p);  // bits
double type_entropy(const TypeVec& q);                 // H(q/n) in bits
/// Product probability of a sequence under p.
double seq_prob(const InputDist& p, const Seq& x);

/// zeta_n(k) = (k/n) log2(n+1).
double zeta(int n, int k);

struct TypicalSet {
  std::vector<TypeVec> types;  // typical types, lexicographic
  std::vector<Seq> sequences;  // lexicographic by type then within class
  double Q_n = 0.0;            // total p^n-probability of the set
};

/// Delta-typical set: all x^n with |N(a|x^n)/n - p_a| <= p_a * delta for
/// every letter; letters with p_a = 0 never appear. Sequences are
/// materialized unless `materialize` is false (Q_n and types still exact).
TypicalSet typical_set(const InputDist& p, int n, double delta,
                       bool materialize = true);

/// Samples sequences with probability p^n_{x^n} / Q_n on the typical set
/// (zero outside), exactly: type by exact weight, then a uniform arrangement.
class ConditionalSampler {
 public:
  ConditionalSampler(const InputDist& p, int n, double delta,
                     std::uint64_t seed);
  Seq operator()();
  double Qn() const { return qn_; }
  const std::vector<TypeVec>& types() const { return types_; }

 private:
  std::vector<TypeVec> types_;
  std::vector<double> cum_;  // cumulative type weights, normalized
  double qn_;
  int n_;
  Rng rng_;
};

/// Ordered representative: x_o^n sorted ascending plus the permutation s
/// with x^n = s x_o^n (stable tie-breaking), i.e. x_i = (x_o)_{s^-1(i)}.
std::pair<Seq, Perm> ordered_rep(const Seq& x);

}  // namespace ucq
