#include "ucq/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ucq {

InputDist::InputDist(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("InputDist: empty distribution");
  double sum = 0.0;
  for (double v : p_) {
    if (v < 0.0) throw std::invalid_argument("InputDist: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("InputDist: probabilities do not sum to 1");
}

std::vector<TypeVec> enumerate_types(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("enumerate_types: n, k >= 1");
  std::vector<TypeVec> out;
  std::vector<int> cur(k, 0);
  // Recursive composition enumeration, lexicographic in counts.
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      cur[pos] = left;
      out.push_back(TypeVec{cur, n});
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cur[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, n);
  return out;
}

TypeVec type_of(const Seq& x, int k) {
  TypeVec q{std::vector<int>(k, 0), static_cast<int>(x.size())};
  for (int v : x) {
    if (v < 0 || v >= k) throw std::invalid_argument("type_of: letter out of range");
    ++q.counts[v];
  }
  return q;
}

double type_class_size(const TypeVec& q) {
  double v = std::lgamma(q.n + 1.0);
  for (int c : q.counts) v -= std::lgamma(c + 1.0);
  return std::round(std::exp(v));
}

static Seq ordered_seq_of_type(const TypeVec& q) {
  Seq x;
  x.reserve(q.n);
  for (int a = 0; a < q.k(); ++a)
    for (int c = 0; c < q.counts[a]; ++c) x.push_back(a);
  return x;
}

TypeClassRange::TypeClassRange(TypeVec q) : q_(std::move(q)) {
  int sum = std::accumulate(q_.counts.begin(), q_.counts.end(), 0);
  if (sum != q_.n) throw std::invalid_argument("TypeClassRange: counts do not sum to n");
}

TypeClassRange::iterator& TypeClassRange::iterator::operator++() {
  if (!std::next_permutation(cur_.begin(), cur_.end())) done_ = true;
  return *this;
}

TypeClassRange::iterator TypeClassRange::begin() const {
  return iterator(ordered_seq_of_type(q_));
}

std::vector<Seq> type_class(const TypeVec& q) {
  if (type_class_size(q) > 1e6)
    throw std::invalid_argument("type_class: class too large to materialize");
  std::vector<Seq> out;
  for (const Seq& x : TypeClassRange(q)) out.push_back(x);
  return out;
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double type_entropy(const TypeVec& q) {
  std::vector<double> p(q.counts.size());
  for (size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(q.counts[i]) / q.n;
  return shannon_entropy(p);
}

double seq_prob(const InputDist& p, const Seq& x) {
  double v = 1.0;
  for (int a : x) v *= p[a];
  return v;
}

double zeta(int n, int k) {
  if (n < 1) throw std::invalid_argument("zeta: n >= 1");
  return (static_cast<double>(k) / n) * std::log2(n + 1.0);
}

static bool type_is_typical(const TypeVec& q, const InputDist& p, double delta) {
  for (int a = 0; a < q.k(); ++a) {
    const double qa = static_cast<double>(q.counts[a]) / q.n;
    if (p[a] == 0.0) {
      if (q.counts[a] != 0) return false;
    } else if (std::abs(qa - p[a]) > p[a] * delta + 1e-15) {
      return false;
    }
  }
  return true;
}

static double type_weight(const TypeVec& q, const InputDist& p) {
  // |T(q)| * prod_a p_a^{q_a}, with 0^0 = 1, in log space for safety.
  double lg = std::lgamma(q.n + 1.0);
  for (int a = 0; a < q.k(); ++a) {
    lg -= std::lgamma(q.counts[a] + 1.0);
    if (q.counts[a] > 0) {
      if (p[a] == 0.0) return 0.0;
      lg += q.counts[a] * std::log(p[a]);
    }
  }
  return std::exp(lg);
}

TypicalSet typical_set(const InputDist& p, int n, double delta, bool materialize) {
  if (delta <= 0.0) throw std::invalid_argument("typical_set: delta > 0 required");
  TypicalSet out;
  for (const TypeVec& q : enumerate_types(n, p.k())) {
    if (!type_is_typical(q, p, delta)) continue;
    out.types.push_back(q);
    out.Q_n += type_weight(q, p);
    if (materialize)
      for (const Seq& x : TypeClassRange(q)) out.sequences.push_back(x);
  }
  return out;
}

ConditionalSampler::ConditionalSampler(const InputDist& p, int n, double delta,
                                       std::uint64_t seed)
    : n_(n), rng_(seed) {
  TypicalSet ts = typical_set(p, n, delta, /*materialize=*/false);
  if (ts.types.empty() || ts.Q_n <= 0.0)
    throw std::runtime_error("ConditionalSampler: empty typical set");
  types_ = std::move(ts.types);
  qn_ = ts.Q_n;
  cum_.reserve(types_.size());
  double acc = 0.0;
  for (const TypeVec& q : types_) {
    acc += type_weight(q, p) / qn_;
    cum_.push_back(acc);
  }
  cum_.back() = 1.0;
}

Seq ConditionalSampler::operator()() {
  const double u = rng_.uniform();
  size_t idx = std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin();
  if (idx >= types_.size()) idx = types_.size() - 1;
  Seq x = ordered_seq_of_type(types_[idx]);
  // Fisher-Yates gives a uniformly random arrangement of the multiset.
  for (int i = n_ - 1; i > 0; --i) {
    int j = rng_.uniform_int(0, i);
    std::swap(x[i], x[j]);
  }
  return x;
}

std::pair<Seq, Perm> ordered_rep(const Seq& x) {
  const int n = static_cast<int>(x.size());
  Seq xo = x;
  std::stable_sort(xo.begin(), xo.end());
  // Stable assignment: the i-th occurrence of letter a in x maps back to the
  // i-th slot of letter a in xo.
  int maxletter = 0;
  for (int v : x) maxletter = std::max(maxletter, v);
  std::vector<int> offset(maxletter + 2, 0);
  for (int v : x) ++offset[v + 1];
  for (int a = 1; a <= maxletter + 1; ++a) offset[a] += offset[a - 1];
  std::vector<int> seen(maxletter + 1, 0);
  Perm sinv(n);
  for (int i = 0; i < n; ++i) {
    const int a = x[i];
    sinv[i] = offset[a] + seen[a]++;
  }
  return {xo, perm_inverse(sinv)};
}

}  // namespace ucq
