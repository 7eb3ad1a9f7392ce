#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ucq/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace ucq;

TEST_CASE("enumerate_types counts") {
  CHECK(enumerate_types(2, 2).size() == 3);
  CHECK(enumerate_types(1, 3).size() == 3);
  const auto t42 = enumerate_types(4, 2);
  CHECK(t42.size() == 5);
  CHECK(t42.size() <= 25);  // (n+1)^k
  for (const TypeVec& q : t42)
    CHECK(q.counts[0] + q.counts[1] == 4);
}

TEST_CASE("type_class enumerates the right sequences") {
  const auto c11 = type_class(TypeVec{{1, 1}, 2});
  CHECK(c11 == std::vector<Seq>{{0, 1}, {1, 0}});

  const auto c20 = type_class(TypeVec{{2, 0}, 2});
  CHECK(c20 == std::vector<Seq>{{0, 0}});

  const TypeVec q22{{2, 2}, 4};
  const auto c22 = type_class(q22);
  CHECK(c22.size() == 6);
  CHECK(type_class_size(q22) == 6.0);
  // 2^{n[H(q) - zeta_n(k)]} <= |T(q)| <= 2^{n H(q)}.
  const double h = type_entropy(q22);
  CHECK(std::pow(2.0, 4 * (h - zeta(4, 2))) <= 6.0 + 1e-12);
  CHECK(6.0 <= std::pow(2.0, 4 * h) + 1e-12);
}

TEST_CASE("type classes partition the sequence space") {
  for (int k : {2, 3}) {
    for (int n : {3, 5}) {
      double total = 0;
      std::set<Seq> seen;
      for (const TypeVec& q : enumerate_types(n, k)) {
        for (const Seq& x : TypeClassRange(q)) {
          CHECK(seen.insert(x).second);
          CHECK(type_of(x, k) == q);
        }
        total += type_class_size(q);
      }
      CHECK(total == std::pow(k, n));
      CHECK(seen.size() == static_cast<size_t>(std::pow(k, n)));
    }
  }
}

TEST_CASE("typical_set exhaustive oracle at n=4") {
  InputDist p({0.5, 0.5});
  TypicalSet ts = typical_set(p, 4, 0.5);
  // Brute force over all 16 sequences.
  std::set<Seq> expect;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          Seq x{a, b, c, d};
          int ones = a + b + c + d;
          const double f1 = (4 - ones) / 4.0, f2 = ones / 4.0;
          if (std::abs(f1 - 0.5) <= 0.25 && std::abs(f2 - 0.5) <= 0.25)
            expect.insert(x);
        }
  CHECK(expect.size() == 14);
  CHECK(ts.sequences.size() == 14);
  for (const Seq& x : ts.sequences) CHECK(expect.count(x) == 1);
  CHECK(ts.Q_n == doctest::Approx(14.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("typical_set edge cases") {
  // Vacuous constraint: full sequence space.
  InputDist p({0.25, 0.75});
  const double dmax = (1.0 - 0.25) / 0.25;  // max_i (1-p_i)/p_i
  TypicalSet full = typical_set(p, 3, dmax + 1e-9);
  CHECK(full.sequences.size() == 8);
  CHECK(full.Q_n == doctest::Approx(1.0).epsilon(1e-12));

  // Degenerate distribution: the single all-0 sequence, zero-prob letters
  // never appear.
  InputDist deg({1.0, 0.0});
  TypicalSet one = typical_set(deg, 5, 0.3);
  CHECK(one.sequences.size() == 1);
  CHECK(one.sequences[0] == Seq{0, 0, 0, 0, 0});
  CHECK(one.Q_n == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("typical sequences obey the probability window") {
  InputDist p({0.3, 0.7});
  const int n = 6;
  const double delta = 0.4;
  const double c = shannon_entropy(p.p());
  const double h = c;
  TypicalSet ts = typical_set(p, n, delta);
  CHECK(ts.sequences.size() <= std::pow(2.0, n * (h + c * delta)) + 1e-9);
  for (const Seq& x : ts.sequences) {
    const double px = seq_prob(p, x);
    CHECK(px >= std::pow(2.0, -n * (h + c * delta)) - 1e-15);
    CHECK(px <= std::pow(2.0, -n * (h - c * delta)) + 1e-15);
  }
}

TEST_CASE("conditional sampler: degenerate distribution") {
  ConditionalSampler draw(InputDist({1.0, 0.0}), 4, 0.5, 99);
  for (int i = 0; i < 10; ++i) CHECK(draw() == Seq{0, 0, 0, 0});
}

TEST_CASE("conditional sampler matches the exact law") {
  InputDist p({0.5, 0.5});
  const int n = 4;
  ConditionalSampler draw(p, n, 0.5, 4242);
  TypicalSet ts = typical_set(p, n, 0.5);
  std::map<Seq, long long> counts;
  const long long reps = 100000;
  for (long long i = 0; i < reps; ++i) ++counts[draw()];
  long long total = 0;
  for (const Seq& x : ts.sequences) {
    const double expect = seq_prob(p, x) / ts.Q_n;  // = 1/14 here
    const long long c = counts[x];
    total += c;
    const double se = std::sqrt(expect * (1 - expect) * reps);
    CHECK(std::abs(c - expect * reps) <= 3.0 * se + 1.0);
  }
  CHECK(total == reps);  // nothing outside the typical set
}

TEST_CASE("sampler law vs product law: total variation") {
  InputDist p({0.5, 0.5});
  for (int n : {3, 5}) {
    TypicalSet ts = typical_set(p, n, 0.4);
    const double eps = 1.0 - ts.Q_n;
    double tv = 0.0;
    std::set<Seq> typ(ts.sequences.begin(), ts.sequences.end());
    for (const TypeVec& q : enumerate_types(n, 2))
      for (const Seq& x : TypeClassRange(q)) {
        const double px = seq_prob(p, x);
        const double qx = typ.count(x) ? px / ts.Q_n : 0.0;
        tv += std::abs(px - qx);
      }
    CHECK(tv <= 2.0 * eps + 1e-12);
  }
}

TEST_CASE("ordered_rep") {
  // Already sorted: identity permutation.
  auto [xo1, s1] = ordered_rep(Seq{0, 0, 1, 2});
  CHECK(xo1 == Seq{0, 0, 1, 2});
  CHECK(s1 == perm_identity(4));

  // (1,0) -> ordered (0,1) with the swap.
  auto [xo2, s2] = ordered_rep(Seq{1, 0});
  CHECK(xo2 == Seq{0, 1});
  CHECK(s2 == Perm{1, 0});

  // Recomposition: x_i = xo_{s^-1(i)}.
  Rng rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    Seq x(6);
    for (int i = 0; i < 6; ++i) x[i] = rng.uniform_int(0, 2);
    auto [xo, s] = ordered_rep(x);
    CHECK(std::is_sorted(xo.begin(), xo.end()));
    const Perm sinv = perm_inverse(s);
    for (int i = 0; i < 6; ++i) CHECK(x[i] == xo[sinv[i]]);
  }
}

TEST_CASE("zeta values") {
  CHECK(zeta(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zeta(3, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  // (2/100) log2(101), frozen from the definition.
  CHECK(zeta(100, 2) == doctest::Approx(0.13316425619395).epsilon(1e-12));
  // Decreasing in n at fixed k (beyond small n), vanishing tail.
  CHECK(zeta(50, 3) > zeta(100, 3));
  CHECK(zeta(100000, 4) < 1e-3);
}

TEST_CASE("empty typical set reports") {
  // p extremely skewed and delta tiny: no integer count satisfies the
  // window at n=3 (needs |q - 0.9| <= 0.0009 with q in {0,1/3,2/3,1}).
  CHECK_THROWS_AS(ConditionalSampler(InputDist({0.9, 0.1}), 3, 0.001, 1),
                  std::runtime_error);
}
