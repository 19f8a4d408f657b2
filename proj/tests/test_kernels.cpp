#include "walsh/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "oracles.hpp"
#include "walsh/transform.hpp"

using namespace walsh;

TEST_SUITE("kernels") {

TEST_CASE("Dirichlet kernel against direct summation, both orderings") {
  const int M = 6;
  for (System sys : {System::paley, System::kaczmarz})
    for (std::uint64_t n = 0; n <= 64; ++n) {
      const std::vector<std::int64_t> s = dirichlet_scaled(sys, n, M);
      const GridFn<Rat> ref = testref::dirichlet_direct(sys, n, M);
      for (Cell u = 0; u < ref.size(); ++u) CHECK(Rat(s[u]) == ref[u]);
    }
}

TEST_CASE("block Dirichlet kernel is the blown-up interval indicator") {
  const int M = 7;
  for (System sys : {System::paley, System::kaczmarz})
    for (int k = 0; k <= 6; ++k) {
      const GridFn<Rat> d = dirichlet<Rat>(sys, std::uint64_t{1} << k, M);
      const PatternSet in = PatternSet::dyadic_interval(M, k);
      for (Cell u = 0; u < d.size(); ++u)
        CHECK(d[u] == (in.contains(u) ? Rat(std::uint64_t{1} << k) : Rat(0)));
    }
}

TEST_CASE("rearranged Dirichlet kernel splits through the reversal") {
  const int M = 6;
  for (std::uint64_t n : {2u, 3u, 5u, 11u, 21u, 40u, 63u}) {
    const auto [head, rest] = dirichlet_kaczmarz_split(n, M);
    CHECK(exact_equal(head + rest, dirichlet<Rat>(System::kaczmarz, n, M)));
    CHECK(exact_equal(head, dirichlet<Rat>(System::paley,
                                           std::uint64_t{1} << msb(n), M)));
  }
}

TEST_CASE("Fejer kernel against the direct average, all small n") {
  const int M = 5;
  for (System sys : {System::paley, System::kaczmarz})
    for (Convention conv : {Convention::zero_based, Convention::one_based})
      for (std::uint64_t n = 1; n <= 32; ++n) {
        const FejerKernel K = fejer(sys, n, M, conv);
        const GridFn<Rat> ref = testref::fejer_direct(sys, n, M, conv);
        for (Cell u = 0; u < ref.size(); ++u) {
          CHECK(K.value(u) == ref[u]);
          CHECK(Rat(K.scaled[u]) == Rat(n) * ref[u]);  // exact integer scaling
        }
      }
}

TEST_CASE("Fejer kernel pinned values and integral") {
  const FejerKernel K4 = fejer(System::paley, 4, 3, Convention::zero_based);
  CHECK(K4.value(0) == Rat(3, 2));

  for (std::uint64_t n : {1u, 2u, 7u, 16u}) {
    const FejerKernel zb = fejer(System::kaczmarz, n, 5, Convention::zero_based);
    const FejerKernel ob = fejer(System::kaczmarz, n, 5, Convention::one_based);
    CHECK(zb.integral() == Rat(n - 1, n));
    CHECK(ob.integral() == Rat(1));
    CHECK(zb.grid<Rat>().integrate() == zb.integral());
    CHECK(ob.grid<Rat>().integrate() == ob.integral());
  }
}

TEST_CASE("conventions differ by exactly D_n/n") {
  const int M = 5;
  for (System sys : {System::paley, System::kaczmarz})
    for (std::uint64_t n = 1; n <= 20; ++n) {
      const GridFn<Rat> zb = fejer(sys, n, M, Convention::zero_based).grid<Rat>();
      const GridFn<Rat> ob = fejer(sys, n, M, Convention::one_based).grid<Rat>();
      Rat inv(1, n);
      inv.canonicalize();
      CHECK(exact_equal(ob - zb, inv * dirichlet<Rat>(sys, n, M)));
    }
}

TEST_CASE("kernel argument validation") {
  CHECK_THROWS_AS(fejer(System::paley, 0, 4, Convention::zero_based),
                  ParameterError);
  CHECK_THROWS_AS(fejer(System::paley, 17, 4, Convention::zero_based),
                  ResolutionError);
  CHECK_NOTHROW(fejer(System::paley, 16, 4, Convention::zero_based));
}

TEST_CASE("piecewise closed form of the block kernel, exhaustive") {
  const int M = 6;
  for (Convention conv : {Convention::zero_based, Convention::one_based})
    for (int A = 0; A <= 5; ++A) {
      const FejerKernel K = fejer(System::paley, std::uint64_t{1} << A, M, conv);
      for (Cell z = 0; z < K.scaled.size(); ++z)
        CHECK(K.value(z) == fejer_closed_2pow_paley(A, z, M, conv));
    }
}

TEST_CASE("kernel decomposition identity (spot checks)") {
  const int M = 7;
  for (std::uint64_t n : {1u, 5u, 21u, 37u, 64u, 100u}) {
    const KernelDecomposition ob = skvortsov_terms(n, M, Convention::one_based);
    const FejerKernel K = fejer(System::kaczmarz, n, M, Convention::one_based);
    for (Cell u = 0; u < K.scaled.size(); ++u)
      CHECK(ob.total()[u] == Rat(K.scaled[u]));

    const KernelDecomposition zb = skvortsov_terms(n, M, Convention::zero_based);
    const FejerKernel Kz = fejer(System::kaczmarz, n, M, Convention::zero_based);
    for (Cell u = 0; u < Kz.scaled.size(); ++u)
      CHECK(zb.total()[u] == Rat(Kz.scaled[u]) + 1);  // constant residual
  }
  // at n = 2^A the tail term vanishes identically
  const KernelDecomposition pow = skvortsov_terms(64, M, Convention::one_based);
  for (Cell u = 0; u < pow.tail.size(); ++u) CHECK(pow.tail[u] == 0);
}

TEST_CASE("weighted components sum to the weighted scaled kernel") {
  const int M = 6;
  const double p = 0.25;
  for (std::uint64_t n : {3u, 21u, 40u}) {
    const WeightedComponents wc = weighted_components(n, p, M, Convention::one_based);
    const FejerKernel K = fejer(System::kaczmarz, n, M, Convention::one_based);
    const double w = std::pow(static_cast<double>(n) + 1.0, -(1.0 / p - 1.0));
    for (Cell u = 0; u < K.scaled.size(); ++u)
      CHECK(wc.L1[u] + wc.L2[u] + wc.L3[u] ==
            doctest::Approx(w * static_cast<double>(K.scaled[u])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(weighted_components(3, 0.5, M, Convention::one_based),
                  ParameterError);
}

TEST_CASE("base-4 repunit sequence") {
  CHECK(q_seq(0) == 1);
  CHECK(q_seq(1) == 5);
  CHECK(q_seq(2) == 21);
  CHECK(q_seq(3) == 85);
  CHECK(q_seq(4) == 341);
  CHECK(q_seq(5) == 1365);
  for (int A = 1; A <= 30; ++A) CHECK(q_seq(A) == 4 * q_seq(A - 1) + 1);
  CHECK_THROWS_AS(q_seq(-1), ParameterError);
  CHECK_THROWS_AS(q_seq(31), ParameterError);
}

TEST_CASE("kernel L1 norm: exact value and reversal invariance") {
  const int M = 7;
  for (std::uint64_t n : {1u, 2u, 6u, 21u, 37u, 100u}) {
    for (Convention conv : {Convention::zero_based, Convention::one_based}) {
      const Rat norm = kernel_l1_norm_exact(System::paley, n, M, conv);
      const FejerKernel K = fejer(System::paley, n, M, conv);
      CHECK(norm == walsh::abs(K.grid<Rat>()).integrate());
      if (n > 1)
        for (int i = 0; i < msb(n); ++i)
          CHECK(kernel_l1_norm_exact(System::paley, n, M, conv, i) == norm);
    }
  }
  CHECK(kernel_l1_norm_exact(System::paley, 1, M, Convention::zero_based) == 0);
  CHECK(kernel_l1_norm_exact(System::paley, 1, M, Convention::one_based) == 1);
  CHECK_THROWS_AS(kernel_l1_norm_exact(System::paley, 4, M,
                                       Convention::zero_based, 2),
                  ParameterError);
}

TEST_CASE("uniform L1 bound holds with maximum well below two") {
  // sweep n <= 1024 at just-covering resolution; the largest norm and its
  // index are pinned as a regression anchor
  const int M = 11;
  double max_zb = 0, max_ob = 0;
  std::uint64_t arg_zb = 0, arg_ob = 0;
  for (std::uint64_t n = 1; n <= 1024; ++n) {
    const double a = kernel_l1_norm(System::paley, n, M, Convention::zero_based);
    const double b = kernel_l1_norm(System::paley, n, M, Convention::one_based);
    if (a > max_zb) { max_zb = a; arg_zb = n; }
    if (b > max_ob) { max_ob = b; arg_ob = n; }
  }
  CHECK(max_zb <= 2.0);
  CHECK(max_ob <= 2.0);
  CHECK(max_zb == doctest::Approx(1.129364).epsilon(1e-6));
  CHECK(arg_zb == 683);
  CHECK(max_ob == doctest::Approx(1.131020).epsilon(1e-6));
  CHECK(arg_ob == 682);
}

TEST_CASE("memoized kernel construction returns identical kernels") {
  const auto a = fejer_cached(System::kaczmarz, 21, 6, Convention::zero_based);
  const auto b = fejer_cached(System::kaczmarz, 21, 6, Convention::zero_based);
  CHECK(a.get() == b.get());  // cache hit
  const FejerKernel fresh = fejer(System::kaczmarz, 21, 6, Convention::zero_based);
  CHECK(a->scaled == fresh.scaled);
  CHECK(a->n == fresh.n);
}

}  // TEST_SUITE
