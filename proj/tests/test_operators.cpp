#include "walsh/operators.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace walsh;

namespace {

GridFn<double> noise_grid(int M, std::uint64_t salt) {
  GridFn<double> f(M);
  std::uint64_t s = salt;
  for (Cell u = 0; u < f.size(); ++u) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    f[u] = static_cast<double>(s >> 11) * 0x1p-53 * 2.0 - 1.0;
  }
  return f;
}

GridFn<Rat> dyadic_grid(int M, std::uint64_t salt) {
  GridFn<Rat> f(M);
  std::uint64_t s = salt;
  for (Cell u = 0; u < f.size(); ++u) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    Rat v(static_cast<std::int64_t>(s >> 48) - 32768, 16);
    v.canonicalize();
    f[u] = v;
  }
  return f;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("weight functions: pinned values and domains") {
  CHECK(weight(WeightSpec::unit(), 1) == 1.0);
  CHECK(weight(WeightSpec::unit(), 1000) == 1.0);
  CHECK(weight(WeightSpec::log2sq(), 3) == doctest::Approx(4.0));
  CHECK(weight(WeightSpec::log2sq(), 1) == doctest::Approx(1.0));
  CHECK(weight(WeightSpec::power(0.25), 1) == doctest::Approx(4.0));
  CHECK(weight(WeightSpec::power(0.25), 3) == doctest::Approx(16.0));

  const WeightSpec tab = WeightSpec::table({1.0, 2.0, 2.0, 5.0});
  CHECK(weight(tab, 3) == 2.0);
  CHECK(weight(tab, 4) == 5.0);
  CHECK_THROWS_AS(weight(tab, 5), ParameterError);
  CHECK_THROWS_AS(weight(WeightSpec::unit(), 0), ParameterError);

  CHECK_THROWS_AS(WeightSpec::power(0.5), ParameterError);
  CHECK_THROWS_AS(WeightSpec::power(0.0), ParameterError);
  CHECK_THROWS_AS(WeightSpec::table({}), ParameterError);
  CHECK_THROWS_AS(WeightSpec::table({1.0, 0.5}), ParameterError);
  CHECK_THROWS_AS(WeightSpec::table({2.0, 1.5}), ParameterError);
}

TEST_CASE("Fejer mean equals the average of direct partial sums") {
  const int M = 4;
  const GridFn<Rat> f = dyadic_grid(M, 5);
  for (System sys : {System::paley, System::kaczmarz})
    for (Convention conv : {Convention::zero_based, Convention::one_based})
      for (std::uint64_t n = 1; n <= 8; ++n) {
        GridFn<Rat> acc(M);
        const bool zb = conv == Convention::zero_based;
        for (std::uint64_t k = zb ? 0 : 1; k < n + (zb ? 0 : 1); ++k)
          acc = acc + testref::partial_sum_direct(f, sys, k);
        Rat inv(1, n);
        inv.canonicalize();
        CHECK(exact_equal(fejer_mean(f, sys, n, conv), inv * acc));
      }
}

TEST_CASE("Fejer mean is convolution with the matching kernel") {
  const int M = 5;
  const GridFn<Rat> f = dyadic_grid(M, 9);
  for (System sys : {System::paley, System::kaczmarz})
    for (Convention conv : {Convention::zero_based, Convention::one_based})
      for (std::uint64_t n : {1u, 3u, 8u, 21u, 32u}) {
        const GridFn<Rat> kg = fejer(sys, n, M, conv).grid<Rat>();
        CHECK(exact_equal(fejer_mean(f, sys, n, conv), convolve(f, kg)));
      }
}

TEST_CASE("Fejer mean argument validation") {
  const GridFn<Rat> f = dyadic_grid(3, 1);
  CHECK_THROWS_AS(fejer_mean(f, System::paley, 0, Convention::zero_based),
                  ParameterError);
  CHECK_THROWS_AS(fejer_mean(f, System::paley, 9, Convention::zero_based),
                  ResolutionError);
}

TEST_CASE("maximal operator against the brute-force scan") {
  const int M = 6;
  const GridFn<double> f = noise_grid(M, 17);
  for (System sys : {System::paley, System::kaczmarz})
    for (Convention conv : {Convention::zero_based, Convention::one_based})
      for (const WeightSpec& spec :
           {WeightSpec::unit(), WeightSpec::log2sq(), WeightSpec::power(0.25)}) {
        const GridFn<double> got = maximal_fejer(f, sys, 64, spec, conv);
        const GridFn<double> ref = testref::maximal_direct(f, sys, 64, spec, conv);
        CHECK(approx_equal(got, ref, 1e-9));
      }
}

TEST_CASE("maximal operator is bitwise identical for every job count") {
  const int M = 7;
  const GridFn<double> f = noise_grid(M, 23);
  const GridFn<double> one =
      maximal_fejer(f, System::kaczmarz, 128, WeightSpec::power(0.3),
                    Convention::zero_based, 1);
  for (int jobs : {2, 3, 4, 7, 16}) {
    const GridFn<double> many =
        maximal_fejer(f, System::kaczmarz, 128, WeightSpec::power(0.3),
                      Convention::zero_based, jobs);
    CHECK(one.values() == many.values());  // exact, not approximate
  }
}

TEST_CASE("maximal operator truncation domain") {
  const GridFn<double> f = noise_grid(4, 3);
  CHECK_THROWS_AS(
      maximal_fejer(f, System::paley, 0, WeightSpec::unit(), Convention::zero_based),
      ParameterError);
  CHECK_THROWS_AS(
      maximal_fejer(f, System::paley, 17, WeightSpec::unit(), Convention::zero_based),
      ResolutionError);

  // sigma_1 vanishes identically in the zero-based convention
  const GridFn<double> m1 =
      maximal_fejer(f, System::paley, 1, WeightSpec::unit(), Convention::zero_based);
  for (Cell u = 0; u < m1.size(); ++u) CHECK(m1[u] == 0.0);
}

}  // TEST_SUITE
