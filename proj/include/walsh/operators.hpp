#pragma once

#include <cstdint>
#include <vector>

#include "walsh/core.hpp"
#include "walsh/kernels.hpp"
#include "walsh/systems.hpp"
#include "walsh/transform.hpp"

/// Fejer means, weight functions and truncated weighted maximal operators.
namespace walsh {

/// Denominator weight for the maximal operator: 1, log2^2(n+1),
/// (n+1)^{1/p-2}, or a user table of phi values.
struct WeightSpec {
  enum class Kind { unit, log2sq, power, table };
  Kind kind = Kind::unit;
  double p = 0.0;                  // power only
  std::vector<double> phi;         // table only; phi[n-1] is the weight at n

  static WeightSpec unit() { return {}; }
  static WeightSpec log2sq() {
    WeightSpec w;
    w.kind = Kind::log2sq;
    return w;
  }
  static WeightSpec power(double p) {
    if (!(p > 0.0 && p < 0.5))
      throw ParameterError("power weight: p must lie in (0, 1/2)");
    WeightSpec w;
    w.kind = Kind::power;
    w.p = p;
    return w;
  }
  static WeightSpec table(std::vector<double> phi) {
    if (phi.empty()) throw ParameterError("table weight: empty table");
    double prev = 1.0;
    for (double v : phi) {
      if (v < 1.0 || v < prev)
        throw ParameterError("table weight: values must be nondecreasing and >= 1");
      prev = v;
    }
    WeightSpec w;
    w.kind = Kind::table;
    w.phi = std::move(phi);
    return w;
  }
};

const char* to_string(WeightSpec::Kind k);

double weight(const WeightSpec& spec, std::uint64_t n);

/// sigma_n f = n^{-1} sum of the first n partial sums, computed through the
/// per-coefficient multipliers (n-1-k)/n (zero-based) or (n-k)/n (one-based)
/// applied at the system index; equals f * K_n with the same convention.
template <class T>
GridFn<T> fejer_mean(const GridFn<T>& f, System system, std::uint64_t n,
                     Convention convention) {
  if (n == 0) throw ParameterError("fejer mean: n must be positive");
  if (n > f.size()) throw ResolutionError("fejer mean: n exceeds 2^M");
  CoeffVector<T> c = fwht(f);
  for (std::uint64_t j = 0; j < c.coeffs.size(); ++j) {
    const std::uint64_t idx = system_index(system, j);  // index in `system` order
    std::uint64_t count;                                // # of averaged sums containing idx
    if (convention == Convention::zero_based)
      count = idx + 1 < n ? n - 1 - idx : 0;
    else
      count = idx < n ? n - idx : 0;
    if constexpr (std::is_same_v<T, Rat>) {
      Rat m(count, n);
      m.canonicalize();
      c.coeffs[j] *= m;
      c.coeffs[j].canonicalize();
    } else {
      c.coeffs[j] *= static_cast<double>(count) / static_cast<double>(n);
    }
  }
  return synthesize(c);
}

/// Pointwise max over 1 <= n <= n_max of |sigma_n f| / weight(n); the sweep
/// may be partitioned over `jobs` workers with a deterministic max-merge.
GridFn<double> maximal_fejer(const GridFn<double>& f, System system,
                             std::uint64_t n_max, const WeightSpec& spec,
                             Convention convention, int jobs = 1);

}  // namespace walsh
