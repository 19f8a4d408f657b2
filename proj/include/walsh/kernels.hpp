#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "walsh/core.hpp"
#include "walsh/systems.hpp"

/// Dirichlet and Fejer kernels in both orderings, closed forms, the
/// Skvortsov decomposition of the Kaczmarz Fejer kernel, the weighted
/// kernel components used by the boundedness argument, and the base-4
/// repunit index sequence q_A.
namespace walsh {

/// Fejer averaging convention: zero-based K_n = n^{-1} sum_{k=0}^{n-1} D_k
/// (with D_0 = 0) or one-based K_n = n^{-1} sum_{k=1}^{n} D_k.  The two
/// kernels differ by exactly D_n / n.
enum class Convention { zero_based, one_based };

inline const char* to_string(Convention c) {
  return c == Convention::zero_based ? "zero-based" : "one-based";
}

/// Integer-valued Dirichlet kernel D_n as a scaled grid (values are exact).
std::vector<std::int64_t> dirichlet_scaled(System system, std::uint64_t n, int M);

template <class T>
GridFn<T> dirichlet(System system, std::uint64_t n, int M) {
  std::vector<std::int64_t> s = dirichlet_scaled(system, n, M);
  GridFn<T> g(M);
  for (Cell u = 0; u < g.size(); ++u) g[u] = T(s[u]);
  return g;
}

/// The two summands of D_n^kappa = D_{2^|n|} + r_|n| D^w_{n-2^|n|} o tau_|n|;
/// their sum equals dirichlet(kaczmarz, n, M) exactly.
std::pair<GridFn<Rat>, GridFn<Rat>> dirichlet_kaczmarz_split(std::uint64_t n, int M);

/// Fejer kernel stored exactly: integer grid of n*K_n plus the denominator n.
struct FejerKernel {
  System system = System::paley;
  std::uint64_t n = 1;
  int M = 0;
  Convention convention = Convention::zero_based;
  std::vector<std::int64_t> scaled;  // values of n*K_n

  Rat value(Cell u) const {
    Rat r(scaled[u], n);
    r.canonicalize();
    return r;
  }
  template <class T>
  GridFn<T> grid() const {
    GridFn<T> g(M);
    for (Cell u = 0; u < g.size(); ++u) {
      if constexpr (std::is_same_v<T, Rat>) g[u] = value(u);
      else g[u] = static_cast<double>(scaled[u]) / static_cast<double>(n);
    }
    return g;
  }
  /// Exact integral: (n-1)/2... reduces to (n-1)/n zero-based, 1 one-based.
  Rat integral() const;
};

/// Exact Fejer kernel construction (coefficient synthesis, O(M 2^M)).
FejerKernel fejer(System system, std::uint64_t n, int M, Convention convention);

/// Memoized variant; the cache is bounded and purely an optimization.
std::shared_ptr<const FejerKernel> fejer_cached(System system, std::uint64_t n,
                                                int M, Convention convention);

/// Piecewise closed form of K_{2^A}^w: for z in I_t \ I_{t+1} with t < A the
/// value is 0 or 2^{t-1} according to whether z - z_t e_t lies in I_A; on I_A
/// the constant is (2^A - 1)/2 (zero-based) or (2^A + 1)/2 (one-based), as
/// pinned by the brute-force oracle.
Rat fejer_closed_2pow_paley(int A, Cell z, int M, Convention convention);

/// The four terms of the Skvortsov decomposition of n*K_n^kappa:
///   1 + sum 2^i D_{2^i} + sum 2^i r_i (K_{2^i}^w o tau_i) + tail,
/// tail = (n - 2^|n|)(D_{2^|n|} + r_|n| K^w_{n-2^|n|} o tau_|n|).
struct KernelDecomposition {
  std::uint64_t n = 1;
  int M = 0;
  Convention convention = Convention::one_based;
  GridFn<Rat> one_term, dirichlet_sum, fejer_sum, tail;

  KernelDecomposition(std::uint64_t n_, int M_, Convention c)
      : n(n_), M(M_), convention(c), one_term(M_), dirichlet_sum(M_),
        fejer_sum(M_), tail(M_) {}
  GridFn<Rat> total() const { return one_term + dirichlet_sum + fejer_sum + tail; }
};

KernelDecomposition skvortsov_terms(std::uint64_t n, int M, Convention convention);

/// The three weighted kernel components L_n^1, L_n^2, L_n^3 with the weight
/// (n+1)^{-(1/p-1)}; float backend (the weight is irrational in general).
struct WeightedComponents {
  GridFn<double> L1, L2, L3;
  WeightedComponents(int M) : L1(M), L2(M), L3(M) {}
};

WeightedComponents weighted_components(std::uint64_t n, double p, int M,
                                       Convention convention);

/// q_A = 2^{2A} + 2^{2A-2} + ... + 2^2 + 2^0 = (4^{A+1} - 1)/3.
std::uint64_t q_seq(int A);

/// L1 norm of the Fejer kernel, optionally precomposed with tau_i
/// (which leaves it exactly unchanged).  Exact value as a rational.
Rat kernel_l1_norm_exact(System system, std::uint64_t n, int M,
                         Convention convention, int tau_i = -1);
double kernel_l1_norm(System system, std::uint64_t n, int M,
                      Convention convention, int tau_i = -1);

}  // namespace walsh
