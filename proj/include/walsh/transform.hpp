#pragma once

#include <cstdint>
#include <vector>

#include "walsh/core.hpp"
#include "walsh/systems.hpp"

/// Fast Walsh-Hadamard transform, Fourier coefficients in both orderings,
/// partial sums, dyadic convolution and conditional expectations.
namespace walsh {

/// Coefficient vector at resolution M; entry k is the coefficient of the
/// k-th function of `ordering`.
template <class T>
struct CoeffVector {
  int M = 0;
  System ordering = System::paley;
  std::vector<T> coeffs;
};

/// In-place unnormalized butterfly; applying it twice multiplies by 2^M.
template <class T>
void butterfly(std::vector<T>& a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        T x = a[j];
        T y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

namespace detail {
template <class T>
void scale_by_inverse_size(std::vector<T>& a);

template <>
inline void scale_by_inverse_size<Rat>(std::vector<Rat>& a) {
  Rat d(1);
  d <<= msb(a.size());
  for (Rat& x : a) {
    x /= d;
    x.canonicalize();
  }
}

template <>
inline void scale_by_inverse_size<double>(std::vector<double>& a) {
  const double s = 1.0 / static_cast<double>(a.size());
  for (double& x : a) x *= s;
}
}  // namespace detail

/// Analysis: coeffs(n) = 2^{-M} sum_u f(u) (-1)^{popcount(n AND u)}.
/// O(M 2^M); exact in the rational backend.
template <class T>
CoeffVector<T> fwht(const GridFn<T>& f) {
  CoeffVector<T> c;
  c.M = f.resolution();
  c.ordering = System::paley;
  c.coeffs = f.values();
  butterfly(c.coeffs);
  detail::scale_by_inverse_size<T>(c.coeffs);
  return c;
}

/// Synthesis: reconstruct the grid from Paley-ordered coefficients
/// (the same butterfly without scaling; round-trip with fwht is the identity).
template <class T>
GridFn<T> synthesize(const CoeffVector<T>& c) {
  std::vector<T> vals = c.coeffs;
  if (c.ordering == System::kaczmarz) {
    // kappa_k = w_{map(k)}: move each coefficient to its Paley slot.
    std::vector<T> p(vals.size(), T{});
    for (std::uint64_t k = 0; k < vals.size(); ++k)
      p[kaczmarz_to_paley(k)] = vals[k];
    vals.swap(p);
  }
  butterfly(vals);
  return GridFn<T>(c.M, std::move(vals));
}

/// Coefficients in the requested ordering; the Kaczmarz ordering is the Paley
/// ordering permuted by the block bit-reversal map.
template <class T>
CoeffVector<T> fourier_coeffs(const GridFn<T>& f, System system) {
  CoeffVector<T> c = fwht(f);
  if (system == System::kaczmarz) {
    std::vector<T> k(c.coeffs.size());
    for (std::uint64_t i = 0; i < k.size(); ++i)
      k[i] = c.coeffs[kaczmarz_to_paley(i)];
    c.coeffs.swap(k);
    c.ordering = System::kaczmarz;
  }
  return c;
}

/// S_terms f = sum_{i < terms} fhat(i) alpha_i; S_0 f = 0.
template <class T>
GridFn<T> partial_sum(const GridFn<T>& f, System system, std::uint64_t terms) {
  if (terms > f.size()) throw ResolutionError("partial_sum: terms exceed resolution");
  CoeffVector<T> c = fwht(f);
  // keep Paley slot j iff its index in `system` ordering is below `terms`
  // (the map is an involution, so that index is map(j) for kaczmarz).
  for (std::uint64_t j = 0; j < c.coeffs.size(); ++j)
    if (system_index(system, j) >= terms) c.coeffs[j] = T{};
  return synthesize(c);
}

/// (f*g)(x) = integral of f(t) g(x+t) dmu(t), via coefficientwise product.
template <class T>
GridFn<T> convolve(const GridFn<T>& f, const GridFn<T>& g) {
  if (f.resolution() != g.resolution())
    throw ParameterError("convolve: resolution mismatch");
  CoeffVector<T> cf = fwht(f);
  CoeffVector<T> cg = fwht(g);
  for (std::size_t i = 0; i < cf.coeffs.size(); ++i) cf.coeffs[i] *= cg.coeffs[i];
  if constexpr (std::is_same_v<T, Rat>)
    for (Rat& x : cf.coeffs) x.canonicalize();
  return synthesize(cf);
}

/// Conditional expectation S_{2^n} f: average of f over each cell class with
/// common low n coordinates (equals partial_sum with 2^n terms).
template <class T>
GridFn<T> dyadic_expectation(const GridFn<T>& f, int n) {
  if (n < 0 || n > f.resolution())
    throw ResolutionError("dyadic_expectation: level outside [0, M]");
  GridFn<T> g = f;
  // successively average out the coordinates n, n+1, ..., M-1
  for (int b = n; b < f.resolution(); ++b) {
    const Cell bit = Cell{1} << b;
    for (Cell u = 0; u < g.size(); ++u) {
      if (u & bit) continue;
      T avg = g[u] + g[u | bit];
      avg /= 2;
      g[u] = avg;
      g[u | bit] = avg;
    }
  }
  if constexpr (std::is_same_v<T, Rat>)
    for (Rat& x : g.values()) x.canonicalize();
  return g;
}

}  // namespace walsh
