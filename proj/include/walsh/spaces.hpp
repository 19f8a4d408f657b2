#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "walsh/core.hpp"
#include "walsh/transform.hpp"

/// L_p and weak-L_p quasinorms, the martingale maximal function and Hardy
/// norm, p-atoms, and the two-Dirichlet-kernel counterexample family.
namespace walsh {

namespace detail {
inline double to_double(const Rat& x) { return x.get_d(); }
inline double to_double(double x) { return x; }
}  // namespace detail

/// ( integral |f|^p dmu )^{1/p}; p > 0.
template <class T>
double lp_quasinorm(const GridFn<T>& f, double p) {
  if (!(p > 0)) throw ParameterError("lp quasinorm: p must be positive");
  double s = 0;
  for (Cell u = 0; u < f.size(); ++u)
    s += std::pow(std::abs(detail::to_double(f[u])), p);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

/// sup_lambda lambda * mu{|f| > lambda}^{1/p}, exact for step functions: the
/// supremum is attained approaching a value level from below, so it equals
/// max over distinct levels v > 0 of v * mu{|f| >= v}^{1/p}.
template <class T>
double weak_lp(const GridFn<T>& f, double p) {
  if (!(p > 0)) throw ParameterError("weak lp: p must be positive");
  std::map<T, std::size_t> levels;  // |value| -> cell count
  for (Cell u = 0; u < f.size(); ++u) {
    T a = f[u] < T{} ? T(-f[u]) : f[u];
    if (a > T{}) ++levels[a];
  }
  double best = 0;
  std::size_t count_ge = 0;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    count_ge += it->second;
    const double mu = static_cast<double>(count_ge) / static_cast<double>(f.size());
    best = std::max(best, detail::to_double(it->first) * std::pow(mu, 1.0 / p));
  }
  return best;
}

/// f*(u) = max over 0 <= n <= M of |S_{2^n} f (u)| (the dyadic martingale
/// maximal function; S_{2^0} f is the constant mean).
template <class T>
GridFn<T> martingale_maximal(const GridFn<T>& f) {
  const int M = f.resolution();
  GridFn<T> best = abs(f);  // n = M term
  GridFn<T> cond = f;
  for (int n = M - 1; n >= 0; --n) {
    const Cell bit = Cell{1} << n;
    for (Cell u = 0; u < cond.size(); ++u) {
      if (u & bit) continue;
      T avg = cond[u] + cond[u | bit];
      avg /= 2;
      cond[u] = avg;
      cond[u | bit] = avg;
    }
    for (Cell u = 0; u < cond.size(); ++u) {
      T a = cond[u] < T{} ? T(-cond[u]) : cond[u];
      if (best[u] < a) best[u] = a;
    }
  }
  if constexpr (std::is_same_v<T, Rat>)
    for (Rat& x : best.values()) x.canonicalize();
  return best;
}

/// Hardy quasinorm: L_p quasinorm of the martingale maximal function.
template <class T>
double hardy_norm(const GridFn<T>& f, double p) {
  return lp_quasinorm(martingale_maximal(f), p);
}

/// A p-atom: mean zero on its support interval I_N, sup bound 2^{N/p}.
struct AtomSpec {
  int N = 0;
  double p = 0.5;
  GridFn<Rat> values;
};

/// Largest integer k with 2^k <= 2^{N/p}, guarded against float rounding of
/// N/p at representable ratios.
int atom_amplitude_exponent(int N, double p);

/// Deterministic atom family: seed 0 is the two-level construction with
/// values +-2^{N/p} on I_{N+1} and its e_N-translate; seeds >= 1 draw dyadic
/// rational values on the I_N cells, shifted to exact zero mean and rescaled
/// so the sup bound holds exactly.
AtomSpec make_atom(int N, double p, int M, std::uint64_t seed);

/// Checks the three atom axioms exactly; throws ParameterError on violation.
void validate_atom(const AtomSpec& atom);

/// f_m = D_{2^{2m+1}} - D_{2^{2m}}; |f_m| = 2^{2m} on I_{2m}, 0 elsewhere.
GridFn<Rat> counterexample(int m, int M);

}  // namespace walsh
