#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

/// Dyadic group at finite resolution: cells, the coordinate-reversal map,
/// cylinder functions with exact-rational and float value backends, and
/// dyadic cell patterns (fixed/zero/free coordinate constraints).
namespace walsh {

using Cell = std::uint64_t;
using Rat = mpq_class;

/// The requested resolution cannot be represented (cap exceeded, or an
/// operation needs more coordinates than the grid materializes).
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter is outside its documented domain (n = 0, p out of range, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {
inline int env_cap(const char* name, int fallback) {
  const char* s = std::getenv(name);
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || v < 0 || v > 62) return fallback;
  return static_cast<int>(v);
}
}  // namespace detail

/// Resolution cap for the float backend (default 26, env WALSH_CAP_FLOAT).
inline int float_cap() {
  static const int cap = detail::env_cap("WALSH_CAP_FLOAT", 26);
  return cap;
}

/// Resolution cap for the exact backend (default 16, env WALSH_CAP_EXACT).
inline int exact_cap() {
  static const int cap = detail::env_cap("WALSH_CAP_EXACT", 16);
  return cap;
}

template <class T>
struct backend_traits;

template <>
struct backend_traits<Rat> {
  static constexpr const char* name = "exact-rational";
  static int cap() { return exact_cap(); }
};

template <>
struct backend_traits<double> {
  static constexpr const char* name = "float";
  static int cap() { return float_cap(); }
};

template <class T>
inline void check_resolution(int M) {
  if (M < 0) throw ResolutionError("resolution must be nonnegative");
  if (M > backend_traits<T>::cap())
    throw ResolutionError("resolution " + std::to_string(M) + " exceeds the " +
                          backend_traits<T>::name + " cap " +
                          std::to_string(backend_traits<T>::cap()));
}

/// Reverse the low A bits of u; bits >= A are unchanged.
inline Cell tau(int A, Cell u) {
  if (A < 0 || A > 62) throw ParameterError("tau: coordinate count out of range");
  Cell low = u & ((A >= 64) ? ~Cell{0} : ((Cell{1} << A) - 1));
  Cell rev = 0;
  for (int k = 0; k < A; ++k)
    if (low & (Cell{1} << k)) rev |= Cell{1} << (A - 1 - k);
  return (u ^ low) | rev;
}

/// Cylinder function on the dyadic group at resolution M: 2^M cell values.
/// The measure of each cell is 2^{-M}.
template <class T>
class GridFn {
 public:
  explicit GridFn(int M) : M_(M) {
    check_resolution<T>(M);
    v_.assign(std::size_t{1} << M, T{});
  }
  GridFn(int M, std::vector<T> values) : M_(M), v_(std::move(values)) {
    check_resolution<T>(M);
    if (v_.size() != (std::size_t{1} << M))
      throw ParameterError("GridFn: value count does not match resolution");
  }
  static GridFn constant(int M, const T& c) {
    GridFn g(M);
    std::fill(g.v_.begin(), g.v_.end(), c);
    return g;
  }

  int resolution() const { return M_; }
  std::size_t size() const { return v_.size(); }
  const T& operator[](Cell u) const { return v_[u]; }
  T& operator[](Cell u) { return v_[u]; }
  const std::vector<T>& values() const { return v_; }
  std::vector<T>& values() { return v_; }

  /// 2^{-M} * sum of values; exact in the rational backend.
  T integrate() const {
    T s{};
    for (const T& x : v_) s += x;
    return scale_down(s);
  }

 private:
  T scale_down(const T& s) const;
  int M_;
  std::vector<T> v_;
};

template <>
inline Rat GridFn<Rat>::scale_down(const Rat& s) const {
  Rat d(1);
  d <<= M_;  // 2^M
  Rat r = s / d;
  r.canonicalize();
  return r;
}

template <>
inline double GridFn<double>::scale_down(const double& s) const {
  return s / static_cast<double>(std::size_t{1} << M_);
}

/// Cylinder extension to a finer resolution: each value is replicated on the
/// refined cells (new high coordinates are ignored by the function).
template <class T>
GridFn<T> lift(const GridFn<T>& f, int M_target) {
  if (M_target < f.resolution())
    throw ResolutionError("lift: target resolution below source (no projection here)");
  GridFn<T> g(M_target);
  const Cell mask = (Cell{1} << f.resolution()) - 1;
  for (Cell u = 0; u < g.size(); ++u) g[u] = f[u & mask];
  return g;
}

/// g(u) = f(tau_A(u)): precomposition with the coordinate reversal.
template <class T>
GridFn<T> tau_compose(const GridFn<T>& f, int A) {
  if (A > f.resolution()) throw ResolutionError("tau_compose: A exceeds resolution");
  GridFn<T> g(f.resolution());
  for (Cell u = 0; u < g.size(); ++u) g[u] = f[tau(A, u)];
  return g;
}

template <class T>
GridFn<T> operator+(const GridFn<T>& a, const GridFn<T>& b) {
  if (a.resolution() != b.resolution()) throw ParameterError("grid resolution mismatch");
  GridFn<T> r(a.resolution());
  for (Cell u = 0; u < r.size(); ++u) r[u] = a[u] + b[u];
  return r;
}

template <class T>
GridFn<T> operator-(const GridFn<T>& a, const GridFn<T>& b) {
  if (a.resolution() != b.resolution()) throw ParameterError("grid resolution mismatch");
  GridFn<T> r(a.resolution());
  for (Cell u = 0; u < r.size(); ++u) r[u] = a[u] - b[u];
  return r;
}

template <class T>
GridFn<T> operator*(const T& c, const GridFn<T>& f) {
  GridFn<T> r(f.resolution());
  for (Cell u = 0; u < r.size(); ++u) r[u] = c * f[u];
  return r;
}

template <class T>
GridFn<T> abs(const GridFn<T>& f) {
  GridFn<T> r(f.resolution());
  for (Cell u = 0; u < r.size(); ++u) r[u] = f[u] < T{} ? T(-f[u]) : f[u];
  return r;
}

/// Exact equality (rational backend semantics).
inline bool exact_equal(const GridFn<Rat>& a, const GridFn<Rat>& b) {
  return a.resolution() == b.resolution() && a.values() == b.values();
}

/// Float comparison with an explicit absolute tolerance.
inline bool approx_equal(const GridFn<double>& a, const GridFn<double>& b, double tol) {
  if (a.resolution() != b.resolution()) return false;
  for (Cell u = 0; u < a.size(); ++u)
    if (std::abs(a[u] - b[u]) > tol) return false;
  return true;
}

enum class Coord : unsigned char { Zero, One, Free };

/// A dyadic cell pattern: each coordinate is pinned to 0, pinned to 1, or
/// free.  Describes dyadic intervals I_n(x) and the two-ones shell families
/// used by the kernel estimates.
class PatternSet {
 public:
  explicit PatternSet(int M) : M_(M), c_(static_cast<std::size_t>(M), Coord::Free) {
    if (M < 0 || M > 62) throw ResolutionError("PatternSet: resolution out of range");
  }

  /// I_n at resolution M: coordinates 0..n-1 pinned to zero.
  static PatternSet dyadic_interval(int M, int n) {
    return dyadic_interval_at(M, n, 0);
  }

  /// I_n(x): coordinates 0..n-1 pinned to the corresponding bits of x.
  static PatternSet dyadic_interval_at(int M, int n, Cell x) {
    if (n > M) throw ResolutionError("dyadic interval level exceeds resolution");
    PatternSet s(M);
    for (int k = 0; k < n; ++k)
      s.c_[k] = (x >> k) & 1 ? Coord::One : Coord::Zero;
    return s;
  }

  int resolution() const { return M_; }
  Coord at(int k) const { return c_.at(static_cast<std::size_t>(k)); }
  void set(int k, Coord c) { c_.at(static_cast<std::size_t>(k)) = c; }

  int fixed_count() const {
    return static_cast<int>(std::count_if(c_.begin(), c_.end(),
                                          [](Coord c) { return c != Coord::Free; }));
  }

  /// Exact measure 2^{-(#fixed coordinates)}.
  Rat measure() const {
    Rat m(1);
    Rat d(1);
    d <<= fixed_count();
    m /= d;
    m.canonicalize();
    return m;
  }

  bool contains(Cell u) const {
    for (int k = 0; k < M_; ++k) {
      const bool bit = (u >> k) & 1;
      if (c_[static_cast<std::size_t>(k)] == Coord::Zero && bit) return false;
      if (c_[static_cast<std::size_t>(k)] == Coord::One && !bit) return false;
    }
    return true;
  }

  /// Enumerate the 2^{#free} matching cells in increasing order.
  std::vector<Cell> cells() const {
    std::vector<int> free_bits;
    Cell base = 0;
    for (int k = 0; k < M_; ++k) {
      if (c_[static_cast<std::size_t>(k)] == Coord::Free) free_bits.push_back(k);
      else if (c_[static_cast<std::size_t>(k)] == Coord::One) base |= Cell{1} << k;
    }
    std::vector<Cell> out;
    out.reserve(std::size_t{1} << free_bits.size());
    for (Cell m = 0; m < (Cell{1} << free_bits.size()); ++m) {
      Cell u = base;
      for (std::size_t i = 0; i < free_bits.size(); ++i)
        if ((m >> i) & 1) u |= Cell{1} << free_bits[i];
      out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Image pattern under tau_A (permutes the constraint positions below A).
  PatternSet tau_image(int A) const {
    if (A > M_) throw ResolutionError("tau image: A exceeds resolution");
    PatternSet s(M_);
    for (int k = 0; k < M_; ++k) {
      int j = k < A ? A - 1 - k : k;
      s.c_[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(k)];
    }
    return s;
  }

 private:
  int M_;
  std::vector<Coord> c_;
};

/// Indicator of a pattern as a grid function.
template <class T>
GridFn<T> indicator(const PatternSet& s) {
  GridFn<T> g(s.resolution());
  for (Cell u = 0; u < g.size(); ++u) g[u] = s.contains(u) ? T(1) : T(0);
  return g;
}

}  // namespace walsh
