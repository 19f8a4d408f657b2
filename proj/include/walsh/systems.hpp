#pragma once

#include <bit>
#include <cstdint>

#include "walsh/core.hpp"

/// Rademacher, Walsh-Paley and Walsh-Kaczmarz function evaluation, and the
/// per-block bit-reversal permutation linking the two orderings.
namespace walsh {

enum class System { paley, kaczmarz };

inline const char* to_string(System s) {
  return s == System::paley ? "paley" : "kaczmarz";
}

/// Position of the highest set bit; 2^{msb(n)} <= n < 2^{msb(n)+1}.
inline int msb(std::uint64_t n) {
  if (n == 0) throw ParameterError("msb: undefined for n = 0");
  return 63 - std::countl_zero(n);
}

/// Reverse the low `width` bits of v (bits >= width must be zero).
inline std::uint64_t bit_reverse(std::uint64_t v, int width) {
  std::uint64_t r = 0;
  for (int k = 0; k < width; ++k)
    if (v & (std::uint64_t{1} << k)) r |= std::uint64_t{1} << (width - 1 - k);
  return r;
}

/// r_k(u) = (-1)^{u_k}.
inline int rademacher(int k, Cell u, int M) {
  if (k < 0 || k >= M) throw ResolutionError("rademacher: coordinate index outside resolution");
  return (u >> k) & 1 ? -1 : +1;
}

/// w_n(u) = (-1)^{popcount(n AND u)}; requires the index to be F_M-measurable.
inline int walsh_paley(std::uint64_t n, Cell u, int M) {
  if (n != 0 && msb(n) >= M)
    throw ResolutionError("walsh_paley: index not measurable at this resolution");
  return std::popcount(n & u) & 1 ? -1 : +1;
}

/// The rearrangement n -> 2^{|n|} + bit_reverse_{|n|}(n - 2^{|n|}); an
/// involution mapping each dyadic block [2^A, 2^{A+1}) onto itself, with
/// map(0) = 0 and map(1) = 1 fixed.
inline std::uint64_t kaczmarz_to_paley(std::uint64_t n) {
  if (n < 2) return n;
  const int a = msb(n);
  const std::uint64_t head = std::uint64_t{1} << a;
  return head | bit_reverse(n - head, a);
}

/// kappa_n(u), evaluated through the Paley identity kappa_n = w_{map(n)}.
inline int kaczmarz(std::uint64_t n, Cell u, int M) {
  if (n != 0 && msb(n) >= M)
    throw ResolutionError("kaczmarz: index not measurable at this resolution");
  return walsh_paley(kaczmarz_to_paley(n), u, M);
}

/// Paley index of the k-th function of the given system.
inline std::uint64_t system_index(System s, std::uint64_t k) {
  return s == System::paley ? k : kaczmarz_to_paley(k);
}

/// Sign of the k-th system function at cell u.
inline int system_eval(System s, std::uint64_t k, Cell u, int M) {
  return walsh_paley(system_index(s, k), u, M);
}

}  // namespace walsh
