#include "walsh/operators.hpp"

#include <bit>
#include <cmath>
#include <thread>

namespace walsh {

const char* to_string(WeightSpec::Kind k) {
  switch (k) {
    case WeightSpec::Kind::unit: return "unit";
    case WeightSpec::Kind::log2sq: return "log2sq";
    case WeightSpec::Kind::power: return "power";
    case WeightSpec::Kind::table: return "table";
  }
  return "?";
}

double weight(const WeightSpec& spec, std::uint64_t n) {
  if (n == 0) throw ParameterError("weight: n must be positive");
  switch (spec.kind) {
    case WeightSpec::Kind::unit:
      return 1.0;
    case WeightSpec::Kind::log2sq: {
      const double l = std::log2(static_cast<double>(n) + 1.0);
      return l * l;
    }
    case WeightSpec::Kind::power:
      return std::pow(static_cast<double>(n) + 1.0, 1.0 / spec.p - 2.0);
    case WeightSpec::Kind::table:
      if (n > spec.phi.size()) throw ParameterError("weight: n beyond table");
      return spec.phi[n - 1];
  }
  throw ParameterError("weight: unknown kind");
}

namespace {

// Running state of the cumulative partial-sum sweep:
//   S_j = sum_{i<j} chat(i) alpha_i   (the j-th partial sum),
//   C_j = S_1 + ... + S_j,
// so sigma_n = C_{n-1}/n (zero-based) or C_n/n (one-based).
struct SweepState {
  std::vector<double> S, C;
};

// Initialize S_j and C_j directly from the coefficients: S_j has multiplier
// [idx < j], C_j has multiplier (j - idx)^+ at system index idx.
SweepState state_at(const CoeffVector<double>& c, System system, std::uint64_t j) {
  SweepState st;
  st.S.assign(c.coeffs.size(), 0.0);
  st.C.assign(c.coeffs.size(), 0.0);
  for (std::uint64_t k = 0; k < c.coeffs.size(); ++k) {
    const std::uint64_t idx = system_index(system, k);
    if (idx < j) {
      st.S[k] = c.coeffs[k];
      st.C[k] = c.coeffs[k] * static_cast<double>(j - idx);
    }
  }
  butterfly(st.S);
  butterfly(st.C);
  return st;
}

void sweep_range(const CoeffVector<double>& c, System system, Convention convention,
                 const WeightSpec& spec, std::uint64_t lo, std::uint64_t hi,
                 std::vector<double>& best) {
  // covers sigma_n for n in [lo, hi); sigma_n needs C_{n-1} (zb) or C_n (ob)
  const bool zb = convention == Convention::zero_based;
  std::uint64_t j = zb ? lo - 1 : lo;
  SweepState st = state_at(c, system, j);
  const std::size_t size = c.coeffs.size();
  for (std::uint64_t n = lo; n < hi; ++n) {
    const std::uint64_t jn = zb ? n - 1 : n;
    while (j < jn) {
      // advance: S_{j+1} = S_j + chat(j) alpha_j, then C_{j+1} = C_j + S_{j+1}
      const std::uint64_t slot = system_index(system, j);
      const double cj = c.coeffs[slot];
      if (cj != 0.0) {
        for (std::size_t u = 0; u < size; ++u) {
          st.S[u] += (std::popcount(slot & u) & 1) ? -cj : cj;
          st.C[u] += st.S[u];
        }
      } else {
        for (std::size_t u = 0; u < size; ++u) st.C[u] += st.S[u];
      }
      ++j;
    }
    const double inv = 1.0 / (static_cast<double>(n) * weight(spec, n));
    for (std::size_t u = 0; u < size; ++u)
      best[u] = std::max(best[u], std::abs(st.C[u]) * inv);
  }
}

}  // namespace

GridFn<double> maximal_fejer(const GridFn<double>& f, System system,
                             std::uint64_t n_max, const WeightSpec& spec,
                             Convention convention, int jobs) {
  if (n_max == 0) throw ParameterError("maximal operator: n_max must be positive");
  if (n_max > f.size()) throw ResolutionError("maximal operator: n_max exceeds 2^M");
  if (jobs < 1) jobs = 1;
  CoeffVector<double> c = fwht(f);
  const std::size_t size = c.coeffs.size();

  // Work is split into fixed-size chunks and each chunk restarts the sweep
  // from a fresh state, so the computed values do not depend on how chunks
  // are distributed over threads.  The merge is a pointwise max, which is
  // exact, so the result is bitwise identical for every job count.
  constexpr std::uint64_t kChunk = 64;
  const std::uint64_t span = n_max;  // indices 1..n_max
  const std::uint64_t chunks = (span + kChunk - 1) / kChunk;
  const std::uint64_t nworkers = std::min<std::uint64_t>(jobs, chunks);
  std::vector<std::vector<double>> parts(nworkers, std::vector<double>(size, 0.0));
  std::vector<std::thread> workers;
  for (std::uint64_t w = 0; w < nworkers; ++w) {
    workers.emplace_back([&, w] {
      for (std::uint64_t ch = w; ch < chunks; ch += nworkers) {
        const std::uint64_t lo = 1 + ch * kChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(n_max + 1, lo + kChunk);
        sweep_range(c, system, convention, spec, lo, hi, parts[w]);
      }
    });
  }
  for (auto& t : workers) t.join();

  GridFn<double> out(f.resolution());
  for (std::uint64_t w = 0; w < nworkers; ++w)
    for (std::size_t u = 0; u < size; ++u)
      out[u] = std::max(out[u], parts[w][u]);
  return out;
}

}  // namespace walsh
