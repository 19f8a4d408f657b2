#include "walsh/spaces.hpp"

#include <random>

#include "walsh/kernels.hpp"

namespace walsh {

int atom_amplitude_exponent(int N, double p) {
  if (!(p > 0 && p < 1)) throw ParameterError("atom: p must lie in (0, 1)");
  // nudge before flooring so ratios like 2/0.4 land on their true integer
  return static_cast<int>(std::floor(static_cast<double>(N) / p + 1e-9));
}

AtomSpec make_atom(int N, double p, int M, std::uint64_t seed) {
  if (N < 0) throw ParameterError("atom: support level must be nonnegative");
  if (M <= N) throw ResolutionError(
      "atom: resolution must exceed the support level to represent a "
      "nonconstant mean-zero function");
  AtomSpec a{N, p, GridFn<Rat>(M)};
  Rat amp(1);
  amp <<= atom_amplitude_exponent(N, p);

  if (seed == 0) {
    // +-amp on I_{N+1} and on I_{N+1}(e_N)
    const Cell eN = Cell{1} << N;
    for (Cell u = 0; u < a.values.size(); u += Cell{1} << (N + 1)) {
      a.values[u] = amp;
      a.values[u | eN] = -amp;
    }
    return a;
  }

  const int cells_log = M - N;
  const std::size_t cells = std::size_t{1} << cells_log;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> draw(-256, 256);
  std::vector<long> raw(cells);
  long sum = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    raw[i] = draw(rng);
    sum += raw[i];
  }
  // shift to exact zero mean; the mean has a power-of-two denominator, so all
  // values stay dyadic rationals
  Rat mean(sum, 1);
  mean /= Rat(std::uint64_t{1} << cells_log);
  mean.canonicalize();
  Rat sup(0);
  std::vector<Rat> adj(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    adj[i] = Rat(raw[i]) - mean;
    adj[i].canonicalize();
    Rat mag = ::abs(adj[i]);
    if (mag > sup) sup = mag;
  }
  if (sup == 0) return a;  // degenerate constant draw: the zero atom
  // rescale by amp/512 >= amp/sup-bound so sup|a| <= amp exactly
  for (std::size_t i = 0; i < cells; ++i) {
    Rat v = adj[i] * amp / 512;
    v.canonicalize();
    a.values[Cell{i} << N] = v;
  }
  return a;
}

void validate_atom(const AtomSpec& atom) {
  const int M = atom.values.resolution();
  if (atom.N > M) throw ParameterError("atom: support level exceeds resolution");
  const Cell low_mask = (Cell{1} << atom.N) - 1;
  Rat amp(1);
  amp <<= atom_amplitude_exponent(atom.N, atom.p);
  Rat sum(0);
  for (Cell u = 0; u < atom.values.size(); ++u) {
    const Rat& v = atom.values[u];
    if ((u & low_mask) != 0 && v != 0)
      throw ParameterError("atom axiom c) violated: support outside I_N");
    if (::abs(v) > amp)
      throw ParameterError("atom axiom b) violated: sup exceeds 2^{N/p}");
    sum += v;
  }
  if (sum != 0) throw ParameterError("atom axiom a) violated: nonzero mean");
}

GridFn<Rat> counterexample(int m, int M) {
  if (m < 1) throw ParameterError("counterexample: m must be >= 1");
  if (M < 2 * m + 1)
    throw ResolutionError("counterexample: resolution below 2m+1");
  return dirichlet<Rat>(System::paley, std::uint64_t{1} << (2 * m + 1), M) -
         dirichlet<Rat>(System::paley, std::uint64_t{1} << (2 * m), M);
}

}  // namespace walsh
