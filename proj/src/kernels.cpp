#include "walsh/kernels.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <tuple>

#include "walsh/transform.hpp"

namespace walsh {

namespace {

void check_kernel_args(std::uint64_t n, int M) {
  if (M < 0 || M > 62) throw ResolutionError("kernel: resolution out of range");
  if (n > (std::uint64_t{1} << M))
    throw ResolutionError("kernel: index exceeds 2^M");
}

// Scatter per-index integer coefficients into Paley slots and synthesize.
std::vector<std::int64_t> synthesize_coeffs(System system, std::uint64_t n, int M,
                                            const std::vector<std::int64_t>& per_index) {
  std::vector<std::int64_t> c(std::size_t{1} << M, 0);
  for (std::uint64_t k = 0; k < n; ++k) c[system_index(system, k)] = per_index[k];
  butterfly(c);
  return c;
}

}  // namespace

std::vector<std::int64_t> dirichlet_scaled(System system, std::uint64_t n, int M) {
  check_kernel_args(n, M);
  std::vector<std::int64_t> ind(n, 1);
  return synthesize_coeffs(system, n, M, ind);
}

std::pair<GridFn<Rat>, GridFn<Rat>> dirichlet_kaczmarz_split(std::uint64_t n, int M) {
  check_kernel_args(n, M);
  if (n == 0) throw ParameterError("dirichlet split: n must be positive");
  const int a = msb(n);
  GridFn<Rat> head = dirichlet<Rat>(System::paley, std::uint64_t{1} << a, M);
  GridFn<Rat> tail(M);
  const std::uint64_t rest = n - (std::uint64_t{1} << a);
  if (rest > 0) {
    GridFn<Rat> d = tau_compose(dirichlet<Rat>(System::paley, rest, M), a);
    for (Cell u = 0; u < tail.size(); ++u)
      tail[u] = rademacher(a, u, M) * d[u];
  }
  return {std::move(head), std::move(tail)};
}

Rat FejerKernel::integral() const {
  Rat s(0);
  for (std::int64_t v : scaled) s += v;
  Rat d(n);
  d <<= M;  // n * 2^M
  s /= d;
  s.canonicalize();
  return s;
}

FejerKernel fejer(System system, std::uint64_t n, int M, Convention convention) {
  check_kernel_args(n, M);
  if (n == 0) throw ParameterError("fejer: n must be positive (division by n)");
  // n*K_n = sum_{k<n} (n-1-k) alpha_k (zero-based) or sum_{k<n} (n-k) alpha_k
  // (one-based): the coefficient counts how many Dirichlet kernels contain k.
  std::vector<std::int64_t> per(n);
  for (std::uint64_t k = 0; k < n; ++k)
    per[k] = convention == Convention::zero_based
                 ? static_cast<std::int64_t>(n - 1 - k)
                 : static_cast<std::int64_t>(n - k);
  FejerKernel K;
  K.system = system;
  K.n = n;
  K.M = M;
  K.convention = convention;
  K.scaled = synthesize_coeffs(system, n, M, per);
  return K;
}

std::shared_ptr<const FejerKernel> fejer_cached(System system, std::uint64_t n,
                                                int M, Convention convention) {
  using Key = std::tuple<int, std::uint64_t, int, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const FejerKernel>> cache;
  static std::deque<Key> order;
  constexpr std::size_t kCapacity = 64;

  const Key key{static_cast<int>(system), n, M, static_cast<int>(convention)};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const FejerKernel>(fejer(system, n, M, convention));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, built);
  if (inserted) {
    order.push_back(key);
    if (order.size() > kCapacity) {
      cache.erase(order.front());
      order.pop_front();
    }
  }
  return it->second;
}

Rat fejer_closed_2pow_paley(int A, Cell z, int M, Convention convention) {
  if (A > M) throw ResolutionError("closed form: A exceeds resolution");
  if (A < 0) throw ParameterError("closed form: A must be nonnegative");
  const Cell maskA = (Cell{1} << A) - 1;
  if ((z & maskA) == 0) {
    // z in I_A: convention-dependent constant
    Rat c(convention == Convention::zero_based ? (std::uint64_t{1} << A) - 1
                                               : (std::uint64_t{1} << A) + 1,
          2);
    c.canonicalize();
    return c;
  }
  const int t = std::countr_zero(z);  // z in I_t \ I_{t+1}
  const Cell dropped = z ^ (Cell{1} << t);
  if ((dropped & maskA) != 0) return Rat(0);
  Rat v(std::uint64_t{1} << t, 2);  // 2^{t-1}, exact also at t = 0
  v.canonicalize();
  return v;
}

KernelDecomposition skvortsov_terms(std::uint64_t n, int M, Convention convention) {
  check_kernel_args(n, M);
  if (n == 0) throw ParameterError("skvortsov terms: n must be positive");
  KernelDecomposition dec(n, M, convention);
  dec.one_term = GridFn<Rat>::constant(M, Rat(1));
  const int a = msb(n);
  for (int i = 0; i < a; ++i) {
    const std::uint64_t p2 = std::uint64_t{1} << i;
    GridFn<Rat> d = dirichlet<Rat>(System::paley, p2, M);
    GridFn<Rat> k = tau_compose(fejer(System::paley, p2, M, convention).grid<Rat>(), i);
    for (Cell u = 0; u < dec.dirichlet_sum.size(); ++u) {
      dec.dirichlet_sum[u] += Rat(p2) * d[u];
      dec.fejer_sum[u] += Rat(p2) * Rat(rademacher(i, u, M)) * k[u];
    }
  }
  const std::uint64_t rest = n - (std::uint64_t{1} << a);
  if (rest > 0) {
    GridFn<Rat> d = dirichlet<Rat>(System::paley, std::uint64_t{1} << a, M);
    GridFn<Rat> k = tau_compose(fejer(System::paley, rest, M, convention).grid<Rat>(), a);
    for (Cell u = 0; u < dec.tail.size(); ++u) {
      dec.tail[u] = Rat(rest) * (d[u] + Rat(rademacher(a, u, M)) * k[u]);
      dec.tail[u].canonicalize();
    }
  }
  for (GridFn<Rat>* g : {&dec.dirichlet_sum, &dec.fejer_sum})
    for (Rat& x : g->values()) x.canonicalize();
  return dec;
}

WeightedComponents weighted_components(std::uint64_t n, double p, int M,
                                       Convention convention) {
  if (!(p > 0.0 && p < 0.5))
    throw ParameterError("weighted components: p must lie in (0, 1/2)");
  KernelDecomposition dec = skvortsov_terms(n, M, convention);
  const double w = std::pow(static_cast<double>(n) + 1.0, -(1.0 / p - 1.0));
  WeightedComponents out(M);
  for (Cell u = 0; u < out.L1.size(); ++u) {
    out.L1[u] = w * Rat(dec.one_term[u] + dec.dirichlet_sum[u]).get_d();
    out.L2[u] = w * dec.fejer_sum[u].get_d();
    out.L3[u] = w * dec.tail[u].get_d();
  }
  return out;
}

std::uint64_t q_seq(int A) {
  if (A < 0 || A > 30) throw ParameterError("q_seq: A outside [0, 30]");
  return ((std::uint64_t{1} << (2 * (A + 1))) - 1) / 3;
}

Rat kernel_l1_norm_exact(System system, std::uint64_t n, int M,
                         Convention convention, int tau_i) {
  if (n == 0) throw ParameterError("kernel L1 norm: n must be positive");
  if (tau_i >= 0 && tau_i >= msb(n))
    throw ParameterError("kernel L1 norm: tau index must satisfy i < |n|");
  FejerKernel K = fejer(system, n, M, convention);
  Rat s(0);
  for (Cell u = 0; u < K.scaled.size(); ++u) {
    const std::int64_t v = K.scaled[tau_i >= 0 ? tau(tau_i, u) : u];
    s += v < 0 ? -v : v;
  }
  Rat d(n);
  d <<= M;
  s /= d;
  s.canonicalize();
  return s;
}

double kernel_l1_norm(System system, std::uint64_t n, int M,
                      Convention convention, int tau_i) {
  return kernel_l1_norm_exact(system, n, M, convention, tau_i).get_d();
}

}  // namespace walsh
