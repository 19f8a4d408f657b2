#include "walsh/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>

#include "walsh/io.hpp"
#include "walsh/spaces.hpp"
#include "walsh/transform.hpp"

namespace walsh {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

ordered_json conv_list(const std::vector<Convention>& cs) {
  ordered_json a = ordered_json::array();
  for (Convention c : cs) a.push_back(to_string(c));
  return a;
}

ordered_json rat_entry(const Rat& v) {
  ordered_json e;
  e["value"] = rat_to_string(v);
  e["float"] = v.get_d();
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lemma 2: closed form of K_{2^A}^w against the synthesized kernel.

ExperimentReport verify_lemma2(const Lemma2Options& opt, bool corrupt) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = "lemma2";
  rep.params["A_min"] = opt.A_min;
  rep.params["A_max"] = opt.A_max;
  rep.params["resolution"] = opt.M;
  rep.params["conventions"] = conv_list(opt.conventions);
  rep.params["corrupted"] = corrupt;
  if (opt.A_min < 0 || opt.A_min > opt.A_max)
    throw ParameterError("lemma2: empty or negative A range");
  if (opt.A_max > opt.M)
    throw ResolutionError("lemma2: A exceeds the resolution");

  bool all_ok = true;
  ordered_json table = ordered_json::array();
  for (int A = opt.A_min; A <= opt.A_max; ++A) {
    ordered_json row;
    row["A"] = A;
    for (Convention conv : opt.conventions) {
      // corruption: compare the closed form against the wrong kernel index
      const std::uint64_t n =
          (std::uint64_t{1} << A) + (corrupt && A == opt.A_max ? 1 : 0);
      const FejerKernel K = fejer(System::paley, n, opt.M, conv);
      for (Cell z = 0; z < K.scaled.size(); ++z) {
        const Rat closed = fejer_closed_2pow_paley(A, z, opt.M, conv);
        const Rat got = K.value(z);
        if (closed != got) {
          all_ok = false;
          if (rep.witnesses.size() < 4) {
            ordered_json w;
            w["A"] = A;
            w["convention"] = to_string(conv);
            w["cell"] = z;
            w["closed_form"] = rat_to_string(closed);
            w["kernel"] = rat_to_string(got);
            rep.witnesses.push_back(w);
          }
          break;
        }
      }
      row[conv == Convention::zero_based ? "interval_constant_zero_based"
                                         : "interval_constant_one_based"] =
          rat_to_string(fejer_closed_2pow_paley(A, 0, opt.M, conv));
    }
    table.push_back(row);
  }
  rep.constants["interval_constants"] = table;
  // the source display "2^{A-1}/2" does not match the verified constant
  // (2^A - 1)/2 for A >= 2; the two readings coincide only at A = 1
  ordered_json dev;
  dev["display_reading"] = "2^(A-1)/2";
  dev["verified_zero_based"] = "(2^A-1)/2";
  dev["verified_one_based"] = "(2^A+1)/2";
  dev["display_matches_verified"] = (opt.A_max <= 1);
  rep.constants["interval_constant_deviation"] = dev;
  rep.status = all_ok ? Status::pass : Status::fail;
  rep.wall_seconds = elapsed(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma 3: empirical constant in the shell-restricted integral bound.

namespace {

struct ShellClass {
  int m = 0, l = 0;
  Rat sup;
};

struct ShellSweep {
  Rat sup;
  int m = 0, l = 0;
  Cell x = 0;
  std::uint64_t n = 0;
  std::vector<ShellClass> per_class;
};

// sup over J_N^{m,l} classes, representatives x, and kernel indices n of
//   [ integral_{I_N} n|K_n^w(tau_A(x+t))| dmu(t) ] / (2^A / 2^{m+l});
// only_n = 0 sweeps all n < 2^{A+1}.
ShellSweep shell_sweep(int N, int A, Convention conv, std::uint64_t only_n = 0) {
  if (N < 1 || A <= N) throw ParameterError("shell sweep: need 1 <= N < A");
  if (A > 14) throw ResolutionError("shell sweep: A too large for the exact sweep");
  const int M = A + 1;
  const std::uint64_t n_hi = std::uint64_t{1} << M;
  std::vector<FejerKernel> kernels;
  if (only_n == 0) {
    kernels.reserve(n_hi);
    kernels.emplace_back();  // unused slot 0
    for (std::uint64_t n = 1; n < n_hi; ++n)
      kernels.push_back(fejer(System::paley, n, M, conv));
  } else {
    kernels.push_back(fejer(System::paley, only_n, M, conv));
  }

  ShellSweep res;
  res.sup = 0;
  for (int l = 0; l < N; ++l) {
    for (int m = -1; m < l; ++m) {
      ShellClass cls{m, l, Rat(0)};
      const int nfree = m > 0 ? m : 0;
      const Cell base = (m >= 0 ? Cell{1} << m : 0) | (Cell{1} << l);
      for (Cell fm = 0; fm < (Cell{1} << nfree); ++fm) {
        const Cell x = base | fm;
        for (const FejerKernel& K : kernels) {
          if (K.scaled.empty()) continue;
          std::int64_t tot = 0;
          for (Cell s = 0; s < (Cell{1} << (M - N)); ++s)
            tot += iabs(K.scaled[tau(A, x ^ (s << N))]);
          Rat ratio(tot, std::uint64_t{1} << M);  // the exact integral
          ratio.canonicalize();
          if (m + l >= 0) {
            Rat scale(std::uint64_t{1} << (m + l), std::uint64_t{1} << A);
            scale.canonicalize();
            ratio *= scale;
          } else {
            ratio /= Rat(std::uint64_t{1} << (A - m - l));
          }
          ratio.canonicalize();
          if (ratio > cls.sup) cls.sup = ratio;
          if (ratio > res.sup) {
            res.sup = ratio;
            res.m = m;
            res.l = l;
            res.x = x;
            res.n = K.n;
          }
        }
      }
      res.per_class.push_back(cls);
    }
  }
  return res;
}

}  // namespace

ExperimentReport verify_lemma3(const Lemma3Options& opt, bool corrupt) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = "lemma3";
  const int M = opt.A + 1;
  rep.params["N"] = opt.N;
  rep.params["A"] = opt.A;
  rep.params["resolution"] = M;
  rep.params["n_max"] = (std::uint64_t{1} << M) - 1;
  rep.params["convention"] = to_string(opt.convention);
  rep.params["scaling_N"] = opt.scaling_N;
  rep.params["scaling_A"] = opt.scaling_A;
  rep.params["corrupted"] = corrupt;

  const ShellSweep main = shell_sweep(opt.N, opt.A, opt.convention);
  ordered_json sup = rat_entry(main.sup);
  {
    ordered_json w;
    w["m"] = main.m;
    w["l"] = main.l;
    w["x"] = main.x;
    w["n"] = main.n;
    sup["witness"] = w;
  }
  rep.constants["empirical_sup"] = sup;
  ordered_json classes = ordered_json::array();
  for (const ShellClass& c : main.per_class) {
    ordered_json e;
    e["m"] = c.m;
    e["l"] = c.l;
    e["sup"] = c.sup.get_d();
    classes.push_back(e);
  }
  rep.constants["per_class_sup"] = classes;

  const std::uint64_t block = std::uint64_t{1} << opt.A;
  rep.constants["sup_at_block_kernel"] =
      rat_entry(shell_sweep(opt.N, opt.A, opt.convention, block).sup);

  // asserted cross-check: the synthesized block kernel equals the closed form
  const int A_check = corrupt ? opt.A - 1 : opt.A;
  const FejerKernel K2A = fejer(System::paley, block, M, opt.convention);
  bool cross_ok = true;
  for (Cell z = 0; z < K2A.scaled.size(); ++z) {
    const Rat closed = fejer_closed_2pow_paley(A_check, z, M, opt.convention);
    if (K2A.value(z) != closed) {
      cross_ok = false;
      ordered_json w;
      w["check"] = "block kernel vs closed form";
      w["cell"] = z;
      w["kernel"] = rat_to_string(K2A.value(z));
      w["closed_form"] = rat_to_string(closed);
      rep.witnesses.push_back(w);
      break;
    }
  }
  rep.constants["block_kernel_cross_check"] = cross_ok;

  ordered_json scaling = ordered_json::array();
  for (int A2 : opt.scaling_A) {
    ordered_json e;
    e["N"] = opt.scaling_N;
    e["A"] = A2;
    e["sup"] = shell_sweep(opt.scaling_N, A2, opt.convention).sup.get_d();
    scaling.push_back(e);
  }
  rep.constants["scaling"] = scaling;

  // the constant is empirical: the run is informative unless the asserted
  // cross-check breaks
  rep.status = cross_ok ? Status::informative : Status::fail;
  rep.wall_seconds = elapsed(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma 4: the decomposition of n K_n^kappa, exact per convention.

ExperimentReport verify_lemma4(const Lemma4Options& opt, bool corrupt) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = "lemma4";
  rep.params["n_min"] = 1;
  rep.params["n_max"] = opt.n_max;
  rep.params["resolution"] = opt.M;
  rep.params["conventions"] = conv_list(opt.conventions);
  rep.params["corrupted"] = corrupt;
  if (opt.n_max == 0) throw ParameterError("lemma4: empty n range");

  const std::uint64_t corrupt_n = std::min<std::uint64_t>(2, opt.n_max);
  bool one_based_ok = true;
  bool residual_ok = true;  // zero-based: total - n K_n^kappa == 1 everywhere
  bool checked_ob = false, checked_zb = false;
  for (Convention conv : opt.conventions) {
    for (std::uint64_t n = 1; n <= opt.n_max; ++n) {
      const KernelDecomposition dec = skvortsov_terms(n, opt.M, conv);
      GridFn<Rat> total = dec.total();
      if (corrupt && n == corrupt_n) total = total - dec.one_term;
      const FejerKernel K = fejer(System::kaczmarz, n, opt.M, conv);
      const bool ob = conv == Convention::one_based;
      (ob ? checked_ob : checked_zb) = true;
      for (Cell u = 0; u < total.size(); ++u) {
        const Rat expected =
            ob ? Rat(K.scaled[u]) : Rat(K.scaled[u]) + 1;  // exact residual 1
        if (total[u] != expected) {
          (ob ? one_based_ok : residual_ok) = false;
          if (rep.witnesses.size() < 4) {
            ordered_json w;
            w["n"] = n;
            w["convention"] = to_string(conv);
            w["cell"] = u;
            w["decomposition"] = rat_to_string(total[u]);
            w["scaled_kernel"] = rat_to_string(Rat(K.scaled[u]));
            rep.witnesses.push_back(w);
          }
          break;
        }
      }
    }
  }
  if (checked_ob) rep.constants["one_based_exact"] = one_based_ok;
  if (checked_zb) {
    rep.constants["zero_based_residual"] = "1";
    rep.constants["zero_based_residual_constant"] = residual_ok;
  }
  rep.status = one_based_ok && residual_ok ? Status::pass : Status::fail;
  rep.wall_seconds = elapsed(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma 5: pointwise lower bound on the two-ones cell families.

ExperimentReport verify_lemma5(const Lemma5Options& opt, bool corrupt) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = "lemma5";
  rep.params["A_values"] = opt.A_values;
  rep.params["measure_A"] = opt.measure_A;
  rep.params["conventions"] = conv_list(opt.conventions);
  rep.params["corrupted"] = corrupt;

  ordered_json by_conv = ordered_json::array();
  std::vector<const char*> passing;
  for (Convention conv : opt.conventions) {
    bool conv_ok = true;
    ordered_json per_A = ordered_json::array();
    for (int A : opt.A_values) {
      if (A < 3) throw ParameterError("lemma5: A must be >= 3 (empty family otherwise)");
      const int M = 2 * A;
      const std::uint64_t q = q_seq(A - 1);
      const FejerKernel K = fejer(System::paley, q, M, conv);
      Rat min_ratio;
      bool first = true;
      ordered_json min_at;
      for (int m = 0; m <= A - 3; ++m) {
        for (int s = m + 2; s <= A - 1; ++s) {
          const int shift = 2 * m + 2 * s - 3 + (corrupt ? 2 : 0);
          const std::int64_t bound = std::int64_t{1} << shift;
          PatternSet pat(M);
          for (int k = 0; k <= 2 * s; ++k) pat.set(k, Coord::Zero);
          pat.set(2 * m, Coord::One);
          pat.set(2 * s, Coord::One);
          for (Cell u : pat.cells()) {
            const std::int64_t v = iabs(K.scaled[u]);
            Rat r(v, static_cast<std::uint64_t>(bound));
            r.canonicalize();
            if (first || r < min_ratio) {
              min_ratio = r;
              first = false;
              min_at = ordered_json{{"m", m}, {"s", s}, {"cell", u}};
            }
            if (v < bound) {
              conv_ok = false;
              if (rep.witnesses.size() < 4) {
                ordered_json w;
                w["convention"] = to_string(conv);
                w["A"] = A;
                w["m"] = m;
                w["s"] = s;
                w["cell"] = u;
                w["scaled_kernel"] = v;
                w["bound"] = bound;
                rep.witnesses.push_back(w);
              }
            }
          }
        }
      }
      ordered_json row;
      row["A"] = A;
      row["q"] = q;
      row["min_ratio"] = rat_entry(min_ratio);
      row["min_at"] = min_at;
      per_A.push_back(row);
    }
    ordered_json c;
    c["convention"] = to_string(conv);
    c["pass"] = conv_ok;
    c["per_A"] = per_A;
    by_conv.push_back(c);
    if (conv_ok) passing.push_back(to_string(conv));
  }
  rep.constants["by_convention"] = by_conv;
  rep.constants["conventions_passing"] = passing;
  rep.constants["recorded_convention"] =
      passing.empty() ? ordered_json(nullptr) : ordered_json(passing.front());

  // total measure of the families per A (informative; bounded below in A)
  ordered_json measures = ordered_json::array();
  Rat min_measure;
  bool first = true;
  for (int A : opt.measure_A) {
    Rat total(0);
    for (int m = 0; m <= A - 3; ++m)
      for (int s = m + 2; s <= A - 1; ++s)
        total += Rat(1, std::uint64_t{1} << (2 * s + 1));
    total.canonicalize();
    ordered_json e;
    e["A"] = A;
    e["measure"] = rat_entry(total);
    measures.push_back(e);
    if (first || total < min_measure) {
      min_measure = total;
      first = false;
    }
  }
  rep.constants["family_measure"] = measures;
  if (!first) rep.constants["family_measure_lower_bound"] = rat_entry(min_measure);

  rep.status = passing.empty() ? Status::fail : Status::pass;
  rep.wall_seconds = elapsed(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem 1 evidence: the atom sweep.

ExperimentReport atom_sweep_theorem1(const Theorem1Options& opt, bool corrupt) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = "thm1";
  rep.params["p"] = opt.p;
  rep.params["N_values"] = opt.N_values;
  rep.params["resolution"] = opt.M;
  rep.params["n_max"] = opt.n_max;
  rep.params["trials"] = opt.trials;
  rep.params["seed"] = opt.seed;
  rep.params["bounded_trials"] = opt.bounded_trials;
  rep.params["growth_factor"] = opt.growth_factor;
  rep.params["convention"] = "zero-based";
  rep.params["corrupted"] = corrupt;
  const WeightSpec wspec = WeightSpec::power(opt.p);  // validates p
  if (opt.N_values.empty() || opt.trials < 1)
    throw ParameterError("atom sweep: need at least one N and one trial");
  const Convention conv = Convention::zero_based;

  // a priori sup-norm constant: |sigma_n f| <= |K_n|_1 |f|_inf
  double c_bound = 0;
  for (std::uint64_t n = 1; n <= opt.n_max; ++n)
    c_bound = std::max(c_bound, kernel_l1_norm(System::kaczmarz, n, opt.M, conv) /
                                    weight(wspec, n));

  bool zeros_ok = true;
  std::vector<double> stats;
  std::vector<int> argmax;
  for (std::size_t iN = 0; iN < opt.N_values.size(); ++iN) {
    const int N = opt.N_values[iN];
    double best = 0;
    int best_seed = -1;
    for (int t = 0; t < opt.trials; ++t) {
      AtomSpec a = make_atom(N, opt.p, opt.M, opt.seed + t);
      if (corrupt && iN == 0 && t == 0)
        a.values[0] += 1;  // breaks the exact mean-zero axiom
      else
        validate_atom(a);

      // exact check sigma_n a = 0 for all n <= 2^N: with the zero-based
      // multiplier (n-1-idx)^+/n this holds iff no coefficient sits at a
      // system index below 2^N - 1
      const CoeffVector<Rat> c = fwht(a.values);
      std::uint64_t idx_min = UINT64_MAX;
      for (std::uint64_t j = 0; j < c.coeffs.size(); ++j)
        if (c.coeffs[j] != 0)
          idx_min = std::min(idx_min, system_index(System::kaczmarz, j));
      if (idx_min != UINT64_MAX && idx_min + 1 < (std::uint64_t{1} << N)) {
        zeros_ok = false;
        if (rep.witnesses.empty()) {
          const std::uint64_t bad_n = idx_min + 2;  // smallest broken mean
          const GridFn<Rat> sig = fejer_mean(a.values, System::kaczmarz, bad_n, conv);
          for (Cell u = 0; u < sig.size(); ++u) {
            if (sig[u] != 0) {
              ordered_json w;
              w["check"] = "sigma_n(atom) = 0 for n <= 2^N";
              w["N"] = N;
              w["seed"] = opt.seed + t;
              w["n"] = bad_n;
              w["cell"] = u;
              w["value"] = rat_to_string(sig[u]);
              rep.witnesses.push_back(w);
              break;
            }
          }
        }
      }

      const GridFn<double> g = maximal_fejer(to_float(a.values), System::kaczmarz,
                                             opt.n_max, wspec, conv, opt.jobs);
      const Cell mask = (Cell{1} << N) - 1;
      double s = 0;
      for (Cell u = 0; u < g.size(); ++u)
        if (u & mask) s += std::pow(g[u], opt.p);
      s /= static_cast<double>(g.size());
      if (s > best) {
        best = s;
        best_seed = t;
      }
    }
    stats.push_back(best);
    argmax.push_back(best_seed);
  }

  ordered_json sweep;
  sweep["N"] = opt.N_values;
  sweep["max_stat"] = stats;
  sweep["argmax_seed"] = argmax;
  rep.constants["complement_integral"] = sweep;

  bool growth_ok = true;
  if (stats.size() >= 2) {
    double prior = 0;
    for (std::size_t i = 0; i + 1 < stats.size(); ++i) prior = std::max(prior, stats[i]);
    const double last = stats.back();
    growth_ok = last <= opt.growth_factor * prior;
    ordered_json g;
    g["largest_N_stat"] = last;
    g["max_over_smaller_N"] = prior;
    g["ratio"] = prior > 0 ? last / prior : 0.0;
    g["factor"] = opt.growth_factor;
    g["ok"] = growth_ok;
    rep.constants["no_growth_check"] = g;
  }
  rep.constants["zero_check_ok"] = zeros_ok;

  // sup-norm ratio over random bounded functions vs the derived constant
  std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
  double c_fit = 0;
  for (int t = 0; t < opt.bounded_trials; ++t) {
    GridFn<double> f(opt.M);
    double sup_f = 0;
    for (Cell u = 0; u < f.size(); ++u) {
      const double x = static_cast<double>(rng() >> 11) * 0x1p-53;  // [0,1)
      f[u] = 2.0 * x - 1.0;
      sup_f = std::max(sup_f, std::abs(f[u]));
    }
    if (sup_f == 0) continue;
    const GridFn<double> g =
        maximal_fejer(f, System::kaczmarz, opt.n_max, wspec, conv, opt.jobs);
    double sup_g = 0;
    for (Cell u = 0; u < g.size(); ++u) sup_g = std::max(sup_g, g[u]);
    c_fit = std::max(c_fit, sup_g / sup_f);
  }
  const bool linf_ok = c_fit <= c_bound * (1 + 1e-9);
  ordered_json linf;
  linf["fitted_c"] = c_fit;
  linf["kernel_bound"] = c_bound;
  linf["ok"] = linf_ok;
  rep.constants["sup_norm_ratio"] = linf;

  rep.status = zeros_ok && growth_ok && linf_ok ? Status::pass : Status::fail;
  rep.wall_seconds = elapsed(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem 2: divergence construction.

ExperimentReport counterexample_growth(const Theorem2Options& opt, bool corrupt) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.experiment = "thm2";
  rep.params["p"] = opt.p;
  rep.params["phi"] = to_string(opt.phi.kind);
  if (opt.phi.kind == WeightSpec::Kind::power) rep.params["phi_p"] = opt.phi.p;
  rep.params["m_min"] = opt.m_min;
  rep.params["m_max"] = opt.m_max;
  rep.params["convention"] = "zero-based";
  rep.params["corrupted"] = corrupt;
  if (!(opt.p > 0 && opt.p < 0.5))
    throw ParameterError("counterexample growth: p must lie in (0, 1/2)");
  if (opt.m_min < 1 || opt.m_min > opt.m_max)
    throw ParameterError("counterexample growth: need 1 <= m_min <= m_max");
  const Convention conv = Convention::zero_based;

  ordered_json rows = ordered_json::array();
  std::vector<double> R;
  bool reduction_ok = true, hardy_ok = true;
  for (int m = opt.m_min; m <= opt.m_max; ++m) {
    const int M = 2 * m + 1;  // minimal resolution; R(m) is resolution-invariant
    const GridFn<Rat> f = counterexample(m, M);
    const std::uint64_t q = q_seq(m);
    const std::uint64_t q_prev = q_seq(m - 1);
    const GridFn<Rat> sigma = fejer_mean(f, System::kaczmarz, q, conv);

    // exact reduction: |sigma_{q_m} f_m| = (q_{m-1}/q_m)|K^w_{q_{m-1}} o tau_{2m}|
    const FejerKernel Kw =
        fejer(System::paley, corrupt ? q_prev + 1 : q_prev, M, conv);
    bool red = true;
    for (Cell u = 0; u < sigma.size(); ++u) {
      const Rat lhs = ::abs(sigma[u]);
      Rat rhs(iabs(Kw.scaled[tau(2 * m, u)]), q);
      rhs.canonicalize();
      if (lhs != rhs) {
        red = false;
        if (rep.witnesses.size() < 4) {
          ordered_json w;
          w["check"] = "kernel reduction";
          w["m"] = m;
          w["cell"] = u;
          w["sigma"] = rat_to_string(lhs);
          w["reduction"] = rat_to_string(rhs);
          rep.witnesses.push_back(w);
        }
        break;
      }
    }
    if (m <= 3 && !red) reduction_ok = false;  // asserted range; m = 4 recorded

    const double wl = weak_lp(sigma, opt.p);
    const double hn = hardy_norm(f, opt.p);
    const double he = std::exp2(2.0 * m * (1.0 - 1.0 / opt.p));
    if (std::abs(hn - he) > 1e-12 * he) {
      hardy_ok = false;
      ordered_json w;
      w["check"] = "hardy norm closed form";
      w["m"] = m;
      w["hardy"] = hn;
      w["expected"] = he;
      rep.witnesses.push_back(w);
    }
    const double Rm = wl / (weight(opt.phi, q) * hn);
    R.push_back(Rm);

    ordered_json row;
    row["m"] = m;
    row["resolution"] = M;
    row["q"] = q;
    row["weak_lp"] = wl;
    row["hardy"] = hn;
    row["R"] = Rm;
    row["reduction_exact"] = red;
    rows.push_back(row);
  }
  rep.constants["per_m"] = rows;

  // condition on the weight: q^{1/p-2}/phi(q) must grow along the sequence
  bool condition_ok = true;
  {
    double prev = -1;
    ordered_json vals = ordered_json::array();
    for (int m = opt.m_min; m <= opt.m_max; ++m) {
      const std::uint64_t q = q_seq(m);
      const double v =
          std::pow(static_cast<double>(q), 1.0 / opt.p - 2.0) / weight(opt.phi, q);
      vals.push_back(v);
      if (v <= prev) condition_ok = false;
      prev = v;
    }
    rep.constants["weight_condition_values"] = vals;
    rep.constants["weight_condition_ok"] = condition_ok;
  }

  bool increasing = true;
  for (std::size_t i = 1; i < R.size(); ++i)
    if (!(R[i] > R[i - 1])) increasing = false;
  rep.constants["R_strictly_increasing"] = increasing;

  // least-squares slope of log2 R(m) against m; R ~ 2^{2m(1/p-2)} predicts
  // slope/2 = 1/p - 2
  double fitted = 0;
  bool fit_ok = false;
  {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < R.size(); ++i)
      if (R[i] > 0) {
        xs.push_back(static_cast<double>(opt.m_min + static_cast<int>(i)));
        ys.push_back(std::log2(R[i]));
      }
    if (xs.size() >= 2) {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
      }
      mx /= static_cast<double>(xs.size());
      my /= static_cast<double>(xs.size());
      double num = 0, den = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
      }
      fitted = num / den / 2.0;
      const double target = 1.0 / opt.p - 2.0;
      fit_ok = std::abs(fitted - target) <= 0.25 * target;
      ordered_json fit;
      fit["fitted_exponent"] = fitted;
      fit["target_exponent"] = target;
      fit["within_25_percent"] = fit_ok;
      rep.constants["growth_fit"] = fit;
    }
  }

  if (!reduction_ok || !hardy_ok)
    rep.status = Status::fail;
  else if (!condition_ok)
    rep.status = Status::informative;  // divergence not claimed for this weight
  else
    rep.status = increasing && fit_ok ? Status::pass : Status::fail;
  rep.wall_seconds = elapsed(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch.

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"lemma2", "lemma3", "lemma4",
                                               "lemma5", "thm1",   "thm2"};
  return ids;
}

ExperimentReport run_experiment(const std::string& id, bool corrupt, int jobs) {
  if (id == "lemma2") return verify_lemma2({}, corrupt);
  if (id == "lemma3") return verify_lemma3({}, corrupt);
  if (id == "lemma4") return verify_lemma4({}, corrupt);
  if (id == "lemma5") return verify_lemma5({}, corrupt);
  if (id == "thm1") {
    Theorem1Options opt;
    opt.jobs = jobs;
    return atom_sweep_theorem1(opt, corrupt);
  }
  if (id == "thm2") return counterexample_growth({}, corrupt);
  throw ParameterError("unknown experiment id: " + id);
}

std::vector<ExperimentReport> run_all(int jobs) {
  std::vector<ExperimentReport> out;
  for (const std::string& id : experiment_ids())
    out.push_back(run_experiment(id, false, jobs));
  return out;
}

std::vector<ExperimentReport> self_test(int jobs) {
  std::vector<ExperimentReport> out;
  for (const std::string& id : experiment_ids())
    out.push_back(run_experiment(id, true, jobs));
  return out;
}

bool self_test_ok(const std::vector<ExperimentReport>& reports) {
  for (const ExperimentReport& r : reports)
    if (r.status != Status::fail) return false;
  return !reports.empty();
}

}  // namespace walsh
