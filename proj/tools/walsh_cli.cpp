// Command-line frontend: kernels, transforms, means, maximal operators,
// norms, atoms, system tables and the verification experiments, with
// reproducible JSON/CSV output (schema_version + config echoed into every
// document; wall times appear only on the summary line).
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "walsh/io.hpp"
#include "walsh/kernels.hpp"
#include "walsh/operators.hpp"
#include "walsh/spaces.hpp"
#include "walsh/systems.hpp"
#include "walsh/transform.hpp"
#include "walsh/verify.hpp"

namespace {

using walsh::ordered_json;

constexpr int kSchemaVersion = 1;

walsh::Convention single_convention(const std::string& s) {
  if (s == "zero-based") return walsh::Convention::zero_based;
  if (s == "one-based") return walsh::Convention::one_based;
  throw walsh::ParameterError("this command needs one convention, got: " + s);
}

std::vector<walsh::Convention> convention_set(const std::string& s) {
  if (s == "both")
    return {walsh::Convention::zero_based, walsh::Convention::one_based};
  return {single_convention(s)};
}

walsh::System parse_system(const std::string& s) {
  if (s == "paley") return walsh::System::paley;
  if (s == "kaczmarz") return walsh::System::kaczmarz;
  throw walsh::ParameterError("unknown system: " + s);
}

// ---- output plumbing ------------------------------------------------------

struct Sink {
  std::string out;            // empty: document to stdout, summary to stderr
  std::string format = "json";
};

void flatten(const ordered_json& j, const std::string& prefix,
             std::string& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", rows);
  } else {
    rows += prefix;
    rows += ',';
    rows += j.is_string() ? j.get<std::string>() : j.dump();
    rows += '\n';
  }
}

std::string csv_header(const ordered_json& config) {
  return "# schema_version: " + std::to_string(kSchemaVersion) +
         "\n# config: " + config.dump() + "\n";
}

// body_csv: pre-rendered CSV body for format=csv; payload: the JSON payload
// under `key` for format=json.
void emit(const Sink& sink, const ordered_json& config, const char* key,
          const ordered_json& payload, const std::string& body_csv,
          const std::string& summary) {
  std::string text;
  if (sink.format == "json") {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = config;
    doc[key] = payload;
    text = doc.dump(2);
    text += '\n';
  } else {
    text = csv_header(config) + body_csv;
  }
  if (sink.out.empty()) {
    std::cout << text;
    std::cerr << summary << "\n";
  } else {
    walsh::write_text_file(sink.out, text);
    std::cout << summary << " -> " << sink.out << "\n";
  }
}

std::string report_csv(const ordered_json& payload) {
  std::string rows = "field,value\n";
  flatten(payload, "", rows);
  return rows;
}

ordered_json load_document(const std::string& path) {
  const std::string text = walsh::read_text_file(path);
  ordered_json j = ordered_json::parse(text, nullptr, true);
  if (j.is_object() && j.contains("grid")) return j["grid"];
  if (j.is_object() && j.contains("atom") && j["atom"].contains("grid"))
    return j["atom"]["grid"];
  return j;
}

// ---- per-subcommand state -------------------------------------------------

struct Args {
  // shared
  int resolution = -1;
  std::string system = "paley";
  std::string convention = "both";
  std::string in_path;
  Sink sink;
  int jobs = 0;  // 0: library decides (thm1 only)

  // kernel / mean / maximal / transform
  std::uint64_t n = 1;
  bool closed_form = false;
  std::string weight = "power";
  double p = 0.25;
  std::uint64_t n_max = 0;  // 0: default (2^M or experiment default)

  // norm / atom
  std::string kind = "lp";
  int N = 2;
  std::uint64_t seed = 0;

  // verify
  std::string experiment;
  std::vector<int> m_range;
  int trials = 100;

  // systems
  std::string what = "table";
};

ordered_json base_config(const std::string& sub, const Args& a) {
  ordered_json c;
  c["subcommand"] = sub;
  c["format"] = a.sink.format;
  return c;
}

walsh::WeightSpec make_weight(const Args& a) {
  if (a.weight == "unit") return walsh::WeightSpec::unit();
  if (a.weight == "log2sq") return walsh::WeightSpec::log2sq();
  if (a.weight == "power") return walsh::WeightSpec::power(a.p);
  throw walsh::ParameterError("unknown weight kind: " + a.weight);
}

// ---- subcommand runners ---------------------------------------------------

int run_kernel(const Args& a) {
  const int M = a.resolution < 0 ? 8 : a.resolution;
  const walsh::Convention conv =
      single_convention(a.convention == "both" ? "zero-based" : a.convention);
  const walsh::System sys = parse_system(a.system);
  ordered_json config = base_config("kernel", a);
  config["system"] = walsh::to_string(sys);
  config["n"] = a.n;
  config["resolution"] = M;
  config["convention"] = walsh::to_string(conv);
  config["closed_form"] = a.closed_form;

  walsh::GridFn<walsh::Rat> g(M);
  if (a.closed_form) {
    if (sys != walsh::System::paley)
      throw walsh::ParameterError("closed form: only the paley kernel has one here");
    if (a.n == 0 || (a.n & (a.n - 1)) != 0)
      throw walsh::ParameterError("closed form: n must be a power of two");
    const int A = walsh::msb(a.n);
    if (A > M) throw walsh::ResolutionError("closed form: n exceeds 2^M");
    for (walsh::Cell z = 0; z < g.size(); ++z)
      g[z] = walsh::fejer_closed_2pow_paley(A, z, M, conv);
  } else {
    g = walsh::fejer(sys, a.n, M, conv).grid<walsh::Rat>();
  }
  emit(a.sink, config, "grid", walsh::grid_to_json(g), walsh::grid_to_csv(g),
       "[kernel] n=" + std::to_string(a.n) + " M=" + std::to_string(M));
  return 0;
}

int run_transform(const Args& a) {
  const walsh::System sys = parse_system(a.system);
  ordered_json config = base_config("transform", a);
  config["system"] = walsh::to_string(sys);
  config["in"] = a.in_path;
  const ordered_json gj = load_document(a.in_path);
  ordered_json payload;
  std::string csv;
  if (walsh::json_grid_is_exact(gj)) {
    const auto c = walsh::fourier_coeffs(walsh::grid_rat_from_json(gj), sys);
    payload = walsh::coeffs_to_json(c);
  } else {
    const auto c = walsh::fourier_coeffs(walsh::grid_float_from_json(gj), sys);
    payload = walsh::coeffs_to_json(c);
  }
  {
    // CSV view of a coefficient vector: index,value
    csv = "# coefficients, ordering: " + std::string(walsh::to_string(sys)) + "\n";
    csv += "index,value\n";
    std::size_t i = 0;
    for (const auto& v : payload["values"])
      csv += std::to_string(i++) + "," +
             (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  emit(a.sink, config, "coeffs", payload, csv, "[transform] " + a.in_path);
  return 0;
}

int run_mean(const Args& a) {
  const walsh::System sys = parse_system(a.system);
  const walsh::Convention conv =
      single_convention(a.convention == "both" ? "zero-based" : a.convention);
  ordered_json config = base_config("mean", a);
  config["system"] = walsh::to_string(sys);
  config["n"] = a.n;
  config["convention"] = walsh::to_string(conv);
  config["in"] = a.in_path;
  const ordered_json gj = load_document(a.in_path);
  ordered_json payload;
  std::string csv;
  if (walsh::json_grid_is_exact(gj)) {
    const auto g = walsh::fejer_mean(walsh::grid_rat_from_json(gj), sys, a.n, conv);
    payload = walsh::grid_to_json(g);
    csv = walsh::grid_to_csv(g);
  } else {
    const auto g = walsh::fejer_mean(walsh::grid_float_from_json(gj), sys, a.n, conv);
    payload = walsh::grid_to_json(g);
    csv = walsh::grid_to_csv(g);
  }
  emit(a.sink, config, "grid", payload, csv, "[mean] n=" + std::to_string(a.n));
  return 0;
}

int run_maximal(const Args& a) {
  const walsh::System sys = parse_system(a.system);
  const walsh::Convention conv =
      single_convention(a.convention == "both" ? "zero-based" : a.convention);
  const walsh::WeightSpec w = make_weight(a);
  ordered_json config = base_config("maximal", a);
  config["system"] = walsh::to_string(sys);
  config["weight"] = a.weight;
  if (a.weight == "power") config["p"] = a.p;
  config["convention"] = walsh::to_string(conv);
  config["in"] = a.in_path;
  const ordered_json gj = load_document(a.in_path);
  const walsh::GridFn<double> f = walsh::json_grid_is_exact(gj)
                                      ? walsh::to_float(walsh::grid_rat_from_json(gj))
                                      : walsh::grid_float_from_json(gj);
  const std::uint64_t n_max = a.n_max == 0 ? f.size() : a.n_max;
  config["n_max"] = n_max;
  const int jobs = a.jobs > 0
                       ? a.jobs
                       : static_cast<int>(std::thread::hardware_concurrency());
  const auto g = walsh::maximal_fejer(f, sys, n_max, w, conv, jobs < 1 ? 1 : jobs);
  emit(a.sink, config, "grid", walsh::grid_to_json(g), walsh::grid_to_csv(g),
       "[maximal] n_max=" + std::to_string(n_max));
  return 0;
}

int run_norm(const Args& a) {
  ordered_json config = base_config("norm", a);
  config["kind"] = a.kind;
  config["p"] = a.p;
  config["in"] = a.in_path;
  const ordered_json gj = load_document(a.in_path);
  double value = 0;
  auto compute = [&](const auto& f) {
    if (a.kind == "lp") return walsh::lp_quasinorm(f, a.p);
    if (a.kind == "weak") return walsh::weak_lp(f, a.p);
    if (a.kind == "hardy") return walsh::hardy_norm(f, a.p);
    throw walsh::ParameterError("unknown norm kind: " + a.kind);
  };
  if (walsh::json_grid_is_exact(gj))
    value = compute(walsh::grid_rat_from_json(gj));
  else
    value = compute(walsh::grid_float_from_json(gj));
  ordered_json payload;
  payload["kind"] = a.kind;
  payload["p"] = a.p;
  payload["value"] = value;
  emit(a.sink, config, "result", payload, report_csv(payload),
       "[norm] " + a.kind + " = " + std::to_string(value));
  return 0;
}

int run_atom(const Args& a) {
  const int M = a.resolution < 0 ? a.N + 3 : a.resolution;
  ordered_json config = base_config("atom", a);
  config["N"] = a.N;
  config["p"] = a.p;
  config["seed"] = a.seed;
  config["resolution"] = M;
  const walsh::AtomSpec atom = walsh::make_atom(a.N, a.p, M, a.seed);
  walsh::validate_atom(atom);
  ordered_json payload;
  payload["N"] = atom.N;
  payload["p"] = atom.p;
  payload["seed"] = a.seed;
  payload["amplitude_exponent"] = walsh::atom_amplitude_exponent(a.N, a.p);
  payload["grid"] = walsh::grid_to_json(atom.values);
  emit(a.sink, config, "atom", payload, walsh::grid_to_csv(atom.values),
       "[atom] N=" + std::to_string(a.N) + " seed=" + std::to_string(a.seed));
  return 0;
}

int run_systems(const Args& a) {
  if (a.what != "table")
    throw walsh::ParameterError("systems: unknown table kind: " + a.what);
  const int M = a.resolution < 0 ? 4 : a.resolution;
  const std::uint64_t n_max =
      a.n_max == 0 ? std::uint64_t{1} << M : a.n_max;
  if (n_max > (std::uint64_t{1} << M))
    throw walsh::ResolutionError("systems: n_max exceeds 2^M");
  ordered_json config = base_config("systems", a);
  config["n_max"] = n_max;
  config["resolution"] = M;

  ordered_json payload;
  ordered_json map = ordered_json::array();
  for (std::uint64_t n = 0; n < n_max; ++n)
    map.push_back(walsh::kaczmarz_to_paley(n));
  payload["map"] = map;
  ordered_json sp = ordered_json::array(), sk = ordered_json::array();
  for (std::uint64_t n = 0; n < n_max; ++n) {
    ordered_json rp = ordered_json::array(), rk = ordered_json::array();
    for (walsh::Cell u = 0; u < (walsh::Cell{1} << M); ++u) {
      rp.push_back(walsh::walsh_paley(n, u, M));
      rk.push_back(walsh::kaczmarz(n, u, M));
    }
    sp.push_back(rp);
    sk.push_back(rk);
  }
  payload["signs"] = ordered_json{{"paley", sp}, {"kaczmarz", sk}};

  std::string csv = "# table: map\nn,map\n";
  for (std::uint64_t n = 0; n < n_max; ++n)
    csv += std::to_string(n) + "," + std::to_string(walsh::kaczmarz_to_paley(n)) + "\n";
  csv += "# table: signs\nn,u,paley,kaczmarz\n";
  for (std::uint64_t n = 0; n < n_max; ++n)
    for (walsh::Cell u = 0; u < (walsh::Cell{1} << M); ++u)
      csv += std::to_string(n) + "," + std::to_string(u) + "," +
             std::to_string(walsh::walsh_paley(n, u, M)) + "," +
             std::to_string(walsh::kaczmarz(n, u, M)) + "\n";
  emit(a.sink, config, "tables", payload, csv,
       "[systems] n_max=" + std::to_string(n_max) + " M=" + std::to_string(M));
  return 0;
}

int run_verify(const Args& a, const CLI::App* sub) {
  const auto has = [&](const char* name) { return sub->count(name) > 0; };
  const int jobs = a.jobs > 0 ? a.jobs : 1;
  std::vector<walsh::ExperimentReport> reports;
  const bool selftest = a.experiment == "selftest";

  if (a.experiment == "all") {
    reports = walsh::run_all(jobs);
  } else if (selftest) {
    reports = walsh::self_test(jobs);
  } else if (a.experiment == "lemma2") {
    walsh::Lemma2Options o;
    if (has("--convention")) o.conventions = convention_set(a.convention);
    reports.push_back(walsh::verify_lemma2(o));
  } else if (a.experiment == "lemma3") {
    walsh::Lemma3Options o;
    if (has("--convention") && a.convention != "both")
      o.convention = single_convention(a.convention);
    reports.push_back(walsh::verify_lemma3(o));
  } else if (a.experiment == "lemma4") {
    walsh::Lemma4Options o;
    if (has("--n-max")) o.n_max = a.n_max;
    if (has("--convention")) o.conventions = convention_set(a.convention);
    reports.push_back(walsh::verify_lemma4(o));
  } else if (a.experiment == "lemma5") {
    walsh::Lemma5Options o;
    if (has("--convention")) o.conventions = convention_set(a.convention);
    reports.push_back(walsh::verify_lemma5(o));
  } else if (a.experiment == "thm1") {
    if (has("--convention") && a.convention != "both" &&
        a.convention != "zero-based")
      throw walsh::ParameterError("thm1 runs under the zero-based convention");
    walsh::Theorem1Options o;
    if (has("--p")) o.p = a.p;
    if (has("--n-max")) o.n_max = a.n_max;
    if (has("--trials")) o.trials = a.trials;
    if (has("--seed")) o.seed = a.seed;
    o.jobs = jobs;
    reports.push_back(walsh::atom_sweep_theorem1(o));
  } else if (a.experiment == "thm2") {
    if (has("--convention") && a.convention != "both" &&
        a.convention != "zero-based")
      throw walsh::ParameterError("thm2 runs under the zero-based convention");
    walsh::Theorem2Options o;
    if (has("--p")) o.p = a.p;
    if (has("--weight")) o.phi = make_weight(a);
    if (!a.m_range.empty()) {
      o.m_min = a.m_range[0];
      o.m_max = a.m_range[1];
    }
    reports.push_back(walsh::counterexample_growth(o));
  } else {
    throw walsh::ParameterError("unknown experiment: " + a.experiment);
  }

  ordered_json config = base_config("verify", a);
  config["experiment"] = a.experiment;
  for (const char* flag : {"--p", "--n-max", "--trials", "--seed", "--convention",
                           "--weight"}) {
    if (!has(flag)) continue;
    const std::string key = std::string(flag).substr(2);
    if (key == "p") config["p"] = a.p;
    else if (key == "n-max") config["n_max"] = a.n_max;
    else if (key == "trials") config["trials"] = a.trials;
    else if (key == "seed") config["seed"] = a.seed;
    else if (key == "convention") config["convention"] = a.convention;
    else if (key == "weight") config["weight"] = a.weight;
  }
  if (!a.m_range.empty()) config["m_range"] = a.m_range;

  ordered_json payload;
  const char* key;
  if (reports.size() == 1) {
    key = "report";
    payload = reports.front().to_json();
  } else {
    key = "reports";
    payload = ordered_json::array();
    for (const auto& r : reports) payload.push_back(r.to_json());
  }

  std::string summary;
  bool any_fail = false;
  for (const auto& r : reports) {
    if (!summary.empty()) summary += "\n";
    if (selftest) {
      const bool detected = r.status == walsh::Status::fail;
      summary += "[selftest " + r.experiment + "] " +
                 (detected ? "injected corruption detected"
                           : "injected corruption NOT detected");
      if (!detected) any_fail = true;
    } else {
      summary += r.summary();
      if (r.status == walsh::Status::fail) any_fail = true;
    }
  }
  emit(a.sink, config, key, payload, report_csv(payload), summary);
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh system Fejer analysis toolkit"};
  app.require_subcommand(1);
  Args a;

  const auto add_sink = [&](CLI::App* s) {
    s->add_option("--format", a.sink.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", a.sink.out, "Output path (default: stdout)");
  };
  const auto add_convention = [&](CLI::App* s) {
    s->add_option("--convention", a.convention,
                  "Fejer convention: zero-based, one-based or both")
        ->check(CLI::IsMember({"zero-based", "one-based", "both"}));
  };

  CLI::App* kernel = app.add_subcommand("kernel", "Fejer kernel as an exact grid");
  kernel->add_option("--system", a.system)->check(CLI::IsMember({"paley", "kaczmarz"}));
  kernel->add_option("--n", a.n, "Kernel index")->required();
  kernel->add_option("--resolution", a.resolution, "Grid resolution M");
  kernel->add_flag("--closed-form", a.closed_form,
                   "Evaluate the piecewise closed form (n = 2^A, paley)");
  add_convention(kernel);
  add_sink(kernel);

  CLI::App* transform = app.add_subcommand("transform", "Fourier coefficients of a grid");
  transform->add_option("--in", a.in_path, "Input grid (JSON)")->required();
  transform->add_option("--system", a.system)->check(CLI::IsMember({"paley", "kaczmarz"}));
  add_sink(transform);

  CLI::App* mean = app.add_subcommand("mean", "Fejer mean sigma_n of a grid");
  mean->add_option("--in", a.in_path, "Input grid (JSON)")->required();
  mean->add_option("--system", a.system)->check(CLI::IsMember({"paley", "kaczmarz"}));
  mean->add_option("--n", a.n, "Mean index")->required();
  add_convention(mean);
  add_sink(mean);

  CLI::App* maximal = app.add_subcommand("maximal", "Weighted truncated maximal operator");
  maximal->add_option("--in", a.in_path, "Input grid (JSON)")->required();
  maximal->add_option("--system", a.system)->check(CLI::IsMember({"paley", "kaczmarz"}));
  maximal->add_option("--weight", a.weight)->check(CLI::IsMember({"unit", "log2sq", "power"}));
  maximal->add_option("--p", a.p, "Exponent for the power weight");
  maximal->add_option("--n-max", a.n_max, "Truncation (default 2^M)");
  maximal->add_option("--jobs", a.jobs, "Worker cap (default: cores)");
  add_convention(maximal);
  add_sink(maximal);

  CLI::App* norm = app.add_subcommand("norm", "L_p / weak-L_p / Hardy quasinorm");
  norm->add_option("--kind", a.kind)->check(CLI::IsMember({"lp", "weak", "hardy"}));
  norm->add_option("--p", a.p, "Exponent")->required();
  norm->add_option("--in", a.in_path, "Input grid (JSON)")->required();
  add_sink(norm);

  CLI::App* atom = app.add_subcommand("atom", "Generate a p-atom");
  atom->add_option("--N", a.N, "Support level")->required();
  atom->add_option("--p", a.p, "Atom exponent in (0,1)")->required();
  atom->add_option("--seed", a.seed, "Seed (0: two-level deterministic atom)");
  atom->add_option("--resolution", a.resolution, "Grid resolution (default N+3)");
  add_sink(atom);

  CLI::App* systems = app.add_subcommand("systems", "Index map and sign tables");
  systems->add_option("what", a.what, "Table kind")->check(CLI::IsMember({"table"}));
  systems->add_option("--n-max", a.n_max, "Indices to tabulate (default 2^M)");
  systems->add_option("--resolution", a.resolution, "Grid resolution M (default 4)");
  add_sink(systems);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification experiment");
  verify->add_option("experiment", a.experiment, "Experiment id")
      ->required()
      ->check(CLI::IsMember({"lemma2", "lemma3", "lemma4", "lemma5", "thm1",
                             "thm2", "all", "selftest"}));
  verify->add_option("--p", a.p, "Exponent (thm1, thm2)");
  verify->add_option("--m-range", a.m_range, "m range lo hi (thm2)")->expected(2);
  verify->add_option("--n-max", a.n_max, "Index range top (lemma4, thm1)");
  verify->add_option("--trials", a.trials, "Atoms per N (thm1)");
  verify->add_option("--seed", a.seed, "Base seed (thm1)");
  verify->add_option("--weight", a.weight, "Weight phi (thm2)")
      ->check(CLI::IsMember({"unit", "log2sq", "power"}));
  verify->add_option("--jobs", a.jobs, "Worker cap");
  add_convention(verify);
  add_sink(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (*kernel) return run_kernel(a);
    if (*transform) return run_transform(a);
    if (*mean) return run_mean(a);
    if (*maximal) return run_maximal(a);
    if (*norm) return run_norm(a);
    if (*atom) return run_atom(a);
    if (*systems) return run_systems(a);
    if (*verify) return run_verify(a, verify);
  } catch (const walsh::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const walsh::ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
