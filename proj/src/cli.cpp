#include "fcedge/cli.hpp"

#include "fcedge/beta_poly.hpp"
#include "fcedge/combinatorics.hpp"
#include "fcedge/edge.hpp"
#include "fcedge/moments.hpp"
#include "fcedge/montecarlo.hpp"
#include "fcedge/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <locale>
#include <optional>
#include <sstream>

namespace fcedge {

namespace {

using nlohmann::ordered_json;

constexpr const char* kFormulaMap = R"(Formula to command map:
  edge        u_m = (m+1)^(m+1) / m^m, the right end of the limiting support
  moments     n^(mk+1) G(m,n,k) by the gamma-ratio sum, the falling-factorial
              sum and the Stirling/beta form; FC_m(k) = C(mk+k,k)/(mk+1) and
              the gap G - FC_m(k)
  beta        beta_r = [x^r] prod_{i<k} (1 - i/n + x)^(m+1) with the bounds
              C(K,r)(1-(k-1)/n)^(K-r) <= beta_r <= C(K,r), K = k(m+1)
  dominance   t_r = n^-r beta_r {r brace k-1} and t_{r+1}/t_r against
              ((m+1)/2)(r+1)^2 / n
  tailbound   P(s_1^2 >= z) <= n G(m,n,k_n) / z^k_n with k_n = ceil(w log n),
              w > 3 / log(z/u_m); surrogate log n - 1.5 log k_n + k_n log(u_m/z)
              against -2 log n
  simulate    squared singular values of W_1...W_m, empirical moments
              (1/n) sum s_i^(2k) and s_1^2 statistics
  converge    mean s_1^2 and u_m - mean across an n grid
  verify      all exact identity suites (quick or full grid)
)";

std::string format_double(double x) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(17);
  s << x;
  return s.str();
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) {
          return std::isdigit(c) != 0;
        })) {
      throw std::invalid_argument("bad grid entry '" + item + "' in '" + text + "'");
    }
    grid.push_back(std::stoull(item));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

/// Where a command's output goes, plus the provenance every report carries.
struct Emitter {
  std::ostream& out;
  std::string invocation;
  std::string destination;  // empty: `out`

  ordered_json meta(std::optional<std::uint64_t> seed = std::nullopt) const {
    ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["invocation"] = invocation;
    if (seed) m["seed"] = *seed;
    return m;
  }

  std::string csv_preamble(std::optional<std::uint64_t> seed = std::nullopt) const {
    std::string s = std::string("# tool: ") + kToolName + " " + kToolVersion + "\n";
    s += "# invocation: " + invocation + "\n";
    if (seed) s += "# seed: " + std::to_string(*seed) + "\n";
    return s;
  }

  void write(const std::string& text) const {
    if (destination.empty()) {
      out << text;
      out.flush();
      return;
    }
    std::ofstream file(destination, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + destination + "'");
    file << text;
  }

  void write_json(const ordered_json& j) const { write(j.dump(2) + "\n"); }
};

std::string join_invocation(const std::vector<std::string>& args) {
  std::string s = kToolName;
  for (const auto& a : args) s += " " + a;
  return s;
}

int cmd_edge(const Emitter& emit, std::uint64_t m, bool as_json) {
  const auto edge = edge_constant(m);
  if (as_json) {
    ordered_json j;
    j["meta"] = emit.meta();
    j["m"] = m;
    j["u"] = to_string(edge.u);
    j["u_float"] = to_double(edge.u);
    emit.write_json(j);
  } else {
    emit.write(to_string(edge.u) + "\n");
  }
  return kExitOk;
}

int cmd_moments(const Emitter& emit, std::uint64_t m, std::uint64_t n, std::uint64_t k,
                bool all_formulas) {
  const MomentQuery q{m, n, k};
  validate(q);
  ordered_json j;
  j["meta"] = emit.meta();
  j["m"] = m;
  j["n"] = n;
  j["k"] = k;
  const MomentValue falling = moment_falling_sum(q);
  bool agree = true;
  if (all_formulas) {
    if (k <= n) {
      const auto cc = moment_cross_check(q);
      j["gamma_sum"] = to_string(cc.gamma_sum.value);
      j["falling_sum"] = to_string(cc.falling_sum.value);
      j["stirling_beta"] = to_string(cc.stirling_beta.value);
      agree = cc.agree;
    } else {
      // Outside k <= n only the falling-factorial sum is offered.
      j["gamma_sum"] = nullptr;
      j["falling_sum"] = to_string(falling.value);
      j["stirling_beta"] = nullptr;
    }
  } else {
    j["gamma_sum"] = nullptr;
    j["falling_sum"] = to_string(falling.value);
    j["stirling_beta"] = nullptr;
  }
  const Natural fc = fuss_catalan(m, k);
  j["fuss_catalan"] = to_string(fc);
  j["gap"] = k <= n ? ordered_json(to_string(moment_limit_gap(m, k, n))) : ordered_json(nullptr);
  if (all_formulas && k <= n) j["agree"] = agree;
  emit.write_json(j);
  return agree ? kExitOk : kExitCheckFailed;
}

int cmd_beta(const Emitter& emit, std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  const auto report = beta_bounds_check(compute_beta(m, n, k));
  std::string csv = emit.csv_preamble();
  csv += "r,beta,lower_bound,upper_bound,pass\n";
  for (const auto& row : report.rows) {
    csv += std::to_string(row.r) + "," + to_string(row.beta) + "," + to_string(row.lower) + "," +
           to_string(row.upper) + "," + (row.pass ? "true" : "false") + "\n";
  }
  emit.write(csv);
  return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_dominance(const Emitter& emit, std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("dominance requires 1 <= k <= n");
  const auto rep = dominance_report(m, n, k);
  std::string csv = emit.csv_preamble();
  csv += "# first_term_share: " + format_double(to_double(rep.first_term_share)) + "\n";
  csv += "# max_ratio: " + format_double(rep.max_ratio) + "\n";
  csv += "# measured_epsilon: " + format_double(rep.measured_epsilon) + "\n";
  csv += "r,term,ratio_to_next,bound,pass\n";
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    csv += std::to_string(rep.first_r + i) + "," + to_string(rep.terms[i]) + ",";
    if (i < rep.ratios.size()) {
      const auto& row = rep.ratios[i];
      csv += to_string(row.ratio) + "," + to_string(row.bound) + "," +
             (row.pass ? "true" : "false") + "\n";
    } else {
      csv += ",,\n";
    }
  }
  emit.write(csv);
  // Outside the asymptotic regime the flags are informational.
  return kExitOk;
}

int cmd_tailbound(const Emitter& emit, std::uint64_t m, const std::optional<std::string>& z_text,
                  const std::optional<std::string>& z_factor_text, std::optional<double> w,
                  const std::string& grid_text) {
  Rational z;
  if (z_text) {
    z = parse_rational(*z_text);
  } else {
    z = parse_rational(*z_factor_text) * edge_constant(m).u;
  }
  const TailSchedule schedule = make_schedule(m, z, w);
  const auto grid = parse_grid(grid_text);
  std::string csv = emit.csv_preamble();
  csv += "# z: " + to_string(z) + "\n";
  csv += "# w: " + format_double(schedule.w) + "\n";
  csv += "# critical_w: " + format_double(schedule.critical_w) + "\n";
  csv += "n,k_n,exact_bound,log_exact,log_surrogate,minus_2_log_n\n";
  bool ok = true;
  for (std::uint64_t n : grid) {
    const auto t = tail_summand(schedule, n);
    ok = ok && t.log_surrogate <= t.minus_2_log_n;
    csv += std::to_string(t.n) + "," + std::to_string(t.k) + "," + to_string(t.exact_bound) + "," +
           format_double(t.log_exact) + "," + format_double(t.log_surrogate) + "," +
           format_double(t.minus_2_log_n) + "\n";
  }
  emit.write(csv);
  return ok ? kExitOk : kExitCheckFailed;
}

struct SimulateArgs {
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  std::string field = "real";
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  std::uint64_t k_max = 4;
  bool edge_only = false;
  std::string csv_path;
  std::string spectra_dir;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "'");
  file << text;
}

int cmd_simulate(const Emitter& emit, const SimulateArgs& a, unsigned workers) {
  if (a.edge_only && !a.spectra_dir.empty()) {
    throw std::invalid_argument("--spectra-dir needs full spectra; drop --edge-only");
  }
  if (a.k_max < 1) throw std::invalid_argument("--kmax must be >= 1");
  const GinibreSpec spec{a.n, a.m, parse_field(a.field)};
  validate(spec);
  const RunConfig config{a.replicates, a.seed, workers};
  validate(config);

  ordered_json j;
  j["meta"] = emit.meta(a.seed);
  j["m"] = a.m;
  j["n"] = a.n;
  j["field"] = a.field;
  j["replicates"] = a.replicates;
  j["u_m"] = to_string(edge_constant(a.m).u);

  std::vector<double> edges;
  if (a.edge_only) {
    edges = sample_edges(spec, config, EdgeMethod::power);
    j["edge_method"] = "power";
  } else {
    const auto samples = sample_replicates(spec, config);
    edges.reserve(samples.size());
    for (const auto& s : samples) edges.push_back(s.squared_singular_values.front());
    j["edge_method"] = "dense";

    const auto moments = moments_from_samples(samples, a.k_max);
    ordered_json mj = ordered_json::array();
    for (std::uint64_t k = 1; k <= a.k_max; ++k) {
      ordered_json row;
      row["k"] = k;
      row["mean"] = moments.mean[k - 1];
      row["std_error"] = moments.std_error[k - 1];
      if (k <= a.n) {
        row["exact_complex"] = to_string(moment_falling_sum({a.m, a.n, k}).value);
      } else {
        row["exact_complex"] = nullptr;
      }
      mj.push_back(row);
    }
    j["moments"] = mj;

    if (!a.spectra_dir.empty()) {
      std::filesystem::create_directories(a.spectra_dir);
      for (std::size_t r = 0; r < samples.size(); ++r) {
        std::string text = emit.csv_preamble(a.seed);
        text += "# replicate: " + std::to_string(r) + "\n";
        text += "index,s_sq\n";
        const auto& s2 = samples[r].squared_singular_values;
        for (std::size_t i = 0; i < s2.size(); ++i) {
          text += std::to_string(i + 1) + "," + format_double(s2[i]) + "\n";
        }
        write_file(std::filesystem::path(a.spectra_dir) / ("spectrum_" + std::to_string(r) + ".csv"),
                   text);
      }
    }
  }

  if (!a.csv_path.empty()) {
    std::string text = emit.csv_preamble(a.seed);
    text += "replicate_index,s1_sq\n";
    for (std::size_t r = 0; r < edges.size(); ++r) {
      text += std::to_string(r) + "," + format_double(edges[r]) + "\n";
    }
    write_file(a.csv_path, text);
  }

  const auto e = summarize_edges(edges);
  ordered_json ej;
  ej["mean_s1sq"] = e.mean_s1sq;
  ej["std_error"] = e.std_error;
  ej["q05"] = e.q05;
  ej["q50"] = e.q50;
  ej["q95"] = e.q95;
  j["edge"] = ej;
  emit.write_json(j);
  return kExitOk;
}

int cmd_converge(const Emitter& emit, std::uint64_t m, const std::string& grid_text,
                 const std::string& field, std::uint64_t replicates, std::uint64_t seed,
                 unsigned workers) {
  const auto grid = parse_grid(grid_text);
  const RunConfig config{replicates, seed, workers};
  validate(config);
  const auto rows = convergence_table(m, grid, config, parse_field(field));
  std::string csv = emit.csv_preamble(seed);
  csv += "# u_m: " + to_string(edge_constant(m).u) + "\n";
  csv += "n,mean_s1sq,std_error,u_minus_mean\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.n) + "," + format_double(row.mean_s1sq) + "," +
           format_double(row.std_error) + "," + format_double(row.gap) + "\n";
  }
  emit.write(csv);
  return kExitOk;
}

ordered_json optional_json(const std::optional<std::uint64_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

int cmd_verify(const Emitter& emit, const std::string& profile) {
  VerifyOptions options;
  options.profile = parse_profile(profile);
  const auto report = run_verify(options);
  ordered_json j;
  j["meta"] = emit.meta();
  j["profile"] = profile;
  j["pass"] = report.pass();
  ordered_json suites = ordered_json::array();
  for (const auto& s : report.suites) {
    suites.push_back({{"name", s.name}, {"checks", s.checks}, {"failures", s.failures}});
  }
  j["suites"] = suites;
  ordered_json failures = ordered_json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"suite", f.suite},
                        {"check", f.check},
                        {"m", optional_json(f.m)},
                        {"n", optional_json(f.n)},
                        {"k", optional_json(f.k)},
                        {"r", optional_json(f.r)},
                        {"detail", f.detail}});
  }
  j["failures"] = failures;
  emit.write_json(j);
  return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact moments and edge verification for products of Ginibre matrices", kToolName};
  app.footer(kFormulaMap);
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string out_path;
  unsigned workers = 0;
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_option("--workers", workers,
                 std::string("Worker threads for simulations (default: $") + kWorkersEnv +
                     " or hardware concurrency)")
      ->check(CLI::PositiveNumber);

  std::uint64_t m = 1, n = 1, k = 1;

  auto* edge = app.add_subcommand("edge", "Print the edge constant u_m");
  edge->add_option("--m", m, "Number of factors")->required()->check(CLI::PositiveNumber);
  bool edge_json = false;
  edge->add_flag("--json", edge_json, "Emit JSON with metadata");

  auto* moments = app.add_subcommand("moments", "Exact moment G(m,n,k)");
  moments->add_option("--m", m, "Number of factors")->required()->check(CLI::PositiveNumber);
  moments->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  moments->add_option("--k", k, "Moment order")->required()->check(CLI::PositiveNumber);
  bool all_formulas = false;
  moments->add_flag("--all-formulas", all_formulas, "Evaluate and cross-check all formulations");

  auto* beta = app.add_subcommand("beta", "Coefficients beta_r and their bounds (CSV)");
  beta->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  beta->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  beta->add_option("--k", k)->required()->check(CLI::PositiveNumber);

  auto* dominance = app.add_subcommand("dominance", "Term ratios of the Stirling-form sum (CSV)");
  dominance->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  dominance->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  dominance->add_option("--k", k)->required()->check(CLI::PositiveNumber);

  auto* tailbound = app.add_subcommand("tailbound", "Markov tail bounds along k_n (CSV)");
  std::optional<std::string> z_text, z_factor;
  std::optional<double> w;
  std::string grid_text;
  tailbound->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  auto* z_opt = tailbound->add_option("--z", z_text, "Level z > u_m (p, p/q or decimal)");
  auto* zf_opt = tailbound->add_option("--z-factor", z_factor, "Level as a multiple of u_m");
  z_opt->excludes(zf_opt);
  tailbound->add_option("--w", w, "Schedule exponent (default 1.01 * 3/log(z/u_m))");
  tailbound->add_option("--n-grid", grid_text, "Comma-separated n values")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo sampling of W_1...W_m (JSON)");
  SimulateArgs sim;
  simulate->add_option("--m", sim.m)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--n", sim.n)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--field", sim.field)->check(CLI::IsMember({"real", "complex"}));
  simulate->add_option("--replicates", sim.replicates)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed)->required();
  simulate->add_option("--kmax", sim.k_max, "Highest empirical moment (default 4)")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--edge-only", sim.edge_only, "Only s_1^2, by power iteration");
  simulate->add_option("--csv", sim.csv_path, "Per-replicate s_1^2 CSV file");
  simulate->add_option("--spectra-dir", sim.spectra_dir, "Directory for per-replicate spectra");

  auto* converge = app.add_subcommand("converge", "Edge convergence table (CSV)");
  std::string conv_field = "real";
  std::uint64_t conv_replicates = 1, conv_seed = 0;
  converge->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  converge->add_option("--n-grid", grid_text)->required();
  converge->add_option("--field", conv_field)->check(CLI::IsMember({"real", "complex"}));
  converge->add_option("--replicates", conv_replicates)->required()->check(CLI::PositiveNumber);
  converge->add_option("--seed", conv_seed)->required();

  auto* verify = app.add_subcommand("verify", "Run the exact identity suites (JSON)");
  std::string profile = "quick";
  verify->add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const Emitter emit{out, join_invocation(args), out_path};
  try {
    if (*edge) return cmd_edge(emit, m, edge_json);
    if (*moments) return cmd_moments(emit, m, n, k, all_formulas);
    if (*beta) return cmd_beta(emit, m, n, k);
    if (*dominance) return cmd_dominance(emit, m, n, k);
    if (*tailbound) {
      if (!z_text && !z_factor) {
        err << "usage error: tailbound needs --z or --z-factor\n";
        return kExitUsage;
      }
      return cmd_tailbound(emit, m, z_text, z_factor, w, grid_text);
    }
    if (*simulate) return cmd_simulate(emit, sim, workers);
    if (*converge) return cmd_converge(emit, m, grid_text, conv_field, conv_replicates, conv_seed, workers);
    if (*verify) return cmd_verify(emit, profile);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace fcedge
