#include "pullsim/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pullsim/asymptotics.hpp"
#include "pullsim/branching.hpp"
#include "pullsim/charfn.hpp"
#include "pullsim/errors.hpp"
#include "pullsim/io.hpp"
#include "pullsim/limit_dist.hpp"
#include "pullsim/rumor.hpp"
#include "pullsim/svg.hpp"

namespace pullsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A command result the CLI maps to exit code 3.
struct Falsified {};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  auto to_double = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) {
      throw UsageError("bad grid '" + spec + "' (expected start:stop:step)");
    }
    return v;
  };
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw UsageError("bad grid '" + spec + "' (expected start:stop:step)");
  const double start = to_double(parts[0]);
  const double stop = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (!(step > 0.0) || stop < start) throw UsageError("grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 10'000'000) throw UsageError("grid '" + spec + "' has too many points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& spec) {
  std::vector<std::int64_t> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    const long long v = std::strtoll(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0') throw UsageError("bad integer list '" + spec + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Limit samples either loaded from disk or drawn fresh.
struct LimitSource {
  std::string input;
  std::int64_t t_star = kDefaultLimitGeneration;
  std::int64_t samples = kDefaultLimitSamples;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "limit samples (.bin from `limit`, or CSV with column x)");
    cmd->add_option("--tstar", t_star, "generation used as the limit surrogate")
        ->capture_default_str();
    cmd->add_option("--samples", samples, "number of limit samples")->capture_default_str();
    cmd->add_option("--seed", seed, "master seed (generated and recorded when omitted)");
  }

  std::pair<EmpiricalDistribution, json> load() const {
    if (!input.empty()) {
      const fs::path p(input);
      std::vector<double> xs;
      if (p.extension() == ".csv") {
        xs = read_csv(p).numeric_column("x");
      } else {
        xs = read_f64_le(p);
      }
      if (xs.empty()) throw FormatError(input + ": no samples");
      return {EmpiricalDistribution(std::move(xs)), json{{"input", input}}};
    }
    if (samples < 1) throw UsageError("--samples must be >= 1");
    const std::uint64_t s = resolve_seed(seed);
    return {sample_limit_X(t_star, samples, s),
            json{{"tstar", t_star}, {"samples", samples}, {"seed", s}}};
  }
};

void emit_reports(const std::vector<VerificationReport>& reports, const std::string& out_path,
                  std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + out_path + " for writing");
    sink = &file;
  }
  for (const auto& r : reports) *sink << r.to_json_line() << '\n';
  if (!out_path.empty() && !file) throw IoError("write to " + out_path + " failed");
  for (const auto& r : reports) {
    if (!r.passed && !r.metadata.value("informational", false)) throw Falsified{};
  }
}

VerificationReport threshold_report(const std::string& name, double observed, double bound,
                                    bool at_least, json meta) {
  VerificationReport r;
  r.name = name;
  r.observed = observed;
  r.bound_or_target = bound;
  r.passed = at_least ? observed >= bound : observed <= bound;
  meta["comparison"] = at_least ? ">=" : "<=";
  r.metadata = std::move(meta);
  return r;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and numerical checks for pull rumor spreading on the complete graph",
               "pullsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::function<void()> action;

  // sim -------------------------------------------------------------------
  struct {
    std::int64_t n = 0;
    std::int64_t runs = 1000;
    std::optional<std::uint64_t> seed;
    std::string denom = "n";
    std::string out;
    std::string trajectories;
    std::string meta;
  } sim;
  auto* sim_cmd = app.add_subcommand("sim", "simulate pull runs and write runtimes as CSV");
  sim_cmd->add_option("--n", sim.n, "population size")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--runs", sim.runs, "number of runs")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "master seed (generated and recorded when omitted)");
  sim_cmd->add_option("--denominator", sim.denom, "success-probability denominator: n or n-1")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "runtime CSV (run_index, runtime)")->required();
  sim_cmd->add_option("--trajectories", sim.trajectories,
                      "optional trajectory CSV (run_index, round, informed)");
  sim_cmd->add_option("--meta", sim.meta, "metadata JSON path (default: <out>.json)");
  sim_cmd->callback([&] {
    action = [&] {
      const Denominator denom = denominator_from_string(sim.denom);
      const std::uint64_t seed = resolve_seed(sim.seed);
      const auto start = std::chrono::steady_clock::now();
      const RuntimeEnsemble e = ensemble(sim.n, sim.runs, seed, !sim.trajectories.empty(), denom);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const json params{{"n", sim.n}, {"runs", sim.runs}, {"denominator", to_string(denom)}};
      CsvWriter csv(sim.out, make_metadata("sim", params, seed), {"run_index", "runtime"});
      for (std::size_t r = 0; r < e.runtimes.size(); ++r) {
        csv.row({std::to_string(r), std::to_string(e.runtimes[r])});
      }
      csv.close();
      if (!sim.trajectories.empty()) {
        CsvWriter traj(sim.trajectories, make_metadata("sim", params, seed),
                       {"run_index", "round", "informed"});
        for (std::size_t r = 0; r < e.records.size(); ++r) {
          const auto& tr = e.records[r].trajectory;
          for (std::size_t t = 0; t < tr.size(); ++t) {
            traj.row({std::to_string(r), std::to_string(t), std::to_string(tr[t])});
          }
        }
        traj.close();
      }
      json meta{{"command", "sim"},        {"n", sim.n},
                {"runs", sim.runs},        {"master_seed", seed},
                {"convention", to_string(denom)},
                {"version", kVersion},     {"timing_seconds", seconds},
                {"mean", e.summary.mean},  {"variance", e.summary.variance},
                {"min", e.summary.min},    {"max", e.summary.max}};
      write_json(sim.meta.empty() ? sim.out + ".json" : sim.meta, meta);
    };
  });

  // limit -----------------------------------------------------------------
  struct {
    std::int64_t t_star = kDefaultLimitGeneration;
    std::int64_t samples = kDefaultLimitSamples;
    std::optional<std::uint64_t> seed;
    std::string format = "bin";
    std::string out;
  } limit;
  auto* limit_cmd = app.add_subcommand("limit", "sample X = -log2 H_t* from the branching process");
  limit_cmd->add_option("--tstar", limit.t_star, "generation used as the limit surrogate")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  limit_cmd->add_option("--samples", limit.samples, "number of samples")->capture_default_str()
      ->check(CLI::PositiveNumber);
  limit_cmd->add_option("--seed", limit.seed, "master seed (generated and recorded when omitted)");
  limit_cmd->add_option("--format", limit.format, "bin (little-endian f64 + .json) or csv")
      ->capture_default_str()->check(CLI::IsMember({"bin", "csv"}));
  limit_cmd->add_option("--out", limit.out, "output path")->required();
  limit_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = resolve_seed(limit.seed);
      const auto start = std::chrono::steady_clock::now();
      const std::vector<double> xs = limit_samples(limit.t_star, limit.samples, seed);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const json params{{"tstar", limit.t_star}, {"samples", limit.samples}};
      if (limit.format == "csv") {
        CsvWriter csv(limit.out, make_metadata("limit", params, seed), {"index", "x"});
        for (std::size_t i = 0; i < xs.size(); ++i) {
          csv.row({std::to_string(i), format_double(xs[i])});
        }
        csv.close();
      } else {
        write_f64_le(limit.out, xs);
        json meta = make_metadata("limit", params, seed);
        meta["t_star"] = limit.t_star;
        meta["samples"] = limit.samples;
        meta["encoding"] = "float64-le";
        meta["value"] = "-log2(H_tstar)";
        meta["timing_seconds"] = seconds;
        write_json(limit.out + ".json", meta);
      }
    };
  });

  // density ---------------------------------------------------------------
  LimitSource density_src;
  struct {
    std::size_t points = 512;
    std::string bandwidth = "scott";
    std::string out;
  } density;
  auto* density_cmd = app.add_subcommand("density", "Gaussian KDE of the limit variable X");
  density_src.attach(density_cmd);
  density_cmd->add_option("--points", density.points, "grid points")->capture_default_str()
      ->check(CLI::Range(2, 1'000'000));
  density_cmd->add_option("--bandwidth", density.bandwidth, "scott or a positive number")
      ->capture_default_str();
  density_cmd->add_option("--out", density.out, "density CSV (x, density)")->required();
  density_cmd->callback([&] {
    action = [&] {
      auto [dist, source] = density_src.load();
      Bandwidth bw = ScottRule{};
      if (density.bandwidth != "scott") {
        char* end = nullptr;
        const double v = std::strtod(density.bandwidth.c_str(), &end);
        if (*end != '\0' || !(v > 0.0)) throw UsageError("--bandwidth must be scott or > 0");
        bw = v;
      }
      const double h = resolve_bandwidth(dist, bw);
      const std::vector<double> grid = kde_grid(dist, density.points, h);
      const std::vector<double> dens = kde_density(dist, grid, h);
      json params{{"points", density.points}, {"bandwidth", density.bandwidth},
                  {"bandwidth_value", h}, {"source", source}};
      CsvWriter csv(density.out,
                    make_metadata("density", params, source.value("seed", json(nullptr))),
                    {"x", "density"});
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({format_double(grid[i]), format_double(dens[i])});
      }
      csv.close();
    };
  });

  // moments ---------------------------------------------------------------
  LimitSource moments_src;
  struct {
    std::string grid = "0:1:0.01";
    std::string out;
    std::string lattice;
  } moments;
  auto* moments_cmd =
      app.add_subcommand("moments", "mean and variance of the lattice law (X + x)|_Z");
  moments_src.attach(moments_cmd);
  moments_cmd->add_option("--grid", moments.grid, "x_shift grid start:stop:step")
      ->capture_default_str();
  moments_cmd->add_option("--out", moments.out, "moments CSV (x_shift, mean, variance)")
      ->required();
  moments_cmd->add_option("--lattice", moments.lattice,
                          "optional lattice CSV (x_shift, k, probability)");
  moments_cmd->callback([&] {
    action = [&] {
      const std::vector<double> grid = parse_grid(moments.grid);
      auto [dist, source] = moments_src.load();
      json params{{"grid", moments.grid}, {"source", source}};
      const json seed = source.value("seed", json(nullptr));
      CsvWriter csv(moments.out, make_metadata("moments", params, seed),
                    {"x_shift", "mean", "variance"});
      for (double x : grid) {
        csv.row({format_double(x), format_double(lattice_mean(dist, x)),
                 format_double(lattice_variance(dist, x))});
      }
      csv.close();
      if (!moments.lattice.empty()) {
        CsvWriter lat(moments.lattice, make_metadata("moments", params, seed),
                      {"x_shift", "k", "probability"});
        for (double x : grid) {
          const LatticeLaw law = lattice_law(dist, x);
          for (std::int64_t k = law.first_k; k <= law.last_k(); ++k) {
            lat.row({format_double(x), std::to_string(k), format_double(law.at(k))});
          }
        }
        lat.close();
      }
    };
  });

  // charfn ----------------------------------------------------------------
  struct {
    std::string grid = "0:10:0.1";
    std::string generations = "16";
    std::string route = "h";
    std::string out;
    std::string slopes;
  } cf;
  auto* cf_cmd = app.add_subcommand("charfn", "characteristic function of H_t on a grid");
  cf_cmd->add_option("--grid", cf.grid, "frequency grid start:stop:step")->capture_default_str();
  cf_cmd->add_option("--t", cf.generations, "generation or comma list")->capture_default_str();
  cf_cmd->add_option("--route", cf.route, "h (complex iteration) or F (planar map)")
      ->capture_default_str()->check(CLI::IsMember({"h", "F"}));
  cf_cmd->add_option("--out", cf.out, "CSV (x, t, r, im, modulus)")->required();
  cf_cmd->add_option("--slopes", cf.slopes,
                     "optional decay scan CSV (x, t, modulus, slope) over x = 16..4096");
  cf_cmd->callback([&] {
    action = [&] {
      const std::vector<double> grid = parse_grid(cf.grid);
      const std::vector<std::int64_t> gens = parse_int_list(cf.generations);
      const json params{{"grid", cf.grid}, {"t", cf.generations}, {"route", cf.route}};
      CsvWriter csv(cf.out, make_metadata("charfn", params), {"x", "t", "r", "im", "modulus"});
      for (std::int64_t t : gens) {
        for (double x : grid) {
          const PhasePair p = cf.route == "h" ? phi(x, t) : phi_planar(x, t);
          csv.row({format_double(x), std::to_string(t), format_double(p.r), format_double(p.im),
                   format_double(p.modulus())});
        }
      }
      csv.close();
      if (!cf.slopes.empty()) {
        CsvWriter sl(cf.slopes, make_metadata("charfn", params), {"x", "t", "modulus", "slope"});
        for (const DecayPoint& d : decay_scan(16.0, 4096.0)) {
          sl.row({format_double(d.x), std::to_string(d.generation), format_double(d.modulus),
                  format_double(d.slope)});
        }
        sl.close();
      }
    };
  });

  // subseq ----------------------------------------------------------------
  struct {
    double x = 0.0;
    std::int64_t from = 4;
    std::int64_t to = 40;
    std::string out;
  } sub;
  auto* sub_cmd = app.add_subcommand("subseq", "n_i = floor(exp(W(2^(i+x)))) and its fractional parts");
  sub_cmd->add_option("--x", sub.x, "target fractional part in [0,1)")->required();
  sub_cmd->add_option("--from", sub.from, "first index")->capture_default_str();
  sub_cmd->add_option("--to", sub.to, "last index")->capture_default_str();
  sub_cmd->add_option("--out", sub.out, "CSV path (stdout when omitted)");
  sub_cmd->callback([&] {
    action = [&] {
      const auto terms = subsequence({sub.x, sub.from, sub.to});
      const json params{{"x", sub.x}, {"from", sub.from}, {"to", sub.to}};
      auto write = [&](auto&& writer) {
        for (const auto& t : terms) {
          writer({std::to_string(t.index), t.n_decimal, format_double(t.frac)});
        }
      };
      if (sub.out.empty()) {
        out << "# " << make_metadata("subseq", params).dump() << "\ni,n_i,frac\n";
        write([&](const std::vector<std::string>& c) { out << c[0] << ',' << c[1] << ',' << c[2] << '\n'; });
      } else {
        CsvWriter csv(sub.out, make_metadata("subseq", params), {"i", "n_i", "frac"});
        write([&](const std::vector<std::string>& c) { csv.row(c); });
        csv.close();
      }
    };
  });

  // plot ------------------------------------------------------------------
  struct {
    std::string kind;
    std::string input;
    std::string out;
  } pl;
  auto* plot_cmd = app.add_subcommand("plot", "render a density, moments or cdf-compare CSV as SVG");
  plot_cmd->add_option("--kind", pl.kind, "density | moments | cdf-compare")->required()
      ->check(CLI::IsMember({"density", "moments", "cdf-compare"}));
  plot_cmd->add_option("--input", pl.input, "input CSV")->required();
  plot_cmd->add_option("--out", pl.out, "output SVG")->required();
  plot_cmd->callback([&] {
    action = [&] { plot(plot_kind_from_string(pl.kind), pl.input, pl.out); };
  });

  // verify ----------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "check a statement and emit JSON-line reports");
  verify_cmd->require_subcommand(1);

  struct {
    std::int64_t n = 4096;
    std::int64_t t_max = 5;
    std::string out;
  } vtv;
  auto* vtv_cmd = verify_cmd->add_subcommand("tv", "exact d(|I_t|, J_t) <= 2*4^t/n");
  vtv_cmd->add_option("--n", vtv.n, "population size (<= 16384)")->capture_default_str();
  vtv_cmd->add_option("--tmax", vtv.t_max, "largest round (<= 5)")->capture_default_str();
  vtv_cmd->add_option("--out", vtv.out, "JSON-lines path (stdout when omitted)");
  vtv_cmd->callback([&] {
    action = [&] {
      auto reports = verify_tv_bound(vtv.n, vtv.t_max);
      for (auto& r : reports) {
        r.metadata["run"] = make_metadata("verify tv", {{"n", vtv.n}, {"tmax", vtv.t_max}});
      }
      emit_reports(reports, vtv.out, out);
    };
  });

  // Shared options of the ensemble-based verifiers.
  struct EnsembleOpts {
    std::int64_t n = 1'000'000;
    std::int64_t runs = 10'000;
    std::optional<std::uint64_t> seed;
    std::string out;
  };
  auto attach_ensemble = [](CLI::App* cmd, EnsembleOpts& o) {
    cmd->add_option("--n", o.n, "population size")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--runs", o.runs, "number of runs")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "master seed (generated and recorded when omitted)");
    cmd->add_option("--out", o.out, "JSON-lines path (stdout when omitted)");
  };

  EnsembleOpts vrec;
  double vrec_min = 0.95;
  bool vrec_per_run = false;
  auto* vrec_cmd = verify_cmd->add_subcommand("recurrence", "deterministic-recurrence inequality");
  attach_ensemble(vrec_cmd, vrec);
  vrec_cmd->add_option("--min-fraction", vrec_min, "required fraction of passing runs")
      ->capture_default_str();
  vrec_cmd->add_flag("--per-run", vrec_per_run, "also emit one report per run");
  vrec_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = resolve_seed(vrec.seed);
      const RuntimeEnsemble e = ensemble(vrec.n, vrec.runs, seed, true);
      std::vector<VerificationReport> reports;
      std::int64_t ok = 0;
      for (const auto& rec : e.records) {
        VerificationReport r = verify_recurrence(rec);
        ok += r.passed;
        if (vrec_per_run) {
          // single runs may fail; only the fraction is gated
          r.metadata["informational"] = true;
          reports.push_back(std::move(r));
        }
      }
      const json run = make_metadata("verify recurrence", {{"n", vrec.n}, {"runs", vrec.runs}}, seed);
      reports.push_back(threshold_report("recurrence_fraction",
                                         static_cast<double>(ok) / static_cast<double>(vrec.runs),
                                         vrec_min, true, {{"run", run}}));
      emit_reports(reports, vrec.out, out);
    };
  });

  EnsembleOpts vend;
  double vend_min = 0.9;
  auto* vend_cmd = verify_cmd->add_subcommand("endgame", "endgame events around T = min{t: U_t < sqrt n}");
  attach_ensemble(vend_cmd, vend);
  vend_cmd->add_option("--min-fraction", vend_min, "required fraction with U_T > 0 and U_{T+1} = 0")
      ->capture_default_str();
  vend_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = resolve_seed(vend.seed);
      const RuntimeEnsemble e = ensemble(vend.n, vend.runs, seed, true);
      const EndgameFrequencies f = verify_endgame(e.records);
      const json run = make_metadata("verify endgame", {{"n", vend.n}, {"runs", vend.runs}}, seed);
      json detail{{"run", run},
                  {"before_above", f.before_above},
                  {"at_positive", f.at_positive},
                  {"after_zero", f.after_zero},
                  {"all_events", f.all_events},
                  {"threshold_formula_match", f.threshold_formula_match},
                  {"before_ratio_quantiles", f.before_ratio_quantiles},
                  {"at_ratio_quantiles", f.at_ratio_quantiles}};
      std::vector<VerificationReport> reports;
      reports.push_back(threshold_report("endgame_finish_next", f.finish_next, vend_min, true, detail));
      reports.push_back(threshold_report("endgame_runtime_is_T_plus_1",
                                         static_cast<double>(f.runtime_mismatches), 0.0, false,
                                         {{"run", run}, {"all_events_runs", f.all_events_runs}}));
      reports.push_back(threshold_report("endgame_T_within_runtime",
                                         static_cast<double>(f.threshold_after_runtime), 0.0, false,
                                         {{"run", run}}));
      emit_reports(reports, vend.out, out);
    };
  });

  EnsembleOpts vthm;
  vthm.runs = 100'000;
  LimitSource vthm_src;
  double vthm_max = 0.05;
  std::string vthm_curve;
  auto* vthm_cmd = verify_cmd->add_subcommand("theorem1", "sup-distance of runtime tails to ceil(c + X)");
  attach_ensemble(vthm_cmd, vthm);
  vthm_cmd->add_option("--limit-input", vthm_src.input, "limit samples (.bin or CSV)");
  vthm_cmd->add_option("--tstar", vthm_src.t_star, "limit surrogate generation")
      ->capture_default_str();
  vthm_cmd->add_option("--samples", vthm_src.samples, "limit samples to draw")
      ->capture_default_str();
  vthm_cmd->add_option("--max-distance", vthm_max, "accepted sup-distance")->capture_default_str();
  vthm_cmd->add_option("--curve", vthm_curve, "optional CSV (k, runtime_tail, limit_tail)");
  vthm_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = resolve_seed(vthm.seed);
      vthm_src.seed = splitmix64(seed ^ 0x5eedULL);
      const RuntimeEnsemble e = ensemble(vthm.n, vthm.runs, seed);
      auto [limit_dist, source] = vthm_src.load();
      const EmpiricalDistribution runtimes = e.distribution();
      const double c = runtime_centering(vthm.n);
      const double d = theorem1_distance_at(runtimes, limit_dist, c);
      const json params{{"n", vthm.n}, {"runs", vthm.runs}, {"limit", source}};
      if (!vthm_curve.empty()) {
        CsvWriter csv(vthm_curve, make_metadata("verify theorem1", params, seed),
                      {"k", "runtime_tail", "limit_tail"});
        for (const auto& row : theorem1_curve(runtimes, limit_dist, c)) {
          csv.row({std::to_string(row.k), format_double(row.runtime_tail),
                   format_double(row.limit_tail)});
        }
        csv.close();
      }
      emit_reports({threshold_report("theorem1_sup_distance", d, vthm_max, false,
                                     {{"run", make_metadata("verify theorem1", params, seed)},
                                      {"centering", c}})},
                   vthm.out, out);
    };
  });

  struct {
    std::string n_values = "1024,4096,16384,65536,262144,1048576,4194304,16777216";
    std::int64_t runs = 10'000;
    std::optional<std::uint64_t> seed;
    double max_band = 2.5;
    std::string out;
  } vres;
  auto* vres_cmd = verify_cmd->add_subcommand("residual", "E[X_n] - log2 n - log2 ln n stays bounded");
  vres_cmd->add_option("--n", vres.n_values, "comma-separated population sizes")
      ->capture_default_str();
  vres_cmd->add_option("--runs", vres.runs, "runs per n")->capture_default_str()
      ->check(CLI::Range(2, 1'000'000'000));
  vres_cmd->add_option("--seed", vres.seed, "master seed (generated and recorded when omitted)");
  vres_cmd->add_option("--max-band", vres.max_band, "accepted max - min residual")
      ->capture_default_str();
  vres_cmd->add_option("--out", vres.out, "JSON-lines path (stdout when omitted)");
  vres_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = resolve_seed(vres.seed);
      const auto ns = parse_int_list(vres.n_values);
      const auto points = runtime_residual_scan(ns, vres.runs, seed);
      const json run = make_metadata("verify residual", {{"n", vres.n_values}, {"runs", vres.runs}}, seed);
      json rows = json::array();
      double lo = points.front().residual;
      double hi = lo;
      for (const auto& p : points) {
        rows.push_back({{"n", p.n}, {"mean", p.mean}, {"se", p.standard_error}, {"residual", p.residual}});
        lo = std::min(lo, p.residual);
        hi = std::max(hi, p.residual);
      }
      emit_reports({threshold_report("residual_band", hi - lo, vres.max_band, false,
                                     {{"run", run}, {"points", rows}})},
                   vres.out, out);
    };
  });

  EnsembleOpts vtail;
  vtail.runs = 1'000'000;
  std::int64_t vtail_rmax = 12;
  double vtail_max4 = 0.05;
  auto* vtail_cmd = verify_cmd->add_subcommand("tail", "exponential decay of runtime deviations");
  attach_ensemble(vtail_cmd, vtail);
  vtail_cmd->add_option("--rmax", vtail_rmax, "largest offset r")->capture_default_str()
      ->check(CLI::Range(4, 1000));
  vtail_cmd->add_option("--max-tail4", vtail_max4, "accepted P(|X_n - mean| >= 4)")
      ->capture_default_str();
  vtail_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = resolve_seed(vtail.seed);
      const RuntimeEnsemble e = ensemble(vtail.n, vtail.runs, seed);
      std::vector<std::int64_t> rs;
      for (std::int64_t r = 0; r <= vtail_rmax; ++r) rs.push_back(r);
      const TailDecay td = tail_decay_check(e.distribution(), rs);
      json rows = json::array();
      for (const auto& row : td.rows) {
        rows.push_back({{"r", row.r},
                        {"probability", row.probability},
                        {"log_probability", row.censored ? json("censored") : json(row.log_probability)}});
      }
      const json run = make_metadata("verify tail", {{"n", vtail.n}, {"runs", vtail.runs}}, seed);
      emit_reports({threshold_report("tail_at_4", td.rows[4].probability, vtail_max4, false,
                                     {{"run", run}, {"mean", td.mean}}),
                    threshold_report("tail_monotone", td.monotone ? 1.0 : 0.0, 1.0, true,
                                     {{"run", run}, {"rows", rows}, {"resolved", td.resolved}}),
                    threshold_report("tail_fitted_rate", td.fitted_rate, 0.0, true,
                                     {{"run", run}, {"strict", true}})},
                   vtail.out, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    // help and version requests; CLI11 prints the help of the subcommand that asked
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const Falsified&) {
    return kExitFalsified;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace pullsim
