#include "hama/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "hama/bench.hpp"
#include "hama/error.hpp"
#include "hama/perfmodel.hpp"
#include "hama/report.hpp"
#include "hama/sim.hpp"
#include "hama/sim_config.hpp"
#include "hama/worker_pool.hpp"

namespace hama::cli {

namespace {

double parse_double(std::string_view token, const std::string& context) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw InvalidRequest("invalid number '" + std::string(token) + "' in " + context);
  return value;
}

std::size_t resolve_workers(std::optional<std::size_t> requested) {
  if (!requested) return WorkerPool::default_workers();
  if (*requested == 0) throw InvalidRequest("--workers must be at least 1");
  return std::min(*requested, WorkerPool::worker_cap().value_or(*requested));
}

std::string num(double v) { return report::format_number(v); }

// A key/value record printed as text, a one-row CSV table, or a flat JSON object.
struct Record {
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<bool> quoted;

  Record& add(std::string key, double v) { return push(std::move(key), num(v), false); }
  Record& add(std::string key, int v) { return push(std::move(key), std::to_string(v), false); }
  Record& add(std::string key, bool v) { return push(std::move(key), v ? "true" : "false", false); }
  Record& add(std::string key, std::string_view v) { return push(std::move(key), std::string(v), true); }

  Record& push(std::string key, std::string value, bool q) {
    fields.emplace_back(std::move(key), std::move(value));
    quoted.push_back(q);
    return *this;
  }

  std::string render(const std::string& format) const {
    std::ostringstream out;
    if (format == "csv") {
      for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
      out << '\n';
      for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
      out << '\n';
    } else if (format == "json") {
      out << "{\n";
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string value = fields[i].second;
        if (quoted[i]) {
          value = '"' + value + '"';
        } else if (value == "inf" || value == "-inf" || value == "nan") {
          value = "null";
        }
        out << "  \"" << fields[i].first << "\": " << value << (i + 1 < fields.size() ? ",\n" : "\n");
      }
      out << "}\n";
    } else {
      for (const auto& [key, value] : fields) out << key << ' ' << value << '\n';
    }
    return out.str();
  }
};

struct ModelOptions {
  double f = 0.0;
  int n = 1;
  double r = 1.0;
  double c = 0.5;
  double k = 0.0;
  std::string out = "-";
  std::string format = "text";
  // sweep
  std::string f_grid;
  std::string c_grid;
  std::string k_grid = "0";
  std::optional<double> sweep_r;
  std::optional<std::size_t> workers;
  std::string sweep_format = "csv";
  // optimal-r
  bool real_grid = false;
  double step = 0.01;
  // bound
  double s = 0.01;
  double p = 0.99;
  double f_max = 0.0;
};

struct SimOptions {
  std::string config;
  std::string out = "-";
  std::string format = "json";
  bool timeline = false;
  std::string timeline_csv;
  std::optional<std::string> timestamp;
};

struct BenchOptions {
  bench::BenchSpec spec;
  std::vector<std::string> variants;
  std::optional<std::size_t> workers;
  std::optional<double> serial_baseline;
  std::string out = "-";
  std::string format = "csv";
  std::optional<std::string> timestamp;
};

void add_output_options(CLI::App* cmd, std::string& out, std::string& format, std::vector<std::string> formats) {
  cmd->add_option("--out", out, "Output file, '-' for standard output")->capture_default_str();
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
}

int run_model(CLI::App* model, const ModelOptions& o, std::ostream& out) {
  const CLI::App* sub = model->get_subcommands().front();
  const std::string name = sub->get_name();
  std::string text;
  if (name == "speedup") {
    const perfmodel::ModelParams params(o.f, o.n, o.r, o.c, o.k);
    const double s = perfmodel::speedup_asymmetric(params);
    if (o.format == "text") {
      text = num(s) + '\n';
    } else {
      text = Record{}.add("f", o.f).add("n", o.n).add("r", o.r).add("c", o.c).add("k", o.k).add("speedup", s).render(o.format);
    }
  } else if (name == "sweep") {
    const auto rows = perfmodel::sweep(parse_grid(o.f_grid), o.n, parse_grid(o.c_grid), parse_grid(o.k_grid), o.sweep_r,
                                       resolve_workers(o.workers));
    text = o.sweep_format == "json" ? report::sweep_json(rows) : report::sweep_csv(rows);
  } else if (name == "optimal-r") {
    const auto result = perfmodel::optimal_r(o.f, o.n, o.c);
    Record rec;
    rec.add("f", o.f).add("n", o.n).add("c", o.c);
    rec.add("argmax_r", result.numeric_argmax_r).add("max_speedup", result.numeric_max_speedup);
    rec.add("regime", perfmodel::to_string(result.regime)).add("corollary_agrees", result.corollary_agrees);
    if (o.real_grid) {
      const auto real = perfmodel::optimal_r_real(o.f, o.n, o.c, o.step);
      rec.add("real_argmax_r", real.r).add("real_max_speedup", real.speedup);
    }
    text = rec.render(o.format);
  } else if (name == "power") {
    const double power = perfmodel::sequential_power(o.n, o.k);
    text = o.format == "text" ? num(power) + '\n' : Record{}.add("n", o.n).add("k", o.k).add("power", power).render(o.format);
  } else {
    const auto bound = perfmodel::speedup_bound({o.s, o.p, o.n, o.f_max});
    if (o.format == "text") {
      text = num(bound.low) + ' ' + num(bound.high) + '\n';
    } else {
      text = Record{}
                 .add("s", o.s)
                 .add("p", o.p)
                 .add("processors", o.n)
                 .add("f_max_hz", o.f_max)
                 .add("low", bound.low)
                 .add("high", bound.high)
                 .render(o.format);
    }
  }
  report::write_output(text, o.out, out);
  return ok;
}

int run_sim(CLI::App* sim_cmd, const SimOptions& o, std::ostream& out, std::ostream& err) {
  const std::string name = sim_cmd->get_subcommands().front()->get_name();
  const std::string stamp = o.timestamp.value_or(report::utc_timestamp());
  try {
    if (name == "run") {
      const auto config = sim::load_run_config(o.config);
      const auto result = sim::simulate(config.chip, config.workload);
      const std::string text =
          o.format == "csv" ? report::sim_csv(result) : report::sim_json(result, o.timeline, stamp);
      report::write_output(text, o.out, out);
      if (!o.timeline_csv.empty()) report::write_output(report::timeline_csv(result), o.timeline_csv, out);
    } else {
      const auto config = sim::load_compare_config(o.config);
      const auto result = sim::compare(config.baseline, config.hama, config.workload);
      for (const auto& w : result.warnings) err << "warning: " << w << '\n';
      const std::string text =
          o.format == "csv" ? report::comparison_csv(result) : report::comparison_json(result, o.timeline, stamp);
      report::write_output(text, o.out, out);
      if (!o.timeline_csv.empty()) {
        report::write_output(report::timeline_csv(result.baseline) + report::timeline_csv(result.hama), o.timeline_csv,
                             out);
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << o.config << ": " << e.what() << '\n';
    return usage_error;
  }
  return ok;
}

int run_bench_cmd(BenchOptions o, std::ostream& out, std::ostream& err) {
  if (!o.variants.empty()) {
    o.spec.variants.clear();
    for (const auto& name : o.variants) {
      const auto v = parse_variant(name);
      if (!v) throw InvalidRequest("unknown variant '" + name + "'");
      o.spec.variants.push_back(*v);
    }
  }
  o.spec.workers = resolve_workers(o.workers);
  o.spec.serial_baseline_seconds = o.serial_baseline;
  const auto result = bench::run_bench(o.spec, o.timestamp.value_or(report::utc_timestamp()));
  const std::string text = o.format == "json" ? report::bench_json(result) : report::bench_csv(result);
  report::write_output(text, o.out, out);
  if (result.environment.logical_cores < 4) {
    err << "note: host reports " << result.environment.logical_cores
        << " logical core(s); parallel speedups are limited accordingly\n";
  }
  return ok;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) throw InvalidRequest("empty grid");
  std::vector<std::string> parts;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InvalidRequest("range grid must be lo:hi:count, got '" + text + "'");
    const double lo = parse_double(parts[0], "grid '" + text + "'");
    const double hi = parse_double(parts[1], "grid '" + text + "'");
    const double count = parse_double(parts[2], "grid '" + text + "'");
    if (!(count >= 1) || count != static_cast<double>(static_cast<long>(count))) {
      throw InvalidRequest("grid count must be a positive integer, got '" + parts[2] + "'");
    }
    const auto n = static_cast<std::size_t>(count);
    if (n == 1) return {lo};
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid.back() = hi;
    return grid;
  }
  std::vector<double> grid;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) grid.push_back(parse_double(part, "grid '" + text + "'"));
  if (grid.empty()) throw InvalidRequest("empty grid");
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymmetric multicore toolkit: Karatsuba benchmark, speedup model, power simulator", "hama"};
  app.require_subcommand(1, 1);

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Time the Karatsuba variants on a seeded batch of polynomial pairs");
  bench_cmd->add_option("--degree", bo.spec.degree, "Polynomial degree")->capture_default_str();
  bench_cmd->add_option("--count", bo.spec.count, "Number of pairs")->capture_default_str();
  bench_cmd->add_option("--variants", bo.variants, "Comma list of serial,vectorized,parallel,parallel_vectorized")
      ->delimiter(',');
  bench_cmd->add_option("--workers", bo.workers, "Worker threads (default: all logical cores, capped by HAMA_MAX_WORKERS)");
  bench_cmd->add_option("--repetitions", bo.spec.repetitions, "Timed repetitions per variant")->capture_default_str();
  bench_cmd->add_option("--seed", bo.spec.seed, "Input generator seed")->capture_default_str();
  bench_cmd->add_option("--coeff-bound", bo.spec.coeff_bound, "Coefficients drawn from [-B, B]")->capture_default_str();
  bench_cmd->add_option("--cutoff", bo.spec.base_cutoff, "Schoolbook cutoff length")->capture_default_str();
  bench_cmd->add_option("--spawn-depth", bo.spec.spawn_depth, "Parallel recursion depth")->capture_default_str();
  bench_cmd->add_option("--serial-baseline", bo.serial_baseline, "Stored serial seconds when serial is not run");
  bench_cmd->add_option("--timestamp", bo.timestamp, "Fixed timestamp for reproducible reports");
  add_output_options(bench_cmd, bo.out, bo.format, {"csv", "json"});

  ModelOptions mo;
  auto* model = app.add_subcommand("model", "Evaluate the asymmetric multicore speedup model");
  model->require_subcommand(1, 1);
  auto* speedup = model->add_subcommand("speedup", "Speedup of one configuration");
  speedup->add_option("--f", mo.f, "Parallel fraction")->required();
  speedup->add_option("--n", mo.n, "Chip resources in base-core equivalents")->required();
  speedup->add_option("--r", mo.r, "Resources in the big core")->required();
  speedup->add_option("--c", mo.c, "perf(r) = r^c exponent")->required();
  speedup->add_option("--k", mo.k, "Idle power fraction")->capture_default_str();
  add_output_options(speedup, mo.out, mo.format, {"text", "csv", "json"});

  auto* sweep = model->add_subcommand("sweep", "Grid of speedups with optimal-r classification");
  sweep->add_option("--f", mo.f_grid, "f grid: comma list or lo:hi:count")->required();
  sweep->add_option("--n", mo.n, "Chip resources")->required();
  sweep->add_option("--c", mo.c_grid, "c grid")->required();
  sweep->add_option("--k", mo.k_grid, "k grid")->capture_default_str();
  sweep->add_option("--r", mo.sweep_r, "Fixed big-core size (default: each row's optimum)");
  sweep->add_option("--workers", mo.workers, "Worker threads");
  add_output_options(sweep, mo.out, mo.sweep_format, {"csv", "json"});

  auto* optimal = model->add_subcommand("optimal-r", "Best big-core size and regime classification");
  optimal->add_option("--f", mo.f, "Parallel fraction")->required();
  optimal->add_option("--n", mo.n, "Chip resources")->required();
  optimal->add_option("--c", mo.c, "perf exponent")->required();
  optimal->add_flag("--real-grid", mo.real_grid, "Also sweep real-valued r");
  optimal->add_option("--step", mo.step, "Real grid step")->capture_default_str();
  add_output_options(optimal, mo.out, mo.format, {"text", "csv", "json"});

  auto* power = model->add_subcommand("power", "Sequential-phase power (1 + (n-1)k) / (n/2)");
  power->add_option("--n", mo.n, "Core count")->required();
  power->add_option("--k", mo.k, "Idle power fraction")->required();
  add_output_options(power, mo.out, mo.format, {"text", "csv", "json"});

  auto* bound = model->add_subcommand("bound", "Achievable speedup interval [1, N/(s+p)]");
  bound->add_option("--s", mo.s, "Serial fraction")->capture_default_str();
  bound->add_option("--p", mo.p, "Parallel fraction")->capture_default_str();
  bound->add_option("--n", mo.n, "Processors")->required();
  bound->add_option("--fmax", mo.f_max, "Maximum frequency in Hz (informational)")->capture_default_str();
  add_output_options(bound, mo.out, mo.format, {"text", "csv", "json"});

  SimOptions so;
  auto* sim_cmd = app.add_subcommand("sim", "Discrete-event power simulation");
  sim_cmd->require_subcommand(1, 1);
  for (auto [name, help] : {std::pair{"run", "Simulate one chip configuration"},
                            std::pair{"compare", "Simulate a baseline and a HAMA chip on one workload"}}) {
    auto* sub = sim_cmd->add_subcommand(name, help);
    sub->add_option("--config", so.config, "YAML configuration file")->required();
    sub->add_flag("--timeline", so.timeline, "Include the power timeline in the JSON report");
    sub->add_option("--timeline-csv", so.timeline_csv, "Also write the timeline as CSV to this path");
    sub->add_option("--timestamp", so.timestamp, "Fixed timestamp for reproducible reports");
    add_output_options(sub, so.out, so.format, {"json", "csv"});
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (bench_cmd->parsed()) return run_bench_cmd(bo, out, err);
    if (model->parsed()) return run_model(model, mo, out);
    return run_sim(sim_cmd, so, out, err);
  } catch (const CorrectnessFailure& e) {
    err << "correctness failure: " << e.what() << '\n';
    return correctness_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace hama::cli
