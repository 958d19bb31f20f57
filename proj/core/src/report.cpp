#include "hama/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hama/error.hpp"

namespace hama::report {

namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json sim_object(const sim::SimReport& r, bool include_timeline) {
  json per_core = json::array();
  for (const auto& c : r.per_core) per_core.push_back({{"core_id", c.core_id}, {"energy", c.energy}, {"work", c.work}});
  json out = {{"label", r.label},
              {"makespan", r.makespan},
              {"serial_end", r.serial_end},
              {"total_energy", r.total_energy},
              {"energy_per_computation", r.energy_per_computation},
              {"executed_work", r.executed_work},
              {"chunks", r.chunks},
              {"per_core_energy", per_core}};
  if (include_timeline) {
    json events = json::array();
    for (const auto& e : r.timeline) {
      events.push_back({{"time", e.time}, {"core_id", e.core_id}, {"state", sim::to_string(e.state)}, {"power", e.power}});
    }
    out["timeline"] = events;
  }
  return out;
}

sim::CoreState parse_state(const std::string& s) {
  for (auto st : {sim::CoreState::off, sim::CoreState::waking, sim::CoreState::busy, sim::CoreState::idle})
    if (sim::to_string(st) == s) return st;
  throw Error("unknown core state '" + s + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(value);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sweep_csv(const std::vector<perfmodel::SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepColumns << '\n';
  for (const auto& r : rows) {
    out << format_number(r.f) << ',' << r.n << ',' << format_number(r.r) << ',' << format_number(r.c) << ','
        << format_number(r.k) << ',' << format_number(r.speedup) << ',' << format_number(r.power) << ','
        << perfmodel::to_string(r.regime.regime) << ',' << r.regime.numeric_argmax_r << ','
        << (r.regime.corollary_agrees ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<perfmodel::SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"f", r.f},
                   {"n", r.n},
                   {"r", r.r},
                   {"c", r.c},
                   {"k", r.k},
                   {"speedup", number(r.speedup)},
                   {"power", number(r.power)},
                   {"regime", perfmodel::to_string(r.regime.regime)},
                   {"argmax_r", r.regime.numeric_argmax_r},
                   {"corollary_agrees", r.regime.corollary_agrees}});
  }
  return dump(arr);
}

std::string sim_json(const sim::SimReport& report, bool include_timeline, const std::string& timestamp) {
  json out = {{"generated_at", timestamp}};
  out.update(sim_object(report, include_timeline));
  return dump(out);
}

std::string sim_csv(const sim::SimReport& report) {
  std::ostringstream out;
  out << "core_id,energy,work\n";
  for (const auto& c : report.per_core) {
    out << c.core_id << ',' << format_number(c.energy) << ',' << format_number(c.work) << '\n';
  }
  return out.str();
}

std::string timeline_csv(const sim::SimReport& report) {
  std::ostringstream out;
  out << kTimelineColumns << '\n';
  for (const auto& e : report.timeline) {
    out << format_number(e.time) << ',' << e.core_id << ',' << sim::to_string(e.state) << ','
        << format_number(e.power) << '\n';
  }
  return out.str();
}

sim::SimReport sim_from_json(const std::string& text) {
  const json j = json::parse(text);
  sim::SimReport r;
  r.label = j.at("label").get<std::string>();
  r.makespan = j.at("makespan").get<double>();
  r.serial_end = j.at("serial_end").get<double>();
  r.total_energy = j.at("total_energy").get<double>();
  r.energy_per_computation = j.at("energy_per_computation").get<double>();
  r.executed_work = j.at("executed_work").get<double>();
  r.chunks = j.at("chunks").get<std::size_t>();
  for (const auto& c : j.at("per_core_energy")) {
    r.per_core.push_back({c.at("core_id").get<int>(), c.at("energy").get<double>(), c.at("work").get<double>()});
  }
  if (j.contains("timeline")) {
    for (const auto& e : j.at("timeline")) {
      r.timeline.push_back({e.at("time").get<double>(), e.at("core_id").get<int>(),
                            parse_state(e.at("state").get<std::string>()), e.at("power").get<double>()});
    }
  }
  return r;
}

std::string comparison_json(const sim::ComparisonReport& report, bool include_timeline, const std::string& timestamp) {
  json out = {{"generated_at", timestamp},
              {"makespan_ratio", number(report.makespan_ratio)},
              {"energy_ratio", number(report.energy_ratio)},
              {"energy_per_computation_ratio", number(report.energy_per_computation_ratio)},
              {"warnings", report.warnings},
              {"baseline", sim_object(report.baseline, include_timeline)},
              {"hama", sim_object(report.hama, include_timeline)}};
  return dump(out);
}

std::string comparison_csv(const sim::ComparisonReport& report) {
  std::ostringstream out;
  out << "config,makespan,total_energy,energy_per_computation\n";
  for (const auto* r : {&report.baseline, &report.hama}) {
    out << r->label << ',' << format_number(r->makespan) << ',' << format_number(r->total_energy) << ','
        << format_number(r->energy_per_computation) << '\n';
  }
  out << "ratio," << format_number(report.makespan_ratio) << ',' << format_number(report.energy_ratio) << ','
      << format_number(report.energy_per_computation_ratio) << '\n';
  return out.str();
}

std::string bench_csv(const bench::BenchReport& report) {
  std::ostringstream out;
  out << kBenchColumns << '\n';
  for (const auto& v : report.variants) {
    out << to_string(v.variant) << ',' << format_number(v.seconds) << ',' << format_number(v.speedup) << ','
        << report.environment.workers << ',' << report.checksum << '\n';
  }
  return out.str();
}

std::string bench_json(const bench::BenchReport& report) {
  json variants = json::array();
  for (const auto& v : report.variants) {
    variants.push_back({{"variant", to_string(v.variant)},
                        {"seconds", v.seconds},
                        {"speedup", number(v.speedup)},
                        {"repetitions", v.repetitions}});
  }
  json out = {{"degree", report.degree},
              {"count", report.count},
              {"seed", report.seed},
              {"coeff_bound", report.coeff_bound},
              {"repetitions", report.repetitions},
              {"checksum", report.checksum},
              {"environment",
               {{"logical_cores", report.environment.logical_cores},
                {"workers", report.environment.workers},
                {"timestamp", report.environment.timestamp}}},
              {"variants", variants}};
  return dump(out);
}

bench::BenchReport bench_from_json(const std::string& text) {
  const json j = json::parse(text);
  bench::BenchReport r;
  r.degree = j.at("degree").get<std::size_t>();
  r.count = j.at("count").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.coeff_bound = j.at("coeff_bound").get<std::int64_t>();
  r.repetitions = j.at("repetitions").get<std::size_t>();
  r.checksum = j.at("checksum").get<std::string>();
  const json& env = j.at("environment");
  r.environment = {env.at("logical_cores").get<unsigned>(), env.at("workers").get<std::size_t>(),
                   env.at("timestamp").get<std::string>()};
  for (const auto& v : j.at("variants")) {
    bench::VariantTiming t;
    const auto variant = parse_variant(v.at("variant").get<std::string>());
    if (!variant) throw Error("unknown variant in bench report");
    t.variant = *variant;
    t.seconds = v.at("seconds").get<double>();
    t.speedup = read_number(v.at("speedup"));
    t.repetitions = v.at("repetitions").get<std::vector<double>>();
    r.variants.push_back(std::move(t));
  }
  return r;
}

void write_output(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    fallback.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace hama::report
