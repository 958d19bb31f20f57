#include "hama/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hama/error.hpp"

namespace hama::sim {

namespace {

constexpr std::size_t kMaxChunks = 10'000'000;

struct Segment {
  CoreState state;
  double start;
  double end;
};

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

std::vector<double> chunk_sizes(const Workload& load, std::size_t core_count) {
  std::vector<double> sizes;
  const double total = load.parallel_work;
  if (total <= 0.0) return sizes;
  if (!load.chunk) {
    const std::size_t count = 4 * core_count;
    sizes.assign(count, total / static_cast<double>(count));
    return sizes;
  }
  const double chunk = *load.chunk;
  const double exact = total / chunk;
  const double nearest = std::round(exact);
  // Treat counts within rounding noise of an integer as exact so no sliver chunk appears.
  const double count_d = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(exact);
  if (count_d > static_cast<double>(kMaxChunks)) throw InvalidConfig("chunk too small: more than 10^7 chunks");
  const auto count = static_cast<std::size_t>(std::max(1.0, count_d));
  sizes.assign(count, chunk);
  sizes.back() = total - chunk * static_cast<double>(count - 1);
  return sizes;
}

}  // namespace

std::string_view to_string(CoreKind kind) noexcept {
  return kind == CoreKind::active_sync ? "active_sync" : "passive_async";
}

std::string_view to_string(CoreState state) noexcept {
  switch (state) {
    case CoreState::off: return "off";
    case CoreState::waking: return "waking";
    case CoreState::busy: return "busy";
    case CoreState::idle: return "idle";
  }
  return "off";
}

std::optional<CoreKind> parse_core_kind(std::string_view name) noexcept {
  if (name == "active_sync" || name == "active") return CoreKind::active_sync;
  if (name == "passive_async" || name == "passive") return CoreKind::passive_async;
  return std::nullopt;
}

double CoreSpec::power_in(CoreState state) const noexcept {
  switch (state) {
    case CoreState::off: return 0.0;
    case CoreState::waking: return power_wake.value_or(power_busy);
    case CoreState::busy: return power_busy;
    case CoreState::idle: return power_idle;
  }
  return 0.0;
}

void CoreSpec::validate() const {
  const std::string where = "core " + std::to_string(id) + ": ";
  if (!(throughput > 0.0) || !std::isfinite(throughput)) throw InvalidConfig(where + "throughput must be positive");
  if (!(power_busy >= 0.0) || !std::isfinite(power_busy)) throw InvalidConfig(where + "power_busy must be non-negative");
  if (!(power_idle >= 0.0 && power_idle <= power_busy))
    throw InvalidConfig(where + "power_idle must lie in [0, power_busy]");
  if (!(wake_latency >= 0.0) || !std::isfinite(wake_latency))
    throw InvalidConfig(where + "wake_latency must be non-negative");
  if (power_wake && !(*power_wake >= 0.0)) throw InvalidConfig(where + "power_wake must be non-negative");
  if (kind == CoreKind::active_sync && wake_latency != 0.0)
    throw InvalidConfig(where + "active cores are never off, wake_latency must be 0");
}

void ChipConfig::validate() const {
  if (cores.empty()) throw InvalidConfig("chip '" + label + "' has no cores");
  std::set<int> ids;
  bool has_active = false;
  for (const auto& core : cores) {
    if (!ids.insert(core.id).second) throw InvalidConfig("core " + std::to_string(core.id) + ": duplicate core id");
    core.validate();
    has_active = has_active || core.kind == CoreKind::active_sync;
  }
  if (!has_active) throw InvalidConfig("chip '" + label + "' needs at least one active_sync core");
}

double ChipConfig::total_throughput() const noexcept {
  double sum = 0.0;
  for (const auto& core : cores) sum += core.throughput;
  return sum;
}

void Workload::validate() const {
  if (!(serial_work >= 0.0) || !std::isfinite(serial_work)) throw InvalidConfig("serial_work must be non-negative");
  if (!(parallel_work >= 0.0) || !std::isfinite(parallel_work))
    throw InvalidConfig("parallel_work must be non-negative");
  if (chunk && !(*chunk > 0.0)) throw InvalidConfig("chunk must be positive");
}

double Workload::parallel_fraction() const noexcept {
  const double total = total_work();
  return total > 0.0 ? parallel_work / total : 0.0;
}

SimReport simulate(const ChipConfig& chip, const Workload& load) {
  chip.validate();
  load.validate();

  // Work in id order so every tie-break is "lowest id".
  std::vector<CoreSpec> cores = chip.cores;
  std::sort(cores.begin(), cores.end(), [](const CoreSpec& a, const CoreSpec& b) { return a.id < b.id; });
  const std::size_t count = cores.size();

  std::size_t serial_core = count;
  for (std::size_t i = 0; i < count; ++i) {
    if (cores[i].kind != CoreKind::active_sync) continue;
    if (serial_core == count || cores[i].throughput > cores[serial_core].throughput) serial_core = i;
  }
  const double serial_end = load.serial_work / cores[serial_core].throughput;

  // Greedy list scheduling of the parallel chunks.
  std::vector<double> available(count);
  std::vector<double> first_start(count, -1.0);
  std::vector<double> finish(count, serial_end);
  std::vector<double> work(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    available[i] = serial_end + (cores[i].kind == CoreKind::passive_async ? cores[i].wake_latency : 0.0);
  }
  const auto sizes = chunk_sizes(load, count);
  for (double size : sizes) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < count; ++i)
      if (available[i] < available[best]) best = i;
    if (first_start[best] < 0.0) first_start[best] = available[best];
    available[best] += size / cores[best].throughput;
    finish[best] = available[best];
    work[best] += size;
  }
  work[serial_core] += load.serial_work;

  double makespan = serial_end;
  for (std::size_t i = 0; i < count; ++i) makespan = std::max(makespan, finish[i]);

  SimReport report;
  report.label = chip.label;
  report.makespan = makespan;
  report.serial_end = serial_end;
  report.chunks = sizes.size();

  for (std::size_t i = 0; i < count; ++i) {
    const CoreSpec& core = cores[i];
    const bool active = core.kind == CoreKind::active_sync;
    const bool used = first_start[i] >= 0.0;
    std::vector<Segment> segments;
    if (active) {
      segments.push_back({i == serial_core ? CoreState::busy : CoreState::idle, 0.0, serial_end});
      if (used) segments.push_back({CoreState::busy, first_start[i], finish[i]});
      segments.push_back({CoreState::idle, used ? finish[i] : serial_end, makespan});
    } else {
      segments.push_back({CoreState::off, 0.0, serial_end});
      if (used) {
        segments.push_back({CoreState::waking, serial_end, first_start[i]});
        segments.push_back({CoreState::busy, first_start[i], finish[i]});
      }
      segments.push_back({CoreState::off, used ? finish[i] : serial_end, makespan});
    }

    // Drop empty intervals and merge neighbours in the same state.
    std::vector<Segment> merged;
    for (const auto& s : segments) {
      if (!(s.end > s.start)) continue;
      if (!merged.empty() && merged.back().state == s.state && merged.back().end == s.start) {
        merged.back().end = s.end;
      } else {
        merged.push_back(s);
      }
    }
    if (merged.empty()) merged.push_back({segments.front().state, 0.0, 0.0});

    double energy = 0.0;
    for (const auto& s : merged) {
      energy += core.power_in(s.state) * (s.end - s.start);
      report.timeline.push_back({s.start, core.id, s.state, core.power_in(s.state)});
    }
    report.per_core.push_back({core.id, energy, work[i]});
    report.total_energy += energy;
    report.executed_work += work[i];
  }

  std::stable_sort(report.timeline.begin(), report.timeline.end(), [](const TimelineEvent& a, const TimelineEvent& b) {
    return a.time < b.time || (a.time == b.time && a.core_id < b.core_id);
  });
  const double total_work = load.total_work();
  report.energy_per_computation = total_work > 0.0 ? report.total_energy / total_work : 0.0;
  return report;
}

ComparisonReport compare(const ChipConfig& baseline, const ChipConfig& hama, const Workload& load) {
  ComparisonReport out;
  out.baseline = simulate(baseline, load);
  out.hama = simulate(hama, load);
  out.makespan_ratio = ratio(out.hama.makespan, out.baseline.makespan);
  out.energy_ratio = ratio(out.hama.total_energy, out.baseline.total_energy);
  out.energy_per_computation_ratio =
      ratio(out.hama.energy_per_computation, out.baseline.energy_per_computation);
  const double tb = baseline.total_throughput();
  const double th = hama.total_throughput();
  if (std::abs(tb - th) > 1e-9 * std::max(tb, th)) {
    out.warnings.push_back("total throughput differs: baseline " + std::to_string(tb) + ", hama " +
                           std::to_string(th));
  }
  return out;
}

SerialPowerCheck sequential_power_check(const ChipConfig& chip, const Workload& load) {
  chip.validate();
  if (!(load.serial_work > 0.0)) throw InvalidRequest("sequential power check needs a serial phase");
  const CoreSpec& first = chip.cores.front();
  for (const auto& core : chip.cores) {
    if (core.kind != CoreKind::active_sync || core.power_busy != first.power_busy ||
        core.power_idle != first.power_idle || core.throughput != first.throughput) {
      throw InvalidRequest("sequential power check needs an all-active symmetric chip");
    }
  }
  if (!(first.power_busy > 0.0)) throw InvalidRequest("sequential power check needs power_busy > 0");

  const SimReport report = simulate(chip, load);
  const double end = report.serial_end;

  // Integrate each core's timeline over [0, serial_end].
  double energy = 0.0;
  for (const auto& core : chip.cores) {
    std::vector<TimelineEvent> events;
    for (const auto& e : report.timeline)
      if (e.core_id == core.id) events.push_back(e);
    for (std::size_t i = 0; i < events.size(); ++i) {
      const double from = events[i].time;
      const double to = std::min(end, i + 1 < events.size() ? events[i + 1].time : report.makespan);
      if (to > from) energy += events[i].power * (to - from);
    }
  }

  SerialPowerCheck check;
  check.cores = static_cast<int>(chip.cores.size());
  check.k = first.power_idle / first.power_busy;
  check.measured_average = energy / end / first.power_busy;
  check.expected = 1.0 + (check.cores - 1) * check.k;
  check.normalized = check.measured_average / (check.cores / 2.0);
  check.model_sequential_power = check.expected / (check.cores / 2.0);
  if (std::abs(check.measured_average - check.expected) > 1e-9) {
    throw CorrectnessFailure("serial-phase power " + std::to_string(check.measured_average) +
                             " differs from 1 + (n-1)k = " + std::to_string(check.expected));
  }
  return check;
}

ChipConfig symmetric_chip(int cores, double k, double throughput, std::string label) {
  ChipConfig chip{std::move(label), {}};
  for (int i = 0; i < cores; ++i) {
    chip.cores.push_back({i, CoreKind::active_sync, throughput, 1.0, k, 0.0, std::nullopt});
  }
  return chip;
}

ChipConfig hama_chip(int active, int passive, double k, double wake_latency, double throughput, std::string label) {
  ChipConfig chip{std::move(label), {}};
  int id = 0;
  for (int i = 0; i < active; ++i) {
    chip.cores.push_back({id++, CoreKind::active_sync, throughput, 1.0, k, 0.0, std::nullopt});
  }
  for (int i = 0; i < passive; ++i) {
    chip.cores.push_back({id++, CoreKind::passive_async, throughput, 1.0, 0.0, wake_latency, std::nullopt});
  }
  return chip;
}

}  // namespace hama::sim
