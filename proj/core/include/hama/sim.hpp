#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hama/patterns.hpp"

namespace hama::sim {

enum class CoreKind { active_sync, passive_async };

/// Core power states. Active cores use busy/idle; passive cores use off/waking/busy.
enum class CoreState { off, waking, busy, idle };

std::string_view to_string(CoreKind kind) noexcept;
std::string_view to_string(CoreState state) noexcept;
std::optional<CoreKind> parse_core_kind(std::string_view name) noexcept;

/// One core of the chip. Power is normalised so a baseline busy active core draws
/// 1.0; time is in seconds and work in abstract work-units.
struct CoreSpec {
  int id = 0;
  CoreKind kind = CoreKind::active_sync;
  double throughput = 1.0;  // work-units per second, > 0
  double power_busy = 1.0;
  double power_idle = 0.0;  // active cores only; passive cores never idle
  double wake_latency = 0.0;  // passive cores only
  /// Power drawn while a passive core powers up; defaults to power_busy.
  std::optional<double> power_wake;

  double power_in(CoreState state) const noexcept;
  /// Per-core checks; throws InvalidConfig.
  void validate() const;
};

struct ChipConfig {
  std::string label;
  std::vector<CoreSpec> cores;

  /// Throws InvalidConfig: needs an active core, unique ids, sane power figures.
  void validate() const;
  double total_throughput() const noexcept;
};

struct Workload {
  double serial_work = 0.0;
  double parallel_work = 0.0;
  patterns::PatternKind pattern = patterns::PatternKind::map;
  /// Work-units per chunk; unset means parallel_work / (4 * core count).
  std::optional<double> chunk;

  /// Throws InvalidConfig.
  void validate() const;
  double total_work() const noexcept { return serial_work + parallel_work; }
  /// Parallel fraction; 0 for an empty workload.
  double parallel_fraction() const noexcept;
};

struct TimelineEvent {
  double time = 0.0;
  int core_id = 0;
  CoreState state = CoreState::off;
  double power = 0.0;

  friend bool operator==(const TimelineEvent&, const TimelineEvent&) = default;
};

struct CoreEnergy {
  int core_id = 0;
  double energy = 0.0;
  double work = 0.0;

  friend bool operator==(const CoreEnergy&, const CoreEnergy&) = default;
};

struct SimReport {
  std::string label;
  double makespan = 0.0;
  double serial_end = 0.0;
  std::vector<CoreEnergy> per_core;
  double total_energy = 0.0;
  double energy_per_computation = 0.0;
  /// Work actually executed (serial plus every chunk).
  double executed_work = 0.0;
  std::size_t chunks = 0;
  /// State changes sorted by time, ties by core id. Each core's first event is at
  /// time 0; its last state lasts until the makespan.
  std::vector<TimelineEvent> timeline;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Serial work runs on the fastest active core (lowest id on ties) while other
/// active cores idle and passive cores stay off. Parallel work is cut into chunks
/// assigned in order to whichever core can start earliest (lowest id on ties);
/// a passive core pays wake_latency before its first chunk and powers off as soon
/// as its last chunk finishes. Energy is integrated exactly over the resulting
/// piecewise-constant power timeline up to the makespan.
SimReport simulate(const ChipConfig& chip, const Workload& load);

struct ComparisonReport {
  SimReport baseline;
  SimReport hama;
  /// hama / baseline; 1 when both are zero.
  double makespan_ratio = 1.0;
  double energy_ratio = 1.0;
  double energy_per_computation_ratio = 1.0;
  std::vector<std::string> warnings;
};

ComparisonReport compare(const ChipConfig& baseline, const ChipConfig& hama, const Workload& load);

struct SerialPowerCheck {
  int cores = 1;
  double k = 0.0;
  /// Average chip power over the serial phase, in units of one busy core.
  double measured_average = 0.0;
  /// 1 + (n - 1) k
  double expected = 0.0;
  /// measured_average / (n / 2), comparable with perfmodel::sequential_power.
  double normalized = 0.0;
  double model_sequential_power = 0.0;
};

/// Simulates `load` on an all-active symmetric chip and measures its serial-phase
/// average power. Throws InvalidRequest without a serial phase or for other chips,
/// and CorrectnessFailure when the measurement departs from 1 + (n-1)k by > 1e-9.
SerialPowerCheck sequential_power_check(const ChipConfig& chip, const Workload& load);

/// Convenience roster builders.
ChipConfig symmetric_chip(int cores, double k, double throughput = 1.0, std::string label = "symmetric");
ChipConfig hama_chip(int active, int passive, double k, double wake_latency = 0.0, double throughput = 1.0,
                     std::string label = "hama");

}  // namespace hama::sim
