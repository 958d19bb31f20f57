#pragma once

// Simulator configuration files.
//
// YAML (a JSON document is also accepted). A run file describes one chip and a
// workload:
//
//   label: hama-quad
//   cores:
//     - {id: 0, kind: active_sync, throughput: 1.0, power_busy: 1.0, power_idle: 0.3}
//     - {id: 1, kind: passive_async, throughput: 1.0, power_busy: 1.0, wake_latency: 0.0}
//   workload:
//     serial_work: 9
//     parallel_work: 1
//     pattern: map        # map | reduce | map_reduce | stencil | farm
//     chunk: 0.0625       # optional, work-units per chunk
//
// Core fields: id (int, required), kind (required), throughput (default 1),
// power_busy (default 1), power_idle (default 0), wake_latency (default 0),
// power_wake (default power_busy). A compare file holds `baseline` and `hama`
// chips (each with label and cores) and one shared `workload`. Unknown keys are
// rejected. Every error is a ConfigError carrying the 1-based line number.

#include <filesystem>
#include <string_view>

#include "hama/sim.hpp"

namespace hama::sim {

struct RunConfig {
  ChipConfig chip;
  Workload workload;
};

struct CompareConfig {
  ChipConfig baseline;
  ChipConfig hama;
  Workload workload;
};

RunConfig parse_run_config(std::string_view text);
CompareConfig parse_compare_config(std::string_view text);

RunConfig load_run_config(const std::filesystem::path& path);
CompareConfig load_compare_config(const std::filesystem::path& path);

}  // namespace hama::sim
