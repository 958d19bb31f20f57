#include "hama/sim_config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "hama/error.hpp"

namespace hama::sim {

namespace {

std::size_t line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) { throw ConfigError(message, line_of(node)); }

void require_map(const YAML::Node& node, const std::string& what) {
  if (!node.IsMap()) fail(node, what + " must be a mapping");
}

void reject_unknown_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                         const std::string& what) {
  for (const auto& entry : node) {
    const auto key = entry.first.as<std::string>();
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(entry.first, "unknown key '" + key + "' in " + what);
  }
}

const YAML::Node required(const YAML::Node& parent, const char* key, const std::string& what) {
  const YAML::Node node = parent[key];
  if (!node) fail(parent, what + " is missing required key '" + key + "'");
  return node;
}

template <class T>
T scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail(node, what + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, what + " has an invalid value '" + node.Scalar() + "'");
  }
}

template <class T>
T scalar_or(const YAML::Node& parent, const char* key, T fallback, const std::string& what) {
  const YAML::Node node = parent[key];
  return node ? scalar<T>(node, what + "." + key) : fallback;
}

CoreSpec parse_core(const YAML::Node& node) {
  require_map(node, "core");
  reject_unknown_keys(node, {"id", "kind", "throughput", "power_busy", "power_idle", "wake_latency", "power_wake"},
                      "core");
  CoreSpec core;
  core.id = scalar<int>(required(node, "id", "core"), "core.id");
  const YAML::Node kind_node = required(node, "kind", "core");
  const auto kind = parse_core_kind(scalar<std::string>(kind_node, "core.kind"));
  if (!kind) fail(kind_node, "core.kind must be active_sync or passive_async");
  core.kind = *kind;
  core.throughput = scalar_or(node, "throughput", 1.0, "core");
  core.power_busy = scalar_or(node, "power_busy", 1.0, "core");
  core.power_idle = scalar_or(node, "power_idle", 0.0, "core");
  core.wake_latency = scalar_or(node, "wake_latency", 0.0, "core");
  if (node["power_wake"]) core.power_wake = scalar<double>(node["power_wake"], "core.power_wake");
  try {
    core.validate();
  } catch (const InvalidConfig& e) {
    fail(node, e.what());
  }
  return core;
}

ChipConfig parse_chip(const YAML::Node& node, const std::string& default_label) {
  ChipConfig chip;
  chip.label = scalar_or<std::string>(node, "label", default_label, "chip");
  const YAML::Node cores = required(node, "cores", "chip");
  if (!cores.IsSequence()) fail(cores, "cores must be a sequence");
  for (const auto& c : cores) chip.cores.push_back(parse_core(c));
  try {
    chip.validate();
  } catch (const InvalidConfig& e) {
    fail(cores, e.what());
  }
  return chip;
}

Workload parse_workload(const YAML::Node& node) {
  require_map(node, "workload");
  reject_unknown_keys(node, {"serial_work", "parallel_work", "pattern", "chunk"}, "workload");
  Workload load;
  load.serial_work = scalar_or(node, "serial_work", 0.0, "workload");
  load.parallel_work = scalar_or(node, "parallel_work", 0.0, "workload");
  if (const YAML::Node p = node["pattern"]) {
    const auto kind = patterns::parse_pattern_kind(scalar<std::string>(p, "workload.pattern"));
    if (!kind) fail(p, "workload.pattern must be one of map, reduce, map_reduce, stencil, farm");
    load.pattern = *kind;
  }
  if (const YAML::Node c = node["chunk"]) load.chunk = scalar<double>(c, "workload.chunk");
  try {
    load.validate();
  } catch (const InvalidConfig& e) {
    fail(node, e.what());
  }
  return load;
}

YAML::Node parse_document(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0);
  }
  if (!root.IsMap()) throw ConfigError("configuration must be a mapping", line_of(root));
  return root;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read configuration file '" + path.string() + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  const YAML::Node root = parse_document(text);
  try {
    reject_unknown_keys(root, {"label", "cores", "workload"}, "run configuration");
    RunConfig config;
    config.chip = parse_chip(root, "chip");
    config.workload = parse_workload(required(root, "workload", "run configuration"));
    return config;
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0);
  }
}

CompareConfig parse_compare_config(std::string_view text) {
  const YAML::Node root = parse_document(text);
  try {
    reject_unknown_keys(root, {"baseline", "hama", "workload"}, "compare configuration");
    CompareConfig config;
    for (auto [key, target] : {std::pair{"baseline", &config.baseline}, std::pair{"hama", &config.hama}}) {
      const YAML::Node chip = required(root, key, "compare configuration");
      require_map(chip, key);
      reject_unknown_keys(chip, {"label", "cores"}, key);
      *target = parse_chip(chip, key);
    }
    config.workload = parse_workload(required(root, "workload", "compare configuration"));
    return config;
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0);
  }
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_file(path)); }

CompareConfig load_compare_config(const std::filesystem::path& path) {
  return parse_compare_config(read_file(path));
}

}  // namespace hama::sim
