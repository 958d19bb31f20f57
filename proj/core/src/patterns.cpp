#include "hama/patterns.hpp"

#include <array>

namespace hama::patterns {

namespace {

constexpr std::array<std::pair<PatternKind, std::string_view>, 5> kKindNames{{
    {PatternKind::map, "map"},
    {PatternKind::reduce, "reduce"},
    {PatternKind::map_reduce, "map_reduce"},
    {PatternKind::stencil, "stencil"},
    {PatternKind::farm, "farm"},
}};

}  // namespace

std::string_view to_string(PatternKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<PatternKind> parse_pattern_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  if (name == "map-reduce") return PatternKind::map_reduce;
  return std::nullopt;
}

std::string_view to_string(Boundary boundary) noexcept {
  return boundary == Boundary::clamp ? "clamp" : "wrap";
}

void PatternInvocation::validate(PatternKind expected) const {
  if (kind != expected) {
    throw InvalidPlan("plan is for pattern '" + std::string(to_string(kind)) + "' but '" +
                      std::string(to_string(expected)) + "' was invoked");
  }
  if (workers == 0) throw InvalidPlan("worker count must be at least 1");
  if (chunk && *chunk == 0) throw InvalidPlan("chunk size must be at least 1");
}

std::size_t PatternInvocation::chunk_for(std::size_t length) const noexcept {
  if (chunk) return *chunk;
  const std::size_t tasks = 4 * std::max<std::size_t>(workers, 1);
  return std::max<std::size_t>(1, (length + tasks - 1) / tasks);
}

}  // namespace hama::patterns
