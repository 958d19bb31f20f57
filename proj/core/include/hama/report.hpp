#pragma once

// CSV and JSON serialisation of every report the tools emit. Column and key order
// is fixed; rows end with '\n'. Non-finite numbers are written as JSON null (and
// read back as +inf) or as "inf" in CSV.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hama/bench.hpp"
#include "hama/perfmodel.hpp"
#include "hama/sim.hpp"

namespace hama::report {

enum class Format { csv, json };

std::optional<Format> parse_format(std::string_view name) noexcept;

/// Shortest decimal form that reads back to the same double.
std::string format_number(double value);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

// perfmodel ------------------------------------------------------------------
inline constexpr std::string_view kSweepColumns = "f,n,r,c,k,speedup,power,regime,argmax_r,corollary_agrees";

std::string sweep_csv(const std::vector<perfmodel::SweepRow>& rows);
std::string sweep_json(const std::vector<perfmodel::SweepRow>& rows);

// simulator ------------------------------------------------------------------
inline constexpr std::string_view kTimelineColumns = "time,core_id,state,power";

std::string sim_json(const sim::SimReport& report, bool include_timeline, const std::string& timestamp);
std::string sim_csv(const sim::SimReport& report);
std::string timeline_csv(const sim::SimReport& report);
/// Inverse of sim_json; the timeline is restored only if it was written.
sim::SimReport sim_from_json(const std::string& text);

std::string comparison_json(const sim::ComparisonReport& report, bool include_timeline, const std::string& timestamp);
std::string comparison_csv(const sim::ComparisonReport& report);

// bench ----------------------------------------------------------------------
inline constexpr std::string_view kBenchColumns = "variant,seconds,speedup,workers,checksum";

std::string bench_csv(const bench::BenchReport& report);
std::string bench_json(const bench::BenchReport& report);
bench::BenchReport bench_from_json(const std::string& text);

/// Writes text to `path`, or to `fallback` when path is empty or "-".
/// Throws IoError when the file cannot be written.
void write_output(const std::string& text, const std::string& path, std::ostream& fallback);

}  // namespace hama::report
