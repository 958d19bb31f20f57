#include "hama/perfmodel.hpp"

#include <cmath>
#include <string>

#include "hama/error.hpp"
#include "hama/patterns.hpp"

namespace hama::perfmodel {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void check_f(double f) { require(f >= 0.0 && f <= 1.0, "f must lie in [0, 1]"); }
void check_c(double c) { require(c > 0.0 && c < 1.0, "c must lie in (0, 1)"); }
void check_k(double k) { require(k >= 0.0 && k <= 1.0, "k must lie in [0, 1]"); }
void check_n(int n) { require(n >= 1, "n must be at least 1"); }

double asymmetric(double f, int n, double r, double c) {
  const double pr = std::pow(r, c);
  return 1.0 / ((1.0 - f) / pr + f / (pr + n - r));
}

}  // namespace

ModelParams::ModelParams(double f, int n, double r, double c, double k) : f_(f), n_(n), r_(r), c_(c), k_(k) {
  check_f(f);
  check_n(n);
  require(r >= 1.0 && r <= n, "r must lie in [1, n]");
  check_c(c);
  check_k(k);
}

double perf(double r, double c) {
  require(r >= 1.0, "perf requires r >= 1");
  check_c(c);
  return std::pow(r, c);
}

double speedup_asymmetric(const ModelParams& p) { return asymmetric(p.f(), p.n(), p.r(), p.c()); }

double speedup_symmetric(double f, int n) {
  check_f(f);
  check_n(n);
  return 1.0 / ((1.0 - f) + f / n);
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::decreasing_r1: return "decreasing_r1";
    case Regime::increasing_rn: return "increasing_rn";
    case Regime::interior_optimum: return "interior_optimum";
    case Regime::unclassified: return "unclassified";
  }
  return "unclassified";
}

RegimeReport optimal_r(double f, int n, double c) {
  check_f(f);
  check_c(c);
  require(n >= 2, "optimal_r requires n >= 2");

  RegimeReport report;
  report.numeric_max_speedup = asymmetric(f, n, 1.0, c);
  report.numeric_argmax_r = 1;
  for (int r = 2; r <= n; ++r) {
    const double s = asymmetric(f, n, r, c);
    if (s > report.numeric_max_speedup) {
      report.numeric_max_speedup = s;
      report.numeric_argmax_r = r;
    }
  }

  const double nd = n;
  const bool low_condition = f / (nd - 1.0) * (1.0 - c) / c <= nd * nd;
  const bool high_condition = f / nd >= nd / (1.0 - c);
  // c/f is +inf at f = 0, so the interior condition never holds there.
  const bool interior_condition = low_condition && c / f <= std::pow(nd, 1.0 - c);

  const int argmax = report.numeric_argmax_r;
  if (high_condition) {
    report.regime = Regime::increasing_rn;
    report.corollary_agrees = argmax == n;
  } else if (interior_condition) {
    report.regime = Regime::interior_optimum;
    report.corollary_agrees = argmax > 1 && argmax < n;
  } else if (low_condition) {
    report.regime = Regime::decreasing_r1;
    report.corollary_agrees = argmax == 1;
  } else {
    report.regime = Regime::unclassified;
    report.corollary_agrees = false;
  }
  return report;
}

RealArgmax optimal_r_real(double f, int n, double c, double step) {
  check_f(f);
  check_c(c);
  check_n(n);
  require(step > 0.0, "step must be positive");
  RealArgmax best{1.0, asymmetric(f, n, 1.0, c)};
  const auto steps = static_cast<long>(std::floor((n - 1.0) / step));
  for (long i = 1; i <= steps + 1; ++i) {
    const double r = i <= steps ? 1.0 + static_cast<double>(i) * step : static_cast<double>(n);
    if (r > n) break;
    const double s = asymmetric(f, n, r, c);
    if (s > best.speedup) best = {r, s};
  }
  return best;
}

double sequential_power(int n, double k) {
  check_n(n);
  check_k(k);
  return (1.0 + (n - 1) * k) / (n / 2.0);
}

SpeedupInterval speedup_bound(const SpeedupBoundParams& params) {
  require(params.s >= 0.0 && params.p >= 0.0, "s and p must be non-negative");
  require(std::abs(params.s + params.p - 1.0) <= 1e-12, "s + p must equal 1");
  require(params.processors >= 1, "processor count must be at least 1");
  return {1.0, 1.0 / ((params.s + params.p) / params.processors)};
}

std::vector<SweepRow> sweep(const std::vector<double>& f_grid, int n, const std::vector<double>& c_grid,
                            const std::vector<double>& k_grid, std::optional<double> r, std::size_t workers) {
  if (f_grid.empty() || c_grid.empty() || k_grid.empty()) throw InvalidRequest("sweep grids must be nonempty");
  require(n >= 2, "sweep requires n >= 2");
  for (double f : f_grid) check_f(f);
  for (double c : c_grid) check_c(c);
  for (double k : k_grid) check_k(k);
  if (r) require(*r >= 1.0 && *r <= n, "r must lie in [1, n]");

  std::vector<SweepRow> rows;
  rows.reserve(f_grid.size() * c_grid.size() * k_grid.size());
  for (double f : f_grid)
    for (double c : c_grid)
      for (double k : k_grid) rows.push_back({f, n, 1.0, c, k, 0.0, 0.0, {}});

  const auto plan = patterns::PatternInvocation::of(patterns::PatternKind::map, workers);
  return patterns::map(rows, [r](const SweepRow& in) {
    SweepRow row = in;
    row.regime = optimal_r(row.f, row.n, row.c);
    row.r = r ? *r : row.regime.numeric_argmax_r;
    row.speedup = speedup_asymmetric(ModelParams(row.f, row.n, row.r, row.c, row.k));
    row.power = sequential_power(row.n, row.k);
    return row;
  }, plan);
}

}  // namespace hama::perfmodel
