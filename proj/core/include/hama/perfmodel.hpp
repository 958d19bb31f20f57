#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace hama::perfmodel {

/// Asymmetric-multicore model inputs.
///   f  parallelisable fraction, [0, 1]
///   n  base-core-equivalent resources on the chip, integer >= 1
///   r  resources fused into the big core, [1, n]
///   c  exponent of perf(r) = r^c, (0, 1)
///   k  idle power as a fraction of busy power, [0, 1]
class ModelParams {
 public:
  /// Throws DomainError on any range violation.
  ModelParams(double f, int n, double r, double c, double k = 0.0);

  double f() const noexcept { return f_; }
  int n() const noexcept { return n_; }
  double r() const noexcept { return r_; }
  double c() const noexcept { return c_; }
  double k() const noexcept { return k_; }

 private:
  double f_;
  int n_;
  double r_;
  double c_;
  double k_;
};

/// Sequential performance of a core built from r base-core resources: r^c.
double perf(double r, double c);

/// 1 / ((1-f)/perf(r) + f/(perf(r) + n - r))
double speedup_asymmetric(const ModelParams& params);

/// Amdahl: 1 / ((1-f) + f/n)
double speedup_symmetric(double f, int n);

enum class Regime { decreasing_r1, increasing_rn, interior_optimum, unclassified };

std::string_view to_string(Regime regime) noexcept;

struct RegimeReport {
  /// Regime predicted by the closed-form corollary conditions.
  Regime regime = Regime::unclassified;
  int numeric_argmax_r = 1;
  double numeric_max_speedup = 0.0;
  /// Whether the predicted optimum location matches the exhaustive sweep.
  bool corollary_agrees = false;
};

/// Exhaustive integer sweep of r over {1..n} (ties go to the smallest r) plus the
/// regime the three corollary inequalities predict. The inequalities are evaluated
/// literally, with no correction:
///   decreasing_r1     f/(n-1) * (1-c)/c <= n^2
///   increasing_rn     f/n >= n/(1-c)
///   interior_optimum  f/(n-1) * (1-c)/c <= n^2  and  c/f <= n^(1-c)
/// Checked in the order increasing_rn, interior_optimum, decreasing_r1; the first
/// that holds is reported. Requires n >= 2.
RegimeReport optimal_r(double f, int n, double c);

struct RealArgmax {
  double r = 1.0;
  double speedup = 0.0;
};

/// Same objective swept over real r in [1, n] with the given step (n itself is
/// always included). Ties go to the smallest r.
RealArgmax optimal_r_real(double f, int n, double c, double step = 0.01);

/// Average chip power during a sequential phase, as the literal formula
/// (1 + (n-1)k) / (n/2).
double sequential_power(int n, double k);

struct SpeedupBoundParams {
  double s = 0.01;  // serial fraction
  double p = 0.99;  // parallel fraction, s + p = 1
  int processors = 1;
  double f_max_hz = 0.0;  // informational frequency cap
};

/// Achievable-speedup interval [1, 1/((s+p)/N)]. This bound is a speedup and is
/// unrelated to the idle-power fraction k of ModelParams.
struct SpeedupInterval {
  double low = 1.0;
  double high = 1.0;
};

SpeedupInterval speedup_bound(const SpeedupBoundParams& params);

struct SweepRow {
  double f = 0.0;
  int n = 1;
  double r = 1.0;
  double c = 0.5;
  double k = 0.0;
  double speedup = 0.0;
  double power = 0.0;
  RegimeReport regime;
};

/// Cartesian product over f x c x k (f outermost, k innermost). Each row reports
/// speedup_asymmetric at `r` when given, otherwise at the row's optimal integer r,
/// plus sequential_power(n, k) and optimal_r(f, n, c). Throws InvalidRequest on an
/// empty grid. `workers` > 1 evaluates rows with the map pattern; row order is
/// unaffected.
std::vector<SweepRow> sweep(const std::vector<double>& f_grid, int n, const std::vector<double>& c_grid,
                            const std::vector<double>& k_grid, std::optional<double> r = std::nullopt,
                            std::size_t workers = 1);

}  // namespace hama::perfmodel
