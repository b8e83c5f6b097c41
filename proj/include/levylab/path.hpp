#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace levylab {

class RandomStream;

/// Raised when arithmetic touches the "dead" value that a path takes outside
/// its life-interval.
class DeadValueError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Value of a path at a time: a real number, or the isolated extra point
/// ("dead") outside the life-interval.
class PathValue {
 public:
  PathValue(double v) noexcept : v_(v), alive_(true) {}  // NOLINT(implicit)
  static PathValue dead() noexcept { return PathValue(); }

  bool is_dead() const noexcept { return !alive_; }
  double value() const {
    if (!alive_) throw DeadValueError("dead path value used as a real number");
    return v_;
  }

  friend PathValue operator+(const PathValue& p, double x) { return p.value() + x; }
  friend PathValue operator-(const PathValue& p, double x) { return p.value() - x; }
  friend PathValue operator-(double x, const PathValue& p) { return x - p.value(); }

 private:
  PathValue() noexcept = default;
  double v_ = 0.0;
  bool alive_ = false;
};

/// Discretised cadlag path on a hybrid grid.
///
/// Point i stores the cadlag value xi(t_i) and the jump xi(t_i) - xi(t_i-),
/// so the left limit is values[i] - jumps[i]. Between consecutive points the
/// continuous part is a Brownian bridge with coefficient `sigma` (sigma == 0
/// means linear interpolation) from values[i] to the left limit at t_{i+1};
/// bridge_max[i] / bridge_min[i] hold exact draws of its extremes.
///
/// The first point starts the life-interval and carries no jump. The last
/// point closes it and stores the left limit there. `open` distinguishes a
/// path truncated at a horizon from one killed at its last time.
///
/// A path may start at a negative time; this is how a two-sided path is
/// represented on the whole real line (see TwoSidedPath::timeline()).
struct SampledPath {
  double step = 0.0;
  double sigma = 0.0;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> jumps;
  std::vector<double> bridge_max;
  std::vector<double> bridge_min;
  std::uint64_t key = 0;
  bool open = true;

  bool empty() const noexcept { return times.empty(); }
  std::size_t size() const noexcept { return times.size(); }
  std::size_t intervals() const noexcept { return times.empty() ? 0 : times.size() - 1; }
  double start_time() const { return times.front(); }
  double life_end() const { return times.back(); }
  double start_value() const { return values.front(); }
  double left_value(std::size_t i) const { return values[i] - jumps[i]; }
  double dt(std::size_t i) const { return times[i + 1] - times[i]; }
  std::size_t jump_count() const noexcept;

  /// Appends a point closing the current last interval.
  void push(double t, double value, double jump, double bmax, double bmin);
  /// Checks every structural invariant; throws PathError on violation.
  void validate() const;
};

/// Index of the interval [t_i, t_{i+1}) containing t, clamped to the last
/// interval for t at the end of life.
std::size_t interval_index(const SampledPath& path, double t);

/// Value at time t: stored value on grid points, linear interpolation of the
/// continuous part inside an interval, dead outside the life-interval.
PathValue value_at(const SampledPath& path, double t);

/// Inserts a grid point at time t strictly inside an interval and returns its
/// index. The new point has no jump. The caller may pin the extremes of the
/// two sub-intervals; unpinned extremes are drawn from the sub-bridge laws
/// with the path key and clamped to the original interval's extremes.
struct SubExtremes {
  std::optional<double> left_max, left_min, right_max, right_min;
};
std::size_t insert_point(SampledPath& path, double t, double value,
                         const SubExtremes& pin = {});

/// Points i0..i1 as a new path; the first point loses its jump and the last
/// stores the left limit.
SampledPath slice(const SampledPath& path, std::size_t i0, std::size_t i1);

/// Time shift t -> t + dt.
SampledPath shifted(SampledPath path, double dt);

/// Value map x -> sign * x + offset, sign = +1 or -1.
SampledPath affine_values(SampledPath path, int sign, double offset);

/// Pure time reversal t -> xi((pivot - t)-), left limits adjusted.
SampledPath time_reversed(const SampledPath& path, double pivot);

/// Concatenation: `tail` (starting at time 0) is appended after `head`'s end.
SampledPath concatenate(SampledPath head, const SampledPath& tail);

/// Path on the same grid refined by one bridge midpoint per interval, with
/// fresh extremes for both halves; a valid sample at half the step.
SampledPath refine_path(const SampledPath& path, RandomStream& rng);

/// Keeps the life-interval up to the first grid time >= t_end.
SampledPath truncate_at_grid(SampledPath path, double t_end);

/// CSV: time,value,is_jump,bridge_max (bridge_max empty on the last row).
void write_path_csv(std::ostream& os, const SampledPath& path);

/// Two one-sided paths put back-to-back: `forward` is t -> xi_t and
/// `backward` is t -> -xi_{(-t)-}, both for t >= 0.
struct TwoSidedPath {
  SampledPath backward;
  SampledPath forward;

  /// The glued path on the real line; starts at -backward.life_end().
  SampledPath timeline() const;
  /// Splits a real-line path at time 0 (inserting a point there if needed).
  static TwoSidedPath from_timeline(SampledPath line);

  PathValue at(double t) const;
};

}  // namespace levylab
