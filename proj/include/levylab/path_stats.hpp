#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "levylab/path.hpp"

namespace levylab {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// Location of an extreme: the interval holding it, its time and value.
/// `interval` is size() - 1 when the extreme sits at the final point.
struct Extreme {
  std::size_t interval = 0;
  double time = 0.0;
  double value = 0.0;
};

/// First passage strictly above (or below) a level.
struct Passage {
  double time = kNever;
  std::size_t interval = 0;
  bool by_jump = false;
  double before = 0.0;  // left limit at the passage time
  double after = 0.0;   // value at the passage time
  bool happened() const noexcept { return time != kNever; }
};

/// Per-level functionals requested through `levels`.
struct LevelStats {
  double level = 0.0;
  double tau = kNever;         // inf{t : xi_t > level}
  double last_above = 0.0;     // sup{t : xi_t > level}
  double last_below = 0.0;     // sup{t : xi_t <= level}
  double occupation_above = 0.0;
};

struct PathStats {
  double sup = 0.0;
  double argmax = 0.0;
  double inf = 0.0;
  double argmin = 0.0;
  double tau = kNever;          // first entrance into (0, inf)
  double first_neg = kNever;    // first entrance into (-inf, 0)
  double occupation_pos = 0.0;  // Lebesgue time with xi > 0
  double last_pos = 0.0;        // sup{t : xi_t > 0}
  std::vector<LevelStats> levels;
};

/// Earliest time of the supremum. Inside an interval the epoch is drawn from
/// the exact law of the bridge argmax given the stored maximum, using the
/// path's keyed variates (so repeated calls agree).
Extreme locate_max(const SampledPath& path);
Extreme locate_min(const SampledPath& path);

Passage first_passage_above(const SampledPath& path, double level);
Passage first_passage_below(const SampledPath& path, double level);

/// sup{t : xi_t > level}; the start of life when the set is empty.
double last_time_above(const SampledPath& path, double level);
/// sup{t : xi_t <= level}; the start of life when the set is empty.
double last_time_below(const SampledPath& path, double level);

/// Lebesgue time in [t0, t1] with xi_t > level. Each interval contributes the
/// bridge's expected occupation given its endpoints and given whether its
/// stored extremes cross the level.
double occupation_above(const SampledPath& path, double level,
                        double t0 = -std::numeric_limits<double>::infinity(),
                        double t1 = std::numeric_limits<double>::infinity());

PathStats path_stats(const SampledPath& path, const std::vector<double>& levels = {});

/// Inserts a grid point at the argmax (unless it already is one) and returns
/// its index.
std::size_t split_at_max(SampledPath& path);
std::size_t split_at_min(SampledPath& path);
/// Inserts a point at the first passage above `level`; returns its index or
/// nullopt when there is none. A jump crossing is already a grid point.
std::optional<std::size_t> split_at_first_passage(SampledPath& path, double level);
/// Inserts a point at the last time below-or-at `level`.
std::optional<std::size_t> split_at_last_below(SampledPath& path, double level);
std::optional<std::size_t> split_at_last_above(SampledPath& path, double level);

/// Time reversal at `pivot` as a two-sided path: u -> xi((pivot - u)-).
TwoSidedPath reverse_path(const SampledPath& path, double pivot);
TwoSidedPath reverse_path(const TwoSidedPath& path, double pivot);

/// Re-origins time at `shift_at` and optionally kills the forward part at
/// `kill_at` (in the new time coordinate).
TwoSidedPath shift_kill(const SampledPath& path, double shift_at,
                        std::optional<double> kill_at = std::nullopt);
TwoSidedPath shift_kill(const TwoSidedPath& path, double shift_at,
                        std::optional<double> kill_at = std::nullopt);

/// The reversed pre-maximum process t -> sup - xi((sigma - t)-), 0 <= t < sigma.
SampledPath reversed_pre_max(const SampledPath& path);

/// Returns the part of `path` after its argmax, re-based to start at time 0
/// with the supremum subtracted.
SampledPath post_max(SampledPath path);
/// Same around the argmin, with the infimum subtracted.
SampledPath post_min(SampledPath path);

}  // namespace levylab
