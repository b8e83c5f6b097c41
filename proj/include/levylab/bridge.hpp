#pragma once

// Exact laws of a Brownian bridge (no drift; the drift of a Brownian motion
// with drift is invisible once both endpoints are fixed) over one grid
// interval of length `dt` with diffusion coefficient `sigma`.
//
// Every sampler takes its uniform variate(s) explicitly so callers can feed
// either a RandomStream or a keyed (counter-based) uniform.

namespace levylab::bridge {

/// Maximum of the bridge from a to b; u in (0, 1).
double sample_max(double a, double b, double sigma, double dt, double u) noexcept;
/// Minimum of the bridge from a to b; u in (0, 1).
double sample_min(double a, double b, double sigma, double dt, double u) noexcept;

/// P(max of the bridge > level), exact.
double prob_exceeds(double a, double b, double level, double sigma, double dt) noexcept;

/// Value at fraction r of the interval, conditional on the endpoints only.
double sample_point(double a, double b, double r, double sigma, double dt, double z) noexcept;

/// Fraction r in [0, 1] of the interval at which the bridge from a to b
/// attains its maximum `m` (m >= max(a, b)). Passing a negated problem gives
/// the argmin.
double sample_argmax_fraction(double a, double b, double m, double sigma, double dt,
                              double u);

/// Fraction r of the first passage of the bridge started at a through
/// `level`, conditional on the passage happening inside the interval. Works
/// for upward (a < level) and downward (a > level) passages.
double sample_first_passage_fraction(double a, double b, double level, double sigma,
                                     double dt, double u);

/// Fraction r of the last passage through `level`, conditional on one
/// happening: time reversal of the first passage of the bridge from b to a.
double sample_last_passage_fraction(double a, double b, double level, double sigma,
                                    double dt, double u);

/// E[ Lebesgue time in (r0*dt, r1*dt) that the bridge spends strictly above
/// level ], given the endpoints. sigma == 0 means linear interpolation.
double expected_time_above(double a, double b, double level, double sigma, double dt,
                           double r0 = 0.0, double r1 = 1.0);

}  // namespace levylab::bridge
