#pragma once

/**
 * @file x_solver.hpp
 * @brief The proliferating-cell equation x' = -gamma x + F(y)(t), driven by a
 *        precomputed y trajectory, where
 *        F(y)(t) = f(y(t)) - (k/2) f(y(t - r)).
 *
 * Solutions are propagated with the variation-of-constants formula
 *
 *   x(t) = x0 e^{-gamma t} + int_0^t e^{gamma (s - t)} F(y)(s) ds,
 *
 * one y-step at a time. Each Simpson panel integrates the exponential weight
 * exactly against the quadratic interpolant of F, so constant forcing is exact.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cmldde/model.hpp"
#include "cmldde/trajectory.hpp"

namespace cmldde {

/// F(y)(t) evaluated on the dense y trajectory.
double forcing(const ModelParams& p, const Trajectory& y_traj, double t);

/// H(y)(t) = F(y)(t) - F(y*) sampled on a uniform grid.
struct ForcingTrace {
    double y_star = 0.0;
    double t_begin = 0.0;
    double step = 0.0;
    std::vector<double> h;
};

/// `samples` >= 2 points on [t_begin, t_end].
ForcingTrace forcing_trace(const ModelParams& p, const Trajectory& y_traj, double y_star,
                           double t_begin, double t_end, std::size_t samples);

/**
 * x on the node grid of y_traj over [0, t_end], starting from x(0) = x0.
 * Each node interval is split into `panels` Simpson panels. Node slopes are
 * the right-hand side of the x equation. Throws DomainError when y_traj does
 * not cover [-r, t_end] or the inputs are invalid.
 */
Trajectory integrate_x(const ModelParams& p, const Trajectory& y_traj, double x0, double t_end,
                       std::size_t panels = 1);

/**
 * Fixed point u~ of the period map of u' = -gamma u + H(t) for a T-periodic H
 * sampled uniformly on [0, T] (h.size() odd, >= 3, endpoints included):
 *
 *   u~ = (1 - e^{-gamma T})^{-1} int_0^T e^{gamma (s - T)} H(s) ds.
 */
struct PeriodicOffset {
    double u0 = 0.0;
    double condition = 0.0;  ///< (1 - e^{-gamma T})^{-1}
};

/// Throws NumericalError when 1 - e^{-gamma T} < 1e-12.
PeriodicOffset periodic_offset(double gamma, double period, std::span<const double> h);

struct PeriodicStart {
    double x0 = 0.0;         ///< value at t_start that makes x periodic
    double t_start = 0.0;
    double period = 0.0;
    double condition = 0.0;
    double mismatch = 0.0;   ///< |y(t_start + T) - y(t_start)|
};

/// Tolerance on |y(t_start + T) - y(t_start)|.
inline constexpr double kPeriodicityTolerance = 1e-6;

/**
 * Initial value x~0 = x2 + u~ at t_start for the one-period slice
 * [t_start, t_start + period] of y_traj, resampled onto `samples` uniform
 * points (made odd if needed). Throws PreconditionError when the slice is not
 * periodic within kPeriodicityTolerance.
 */
PeriodicStart periodic_x0(const ModelParams& p, const Trajectory& y_traj, double t_start,
                          double period, std::size_t samples = 4097);

struct ConvergenceReport {
    double sup_distance = 0.0;   ///< trailing window
    double previous_sup = 0.0;   ///< the window just before it
    bool decaying = false;       ///< sup_distance < previous_sup
};

/// Sup |v(t) - target(t)| over the trailing `window` of traj, compared with the
/// preceding window (clipped at the start of traj). Throws DomainError unless
/// traj is longer than the window.
ConvergenceReport convergence_check(const Trajectory& traj,
                                    const std::function<double(double)>& target, double window);
ConvergenceReport convergence_check(const Trajectory& traj, double target, double window);

}  // namespace cmldde
