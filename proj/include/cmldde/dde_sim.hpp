#pragma once

// Method-of-steps RK4 integration of the resting-cell equation
//   y'(t) = -[beta0/(1+y^n) + delta] y(t) + k beta0 y(t-r) / (1+y(t-r)^n)
// with dense (cubic Hermite) output and the initial functions used to probe
// the equilibrium's basin.

#include <variant>
#include <vector>

#include "cmldde/model.hpp"
#include "cmldde/trajectory.hpp"

namespace cmldde {

struct ConstantHistory {
    double value = 0.0;
};

/// y_base + c exp(mu s) cos(omega s), s in [-r, 0].
struct EigenmodeHistory {
    double y_base = 0.0;
    double c = 0.0;
    double mu = 0.0;
    double omega = 0.0;
};

/// Samples (s_i, y_i) with increasing s covering [-r, 0]; evaluated by cubic
/// Hermite interpolation with finite-difference slopes.
struct SampledHistory {
    std::vector<double> s;
    std::vector<double> y;
};

/**
 * @brief Initial function of the delay equation on [-r, 0].
 */
class HistoryFunction {
public:
    using Kind = std::variant<ConstantHistory, EigenmodeHistory, SampledHistory>;

    /// Throws DomainError for a negative constant, unsorted or short samples,
    /// or samples that do not cover [-r, 0].
    HistoryFunction(Kind kind, double r);

    double value(double s) const;
    double slope(double s) const;
    double delay() const noexcept { return r_; }
    const Kind& kind() const noexcept { return kind_; }

    /// Smallest value over a fine sampling of [-r, 0] (exact for Constant).
    double min_value() const;
    /// Largest |phi(s) - ref| over the same sampling.
    double max_deviation(double ref) const;

private:
    Kind kind_;
    double r_;
    std::vector<double> sampled_slopes_;
};

/// Default step r/64.
inline constexpr int kDefaultStepsPerDelay = 64;

/// Values in [-kNegativeTolerance, 0) are treated as roundoff and set to 0;
/// anything lower is reported as a NumericalError.
inline constexpr double kNegativeTolerance = 1e-9;

/**
 * Integrates y on [0, t_end] by classical RK4 with step h = r/M, where
 * M = ceil(r/dt) so that h <= dt divides r exactly. Delayed values at full
 * steps are stored nodes; at half steps they come from the Hermite
 * interpolant (or from the history itself while t - r < 0).
 *
 * The returned trajectory covers [-r, t_end'] with t_end' = ceil(t_end/h) h.
 * Throws DomainError for dt <= 0 or t_end <= 0, and NumericalError (with the
 * last valid time) on NaN or a positivity violation.
 */
Trajectory integrate_y(const ModelParams& p, const HistoryFunction& history, double t_end,
                       double dt);

Trajectory integrate_y(const ModelParams& p, const HistoryFunction& history, double t_end);

/// Eigenmode(y2, c, mu, omega) from the leading complex pair of the
/// characteristic equation. Throws PreconditionError if y2 does not exist or
/// the leading root is real.
HistoryFunction eigenmode_history(const ModelParams& p, double c);

struct PhasePoint {
    double t = 0.0;
    double value = 0.0;
    double slope = 0.0;
};

/// (t, y, y') at stored nodes; y' is the history derivative for t < 0 and the
/// right-hand side evaluated on the stored solution for t >= 0.
std::vector<PhasePoint> derivative_series(const Trajectory& traj);

}  // namespace cmldde
