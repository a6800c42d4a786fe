#pragma once

// Long-time behaviour of simulated orbits: limit-cycle extraction, orbit
// classification, the eigenmode-amplitude bisection for the basin boundary,
// dynamic Hopf criticality probing, and the local bifurcation-zone verdict.

#include <optional>
#include <string_view>
#include <vector>

#include "cmldde/model.hpp"
#include "cmldde/trajectory.hpp"

namespace cmldde {

struct CycleEstimate {
    double amplitude = 0.0;        ///< half peak-to-trough over the last two periods
    std::optional<double> period;  ///< mean peak-to-peak interval
    bool steady = false;           ///< amplitude drift between successive windows < 1%
    std::size_t peaks = 0;
};

/// Signal amplitude below which no period is reported.
inline constexpr double kAmplitudeFloor = 1e-9;

/**
 * Cycles are counted by upward crossings of the mid level with a hysteresis
 * band of a quarter of the range, so ripples on a relaxation cycle are not
 * taken for extra peaks. Fewer than 3 crossings after t_transient gives
 * amplitude 0 and no period. `t_stop` (default: end of trajectory) bounds the
 * analysed signal.
 */
CycleEstimate cycle_estimate(const Trajectory& traj, double t_transient,
                             std::optional<double> t_stop = std::nullopt);

enum class OrbitKind { ConvergesToEquilibrium, ApproachesCycle, GrowingOscillation, Indeterminate };

std::string_view to_string(OrbitKind k);

struct OrbitClass {
    OrbitKind kind = OrbitKind::Indeterminate;
    std::optional<CycleEstimate> cycle;  ///< set for ApproachesCycle
    double sup_distance[3] = {0.0, 0.0, 0.0};  ///< per third of the horizon
    double amplitude[3] = {0.0, 0.0, 0.0};

    bool escaped() const noexcept {
        return kind == OrbitKind::ApproachesCycle || kind == OrbitKind::GrowingOscillation;
    }
};

struct OrbitThresholds {
    double convergence_scale = 1e-3;  ///< converged when sup-distance < scale (1 + |v*|)
    double escape_factor = 5.0;       ///< escaped when amplitude > factor * initial offset
    double growth_margin = 1e-3;      ///< last-third amplitude growth that counts as growing
    /// Initial offset from v*; defaults to the largest deviation at t <= 0.
    std::optional<double> perturbation;
};

/**
 * Decision tree on [0, horizon] split into thirds:
 *   - last-third sup-distance below the convergence threshold and not above
 *     the middle third's: ConvergesToEquilibrium;
 *   - last-third amplitude above the middle third's by growth_margin:
 *     GrowingOscillation;
 *   - a steady cycle above the convergence threshold: ApproachesCycle;
 *   - amplitude beyond escape_factor times the initial offset: GrowingOscillation;
 *   - otherwise Indeterminate.
 * Throws DomainError if the trajectory does not reach `horizon`.
 */
OrbitClass classify_orbit(const Trajectory& traj, double v_star, double horizon,
                          const OrbitThresholds& thresholds = {});

struct ScanProbe {
    double c = 0.0;
    OrbitClass orbit;
    double horizon = 0.0;         ///< horizon that produced the verdict
    double tail_amplitude = 0.0;
};

struct ScanReport {
    double c_converge = 0.0;
    double c_escape = 0.0;
    std::vector<ScanProbe> probes;  ///< in evaluation order
};

struct ScanOptions {
    double dt = 0.0;           ///< 0: r/64
    int max_extensions = 3;    ///< horizon doublings allowed on Indeterminate
};

/// Runs the eigenmode-history probe for one amplitude c, doubling the horizon
/// on Indeterminate up to options.max_extensions times.
ScanProbe probe_amplitude(const ModelParams& p, double c, double horizon,
                          const ScanOptions& options = {});

/**
 * Bisection on the eigenmode amplitude c until c_escape - c_converge <= tol.
 * Throws DomainError for c_lo >= c_hi or tol <= 0, PreconditionError when an
 * endpoint does not classify as required, and NumericalError when a midpoint
 * stays Indeterminate after all horizon extensions.
 */
ScanReport bistability_scan(const ModelParams& p, double c_lo, double c_hi, double tol,
                            double horizon, const ScanOptions& options = {});

enum class Criticality { Supercritical, Subcritical, Inconclusive };

std::string_view to_string(Criticality c);

struct CriticalitySide {
    double offset = 0.0;
    double r = 0.0;
    OrbitClass orbit;
    double amplitude = 0.0;  ///< tail amplitude
    bool decaying = false;   ///< last-third amplitude below the middle third's
};

struct CriticalityReport {
    double r_hopf = 0.0;
    std::vector<CriticalitySide> sides;  ///< input order
    double slope = 0.0;      ///< amplitude^2 vs offset, positive offsets
    double intercept = 0.0;
    double r_squared = 0.0;
    Criticality verdict = Criticality::Inconclusive;
};

/**
 * Integrates at r = r_H + offset from an eigenmode perturbation of amplitude
 * `perturbation` for each offset. Supercritical when every negative offset
 * decays, every positive offset settles on a steady cycle, and amplitude^2 is
 * linear in the offset (R^2 >= 0.9, slope > 0, >= 3 points). Subcritical when
 * a negative offset escapes to a cycle. Inconclusive otherwise.
 * Throws PreconditionError when r_H does not exist and DomainError when the
 * offsets do not straddle 0.
 */
CriticalityReport criticality_probe(double n, double beta0, double k, double delta,
                                    const std::vector<double>& offsets, double horizon,
                                    double perturbation = 0.01);

enum class Zone { Zone1, Zone2, Zone3, Indeterminate };

std::string_view to_string(Zone z);

struct ZoneReport {
    Zone zone = Zone::Indeterminate;
    bool equilibrium_stable = false;
    std::vector<ScanProbe> probes;
};

/**
 * Zone1: stable equilibrium and every probe converges. Zone2: unstable
 * equilibrium and every probe reaches the same steady cycle (amplitude and
 * period within 2%). Zone3: stable equilibrium and at least one probe escapes.
 * Stability comes from classify_positive, falling back to the leading
 * characteristic root when the classifier is Undetermined.
 */
ZoneReport zone_classify(const ModelParams& p, const std::vector<double>& probe_c_values,
                         double horizon);

}  // namespace cmldde
