#include "cmldde/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "cmldde/dde_sim.hpp"
#include "cmldde/errors.hpp"
#include "cmldde/hopf.hpp"
#include "cmldde/linear_analysis.hpp"

namespace cmldde {

namespace {

// Zero of the Hermite slope on [0, 1] between two nodes whose slopes differ in sign.
double slope_root(double v0, double d0, double v1, double d1, double h) {
    const double dv = (v0 - v1) / h;
    const double a = 6.0 * dv + 3.0 * d0 + 3.0 * d1;
    const double b = -6.0 * dv - 4.0 * d0 - 2.0 * d1;
    const double c = d0;
    if (std::abs(a) < 1e-14 * (std::abs(b) + std::abs(c))) {
        return b == 0.0 ? 0.5 : std::clamp(-c / b, 0.0, 1.0);
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::clamp(-b / (2.0 * a), 0.0, 1.0);
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double best = 0.5;
    double best_dist = 2.0;
    for (double root : {q / a, q == 0.0 ? 0.5 : c / q}) {
        const double dist = root < 0.0 ? -root : (root > 1.0 ? root - 1.0 : 0.0);
        if (dist < best_dist) {
            best_dist = dist;
            best = root;
        }
    }
    return std::clamp(best, 0.0, 1.0);
}

// Largest and smallest value on [lo, hi]: nodes plus Hermite-refined interior extrema.
struct Span {
    double top = -std::numeric_limits<double>::infinity();
    double bottom = std::numeric_limits<double>::infinity();

    double half_range() const { return std::isfinite(top) ? 0.5 * (top - bottom) : 0.0; }
};

Span value_span(const Trajectory& traj, std::size_t i0, std::size_t i1) {
    Span out;
    const double h = traj.step();
    for (std::size_t i = i0; i <= i1; ++i) {
        const double v = traj.value(i);
        out.top = std::max(out.top, v);
        out.bottom = std::min(out.bottom, v);
        if (i == i1) break;
        const double d0 = traj.slope(i);
        const double d1 = traj.slope(i + 1);
        if ((d0 > 0.0 && d1 <= 0.0) || (d0 < 0.0 && d1 >= 0.0)) {
            const double v1 = traj.value(i + 1);
            const double e = hermite(v, d0, v1, d1, h, slope_root(v, d0, v1, d1, h));
            out.top = std::max(out.top, e);
            out.bottom = std::min(out.bottom, e);
        }
    }
    return out;
}

// Upward crossings of the mid level, each armed only after the signal has
// dropped below the lower hysteresis band. Crossing times are interpolated.
std::vector<double> upward_crossings(const Trajectory& traj, std::size_t i0, std::size_t i1,
                                     double level, double band) {
    std::vector<double> times;
    bool armed = false;
    for (std::size_t i = i0; i < i1; ++i) {
        const double v0 = traj.value(i);
        const double v1 = traj.value(i + 1);
        if (v0 < level - band) armed = true;
        if (armed && v0 < level && v1 >= level) {
            const double frac = (level - v0) / (v1 - v0);
            times.push_back(traj.time(i) + frac * traj.step());
            armed = false;
        }
    }
    return times;
}

std::size_t last_index_before(const Trajectory& traj, double t) {
    std::size_t i = traj.index_at_or_after(t);
    while (i > 0 && traj.time(i) > t + 1e-9 * traj.step()) --i;
    return i;
}

double default_dt(const ModelParams& p, const ScanOptions& o) {
    return o.dt > 0.0 ? o.dt : p.r() / kDefaultStepsPerDelay;
}

}  // namespace

CycleEstimate cycle_estimate(const Trajectory& traj, double t_transient,
                             std::optional<double> t_stop) {
    const double t_from = std::max(t_transient, traj.t_begin());
    const double t_to = std::min(t_stop.value_or(traj.t_end()), traj.t_end());
    CycleEstimate est;
    if (!(t_to > t_from)) return est;
    const std::size_t i0 = traj.index_at_or_after(t_from);
    const std::size_t i1 = last_index_before(traj, t_to);
    if (i1 <= i0) return est;

    const Span whole = value_span(traj, i0, i1);
    const double range = whole.top - whole.bottom;
    if (!(range > 2.0 * kAmplitudeFloor)) return est;
    const double level = 0.5 * (whole.top + whole.bottom);
    const std::vector<double> ups = upward_crossings(traj, i0, i1, level, 0.25 * range);
    est.peaks = ups.size();
    if (ups.size() < 3) return est;

    const std::size_t intervals = std::min<std::size_t>(ups.size() - 1, 10);
    const double period = (ups.back() - ups[ups.size() - 1 - intervals]) /
                          static_cast<double>(intervals);
    if (!(period > 0.0)) return est;

    const auto window = [&](double lo, double hi) {
        return value_span(traj, traj.index_at_or_after(lo), last_index_before(traj, hi))
            .half_range();
    };
    est.amplitude = window(t_to - 2.0 * period, t_to);
    if (est.amplitude <= kAmplitudeFloor) return est;
    est.period = period;
    if (t_to - t_from >= 10.0 * period) {
        const double previous = window(t_to - 4.0 * period, t_to - 2.0 * period);
        est.steady = previous > 0.0 && std::abs(est.amplitude - previous) < 0.01 * est.amplitude;
    }
    return est;
}

std::string_view to_string(OrbitKind k) {
    switch (k) {
        case OrbitKind::ConvergesToEquilibrium: return "ConvergesToEquilibrium";
        case OrbitKind::ApproachesCycle: return "ApproachesCycle";
        case OrbitKind::GrowingOscillation: return "GrowingOscillation";
        case OrbitKind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

OrbitClass classify_orbit(const Trajectory& traj, double v_star, double horizon,
                          const OrbitThresholds& th) {
    if (!(horizon > 0.0)) throw DomainError("classify_orbit: horizon must be > 0");
    if (traj.t_end() < horizon - 1e-9 * traj.step()) {
        throw DomainError("classify_orbit: trajectory does not reach the horizon");
    }
    OrbitClass out;
    double top[3];
    double bottom[3];
    std::fill(std::begin(top), std::end(top), -std::numeric_limits<double>::infinity());
    std::fill(std::begin(bottom), std::end(bottom), std::numeric_limits<double>::infinity());
    double initial_offset = 0.0;
    const double third = horizon / 3.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time(i);
        const double v = traj.value(i);
        if (t <= 0.0) {
            initial_offset = std::max(initial_offset, std::abs(v - v_star));
            if (t < 0.0) continue;
        }
        if (t > horizon + 1e-9 * traj.step()) break;
        const int part = std::min(2, static_cast<int>(t / third));
        out.sup_distance[part] = std::max(out.sup_distance[part], std::abs(v - v_star));
        top[part] = std::max(top[part], v);
        bottom[part] = std::min(bottom[part], v);
    }
    for (int j = 0; j < 3; ++j) {
        out.amplitude[j] = std::isfinite(top[j]) ? 0.5 * (top[j] - bottom[j]) : 0.0;
    }
    const double offset = th.perturbation.value_or(initial_offset);
    const double tol = th.convergence_scale * (1.0 + std::abs(v_star));

    if (out.sup_distance[2] < tol && out.sup_distance[2] <= out.sup_distance[1]) {
        out.kind = OrbitKind::ConvergesToEquilibrium;
        return out;
    }
    if (out.amplitude[2] > out.amplitude[1] * (1.0 + th.growth_margin)) {
        out.kind = OrbitKind::GrowingOscillation;
        return out;
    }
    const CycleEstimate cyc = cycle_estimate(traj, third, horizon);
    if (cyc.steady && cyc.amplitude > tol) {
        out.kind = OrbitKind::ApproachesCycle;
        out.cycle = cyc;
        return out;
    }
    if (offset > 0.0 && out.amplitude[2] > th.escape_factor * offset) {
        out.kind = OrbitKind::GrowingOscillation;
        return out;
    }
    out.kind = OrbitKind::Indeterminate;
    return out;
}

ScanProbe probe_amplitude(const ModelParams& p, double c, double horizon,
                          const ScanOptions& options) {
    const auto eq = positive_y_star(p.n(), p.beta0(), p.delta(), p.k());
    if (!eq) throw PreconditionError("probe: no positive equilibrium");
    const HistoryFunction history = eigenmode_history(p, c);
    const double dt = default_dt(p, options);
    ScanProbe probe{c, {}, horizon, 0.0};
    for (int ext = 0;; ++ext) {
        const Trajectory traj = integrate_y(p, history, probe.horizon, dt);
        probe.orbit = classify_orbit(traj, *eq, probe.horizon);
        probe.tail_amplitude = probe.orbit.amplitude[2];
        if (probe.orbit.kind != OrbitKind::Indeterminate || ext >= options.max_extensions) break;
        probe.horizon *= 2.0;
    }
    return probe;
}

ScanReport bistability_scan(const ModelParams& p, double c_lo, double c_hi, double tol,
                            double horizon, const ScanOptions& options) {
    if (!(c_lo < c_hi)) throw DomainError("bistability_scan: need c_lo < c_hi");
    if (!(tol > 0.0)) throw DomainError("bistability_scan: tolerance must be > 0");
    if (!(horizon > 0.0)) throw DomainError("bistability_scan: horizon must be > 0");

    auto lo_future = std::async(std::launch::async, [&] {
        return probe_amplitude(p, c_lo, horizon, options);
    });
    const ScanProbe hi_probe = probe_amplitude(p, c_hi, horizon, options);
    const ScanProbe lo_probe = lo_future.get();

    ScanReport rep;
    rep.probes = {lo_probe, hi_probe};
    if (lo_probe.orbit.kind != OrbitKind::ConvergesToEquilibrium) {
        std::ostringstream msg;
        msg << "bistability_scan: lower endpoint c=" << c_lo << " classifies as "
            << to_string(lo_probe.orbit.kind) << ", expected ConvergesToEquilibrium";
        throw PreconditionError(msg.str());
    }
    if (!hi_probe.orbit.escaped()) {
        std::ostringstream msg;
        msg << "bistability_scan: upper endpoint c=" << c_hi << " classifies as "
            << to_string(hi_probe.orbit.kind)
            << ", expected ApproachesCycle or GrowingOscillation";
        throw PreconditionError(msg.str());
    }

    double lo = c_lo;
    double hi = c_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const ScanProbe probe = probe_amplitude(p, mid, horizon, options);
        rep.probes.push_back(probe);
        if (probe.orbit.kind == OrbitKind::ConvergesToEquilibrium) {
            lo = mid;
        } else if (probe.orbit.escaped()) {
            hi = mid;
        } else {
            std::ostringstream msg;
            msg << "bistability_scan: c=" << mid << " stays Indeterminate up to horizon "
                << probe.horizon;
            throw NumericalError(msg.str(), probe.horizon);
        }
    }
    rep.c_converge = lo;
    rep.c_escape = hi;
    return rep;
}

std::string_view to_string(Criticality c) {
    switch (c) {
        case Criticality::Supercritical: return "Supercritical";
        case Criticality::Subcritical: return "Subcritical";
        case Criticality::Inconclusive: return "Inconclusive";
    }
    return "?";
}

CriticalityReport criticality_probe(double n, double beta0, double k, double delta,
                                    const std::vector<double>& offsets, double horizon,
                                    double perturbation) {
    const bool below = std::any_of(offsets.begin(), offsets.end(), [](double d) { return d < 0.0; });
    const bool above = std::any_of(offsets.begin(), offsets.end(), [](double d) { return d > 0.0; });
    if (!below || !above) throw DomainError("criticality_probe: offsets must straddle 0");
    if (!(horizon > 0.0)) throw DomainError("criticality_probe: horizon must be > 0");

    std::optional<HopfPoint> hopf;
    try {
        hopf = hopf_point(n, beta0, k, delta);
    } catch (const NoHopf& e) {
        throw PreconditionError(std::string("criticality_probe: ") + e.what());
    }
    const ModelParams base = hopf->params;
    const double y2 = *positive_y_star(n, beta0, delta, k);

    CriticalityReport rep;
    rep.r_hopf = base.r();
    std::vector<std::future<CriticalitySide>> jobs;
    for (double off : offsets) {
        jobs.push_back(std::async(std::launch::async, [=] {
            CriticalitySide side;
            side.offset = off;
            side.r = base.r() + off;
            const ModelParams p = base.with_delay(side.r);
            const Trajectory traj =
                integrate_y(p, eigenmode_history(p, perturbation), horizon);
            side.orbit = classify_orbit(traj, y2, horizon);
            side.amplitude = side.orbit.cycle ? side.orbit.cycle->amplitude : side.orbit.amplitude[2];
            side.decaying = side.orbit.amplitude[2] < side.orbit.amplitude[1];
            return side;
        }));
    }
    for (auto& j : jobs) rep.sides.push_back(j.get());

    bool negative_decay = true;
    bool negative_escape = false;
    bool positive_cycles = true;
    std::vector<std::pair<double, double>> fit;
    for (const auto& s : rep.sides) {
        if (s.offset < 0.0) {
            negative_decay &= s.orbit.kind == OrbitKind::ConvergesToEquilibrium ||
                              (s.decaying && !s.orbit.escaped());
            negative_escape |= s.orbit.escaped();
        } else if (s.offset > 0.0) {
            const bool cycle = s.orbit.kind == OrbitKind::ApproachesCycle && s.amplitude > 0.0;
            positive_cycles &= cycle;
            if (cycle) fit.emplace_back(s.offset, s.amplitude * s.amplitude);
        }
    }

    if (fit.size() >= 2) {
        const double m = static_cast<double>(fit.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (auto [x, y] : fit) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            syy += y * y;
        }
        const double vx = sxx - sx * sx / m;
        const double vy = syy - sy * sy / m;
        const double cxy = sxy - sx * sy / m;
        if (vx > 0.0) {
            rep.slope = cxy / vx;
            rep.intercept = (sy - rep.slope * sx) / m;
            rep.r_squared = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
        }
    }

    if (negative_escape) {
        rep.verdict = Criticality::Subcritical;
    } else if (negative_decay && positive_cycles && fit.size() >= 3 && rep.slope > 0.0 &&
               rep.r_squared >= 0.9) {
        rep.verdict = Criticality::Supercritical;
    }
    return rep;
}

std::string_view to_string(Zone z) {
    switch (z) {
        case Zone::Zone1: return "Zone1";
        case Zone::Zone2: return "Zone2";
        case Zone::Zone3: return "Zone3";
        case Zone::Indeterminate: return "Indeterminate";
    }
    return "?";
}

ZoneReport zone_classify(const ModelParams& p, const std::vector<double>& probe_c_values,
                         double horizon) {
    if (!positive_y_star(p.n(), p.beta0(), p.delta(), p.k())) {
        throw PreconditionError("zone_classify: no positive equilibrium");
    }
    ZoneReport rep;
    const StabilityVerdict verdict = classify_positive(p);
    std::optional<bool> stable;
    if (verdict.state == Stability::AsymptoticallyStable) {
        stable = true;
    } else if (verdict.state == Stability::Unstable) {
        stable = false;
    } else {
        const double abscissa = spectral_abscissa(p);
        if (abscissa < -1e-9) stable = true;
        if (abscissa > 1e-9) stable = false;
    }
    rep.equilibrium_stable = stable.value_or(false);

    std::vector<std::future<ScanProbe>> jobs;
    for (double c : probe_c_values) {
        jobs.push_back(std::async(std::launch::async, [&p, c, horizon] {
            return probe_amplitude(p, c, horizon, ScanOptions{0.0, 0});
        }));
    }
    for (auto& j : jobs) rep.probes.push_back(j.get());
    if (!stable || rep.probes.empty()) return rep;

    const auto all_converge = std::all_of(rep.probes.begin(), rep.probes.end(), [](const auto& pr) {
        return pr.orbit.kind == OrbitKind::ConvergesToEquilibrium;
    });
    const auto any_escape = std::any_of(rep.probes.begin(), rep.probes.end(),
                                        [](const auto& pr) { return pr.orbit.escaped(); });
    if (*stable) {
        if (all_converge) rep.zone = Zone::Zone1;
        else if (any_escape) rep.zone = Zone::Zone3;
        return rep;
    }

    const CycleEstimate* ref = nullptr;
    bool common = true;
    for (const auto& pr : rep.probes) {
        if (pr.orbit.kind != OrbitKind::ApproachesCycle || !pr.orbit.cycle ||
            !pr.orbit.cycle->period) {
            common = false;
            break;
        }
        const CycleEstimate& cyc = *pr.orbit.cycle;
        if (!ref) {
            ref = &cyc;
            continue;
        }
        common &= std::abs(cyc.amplitude - ref->amplitude) <= 0.02 * ref->amplitude &&
                  std::abs(*cyc.period - *ref->period) <= 0.02 * *ref->period;
    }
    if (common) rep.zone = Zone::Zone2;
    return rep;
}

}  // namespace cmldde
