#include "cmldde/x_solver.hpp"

#include <algorithm>
#include <cmath>

#include "cmldde/errors.hpp"

namespace cmldde {

namespace {

double density_at(const Trajectory& y_traj, double t) {
    const double v = y_traj.eval(t);
    if (v < 0.0 && v >= -1e-9) return 0.0;
    return v;
}

void require_coverage(const ModelParams& p, const Trajectory& y_traj, double t_begin,
                      double t_end) {
    const double slack = 1e-9 * y_traj.step();
    if (y_traj.t_begin() > t_begin - p.r() + slack || y_traj.t_end() < t_end - slack) {
        throw DomainError("y trajectory does not cover the requested span (including the delay)");
    }
}

/// Weights of the rule  int_0^w e^{-gamma v} g(v) dv ~ w (a g(0) + b g(w/2) + c g(w)),
/// exact for quadratic g.
struct ExpSimpson {
    double at_end;    // v = 0
    double at_mid;    // v = w/2
    double at_start;  // v = w
};

ExpSimpson exp_simpson(double gamma, double w) {
    const double z = gamma * w;
    double mu[3];  // int_0^1 v^k e^{-z v} dv
    if (std::abs(z) < 1.0) {
        for (int k = 0; k < 3; ++k) {
            double term = 1.0;
            double sum = 1.0 / (k + 1);
            for (int j = 1; j < 40; ++j) {
                term *= -z / j;
                const double add = term / (k + j + 1);
                sum += add;
                if (std::abs(add) < 1e-18 * std::abs(sum)) break;
            }
            mu[k] = sum;
        }
    } else {
        const double e = std::exp(-z);
        mu[0] = -std::expm1(-z) / z;
        mu[1] = (mu[0] - e) / z;
        mu[2] = (2.0 * mu[1] - e) / z;
    }
    return {2.0 * mu[2] - 3.0 * mu[1] + mu[0], -4.0 * mu[2] + 4.0 * mu[1], 2.0 * mu[2] - mu[1]};
}

}  // namespace

double forcing(const ModelParams& p, const Trajectory& y_traj, double t) {
    const double now = feedback(density_at(y_traj, t), p.beta0(), p.n());
    const double lagged = feedback(density_at(y_traj, t - p.r()), p.beta0(), p.n());
    return now - 0.5 * p.k() * lagged;
}

ForcingTrace forcing_trace(const ModelParams& p, const Trajectory& y_traj, double y_star,
                           double t_begin, double t_end, std::size_t samples) {
    if (samples < 2 || !(t_end > t_begin)) throw DomainError("forcing_trace: bad grid");
    require_coverage(p, y_traj, t_begin, t_end);
    const double ref = (1.0 - 0.5 * p.k()) * feedback(y_star, p.beta0(), p.n());
    ForcingTrace trace;
    trace.y_star = y_star;
    trace.t_begin = t_begin;
    trace.step = (t_end - t_begin) / static_cast<double>(samples - 1);
    trace.h.resize(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        trace.h[j] = forcing(p, y_traj, t_begin + trace.step * static_cast<double>(j)) - ref;
    }
    return trace;
}

Trajectory integrate_x(const ModelParams& p, const Trajectory& y_traj, double x0, double t_end,
                       std::size_t panels) {
    if (!(t_end > 0.0)) throw DomainError("integrate_x: t_end must be > 0");
    if (!std::isfinite(x0)) throw DomainError("integrate_x: x0 must be finite");
    if (panels == 0) throw DomainError("integrate_x: panels must be >= 1");
    const double h = y_traj.step();
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    require_coverage(p, y_traj, 0.0, static_cast<double>(steps) * h);

    const double g = p.gamma();
    const double w = h / static_cast<double>(panels);
    // Panel j of a step ends at t + (j+1) w and is damped by e^{-gamma (panels-1-j) w}.
    const ExpSimpson rule = exp_simpson(g, w);
    std::vector<double> damp(panels);
    for (std::size_t j = 0; j < panels; ++j) {
        damp[j] = std::exp(-g * w * static_cast<double>(panels - 1 - j));
    }
    const double decay = std::exp(-g * h);

    std::vector<double> x(steps + 1);
    std::vector<double> dx(steps + 1);
    double particular = 0.0;
    std::vector<double> f(2 * panels + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * h;
        x[i] = x0 * std::exp(-g * t) + particular;
        if (i == steps) break;
        for (std::size_t q = 0; q < f.size(); ++q) {
            f[q] = forcing(p, y_traj, t + 0.5 * w * static_cast<double>(q));
        }
        double integral = 0.0;
        for (std::size_t j = 0; j < panels; ++j) {
            const std::size_t a = 2 * j;
            integral += damp[j] * (rule.at_start * f[a] + rule.at_mid * f[a + 1] +
                                   rule.at_end * f[a + 2]);
        }
        particular = particular * decay + integral * w;
        if (!std::isfinite(particular)) throw NumericalError("integrate_x: non-finite state", t);
    }
    for (std::size_t i = 0; i <= steps; ++i) {
        dx[i] = -g * x[i] + forcing(p, y_traj, static_cast<double>(i) * h);
    }
    Trajectory traj(h, 0, std::move(x), std::move(dx));
    traj.set_params(p);
    return traj;
}

PeriodicOffset periodic_offset(double gamma, double period, std::span<const double> h) {
    if (!(period > 0.0)) throw DomainError("periodic_offset: period must be > 0");
    if (h.size() < 3 || h.size() % 2 == 0) {
        throw DomainError("periodic_offset: need an odd number (>= 3) of samples");
    }
    const double denom = -std::expm1(-gamma * period);
    if (!(denom >= 1e-12)) {
        throw NumericalError("periodic_offset: 1 - exp(-gamma T) below 1e-12", 0.0);
    }
    // Same panel rule as integrate_x: panel j spans samples 2j..2j+2.
    const std::size_t panels = (h.size() - 1) / 2;
    const double w = period / static_cast<double>(panels);
    const ExpSimpson rule = exp_simpson(gamma, w);
    double integral = 0.0;
    for (std::size_t j = 0; j < panels; ++j) {
        const double damp = std::exp(-gamma * w * static_cast<double>(panels - 1 - j));
        integral += damp * (rule.at_start * h[2 * j] + rule.at_mid * h[2 * j + 1] +
                            rule.at_end * h[2 * j + 2]);
    }
    integral *= w;
    return {integral / denom, 1.0 / denom};
}

PeriodicStart periodic_x0(const ModelParams& p, const Trajectory& y_traj, double t_start,
                          double period, std::size_t samples) {
    const auto eq = positive_equilibrium(p);
    if (!eq) throw PreconditionError("periodic_x0: no positive equilibrium");
    if (!(period > 0.0)) throw DomainError("periodic_x0: period must be > 0");
    if (samples < 3) samples = 3;
    if (samples % 2 == 0) ++samples;
    require_coverage(p, y_traj, t_start, t_start + period);

    PeriodicStart out;
    out.t_start = t_start;
    out.period = period;
    out.mismatch = std::abs(y_traj.eval(t_start + period) - y_traj.eval(t_start));
    if (!(out.mismatch < kPeriodicityTolerance)) {
        throw PreconditionError("periodic_x0: y slice is not periodic within tolerance");
    }
    const ForcingTrace trace =
        forcing_trace(p, y_traj, eq->y_star, t_start, t_start + period, samples);
    const PeriodicOffset off = periodic_offset(p.gamma(), period, trace.h);
    out.x0 = eq->x_star + off.u0;
    out.condition = off.condition;
    return out;
}

ConvergenceReport convergence_check(const Trajectory& traj,
                                    const std::function<double(double)>& target, double window) {
    const double span = traj.t_end() - traj.t_begin();
    if (!(window > 0.0) || !(span > window)) {
        throw DomainError("convergence_check: trajectory must be longer than the window");
    }
    const double cut = traj.t_end() - window;
    const double prev_cut = std::max(traj.t_begin(), cut - window);
    ConvergenceReport rep;
    for (std::size_t i = traj.index_at_or_after(prev_cut); i < traj.size(); ++i) {
        const double t = traj.time(i);
        const double d = std::abs(traj.value(i) - target(t));
        if (t > cut) {
            rep.sup_distance = std::max(rep.sup_distance, d);
        } else {
            rep.previous_sup = std::max(rep.previous_sup, d);
        }
    }
    rep.decaying = rep.sup_distance < rep.previous_sup;
    return rep;
}

ConvergenceReport convergence_check(const Trajectory& traj, double target, double window) {
    return convergence_check(traj, [target](double) { return target; }, window);
}

}  // namespace cmldde
