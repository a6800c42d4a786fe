#include "cmldde/dde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmldde/errors.hpp"
#include "cmldde/linear_analysis.hpp"

namespace cmldde {

namespace {

constexpr int kHistoryProbe = 1024;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t segment_of(const std::vector<double>& s, double x) {
    auto it = std::upper_bound(s.begin(), s.end(), x);
    std::size_t i = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
    return std::min(i, s.size() - 2);
}

}  // namespace

HistoryFunction::HistoryFunction(Kind kind, double r) : kind_(std::move(kind)), r_(r) {
    if (!(r_ > 0.0)) throw DomainError("HistoryFunction: delay must be > 0");
    if (const auto* c = std::get_if<ConstantHistory>(&kind_)) {
        if (!(c->value >= 0.0)) throw DomainError("HistoryFunction: constant must be >= 0");
    }
    if (const auto* sm = std::get_if<SampledHistory>(&kind_)) {
        const auto& s = sm->s;
        if (s.size() < 2 || s.size() != sm->y.size()) {
            throw DomainError("HistoryFunction: need >= 2 samples with matching sizes");
        }
        if (!std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw DomainError("HistoryFunction: sample times must be strictly increasing");
        }
        const double eps = 1e-12 * (1.0 + r_);
        if (s.front() > -r_ + eps || s.back() < -eps) {
            throw DomainError("HistoryFunction: samples must cover [-r, 0]");
        }
        const std::size_t n = s.size();
        sampled_slopes_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t a = i == 0 ? 0 : i - 1;
            const std::size_t b = i + 1 == n ? n - 1 : i + 1;
            sampled_slopes_[i] = (sm->y[b] - sm->y[a]) / (s[b] - s[a]);
        }
    }
}

double HistoryFunction::value(double s) const {
    return std::visit(
        Overloaded{
            [](const ConstantHistory& c) { return c.value; },
            [s](const EigenmodeHistory& e) {
                if (e.c == 0.0) return e.y_base;
                return e.y_base + e.c * std::exp(e.mu * s) * std::cos(e.omega * s);
            },
            [this, s](const SampledHistory& sm) {
                const std::size_t i = segment_of(sm.s, s);
                const double h = sm.s[i + 1] - sm.s[i];
                return hermite(sm.y[i], sampled_slopes_[i], sm.y[i + 1], sampled_slopes_[i + 1],
                               h, (s - sm.s[i]) / h);
            },
        },
        kind_);
}

double HistoryFunction::slope(double s) const {
    return std::visit(
        Overloaded{
            [](const ConstantHistory&) { return 0.0; },
            [s](const EigenmodeHistory& e) {
                return e.c * std::exp(e.mu * s) *
                       (e.mu * std::cos(e.omega * s) - e.omega * std::sin(e.omega * s));
            },
            [this, s](const SampledHistory& sm) {
                const std::size_t i = segment_of(sm.s, s);
                const double h = sm.s[i + 1] - sm.s[i];
                return hermite_slope(sm.y[i], sampled_slopes_[i], sm.y[i + 1],
                                     sampled_slopes_[i + 1], h, (s - sm.s[i]) / h);
            },
        },
        kind_);
}

double HistoryFunction::min_value() const {
    if (const auto* c = std::get_if<ConstantHistory>(&kind_)) return c->value;
    double lo = value(0.0);
    for (int j = 0; j <= kHistoryProbe; ++j) {
        lo = std::min(lo, value(-r_ + r_ * j / kHistoryProbe));
    }
    if (const auto* sm = std::get_if<SampledHistory>(&kind_)) {
        for (double v : sm->y) lo = std::min(lo, v);
    }
    return lo;
}

double HistoryFunction::max_deviation(double ref) const {
    if (const auto* c = std::get_if<ConstantHistory>(&kind_)) return std::abs(c->value - ref);
    double hi = std::abs(value(0.0) - ref);
    for (int j = 0; j <= kHistoryProbe; ++j) {
        hi = std::max(hi, std::abs(value(-r_ + r_ * j / kHistoryProbe) - ref));
    }
    return hi;
}

namespace {

double guard_density(double v, double t) {
    if (std::isnan(v)) {
        throw NumericalError("integrate_y: NaN encountered", t);
    }
    if (v < 0.0) {
        if (v >= -kNegativeTolerance) return 0.0;
        std::ostringstream msg;
        msg << "integrate_y: positivity violated (y = " << v << ")";
        throw NumericalError(msg.str(), t);
    }
    return v;
}

}  // namespace

Trajectory integrate_y(const ModelParams& p, const HistoryFunction& history, double t_end,
                       double dt) {
    if (!(dt > 0.0)) throw DomainError("integrate_y: dt must be > 0");
    if (!(t_end > 0.0)) throw DomainError("integrate_y: t_end must be > 0");
    const double r = p.r();
    if (std::abs(history.delay() - r) > 1e-12 * r) {
        throw DomainError("integrate_y: history is defined for a different delay");
    }
    if (history.min_value() < -kNegativeTolerance) {
        throw DomainError("integrate_y: initial function must be non-negative");
    }

    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(r / dt - 1e-12)));
    const double h = r / static_cast<double>(m);
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    const std::size_t total = m + steps + 1;

    std::vector<double> y(total);
    std::vector<double> dy(total);
    for (std::size_t j = 0; j <= m; ++j) {
        const double s = j == 0 ? -r : -static_cast<double>(m - j) * h;
        y[j] = std::max(0.0, history.value(s));
        dy[j] = history.slope(s);
    }
    dy[m] = rhs_y(y[m], y[0], p);

    const auto f = [&](double yn, double yd, double t) {
        return rhs_y(guard_density(yn, t), guard_density(yd, t), p);
    };

    for (std::size_t i = m; i + 1 < total; ++i) {
        const double t = static_cast<double>(i - m) * h;
        const std::size_t d = i - m;  // node holding y(t - r)
        const double yd0 = y[d];
        const double yd1 = y[d + 1];
        const double ydm = d + 1 <= m ? history.value(t - r + 0.5 * h)
                                      : hermite(y[d], dy[d], y[d + 1], dy[d + 1], h, 0.5);
        const double yi = y[i];
        const double k1 = f(yi, yd0, t);
        const double k2 = f(yi + 0.5 * h * k1, ydm, t);
        const double k3 = f(yi + 0.5 * h * k2, ydm, t);
        const double k4 = f(yi + h * k3, yd1, t);
        const double next = yi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) {
            throw NumericalError("integrate_y: non-finite state", t);
        }
        y[i + 1] = guard_density(next, t);
        dy[i + 1] = rhs_y(y[i + 1], yd1, p);
    }

    Trajectory traj(h, m, std::move(y), std::move(dy));
    traj.set_prefix(
        0.0, [history](double s) { return history.value(s); },
        [history](double s) { return history.slope(s); });
    traj.set_params(p);
    return traj;
}

Trajectory integrate_y(const ModelParams& p, const HistoryFunction& history, double t_end) {
    return integrate_y(p, history, t_end, p.r() / kDefaultStepsPerDelay);
}

HistoryFunction eigenmode_history(const ModelParams& p, double c) {
    const auto eq = positive_y_star(p.n(), p.beta0(), p.delta(), p.k());
    if (!eq) throw PreconditionError("eigenmode_history: no positive equilibrium");
    if (c == 0.0) return HistoryFunction(EigenmodeHistory{*eq, 0.0, 0.0, 0.0}, p.r());
    const RootSearch rs = leading_roots(p, 1);
    if (rs.roots.empty()) throw NotFound("eigenmode_history: no characteristic root found");
    const CharacteristicRoot lead = rs.roots.front();
    if (lead.im <= 1e-12) {
        throw PreconditionError("eigenmode_history: leading characteristic root is real");
    }
    return HistoryFunction(EigenmodeHistory{*eq, c, lead.re, lead.im}, p.r());
}

std::vector<PhasePoint> derivative_series(const Trajectory& traj) {
    std::vector<PhasePoint> out;
    out.reserve(traj.size());
    const auto& params = traj.params();
    const std::size_t lag = params ? static_cast<std::size_t>(std::llround(params->r() / traj.step()))
                                   : 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time(i);
        double slope = traj.slope(i);
        if (params && i >= traj.origin() && i >= lag) {
            slope = rhs_y(traj.value(i), traj.value(i - lag), *params);
        }
        out.push_back({t, traj.value(i), slope});
    }
    return out;
}

}  // namespace cmldde
