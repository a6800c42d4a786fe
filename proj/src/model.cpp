#include "cmldde/model.hpp"

#include <cmath>
#include <sstream>

#include "cmldde/errors.hpp"

namespace cmldde {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

bool is_integer_exponent(double n) {
    return n == std::floor(n) && n <= 64.0;
}

}  // namespace

ModelParams::ModelParams(const ParamValues& values) : v_(values), gamma_(0.0) {
    require(std::isfinite(v_.n) && v_.n > 0.0, "n must be finite and > 0");
    require(std::isfinite(v_.beta0) && v_.beta0 > 0.0, "beta0 must be finite and > 0");
    require(std::isfinite(v_.delta) && v_.delta > 0.0, "delta must be finite and > 0");
    require(std::isfinite(v_.k) && v_.k > 0.0 && v_.k <= 2.0, "k must lie in (0, 2]");
    require(std::isfinite(v_.r) && v_.r > 0.0, "r must be finite and > 0");
    gamma_ = gamma_of(v_.k, v_.r);
}

ModelParams ModelParams::with_delay(double r) const {
    ParamValues v = v_;
    v.r = r;
    return ModelParams(v);
}

double ModelParams::equilibrium_ratio() const noexcept {
    return v_.beta0 * (v_.k - 1.0) / v_.delta;
}

double gamma_of(double k, double r) {
    if (!(k > 0.0) || k > 2.0) throw DomainError("gamma_of: k must lie in (0, 2]");
    if (!(r > 0.0)) throw DomainError("gamma_of: r must be > 0");
    if (k == 2.0) return 0.0;
    return std::log(2.0 / k) / r;
}

double hill_power(double y, double n) {
    if (y == 0.0) return 0.0;
    if (is_integer_exponent(n)) return std::pow(y, static_cast<int>(n));
    return std::exp(n * std::log(y));
}

double feedback(double y, double beta0, double n) {
    if (y < 0.0 || std::isnan(y)) throw DomainError("feedback: y must be >= 0");
    return beta0 * y / (1.0 + hill_power(y, n));
}

double rhs_y(double y_now, double y_delayed, const ModelParams& p) {
    if (y_now < 0.0 || y_delayed < 0.0) throw DomainError("rhs_y: densities must be >= 0");
    const double re_entry = p.beta0() / (1.0 + hill_power(y_now, p.n()));
    return -(re_entry + p.delta()) * y_now + p.k() * feedback(y_delayed, p.beta0(), p.n());
}

double rhs_x(double x_now, double y_now, double y_delayed, const ModelParams& p) {
    if (!std::isfinite(x_now)) throw DomainError("rhs_x: x must be finite");
    return -p.gamma() * x_now + feedback(y_now, p.beta0(), p.n()) -
           0.5 * p.k() * feedback(y_delayed, p.beta0(), p.n());
}

std::optional<double> positive_y_star(double n, double beta0, double delta, double k) {
    const double ratio = beta0 * (k - 1.0) / delta;
    if (!(ratio > 1.0 + kRatioTolerance)) return std::nullopt;
    return std::pow(ratio - 1.0, 1.0 / n);
}

std::optional<Equilibrium> positive_equilibrium(const ModelParams& p) {
    const auto y2 = positive_y_star(p.n(), p.beta0(), p.delta(), p.k());
    if (!y2) return std::nullopt;
    if (p.gamma() == 0.0) {
        throw DomainError("positive equilibrium is degenerate at k = 2 (gamma = 0)");
    }
    Equilibrium e;
    e.kind = EquilibriumKind::Positive;
    e.y_star = *y2;
    e.x_star = (2.0 - p.k()) / (2.0 * p.gamma()) * feedback(*y2, p.beta0(), p.n());
    return e;
}

std::vector<Equilibrium> equilibria(const ModelParams& p) {
    std::vector<Equilibrium> out{Equilibrium{}};
    if (auto e = positive_equilibrium(p)) out.push_back(*e);
    return out;
}

LinearizationData b1_coefficient(double n, double beta0, double delta, double k) {
    if (!positive_y_star(n, beta0, delta, k)) {
        std::ostringstream msg;
        msg << "B1 requires a positive equilibrium (beta0 (k-1)/delta = "
            << beta0 * (k - 1.0) / delta << " <= 1)";
        throw PreconditionError(msg.str());
    }
    LinearizationData d;
    d.b1 = delta / (k - 1.0) * (n * delta / (beta0 * (k - 1.0)) - n + 1.0);
    d.sum_db1 = delta + d.b1;
    d.k_b1 = k * d.b1;
    return d;
}

LinearizationData b1_coefficient(const ModelParams& p) {
    return b1_coefficient(p.n(), p.beta0(), p.delta(), p.k());
}

}  // namespace cmldde
