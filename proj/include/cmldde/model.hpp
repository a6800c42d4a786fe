#pragma once

/**
 * @file model.hpp
 * @brief Nondimensional two-equation delay model of periodic CML.
 *
 *   x'(t) = -gamma x(t) + f(y(t)) - (k/2) f(y(t-r))
 *   y'(t) = -[beta0/(1+y^n) + delta] y(t) + k f(y(t-r))
 *
 * with the Hill flux f(y) = beta0 y / (1+y^n) and gamma = ln(2/k)/r.
 */

#include <optional>
#include <vector>

namespace cmldde {

/// Free parameters as supplied by a caller. Validated by ModelParams.
struct ParamValues {
    double n = 2.0;
    double beta0 = 2.5;
    double delta = 0.0015;
    double k = 1.01;
    double r = 7.55;

    bool operator==(const ParamValues&) const = default;
};

/**
 * @brief Validated parameter set with the derived apoptosis rate.
 *
 * gamma is never free: it is always ln(2/k)/r so that k = 2 exp(-gamma r).
 * Construction throws DomainError for n <= 0, beta0 <= 0, delta <= 0,
 * k outside (0, 2], r <= 0, or non-finite input.
 */
class ModelParams {
public:
    explicit ModelParams(const ParamValues& values);

    double n() const noexcept { return v_.n; }
    double beta0() const noexcept { return v_.beta0; }
    double delta() const noexcept { return v_.delta; }
    double k() const noexcept { return v_.k; }
    double r() const noexcept { return v_.r; }
    double gamma() const noexcept { return gamma_; }
    const ParamValues& values() const noexcept { return v_; }

    /// Copy with a different delay; gamma is re-derived.
    ModelParams with_delay(double r) const;

    /// beta0 (k-1) / delta, the quantity that decides existence of y2.
    double equilibrium_ratio() const noexcept;

private:
    ParamValues v_;
    double gamma_;
};

/// ln(2/k)/r. Throws DomainError unless 0 < k <= 2 and r > 0.
double gamma_of(double k, double r);

/// y^n, with the y = 0 limit returned as 0 and non-integer n via exp(n ln y).
double hill_power(double y, double n);

/// beta0 y / (1 + y^n). Throws DomainError for y < 0.
double feedback(double y, double beta0, double n);

double rhs_y(double y_now, double y_delayed, const ModelParams& p);
double rhs_x(double x_now, double y_now, double y_delayed, const ModelParams& p);

enum class EquilibriumKind { Trivial, Positive };

struct Equilibrium {
    double x_star = 0.0;
    double y_star = 0.0;
    EquilibriumKind kind = EquilibriumKind::Trivial;
};

/// Absolute tolerance on beta0 (k-1)/delta = 1 (the marginal case).
inline constexpr double kRatioTolerance = 1e-12;

/**
 * The trivial equilibrium, followed by the positive one when
 * beta0 (k-1)/delta > 1. Throws DomainError when the positive branch exists
 * but k = 2 (gamma = 0 makes x2 unbounded).
 */
std::vector<Equilibrium> equilibria(const ModelParams& p);

/// Positive equilibrium if it exists; same k = 2 guard as equilibria().
std::optional<Equilibrium> positive_equilibrium(const ModelParams& p);

/// y2 only. Does not need gamma, so it is valid for k = 2 as well.
std::optional<double> positive_y_star(double n, double beta0, double delta, double k);

struct LinearizationData {
    double b1 = 0.0;      ///< slope of the flux at y2
    double sum_db1 = 0.0; ///< delta + b1
    double k_b1 = 0.0;    ///< k b1
};

/// Closed-form B1 at y2. Throws PreconditionError if y2 does not exist.
LinearizationData b1_coefficient(const ModelParams& p);

/// Same, from raw values (B1 does not depend on r).
LinearizationData b1_coefficient(double n, double beta0, double delta, double k);

}  // namespace cmldde
