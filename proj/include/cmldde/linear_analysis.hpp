#pragma once

// Linear stability of the two equilibria and roots of the characteristic
// equation  lambda + (delta + B1) - k B1 exp(-lambda r) = 0.

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "cmldde/model.hpp"

namespace cmldde {

enum class Stability { AsymptoticallyStable, MarginallyStable, Unstable, Undetermined };

/// Which stability result produced a verdict.
enum class VerdictSource { P2_1, P2_2, P2_3, P2_4, P2_5, P2_6, HopfExceeded, None };

struct StabilityVerdict {
    Stability state = Stability::Undetermined;
    VerdictSource source = VerdictSource::None;
    std::optional<double> omega0;   ///< root of w cot(w r) = -(delta + B1) when used
    std::optional<double> r_lower;  ///< arccos((delta+B1)/(k B1)) / omega0
    std::optional<double> r_upper;  ///< 1 / |delta + B1|
    std::optional<double> r_hopf;   ///< Hopf delay when it was compared against r
};

std::string_view to_string(Stability s);
std::string_view to_string(VerdictSource s);

/// beta0 (k-1)/delta <, =, > 1 (equality within kRatioTolerance).
StabilityVerdict classify_trivial(const ModelParams& p);

/**
 * Root of w cos(w r) + (delta + B1) sin(w r) = 0 in (0, pi/r), by bisection on
 * [1e-9, pi/r - 1e-9]. Throws NotFound when the bracket has no sign change.
 */
double omega0(const ModelParams& p);

/// Same, from the linearization directly.
double omega0(double sum_db1, double r);

/**
 * Sufficient-condition classifier for (x2, y2). Throws PreconditionError if
 * the positive equilibrium does not exist. Returns Undetermined whenever
 * none of the stability results, nor the Hopf threshold, applies.
 */
StabilityVerdict classify_positive(const ModelParams& p);

struct CharacteristicRoot {
    double re = 0.0;
    double im = 0.0;  ///< canonical representative, im >= 0
};

/// |lambda + (delta+B1) - k B1 exp(-lambda r)|
double characteristic_residual(std::complex<double> lambda, const LinearizationData& lin,
                               double r);

struct RootSearch {
    std::vector<CharacteristicRoot> roots;  ///< descending real part
    bool partial = false;                   ///< fewer than `count` roots were found
};

/// Residual threshold for accepting a Newton root.
inline constexpr double kRootResidualTolerance = 1e-10;

/**
 * The `count` roots with greatest real part, found by Newton iteration from a
 * 40x40 seed grid over Re in [-5/r, 1/r], Im in [0, 20 pi / r].
 * Conjugate pairs are reported once.
 */
RootSearch leading_roots(const ModelParams& p, int count);

/// Largest real part among the leading roots.
double spectral_abscissa(const ModelParams& p);

}  // namespace cmldde
