#include "cmldde/linear_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmldde/errors.hpp"
#include "cmldde/hopf.hpp"

namespace cmldde {

namespace {

constexpr int kSeedGrid = 40;
constexpr int kNewtonIterations = 100;
constexpr double kMergeDistance = 1e-8;

std::optional<std::complex<double>> newton(std::complex<double> z, double s, double kb,
                                           double r) {
    for (int it = 0; it < kNewtonIterations; ++it) {
        if (z.real() * r < -700.0 || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return std::nullopt;
        }
        const std::complex<double> e = std::exp(-z * r);
        const std::complex<double> g = z + s - kb * e;
        const std::complex<double> dg = 1.0 + r * kb * e;
        if (std::abs(dg) == 0.0) return std::nullopt;
        const std::complex<double> step = g / dg;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    const double res = std::abs(z + s - kb * std::exp(-z * r));
    if (!(res < kRootResidualTolerance)) return std::nullopt;
    return std::complex<double>(z.real(), std::abs(z.imag()));
}

}  // namespace

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::AsymptoticallyStable: return "AsymptoticallyStable";
        case Stability::MarginallyStable: return "MarginallyStable";
        case Stability::Unstable: return "Unstable";
        case Stability::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string_view to_string(VerdictSource s) {
    switch (s) {
        case VerdictSource::P2_1: return "P2.1";
        case VerdictSource::P2_2: return "P2.2";
        case VerdictSource::P2_3: return "P2.3";
        case VerdictSource::P2_4: return "P2.4";
        case VerdictSource::P2_5: return "P2.5";
        case VerdictSource::P2_6: return "P2.6";
        case VerdictSource::HopfExceeded: return "HopfExceeded";
        case VerdictSource::None: return "None";
    }
    return "?";
}

StabilityVerdict classify_trivial(const ModelParams& p) {
    const double ratio = p.equilibrium_ratio();
    StabilityVerdict v;
    if (std::abs(ratio - 1.0) <= kRatioTolerance) {
        v.state = Stability::MarginallyStable;
        v.source = VerdictSource::P2_2;
    } else if (ratio < 1.0) {
        v.state = Stability::AsymptoticallyStable;
        v.source = VerdictSource::P2_1;
    } else {
        v.state = Stability::Unstable;
        v.source = VerdictSource::P2_3;
    }
    return v;
}

double omega0(double sum_db1, double r) {
    const auto f = [&](double w) { return w * std::cos(w * r) + sum_db1 * std::sin(w * r); };
    double lo = 1e-9;
    double hi = std::numbers::pi / r - 1e-9;
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NotFound("omega0: no sign change of w cos(w r) + (delta+B1) sin(w r) on (0, pi/r)");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double omega0(const ModelParams& p) {
    return omega0(b1_coefficient(p).sum_db1, p.r());
}

StabilityVerdict classify_positive(const ModelParams& p) {
    const LinearizationData lin = b1_coefficient(p);
    const double b1 = lin.b1;
    const double s = lin.sum_db1;
    const double kb = lin.k_b1;
    const double r = p.r();

    StabilityVerdict v;
    if (b1 > 0.0) {
        v.state = Stability::AsymptoticallyStable;
        v.source = VerdictSource::P2_6;
        return v;
    }
    if (b1 < 0.0) {
        // The lower delay bound uses omega0 at the current r.
        std::optional<double> w0;
        try {
            w0 = omega0(s, r);
        } catch (const NotFound&) {
        }
        const auto lower_bound = [&]() -> std::optional<double> {
            if (!w0 || std::abs(s) >= std::abs(kb)) return std::nullopt;
            return std::acos(s / kb) / *w0;
        };

        if (s < 0.0 && std::abs(s) < std::abs(kb)) {
            const double upper = 1.0 / std::abs(s);
            const auto lower = lower_bound();
            if (lower && *lower < r && r < upper) {
                v.state = Stability::AsymptoticallyStable;
                v.source = VerdictSource::P2_4;
                v.omega0 = w0;
                v.r_lower = lower;
                v.r_upper = upper;
                return v;
            }
        }
        if (s > 0.0) {
            if (s > std::abs(kb)) {
                v.state = Stability::AsymptoticallyStable;
                v.source = VerdictSource::P2_5;
                return v;
            }
            const auto lower = lower_bound();
            if (lower && r < *lower) {
                v.state = Stability::AsymptoticallyStable;
                v.source = VerdictSource::P2_5;
                v.omega0 = w0;
                v.r_lower = lower;
                return v;
            }
        }
        try {
            const double r_h = hopf_delay(p.n(), p.beta0(), p.k(), p.delta());
            if (r > r_h) {
                v.state = Stability::Unstable;
                v.source = VerdictSource::HopfExceeded;
                v.r_hopf = r_h;
                return v;
            }
        } catch (const NoHopf&) {
        }
    }
    return v;
}

double characteristic_residual(std::complex<double> lambda, const LinearizationData& lin,
                               double r) {
    return std::abs(lambda + lin.sum_db1 - lin.k_b1 * std::exp(-lambda * r));
}

RootSearch leading_roots(const ModelParams& p, int count) {
    if (count < 1) throw DomainError("leading_roots: count must be >= 1");
    const LinearizationData lin = b1_coefficient(p);
    const double r = p.r();
    const double re_lo = -5.0 / r;
    const double re_hi = 1.0 / r;
    const double im_hi = 20.0 * std::numbers::pi / r;

    std::vector<std::complex<double>> found;
    for (int i = 0; i < kSeedGrid; ++i) {
        const double re = re_lo + (re_hi - re_lo) * i / (kSeedGrid - 1);
        for (int j = 0; j < kSeedGrid; ++j) {
            const double im = im_hi * j / (kSeedGrid - 1);
            const auto z = newton({re, im}, lin.sum_db1, lin.k_b1, r);
            if (!z) continue;
            const bool duplicate = std::any_of(found.begin(), found.end(), [&](auto w) {
                return std::abs(w - *z) < kMergeDistance * std::max(1.0, std::abs(*z));
            });
            if (!duplicate) found.push_back(*z);
        }
    }
    std::sort(found.begin(), found.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });

    RootSearch out;
    for (const auto& z : found) {
        if (static_cast<int>(out.roots.size()) == count) break;
        out.roots.push_back({z.real(), z.imag()});
    }
    out.partial = static_cast<int>(out.roots.size()) < count;
    return out;
}

double spectral_abscissa(const ModelParams& p) {
    const RootSearch rs = leading_roots(p, 1);
    if (rs.roots.empty()) throw NotFound("spectral_abscissa: no characteristic root found");
    return rs.roots.front().re;
}

}  // namespace cmldde
