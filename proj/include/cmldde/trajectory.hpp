#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cmldde/model.hpp"

namespace cmldde {

/**
 * @brief Uniformly spaced samples (t_i, v_i, v'_i) with cubic Hermite dense
 * output between nodes.
 *
 * Node i sits at (i - origin)*step, so t = 0 is always hit exactly. An optional exact prefix function (the
 * initial history of a delay equation) takes over for t < prefix_end, so that
 * evaluation there does not depend on the node spacing.
 */
class Trajectory {
public:
    using Prefix = std::function<double(double)>;

    Trajectory(double step, std::size_t origin, std::vector<double> values,
               std::vector<double> slopes);

    double t_begin() const noexcept { return time(0); }
    double t_end() const noexcept;
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return values_.size(); }

    double time(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(origin_)) * step_;
    }
    std::size_t origin() const noexcept { return origin_; }
    double value(std::size_t i) const { return values_[i]; }
    double slope(std::size_t i) const { return slopes_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> slopes() const noexcept { return slopes_; }

    /// Index of the first node with time >= t (clamped to the valid range).
    std::size_t index_at_or_after(double t) const;

    /// Dense value; throws DomainError outside [t_begin, t_end].
    double eval(double t) const;
    double eval_slope(double t) const;

    /// Exact representation used for t < prefix_end (value and derivative).
    void set_prefix(double prefix_end, Prefix value, Prefix slope);

    void set_params(const ModelParams& p) { params_ = p; }
    const std::optional<ModelParams>& params() const noexcept { return params_; }

private:
    double step_;
    std::size_t origin_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    double prefix_end_ = -std::numeric_limits<double>::infinity();
    Prefix prefix_value_;
    Prefix prefix_slope_;
    std::optional<ModelParams> params_;
};

/// Cubic Hermite interpolation on [0, h] at offset theta*h.
double hermite(double v0, double d0, double v1, double d1, double h, double theta) noexcept;
double hermite_slope(double v0, double d0, double v1, double d1, double h,
                     double theta) noexcept;

/// `t,<name>,<name>dot` at stored nodes; every `stride`-th node, plus the last.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const char* name,
                          std::size_t stride = 1);

}  // namespace cmldde
