#include "cmldde/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "cmldde/errors.hpp"

namespace cmldde {

double hermite(double v0, double d0, double v1, double d1, double h, double theta) noexcept {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + theta;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1;
}

double hermite_slope(double v0, double d0, double v1, double d1, double h,
                     double theta) noexcept {
    const double t2 = theta * theta;
    const double dh00 = 6.0 * t2 - 6.0 * theta;
    const double dh10 = 3.0 * t2 - 4.0 * theta + 1.0;
    const double dh01 = -6.0 * t2 + 6.0 * theta;
    const double dh11 = 3.0 * t2 - 2.0 * theta;
    return (dh00 * v0 + dh01 * v1) / h + dh10 * d0 + dh11 * d1;
}

Trajectory::Trajectory(double step, std::size_t origin, std::vector<double> values,
                       std::vector<double> slopes)
    : step_(step), origin_(origin), values_(std::move(values)), slopes_(std::move(slopes)) {
    if (!(step_ > 0.0)) throw DomainError("Trajectory: step must be > 0");
    if (values_.empty() || values_.size() != slopes_.size()) {
        throw DomainError("Trajectory: values and slopes must be non-empty and equal length");
    }
    if (origin_ >= values_.size()) throw DomainError("Trajectory: origin outside the node range");
}

double Trajectory::t_end() const noexcept { return time(values_.size() - 1); }

std::size_t Trajectory::index_at_or_after(double t) const {
    const double pos = t / step_ + static_cast<double>(origin_);
    if (pos <= 0.0) return 0;
    auto i = static_cast<std::size_t>(std::ceil(pos - 1e-9));
    return std::min(i, values_.size() - 1);
}

void Trajectory::set_prefix(double prefix_end, Prefix value, Prefix slope) {
    prefix_end_ = prefix_end;
    prefix_value_ = std::move(value);
    prefix_slope_ = std::move(slope);
}

namespace {

struct Locate {
    std::size_t i;
    double theta;
};

Locate locate(double t, double step, std::size_t origin, std::size_t n) {
    const double pos = std::max(0.0, t / step + static_cast<double>(origin));
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i >= n - 1) i = n - 2;
    return {i, std::clamp(pos - static_cast<double>(i), 0.0, 1.0)};
}

void check_span(const Trajectory& tr, double t) {
    const double slack = 1e-9 * tr.step();
    if (!(t >= tr.t_begin() - slack && t <= tr.t_end() + slack)) {
        throw DomainError("Trajectory: evaluation time outside the covered span");
    }
}

}  // namespace

double Trajectory::eval(double t) const {
    check_span(*this, t);
    if (t < prefix_end_ && prefix_value_) return prefix_value_(t);
    if (values_.size() == 1) return values_.front();
    const Locate at = locate(t, step_, origin_, values_.size());
    if (at.theta == 0.0) return values_[at.i];
    return hermite(values_[at.i], slopes_[at.i], values_[at.i + 1], slopes_[at.i + 1], step_,
                   at.theta);
}

double Trajectory::eval_slope(double t) const {
    check_span(*this, t);
    if (t < prefix_end_ && prefix_slope_) return prefix_slope_(t);
    if (values_.size() == 1) return slopes_.front();
    const Locate at = locate(t, step_, origin_, values_.size());
    return hermite_slope(values_[at.i], slopes_[at.i], values_[at.i + 1], slopes_[at.i + 1],
                         step_, at.theta);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const char* name,
                          std::size_t stride) {
    if (stride == 0) throw DomainError("write_trajectory_csv: stride must be >= 1");
    out << "t," << name << ',' << name << "dot\n";
    out << std::setprecision(12);
    const std::size_t n = traj.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i % stride != 0 && i + 1 != n) continue;
        out << traj.time(i) << ',' << traj.value(i) << ',' << traj.slope(i) << '\n';
    }
}

}  // namespace cmldde
