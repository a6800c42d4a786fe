#pragma once

/**
 * @file hopf.hpp
 * @brief Hopf boundary r_H(n, beta0, k, delta) of the positive equilibrium,
 *        surface sampling, and checks against tabulated codimension-two points.
 *
 * The boundary is
 *
 *   r_H = arccos((delta + B1) / (k B1)) / sqrt((k B1)^2 - (delta + B1)^2),
 *
 * defined when B1 < 0 and |delta + B1| < |k B1|; the arccos is taken on the
 * principal branch [0, pi].
 */

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmldde/model.hpp"

namespace cmldde {

struct HopfPoint {
    ModelParams params;  ///< with r = r_H
    double omega_h;
};

/// Throws NoHopf when B1 >= 0 or (delta+B1)/(k B1) is outside (-1, 1), and
/// PreconditionError when there is no positive equilibrium.
double hopf_delay(double n, double beta0, double k, double delta);
double hopf_omega(double n, double beta0, double k, double delta);
HopfPoint hopf_point(double n, double beta0, double k, double delta);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct SurfaceCell {
    double k = 0.0;
    double delta = 0.0;
    std::optional<double> r_hopf;  ///< empty outside the domain of r_H
};

/// Row-major over k (outer) then delta (inner); axes include both endpoints.
struct SurfaceGrid {
    std::size_t k_count = 0;
    std::size_t delta_count = 0;
    std::vector<SurfaceCell> cells;

    const SurfaceCell& at(std::size_t ik, std::size_t id) const {
        return cells[ik * delta_count + id];
    }
};

/// Throws DomainError for empty/inverted ranges or resolution < 2.
SurfaceGrid surface_grid(double n, double beta0, Range k_range, Range delta_range,
                         std::size_t k_resolution, std::size_t delta_resolution);

/// `k,delta,r_hopf` with an empty field where r_H is absent.
void write_surface_csv(std::ostream& out, const SurfaceGrid& grid);

struct BautinRow {
    double n = 2.0;
    double beta0 = 0.0;
    double k = 0.0;
    double delta = 0.0;
    double r = 0.0;
    double l2 = 0.0;  ///< reference value only
};

/// The four n = 2 tables (beta0 = 0.5, 1, 1.5, 2) compiled into the library.
const std::vector<BautinRow>& embedded_bautin_rows();

/// The embedded data in the on-disk CSV format.
const std::string& embedded_bautin_csv();

/// Parses `n,beta0,k,delta,r,l2` rows; '#' lines are comments.
/// Throws DomainError on malformed content.
std::vector<BautinRow> parse_bautin_csv(std::istream& in);

/// Reads a table file. Throws IoError if it cannot be opened.
std::vector<BautinRow> load_bautin_csv(const std::string& path);

struct TableCheck {
    BautinRow row;
    std::optional<double> r_computed;  ///< empty if NoHopf
    double rel_err = 0.0;
    bool pass = false;
};

std::vector<TableCheck> verify_table(const std::vector<BautinRow>& rows, double rel_tol);

/// `n,beta0,k,delta,r_paper,r_computed,rel_err,pass`
void write_table_report_csv(std::ostream& out, const std::vector<TableCheck>& report);

}  // namespace cmldde
