#include "cmldde/hopf.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cmldde/errors.hpp"

namespace cmldde {

namespace {

struct HopfData {
    double ratio;  // (delta + B1) / (k B1)
    double omega;
};

HopfData hopf_data(double n, double beta0, double k, double delta) {
    const LinearizationData lin = b1_coefficient(n, beta0, delta, k);
    if (!(lin.b1 < 0.0)) throw NoHopf("no Hopf boundary: B1 >= 0");
    const double ratio = lin.sum_db1 / lin.k_b1;
    if (!(ratio > -1.0 && ratio < 1.0)) {
        throw NoHopf("no Hopf boundary: |delta + B1| >= |k B1|");
    }
    const double radicand = lin.k_b1 * lin.k_b1 - lin.sum_db1 * lin.sum_db1;
    if (!(radicand > 0.0)) throw NoHopf("no Hopf boundary: degenerate frequency");
    return {ratio, std::sqrt(radicand)};
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

double hopf_delay(double n, double beta0, double k, double delta) {
    const HopfData h = hopf_data(n, beta0, k, delta);
    return std::acos(h.ratio) / h.omega;
}

double hopf_omega(double n, double beta0, double k, double delta) {
    return hopf_data(n, beta0, k, delta).omega;
}

HopfPoint hopf_point(double n, double beta0, double k, double delta) {
    const HopfData h = hopf_data(n, beta0, k, delta);
    ParamValues v{n, beta0, delta, k, std::acos(h.ratio) / h.omega};
    return HopfPoint{ModelParams(v), h.omega};
}

SurfaceGrid surface_grid(double n, double beta0, Range k_range, Range delta_range,
                         std::size_t k_resolution, std::size_t delta_resolution) {
    if (k_resolution < 2 || delta_resolution < 2) {
        throw DomainError("surface_grid: resolution must be >= 2 per axis");
    }
    if (!(k_range.hi > k_range.lo) || !(delta_range.hi > delta_range.lo)) {
        throw DomainError("surface_grid: empty range");
    }
    SurfaceGrid grid;
    grid.k_count = k_resolution;
    grid.delta_count = delta_resolution;
    grid.cells.reserve(k_resolution * delta_resolution);
    for (std::size_t i = 0; i < k_resolution; ++i) {
        const double k = k_range.lo + (k_range.hi - k_range.lo) * static_cast<double>(i) /
                                          static_cast<double>(k_resolution - 1);
        for (std::size_t j = 0; j < delta_resolution; ++j) {
            const double d = delta_range.lo + (delta_range.hi - delta_range.lo) *
                                                  static_cast<double>(j) /
                                                  static_cast<double>(delta_resolution - 1);
            SurfaceCell cell{k, d, std::nullopt};
            try {
                cell.r_hopf = hopf_delay(n, beta0, k, d);
            } catch (const DomainError&) {
                // outside the domain of r_H (includes missing y2)
            }
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

void write_surface_csv(std::ostream& out, const SurfaceGrid& grid) {
    out << "k,delta,r_hopf\n";
    for (const auto& c : grid.cells) {
        out << format_double(c.k) << ',' << format_double(c.delta) << ',';
        if (c.r_hopf) out << format_double(*c.r_hopf);
        out << '\n';
    }
}

std::vector<BautinRow> parse_bautin_csv(std::istream& in) {
    std::vector<BautinRow> rows;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "n,beta0,k,delta,r,l2") {
                throw DomainError("bautin table: unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream fields(line);
        std::string cell;
        double vals[6];
        int count = 0;
        while (std::getline(fields, cell, ',')) {
            if (count == 6) {
                throw DomainError("bautin table: expected 6 fields on line " +
                                  std::to_string(line_no));
            }
            try {
                std::size_t used = 0;
                vals[count] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw DomainError("bautin table: bad number on line " + std::to_string(line_no));
            }
            ++count;
        }
        if (count != 6) {
            throw DomainError("bautin table: expected 6 fields on line " +
                              std::to_string(line_no));
        }
        rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]});
    }
    if (!header_seen) throw DomainError("bautin table: missing header");
    return rows;
}

std::vector<BautinRow> load_bautin_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open table file: " + path);
    return parse_bautin_csv(in);
}

const std::vector<BautinRow>& embedded_bautin_rows() {
    static const std::vector<BautinRow> rows = [] {
        std::istringstream in(embedded_bautin_csv());
        return parse_bautin_csv(in);
    }();
    return rows;
}

std::vector<TableCheck> verify_table(const std::vector<BautinRow>& rows, double rel_tol) {
    std::vector<TableCheck> report;
    report.reserve(rows.size());
    for (const auto& row : rows) {
        TableCheck check{row, std::nullopt, std::numeric_limits<double>::infinity(), false};
        try {
            const double r = hopf_delay(row.n, row.beta0, row.k, row.delta);
            check.r_computed = r;
            check.rel_err = std::abs(r - row.r) / std::abs(row.r);
            check.pass = check.rel_err <= rel_tol;
        } catch (const DomainError&) {
        }
        report.push_back(check);
    }
    return report;
}

void write_table_report_csv(std::ostream& out, const std::vector<TableCheck>& report) {
    out << "n,beta0,k,delta,r_paper,r_computed,rel_err,pass\n";
    for (const auto& c : report) {
        out << format_double(c.row.n) << ',' << format_double(c.row.beta0) << ','
            << format_double(c.row.k) << ',' << format_double(c.row.delta) << ','
            << format_double(c.row.r) << ',';
        if (c.r_computed) out << format_double(*c.r_computed);
        out << ',';
        if (c.r_computed) out << format_double(c.rel_err);
        out << ',' << (c.pass ? "true" : "false") << '\n';
    }
}

}  // namespace cmldde
