#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cmldde/dde_sim.hpp"
#include "cmldde/errors.hpp"
#include "cmldde/explorer.hpp"
#include "cmldde/hopf.hpp"
#include "cmldde/linear_analysis.hpp"
#include "cmldde/x_solver.hpp"

namespace cmldde::cli {

using nlohmann::json;

namespace {

// ---- formatting ------------------------------------------------------------

// Shortest representation that reads back to the same double.
std::string num(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json orbit_json(const OrbitClass& o) {
    json j{{"kind", std::string(to_string(o.kind))},
           {"sup_distance", {o.sup_distance[0], o.sup_distance[1], o.sup_distance[2]}},
           {"amplitude", {o.amplitude[0], o.amplitude[1], o.amplitude[2]}}};
    if (o.cycle) {
        j["cycle"] = {{"amplitude", o.cycle->amplitude},
                      {"period", opt_json(o.cycle->period)},
                      {"steady", o.cycle->steady}};
    }
    return j;
}

json probe_json(const ScanProbe& p) {
    return {{"c", p.c},
            {"horizon", p.horizon},
            {"tail_amplitude", p.tail_amplitude},
            {"orbit", orbit_json(p.orbit)}};
}

json verdict_json(const StabilityVerdict& v) {
    return {{"stability", std::string(to_string(v.state))},
            {"source", std::string(to_string(v.source))},
            {"omega0", opt_json(v.omega0)},
            {"r_lower", opt_json(v.r_lower)},
            {"r_upper", opt_json(v.r_upper)},
            {"r_hopf", opt_json(v.r_hopf)}};
}

json params_json(const ParamValues& p) {
    return {{"n", p.n}, {"beta0", p.beta0}, {"delta", p.delta}, {"k", p.k}, {"r", p.r}};
}

json trajectory_json(const Trajectory& tr, const std::string& name, std::size_t stride) {
    json t = json::array();
    json v = json::array();
    json d = json::array();
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (i % stride != 0 && i + 1 != tr.size()) continue;
        t.push_back(tr.time(i));
        v.push_back(tr.value(i));
        d.push_back(tr.slope(i));
    }
    return {{"t", t}, {name, v}, {name + "dot", d}};
}

/// What a command produced: CSV text or a JSON document.
struct Output {
    std::string csv;
    json doc;
};

std::string render(const RunConfig& cfg, const Output& o) {
    if (cfg.format == "json") return o.doc.dump(2) + "\n";
    return o.csv;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file: " + cfg.out);
    file << text;
    file.flush();
    if (!file) throw IoError("failed writing output file: " + cfg.out);
}

// ---- commands --------------------------------------------------------------

Output cmd_equilibria(const RunConfig& cfg) {
    const ModelParams p(cfg.params);
    Output o;
    std::ostringstream csv;
    csv << "kind,x,y,stability,source\n";
    json list = json::array();
    for (const Equilibrium& e : equilibria(p)) {
        const bool trivial = e.kind == EquilibriumKind::Trivial;
        const StabilityVerdict v = trivial ? classify_trivial(p) : classify_positive(p);
        const char* kind = trivial ? "trivial" : "positive";
        csv << kind << ',' << num(e.x_star) << ',' << num(e.y_star) << ',' << to_string(v.state)
            << ',' << to_string(v.source) << '\n';
        json j = verdict_json(v);
        j["kind"] = kind;
        j["x"] = e.x_star;
        j["y"] = e.y_star;
        list.push_back(j);
    }
    o.csv = csv.str();
    o.doc = {{"params", params_json(cfg.params)}, {"equilibria", list}};
    return o;
}

Output cmd_stability(const RunConfig& cfg) {
    const ModelParams p(cfg.params);
    Output o;
    std::ostringstream csv;
    csv << "equilibrium,stability,source,omega0,r_lower,r_upper,r_hopf,spectral_abscissa\n";
    const StabilityVerdict trivial = classify_trivial(p);
    csv << "trivial," << to_string(trivial.state) << ',' << to_string(trivial.source)
        << ",,,,,\n";
    o.doc = {{"params", params_json(cfg.params)}, {"trivial", verdict_json(trivial)}};
    if (positive_y_star(p.n(), p.beta0(), p.delta(), p.k())) {
        const StabilityVerdict v = classify_positive(p);
        const RootSearch roots = leading_roots(p, 5);
        csv << "positive," << to_string(v.state) << ',' << to_string(v.source) << ','
            << num(v.omega0) << ',' << num(v.r_lower) << ',' << num(v.r_upper) << ','
            << num(v.r_hopf) << ',';
        if (!roots.roots.empty()) csv << num(roots.roots[0].re);
        csv << '\n';
        json pos = verdict_json(v);
        json rs = json::array();
        for (const auto& z : roots.roots) rs.push_back({{"re", z.re}, {"im", z.im}});
        pos["leading_roots"] = rs;
        pos["roots_partial"] = roots.partial;
        o.doc["positive"] = pos;
    }
    o.csv = csv.str();
    return o;
}

Output cmd_hopf_surface(const RunConfig& cfg) {
    const SurfaceGrid g = surface_grid(cfg.params.n, cfg.params.beta0, {cfg.k_min, cfg.k_max},
                                       {cfg.delta_min, cfg.delta_max}, cfg.k_res, cfg.delta_res);
    Output o;
    std::ostringstream csv;
    write_surface_csv(csv, g);
    o.csv = csv.str();
    json cells = json::array();
    for (const auto& c : g.cells) {
        cells.push_back({{"k", c.k}, {"delta", c.delta}, {"r_hopf", opt_json(c.r_hopf)}});
    }
    o.doc = {{"n", cfg.params.n},
             {"beta0", cfg.params.beta0},
             {"k_count", g.k_count},
             {"delta_count", g.delta_count},
             {"cells", cells}};
    return o;
}

Trajectory simulate_y(const RunConfig& cfg, const ModelParams& p) {
    const double t_end = cfg.t_end.value_or(200.0 * p.r());
    const double dt = cfg.dt.value_or(p.r() / kDefaultStepsPerDelay);
    if (cfg.history == "eigenmode") {
        return integrate_y(p, eigenmode_history(p, cfg.c), t_end, dt);
    }
    if (cfg.history == "constant") {
        double value = 0.0;
        if (cfg.value) {
            value = *cfg.value;
        } else {
            const auto y2 = positive_y_star(p.n(), p.beta0(), p.delta(), p.k());
            if (!y2) throw DomainError("no positive equilibrium; pass --value for the history");
            value = 1.01 * *y2;
        }
        return integrate_y(p, HistoryFunction(ConstantHistory{value}, p.r()), t_end, dt);
    }
    throw DomainError("unknown history kind: " + cfg.history);
}

Output trajectory_output(const RunConfig& cfg, const Trajectory& tr, const char* name) {
    if (cfg.stride == 0) throw DomainError("stride must be >= 1");
    Output o;
    std::ostringstream csv;
    write_trajectory_csv(csv, tr, name, cfg.stride);
    o.csv = csv.str();
    o.doc = trajectory_json(tr, name, cfg.stride);
    o.doc["params"] = params_json(cfg.params);
    return o;
}

Output cmd_simulate(const RunConfig& cfg) {
    const ModelParams p(cfg.params);
    return trajectory_output(cfg, simulate_y(cfg, p), "y");
}

Output cmd_x_sim(const RunConfig& cfg) {
    const ModelParams p(cfg.params);
    const Trajectory y = simulate_y(cfg, p);
    double x0 = 0.0;
    if (cfg.x0) {
        x0 = *cfg.x0;
    } else {
        const auto e = positive_equilibrium(p);
        if (!e) throw DomainError("no positive equilibrium; pass --x0");
        x0 = e->x_star;
    }
    const double t_end = cfg.t_end.value_or(200.0 * p.r());
    return trajectory_output(cfg, integrate_x(p, y, x0, t_end), "x");
}

Output cmd_verify_tables(const RunConfig& cfg, std::ostream& err) {
    const std::vector<BautinRow> rows =
        cfg.tables.empty() ? embedded_bautin_rows() : load_bautin_csv(cfg.tables);
    if (!(cfg.rel_tol > 0.0)) throw DomainError("rel-tol must be > 0");
    const auto report = verify_table(rows, cfg.rel_tol);
    const auto passed = std::count_if(report.begin(), report.end(),
                                      [](const TableCheck& c) { return c.pass; });
    err << passed << "/" << report.size() << " rows within rel_tol " << cfg.rel_tol << "\n";
    Output o;
    std::ostringstream csv;
    write_table_report_csv(csv, report);
    o.csv = csv.str();
    json list = json::array();
    for (const auto& c : report) {
        list.push_back({{"n", c.row.n},
                        {"beta0", c.row.beta0},
                        {"k", c.row.k},
                        {"delta", c.row.delta},
                        {"r_paper", c.row.r},
                        {"r_computed", opt_json(c.r_computed)},
                        {"rel_err", c.r_computed ? json(c.rel_err) : json(nullptr)},
                        {"pass", c.pass}});
    }
    o.doc = {{"rel_tol", cfg.rel_tol}, {"passed", passed}, {"total", report.size()}, {"rows", list}};
    return o;
}

void probe_csv_row(std::ostream& csv, const std::string& role, const ScanProbe& pr) {
    std::optional<double> period;
    if (pr.orbit.cycle) period = pr.orbit.cycle->period;
    csv << role << ',' << num(pr.c) << ',' << to_string(pr.orbit.kind) << ',' << num(pr.horizon)
        << ',' << num(pr.tail_amplitude) << ',' << num(period) << '\n';
}

Output cmd_bistability(const RunConfig& cfg, std::ostream& err) {
    const ModelParams p(cfg.params);
    const double horizon = cfg.horizon.value_or(100000.0);
    Output o;
    std::ostringstream csv;
    csv << "role,c,orbit,horizon,tail_amplitude,period\n";
    json probes = json::array();
    if (!cfg.c_list.empty()) {
        std::vector<std::future<ScanProbe>> jobs;
        for (double c : cfg.c_list) {
            jobs.push_back(std::async(std::launch::async,
                                      [&p, c, horizon] { return probe_amplitude(p, c, horizon); }));
        }
        for (auto& j : jobs) {
            const ScanProbe pr = j.get();
            probe_csv_row(csv, "listed", pr);
            probes.push_back(probe_json(pr));
        }
        o.doc = {{"params", params_json(cfg.params)}, {"probes", probes}};
    } else {
        const ScanReport rep = bistability_scan(p, cfg.c_lo, cfg.c_hi, cfg.tol, horizon);
        for (std::size_t i = 0; i < rep.probes.size(); ++i) {
            probe_csv_row(csv, i < 2 ? "endpoint" : "midpoint", rep.probes[i]);
            probes.push_back(probe_json(rep.probes[i]));
        }
        err << "c* in (" << num(rep.c_converge) << ", " << num(rep.c_escape) << ")\n";
        o.doc = {{"params", params_json(cfg.params)},
                 {"c_converge", rep.c_converge},
                 {"c_escape", rep.c_escape},
                 {"probes", probes}};
    }
    o.csv = csv.str();
    return o;
}

Output cmd_criticality(const RunConfig& cfg, std::ostream& err) {
    const ParamValues& v = cfg.params;
    const CriticalityReport rep = criticality_probe(v.n, v.beta0, v.k, v.delta, cfg.offsets,
                                                    cfg.horizon.value_or(8000.0),
                                                    cfg.perturbation);
    err << to_string(rep.verdict) << " (slope " << num(rep.slope) << ", R^2 "
        << num(rep.r_squared) << ")\n";
    Output o;
    std::ostringstream csv;
    csv << "offset,r,orbit,amplitude,decaying\n";
    json sides = json::array();
    for (const auto& s : rep.sides) {
        csv << num(s.offset) << ',' << num(s.r) << ',' << to_string(s.orbit.kind) << ','
            << num(s.amplitude) << ',' << (s.decaying ? "true" : "false") << '\n';
        sides.push_back({{"offset", s.offset},
                         {"r", s.r},
                         {"amplitude", s.amplitude},
                         {"decaying", s.decaying},
                         {"orbit", orbit_json(s.orbit)}});
    }
    o.csv = csv.str();
    o.doc = {{"r_hopf", rep.r_hopf},      {"verdict", std::string(to_string(rep.verdict))},
             {"slope", rep.slope},        {"intercept", rep.intercept},
             {"r_squared", rep.r_squared}, {"sides", sides}};
    return o;
}

Output cmd_zone(const RunConfig& cfg, std::ostream& err) {
    const ModelParams p(cfg.params);
    const ZoneReport rep = zone_classify(p, cfg.probes, cfg.horizon.value_or(3000.0));
    err << to_string(rep.zone) << "\n";
    Output o;
    std::ostringstream csv;
    csv << "role,c,orbit,horizon,tail_amplitude,period\n";
    json probes = json::array();
    for (const auto& pr : rep.probes) {
        probe_csv_row(csv, "probe", pr);
        probes.push_back(probe_json(pr));
    }
    o.csv = csv.str();
    o.doc = {{"params", params_json(cfg.params)},
             {"zone", std::string(to_string(rep.zone))},
             {"equilibrium_stable", rep.equilibrium_stable},
             {"probes", probes}};
    return o;
}

const std::set<std::string>& command_names() {
    static const std::set<std::string> names = {
        "equilibria", "stability",    "hopf-surface", "simulate", "x-sim",
        "verify-tables", "bistability", "criticality",  "zone"};
    return names;
}

Output dispatch(const RunConfig& cfg, std::ostream& err) {
    const std::string& c = cfg.command;
    if (c == "equilibria") return cmd_equilibria(cfg);
    if (c == "stability") return cmd_stability(cfg);
    if (c == "hopf-surface") return cmd_hopf_surface(cfg);
    if (c == "simulate") return cmd_simulate(cfg);
    if (c == "x-sim") return cmd_x_sim(cfg);
    if (c == "verify-tables") return cmd_verify_tables(cfg, err);
    if (c == "bistability") return cmd_bistability(cfg, err);
    if (c == "criticality") return cmd_criticality(cfg, err);
    if (c == "zone") return cmd_zone(cfg, err);
    throw DomainError("unknown command: " + c);
}

template <class T>
void read_field(const json& j, const char* key, T& field) {
    if (j.contains(key)) j.at(key).get_to(field);
}

void read_optional(const json& j, const char* key, std::optional<double>& field) {
    if (!j.contains(key) || j.at(key).is_null()) {
        field.reset();
    } else {
        field = j.at(key).get<double>();
    }
}

}  // namespace

void to_json(json& j, const RunConfig& c) {
    j = json{{"command", c.command},
             {"params", params_json(c.params)},
             {"out", c.out},
             {"format", c.format},
             {"t_end", opt_json(c.t_end)},
             {"dt", opt_json(c.dt)},
             {"stride", c.stride},
             {"history", c.history},
             {"c", c.c},
             {"value", opt_json(c.value)},
             {"x0", opt_json(c.x0)},
             {"k_min", c.k_min},
             {"k_max", c.k_max},
             {"delta_min", c.delta_min},
             {"delta_max", c.delta_max},
             {"k_res", c.k_res},
             {"delta_res", c.delta_res},
             {"rel_tol", c.rel_tol},
             {"tables", c.tables},
             {"horizon", opt_json(c.horizon)},
             {"c_lo", c.c_lo},
             {"c_hi", c.c_hi},
             {"tol", c.tol},
             {"c_list", c.c_list},
             {"offsets", c.offsets},
             {"perturbation", c.perturbation},
             {"probes", c.probes}};
}

void from_json(const json& j, RunConfig& c) {
    static const std::set<std::string> known = {
        "command", "params",  "out",   "format",    "t_end",     "dt",    "stride",
        "history", "c",       "value", "x0",        "k_min",     "k_max", "delta_min",
        "delta_max", "k_res", "delta_res", "rel_tol", "tables",  "horizon", "c_lo",
        "c_hi",    "tol",     "c_list", "offsets",  "perturbation", "probes"};
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) throw DomainError("unknown config key: " + item.key());
    }
    c = RunConfig{};
    read_field(j, "command", c.command);
    if (j.contains("params")) {
        const json& p = j.at("params");
        read_field(p, "n", c.params.n);
        read_field(p, "beta0", c.params.beta0);
        read_field(p, "delta", c.params.delta);
        read_field(p, "k", c.params.k);
        read_field(p, "r", c.params.r);
    }
    read_field(j, "out", c.out);
    read_field(j, "format", c.format);
    read_optional(j, "t_end", c.t_end);
    read_optional(j, "dt", c.dt);
    read_field(j, "stride", c.stride);
    read_field(j, "history", c.history);
    read_field(j, "c", c.c);
    read_optional(j, "value", c.value);
    read_optional(j, "x0", c.x0);
    read_field(j, "k_min", c.k_min);
    read_field(j, "k_max", c.k_max);
    read_field(j, "delta_min", c.delta_min);
    read_field(j, "delta_max", c.delta_max);
    read_field(j, "k_res", c.k_res);
    read_field(j, "delta_res", c.delta_res);
    read_field(j, "rel_tol", c.rel_tol);
    read_field(j, "tables", c.tables);
    read_optional(j, "horizon", c.horizon);
    read_field(j, "c_lo", c.c_lo);
    read_field(j, "c_hi", c.c_hi);
    read_field(j, "tol", c.tol);
    read_field(j, "c_list", c.c_list);
    read_field(j, "offsets", c.offsets);
    read_field(j, "perturbation", c.perturbation);
    read_field(j, "probes", c.probes);
}

int run_config(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!command_names().count(config.command)) {
            throw DomainError("unknown command: '" + config.command + "'");
        }
        if (config.format != "csv" && config.format != "json") {
            throw DomainError("format must be csv or json");
        }
        const Output o = dispatch(config, err);
        emit(config, render(config, o), out);
        return kOk;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << " (last valid t = " << e.last_valid_time()
            << ")\n";
        return kNumerical;
    } catch (const NotFound& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumerical;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Delay-equation model of a dividing cell population: equilibria, stability, "
                 "Hopf boundaries and simulations"};
    app.name("cmldde-cli");
    app.fallthrough();
    app.require_subcommand(0, 1);

    RunConfig cfg;
    std::string config_path;
    bool print_config = false;
    app.add_option("--n", cfg.params.n, "Hill exponent");
    app.add_option("--beta0", cfg.params.beta0, "maximal reintroduction rate");
    app.add_option("--delta", cfg.params.delta, "differentiation rate");
    app.add_option("--k", cfg.params.k, "division factor, in (0, 2]");
    app.add_option("--r", cfg.params.r, "cycle duration (delay)");
    app.add_option("--out", cfg.out, "output file (default: standard output)");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", config_path, "run the RunConfig stored in this JSON file");
    app.add_flag("--print-config", print_config, "print the resolved RunConfig as JSON and exit");

    double t_end = 0.0, dt = 0.0, value = 0.0, x0 = 0.0, horizon = 0.0;
    const auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--t-end", t_end, "final time (default 200 r)");
        sub->add_option("--dt", dt, "step upper bound (default r/64)");
        sub->add_option("--stride", cfg.stride, "write every stride-th node");
        sub->add_option("--history", cfg.history, "eigenmode or constant")
            ->check(CLI::IsMember({"eigenmode", "constant"}));
        sub->add_option("--c", cfg.c, "eigenmode amplitude");
        sub->add_option("--value", value, "constant history value (default 1.01 y2)");
    };

    app.add_subcommand("equilibria", "equilibria and their stability verdicts");
    app.add_subcommand("stability", "stability verdicts and leading characteristic roots");

    auto* surface = app.add_subcommand("hopf-surface", "Hopf delay r_H over a (k, delta) grid");
    surface->add_option("--k-min", cfg.k_min, "lower end of the k range");
    surface->add_option("--k-max", cfg.k_max, "upper end of the k range");
    surface->add_option("--delta-min", cfg.delta_min, "lower end of the delta range");
    surface->add_option("--delta-max", cfg.delta_max, "upper end of the delta range");
    surface->add_option("--k-res", cfg.k_res, "grid points along k (>= 2)");
    surface->add_option("--delta-res", cfg.delta_res, "grid points along delta (>= 2)");

    auto* simulate = app.add_subcommand("simulate", "integrate y and write t,y,ydot");
    add_sim(simulate);
    auto* xsim = app.add_subcommand("x-sim", "integrate y, then x, and write t,x,xdot");
    add_sim(xsim);
    xsim->add_option("--x0", x0, "initial x (default x2)");

    auto* tables = app.add_subcommand("verify-tables", "check tabulated Hopf delays");
    tables->add_option("--rel-tol", cfg.rel_tol, "relative tolerance per row");
    tables->add_option("--tables", cfg.tables, "table file (default: embedded data)");

    auto* bist = app.add_subcommand("bistability", "bisection on the eigenmode amplitude c");
    bist->add_option("--c-lo", cfg.c_lo, "amplitude expected to converge");
    bist->add_option("--c-hi", cfg.c_hi, "amplitude expected to escape");
    bist->add_option("--tol", cfg.tol, "bracket width");
    bist->add_option("--horizon", horizon, "integration horizon (default 100000)");
    bist->add_option("--c-list", cfg.c_list, "classify these amplitudes instead of scanning")
        ->delimiter(',');

    auto* crit = app.add_subcommand("criticality", "sample r = r_H + offset on both sides");
    crit->add_option("--offsets", cfg.offsets, "delay offsets, straddling 0")->delimiter(',');
    crit->add_option("--horizon", horizon, "integration horizon (default 8000)");
    crit->add_option("--perturbation", cfg.perturbation, "eigenmode amplitude of the start");

    auto* zone = app.add_subcommand("zone", "local bifurcation zone from probe runs");
    zone->add_option("--probes", cfg.probes, "eigenmode amplitudes")->delimiter(',');
    zone->add_option("--horizon", horizon, "integration horizon (default 3000)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const auto subs = app.get_subcommands();
    if (!config_path.empty()) {
        if (!subs.empty()) {
            err << "error: --config cannot be combined with a subcommand\n";
            return kUsage;
        }
        std::ifstream in(config_path);
        if (!in) {
            err << "error: cannot open config file: " << config_path << "\n";
            return kIo;
        }
        try {
            json::parse(in).get_to(cfg);
        } catch (const std::exception& e) {
            err << "error: bad config: " << e.what() << "\n";
            return kUsage;
        }
    } else {
        if (subs.empty()) {
            err << app.help();
            return kUsage;
        }
        CLI::App* sub = subs.front();
        cfg.command = sub->get_name();
        const auto set_if = [&](const char* flag, double v, std::optional<double>& field) {
            const CLI::Option* opt = sub->get_option_no_throw(flag);
            if (opt != nullptr && opt->count() > 0) field = v;
        };
        set_if("--t-end", t_end, cfg.t_end);
        set_if("--dt", dt, cfg.dt);
        set_if("--value", value, cfg.value);
        set_if("--x0", x0, cfg.x0);
        set_if("--horizon", horizon, cfg.horizon);
    }

    if (print_config) {
        out << json(cfg).dump(2) << "\n";
        return kOk;
    }
    return run_config(cfg, out, err);
}

}  // namespace cmldde::cli
