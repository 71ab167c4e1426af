#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdot/cli.hpp"
#include "qdot/errors.hpp"
#include "qdot/ode_oracle.hpp"

namespace qdot::cli {
namespace {

using nlohmann::json;

constexpr double kOracleTol = 1e-6;

// Bad input discovered after parsing; reported with exit code 2.
struct UsageError : Error {
    using Error::Error;
};

struct GlobalOptions {
    std::string format = "csv";
    std::string out_path;
    double s = 0.05;
    bool seed_free = false;
    std::string sign = "negative-lead";
};

struct CellOptions {
    int m = 0;
    double v = 0.0;
    double a = 0.0;
    double b = 0.0;
    double eps_lo = 0.0;
    double eps_hi = 0.0;
    int grid_n = 2000;
    CLI::Option* eps_lo_opt = nullptr;
    CLI::Option* eps_hi_opt = nullptr;
};

void add_cell_options(CLI::App* cmd, CellOptions& o)
{
    cmd->add_option("--m", o.m, "angular index of the spin-up component")->required();
    cmd->add_option("--v", o.v, "well depth")->required();
    cmd->add_option("--a", o.a, "Rashba strength")->required();
    cmd->add_option("--b", o.b, "magnetic field")->required();
    o.eps_lo_opt = cmd->add_option("--eps-lo", o.eps_lo, "lower end of the energy scan");
    o.eps_hi_opt = cmd->add_option("--eps-hi", o.eps_hi, "upper end of the energy scan");
    cmd->add_option("--grid-n", o.grid_n, "scan grid intervals")->capture_default_str();
}

SignConvention parse_sign(const std::string& text)
{
    if (text == "negative-lead") {
        return SignConvention::negative_lead;
    }
    return SignConvention::first_positive;
}

EvalControl eval_control()
{
    EvalControl ctrl;
    if (const char* env = std::getenv("QDOT_EVAL_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0.0) || !(tol < 1.0)) {
            throw UsageError(std::string("QDOT_EVAL_TOL must be a number in (0, 1), got '") + env + "'");
        }
        ctrl.rel_tol = tol;
    }
    return ctrl;
}

DotParams cell_params(const CellOptions& o, const GlobalOptions& g)
{
    DotParams p{o.m, o.v, o.a, o.b, g.s};
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return p;
}

ScanConfig scan_config(const CellOptions& o, const GlobalOptions& g)
{
    ScanConfig cfg;
    if (o.eps_lo_opt != nullptr && o.eps_lo_opt->count() > 0) {
        cfg.eps_lo = o.eps_lo;
    }
    if (o.eps_hi_opt != nullptr && o.eps_hi_opt->count() > 0) {
        cfg.eps_hi = o.eps_hi;
    }
    cfg.grid_n = o.grid_n;
    cfg.sign = parse_sign(g.sign);
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

json params_json(const DotParams& p)
{
    return {{"m", p.m}, {"v", p.v}, {"a", p.a}, {"b", p.b}, {"s", p.s}};
}

json coeffs_json(const Coefficients& scaled)
{
    const Coefficients c = scaled.plain();
    return {{"c1_minus", c.c1_minus}, {"c1_plus", c.c1_plus}, {"c2_minus", c.c2_minus}, {"c2_plus", c.c2_plus}};
}

json levels_json(const DotParams& p, const std::vector<EnergyLevel>& levels)
{
    json list = json::array();
    for (const auto& l : levels) {
        list.push_back({{"index", l.level_index},
                        {"eps", l.eps},
                        {"coeffs", coeffs_json(l.coeffs)},
                        {"residual", l.continuity_residual}});
    }
    return {{"params", params_json(p)}, {"levels", list}};
}

std::string params_csv(const DotParams& p)
{
    return std::to_string(p.m) + "," + format_short(p.v) + "," + format_short(p.a) + "," + format_short(p.b) + ","
           + format_short(p.s);
}

std::string cmd_levels(const CellOptions& o, const GlobalOptions& g)
{
    const DotParams p = cell_params(o, g);
    const ScanConfig cfg = scan_config(o, g);
    const EvalControl ctrl = eval_control();
    const auto levels = find_levels(p, cfg, ctrl);

    if (g.format == "json") {
        return levels_json(p, levels).dump(2) + "\n";
    }
    std::ostringstream os;
    os << "index,eps,eps_2dp,continuity_residual\n";
    for (const auto& l : levels) {
        os << l.level_index << "," << format_full(l.eps) << "," << format_2dp(l.eps) << ","
           << format_full(l.continuity_residual) << "\n";
    }
    return os.str();
}

struct TableOptions {
    int m = 0;
    std::vector<double> v{50, 100};
    std::vector<double> a{1, 2};
    std::vector<double> b{0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5, 5.5, 6};
    int grid_n = 2000;
    int max_levels = 2;
};

// Runs `task(i)` for i in [0, n) on a small worker pool; the first failure in
// index order is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string cmd_table(const TableOptions& o, const GlobalOptions& g)
{
    std::vector<DotParams> cells;
    for (double v : o.v) {
        for (double a : o.a) {
            for (double b : o.b) {
                DotParams p{o.m, v, a, b, g.s};
                try {
                    p.validate();
                } catch (const DomainError& e) {
                    throw UsageError(e.what());
                }
                cells.push_back(p);
            }
        }
    }
    if (o.max_levels < 0) {
        throw UsageError("--max-levels must be non-negative");
    }
    ScanConfig cfg;
    cfg.grid_n = o.grid_n;
    cfg.sign = parse_sign(g.sign);
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const EvalControl ctrl = eval_control();

    std::vector<std::vector<EnergyLevel>> results(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        results[i] = find_levels(cells[i], cfg, ctrl);
        if (o.max_levels > 0 && static_cast<int>(results[i].size()) > o.max_levels) {
            results[i].resize(o.max_levels);
        }
    });

    if (g.format == "json") {
        json list = json::array();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            list.push_back(levels_json(cells[i], results[i]));
        }
        return json{{"cells", list}}.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "m,v,a,b,s,level_index,eps\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& l : results[i]) {
            os << params_csv(cells[i]) << "," << l.level_index << "," << format_full(l.eps) << "\n";
        }
    }
    return os.str();
}

struct WaveOptions {
    CellOptions cell;
    int level_index = 0;
    double r_max = 2.5;
    int samples = 500;
};

std::string cmd_wavefunction(const WaveOptions& o, const GlobalOptions& g)
{
    const DotParams p = cell_params(o.cell, g);
    const ScanConfig cfg = scan_config(o.cell, g);
    if (!(o.r_max > 0.0) || o.samples < 2 || o.level_index < 0) {
        throw UsageError("wavefunction needs --r-max > 0, --samples >= 2 and --level-index >= 0");
    }
    const EvalControl ctrl = eval_control();
    const auto levels = find_levels(p, cfg, ctrl);
    if (o.level_index >= static_cast<int>(levels.size())) {
        std::ostringstream msg;
        msg << "level index " << o.level_index << " out of range: " << levels.size() << " level(s) found";
        throw BoundStateError(msg.str());
    }
    const EnergyLevel& level = levels[o.level_index];

    std::vector<SpinorSample> samples(o.samples);
    for (int i = 0; i < o.samples; ++i) {
        const double r = o.r_max * i / (o.samples - 1);
        samples[i] = radial_spinor(p, level.eps, level.coeffs, r, ctrl);
    }

    if (g.format == "json") {
        json rows = json::array();
        for (const auto& s : samples) {
            rows.push_back({{"r", s.r}, {"u", s.u}, {"w", s.w}});
        }
        return json{{"params", params_json(p)},
                    {"index", level.level_index},
                    {"eps", level.eps},
                    {"coeffs", coeffs_json(level.coeffs)},
                    {"samples", rows}}
                   .dump(2)
               + "\n";
    }
    std::ostringstream os;
    const Coefficients c = level.coeffs.plain();
    os << "# eps=" << format_full(level.eps) << ",c1_minus=" << format_full(c.c1_minus)
       << ",c1_plus=" << format_full(c.c1_plus) << ",c2_minus=" << format_full(c.c2_minus)
       << ",c2_plus=" << format_full(c.c2_plus) << "\n";
    os << "r,u,w\n";
    for (const auto& s : samples) {
        os << format_full(s.r) << "," << format_full(s.u) << "," << format_full(s.w) << "\n";
    }
    return os.str();
}

struct ScanOptions {
    CellOptions cell;
    double eps_min = 0.0;
    double eps_max = 0.0;
    int points = 200;
    CLI::Option* eps_min_opt = nullptr;
    CLI::Option* eps_max_opt = nullptr;
};

std::string cmd_scan_det(const ScanOptions& o, const GlobalOptions& g)
{
    const DotParams p = cell_params(o.cell, g);
    const ScanConfig cfg = scan_config(o.cell, g);
    const ScanWindow window = scan_window(p, cfg);
    const double lo = o.eps_min_opt->count() > 0 ? o.eps_min : window.lo;
    const double hi = o.eps_max_opt->count() > 0 ? o.eps_max : window.hi;
    if (o.points < 2 || !(lo < hi)) {
        throw UsageError("scan-det needs --points >= 2 and eps-min < eps-max");
    }
    const EvalControl ctrl = eval_control();

    struct Row {
        double eps;
        double det;
        bool pole;
    };
    std::vector<Row> rows(o.points);
    for (int i = 0; i < o.points; ++i) {
        const double eps = lo + (hi - lo) * i / (o.points - 1);
        Row row{eps, std::nan(""), false};
        try {
            row.det = det_t4(p, eps, ctrl);
        } catch (const PoleError&) {
            row.pole = true;
        }
        if (i > 0 && pole_between(p, rows[i - 1].eps, eps)) {
            row.pole = true;
        }
        rows[i] = row;
    }

    if (g.format == "json") {
        json list = json::array();
        for (const auto& r : rows) {
            json det = std::isfinite(r.det) ? json(r.det) : json(nullptr);
            list.push_back({{"eps", r.eps}, {"det", det}, {"is_pole", r.pole}});
        }
        return json{{"params", params_json(p)}, {"rows", list}}.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "eps,det,is_pole\n";
    for (const auto& r : rows) {
        os << format_full(r.eps) << "," << format_full(r.det) << "," << (r.pole ? 1 : 0) << "\n";
    }
    return os.str();
}

struct OracleOptions {
    std::string cells;
    double inject_offset = 0.0;
    int grid_n = 2000;
};

// Returns the report and whether every cell agreed.
std::pair<std::string, bool> cmd_oracle_check(const OracleOptions& o, const GlobalOptions& g, std::ostream& err)
{
    std::vector<DotParams> cells;
    try {
        cells = o.cells.empty() ? default_oracle_cells(g.s) : parse_cells(o.cells, g.s);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    ScanConfig cfg;
    cfg.grid_n = o.grid_n;
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const EvalControl ctrl = eval_control();

    json report_cells = json::array();
    double worst = 0.0;
    bool all_ok = true;
    for (const auto& p : cells) {
        std::vector<double> closed;
        for (const auto& l : find_levels(p, cfg, ctrl)) {
            closed.push_back(l.eps + o.inject_offset);
        }
        const std::vector<double> oracle = oracle_levels(p, {}, cfg);
        bool ok = closed.size() == oracle.size();
        double max_delta = 0.0;
        for (std::size_t i = 0; ok && i < closed.size(); ++i) {
            const double delta = std::abs(closed[i] - oracle[i]);
            max_delta = std::max(max_delta, delta);
            ok = delta < kOracleTol * (1.0 + std::abs(oracle[i]));
        }
        worst = std::max(worst, max_delta);
        if (!ok) {
            all_ok = false;
            err << "oracle mismatch at m=" << p.m << " v=" << format_short(p.v) << " a=" << format_short(p.a)
                << " b=" << format_short(p.b) << ": " << closed.size() << " closed-form vs " << oracle.size()
                << " oracle level(s), max |delta eps|=" << format_full(max_delta) << "\n";
        }
        report_cells.push_back({{"params", params_json(p)},
                                {"closed_form", closed},
                                {"oracle", oracle},
                                {"max_delta", max_delta},
                                {"ok", ok}});
    }
    const json report{{"cells", report_cells}, {"max_delta", worst}, {"tolerance", kOracleTol}, {"ok", all_ok}};
    return {report.dump(2) + "\n", all_ok};
}

void emit(const std::string& text, const GlobalOptions& g, std::ostream& out)
{
    if (g.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(g.out_path, std::ios::binary);
    if (!file) {
        throw Error("cannot open output file '" + g.out_path + "'");
    }
    file << text;
    if (!file) {
        throw Error("failed writing output file '" + g.out_path + "'");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bound states of a circular quantum dot with Rashba coupling in a magnetic field", "qdot"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "write output to this file instead of stdout");
    app.add_option("--s", g.s, "Zeeman factor g M/(4 M_e)")->capture_default_str();
    app.add_flag("--seed-free", g.seed_free, "accepted for scripting; every computation is deterministic");
    app.add_option("--sign", g.sign, "coefficient sign convention")
        ->check(CLI::IsMember({"negative-lead", "first-positive"}))
        ->capture_default_str();

    CellOptions levels_opts;
    auto* levels = app.add_subcommand("levels", "bound-state energies of one parameter set");
    add_cell_options(levels, levels_opts);

    TableOptions table_opts;
    auto* table = app.add_subcommand("table", "levels over a grid of v, a and b");
    table->add_option("--m", table_opts.m, "angular index")->required();
    table->add_option("--v", table_opts.v, "well depths")->delimiter(',')->capture_default_str();
    table->add_option("--a", table_opts.a, "Rashba strengths")->delimiter(',')->capture_default_str();
    table->add_option("--b", table_opts.b, "magnetic fields")->delimiter(',')->capture_default_str();
    table->add_option("--grid-n", table_opts.grid_n, "scan grid intervals")->capture_default_str();
    table->add_option("--max-levels", table_opts.max_levels, "lowest levels kept per cell, 0 for all")
        ->capture_default_str();

    WaveOptions wave_opts;
    auto* wave = app.add_subcommand("wavefunction", "sampled u(r), w(r) of one normalised level");
    add_cell_options(wave, wave_opts.cell);
    wave->add_option("--level-index", wave_opts.level_index, "level to sample")->capture_default_str();
    wave->add_option("--r-max", wave_opts.r_max, "largest radius")->capture_default_str();
    wave->add_option("--samples", wave_opts.samples, "number of radii")->capture_default_str();

    ScanOptions scan_opts;
    auto* scan = app.add_subcommand("scan-det", "matching determinant on an energy grid");
    add_cell_options(scan, scan_opts.cell);
    scan_opts.eps_min_opt = scan->add_option("--eps-min", scan_opts.eps_min, "first energy");
    scan_opts.eps_max_opt = scan->add_option("--eps-max", scan_opts.eps_max, "last energy");
    scan->add_option("--points", scan_opts.points, "number of energies")->capture_default_str();

    OracleOptions oracle_opts;
    auto* oracle = app.add_subcommand("oracle-check", "compare closed-form levels with direct integration");
    oracle->add_option("--cells", oracle_opts.cells, "cells as m:v:a:b separated by ';'");
    oracle->add_option("--grid-n", oracle_opts.grid_n, "scan grid intervals")->capture_default_str();
    oracle->add_option("--inject-offset", oracle_opts.inject_offset, "added to every closed-form level")
        ->capture_default_str();

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
        args.emplace_back(argv[i]);
    }
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    try {
        std::string text;
        bool ok = true;
        if (levels->parsed()) {
            text = cmd_levels(levels_opts, g);
        } else if (table->parsed()) {
            text = cmd_table(table_opts, g);
        } else if (wave->parsed()) {
            text = cmd_wavefunction(wave_opts, g);
        } else if (scan->parsed()) {
            text = cmd_scan_det(scan_opts, g);
        } else {
            std::tie(text, ok) = cmd_oracle_check(oracle_opts, g, err);
        }
        emit(text, g, out);
        return ok ? exit_ok : exit_numerical;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

}  // namespace qdot::cli
