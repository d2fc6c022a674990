#include "spreadnet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "spreadnet/analytic.hpp"
#include "spreadnet/io.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/sim.hpp"
#include "spreadnet/svg.hpp"

namespace spreadnet::cli {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    throw config_error(origin + ":" + std::to_string(line) + ": " + message);
}

std::vector<double> parse_value_list(const std::string& text, const std::string& origin, int line) {
    // Either "a,b,c" or "lo:hi:count".
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0;
        int count = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2)
            fail(origin, line, "expected lo:hi:count, got '" + text + "'");
        for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) fail(origin, line, "empty value list");
    return out;
}

} // namespace

void ExperimentConfig::validate() const {
    if (model == Model::bass) {
        if (params.i0 != 0.0) throw config_error(name + ": model bass requires i0 = 0");
        if (!(params.p > 0.0)) throw config_error(name + ": model bass requires p > 0");
    } else if (model == Model::si) {
        if (params.p != 0.0) throw config_error(name + ": model si requires p = 0");
        if (!(params.i0 > 0.0 && params.i0 < 1.0))
            throw config_error(name + ": model si requires i0 in (0,1)");
    }
    if (mode == Mode::sweep && sweep_values.empty())
        throw config_error(name + ": sweep mode needs sweep_values");
    if (mode == Mode::analytic_family && d_values.empty())
        throw config_error(name + ": analytic_family mode needs d_values");
    if (runs < 1) throw config_error(name + ": runs must be at least 1");
    if (!(horizon > 0.0)) throw config_error(name + ": horizon must be positive");
    if (grid_points < 2) throw config_error(name + ": grid must have at least 2 points");
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
    ExperimentConfig cfg;
    bool saw_schema = false, saw_family = false;
    std::string family_name;
    int family_line = 0;
    std::map<std::string, std::pair<std::string, int>> kv;

    std::string line_text;
    int line = 0;
    while (std::getline(in, line_text)) {
        ++line;
        const auto hash = line_text.find('#');
        if (hash != std::string::npos) line_text.erase(hash);
        std::istringstream is(line_text);
        std::string key;
        if (!(is >> key)) continue;
        std::string value;
        std::getline(is, value);
        const auto first = value.find_first_not_of(" \t");
        value = first == std::string::npos ? "" : value.substr(first);
        const auto last = value.find_last_not_of(" \t\r");
        if (last != std::string::npos) value = value.substr(0, last + 1);
        if (value.empty()) fail(origin, line, "key '" + key + "' has no value");
        kv[key] = {value, line};
    }

    auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto out = it->second;
        kv.erase(it);
        return out;
    };
    auto take_double = [&](const std::string& key, double& dst) {
        if (auto v = take(key)) {
            try {
                dst = std::stod(v->first);
            } catch (const std::exception&) {
                fail(origin, v->second, "key '" + key + "': cannot parse number '" + v->first + "'");
            }
        }
    };
    auto take_int = [&](const std::string& key, int& dst) {
        if (auto v = take(key)) {
            try {
                dst = std::stoi(v->first);
            } catch (const std::exception&) {
                fail(origin, v->second, "key '" + key + "': cannot parse integer '" + v->first + "'");
            }
        }
    };

    if (auto v = take("schema")) {
        if (v->first != "1") fail(origin, v->second, "unsupported schema '" + v->first + "'");
        saw_schema = true;
    }
    if (!saw_schema) fail(origin, 1, "missing 'schema 1' field");

    if (auto v = take("name")) cfg.name = v->first;
    if (auto v = take("mode")) {
        static const std::map<std::string, Mode> modes{
            {"simulate", Mode::simulate},   {"analytic", Mode::analytic},
            {"compare", Mode::compare},     {"sweep", Mode::sweep},
            {"analytic_family", Mode::analytic_family}, {"cartesian", Mode::cartesian},
            {"cycles", Mode::cycles}};
        auto it = modes.find(v->first);
        if (it == modes.end()) fail(origin, v->second, "unknown mode '" + v->first + "'");
        cfg.mode = it->second;
    }
    if (auto v = take("model")) {
        if (v->first == "bass") cfg.model = Model::bass;
        else if (v->first == "si") cfg.model = Model::si;
        else if (v->first == "general") cfg.model = Model::general;
        else fail(origin, v->second, "unknown model '" + v->first + "' (bass|si|general)");
    }

    int nodes = 0, degree = 0, dim = 0, side = 0;
    double lambda = 0.0;
    if (auto v = take("family")) {
        family_name = v->first;
        family_line = v->second;
        saw_family = true;
    }
    take_int("nodes", nodes);
    take_double("lambda", lambda);
    take_int("degree", degree);
    take_int("dim", dim);
    take_int("side", side);
    if (saw_family) {
        if (family_name == "er") cfg.family = gen::GraphFamily::er(nodes, lambda);
        else if (family_name == "dreg") cfg.family = gen::GraphFamily::dreg(nodes, degree);
        else if (family_name == "torus") cfg.family = gen::GraphFamily::torus(dim, side);
        else if (family_name == "isolated") cfg.family = gen::GraphFamily::isolated(nodes);
        else if (family_name == "cycle") cfg.family = gen::GraphFamily::cycle(nodes);
        else if (family_name == "complete") cfg.family = gen::GraphFamily::complete(nodes);
        else fail(origin, family_line, "unknown family '" + family_name + "'");
    }

    take_double("p", cfg.params.p);
    take_double("q", cfg.params.q);
    take_double("i0", cfg.params.i0);
    take_int("runs", cfg.runs);
    take_double("horizon", cfg.horizon);
    take_int("grid", cfg.grid_points);
    if (auto v = take("seed")) cfg.seed = std::stoull(v->first);
    if (auto v = take("resample")) {
        if (v->first == "on") cfg.resample = true;
        else if (v->first == "off") cfg.resample = false;
        else fail(origin, v->second, "resample must be 'on' or 'off'");
    }
    if (auto v = take("by_degree")) {
        if (v->first == "on") cfg.by_degree = true;
        else if (v->first == "off") cfg.by_degree = false;
        else fail(origin, v->second, "by_degree must be 'on' or 'off'");
    }

    if (auto v = take("sweep_param")) cfg.sweep_param = v->first;
    if (auto v = take("sweep_values")) cfg.sweep_values = parse_value_list(v->first, origin, v->second);
    if (auto v = take("metric")) {
        if (v->first == "half_life") cfg.metric = Metric::half_life;
        else if (v->first == "f_infinity") cfg.metric = Metric::f_infinity;
        else if (v->first == "f_at_t") cfg.metric = Metric::f_at_t;
        else fail(origin, v->second, "unknown metric '" + v->first + "'");
    }
    take_double("t_eval", cfg.t_eval);
    if (auto v = take("overlay")) {
        if (v->first == "giant") cfg.overlay_giant = true;
        else if (v->first == "compart") cfg.overlay_compart = true;
        else fail(origin, v->second, "unknown overlay '" + v->first + "'");
    }
    if (auto v = take("d_values")) {
        for (double x : parse_value_list(v->first, origin, v->second))
            cfg.d_values.push_back(static_cast<int>(x));
    }
    take_int("len_min", cfg.len_min);
    take_int("len_max", cfg.len_max);
    take_int("samples", cfg.samples);
    take_int("condition_degree", cfg.condition_degree);

    if (!kv.empty()) {
        const auto& [key, val] = *kv.begin();
        fail(origin, val.second, "unknown key '" + key + "'");
    }
    if (!saw_family && cfg.mode != Mode::sweep && cfg.mode != Mode::analytic_family)
        fail(origin, 1, "missing 'family' field");
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path + ": cannot open config file");
    return parse_config(in, path);
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    return parse_config(in, origin);
}

namespace {

namespace fs = std::filesystem;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string out_path(const OutputOptions& out, const std::string& name, const std::string& ext) {
    fs::create_directories(out.out_dir);
    return (fs::path(out.out_dir) / (name + ext)).string();
}

void write_summary(const OutputOptions& out, const ExperimentConfig& cfg, CommandResult& result,
                   const std::string& extra = "") {
    const std::string path = out_path(out, cfg.name, ".summary.txt");
    std::ofstream os(path);
    os << "name " << cfg.name << "\n";
    os << "family " << cfg.family.describe() << "\n";
    os << "seed " << cfg.seed << "\n";
    os << "sup_deviation " << io::format_double(result.sup_deviation) << "\n";
    os << "max_stderr " << io::format_double(result.max_stderr) << "\n";
    if (result.tolerance_applies) {
        os << "tolerance " << io::format_double(result.tolerance) << "\n";
        os << "status " << (result.pass ? "PASS" : "FAIL") << "\n";
    }
    os << "runtime_s " << io::format_double(result.runtime_seconds) << "\n";
    if (!extra.empty()) os << extra;
    result.files.push_back(path);
}

sim::EnsembleOptions ensemble_options(const ExperimentConfig& cfg) {
    sim::EnsembleOptions opt;
    opt.runs = cfg.runs;
    opt.horizon = cfg.horizon;
    opt.grid_points = cfg.grid_points;
    opt.resample_graph = cfg.resample;
    opt.by_degree = cfg.by_degree;
    opt.master_seed = cfg.seed;
    return opt;
}

/// The matching closed-form/ODE curve for a simulated family.
Trajectory analytic_curve(const ExperimentConfig& cfg, const std::vector<double>& grid) {
    using Kind = gen::GraphFamily::Kind;
    switch (cfg.family.kind) {
    case Kind::er: return analytic::solve_er(cfg.params, cfg.family.lambda, grid).f;
    case Kind::dreg: return analytic::solve_dreg(cfg.params, cfg.family.degree, grid).f;
    case Kind::cycle: return analytic::solve_dreg(cfg.params, 2, grid).f;
    case Kind::torus:
        if (cfg.family.dim == 1) return analytic::solve_dreg(cfg.params, 2, grid).f;
        throw config_error(cfg.name + ": no closed-form curve for torus with D > 1 (use mode cartesian)");
    case Kind::complete: return analytic::solve_dreg(cfg.params, cfg.family.nodes - 1, grid).f;
    case Kind::isolated: {
        Trajectory traj;
        traj.times = grid;
        for (double t : grid) traj.values.push_back(analytic::f_isolated(t, cfg.params.p, cfg.params.i0));
        return traj;
    }
    }
    throw config_error(cfg.name + ": unsupported family");
}

void plot_overlay(const OutputOptions& out, const ExperimentConfig& cfg, const sim::EnsembleResult& ens,
                  const Trajectory* exact, CommandResult& result) {
    if (!out.write_svg) return;
    svg::SvgPlot plot(cfg.name + "  " + cfg.family.describe(), "t", "f");
    std::vector<double> lo(ens.grid.times.size()), hi(ens.grid.times.size());
    for (std::size_t i = 0; i < ens.grid.times.size(); ++i) {
        const double s = ens.grid.stderrs.empty() ? 0.0 : ens.grid.stderrs[i];
        lo[i] = ens.grid.values[i] - 2.0 * s;
        hi[i] = ens.grid.values[i] + 2.0 * s;
    }
    plot.add_band(ens.grid.times, lo, hi, "#e8a33d");
    plot.add_line(ens.grid.times, ens.grid.values, "#e8a33d", "simulation mean", true);
    if (exact) plot.add_line(exact->times, exact->values, "#3465a4", "analytic", false);
    const std::string path = out_path(out, cfg.name, ".svg");
    plot.write_file(path);
    result.files.push_back(path);
}

} // namespace

CommandResult run_simulate(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    const auto ens = sim::ensemble(cfg.family, cfg.params, ensemble_options(cfg));
    for (double s : ens.grid.stderrs) result.max_stderr = std::max(result.max_stderr, s);
    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    io::write_ensemble_csv(ens, os);
    result.files.push_back(csv);
    plot_overlay(out, cfg, ens, nullptr, result);
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_analytic(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    const auto grid = uniform_grid(cfg.horizon, cfg.grid_points);
    const Trajectory traj = analytic_curve(cfg, grid);
    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    io::write_trajectory_csv(traj, os);
    result.files.push_back(csv);
    if (out.write_svg) {
        svg::SvgPlot plot(cfg.name + "  " + cfg.family.describe(), "t", "f");
        plot.add_line(traj.times, traj.values, "#3465a4", "analytic", false);
        const std::string path = out_path(out, cfg.name, ".svg");
        plot.write_file(path);
        result.files.push_back(path);
    }
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_compare(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    const auto ens = sim::ensemble(cfg.family, cfg.params, ensemble_options(cfg));
    const Trajectory exact = analytic_curve(cfg, ens.grid.times);

    for (std::size_t i = 0; i < ens.grid.times.size(); ++i) {
        result.sup_deviation = std::max(result.sup_deviation, std::abs(ens.grid.values[i] - exact.values[i]));
        if (!ens.grid.stderrs.empty()) result.max_stderr = std::max(result.max_stderr, ens.grid.stderrs[i]);
    }
    result.tolerance_applies = true;
    result.tolerance = out.tolerance ? *out.tolerance : std::max(0.015, 4.0 * result.max_stderr);
    result.pass = result.sup_deviation <= result.tolerance;

    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    os << "t,sim_mean,sim_stderr,analytic\n";
    for (std::size_t i = 0; i < ens.grid.times.size(); ++i)
        os << io::format_double(ens.grid.times[i]) << ',' << io::format_double(ens.grid.values[i]) << ','
           << io::format_double(ens.grid.stderrs.empty() ? 0.0 : ens.grid.stderrs[i]) << ','
           << io::format_double(exact.values[i]) << '\n';
    result.files.push_back(csv);
    plot_overlay(out, cfg, ens, &exact, result);
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_sweep(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    if (cfg.sweep_param != "lambda" && cfg.sweep_param != "d")
        throw config_error(cfg.name + ": sweep_param must be 'lambda' or 'd'");

    std::vector<std::pair<double, double>> rows;
    for (double v : cfg.sweep_values) {
        double value = 0.0;
        switch (cfg.metric) {
        case Metric::half_life:
            value = cfg.sweep_param == "lambda" ? analytic::half_life_er(cfg.params, v)
                                                : analytic::half_life_dreg(cfg.params, static_cast<int>(v));
            break;
        case Metric::f_infinity:
            if (cfg.sweep_param != "lambda")
                throw config_error(cfg.name + ": f_infinity sweeps over lambda");
            value = v > 0.0 ? analytic::final_infection_level(v, cfg.params.i0) : cfg.params.i0;
            break;
        case Metric::f_at_t: {
            if (!(cfg.t_eval > 0.0)) throw config_error(cfg.name + ": f_at_t needs t_eval > 0");
            const std::vector<double> grid{0.0, cfg.t_eval};
            value = cfg.sweep_param == "lambda"
                        ? analytic::solve_er(cfg.params, v, grid).f.values[1]
                        : analytic::solve_dreg(cfg.params, static_cast<int>(v), grid).f.values[1];
            break;
        }
        }
        rows.emplace_back(v, value);
    }

    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    os << cfg.sweep_param << ",value";
    if (cfg.overlay_giant) os << ",giant";
    os << '\n';
    double sup_dev = 0.0;
    for (const auto& [v, value] : rows) {
        os << io::format_double(v) << ',' << io::format_double(value);
        if (cfg.overlay_giant) {
            const double x = analytic::giant_component(v);
            os << ',' << io::format_double(x);
            sup_dev = std::max(sup_dev, std::abs(value - x));
        }
        os << '\n';
    }
    result.sup_deviation = sup_dev;
    result.files.push_back(csv);

    if (out.write_svg) {
        svg::SvgPlot plot(cfg.name, cfg.sweep_param, "value");
        std::vector<double> xs, ys;
        for (const auto& [v, value] : rows) {
            xs.push_back(v);
            ys.push_back(value);
        }
        plot.add_line(xs, ys, "#3465a4", "metric", false);
        if (cfg.overlay_giant) {
            std::vector<double> gs;
            for (double v : xs) gs.push_back(analytic::giant_component(v));
            plot.add_line(xs, gs, "#e8a33d", "giant component", true);
        }
        const std::string path = out_path(out, cfg.name, ".svg");
        plot.write_file(path);
        result.files.push_back(path);
    }
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_analytic_family(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    const auto grid = uniform_grid(cfg.horizon, cfg.grid_points);
    std::vector<std::pair<int, Trajectory>> curves;
    for (int d : cfg.d_values) curves.emplace_back(d, analytic::solve_dreg(cfg.params, d, grid).f);
    Trajectory compart;
    if (cfg.overlay_compart) compart = analytic::f_compartmental(cfg.params, grid);

    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    os << "t";
    for (const auto& [d, traj] : curves) os << ",f_d" << d;
    if (cfg.overlay_compart) os << ",f_compart";
    os << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << io::format_double(grid[i]);
        for (const auto& [d, traj] : curves) os << ',' << io::format_double(traj.values[i]);
        if (cfg.overlay_compart) os << ',' << io::format_double(compart.values[i]);
        os << '\n';
    }
    result.files.push_back(csv);

    if (cfg.overlay_compart && !curves.empty()) {
        const auto& last = curves.back().second;
        for (std::size_t i = 0; i < grid.size(); ++i)
            result.sup_deviation = std::max(result.sup_deviation, std::abs(last.values[i] - compart.values[i]));
    }

    if (out.write_svg) {
        svg::SvgPlot plot(cfg.name, "t", "f");
        const std::vector<std::string> palette{"#3465a4", "#cc0000", "#4e9a06", "#75507b", "#c17d11"};
        std::size_t ci = 0;
        for (const auto& [d, traj] : curves)
            plot.add_line(grid, traj.values, palette[ci++ % palette.size()], "d=" + std::to_string(d), false);
        if (cfg.overlay_compart) plot.add_line(grid, compart.values, "#2e3436", "compartmental", true);
        const std::string path = out_path(out, cfg.name, ".svg");
        plot.write_file(path);
        result.files.push_back(path);
    }
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_cartesian(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    if (cfg.family.kind != gen::GraphFamily::Kind::torus)
        throw config_error(cfg.name + ": cartesian mode needs family torus");
    const int d = 2 * cfg.family.dim;

    auto opts = ensemble_options(cfg);
    const auto cart = sim::ensemble(cfg.family, cfg.params, opts);
    opts.master_seed = derive_seed(cfg.seed, 0x5eed);
    const auto dreg =
        sim::ensemble(gen::GraphFamily::dreg(cfg.family.node_count(), d), cfg.params, opts);
    const Trajectory exact = analytic::solve_dreg(cfg.params, d, cart.grid.times).f;

    for (std::size_t i = 0; i < cart.grid.times.size(); ++i) {
        result.sup_deviation = std::max(result.sup_deviation,
                                        std::abs(cart.grid.values[i] - dreg.grid.values[i]));
        result.max_stderr = std::max({result.max_stderr,
                                      cart.grid.stderrs.empty() ? 0.0 : cart.grid.stderrs[i],
                                      dreg.grid.stderrs.empty() ? 0.0 : dreg.grid.stderrs[i]});
    }

    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    os << "t,cart_mean,cart_stderr,dreg_mean,dreg_stderr,dreg_analytic\n";
    for (std::size_t i = 0; i < cart.grid.times.size(); ++i)
        os << io::format_double(cart.grid.times[i]) << ',' << io::format_double(cart.grid.values[i]) << ','
           << io::format_double(cart.grid.stderrs.empty() ? 0.0 : cart.grid.stderrs[i]) << ','
           << io::format_double(dreg.grid.values[i]) << ','
           << io::format_double(dreg.grid.stderrs.empty() ? 0.0 : dreg.grid.stderrs[i]) << ','
           << io::format_double(exact.values[i]) << '\n';
    result.files.push_back(csv);

    if (out.write_svg) {
        svg::SvgPlot plot(cfg.name + "  D=" + std::to_string(cfg.family.dim), "t", "f");
        plot.add_line(cart.grid.times, cart.grid.values, "#cc0000", "cartesian torus", true);
        plot.add_line(dreg.grid.times, dreg.grid.values, "#3465a4",
                      "random " + std::to_string(d) + "-regular", false);
        plot.add_line(exact.times, exact.values, "#2e3436", "analytic d-reg", false);
        const std::string path = out_path(out, cfg.name, ".svg");
        plot.write_file(path);
        result.files.push_back(path);
    }
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_cycles(const ExperimentConfig& cfg, const OutputOptions& out) {
    Stopwatch clock;
    CommandResult result;
    using Kind = gen::GraphFamily::Kind;
    if (cfg.family.kind != Kind::er && cfg.family.kind != Kind::dreg)
        throw config_error(cfg.name + ": cycles mode needs family er or dreg");
    if (cfg.len_min < 3 || cfg.len_max < cfg.len_min)
        throw config_error(cfg.name + ": need 3 <= len_min <= len_max");
    if (cfg.family.kind == Kind::er && cfg.condition_degree < 2)
        throw config_error(cfg.name + ": ER cycle counts need condition_degree >= 2");

    const int probe = 0;
    std::map<int, double> sum, sum_sq;
    int samples_done = 0;
    std::uint64_t attempt = 0;
    while (samples_done < cfg.samples) {
        const std::uint64_t seed = derive_seed(cfg.seed, attempt++);
        Graph g = gen::build_graph(cfg.family, seed);
        if (cfg.family.kind == Kind::er && g.degree(probe) != cfg.condition_degree) continue;
        const auto census = gen::count_cycles_through(g, probe, cfg.len_max);
        for (int len = cfg.len_min; len <= cfg.len_max; ++len) {
            const auto it = census.counts.find(len);
            const double c = it == census.counts.end() ? 0.0 : static_cast<double>(it->second);
            sum[len] += c;
            sum_sq[len] += c * c;
        }
        ++samples_done;
    }

    const std::string csv = out_path(out, cfg.name, ".csv");
    std::ofstream os(csv);
    os << "L,empirical_mean,stderr,predicted\n";
    for (int len = cfg.len_min; len <= cfg.len_max; ++len) {
        const double n = cfg.samples;
        const double mean = sum[len] / n;
        const double var = std::max(0.0, (sum_sq[len] - n * mean * mean) / std::max(1.0, n - 1.0));
        const double se = std::sqrt(var / n);
        const double predicted =
            cfg.family.kind == Kind::er
                ? gen::expected_cycles_er(cfg.condition_degree, cfg.family.lambda, len, cfg.family.nodes)
                : gen::expected_cycles_dreg(cfg.family.degree, len, cfg.family.nodes);
        os << len << ',' << io::format_double(mean) << ',' << io::format_double(se) << ','
           << io::format_double(predicted) << '\n';
        result.sup_deviation = std::max(result.sup_deviation, std::abs(mean - predicted));
    }
    result.files.push_back(csv);
    result.runtime_seconds = clock.seconds();
    write_summary(out, cfg, result);
    return result;
}

CommandResult run_experiment(const ExperimentConfig& cfg, const OutputOptions& out) {
    switch (cfg.mode) {
    case Mode::simulate: return run_simulate(cfg, out);
    case Mode::analytic: return run_analytic(cfg, out);
    case Mode::compare: return run_compare(cfg, out);
    case Mode::sweep: return run_sweep(cfg, out);
    case Mode::analytic_family: return run_analytic_family(cfg, out);
    case Mode::cartesian: return run_cartesian(cfg, out);
    case Mode::cycles: return run_cycles(cfg, out);
    }
    throw config_error("unknown mode");
}

namespace {

std::string compare_preset(const std::string& name, const std::string& model, const std::string& family_block,
                           double p, double q, double i0, int runs, double horizon) {
    std::ostringstream os;
    os << "schema 1\nname " << name << "\nmode compare\nmodel " << model << "\n"
       << family_block << "p " << io::format_double(p) << "\nq " << io::format_double(q) << "\ni0 "
       << io::format_double(i0) << "\nruns " << runs << "\nhorizon " << io::format_double(horizon)
       << "\ngrid 201\nseed 20260808\nresample on\n";
    return os.str();
}

std::map<std::string, std::string> build_presets() {
    std::map<std::string, std::string> p;
    auto er = [](int m, double lambda) {
        return "family er\nnodes " + std::to_string(m) + "\nlambda " + io::format_double(lambda) + "\n";
    };
    auto dreg = [](int m, int d) {
        return "family dreg\nnodes " + std::to_string(m) + "\ndegree " + std::to_string(d) + "\n";
    };
    auto torus = [](int dim, int side) {
        return "family torus\ndim " + std::to_string(dim) + "\nside " + std::to_string(side) + "\n";
    };

    p["fig1a"] = compare_preset("fig1a", "bass", er(2000, 0.5), 0.001, 0.05, 0.0, 100, 400);
    p["fig1b"] = compare_preset("fig1b", "bass", er(2000, 3.0), 0.001, 0.05, 0.0, 100, 400);
    p["fig2"] = "schema 1\nname fig2\nmode sweep\nmodel bass\nsweep_param lambda\n"
                "sweep_values 0.25,0.5,1,2,4,8\nmetric half_life\np 0.001\nq 0.05\ni0 0\n"
                "horizon 2000\nseed 20260808\n";
    p["fig3a"] = compare_preset("fig3a", "si", er(2000, 0.9), 0.0, 0.05, 0.1, 100, 400);
    p["fig3b"] = compare_preset("fig3b", "si", er(2000, 3.0), 0.0, 0.05, 0.1, 100, 400);
    const char* i0s[4] = {"0.1", "0.01", "0.001", "0.0001"};
    const char* ids4[4] = {"fig4a", "fig4b", "fig4c", "fig4d"};
    for (int i = 0; i < 4; ++i)
        p[ids4[i]] = std::string("schema 1\nname ") + ids4[i] +
                     "\nmode sweep\nmodel si\nsweep_param lambda\nsweep_values 0:4:161\n"
                     "metric f_infinity\noverlay giant\np 0\nq 0.05\ni0 " + i0s[i] +
                     "\nhorizon 100\nseed 20260808\n";
    const int ds[4] = {2, 3, 4, 5};
    const char* ids5[4] = {"fig5a", "fig5b", "fig5c", "fig5d"};
    const char* ids6[4] = {"fig6a", "fig6b", "fig6c", "fig6d"};
    for (int i = 0; i < 4; ++i) {
        p[ids5[i]] = compare_preset(ids5[i], "bass", dreg(10000, ds[i]), 0.001, 0.05, 0.0, 10, 400);
        p[ids6[i]] = compare_preset(ids6[i], "si", dreg(10000, ds[i]), 0.0, 0.05, 0.1, 10, 400);
    }
    p["fig7a"] = "schema 1\nname fig7a\nmode analytic_family\nmodel bass\nd_values 2,4,10,100\n"
                 "overlay compart\np 0.001\nq 0.05\ni0 0\nhorizon 300\ngrid 201\nseed 20260808\n";
    p["fig7b"] = "schema 1\nname fig7b\nmode analytic_family\nmodel si\nd_values 2,4,10,100\n"
                 "overlay compart\np 0\nq 0.05\ni0 0.1\nhorizon 300\ngrid 201\nseed 20260808\n";
    const int dims[4] = {1, 2, 3, 4};
    const int sides[4] = {10000, 100, 22, 10};
    const char* ids8[4] = {"fig8a", "fig8b", "fig8c", "fig8d"};
    const char* ids9[4] = {"fig9a", "fig9b", "fig9c", "fig9d"};
    for (int i = 0; i < 4; ++i) {
        std::ostringstream os8, os9;
        os8 << "schema 1\nname " << ids8[i] << "\nmode cartesian\nmodel bass\n" << torus(dims[i], sides[i])
            << "p 0.002\nq 0.1\ni0 0\nruns 10\nhorizon 150\ngrid 201\nseed 20260808\nresample on\n";
        os9 << "schema 1\nname " << ids9[i] << "\nmode cartesian\nmodel si\n" << torus(dims[i], sides[i])
            << "p 0\nq 0.1\ni0 0.05\nruns 10\nhorizon 400\ngrid 201\nseed 20260808\nresample on\n";
        p[ids8[i]] = os8.str();
        p[ids9[i]] = os9.str();
    }
    return p;
}

} // namespace

const std::map<std::string, std::string>& figure_presets() {
    static const std::map<std::string, std::string> presets = build_presets();
    return presets;
}

ExperimentConfig figure_config(const std::string& id) {
    const auto& presets = figure_presets();
    const auto it = presets.find(id);
    if (it == presets.end()) throw config_error("unknown figure id '" + id + "'");
    return parse_config_text(it->second, "preset:" + id);
}

CommandResult run_figure(const std::string& id, const OutputOptions& out, std::optional<int> runs_override,
                         std::optional<std::uint64_t> seed_override) {
    ExperimentConfig cfg = figure_config(id);
    if (runs_override) cfg.runs = *runs_override;
    if (seed_override) cfg.seed = *seed_override;
    cfg.validate();
    return run_experiment(cfg, out);
}

} // namespace spreadnet::cli
