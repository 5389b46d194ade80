// psur: batch front end for uncertainty tradeoff curves, constants,
// MUR = PUR checks, cloner comparisons and qubit-string mean-field runs.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "artifacts.hpp"
#include "phasespace/analytic.hpp"
#include "phasespace/cloning.hpp"
#include "phasespace/covariant.hpp"
#include "phasespace/groundstate.hpp"

using json = nlohmann::json;
using namespace phasespace;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kSolver = 3, kUnsupported = 4, kCheck = 5 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kSchemaVersion = 1;

struct Options {
    std::string config_path;
    std::string out_dir;
    bool svg = false;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

json parse_scalar(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded() || v.is_object()) return text;
    return v;
}

json load_config(const Options& o) {
    json cfg = {{"version", kSchemaVersion}};
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) throw ConfigError("cannot read config " + o.config_path);
        cfg = json::parse(f, nullptr, false);
        if (cfg.is_discarded() || !cfg.is_object()) throw ConfigError("config is not a JSON object");
    }
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + kv);
        json* node = &cfg;
        std::stringstream path(kv.substr(0, eq));
        std::string key;
        std::vector<std::string> keys;
        while (std::getline(path, key, '.')) keys.push_back(key);
        for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
            if (!node->contains(keys[i]) || !(*node)[keys[i]].is_object()) (*node)[keys[i]] = json::object();
            node = &(*node)[keys[i]];
        }
        (*node)[keys.back()] = parse_scalar(kv.substr(eq + 1));
    }
    if (!cfg.contains("version") || cfg["version"] != kSchemaVersion)
        throw ConfigError("unsupported config version (expected " + std::to_string(kSchemaVersion) + ")");
    if (o.seed) cfg["seed"] = *o.seed;
    if (!o.out_dir.empty()) cfg["out"] = o.out_dir;
    if (o.svg) cfg["svg"] = true;
    return cfg;
}

template <class T>
T get(const json& cfg, const char* key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for ") + key);
    }
}

Real get_exponent(const json& v, const char* what) {
    if (v.is_number()) return v.get<Real>();
    if (v.is_string() && (v == "inf" || v == "infinity")) return kInfinity;
    if (v.is_string()) {
        try {
            return std::stod(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigError(std::string("bad exponent for ") + what);
}

MetricSpec get_metric(const json& cfg, const char* key, const char* name, Real exponent) {
    std::string n = name;
    json e = exponent;
    if (cfg.contains(key)) {
        const json& m = cfg.at(key);
        if (m.is_string()) {
            n = m.get<std::string>();
        } else if (m.is_object()) {
            if (m.contains("name")) n = m.at("name").get<std::string>();
            if (m.contains("exponent")) e = m.at("exponent");
        } else {
            throw ConfigError(std::string("bad metric ") + key);
        }
    }
    try {
        return parse_metric(n, get_exponent(e, key));
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string(key) + ": " + ex.what());
    }
}

Scenario get_scenario(const json& cfg, const char* group, const char* mq, Real eq, const char* mp, Real ep) {
    Scenario s;
    try {
        s.group = parse_group(get<std::string>(cfg, "group", group));
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("group: ") + ex.what());
    }
    s.metric_q = get_metric(cfg, "metric_q", mq, eq);
    s.metric_p = get_metric(cfg, "metric_p", mp, ep);
    try {
        s.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
    return s;
}

std::vector<Real> get_t_grid(const json& cfg, Real lo, Real hi, Index points) {
    if (cfg.contains("t_grid")) {
        const json& t = cfg.at("t_grid");
        if (t.is_array()) return t.get<std::vector<Real>>();
        if (!t.is_object()) throw ConfigError("t_grid must be an object or a list");
        if (t.contains("values")) return t.at("values").get<std::vector<Real>>();
        lo = get<Real>(t, "min", lo);
        hi = get<Real>(t, "max", hi);
        points = get<Index>(t, "points", points);
    }
    if (points <= 0) return {};
    if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("t_grid needs 0 < min <= max");
    return log_grid(lo, hi, points);
}

std::filesystem::path out_dir(const json& cfg) { return get<std::string>(cfg, "out", "."); }
bool want_svg(const json& cfg) { return get<bool>(cfg, "svg", false); }

std::string fmt(Real v) { return psur::format_number(v); }

int cmd_curve(const json& cfg) {
    const Scenario s = get_scenario(cfg, "cyclic:3", "discrete", 1.0, "discrete", 1.0);
    const auto grid = get_t_grid(cfg, 1e-3, 1e3, 40);
    if (grid.empty()) throw ConfigError("empty t-grid");
    Index dense_limit = 1024;
    if (cfg.contains("solver")) dense_limit = get<Index>(cfg.at("solver"), "dense_limit", dense_limit);
    const HamiltonianOperator h(s, dense_limit);
    const auto region = sweep_tradeoff(h, grid);
    for (const auto& p : region.points)
        if (!p.error.empty()) throw SolverFailure("t = " + fmt(p.t) + ": " + p.error);
    const auto env = region.envelope_at_points();

    // On finite groups the t -> 0 and t -> inf limits are added as exact end rows.
    bool finite = true;
    for (const auto& ax : s.group->position().axes()) finite = finite && ax.kind == AxisKind::Cyclic;
    const bool limits = get<bool>(cfg, "limits", finite);
    psur::CsvTable csv({"t", "energy", "dq", "dp", "envelope_bound"});
    std::optional<std::pair<UncertaintyPoint, UncertaintyPoint>> ends;
    if (limits) {
        ends = tradeoff_endpoints(s);
        const auto& a = ends->first;
        csv.add_row(std::vector<double>{0.0, s.metric_p.power(a.dp), a.dq, a.dp, s.metric_p.power(a.dp)});
    }
    for (std::size_t i = 0; i < region.points.size(); ++i) {
        const auto& p = region.points[i];
        csv.add_row(std::vector<double>{p.t, p.energy, p.dq, p.dp, env[i]});
    }
    if (ends) {
        const auto& b = ends->second;
        csv.add_row(std::vector<double>{kInfinity, kInfinity, b.dq, b.dp, s.metric_p.power(b.dp)});
    }
    psur::OutputSet out(out_dir(cfg));
    out.add("curve.csv", csv.str());
    if (want_svg(cfg)) {
        psur::Series pts{"ground states", {}, "#d62728", true};
        for (const auto& p : region.points) pts.points.emplace_back(p.dq, p.dp);
        psur::Series envelope{"envelope", {}, "#1f77b4", false};
        Real dmax = 0.0;
        for (const auto& p : region.points) dmax = std::max(dmax, p.dq);
        const Real beta = s.metric_p.exponent;
        for (int i = 0; i <= 200; ++i) {
            const Real dq = dmax * i / 200.0;
            const Real e = region.envelope(s.metric_q.power(dq));
            if (std::isfinite(e)) envelope.points.emplace_back(dq, std::pow(std::max(e, 0.0), 1.0 / beta));
        }
        out.add("curve.svg", psur::svg_plot("Preparation uncertainty tradeoff", "d(rho^Q)", "d(rho^P)", {envelope, pts}));
    }
    out.commit();
    const auto& a = ends ? ends->first : region.points.front();
    const auto& b = ends ? ends->second : region.points.back();
    std::cout << "curve: " << region.points.size() << " points, endpoints (dq, dp) = (" << fmt(a.dq) << ", " << fmt(a.dp)
              << ") and (" << fmt(b.dq) << ", " << fmt(b.dp) << ")\n";
    return kOk;
}

int cmd_constant(const json& cfg) {
    const Real alpha = cfg.contains("alpha") ? get_exponent(cfg.at("alpha"), "alpha") : 2.0;
    const Real beta = cfg.contains("beta") ? get_exponent(cfg.at("beta"), "beta") : 2.0;
    const Index n = get<Index>(cfg, "n", 1);
    if (n < 1 || alpha < 1.0 || beta < 1.0) throw ConfigError("need n >= 1 and exponents >= 1");
    const ConstantEntry e = uncertainty_constant(alpha, beta, n);
    ConstantTable table;
    table.add(e);
    psur::OutputSet out(out_dir(cfg));
    out.add("constant.csv", table.to_csv());
    out.commit();
    std::cout << "c_{" << format_exponent(alpha) << "," << format_exponent(beta) << "}(" << n << ") = "
              << (std::isinf(e.value) ? std::string("infinity") : fmt(e.value)) << "  method=" << e.method
              << "  error=" << fmt(e.error) << "\n";
    return kOk;
}

json sample_json(const MurSample& m) {
    return {{"mur_q", m.mur_q}, {"mur_p", m.mur_p}, {"pur_q", m.pur_q}, {"pur_p", m.pur_p}};
}

int cmd_murcheck(const json& cfg) {
    const Scenario s = get_scenario(cfg, "cyclic:3", "discrete", 1.0, "discrete", 1.0);
    for (const auto& ax : s.group->position().axes())
        if (ax.kind != AxisKind::Cyclic) throw ConfigError("mur-check needs a finite group (cyclic factors only)");
    const Index samples = get<Index>(cfg, "samples", 100);
    if (samples < 0) throw ConfigError("samples must be nonnegative");
    const auto seed = get<std::uint64_t>(cfg, "seed", 1);
    const MurReport r = mur_equals_pur_check(s, samples, seed);
    const json report = {{"group", get<std::string>(cfg, "group", "cyclic:3")},
                         {"samples", r.samples},
                         {"seed", seed},
                         {"max_abs_deviation", r.max_abs_deviation},
                         {"pass", r.pass},
                         {"maximally_mixed", sample_json(r.maximally_mixed)},
                         {"point_generator", sample_json(r.point_generator)}};
    psur::OutputSet out(out_dir(cfg));
    out.add("mur_check.json", report.dump(2) + "\n");
    out.commit();
    std::cout << "mur-check: " << r.samples << " samples, max |MU - PU| = " << fmt(r.max_abs_deviation) << ", "
              << (r.pass ? "pass" : "FAIL") << "\n"
              << "  point generator (MU_Q, MU_P) = (" << fmt(r.point_generator.mur_q) << ", " << fmt(r.point_generator.mur_p)
              << ")\n";
    if (!r.pass) throw CheckFailure("measurement and preparation uncertainties differ");
    return kOk;
}

int cmd_clone(const json& cfg) {
    const Index n = get<Index>(cfg, "n", 3);
    if (n < 2 || n > 8) throw ConfigError("clone needs 2 <= n <= 8");
    const Real step = get<Real>(cfg, "step", 1e-2);
    if (!(step > 0.0)) throw ConfigError("step must be positive");
    const Real delta = qudit_radius(n);
    const auto sweep = cloning_sweep(n, step);

    psur::CsvTable ellipse({"theta", "a", "b", "dq", "dp", "in_box", "residual"});
    for (const auto& c : sweep)
        ellipse.add_row({fmt(c.theta), fmt(c.a), fmt(c.b), fmt(c.pair.dq), fmt(c.pair.dp), c.in_box ? "1" : "0",
                         c.in_box ? fmt(c.residual) : std::string("nan")});
    psur::CsvTable boundary({"dq", "dp"});
    std::vector<std::pair<double, double>> bpts;
    for (int i = 0; i <= 200; ++i) {
        const Real dp = delta * i / 200.0;
        const Real b = (2.0 - 4.0 / static_cast<Real>(n)) * dp - 2.0 * delta;
        const Real c = (dp - delta) * (dp - delta);
        const Real dq = std::max(0.0, 0.5 * (-b - std::sqrt(std::max(b * b - 4.0 * c, 0.0))));
        boundary.add_row(std::vector<double>{dq, dp});
        bpts.emplace_back(dq, dp);
    }
    psur::OutputSet out(out_dir(cfg));
    out.add("clone_ellipse.csv", ellipse.str());
    out.add("optimal_boundary.csv", boundary.str());
    if (want_svg(cfg)) {
        psur::Series inner{"universal cloning", {}, "#d62728", false};
        for (const auto& c : sweep)
            if (c.in_box) inner.points.emplace_back(c.pair.dq, c.pair.dp);
        std::sort(inner.points.begin(), inner.points.end());
        out.add("clone.svg", psur::svg_plot("Qudit n = " + std::to_string(n), "d(Q)", "d(P)",
                                            {{"optimal boundary", bpts, "#1f77b4", false}, inner}));
    }
    out.commit();
    Real worst = -kInfinity;
    for (const auto& c : sweep)
        if (c.in_box && c.pair.dp > 1e-12 && c.pair.dq > 1e-12) worst = std::max(worst, c.residual);
    std::cout << "clone: n = " << n << ", a = 1 row (dq, dp) = (" << fmt(sweep.front().pair.dq) << ", "
              << fmt(sweep.front().pair.dp) << "), largest interior residual " << fmt(worst) << "\n";
    return kOk;
}

int cmd_meanfield(const json& cfg) {
    const Real alpha = cfg.contains("alpha") ? get_exponent(cfg.at("alpha"), "alpha") : 1.0;
    const Real beta = cfg.contains("beta") ? get_exponent(cfg.at("beta"), "beta") : 1.0;
    if (std::isinf(alpha) || std::isinf(beta) || alpha < 1.0 || beta < 1.0) throw ConfigError("meanfield needs finite exponents >= 1");
    std::vector<Index> ns = {2, 3, 4, 5, 6, 7, 8};
    if (cfg.contains("n_list")) ns = cfg.at("n_list").get<std::vector<Index>>();
    if (ns.empty()) throw ConfigError("n_list is empty");
    for (Index n : ns)
        if (n < 1 || n > 12) throw ConfigError("n_list entries must lie in 1..12");
    const auto grid = get_t_grid(cfg, 0.05, 20.0, 30);
    if (grid.empty()) throw ConfigError("empty t-grid");

    psur::OutputSet out(out_dir(cfg));
    psur::CsvTable gaps({"n", "max_gap"});
    std::vector<psur::Series> series;
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    std::vector<Real> gap_values;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const auto c = qubit_string_comparison(ns[k], alpha, beta, grid);
        psur::CsvTable t({"t", "energy", "limit_energy", "dq", "dp"});
        psur::Series sr{"n = " + std::to_string(ns[k]), {}, colors[k % 9], true};
        const MetricSpec mq = make_metric(MetricKind::Hamming, alpha), mp = make_metric(MetricKind::Hamming, beta);
        for (std::size_t i = 0; i < c.region.points.size(); ++i) {
            const auto& p = c.region.points[i];
            t.add_row(std::vector<double>{p.t, p.energy, c.limit_energy[i], p.dq, p.dp});
            sr.points.emplace_back(mq.power(p.dq), mp.power(p.dp));
        }
        out.add("meanfield_n" + std::to_string(ns[k]) + ".csv", t.str());
        gaps.add_row(std::vector<double>{static_cast<double>(ns[k]), c.max_gap});
        gap_values.push_back(c.max_gap);
        series.push_back(sr);
    }
    psur::CsvTable limit({"s", "q_term", "p_term"});
    psur::Series ls{"mean-field limit", {}, "#000000", false};
    for (int i = 0; i <= 200; ++i) {
        const Real s = kPi + 0.5 * kPi * i / 200.0;
        const auto [x, y] = meanfield_curve(beta, alpha, s);  // x: momentum term, y: position term
        limit.add_row(std::vector<double>{s, y, x});
        ls.points.emplace_back(y, x);
    }
    out.add("meanfield_limit.csv", limit.str());
    out.add("meanfield_gaps.csv", gaps.str());
    if (want_svg(cfg)) {
        series.insert(series.begin(), ls);
        out.add("meanfield.svg", psur::svg_plot("Qubit strings", "<d(Q,0)^alpha>", "<d(P,0)^beta>", series));
    }
    out.commit();
    bool monotone = true;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        std::cout << "meanfield: n = " << ns[k] << "  max gap " << fmt(gap_values[k]) << "\n";
        if (k > 0 && ns[k] > ns[k - 1] && gap_values[k] > gap_values[k - 1] + 1e-12) monotone = false;
    }
    std::cout << "meanfield: gaps " << (monotone ? "decrease monotonically" : "are not monotone") << " in n\n";
    return kOk;
}

int run(const std::string& verb, const Options& o) {
    const json cfg = load_config(o);
    if (verb == "curve") return cmd_curve(cfg);
    if (verb == "constant") return cmd_constant(cfg);
    if (verb == "mur-check") return cmd_murcheck(cfg);
    if (verb == "clone") return cmd_clone(cfg);
    if (verb == "meanfield") return cmd_meanfield(cfg);
    throw ConfigError("unknown command " + verb);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uncertainty tradeoff regions on finite and discretized phase spaces"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> verbs = {
        {"curve", "ground-state sweep: curve.csv (t, energy, dq, dp, envelope_bound)"},
        {"constant", "uncertainty constant c_{alpha,beta}(n)"},
        {"mur-check", "measurement vs preparation uncertainty for random covariant observables"},
        {"clone", "universal-cloner joint measurements against the optimal qudit boundary"},
        {"meanfield", "qubit strings against the mean-field curve"},
    };
    for (const auto& [name, help] : verbs) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config_path, "JSON config file");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_flag("--svg", o.svg, "also write SVG plots");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--set", o.overrides, "override a config value, key=value (dotted keys)")->take_all();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfig;
    }
    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        return run(verb, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const UnsupportedBranch& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const ConvergenceError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kCheck;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
