// Command-line front end: figure data, parameter scans, single-point
// evaluations and the self-check suite.
//
// Exit status: 0 success, 1 a verify check failed, 2 invalid arguments,
// 3 numeric error.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptqfi/dynamics.hpp"
#include "ptqfi/errors.hpp"
#include "ptqfi/estimation.hpp"
#include "ptqfi/output.hpp"
#include "ptqfi/probes.hpp"
#include "ptqfi/scan.hpp"
#include "ptqfi/verify.hpp"

namespace {

using nlohmann::json;
using namespace ptqfi;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitNumeric = 3;

struct Options {
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.1;
    double omega = 0.0;
    double delta_t = 1.0;
    double theta = 0.7853981633974483;
    std::int64_t n_qubits = 1;
    double t = 1.0;
    double total_time = 1.0;
    double t_min = 0.025;
    double t_max = 50.0;
    int points = 2000;
    std::string quantity = "F";
    std::string model = "feedback";
    std::string method = "analytic";
    double dt = kDefaultIntegratorStep;
    int threads = 1;
    std::string out;
    bool emit_plot = false;
    bool text = false;
    std::string config;
};

// One entry per option that may also come from a JSON config file. The
// setter runs only when the flag was not given on the command line.
struct Binding {
    CLI::Option* option;
    std::function<void(const json&)> set;
};

class Bindings {
  public:
    template <typename T>
    void add(CLI::App* app, const std::string& flag, const std::string& key, T& target,
             const std::string& help) {
        CLI::Option* opt = app->add_option(flag, target, help)->capture_default_str();
        bindings_[app][key] = {opt, [&target](const json& v) { target = v.get<T>(); }};
    }

    void add_flag(CLI::App* app, const std::string& flag, const std::string& key, bool& target,
                  const std::string& help) {
        CLI::Option* opt = app->add_flag(flag, target, help);
        bindings_[app][key] = {opt, [&target](const json& v) { target = v.get<bool>(); }};
    }

    void apply_config(CLI::App* app, const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument("cannot open config file " + path);
        }
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("config " + path + ": " + e.what());
        }
        if (!cfg.is_object()) {
            throw std::invalid_argument("config " + path + ": top level must be an object");
        }
        auto& table = bindings_[app];
        for (const auto& [key, value] : cfg.items()) {
            auto it = table.find(key);
            if (it == table.end()) {
                throw std::invalid_argument("config " + path + ": unknown key '" + key +
                                            "' for subcommand " + app->get_name());
            }
            if (it->second.option->count() > 0) {
                continue;
            }
            try {
                it->second.set(value);
            } catch (const json::exception& e) {
                throw std::invalid_argument("config " + path + ": key '" + key + "': " + e.what());
            }
        }
    }

  private:
    std::map<CLI::App*, std::map<std::string, Binding>> bindings_;
};

void add_feedback_options(Bindings& b, CLI::App* app, Options& o) {
    b.add(app, "--a", "a", o.a, "sigma_x strength of the feedback operator");
    b.add(app, "--b", "b", o.b, "i sigma_z strength of the feedback operator");
    b.add(app, "--gamma", "gamma", o.gamma, "damping rate");
    b.add(app, "--omega", "omega", o.omega, "drive strength");
    b.add(app, "--delta-t", "delta_t", o.delta_t, "feedback pulse duration");
}

void add_probe_options(Bindings& b, CLI::App* app, Options& o) {
    b.add(app, "--theta", "theta", o.theta, "probe angle (radians)");
    b.add(app, "--n-qubits", "n_qubits", o.n_qubits, "number of probe qubits");
    b.add(app, "--total-time", "total_time", o.total_time, "interrogation budget T");
}

void add_grid_options(Bindings& b, CLI::App* app, Options& o) {
    b.add(app, "--t-min", "t_min", o.t_min, "first grid point");
    b.add(app, "--t-max", "t_max", o.t_max, "last grid point");
    b.add(app, "--points", "points", o.points, "number of grid points");
    b.add(app, "--threads", "threads", o.threads, "worker threads for grid evaluation");
}

void add_output_options(Bindings& b, CLI::App* app, Options& o) {
    b.add(app, "--out", "out", o.out, "directory for CSV and JSON files (stdout if absent)");
    b.add_flag(app, "--emit-plot", "emit_plot", o.emit_plot,
               "also write a gnuplot script (requires --out)");
}

FeedbackConfig feedback_config(const Options& o) {
    FeedbackConfig cfg;
    cfg.a = o.a;
    cfg.b = o.b;
    cfg.gamma = o.gamma;
    cfg.omega = o.omega;
    cfg.delta_t = o.delta_t;
    cfg.validate();
    return cfg;
}

ProbeConfig probe_config(const Options& o) {
    ProbeConfig cfg;
    cfg.theta = o.theta;
    cfg.n_qubits = o.n_qubits;
    cfg.gamma = o.gamma;
    cfg.t = o.t;
    cfg.omega = o.omega;
    cfg.total_time = o.total_time;
    cfg.validate();
    return cfg;
}

Grid grid(const Options& o) {
    Grid g;
    g.t_min = o.t_min;
    g.t_max = o.t_max;
    g.n_points = o.points;
    g.validate();
    return g;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMat2& m) {
    return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                        json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

json vector_json(const Vec2& v) { return json::array({complex_json(v(0)), complex_json(v(1))}); }

void emit(const Options& o, const std::vector<const TimeSeries*>& series, const std::string& name,
          const std::string& ylabel) {
    if (o.out.empty()) {
        if (o.emit_plot) {
            throw std::invalid_argument("--emit-plot needs --out");
        }
        write_combined_csv(std::cout, series);
        return;
    }
    std::vector<WrittenFiles> files;
    for (const TimeSeries* s : series) {
        files.push_back(write_series(o.out, *s));
        std::cout << files.back().csv.string() << '\n' << files.back().meta.string() << '\n';
    }
    if (o.emit_plot) {
        std::cout << write_gnuplot_script(o.out, name, files, ylabel).string() << '\n';
    }
}

int run_fig(const Options& o, int id) {
    const FigureData d = run_figure(id, grid(o), o.threads);
    const std::string ylabel = d.spec.quantity == Quantity::F ? "F" : "F/t";
    emit(o, {&d.with_feedback, &d.without_feedback}, "fig" + std::to_string(id), ylabel);
    return 0;
}

int run_scan_cmd(const Options& o) {
    ScanSpec spec;
    spec.model = parse_model(o.model);
    spec.quantity = parse_quantity(o.quantity);
    spec.grid = grid(o);
    spec.threads = o.threads;
    if (spec.model == Model::Feedback) {
        spec.feedback = feedback_config(o);
    } else {
        spec.probe = probe_config(o);
    }
    const TimeSeries s = run_scan(spec);
    emit(o, {&s}, s.label, s.quantity);
    return 0;
}

int run_evolve(const Options& o) {
    const FeedbackConfig cfg = feedback_config(o);
    if (o.t < 0.0) {
        throw std::invalid_argument("--t must be >= 0");
    }
    json report = {{"a", cfg.a},         {"b", cfg.b},   {"gamma", cfg.gamma},
                   {"omega", cfg.omega}, {"t", o.t},     {"method", o.method},
                   {"regime", to_string(cfg.regime().kind)}};
    std::optional<DensityMatrix> rho;
    if (o.method == "analytic") {
        rho = rho_analytic(cfg, o.t);
    } else if (o.method == "rk4") {
        rho = integrate_master(cfg, initial_superposition(), o.t, o.dt);
        report["dt"] = o.dt;
    } else {
        throw std::invalid_argument("--method must be analytic or rk4");
    }
    report["rho"] = matrix_json(rho->matrix());
    report["ground_population"] = rho->ground_population();
    report["coherence"] = complex_json(rho->coherence());
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_qfi(const Options& o) {
    const FeedbackConfig cfg = feedback_config(o);
    if (cfg.omega != 0.0) {
        throw std::invalid_argument("qfi is available for omega = 0 only");
    }
    const StateFamily fam = feedback_family(cfg.a, cfg.b, cfg.delta_t);
    const FisherResult q = quantum_fisher(fam, cfg.gamma, o.t);
    const double f = classical_fisher_projective(fam, cfg.gamma, o.t);
    const RatePeak peak = fisher_rate_peak(cfg.a, cfg.b, cfg.gamma);
    const json report = {{"a", cfg.a},
                         {"b", cfg.b},
                         {"gamma", cfg.gamma},
                         {"t", o.t},
                         {"regime", to_string(cfg.regime().kind)},
                         {"feedback_factor", peak.feedback_factor},
                         {"F", q.value},
                         {"F_method", to_string(q.method)},
                         {"F_over_t", o.t > 0.0 ? json(q.value / o.t) : json(nullptr)},
                         {"f", f},
                         {"rate_peak",
                          {{"t_approx", peak.t_approx},
                           {"rate_approx", peak.rate_approx},
                           {"t_numeric", peak.t_numeric},
                           {"rate_numeric", peak.rate_numeric}}}};
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_probe(const Options& o) {
    const ProbeConfig cfg = probe_config(o);
    const double closed = qfi_probe_closed(cfg);
    const double oracle = qfi_probe_oracle(cfg);
    const OptimalProbe best = optimal_theta(cfg.n_qubits, cfg.gamma, cfg.t);
    json report = {{"theta", cfg.theta},
                   {"n_qubits", cfg.n_qubits},
                   {"gamma", cfg.gamma},
                   {"t", cfg.t},
                   {"total_time", cfg.total_time},
                   {"qfi_closed", closed},
                   {"qfi_oracle", oracle},
                   {"oracle_over_closed", closed > 0.0 ? json(oracle / closed) : json(nullptr)},
                   {"optimal", {{"theta", best.theta},
                                {"sin2_theta", best.sin2_theta},
                                {"f_max", best.f_max}}}};
    report["bound"] = closed > 0.0 ? json(precision_bound(cfg)) : json(nullptr);
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_eigen(const Options& o) {
    if (!(o.omega > 0.0) || !(o.gamma > 0.0)) {
        throw std::invalid_argument("--omega and --gamma must be positive");
    }
    const HeffEigenstates e = eigenstates_heff(o.omega, o.gamma);
    json report = {{"omega", o.omega},
                   {"gamma", o.gamma},
                   {"coalesced", e.coalesced},
                   {"lambda_minus", complex_json(e.lambda_minus)},
                   {"lambda_plus", complex_json(e.lambda_plus)},
                   {"psi_minus", vector_json(e.psi_minus)},
                   {"psi_plus", vector_json(e.psi_plus)}};
    if (o.omega >= o.gamma) {
        const EigenstateQfi q = qfi_eigenstate(o.omega, o.gamma);
        report["qfi"] = {{"closed", q.closed},
                         {"finite_difference", q.finite_difference},
                         {"step", q.step}};
    }
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_verify(const Options& o) {
    const auto results = verify::run_all();
    if (o.text) {
        for (const auto& r : results) {
            std::cout << verify::to_string(r.status) << "  " << r.name << "  " << r.detail << '\n';
        }
    } else {
        std::cout << verify::to_json(results).dump(2) << '\n';
    }
    return verify::all_passed(results) ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Damping-rate estimation with non-Hermitian feedback and probes"};
    app.require_subcommand(1);
    Options o;
    Bindings bind;
    int fig_id = 0;

    auto* fig = app.add_subcommand("fig", "data for one of the figure panels 2..7");
    fig->add_option("id", fig_id, "figure number")->required()->check(CLI::Range(2, 7));
    add_grid_options(bind, fig, o);
    add_output_options(bind, fig, o);

    auto* scan = app.add_subcommand("scan", "evaluate a quantity on a uniform grid");
    bind.add(scan, "--model", "model", o.model, "feedback, probe or eigenstate");
    bind.add(scan, "--quantity", "quantity", o.quantity,
             "F, f, F_over_t, rho11, re_rho12, im_rho12 or bound");
    add_feedback_options(bind, scan, o);
    add_probe_options(bind, scan, o);
    bind.add(scan, "--t", "t", o.t, "shot time for the probe model");
    add_grid_options(bind, scan, o);
    add_output_options(bind, scan, o);

    auto* evolve = app.add_subcommand("evolve", "density matrix at time t");
    add_feedback_options(bind, evolve, o);
    bind.add(evolve, "--t", "t", o.t, "evolution time");
    bind.add(evolve, "--method", "method", o.method, "analytic or rk4");
    bind.add(evolve, "--dt", "dt", o.dt, "RK4 step");

    auto* qfi = app.add_subcommand("qfi", "quantum and projective Fisher information at time t");
    add_feedback_options(bind, qfi, o);
    bind.add(qfi, "--t", "t", o.t, "evolution time");

    auto* probe = app.add_subcommand("probe", "probe-state QFI, precision bound, optimal angle");
    add_probe_options(bind, probe, o);
    bind.add(probe, "--gamma", "gamma", o.gamma, "damping rate");
    bind.add(probe, "--omega", "omega", o.omega, "drive strength (must be 0)");
    bind.add(probe, "--t", "t", o.t, "shot time");

    auto* eigen = app.add_subcommand("eigen", "eigenpairs of Omega sigma_x + i gamma sigma_z");
    bind.add(eigen, "--omega", "omega", o.omega, "drive strength");
    bind.add(eigen, "--gamma", "gamma", o.gamma, "damping rate");

    auto* ver = app.add_subcommand("verify", "run every self-check; JSON report on stdout");
    bind.add_flag(ver, "--text", "text", o.text, "one line per check instead of JSON");

    for (CLI::App* sub : app.get_subcommands({})) {
        sub->add_option("--config", o.config, "JSON file of option defaults");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!o.config.empty()) {
            bind.apply_config(sub, o.config);
        }
        if (sub == fig) return run_fig(o, fig_id);
        if (sub == scan) return run_scan_cmd(o);
        if (sub == evolve) return run_evolve(o);
        if (sub == qfi) return run_qfi(o);
        if (sub == probe) return run_probe(o);
        if (sub == eigen) return run_eigen(o);
        return run_verify(o);
    } catch (const NumericError& e) {
        std::cerr << "numeric error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitBadArgs;
    }
}
