#include "ptqfi/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ptqfi/dynamics.hpp"
#include "ptqfi/estimation.hpp"

namespace ptqfi {

std::string_view to_string(Model model) {
    switch (model) {
    case Model::Feedback:
        return "feedback";
    case Model::Probe:
        return "probe";
    case Model::Eigenstate:
        return "eigenstate";
    }
    return "unknown";
}

std::string_view to_string(Quantity quantity) {
    switch (quantity) {
    case Quantity::F:
        return "F";
    case Quantity::f:
        return "f";
    case Quantity::FOverT:
        return "F_over_t";
    case Quantity::Rho11:
        return "rho11";
    case Quantity::ReRho12:
        return "re_rho12";
    case Quantity::ImRho12:
        return "im_rho12";
    case Quantity::Bound:
        return "bound";
    }
    return "unknown";
}

Model parse_model(std::string_view name) {
    for (Model m : {Model::Feedback, Model::Probe, Model::Eigenstate}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

Quantity parse_quantity(std::string_view name) {
    for (Quantity q : {Quantity::F, Quantity::f, Quantity::FOverT, Quantity::Rho11,
                       Quantity::ReRho12, Quantity::ImRho12, Quantity::Bound}) {
        if (to_string(q) == name) {
            return q;
        }
    }
    throw std::invalid_argument("unknown quantity '" + std::string(name) + "'");
}

void Grid::validate() const {
    if (!std::isfinite(t_min) || !std::isfinite(t_max)) {
        throw std::invalid_argument("grid: non-finite bounds");
    }
    if (t_min < 0.0) {
        throw std::invalid_argument("grid: t_min must be >= 0");
    }
    if (!(t_max > t_min)) {
        throw std::invalid_argument("grid: t_max must exceed t_min");
    }
    if (n_points < 2) {
        throw std::invalid_argument("grid: need at least 2 points");
    }
}

std::vector<double> Grid::points() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(n_points));
    const double step = (t_max - t_min) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        out[static_cast<std::size_t>(i)] = t_min + step * static_cast<double>(i);
    }
    out.back() = t_max;
    return out;
}

Grid default_figure_grid() { return Grid{50.0 / 2000.0, 50.0, 2000}; }

namespace {

double feedback_point(const ScanSpec& spec, double t) {
    const FeedbackConfig& cfg = spec.feedback;
    switch (spec.quantity) {
    case Quantity::F:
        return quantum_fisher(feedback_family(cfg.a, cfg.b, cfg.delta_t), cfg.gamma, t).value;
    case Quantity::FOverT:
        if (!(t > 0.0)) {
            throw std::invalid_argument("F_over_t needs t > 0");
        }
        return quantum_fisher(feedback_family(cfg.a, cfg.b, cfg.delta_t), cfg.gamma, t).value /
               t;
    case Quantity::f:
        return classical_fisher_projective(feedback_family(cfg.a, cfg.b, cfg.delta_t),
                                           cfg.gamma, t);
    case Quantity::Rho11:
        return rho_analytic(cfg, t).ground_population();
    case Quantity::ReRho12:
        return rho_analytic(cfg, t).coherence().real();
    case Quantity::ImRho12:
        return rho_analytic(cfg, t).coherence().imag();
    case Quantity::Bound:
        break;
    }
    throw std::invalid_argument("quantity '" + std::string(to_string(spec.quantity)) +
                                "' is not available for the feedback model");
}

double probe_point(const ScanSpec& spec, double t) {
    ProbeConfig cfg = spec.probe;
    cfg.t = t;
    switch (spec.quantity) {
    case Quantity::F:
        return qfi_probe_closed(cfg);
    case Quantity::FOverT:
        if (!(t > 0.0)) {
            throw std::invalid_argument("F_over_t needs t > 0");
        }
        return qfi_probe_closed(cfg) / t;
    case Quantity::Bound:
        return precision_bound(cfg);
    default:
        break;
    }
    throw std::invalid_argument("quantity '" + std::string(to_string(spec.quantity)) +
                                "' is not available for the probe model");
}

double eigenstate_point(const ScanSpec& spec, double omega) {
    if (spec.quantity != Quantity::F) {
        throw std::invalid_argument("eigenstate model only provides quantity F");
    }
    return qfi_eigenstate(omega, spec.probe.gamma).closed;
}

nlohmann::json params_json(const ScanSpec& spec) {
    if (spec.model == Model::Feedback) {
        return {{"a", spec.feedback.a},
                {"b", spec.feedback.b},
                {"gamma", spec.feedback.gamma},
                {"omega", spec.feedback.omega},
                {"delta_t", spec.feedback.delta_t},
                {"regime", to_string(spec.feedback.regime().kind)}};
    }
    return {{"theta", spec.probe.theta},         {"n_qubits", spec.probe.n_qubits},
            {"gamma", spec.probe.gamma},         {"t", spec.probe.t},
            {"omega", spec.probe.omega},         {"total_time", spec.probe.total_time}};
}

std::string describe_point(const ScanSpec& spec, std::size_t index, double x) {
    std::ostringstream os;
    os.precision(17);
    os << "grid point " << index << " (" << (spec.model == Model::Eigenstate ? "omega" : "t")
       << " = " << x << "): ";
    return os.str();
}

}  // namespace

double evaluate_point(const ScanSpec& spec, double x) {
    switch (spec.model) {
    case Model::Feedback:
        return feedback_point(spec, x);
    case Model::Probe:
        return probe_point(spec, x);
    case Model::Eigenstate:
        return eigenstate_point(spec, x);
    }
    throw std::invalid_argument("unknown model");
}

TimeSeries run_scan(const ScanSpec& spec) {
    if (spec.model == Model::Feedback) {
        spec.feedback.validate();
    } else {
        spec.probe.validate();
    }
    TimeSeries out;
    out.axis = spec.model == Model::Eigenstate ? "omega" : "t";
    out.quantity = std::string(to_string(spec.quantity));
    out.label = std::string(to_string(spec.model)) + "_" + out.quantity;
    out.grid = spec.grid.points();
    out.values.assign(out.grid.size(), 0.0);

    const std::size_t n = out.grid.size();
    const std::size_t workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(spec.threads, 1)), 1, n);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        for (std::size_t i = w; i < n; i += workers) {
            try {
                out.values[i] = evaluate_point(spec, out.grid[i]);
            } catch (const NumericError& e) {
                errors[w] = std::make_exception_ptr(
                    NumericError(e.kind(), describe_point(spec, i, out.grid[i]) + e.what()));
                return;
            } catch (const std::invalid_argument& e) {
                errors[w] = std::make_exception_ptr(
                    std::invalid_argument(describe_point(spec, i, out.grid[i]) + e.what()));
                return;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }

    out.meta = {{"model", to_string(spec.model)},
                {"params", params_json(spec)},
                {"quantity", out.quantity},
                {"grid",
                 {{"variable", out.axis},
                  {"min", spec.grid.t_min},
                  {"max", spec.grid.t_max},
                  {"points", spec.grid.n_points}}}};
    return out;
}

FigureSpec figure_spec(int id) {
    switch (id) {
    case 2:
        return {2, 10.0 * std::sqrt(2.0), 10.0, 0.1, Quantity::F};
    case 3:
        return {3, 0.8, -0.8, 0.1, Quantity::F};
    case 4:
        return {4, 1.0, -2.0, 0.1, Quantity::F};
    case 5:
        return {5, 5.0, 4.0, 0.1, Quantity::FOverT};
    case 6:
        return {6, 1.0, 1.0, 0.1, Quantity::FOverT};
    case 7:
        return {7, 4.0, 5.0, 0.1, Quantity::FOverT};
    default:
        break;
    }
    throw std::invalid_argument("figure id must be in 2..7");
}

FigureData run_figure(int id, const Grid& grid, int threads) {
    const FigureSpec fs = figure_spec(id);
    ScanSpec spec;
    spec.model = Model::Feedback;
    spec.grid = grid;
    spec.quantity = fs.quantity;
    spec.threads = threads;
    spec.feedback.gamma = fs.gamma;

    FigureData data{fs, classify_regime(fs.a, fs.b), {}, {}};

    spec.feedback.a = fs.a;
    spec.feedback.b = fs.b;
    data.with_feedback = run_scan(spec);
    data.with_feedback.label = "fig" + std::to_string(id) + "_feedback";

    // U = I: a = b = 0 reproduces the undriven amplitude-damping baseline.
    spec.feedback.a = 0.0;
    spec.feedback.b = 0.0;
    data.without_feedback = run_scan(spec);
    data.without_feedback.label = "fig" + std::to_string(id) + "_no_feedback";

    for (TimeSeries* s : {&data.with_feedback, &data.without_feedback}) {
        s->meta["figure"] = id;
        s->meta["caption_params"] = {{"a", fs.a}, {"b", fs.b}, {"gamma", fs.gamma}};
        s->meta["line"] = s == &data.with_feedback ? "A" : "B";
    }
    return data;
}

std::vector<Peak> find_peaks(const std::vector<double>& grid, const std::vector<double>& values,
                             double noise_floor) {
    if (grid.size() != values.size()) {
        throw std::invalid_argument("find_peaks: grid and values differ in length");
    }
    std::vector<Peak> peaks;
    if (values.size() < 3) {
        return peaks;
    }
    const double top = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double y0 = values[i - 1];
        const double y1 = values[i];
        const double y2 = values[i + 1];
        if (!(y1 > y0 && y1 > y2) || y1 < noise_floor * top) {
            continue;
        }
        // Vertex of the parabola through the three samples.
        const double h = grid[i + 1] - grid[i];
        const double curvature = y0 - 2.0 * y1 + y2;
        const double shift = curvature != 0.0 ? 0.5 * (y0 - y2) / curvature : 0.0;
        peaks.push_back({i, grid[i] + shift * h, y1 - 0.25 * (y0 - y2) * shift});
    }
    return peaks;
}

}  // namespace ptqfi
