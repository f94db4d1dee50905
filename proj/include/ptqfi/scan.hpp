#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptqfi/core.hpp"
#include "ptqfi/probes.hpp"

namespace ptqfi {

enum class Model { Feedback, Probe, Eigenstate };
enum class Quantity { F, f, FOverT, Rho11, ReRho12, ImRho12, Bound };

std::string_view to_string(Model model);
std::string_view to_string(Quantity quantity);
/// Throw std::invalid_argument on unknown names.
Model parse_model(std::string_view name);
Quantity parse_quantity(std::string_view name);

/// Uniform grid of n_points values from t_min to t_max inclusive.
struct Grid {
    double t_min = 0.025;
    double t_max = 50.0;
    int n_points = 2000;

    void validate() const;
    std::vector<double> points() const;
};

/// Default figure grid: (0, 50] in 2000 points, first point 50/2000.
Grid default_figure_grid();

struct ScanSpec {
    Model model = Model::Feedback;
    FeedbackConfig feedback;
    ProbeConfig probe;
    Grid grid;
    Quantity quantity = Quantity::F;
    int threads = 1;  // values are identical for any thread count
};

struct TimeSeries {
    std::string axis = "t";  // grid variable name ("t", or "omega" for eigenstate scans)
    std::string quantity;
    std::string label;
    std::vector<double> grid;
    std::vector<double> values;
    nlohmann::json meta;
};

/// Evaluates one grid point. Exposed for tests.
double evaluate_point(const ScanSpec& spec, double x);

/// Errors are rethrown with the offending grid point in the message.
TimeSeries run_scan(const ScanSpec& spec);

struct FigureSpec {
    int id;
    double a;
    double b;
    double gamma;
    Quantity quantity;  // F for Figs. 2-4, F/t for Figs. 5-7
};

/// Throws std::invalid_argument unless 2 <= id <= 7.
FigureSpec figure_spec(int id);

struct FigureData {
    FigureSpec spec;
    PtRegime regime;
    TimeSeries with_feedback;     // line A
    TimeSeries without_feedback;  // line B
};

FigureData run_figure(int id, const Grid& grid, int threads = 1);

struct Peak {
    std::size_t index;
    double x;      // parabolic refinement of the grid location
    double value;
};

inline constexpr double kPeakNoiseFloor = 1e-8;

/// Strict three-point local maxima, ignoring maxima below
/// noise_floor * max(values).
std::vector<Peak> find_peaks(const std::vector<double>& grid, const std::vector<double>& values,
                             double noise_floor = kPeakNoiseFloor);

}  // namespace ptqfi
