#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ptqfi/output.hpp"
#include "ptqfi/scan.hpp"

using namespace ptqfi;

TEST(Grid, EndpointsAndValidation) {
    Grid g{0.5, 2.0, 2};
    EXPECT_EQ(g.points(), (std::vector<double>{0.5, 2.0}));
    EXPECT_THROW((Grid{-1.0, 1.0, 5}).validate(), std::invalid_argument);
    EXPECT_THROW((Grid{1.0, 1.0, 5}).validate(), std::invalid_argument);
    EXPECT_THROW((Grid{0.0, 1.0, 1}).validate(), std::invalid_argument);
    const Grid fig = default_figure_grid();
    EXPECT_GT(fig.t_min, 0.0);
    EXPECT_EQ(fig.t_max, 50.0);
    EXPECT_EQ(fig.n_points, 2000);
}

TEST(Scan, GroundPopulationWithoutFeedback) {
    ScanSpec spec;
    spec.quantity = Quantity::Rho11;
    spec.grid = {0.0, 30.0, 31};
    const TimeSeries s = run_scan(spec);
    ASSERT_EQ(s.values.size(), 31u);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        EXPECT_NEAR(s.values[i], 1.0 - 0.5 * std::exp(-0.1 * s.grid[i]), 1e-15);
    }
}

TEST(Scan, TwoPointGrid) {
    ScanSpec spec;
    spec.grid = {1.0, 2.0, 2};
    const TimeSeries s = run_scan(spec);
    EXPECT_EQ(s.grid, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(s.values.size(), 2u);
}

TEST(Scan, IndependentOfThreadCount) {
    ScanSpec spec;
    spec.feedback.a = 5.0;
    spec.feedback.b = 4.0;
    spec.grid = {0.1, 40.0, 97};
    const TimeSeries one = run_scan(spec);
    spec.threads = 4;
    const TimeSeries four = run_scan(spec);
    EXPECT_EQ(one.values, four.values);
}

TEST(Scan, ProbeBoundDecreasesWithQubits) {
    ScanSpec spec;
    spec.model = Model::Probe;
    spec.quantity = Quantity::Bound;
    spec.grid = {1.0, 1.0 + 1e-9, 2};
    double previous = INFINITY;
    for (std::int64_t n = 1; n <= 8; ++n) {
        spec.probe.n_qubits = n;
        const double v = evaluate_point(spec, 1.0);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, previous);
        previous = v;
    }
}

TEST(Scan, ErrorNamesGridPoint) {
    ScanSpec spec;
    spec.model = Model::Eigenstate;
    spec.probe.gamma = 1.0;
    spec.grid = {0.5, 2.0, 4};
    try {
        run_scan(spec);
        FAIL() << "expected an error";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("grid point 0 (omega = 0.5)"), std::string::npos)
            << e.what();
    }
}

TEST(Scan, QuantityModelMismatch) {
    ScanSpec spec;
    spec.model = Model::Probe;
    spec.quantity = Quantity::Rho11;
    EXPECT_THROW(run_scan(spec), std::invalid_argument);
    EXPECT_THROW(parse_quantity("G"), std::invalid_argument);
    EXPECT_THROW(parse_model("lattice"), std::invalid_argument);
    EXPECT_EQ(parse_quantity("F_over_t"), Quantity::FOverT);
}

TEST(Figures, CaptionParametersAndQuantities) {
    EXPECT_EQ(figure_spec(6).a, 1.0);
    EXPECT_EQ(figure_spec(3).b, -0.8);
    EXPECT_EQ(figure_spec(2).quantity, Quantity::F);
    EXPECT_EQ(figure_spec(7).quantity, Quantity::FOverT);
    EXPECT_THROW(figure_spec(1), std::invalid_argument);
    EXPECT_THROW(figure_spec(8), std::invalid_argument);
}

TEST(Figures, ExceptionalPointFigure) {
    const FigureData d = run_figure(6, Grid{0.1, 5.0, 20});
    EXPECT_EQ(d.regime.kind, Regime::ExceptionalPoint);
    EXPECT_EQ(d.with_feedback.meta["caption_params"]["a"], 1.0);
    EXPECT_EQ(d.with_feedback.meta["line"], "A");
    EXPECT_EQ(d.without_feedback.label, "fig6_no_feedback");
}

TEST(Figures, BaselineSharedAcrossFigures) {
    const Grid g{0.5, 20.0, 40};
    const FigureData f2 = run_figure(2, g);
    const FigureData f4 = run_figure(4, g);
    EXPECT_EQ(f2.without_feedback.values, f4.without_feedback.values);
    const FigureData f5 = run_figure(5, g);
    for (std::size_t i = 0; i < g.points().size(); ++i) {
        EXPECT_NEAR(f5.without_feedback.values[i] * f5.without_feedback.grid[i],
                    f2.without_feedback.values[i], 1e-12);
    }
}

TEST(Peaks, FindsStrictMaxima) {
    std::vector<double> x, y;
    for (int i = 0; i <= 400; ++i) {
        x.push_back(i * 0.05);
        y.push_back(std::sin(x.back()) + 2.0);
    }
    const auto peaks = find_peaks(x, y);
    ASSERT_EQ(peaks.size(), 3u);
    EXPECT_NEAR(peaks[0].x, std::numbers::pi / 2, 1e-3);
    EXPECT_NEAR(peaks[2].x, 4.5 * std::numbers::pi, 1e-3);
}

TEST(Peaks, IgnoresNoiseNearZero) {
    std::vector<double> x{0, 1, 2, 3, 4, 5, 6};
    std::vector<double> y{0, 1e-15, 0, 0.5, 1.0, 0.5, 0.2};
    const auto peaks = find_peaks(x, y);
    ASSERT_EQ(peaks.size(), 1u);
    EXPECT_EQ(peaks[0].index, 4u);
}

TEST(Output, NumbersUseSeventeenDigits) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(2.0), "2");
}

TEST(Output, CsvIsStable) {
    ScanSpec spec;
    spec.grid = {0.5, 3.0, 6};
    const auto render = [&] {
        std::ostringstream os;
        write_csv(os, run_scan(spec));
        return os.str();
    };
    const std::string first = render();
    EXPECT_EQ(first, render());
    EXPECT_EQ(first.rfind("t,F\n", 0), 0u);
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 7);
    EXPECT_EQ(first.find('\r'), std::string::npos);
}

TEST(Output, SeriesFilesAndPlotScript) {
    const auto dir = std::filesystem::temp_directory_path() / "ptqfi_output_test";
    std::filesystem::remove_all(dir);
    const FigureData d = run_figure(3, Grid{0.5, 5.0, 10});
    const WrittenFiles a = write_series(dir, d.with_feedback);
    const WrittenFiles b = write_series(dir, d.without_feedback);
    EXPECT_TRUE(std::filesystem::exists(a.csv));
    std::ifstream meta(b.meta);
    const auto j = nlohmann::json::parse(meta);
    for (const char* key : {"model", "params", "quantity", "grid"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    const auto script = write_gnuplot_script(dir, "fig3", {a, b}, "F");
    std::ifstream in(script);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_NE(text.str().find(a.csv.filename().string()), std::string::npos);
    std::filesystem::remove_all(dir);
}
