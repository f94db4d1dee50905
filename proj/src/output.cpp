#include "ptqfi/output.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace ptqfi {

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

void write_csv(std::ostream& os, const TimeSeries& series) {
    os << series.axis << ',' << series.quantity << '\n';
    for (std::size_t i = 0; i < series.grid.size(); ++i) {
        os << format_number(series.grid[i]) << ',' << format_number(series.values[i]) << '\n';
    }
}

void write_combined_csv(std::ostream& os, const std::vector<const TimeSeries*>& series) {
    if (series.empty()) {
        return;
    }
    const auto& grid = series.front()->grid;
    os << series.front()->axis;
    for (const TimeSeries* s : series) {
        if (s->grid != grid) {
            throw std::invalid_argument("combined CSV needs a shared grid");
        }
        os << ',' << s->label;
    }
    os << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_number(grid[i]);
        for (const TimeSeries* s : series) {
            os << ',' << format_number(s->values[i]);
        }
        os << '\n';
    }
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

}  // namespace

WrittenFiles write_series(const std::filesystem::path& dir, const TimeSeries& series) {
    std::filesystem::create_directories(dir);
    WrittenFiles files{dir / (series.label + ".csv"), dir / (series.label + ".json")};
    {
        auto out = open_for_write(files.csv);
        write_csv(out, series);
    }
    {
        auto out = open_for_write(files.meta);
        out << series.meta.dump(2) << '\n';
    }
    return files;
}

std::filesystem::path write_gnuplot_script(const std::filesystem::path& dir,
                                           const std::string& name,
                                           const std::vector<WrittenFiles>& files,
                                           const std::string& ylabel) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (name + ".gp");
    auto out = open_for_write(path);
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 't'\n"
        << "set ylabel '" << ylabel << "'\n"
        << "set terminal pngcairo size 800,600\n"
        << "set output '" << name << ".png'\n"
        << "plot ";
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (i > 0) {
            out << ", \\\n     ";
        }
        out << "'" << files[i].csv.filename().string() << "' using 1:2 with lines title '"
            << files[i].csv.stem().string() << "'";
    }
    out << '\n';
    return path;
}

}  // namespace ptqfi
