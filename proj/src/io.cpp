#include "sphdpp/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sphdpp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_points_csv(std::ostream& os, const PointConfiguration& x,
                      const std::string& metadata_json) {
    if (!metadata_json.empty()) os << "# " << metadata_json << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto p = x.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c) os << ",";
            os << format_double(p[c]);
        }
        os << "\n";
    }
}

LoadedPoints read_points_csv(std::istream& is) {
    std::string metadata;
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (metadata.empty()) {
                std::size_t start = 1;
                while (start < line.size() && line[start] == ' ') ++start;
                if (start < line.size() && line[start] == '{') metadata = line.substr(start);
            }
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("read_points_csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("read_points_csv: no data rows");
    const int d = static_cast<int>(rows.front().size()) - 1;
    if (d < 2) throw std::runtime_error("read_points_csv: points must live in R^{d+1}, d >= 2");
    PointConfiguration x(d, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto p = x.point(i);
        for (int c = 0; c <= d; ++c) p[c] = rows[i][c];
    }
    return {std::move(x), std::move(metadata)};
}

} // namespace sphdpp
