#include "osbou/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace osbou {

std::vector<double> CsvTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != name) continue;
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& row : rows) out.push_back(row.at(c));
        return out;
    }
    throw std::out_of_range("csv: no column named " + name);
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        out << (c ? "," : "") << table.header[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_number(row[c]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0' || errno == ERANGE) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" +
                                         cell + "'");
            }
            row.push_back(v);
        }
        if (row.size() != table.header.size()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(table.header.size()) + " fields");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable boundary_table(const OUModel& model, const Boundary& b) {
    CsvTable t{{"t", "b", "gamma_bound", "A"}, {}};
    const Mesh& mesh = b.mesh();
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double time = std::min(mesh[i], model.horizon());
        t.rows.push_back({mesh[i], b[i], gamma_bound(model, time), model.strike()});
    }
    return t;
}

CsvTable errors_table(const std::vector<double>& errors) {
    CsvTable t{{"k", "d_k", "log10_d_k"}, {}};
    for (std::size_t k = 0; k < errors.size(); ++k) {
        const double d = errors[k];
        const double lg = d > 0.0 ? std::log10(d) : -std::numeric_limits<double>::infinity();
        t.rows.push_back({static_cast<double>(k + 1), d, lg});
    }
    return t;
}

CsvTable value_table(const std::vector<ValuePoint>& points) {
    CsvTable t{{"t", "x", "V", "european", "premium", "gain", "in_stopping_region"}, {}};
    for (const auto& p : points) {
        t.rows.push_back({p.t, p.x, p.value, p.european, p.premium, p.gain,
                          p.in_stopping_region ? 1.0 : 0.0});
    }
    return t;
}

CsvTable alpha_table(const OUModel& model, std::size_t samples) {
    CsvTable t{{"t", "alpha"}, {}};
    for (std::size_t i = 0; i <= samples; ++i) {
        const double time =
            i == samples ? model.horizon() : model.horizon() * static_cast<double>(i) / samples;
        t.rows.push_back({time, model.alpha()(time)});
    }
    return t;
}

}  // namespace osbou
