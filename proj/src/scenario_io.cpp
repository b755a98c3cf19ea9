#include "extscen/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace extscen {

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

double parse_double(const std::string& field, const std::string& context)
{
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw std::invalid_argument(context + ": not a number: '" + field + "'");
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument(context + ": non-finite value: '" + field + "'");
    }
    return value;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

void write_scenario_csv(const std::filesystem::path& path, const Scenario& s,
                        const std::vector<std::string>& rg_ids,
                        const std::vector<std::string>& ld_ids)
{
    if (s.rg_mw.size() != rg_ids.size() || s.ld_mw.size() != ld_ids.size()) {
        throw std::invalid_argument("write_scenario_csv: unit id count mismatch");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << "period";
    for (const auto& id : rg_ids) {
        out << ',' << id;
    }
    for (const auto& id : ld_ids) {
        out << ',' << id;
    }
    out << '\n';
    const std::size_t nt = s.n_periods();
    for (std::size_t t = 0; t < nt; ++t) {
        out << (t + 1);
        for (const auto& row : s.rg_mw) {
            out << ',' << format_double(row[t]);
        }
        for (const auto& row : s.ld_mw) {
            out << ',' << format_double(row[t]);
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

Scenario read_scenario_csv(const std::filesystem::path& path,
                           const std::vector<std::string>& rg_ids,
                           const std::vector<std::string>& ld_ids,
                           const std::string& label)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open: " + path.string());
    }
    const std::string where = path.filename().string();

    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(where + ": empty file");
    }
    const auto header = split_csv_line(line);
    const std::size_t expected_cols = 1 + rg_ids.size() + ld_ids.size();
    if (header.size() != expected_cols || header[0] != "period") {
        throw std::invalid_argument(where + ": unexpected header");
    }
    for (std::size_t i = 0; i < rg_ids.size(); ++i) {
        if (header[1 + i] != rg_ids[i]) {
            throw std::invalid_argument(where + ": expected column '" + rg_ids[i] + "', got '" +
                                        header[1 + i] + "'");
        }
    }
    for (std::size_t i = 0; i < ld_ids.size(); ++i) {
        if (header[1 + rg_ids.size() + i] != ld_ids[i]) {
            throw std::invalid_argument(where + ": expected column '" + ld_ids[i] + "', got '" +
                                        header[1 + rg_ids.size() + i] + "'");
        }
    }

    Scenario s;
    s.label = label.empty() ? path.stem().string() : label;
    s.rg_mw.resize(rg_ids.size());
    s.ld_mw.resize(ld_ids.size());

    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        ++row_no;
        const auto fields = split_csv_line(line);
        if (fields.size() != expected_cols) {
            throw std::invalid_argument(where + ": row " + std::to_string(row_no) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(expected_cols));
        }
        const double period = parse_double(fields[0], where + " period column");
        if (period != static_cast<double>(row_no)) {
            throw std::invalid_argument(where + ": period column out of order at row " +
                                        std::to_string(row_no));
        }
        for (std::size_t i = 0; i < rg_ids.size(); ++i) {
            s.rg_mw[i].push_back(parse_double(fields[1 + i], where));
        }
        for (std::size_t i = 0; i < ld_ids.size(); ++i) {
            s.ld_mw[i].push_back(parse_double(fields[1 + rg_ids.size() + i], where));
        }
    }
    if (row_no == 0) {
        throw std::invalid_argument(where + ": no data rows");
    }
    return s;
}

} // namespace extscen
