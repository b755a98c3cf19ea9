#include "extscen/ingest.hpp"

#include "extscen/hash.hpp"
#include "extscen/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace extscen::ingest {

using nlohmann::json;

namespace {

std::vector<std::string> split_line(const std::string& line)
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

struct UnitTable {
    std::vector<std::string> labels;           // column order as in the file
    std::vector<std::vector<double>> columns;  // [label][period], MW
};

UnitTable read_unit_file(const std::filesystem::path& path, const UnitSpec& unit,
                         int n_periods, LeapPolicy leap)
{
    std::ifstream in(path);
    const std::string where = path.filename().string();
    if (!in) {
        throw std::runtime_error("cannot open: " + path.string());
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(where + ": empty file");
    }
    auto header = split_line(line);
    if (header.size() < 2 || header[0] != "period") {
        throw std::invalid_argument(where + ": header must be 'period,<label>,...'");
    }

    UnitTable table;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].empty()) {
            throw std::invalid_argument(where + ": empty column label");
        }
        if (!seen.insert(header[i]).second) {
            throw std::invalid_argument(where + ": duplicate column label '" + header[i] + "'");
        }
        table.labels.push_back(header[i]);
    }
    table.columns.assign(table.labels.size(), {});

    int row_no = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        ++row_no;
        if (row_no > n_periods) {
            if (leap == LeapPolicy::truncate) {
                break;
            }
            throw std::invalid_argument(where + ": has more than the declared " +
                                        std::to_string(n_periods) + " periods");
        }
        const auto fields = split_line(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument(where + ": row " + std::to_string(row_no) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(header.size()));
        }
        const double period = parse_double(fields[0], where + " period column");
        if (period != static_cast<double>(row_no)) {
            throw std::invalid_argument(where + ": period column must run 1..N in order (row " +
                                        std::to_string(row_no) + ")");
        }
        for (std::size_t i = 0; i < table.labels.size(); ++i) {
            const std::string& field = fields[i + 1];
            if (field.empty()) {
                throw std::invalid_argument(where + ": missing cell at row " +
                                            std::to_string(row_no) + ", column '" +
                                            table.labels[i] + "'");
            }
            double value = parse_double(field, where);
            if (value < 0.0) {
                throw std::invalid_argument(where + ": negative value at row " +
                                            std::to_string(row_no) + ", column '" +
                                            table.labels[i] + "'");
            }
            if (unit.kind == ValueKind::capacity_factor) {
                if (value > 1.0001) {
                    throw std::invalid_argument(where + ": capacity factor " +
                                                format_double(value) + " outside [0, 1.0001] at row " +
                                                std::to_string(row_no));
                }
                value *= unit.capacity_mw;
            } else if (unit.role == "rg" && value > unit.capacity_mw * 1.0001) {
                throw std::invalid_argument(where + ": value " + format_double(value) +
                                            " exceeds installed capacity " +
                                            format_double(unit.capacity_mw) + " at row " +
                                            std::to_string(row_no));
            }
            table.columns[i].push_back(value);
        }
    }
    if (row_no < n_periods) {
        throw std::invalid_argument(where + ": has " + std::to_string(row_no) +
                                    " periods, expected " + std::to_string(n_periods));
    }
    return table;
}

ValueKind kind_from_string(const std::string& s)
{
    if (s == "mw") {
        return ValueKind::mw;
    }
    if (s == "capacity_factor") {
        return ValueKind::capacity_factor;
    }
    throw std::invalid_argument("dataset descriptor: unknown value kind '" + s + "'");
}

} // namespace

DatasetDescriptor DatasetDescriptor::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset descriptor: " + path.string());
    }
    json j;
    in >> j;

    DatasetDescriptor d;
    d.n_periods = j.at("n_periods").get<int>();
    if (d.n_periods < 1) {
        throw std::invalid_argument("dataset descriptor: n_periods must be >= 1");
    }
    const std::string leap = j.value("leap_policy", "reject");
    if (leap == "reject") {
        d.leap_policy = LeapPolicy::reject;
    } else if (leap == "truncate") {
        d.leap_policy = LeapPolicy::truncate;
    } else {
        throw std::invalid_argument("dataset descriptor: unknown leap_policy '" + leap + "'");
    }
    for (const auto& u : j.at("units")) {
        UnitSpec spec;
        spec.id = u.at("id").get<std::string>();
        spec.role = u.at("role").get<std::string>();
        if (spec.role != "rg" && spec.role != "ld") {
            throw std::invalid_argument("dataset descriptor: unit '" + spec.id +
                                        "' has unknown role '" + spec.role + "'");
        }
        spec.file = u.at("file").get<std::string>();
        spec.kind = kind_from_string(u.at("kind").get<std::string>());
        spec.capacity_mw = u.at("capacity_mw").get<double>();
        if (!(spec.capacity_mw > 0.0)) {
            throw std::invalid_argument("dataset descriptor: unit '" + spec.id +
                                        "' needs capacity_mw > 0");
        }
        d.units.push_back(std::move(spec));
    }
    if (d.rg_ids().empty()) {
        throw std::invalid_argument("dataset descriptor: no renewable units");
    }
    if (d.ld_ids().empty()) {
        throw std::invalid_argument("dataset descriptor: no load units");
    }
    return d;
}

void DatasetDescriptor::save(const std::filesystem::path& path) const
{
    json units = json::array();
    for (const auto& u : this->units) {
        units.push_back({{"id", u.id},
                         {"role", u.role},
                         {"file", u.file},
                         {"kind", u.kind == ValueKind::mw ? "mw" : "capacity_factor"},
                         {"capacity_mw", u.capacity_mw}});
    }
    json j{{"n_periods", n_periods},
           {"leap_policy", leap_policy == LeapPolicy::reject ? "reject" : "truncate"},
           {"units", units}};
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write dataset descriptor: " + path.string());
    }
    out << j.dump(2) << '\n';
}

std::vector<std::string> DatasetDescriptor::rg_ids() const
{
    std::vector<std::string> ids;
    for (const auto& u : units) {
        if (u.role == "rg") {
            ids.push_back(u.id);
        }
    }
    return ids;
}

std::vector<std::string> DatasetDescriptor::ld_ids() const
{
    std::vector<std::string> ids;
    for (const auto& u : units) {
        if (u.role == "ld") {
            ids.push_back(u.id);
        }
    }
    return ids;
}

const UnitSpec& DatasetDescriptor::unit(const std::string& id) const
{
    for (const auto& u : units) {
        if (u.id == id) {
            return u;
        }
    }
    throw std::invalid_argument("dataset descriptor: no unit '" + id + "'");
}

HistoricalSet load_historical(const std::filesystem::path& dir, const DatasetDescriptor& desc)
{
    HistoricalSet set;
    set.inventory.rg_units = desc.rg_ids();
    set.inventory.ld_units = desc.ld_ids();

    std::map<std::string, UnitTable> tables; // unit id -> table
    std::vector<std::string> labels;
    for (const auto& unit : desc.units) {
        const auto path = dir / unit.file;
        UnitTable table = read_unit_file(path, unit, desc.n_periods, desc.leap_policy);
        std::vector<std::string> sorted = table.labels;
        std::sort(sorted.begin(), sorted.end());
        if (labels.empty()) {
            labels = sorted;
        } else if (labels != sorted) {
            throw std::invalid_argument(path.filename().string() +
                                        ": column labels differ from the other unit files");
        }
        set.provenance.push_back({path.string(), hash_file_hex(path.string())});
        tables.emplace(unit.id, std::move(table));
    }

    set.labels = labels;
    for (const auto& label : labels) {
        Scenario s;
        s.label = label;
        for (const auto& id : set.inventory.rg_units) {
            const UnitTable& t = tables.at(id);
            const auto it = std::find(t.labels.begin(), t.labels.end(), label);
            s.rg_mw.push_back(t.columns[static_cast<std::size_t>(it - t.labels.begin())]);
        }
        for (const auto& id : set.inventory.ld_units) {
            const UnitTable& t = tables.at(id);
            const auto it = std::find(t.labels.begin(), t.labels.end(), label);
            s.ld_mw.push_back(t.columns[static_cast<std::size_t>(it - t.labels.begin())]);
        }
        validate_scenario(s);
        set.scenarios.push_back(std::move(s));
    }
    return set;
}

void save_historical(const std::filesystem::path& dir, const HistoricalSet& set,
                     const DatasetDescriptor& source_desc)
{
    std::filesystem::create_directories(dir);
    DatasetDescriptor out_desc = source_desc;
    for (auto& u : out_desc.units) {
        u.kind = ValueKind::mw;
        u.file = u.id + ".csv";
    }

    const int nt = source_desc.n_periods;
    for (const auto& unit : out_desc.units) {
        std::ofstream out(dir / unit.file);
        if (!out) {
            throw std::runtime_error("cannot write: " + (dir / unit.file).string());
        }
        out << "period";
        for (const auto& label : set.labels) {
            out << ',' << label;
        }
        out << '\n';

        const bool is_rg = unit.role == "rg";
        const auto& ids = is_rg ? set.inventory.rg_units : set.inventory.ld_units;
        const auto it = std::find(ids.begin(), ids.end(), unit.id);
        if (it == ids.end()) {
            throw std::invalid_argument("save_historical: unit '" + unit.id +
                                        "' missing from the set inventory");
        }
        const auto u_idx = static_cast<std::size_t>(it - ids.begin());
        for (int t = 0; t < nt; ++t) {
            out << (t + 1);
            for (const auto& s : set.scenarios) {
                const auto& row = is_rg ? s.rg_mw[u_idx] : s.ld_mw[u_idx];
                out << ',' << format_double(row[static_cast<std::size_t>(t)]);
            }
            out << '\n';
        }
    }
    out_desc.save(dir / "dataset.json");
}

} // namespace extscen::ingest
