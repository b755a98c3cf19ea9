#pragma once

#include "extscen/power.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace extscen::ingest {

enum class ValueKind {
    mw,
    capacity_factor,
};

/// How to treat unit files with more rows than the declared period count
/// (leap years in hourly data): reject the file or truncate to n_periods.
enum class LeapPolicy {
    reject,
    truncate,
};

struct UnitSpec {
    std::string id;
    std::string role; // "rg" or "ld"
    std::string file; // relative to the dataset directory
    ValueKind kind = ValueKind::mw;
    double capacity_mw = 0.0; // conversion factor for capacity_factor files,
                              // upper sampling bound for every unit
};

struct DatasetDescriptor {
    int n_periods = 0;
    LeapPolicy leap_policy = LeapPolicy::reject;
    std::vector<UnitSpec> units;

    static DatasetDescriptor load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    [[nodiscard]] std::vector<std::string> rg_ids() const;
    [[nodiscard]] std::vector<std::string> ld_ids() const;
    [[nodiscard]] const UnitSpec& unit(const std::string& id) const;
};

/// One historical scenario per column label (typically a year), assembled
/// across all unit files, plus the inventory implied by the descriptor
/// (no synchronous units; those come from the system configuration).
struct HistoricalSet {
    std::vector<Scenario> scenarios; // sorted by label, ascending
    UnitInventory inventory;         // rg/ld ids in descriptor order, sg empty
    std::vector<std::string> labels;

    struct Provenance {
        std::string path;
        std::string hash_hex;
    };
    std::vector<Provenance> provenance;
};

/// Loads every unit file named by the descriptor. Each file is a wide CSV:
/// header `period,<label>,<label>,...`, one row per period with the period
/// index in column 1. All files must carry the same label set; capacity
/// factors are converted to MW with the declared capacity. Malformed input
/// (ragged rows, non-numeric or missing cells, period mismatches, capacity
/// factors outside [0, 1.0001], duplicate labels) is rejected with the file
/// named in the error.
HistoricalSet load_historical(const std::filesystem::path& dir, const DatasetDescriptor& desc);

/// Writes the set back out as MW-kind unit CSVs plus a matching descriptor
/// (`dataset.json`), preserving values bit-exactly.
void save_historical(const std::filesystem::path& dir, const HistoricalSet& set,
                     const DatasetDescriptor& source_desc);

} // namespace extscen::ingest
