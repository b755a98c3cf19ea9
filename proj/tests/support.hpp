#pragma once

// Shared fixtures for the test suites.

#include "extscen/power.hpp"
#include "extscen/rng.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace support {

/// One SG of 200 MW at 60 MW/h ramp, one wind unit, one load: the small
/// study system used across the suites.
inline extscen::SystemModel small_system(extscen::RiskParams params = {})
{
    extscen::UnitInventory inv;
    inv.rg_units = {"wind"};
    inv.ld_units = {"load"};
    inv.sg_units = {{"sg1", 200.0, 60.0, 60.0}};
    return extscen::validate_system(std::move(inv), params);
}

inline extscen::Scenario single_unit_scenario(std::vector<double> rg, std::vector<double> ld,
                                              std::string label = "case")
{
    extscen::Scenario s;
    s.rg_mw.push_back(std::move(rg));
    s.ld_mw.push_back(std::move(ld));
    s.label = std::move(label);
    return s;
}

/// Random scenario with the requested shape; loads in [0, load_max],
/// renewables in [0, rg_max].
inline extscen::Scenario random_scenario(extscen::Rng& rng, std::size_t n_rg, std::size_t n_ld,
                                         std::size_t nt, double rg_max = 150.0,
                                         double load_max = 300.0)
{
    extscen::Scenario s;
    s.label = "random";
    s.rg_mw.resize(n_rg);
    s.ld_mw.resize(n_ld);
    for (auto& row : s.rg_mw) {
        row.resize(nt);
        for (auto& v : row) {
            v = rg_max * rng.uniform01();
        }
    }
    for (auto& row : s.ld_mw) {
        row.resize(nt);
        for (auto& v : row) {
            v = load_max * rng.uniform01();
        }
    }
    return s;
}

/// Unique scratch directory under the system temp dir, removed on
/// destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        path_ = std::filesystem::temp_directory_path() /
                ("extscen_test_" + tag + "_" + std::to_string(counter_++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

} // namespace support
