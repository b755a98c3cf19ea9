#pragma once

#include "extscen/ingest.hpp"
#include "extscen/power.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace extscen::demo {

/// Parameters of the bundled synthetic wind/PV/load study case. The
/// profiles are generated, not measured: seasonal and diurnal shapes plus
/// autocorrelated weather noise, deterministic in the seed.
struct DemoSpec {
    int n_years = 40;
    int first_year = 1980;
    int n_periods = 8760; // hourly year
    double wind_capacity_mw = 300.0;
    double pv_capacity_mw = 300.0;
    double peak_load_mw = 264.0; // average annual peak across years
    std::uint64_t seed = 2024;
};

/// In-memory historical scenarios, one per year, labels "<first_year>".. .
std::vector<Scenario> make_historical(const DemoSpec& spec);

/// Writes the same data as a dataset directory: wind.csv and pv.csv as
/// capacity factors, load.csv in MW, plus dataset.json. Returns the
/// descriptor path.
std::filesystem::path write_dataset(const std::filesystem::path& dir, const DemoSpec& spec);

} // namespace extscen::demo
