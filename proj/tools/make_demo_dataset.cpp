#include "extscen/demo.hpp"

#include <CLI11.hpp>

#include <iostream>

/// Writes the bundled synthetic wind/PV/load dataset (CSV files plus
/// dataset.json) so the main CLI has something to run against out of the
/// box. The data is generated, deterministic in --seed.
int main(int argc, char** argv)
{
    CLI::App app{"Write the synthetic demo dataset"};

    extscen::demo::DemoSpec spec;
    std::string out_dir = "data/demo";
    app.add_option("-o,--out", out_dir, "Output directory");
    app.add_option("--years", spec.n_years, "Number of historical years");
    app.add_option("--periods", spec.n_periods, "Periods per year (hours)");
    app.add_option("--seed", spec.seed, "Generator seed");
    app.add_option("--wind-capacity", spec.wind_capacity_mw, "Installed wind capacity (MW)");
    app.add_option("--pv-capacity", spec.pv_capacity_mw, "Installed PV capacity (MW)");
    app.add_option("--peak-load", spec.peak_load_mw, "Average annual peak load (MW)");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto descriptor = extscen::demo::write_dataset(out_dir, spec);
        std::cout << "wrote dataset descriptor " << descriptor.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
