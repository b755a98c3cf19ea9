#include "extscen/ingest.hpp"
#include "extscen/power.hpp"
#include "extscen/risk.hpp"
#include "extscen/scenario_io.hpp"
#include "extscen/scenariogen.hpp"
#include "extscen/sizing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    fs::path config_dir;
    std::uint64_t seed = 1;
    fs::path dataset_path;
    fs::path cache_dir;
    extscen::RiskParams risk;
    std::vector<extscen::SynchronousGenerator> sg_units;
    extscen::scenariogen::GenerationConfig generation;
    bool export_profiles = false;
    json raw;
};

RunConfig load_run_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config: " + path.string());
    }
    json j;
    in >> j;
    if (j.value("schema_version", 0) != 1) {
        throw std::invalid_argument("config: unsupported schema_version (expected 1)");
    }

    RunConfig cfg;
    cfg.raw = j;
    cfg.config_dir = path.parent_path();
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.dataset_path = cfg.config_dir / j.at("dataset").get<std::string>();
    cfg.cache_dir = cfg.config_dir / j.value("cache_dir", std::string(".extscen-cache"));

    const json& sys = j.at("system");
    cfg.risk.alpha_sg = sys.value("alpha_sg", 0.95);
    cfg.risk.sigma = sys.value("sigma", 24);
    cfg.risk.theta = sys.value("theta", 0.5);
    const std::string form = sys.value("fluct_form", "literal");
    if (form == "literal") {
        cfg.risk.fluct_form = extscen::FluctForm::literal;
    } else if (form == "tau_squared") {
        cfg.risk.fluct_form = extscen::FluctForm::tau_squared;
    } else {
        throw std::invalid_argument("config: unknown fluct_form '" + form + "'");
    }
    for (const auto& g : sys.at("sg_units")) {
        cfg.sg_units.push_back({g.at("id").get<std::string>(), g.at("capacity_mw").get<double>(),
                                g.at("ramp_up_mw").get<double>(),
                                g.at("ramp_down_mw").get<double>()});
    }

    if (j.contains("generation")) {
        const json& gen = j["generation"];
        cfg.generation.n_ext = gen.value("n_ext", 100);
        cfg.generation.screen_interval = gen.value("screen_interval", 730);
        cfg.generation.n_candidates = gen.value("n_candidates", 8);
        cfg.generation.tilt = gen.value("tilt", 1.0);
    }
    if (j.contains("fit")) {
        const json& fit = j["fit"];
        cfg.generation.fit.k_max = fit.value("k_max", 3);
        cfg.generation.fit.max_iters = fit.value("max_iters", 200);
        cfg.generation.fit.tol = fit.value("tol", 1e-6);
        cfg.generation.fit.variance_floor = fit.value("variance_floor", 0.0);
        cfg.generation.fit.n_init = fit.value("n_init", 4);
    }
    if (j.contains("export")) {
        cfg.export_profiles = j["export"].value("profiles", false);
    }
    cfg.generation.seed = cfg.seed;
    cfg.generation.fit.seed = cfg.seed;
    return cfg;
}

struct LoadedCase {
    extscen::ingest::DatasetDescriptor descriptor;
    extscen::ingest::HistoricalSet historical;
    extscen::SystemModel system;
};

LoadedCase load_case(RunConfig& cfg)
{
    LoadedCase c{extscen::ingest::DatasetDescriptor::load(cfg.dataset_path), {}, {}};
    c.historical = extscen::ingest::load_historical(cfg.dataset_path.parent_path(), c.descriptor);

    extscen::UnitInventory inventory = c.historical.inventory;
    inventory.sg_units = cfg.sg_units;
    c.system = extscen::validate_system(std::move(inventory), cfg.risk);

    cfg.generation.rg_upper_bounds.clear();
    cfg.generation.ld_upper_bounds.clear();
    for (const auto& id : c.system.inventory().rg_units) {
        cfg.generation.rg_upper_bounds.push_back(c.descriptor.unit(id).capacity_mw);
    }
    for (const auto& id : c.system.inventory().ld_units) {
        cfg.generation.ld_upper_bounds.push_back(c.descriptor.unit(id).capacity_mw);
    }
    return c;
}

/// All writers target a staging directory that is renamed into place at the
/// end, so a failed run leaves no partial outputs behind.
class StagedDir {
public:
    StagedDir(fs::path target, bool force) : target_(std::move(target))
    {
        if (fs::exists(target_)) {
            if (!force) {
                throw std::runtime_error("output directory exists: " + target_.string() +
                                         " (use --force to replace)");
            }
            fs::remove_all(target_);
        }
        stage_ = target_;
        stage_ += ".partial";
        fs::remove_all(stage_);
        fs::create_directories(stage_);
    }

    ~StagedDir()
    {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(stage_, ec);
        }
    }

    [[nodiscard]] const fs::path& dir() const { return stage_; }

    void commit()
    {
        fs::rename(stage_, target_);
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path stage_;
    bool committed_ = false;
};

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write: " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string ranking_csv(const std::vector<extscen::scenariogen::RankedScenario>& selected)
{
    std::string csv = "rank,label,ilt,sum_ips,sum_ipf\n";
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const auto& rs = selected[i];
        csv += std::to_string(i + 1);
        csv += ',' + rs.scenario.label;
        csv += ',' + extscen::format_double(rs.profile.ilt);
        csv += ',' + extscen::format_double(rs.profile.sum_ips());
        csv += ',' + extscen::format_double(rs.profile.sum_ipf());
        csv += '\n';
    }
    return csv;
}

std::string profile_csv(const extscen::RiskProfile& prof)
{
    std::string csv = "t,ps,pf,ips,ipf\n";
    for (std::size_t t = 0; t < prof.ps_mw.size(); ++t) {
        csv += std::to_string(t + 1);
        csv += ',' + extscen::format_double(prof.ps_mw[t]);
        csv += ',' + extscen::format_double(prof.pf_mw[t]);
        csv += ',' + extscen::format_double(prof.ips[t]);
        csv += ',' + extscen::format_double(prof.ipf[t]);
        csv += '\n';
    }
    return csv;
}

std::string scenario_filename(std::size_t rank, double ilt)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "ext_%03zu_%.6g.csv", rank, ilt);
    return std::string(buf);
}

json dataset_echo(const LoadedCase& c, const RunConfig& cfg)
{
    json sg = json::array();
    for (const auto& g : cfg.sg_units) {
        sg.push_back({{"id", g.id},
                      {"capacity_mw", g.capacity_mw},
                      {"ramp_up_mw", g.ramp_up_mw},
                      {"ramp_down_mw", g.ramp_down_mw}});
    }
    return json{{"descriptor", cfg.dataset_path.string()},
                {"rg_units", c.system.inventory().rg_units},
                {"ld_units", c.system.inventory().ld_units},
                {"sg_units", sg},
                {"n_periods", c.descriptor.n_periods},
                {"historical_labels", c.historical.labels}};
}

int cmd_fit_bank(RunConfig& cfg)
{
    LoadedCase c = load_case(cfg);
    const auto cached = extscen::scenariogen::build_model_bank_cached(
        c.historical.scenarios, cfg.generation.fit, cfg.cache_dir);
    json out{{"bank_hash", cached.hash_hex},
             {"cache_file", cached.cache_file.string()},
             {"cache_hit", cached.cache_hit}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_generate(RunConfig& cfg, const fs::path& out_dir, int workers, bool force)
{
    LoadedCase c = load_case(cfg);
    extscen::scenariogen::GenerateOptions options;
    options.cache_dir = cfg.cache_dir;
    options.workers = workers;

    auto result = extscen::scenariogen::generate(c.historical.scenarios, c.system,
                                                 cfg.generation, options);

    StagedDir staged(out_dir, force);
    write_text(staged.dir() / "ranking.csv", ranking_csv(result.selected));
    for (std::size_t i = 0; i < result.selected.size(); ++i) {
        const auto& rs = result.selected[i];
        extscen::write_scenario_csv(staged.dir() / scenario_filename(i + 1, rs.profile.ilt),
                                    rs.scenario, c.system.inventory().rg_units,
                                    c.system.inventory().ld_units);
        if (cfg.export_profiles) {
            write_text(staged.dir() / (rs.scenario.label + "_risk.csv"),
                       profile_csv(rs.profile));
        }
    }
    json manifest = result.manifest.to_json();
    manifest["config"]["dataset"] = dataset_echo(c, cfg);
    manifest["config"]["export_profiles"] = cfg.export_profiles;
    write_text(staged.dir() / "manifest.json", manifest.dump(2) + "\n");
    staged.commit();

    std::cout << "wrote " << result.selected.size() << " scenarios to " << out_dir.string()
              << '\n';
    return 0;
}

int cmd_risk(RunConfig& cfg, const std::vector<fs::path>& scenario_files,
             const std::vector<std::string>& labels, const fs::path& out_dir, bool force)
{
    LoadedCase c = load_case(cfg);
    std::vector<extscen::Scenario> scenarios;
    for (const auto& f : scenario_files) {
        scenarios.push_back(extscen::read_scenario_csv(f, c.system.inventory().rg_units,
                                                       c.system.inventory().ld_units));
    }
    for (const auto& label : labels) {
        bool found = false;
        for (const auto& s : c.historical.scenarios) {
            if (s.label == label) {
                scenarios.push_back(s);
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::invalid_argument("no historical scenario labelled '" + label + "'");
        }
    }
    if (scenarios.empty()) {
        throw std::invalid_argument("risk: nothing to evaluate (use --scenario or --label)");
    }

    StagedDir staged(out_dir, force);
    std::string summary = "label,ilt,sum_ips,sum_ipf\n";
    for (const auto& s : scenarios) {
        const auto prof = extscen::risk_profile(s, c.system);
        write_text(staged.dir() / (s.label + "_risk.csv"), profile_csv(prof));
        summary += s.label;
        summary += ',' + extscen::format_double(prof.ilt);
        summary += ',' + extscen::format_double(prof.sum_ips());
        summary += ',' + extscen::format_double(prof.sum_ipf());
        summary += '\n';
    }
    write_text(staged.dir() / "risk_summary.csv", summary);
    staged.commit();
    std::cout << "wrote " << scenarios.size() << " risk profiles to " << out_dir.string() << '\n';
    return 0;
}

std::vector<std::pair<std::string, double>> read_ranking(const fs::path& run_dir)
{
    std::ifstream in(run_dir / "ranking.csv");
    if (!in) {
        throw std::runtime_error("cannot open ranking: " + (run_dir / "ranking.csv").string());
    }
    std::vector<std::pair<std::string, double>> entries;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        entries.emplace_back(line.substr(c1 + 1, c2 - c1 - 1),
                             extscen::parse_double(line.substr(c2 + 1, c3 - c2 - 1), "ranking ilt"));
    }
    return entries;
}

fs::path scenario_file_for_rank(const fs::path& run_dir, std::size_t rank)
{
    char prefix[32];
    std::snprintf(prefix, sizeof(prefix), "ext_%03zu_", rank);
    for (const auto& e : fs::directory_iterator(run_dir)) {
        const auto name = e.path().filename().string();
        if (name.rfind(prefix, 0) == 0 && name.size() > 4 &&
            name.compare(name.size() - 4, 4, ".csv") == 0) {
            return e.path();
        }
    }
    throw std::runtime_error("no scenario file for rank " + std::to_string(rank) + " in " +
                             run_dir.string());
}

int cmd_size(RunConfig& cfg, const fs::path& run_dir, const std::vector<int>& sweep,
             double efficiency, const std::vector<std::string>& base_labels,
             const fs::path& out_dir, bool force)
{
    LoadedCase c = load_case(cfg);

    std::vector<extscen::Scenario> base;
    if (base_labels.empty()) {
        base = c.historical.scenarios;
    } else {
        for (const auto& label : base_labels) {
            bool found = false;
            for (const auto& s : c.historical.scenarios) {
                if (s.label == label) {
                    base.push_back(s);
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw std::invalid_argument("no historical scenario labelled '" + label + "'");
            }
        }
    }

    const auto ranking = read_ranking(run_dir);
    int max_k = 0;
    for (int k : sweep) {
        if (k < 0) {
            throw std::invalid_argument("size: sweep entries must be >= 0");
        }
        max_k = std::max(max_k, k);
    }
    if (static_cast<std::size_t>(max_k) > ranking.size()) {
        throw std::invalid_argument("size: sweep asks for top " + std::to_string(max_k) +
                                    " but the run only has " + std::to_string(ranking.size()));
    }

    std::vector<extscen::Scenario> extremes;
    for (int k = 0; k < max_k; ++k) {
        extremes.push_back(extscen::read_scenario_csv(
            scenario_file_for_rank(run_dir, static_cast<std::size_t>(k) + 1),
            c.system.inventory().rg_units, c.system.inventory().ld_units,
            ranking[static_cast<std::size_t>(k)].first));
    }

    StagedDir staged(out_dir, force);
    std::string csv = "k,power_mw,energy_mwh\n";
    json curve = json::array();
    for (int k : sweep) {
        std::vector<extscen::Scenario> pool = base;
        pool.insert(pool.end(), extremes.begin(), extremes.begin() + k);
        const auto spec = extscen::sizing::size_storage(pool, c.system, efficiency);
        csv += std::to_string(k);
        csv += ',' + extscen::format_double(spec.power_mw);
        csv += ',' + extscen::format_double(spec.energy_mwh);
        csv += '\n';
        curve.push_back({{"k", k}, {"power_mw", spec.power_mw}, {"energy_mwh", spec.energy_mwh}});
    }
    write_text(staged.dir() / "sizing_curve.csv", csv);
    staged.commit();

    // Record the sizing study in the run manifest it was computed from.
    const auto manifest_path = run_dir / "manifest.json";
    if (fs::exists(manifest_path)) {
        std::ifstream min(manifest_path);
        json manifest;
        min >> manifest;
        min.close();
        manifest["sizing"] = {{"efficiency", efficiency},
                              {"base_scenarios", base.size()},
                              {"curve", curve}};
        write_text(manifest_path, manifest.dump(2) + "\n");
    }

    std::cout << "wrote sizing curve to " << out_dir.string() << '\n';
    return 0;
}

int cmd_export_plot(const fs::path& run_dir, const fs::path& out_dir, int top, bool force)
{
    std::ifstream min(run_dir / "manifest.json");
    if (!min) {
        throw std::runtime_error("cannot open manifest: " + (run_dir / "manifest.json").string());
    }
    json manifest;
    min >> manifest;

    const json& risk_cfg = manifest.at("config").at("risk");
    extscen::RiskParams params;
    params.alpha_sg = risk_cfg.at("alpha_sg").get<double>();
    params.sigma = risk_cfg.at("sigma").get<int>();
    params.theta = risk_cfg.at("theta").get<double>();
    params.fluct_form = risk_cfg.at("fluct_form").get<std::string>() == "tau_squared"
                            ? extscen::FluctForm::tau_squared
                            : extscen::FluctForm::literal;

    const json& ds = manifest.at("config").at("dataset");
    extscen::UnitInventory inventory;
    inventory.rg_units = ds.at("rg_units").get<std::vector<std::string>>();
    inventory.ld_units = ds.at("ld_units").get<std::vector<std::string>>();
    for (const auto& g : ds.at("sg_units")) {
        inventory.sg_units.push_back({g.at("id").get<std::string>(),
                                      g.at("capacity_mw").get<double>(),
                                      g.at("ramp_up_mw").get<double>(),
                                      g.at("ramp_down_mw").get<double>()});
    }
    const auto system = extscen::validate_system(std::move(inventory), params);

    const auto ranking = read_ranking(run_dir);
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(top, 0)), ranking.size());

    StagedDir staged(out_dir, force);
    fs::copy_file(run_dir / "ranking.csv", staged.dir() / "plot_ranking.csv");

    std::string tidy = "rank,label,period,ps,pf,ips,ipf\n";
    for (std::size_t r = 0; r < n; ++r) {
        const auto scenario =
            extscen::read_scenario_csv(scenario_file_for_rank(run_dir, r + 1),
                                       system.inventory().rg_units, system.inventory().ld_units,
                                       ranking[r].first);
        const auto prof = extscen::risk_profile(scenario, system);
        for (std::size_t t = 0; t < prof.ps_mw.size(); ++t) {
            tidy += std::to_string(r + 1);
            tidy += ',' + ranking[r].first;
            tidy += ',' + std::to_string(t + 1);
            tidy += ',' + extscen::format_double(prof.ps_mw[t]);
            tidy += ',' + extscen::format_double(prof.pf_mw[t]);
            tidy += ',' + extscen::format_double(prof.ips[t]);
            tidy += ',' + extscen::format_double(prof.ipf[t]);
            tidy += '\n';
        }
    }
    write_text(staged.dir() / "plot_profiles.csv", tidy);

    if (manifest.contains("sizing")) {
        std::string curve = "k,power_mw,energy_mwh\n";
        for (const auto& p : manifest["sizing"]["curve"]) {
            curve += std::to_string(p.at("k").get<int>());
            curve += ',' + extscen::format_double(p.at("power_mw").get<double>());
            curve += ',' + extscen::format_double(p.at("energy_mwh").get<double>());
            curve += '\n';
        }
        write_text(staged.dir() / "plot_sizing.csv", curve);
    }
    staged.commit();
    std::cout << "wrote plot data to " << out_dir.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Long-horizon risk indices and extreme scenario generation for "
                 "renewable-heavy power systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::string cache_dir_override;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        if (needs_config) {
            sub->add_option("-c,--config", config_path, "Run configuration JSON")->required();
            sub->add_option("--seed", seed_override, "Override the configured seed");
            sub->add_option("--cache-dir", cache_dir_override, "Override the model bank cache dir");
        }
    };

    auto* fit_bank = app.add_subcommand("fit-bank", "Fit and cache the transition model bank");
    add_common(fit_bank);

    auto* generate = app.add_subcommand("generate", "Generate and rank extreme scenarios");
    add_common(generate);
    std::string gen_out = "out";
    int workers = 1;
    bool gen_force = false;
    generate->add_option("-o,--out", gen_out, "Output directory");
    generate->add_option("--workers", workers, "Worker threads (results are identical for any count)");
    generate->add_flag("--force", gen_force, "Replace an existing output directory");

    auto* risk = app.add_subcommand("risk", "Compute per-period risk profiles for scenarios");
    add_common(risk);
    std::vector<std::string> risk_files;
    std::vector<std::string> risk_labels;
    std::string risk_out = "risk_out";
    bool risk_force = false;
    risk->add_option("--scenario", risk_files, "Scenario CSV file(s)");
    risk->add_option("--label", risk_labels, "Historical scenario label(s) from the dataset");
    risk->add_option("-o,--out", risk_out, "Output directory");
    risk->add_flag("--force", risk_force, "Replace an existing output directory");

    auto* size = app.add_subcommand("size", "Storage sizing over base + top-k extreme scenarios");
    add_common(size);
    std::string size_run_dir;
    std::vector<int> sweep{0, 5, 10, 15, 20};
    double efficiency = 0.8;
    std::vector<std::string> base_labels;
    std::string size_out = "sizing_out";
    bool size_force = false;
    size->add_option("--run-dir", size_run_dir, "Directory written by `generate`")->required();
    size->add_option("--sweep", sweep, "Counts of extreme scenarios to add");
    size->add_option("--efficiency", efficiency, "Round-trip storage efficiency in (0,1]");
    size->add_option("--base-labels", base_labels, "Historical labels for the base set (default: all)");
    size->add_option("-o,--out", size_out, "Output directory");
    size->add_flag("--force", size_force, "Replace an existing output directory");

    auto* export_plot = app.add_subcommand("export-plot", "Emit tidy plot-ready CSVs from a run");
    std::string plot_run_dir;
    std::string plot_out = "plot_out";
    int top = 3;
    bool plot_force = false;
    export_plot->add_option("--run-dir", plot_run_dir, "Directory written by `generate`")->required();
    export_plot->add_option("-o,--out", plot_out, "Output directory");
    export_plot->add_option("--top", top, "Number of top-ranked scenarios to profile");
    export_plot->add_flag("--force", plot_force, "Replace an existing output directory");

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (sub == "export-plot") {
            return cmd_export_plot(plot_run_dir, plot_out, top, plot_force);
        }

        RunConfig cfg = load_run_config(config_path);
        if (seed_override) {
            cfg.seed = *seed_override;
            cfg.generation.seed = *seed_override;
            cfg.generation.fit.seed = *seed_override;
            cfg.raw["seed"] = *seed_override;
        }
        if (!cache_dir_override.empty()) {
            cfg.cache_dir = cache_dir_override;
        }

        if (sub == "fit-bank") {
            return cmd_fit_bank(cfg);
        }
        if (sub == "generate") {
            return cmd_generate(cfg, gen_out, workers, gen_force);
        }
        if (sub == "risk") {
            std::vector<fs::path> files(risk_files.begin(), risk_files.end());
            return cmd_risk(cfg, files, risk_labels, risk_out, risk_force);
        }
        if (sub == "size") {
            return cmd_size(cfg, size_run_dir, sweep, efficiency, base_labels, size_out,
                            size_force);
        }
        throw std::logic_error("unhandled subcommand: " + sub);
    } catch (const std::exception& e) {
        json err{{"error", {{"subcommand", sub}, {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
}
