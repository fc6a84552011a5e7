#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

#include "qplocal/config.hpp"
#include "qplocal/coupling.hpp"
#include "qplocal/greens.hpp"
#include "qplocal/msa.hpp"
#include "qplocal/reports.hpp"
#include "qplocal/spectrum.hpp"

namespace {

using qplocal::Json;

class StageClock {
public:
    void start(const std::string& name) {
        stage_ = name;
        begin_ = std::chrono::steady_clock::now();
    }
    void stop(qplocal::RunManifest& manifest) {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin_)
                       .count();
        manifest.stage_seconds.emplace_back(stage_, s);
    }

private:
    std::string stage_;
    std::chrono::steady_clock::time_point begin_;
};

std::string out_path(const qplocal::ExperimentConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

void emit(const qplocal::ExperimentConfig& cfg, qplocal::RunManifest& manifest,
          const std::string& name, const std::string& content) {
    std::string path = out_path(cfg, name);
    qplocal::write_text_file(path, content);
    manifest.outputs.push_back(path);
}

int run_greens(const qplocal::ExperimentConfig& cfg, qplocal::RunManifest& manifest) {
    StageClock clock;
    clock.start("greens");
    qplocal::GreensMatrix g =
        qplocal::greens(cfg.model, qplocal::LatticeInterval::radius(cfg.scale));
    qplocal::GoodnessVerdict verdict =
        qplocal::verify_ldt_bounds(g, cfg.exponents.b, cfg.exponents.gamma);
    Json report;
    report["interval"] = {g.interval.a, g.interval.b};
    report["operator_norm"] = g.operator_norm;
    report["hs_norm"] = g.hs_norm;
    report["condition_estimate"] = g.condition_estimate;
    report["verdict"] = qplocal::to_json(verdict);
    try {
        report["decay_fit"] = qplocal::to_json(qplocal::decay_fit(g));
    } catch (const std::invalid_argument&) {
        report["decay_fit"] = nullptr;  // window too small for a fit
    }
    clock.stop(manifest);

    if (cfg.write_csv) emit(cfg, manifest, "greens_entries.csv", qplocal::greens_entries_csv(g));
    if (cfg.write_json) emit(cfg, manifest, "greens_report.json", report.dump(2) + "\n");
    return 0;
}

int run_badset(const qplocal::ExperimentConfig& cfg, qplocal::RunManifest& manifest) {
    Json all = Json::array();
    for (std::size_t i = 0; i < cfg.energies.size(); ++i) {
        StageClock clock;
        clock.start("badset_E" + std::to_string(i));
        qplocal::BadSetReport report = qplocal::bad_set_estimate(
            cfg.model.with_energy(cfg.energies[i]), cfg.scale, cfg.sampler, cfg.exponents,
            cfg.workers);
        clock.stop(manifest);
        all.push_back(qplocal::to_json(report));
        if (cfg.write_csv)
            emit(cfg, manifest, "bad_cells_E" + std::to_string(i) + ".csv",
                 qplocal::bad_cells_csv(report));
    }
    if (cfg.write_json) emit(cfg, manifest, "badset_report.json", all.dump(2) + "\n");
    return 0;
}

int run_msa(const qplocal::ExperimentConfig& cfg, qplocal::RunManifest& manifest) {
    if (cfg.scales.empty())
        throw qplocal::ConfigError("run.scales is required for the msa subcommand");
    qplocal::ScaleLadder ladder{cfg.scales, cfg.exponents};
    StageClock clock;
    clock.start("msa");
    std::vector<qplocal::ScaleReport> reports = qplocal::inductive_scale_verify(
        cfg.model, ladder, cfg.sampler, cfg.work_budget, cfg.workers);
    clock.stop(manifest);
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(qplocal::to_json(r));
    if (cfg.write_json) emit(cfg, manifest, "msa_report.json", all.dump(2) + "\n");
    return 0;
}

int run_spectrum(const qplocal::ExperimentConfig& cfg, qplocal::RunManifest& manifest) {
    StageClock clock;
    clock.start("spectrum");
    qplocal::EigenReport report = qplocal::eigensolve_jacobi(
        cfg.model, qplocal::LatticeInterval::radius(cfg.scale), cfg.weight_floor);
    clock.stop(manifest);
    if (cfg.write_json)
        emit(cfg, manifest, "spectrum_report.json",
             qplocal::eigen_report_json(report).dump(2) + "\n");
    if (cfg.write_csv)
        emit(cfg, manifest, "eigen_decay.csv", qplocal::eigen_decay_csv(report));
    return 0;
}

int run_lyapunov(const qplocal::ExperimentConfig& cfg, qplocal::RunManifest& manifest) {
    StageClock clock;
    clock.start("lyapunov");
    std::vector<qplocal::LyapunovEstimate> sweep;
    sweep.reserve(cfg.energies.size());
    for (double e : cfg.energies)
        sweep.push_back(qplocal::lyapunov(cfg.model, e, cfg.lyapunov_steps));
    clock.stop(manifest);
    if (cfg.write_csv) emit(cfg, manifest, "lyapunov.csv", qplocal::lyapunov_csv(sweep));
    if (cfg.write_json) {
        Json all = Json::array();
        for (const auto& e : sweep) all.push_back(qplocal::to_json(e));
        emit(cfg, manifest, "lyapunov_report.json", all.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume laboratory for quasi-periodic operators with degenerate weights"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    for (const char* name : {"greens", "badset", "msa", "spectrum", "lyapunov"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", output_override, "override output.dir");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    auto wall_begin = std::chrono::steady_clock::now();
    try {
        qplocal::ExperimentConfig cfg = qplocal::load_config_file(config_path);
        if (!output_override.empty()) cfg.output_dir = output_override;

        qplocal::RunManifest manifest;
        manifest.hash = qplocal::config_hash(cfg.resolved);
        manifest.tool_version = qplocal::kToolVersion;

        int rc = 1;
        if (app.got_subcommand("greens")) rc = run_greens(cfg, manifest);
        if (app.got_subcommand("badset")) rc = run_badset(cfg, manifest);
        if (app.got_subcommand("msa")) rc = run_msa(cfg, manifest);
        if (app.got_subcommand("spectrum")) rc = run_spectrum(cfg, manifest);
        if (app.got_subcommand("lyapunov")) rc = run_lyapunov(cfg, manifest);

        manifest.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_begin)
                .count();
        Json mj = manifest.to_json();
        mj["resolved_config"] = Json::parse(cfg.resolved.dump());
        qplocal::write_text_file(out_path(cfg, "manifest.json"), mj.dump(2) + "\n");
        return rc;
    } catch (const qplocal::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qplocal::SingularRestrictionError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const qplocal::WeightFloorError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
