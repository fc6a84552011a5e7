#include "qplocal/config.hpp"

#include <cmath>
#include <fstream>

#include "qplocal/weight.hpp"

namespace qplocal {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field + " must be a number");
    return j.get<double>();
}

double number_or(const json& parent, const std::string& key, const std::string& prefix,
                 double fallback) {
    if (!parent.contains(key)) return fallback;
    return require_number(parent.at(key), prefix + key);
}

}  // namespace

AnalyticTorusFunction parse_function_spec(const json& spec, const std::string& field) {
    if (spec.is_string()) {
        auto f = AnalyticTorusFunction::builtin(spec.get<std::string>());
        if (!f)
            throw ConfigError(field + ": unknown builtin \"" + spec.get<std::string>() +
                              "\" (expected cos, sin2 or const)");
        return *f;
    }
    if (!spec.is_object() || !spec.contains("modes"))
        throw ConfigError(field + " must be a builtin name or an object with a modes table");

    AnalyticTorusFunction::ModeMap modes;
    for (const auto& [key, value] : spec.at("modes").items()) {
        int k = 0;
        try {
            k = std::stoi(key);
        } catch (...) {
            throw ConfigError(field + ".modes: key \"" + key + "\" is not an integer");
        }
        if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
            !value[1].is_number())
            throw ConfigError(field + ".modes[" + key + "] must be [re, im]");
        modes[k] = {value[0].get<double>(), value[1].get<double>()};
    }
    auto policy = AnalyticTorusFunction::Normalization::Rescale;
    if (spec.contains("normalization")) {
        std::string p = spec.at("normalization").get<std::string>();
        if (p == "require")
            policy = AnalyticTorusFunction::Normalization::Require;
        else if (p == "accept")
            policy = AnalyticTorusFunction::Normalization::Accept;
        else if (p == "rescale")
            policy = AnalyticTorusFunction::Normalization::Rescale;
        else
            throw ConfigError(field + ".normalization must be require, accept or rescale");
    }
    try {
        return AnalyticTorusFunction(modes, policy);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    if (!doc.contains("model")) throw ConfigError("model section is required");
    const json& model = doc.at("model");

    ExperimentConfig cfg;
    cfg.model.coupling = require_number(
        model.contains("lambda") ? model.at("lambda") : json(), "model.lambda");

    if (model.contains("E")) {
        cfg.energies = {require_number(model.at("E"), "model.E")};
    } else if (model.contains("E_grid")) {
        const json& grid = model.at("E_grid");
        double lo = require_number(grid.contains("min") ? grid.at("min") : json(),
                                   "model.E_grid.min");
        double hi = require_number(grid.contains("max") ? grid.at("max") : json(),
                                   "model.E_grid.max");
        if (!grid.contains("count") || !grid.at("count").is_number_integer())
            throw ConfigError("model.E_grid.count must be an integer");
        long long count = grid.at("count").get<long long>();
        if (count < 1) throw ConfigError("model.E_grid.count must be >= 1");
        if (count == 1) {
            cfg.energies = {lo};
        } else {
            for (long long i = 0; i < count; ++i)
                cfg.energies.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                                static_cast<double>(count - 1));
        }
    } else {
        throw ConfigError("model.E or model.E_grid is required");
    }
    cfg.model.energy = cfg.energies.front();

    if (!model.contains("v")) throw ConfigError("model.v is required");
    if (!model.contains("w")) throw ConfigError("model.w is required");
    cfg.model.v = parse_function_spec(model.at("v"), "model.v");
    AnalyticTorusFunction w_base = parse_function_spec(model.at("w"), "model.w");
    try {
        cfg.model.w = weight_zero_analysis(w_base);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model.w: ") + e.what());
    }

    if (!model.contains("omega") || !model.at("omega").is_array() ||
        model.at("omega").size() != 2)
        throw ConfigError("model.omega must be [w1, w2]");
    cfg.model.omega.w1 = require_number(model.at("omega")[0], "model.omega[0]");
    cfg.model.omega.w2 = require_number(model.at("omega")[1], "model.omega[1]");
    if (cfg.model.omega.w1 <= 0.0 || cfg.model.omega.w1 >= 1.0)
        throw ConfigError("model.omega[0] must lie in (0,1)");
    if (cfg.model.omega.w2 <= 0.0 || cfg.model.omega.w2 >= 1.0)
        throw ConfigError("model.omega[1] must lie in (0,1)");
    if (model.contains("dc")) {
        const json& dc = model.at("dc");
        cfg.model.omega.dc_constant = number_or(dc, "constant", "model.dc.", 1e-3);
        cfg.model.omega.dc_exponent = number_or(dc, "exponent", "model.dc.", 3.0);
        if (cfg.model.omega.dc_exponent < 3.0)
            throw ConfigError("model.dc.exponent must be >= 3");
    }

    if (model.contains("phase")) {
        if (!model.at("phase").is_array() || model.at("phase").size() != 2)
            throw ConfigError("model.phase must be [x, y]");
        cfg.model.phase = Phase(require_number(model.at("phase")[0], "model.phase[0]"),
                                require_number(model.at("phase")[1], "model.phase[1]"));
    }
    if (model.contains("phase_sampler")) {
        const json& ps = model.at("phase_sampler");
        std::string type = ps.contains("type") ? ps.at("type").get<std::string>() : "grid";
        if (type == "grid") {
            int res = ps.contains("resolution") ? ps.at("resolution").get<int>() : 64;
            if (res < 2) throw ConfigError("model.phase_sampler.resolution must be >= 2");
            cfg.sampler = PhaseSampler::grid(res);
        } else if (type == "mc") {
            std::size_t samples =
                ps.contains("samples") ? ps.at("samples").get<std::size_t>() : 1000;
            std::uint64_t seed = ps.contains("seed") ? ps.at("seed").get<std::uint64_t>() : 0;
            cfg.sampler = PhaseSampler::monte_carlo(samples, seed);
        } else {
            throw ConfigError("model.phase_sampler.type must be grid or mc");
        }
        cfg.sampler_given = true;
    }

    if (doc.contains("run")) {
        const json& run = doc.at("run");
        if (run.contains("N")) {
            if (!run.at("N").is_number_integer() || run.at("N").get<int>() < 0)
                throw ConfigError("run.N must be a non-negative integer");
            cfg.scale = run.at("N").get<int>();
        }
        if (run.contains("scales")) {
            if (!run.at("scales").is_array() || run.at("scales").empty())
                throw ConfigError("run.scales must be a non-empty array");
            for (const auto& s : run.at("scales")) {
                if (!s.is_number_integer() || s.get<int>() < 2)
                    throw ConfigError("run.scales entries must be integers >= 2");
                cfg.scales.push_back(s.get<int>());
            }
        }
        if (run.contains("exponents")) {
            const json& e = run.at("exponents");
            cfg.exponents.kappa = number_or(e, "kappa", "run.exponents.", cfg.exponents.kappa);
            cfg.exponents.b = number_or(e, "b", "run.exponents.", cfg.exponents.b);
            cfg.exponents.delta = number_or(e, "delta", "run.exponents.", cfg.exponents.delta);
            cfg.exponents.gamma = number_or(e, "gamma", "run.exponents.", cfg.exponents.gamma);
        }
        if (run.contains("seed")) cfg.seed = run.at("seed").get<std::uint64_t>();
        if (run.contains("workers")) cfg.workers = run.at("workers").get<int>();
        if (run.contains("steps")) {
            cfg.lyapunov_steps = run.at("steps").get<long long>();
            if (cfg.lyapunov_steps < 1000) throw ConfigError("run.steps must be >= 1000");
        }
        if (run.contains("floor")) {
            cfg.weight_floor = require_number(run.at("floor"), "run.floor");
            if (!(cfg.weight_floor > 0.0)) throw ConfigError("run.floor must be positive");
        }
        if (run.contains("budget")) cfg.work_budget = run.at("budget").get<long long>();
    }

    if (doc.contains("output")) {
        const json& output = doc.at("output");
        if (output.contains("dir")) cfg.output_dir = output.at("dir").get<std::string>();
        if (output.contains("formats")) {
            cfg.write_csv = false;
            cfg.write_json = false;
            for (const auto& f : output.at("formats")) {
                std::string name = f.get<std::string>();
                if (name == "csv")
                    cfg.write_csv = true;
                else if (name == "json")
                    cfg.write_json = true;
                else
                    throw ConfigError("output.formats entries must be csv or json");
            }
        }
    }

    // Canonical resolved echo: every default pinned.
    nlohmann::ordered_json resolved;
    resolved["model"]["lambda"] = cfg.model.coupling;
    resolved["model"]["energies"] = cfg.energies;
    resolved["model"]["v"] = model.at("v");
    resolved["model"]["w"] = model.at("w");
    resolved["model"]["omega"] = {cfg.model.omega.w1, cfg.model.omega.w2};
    resolved["model"]["dc"] = {{"constant", cfg.model.omega.dc_constant},
                               {"exponent", cfg.model.omega.dc_exponent}};
    resolved["model"]["phase"] = {cfg.model.phase.x, cfg.model.phase.y};
    resolved["model"]["phase_sampler"] = {
        {"type", cfg.sampler.kind == PhaseSampler::Kind::Grid ? "grid" : "mc"},
        {"resolution", cfg.sampler.resolution},
        {"samples", cfg.sampler.samples},
        {"seed", cfg.sampler.seed}};
    resolved["run"]["N"] = cfg.scale;
    resolved["run"]["scales"] = cfg.scales;
    resolved["run"]["exponents"] = {{"kappa", cfg.exponents.kappa},
                                    {"b", cfg.exponents.b},
                                    {"delta", cfg.exponents.delta},
                                    {"gamma", cfg.exponents.gamma},
                                    {"prefactor", cfg.exponents.prefactor}};
    resolved["run"]["seed"] = cfg.seed;
    resolved["run"]["workers"] = cfg.workers;
    resolved["run"]["steps"] = cfg.lyapunov_steps;
    resolved["run"]["floor"] = cfg.weight_floor;
    resolved["run"]["budget"] = cfg.work_budget;
    resolved["output"]["dir"] = cfg.output_dir;
    resolved["output"]["csv"] = cfg.write_csv;
    resolved["output"]["json"] = cfg.write_json;
    cfg.resolved = std::move(resolved);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

}  // namespace qplocal
