#include "qplocal/reports.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qplocal {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

Json to_json(const GoodnessVerdict& v) {
    Json j;
    j["norm_ok"] = v.norm_ok;
    j["decay_ok"] = v.decay_ok;
    j["b"] = v.b;
    j["gamma"] = v.gamma;
    j["scale"] = v.scale;
    j["norm_value"] = v.norm_value;
    j["norm_threshold"] = v.norm_threshold;
    j["worst_ratio"] = v.worst_ratio;
    j["worst_pair"] = {v.worst_pair.first, v.worst_pair.second};
    return j;
}

Json to_json(const DecayFit& f) {
    Json j;
    j["rate"] = f.rate;
    j["prefactor"] = f.prefactor;
    j["residual"] = f.residual;
    j["pairs"] = f.pairs;
    j["clamped"] = f.clamped;
    j["cutoff"] = f.cutoff;
    j["reliable"] = f.reliable;
    return j;
}

namespace {

Json sampler_json(const PhaseSampler& s) {
    Json j;
    j["kind"] = s.kind == PhaseSampler::Kind::Grid ? "grid" : "mc";
    j["resolution"] = s.resolution;
    j["samples"] = s.samples;
    j["seed"] = s.seed;
    return j;
}

Json exponents_json(const MsaExponents& e) {
    Json j;
    j["kappa"] = e.kappa;
    j["b"] = e.b;
    j["delta"] = e.delta;
    j["gamma"] = e.gamma;
    j["prefactor"] = e.prefactor;
    return j;
}

}  // namespace

Json to_json(const BadSetReport& r) {
    Json j;
    j["scale"] = r.scale;
    j["energy"] = r.energy;
    j["sampler"] = sampler_json(r.sampler);
    j["samples"] = r.samples;
    j["bad_count"] = r.bad_count;
    j["bad_fraction"] = r.bad_fraction;
    j["std_error"] = r.std_error;
    j["threshold"] = r.threshold;
    j["exponents"] = exponents_json(r.exponents);
    return j;
}

Json to_json(const ScaleReport& r) {
    Json j;
    j["scale"] = r.scale;
    j["previous_scale"] = r.previous_scale;
    j["sub_scale"] = r.sub_scale;
    j["phases"] = r.phases;
    j["bad_count"] = r.bad_count;
    j["bad_fraction"] = r.bad_fraction;
    j["std_error"] = r.std_error;
    j["threshold"] = r.threshold;
    j["disjoint_budget"] = r.disjoint_budget;
    j["budget_exceeded"] = r.budget_exceeded;
    j["covering_failures"] = r.covering_failures;
    j["paste_failures"] = r.paste_failures;
    j["singular_windows"] = r.singular_windows;
    j["within_threshold"] = r.within_threshold;
    j["work_budget_exhausted"] = r.work_budget_exhausted;
    return j;
}

Json to_json(const LyapunovEstimate& e) {
    Json j;
    j["energy"] = e.energy;
    j["gamma"] = e.gamma;
    j["steps"] = e.steps;
    j["phase"] = {e.phase.x, e.phase.y};
    j["renormalizations"] = e.renormalizations;
    return j;
}

Json to_json(const OrbitHitReport& r) {
    Json j;
    j["start"] = {r.start.x, r.start.y};
    j["length"] = r.length;
    j["hits"] = r.hits;
    j["bound"] = r.bound;
    j["longest_clear_run"] = r.longest_clear_run;
    j["delta"] = r.delta;
    return j;
}

Json eigen_report_json(const EigenReport& r) {
    Json j;
    j["interval"] = {r.interval.a, r.interval.b};
    j["count"] = r.eigenvalues.size();
    j["max_residual"] = r.max_residual;
    j["orthonormality_error"] = r.orthonormality_error;
    j["pencil_fallback"] = r.pencil_fallback;
    j["floored_sites"] = r.floored_sites;
    j["eigenvalues"] = r.eigenvalues;
    j["ipr"] = r.ipr_values;
    j["centers"] = r.centers;
    Json rates = Json::array();
    for (std::size_t i = 0; i < r.decay_fits.size(); ++i)
        rates.push_back(r.fit_ok[i] ? Json(r.decay_fits[i].rate) : Json());
    j["decay_rates"] = rates;
    return j;
}

std::string greens_entries_csv(const GreensMatrix& g) {
    std::string out = "# m,n,value\n";
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out += std::to_string(g.interval.site(i));
            out += ',';
            out += std::to_string(g.interval.site(j));
            out += ',';
            out += format_double(g.entries[i][j]);
            out += '\n';
        }
    return out;
}

std::string bad_cells_csv(const BadSetReport& r) {
    std::string out = "# x,y,N,E,reason\n";
    for (const auto& cell : r.bad_cells) {
        out += format_double(cell.x);
        out += ',';
        out += format_double(cell.y);
        out += ',';
        out += std::to_string(r.scale);
        out += ',';
        out += format_double(r.energy);
        out += ',';
        out += to_string(cell.reason);
        out += '\n';
    }
    return out;
}

std::string eigen_decay_csv(const EigenReport& r) {
    std::string out = "# index,eigenvalue,center,ipr,rate,prefactor,residual,reliable\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(r.eigenvalues[i]);
        out += ',';
        out += std::to_string(r.centers[i]);
        out += ',';
        out += format_double(r.ipr_values[i]);
        out += ',';
        if (r.fit_ok[i]) {
            out += format_double(r.decay_fits[i].rate);
            out += ',';
            out += format_double(r.decay_fits[i].prefactor);
            out += ',';
            out += format_double(r.decay_fits[i].residual);
            out += ',';
            out += r.decay_fits[i].reliable ? "1" : "0";
        } else {
            out += ",,,0";
        }
        out += '\n';
    }
    return out;
}

std::string lyapunov_csv(const std::vector<LyapunovEstimate>& sweep) {
    std::string out = "# E,gamma,steps,renormalizations\n";
    for (const auto& e : sweep) {
        out += format_double(e.energy);
        out += ',';
        out += format_double(e.gamma);
        out += ',';
        out += std::to_string(e.steps);
        out += ',';
        out += std::to_string(e.renormalizations);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::vector<BadCell> parse_bad_cells_csv(const std::string& text) {
    std::vector<BadCell> cells;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty() || line[0] == '#') continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 5) throw std::runtime_error("bad-cell CSV row has " +
                                                         std::to_string(fields.size()) +
                                                         " fields, expected 5");
        BadCell cell;
        cell.x = std::stod(fields[0]);
        cell.y = std::stod(fields[1]);
        if (fields[4] == "singular")
            cell.reason = PhaseClass::Singular;
        else if (fields[4] == "norm")
            cell.reason = PhaseClass::NormFailure;
        else if (fields[4] == "decay")
            cell.reason = PhaseClass::DecayFailure;
        else
            throw std::runtime_error("unknown bad-cell reason " + fields[4]);
        cells.push_back(cell);
    }
    return cells;
}

std::uint64_t config_hash(const Json& resolved_config) {
    std::string text = resolved_config.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Json RunManifest::to_json() const {
    Json j;
    j["config_hash"] = hash;
    j["tool_version"] = tool_version;
    j["wall_seconds"] = wall_seconds;
    Json stages = Json::array();
    for (const auto& [name, seconds] : stage_seconds)
        stages.push_back({{"stage", name}, {"seconds", seconds}});
    j["stages"] = stages;
    j["outputs"] = outputs;
    return j;
}

}  // namespace qplocal
