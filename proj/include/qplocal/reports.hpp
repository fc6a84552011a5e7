#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qplocal/greens.hpp"
#include "qplocal/msa.hpp"
#include "qplocal/spectrum.hpp"

namespace qplocal {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; the same bytes for the same double.
std::string format_double(double value);

Json to_json(const GoodnessVerdict& v);
Json to_json(const DecayFit& f);
Json to_json(const BadSetReport& r);
Json to_json(const ScaleReport& r);
Json to_json(const LyapunovEstimate& e);
Json to_json(const OrbitHitReport& r);

/// Summary form: eigenvalues plus per-vector diagnostics, no vector entries.
Json eigen_report_json(const EigenReport& r);

/// CSV bodies.  Comma separated, one '#'-prefixed header line, LF endings
/// (gnuplot-friendly; see docs/csv_schema.md).
std::string greens_entries_csv(const GreensMatrix& g);
std::string bad_cells_csv(const BadSetReport& r);
std::string eigen_decay_csv(const EigenReport& r);
std::string lyapunov_csv(const std::vector<LyapunovEstimate>& sweep);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Parses a bad-cell CSV body back into cells (inverse of bad_cells_csv).
std::vector<BadCell> parse_bad_cells_csv(const std::string& text);

/// FNV-1a over the canonical config dump.
std::uint64_t config_hash(const Json& resolved_config);

struct RunManifest {
    std::uint64_t hash = 0;
    std::string tool_version;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, double>> stage_seconds;
    std::vector<std::string> outputs;

    Json to_json() const;
};

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qplocal
