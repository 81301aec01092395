#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace takagi {

struct MetricRow {
    std::string name;
    long N = -1; // -1 when the metric is not indexed by N
    double value = 0.0;
};

struct VerificationReport {
    std::string test;
    std::string seq;
    std::vector<long> N_values;
    long samples = 0;
    std::uint64_t seed = 0;
    long bits = 0;
    std::vector<MetricRow> metrics;
    std::vector<std::string> notes;
    bool pass = false;
};

// Everything the CLI can set; embedded verbatim in every report so a run
// is reproducible from its own output.
struct RunConfig {
    std::string subcommand;
    std::string seq;
    std::vector<long> N_values;
    long samples = 100000;
    std::uint64_t seed = 1;
    long bits = 0; // 0 = sized automatically from seq and N
    double tol = 1e-9;
    long grid = 1024;
    double r = 0.25;
    double K = 1.0;
    double beta = 0.5;
    double ks_threshold = 0.02;
    double ks_floor = 0.05;
    double rel_tol = 0.10;
    double cdf_tol = 0.01;
    double cesaro_tol = 0.05;
    double epsilon = 0.5;
    double grid_ratio = 1.1;
    double max_exceed = 0.05;
    double min_decay = 0.90;
    long cesaro_N = 10000;
    long cesaro_paths = 10;
    bool negative_control = false;
    std::string format = "json"; // "json" or "csv"
    std::string out;
    bool no_timestamp = false;
};

std::string run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const std::string& text); // ParseError on bad input

// JSON schema: {test, seq, params:{N_values, samples, seed, bits},
// config:{...}, metrics:[{name, N?, value}], notes:[...],
// verdict:"pass"|"fail", timestamp?}.  Field order is fixed, numbers are
// emitted deterministically, so identical runs give identical bytes.
std::string report_to_json(const VerificationReport& rep, const RunConfig& cfg,
                           bool with_timestamp);

// One row per metric: test,seq,N,metric,value with 17-significant-digit
// scientific values and '.' decimal separator.
std::string report_to_csv(const VerificationReport& rep);

void write_text_file(const std::string& path, const std::string& content);

} // namespace takagi
