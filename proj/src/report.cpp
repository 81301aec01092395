#include "takagi/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "json.hpp"
#include "takagi/errors.hpp"

namespace takagi {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["subcommand"] = c.subcommand;
    j["seq"] = c.seq;
    j["N_values"] = c.N_values;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["bits"] = c.bits;
    j["tol"] = c.tol;
    j["grid"] = c.grid;
    j["r"] = c.r;
    j["K"] = c.K;
    j["beta"] = c.beta;
    j["ks_threshold"] = c.ks_threshold;
    j["ks_floor"] = c.ks_floor;
    j["rel_tol"] = c.rel_tol;
    j["cdf_tol"] = c.cdf_tol;
    j["cesaro_tol"] = c.cesaro_tol;
    j["epsilon"] = c.epsilon;
    j["grid_ratio"] = c.grid_ratio;
    j["max_exceed"] = c.max_exceed;
    j["min_decay"] = c.min_decay;
    j["cesaro_N"] = c.cesaro_N;
    j["cesaro_paths"] = c.cesaro_paths;
    j["negative_control"] = c.negative_control;
    j["format"] = c.format;
    j["out"] = c.out;
    j["no_timestamp"] = c.no_timestamp;
    return j;
}

} // namespace

std::string run_config_to_json(const RunConfig& cfg) {
    return config_json(cfg).dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    RunConfig c;
    try {
        auto get = [&j](const char* key, auto& field) {
            if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        get("subcommand", c.subcommand);
        get("seq", c.seq);
        get("N_values", c.N_values);
        get("samples", c.samples);
        get("seed", c.seed);
        get("bits", c.bits);
        get("tol", c.tol);
        get("grid", c.grid);
        get("r", c.r);
        get("K", c.K);
        get("beta", c.beta);
        get("ks_threshold", c.ks_threshold);
        get("ks_floor", c.ks_floor);
        get("rel_tol", c.rel_tol);
        get("cdf_tol", c.cdf_tol);
        get("cesaro_tol", c.cesaro_tol);
        get("epsilon", c.epsilon);
        get("grid_ratio", c.grid_ratio);
        get("max_exceed", c.max_exceed);
        get("min_decay", c.min_decay);
        get("cesaro_N", c.cesaro_N);
        get("cesaro_paths", c.cesaro_paths);
        get("negative_control", c.negative_control);
        get("format", c.format);
        get("out", c.out);
        get("no_timestamp", c.no_timestamp);
    } catch (const std::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return c;
}

std::string report_to_json(const VerificationReport& rep, const RunConfig& cfg,
                           bool with_timestamp) {
    ordered_json j;
    j["test"] = rep.test;
    j["seq"] = rep.seq;
    ordered_json params;
    params["N_values"] = rep.N_values;
    params["samples"] = rep.samples;
    params["seed"] = rep.seed;
    params["bits"] = rep.bits;
    j["params"] = params;
    j["config"] = config_json(cfg);
    ordered_json metrics = ordered_json::array();
    for (const auto& m : rep.metrics) {
        ordered_json row;
        row["name"] = m.name;
        if (m.N >= 0) row["N"] = m.N;
        row["value"] = m.value;
        metrics.push_back(row);
    }
    j["metrics"] = metrics;
    j["notes"] = rep.notes;
    j["verdict"] = rep.pass ? "pass" : "fail";
    if (with_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["timestamp"] = buf;
    }
    return j.dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& rep) {
    std::string out = "test,seq,N,metric,value\n";
    for (const auto& m : rep.metrics) {
        out += rep.test;
        out += ',';
        out += csv_quote(rep.seq);
        out += ',';
        if (m.N >= 0) out += std::to_string(m.N);
        out += ',';
        out += m.name;
        out += ',';
        out += fmt17(m.value);
        out += '\n';
    }
    out += rep.test + "," + csv_quote(rep.seq) + ",,verdict," +
           (rep.pass ? "1" : "0") + "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << content;
    if (!f) throw Error("failed writing output file: " + path);
}

} // namespace takagi
