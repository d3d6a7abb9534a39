#include "cavarray/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cavarray/errors.hpp"

namespace cavarray {

namespace {

using nlohmann::json;

void expect_object(const json& j, const char* name) {
    if (!j.is_object()) {
        throw ConfigError(std::string("config section '") + name + "' must be an object");
    }
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw ConfigError(std::string("config field '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

MfDistribution parse_mf(const json& value, int ground_f) {
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (s == "uniform") return MfDistribution::uniform();
        throw ConfigError("mc.mF: unknown distribution '" + s + "'");
    }
    if (value.is_number_integer()) {
        return MfDistribution::fixed(value.get<int>());
    }
    if (value.is_array()) {
        std::vector<double> w;
        for (const auto& item : value) {
            if (!item.is_number()) throw ConfigError("mc.mF: weights must be numbers");
            w.push_back(item.get<double>());
        }
        auto dist = MfDistribution::custom(std::move(w));
        dist.validate(ground_f);
        // Normalize stored weights.
        double total = 0.0;
        for (double x : dist.weights) total += x;
        for (double& x : dist.weights) x /= total;
        return dist;
    }
    throw ConfigError("mc.mF must be \"uniform\", an integer m, or an array of weights");
}

json mf_to_json(const MfDistribution& mf) {
    switch (mf.kind) {
        case MfDistribution::Kind::Uniform:
            return "uniform";
        case MfDistribution::Kind::Fixed:
            return mf.fixed_m;
        case MfDistribution::Kind::Weights:
            return mf.weights;
    }
    return nullptr;
}

}  // namespace

double resolve_spacing(const nlohmann::json& value, double lambda_nm) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        std::string s = value.get<std::string>();
        // Accept "<multiple>λ", "<multiple>lambda" (optional space).
        size_t pos = s.find("λ");
        size_t len = std::string("λ").size();
        if (pos == std::string::npos) {
            pos = s.find("lambda");
            len = 6;
        }
        if (pos == std::string::npos || pos + len != s.size()) {
            throw ConfigError("array.spacing: expected a number (nm) or '<x>λ', got '" + s + "'");
        }
        std::string head = s.substr(0, pos);
        while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) {
            head.pop_back();
        }
        try {
            size_t used = 0;
            const double multiple = std::stod(head, &used);
            if (used != head.size()) throw std::invalid_argument(head);
            return multiple * lambda_nm;
        } catch (const std::exception&) {
            throw ConfigError("array.spacing: cannot parse multiple '" + head + "'");
        }
    }
    throw ConfigError("array.spacing must be a number (nm) or a wavelength-multiple string");
}

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.array.n_atoms = 1;
    cfg.array.spacing_nm = 5.0 * cfg.cavity.lambda_nm;
    return cfg;
}

RunConfig RunConfig::from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    RunConfig cfg = defaults();

    if (doc.contains("cavity")) {
        const auto& j = doc.at("cavity");
        expect_object(j, "cavity");
        cfg.cavity.g0_mhz = get_number(j, "g0_MHz", cfg.cavity.g0_mhz);
        cfg.cavity.kappa_mhz = get_number(j, "kappa_MHz", cfg.cavity.kappa_mhz);
        cfg.cavity.lambda_nm = get_number(j, "lambda_nm", cfg.cavity.lambda_nm);
        cfg.cavity.delta_ca_mhz = get_number(j, "delta_ca_MHz", cfg.cavity.delta_ca_mhz);
    }
    if (doc.contains("drive")) {
        const auto& j = doc.at("drive");
        expect_object(j, "drive");
        cfg.drive.omega0_mhz = get_number(j, "omega0_MHz", cfg.drive.omega0_mhz);
        cfg.drive.delta_pc_mhz = get_number(j, "delta_pc_MHz", cfg.drive.delta_pc_mhz);
    }
    if (doc.contains("array")) {
        const auto& j = doc.at("array");
        expect_object(j, "array");
        if (j.contains("n_atoms")) {
            if (!j.at("n_atoms").is_number_integer()) {
                throw ConfigError("array.n_atoms must be an integer");
            }
            cfg.array.n_atoms = j.at("n_atoms").get<int>();
        }
        if (j.contains("spacing")) {
            cfg.array.spacing_nm = resolve_spacing(j.at("spacing"), cfg.cavity.lambda_nm);
        } else if (j.contains("spacing_nm")) {
            cfg.array.spacing_nm = get_number(j, "spacing_nm", cfg.array.spacing_nm);
        }
        cfg.array.offset_nm = get_number(j, "offset_nm", cfg.array.offset_nm);
        cfg.array.y_offset_nm = get_number(j, "y_offset_nm", cfg.array.y_offset_nm);
        cfg.array.sigma_nm = get_number(j, "sigma_nm", cfg.array.sigma_nm);
    }
    if (doc.contains("scheme")) {
        cfg.scheme = scheme_from_json(doc.at("scheme").dump());
    }
    if (doc.contains("mc")) {
        const auto& j = doc.at("mc");
        expect_object(j, "mc");
        if (j.contains("n_samples")) {
            if (!j.at("n_samples").is_number_integer()) {
                throw ConfigError("mc.n_samples must be an integer");
            }
            cfg.mc.n_samples = j.at("n_samples").get<long>();
        }
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_integer()) throw ConfigError("mc.seed must be an integer");
            cfg.mc.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("mF")) cfg.mc.mf = parse_mf(j.at("mF"), cfg.scheme.ground_f);
    }
    if (doc.contains("sweep")) {
        expect_object(doc.at("sweep"), "sweep");
        cfg.sweep = doc.at("sweep");
    }
    if (doc.contains("output")) {
        const auto& j = doc.at("output");
        expect_object(j, "output");
        if (j.contains("path")) cfg.output.path = j.at("path").get<std::string>();
        if (j.contains("format")) cfg.output.format = j.at("format").get<std::string>();
    }

    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return from_json(doc);
}

void RunConfig::validate() const {
    cavity.validate();
    drive.validate();
    array.validate();
    scheme.validate();
    mc.validate(scheme.ground_f);
    if (output.format != "csv" && output.format != "json") {
        throw ConfigError("output.format must be 'csv' or 'json'");
    }
}

nlohmann::json RunConfig::resolved_json() const {
    json j;
    j["cavity"] = {{"g0_MHz", cavity.g0_mhz},
                   {"kappa_MHz", cavity.kappa_mhz},
                   {"lambda_nm", cavity.lambda_nm},
                   {"delta_ca_MHz", cavity.delta_ca_mhz}};
    j["drive"] = {{"omega0_MHz", drive.omega0_mhz}, {"delta_pc_MHz", drive.delta_pc_mhz}};
    j["array"] = {{"n_atoms", array.n_atoms},
                  {"spacing_nm", array.spacing_nm},
                  {"offset_nm", array.offset_nm},
                  {"y_offset_nm", array.y_offset_nm},
                  {"sigma_nm", array.sigma_nm}};
    j["scheme"] = json::parse(scheme_to_json(scheme));
    j["mc"] = {{"n_samples", mc.n_samples}, {"seed", mc.seed}, {"mF", mf_to_json(mc.mf)}};
    if (!sweep.empty()) j["sweep"] = sweep;
    // The destination path is runtime plumbing, not part of the run
    // identity; embedding it would break byte-identical reruns.
    j["output"] = {{"format", output.format}};
    return j;
}

}  // namespace cavarray
