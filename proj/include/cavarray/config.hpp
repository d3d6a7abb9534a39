#pragma once

#include <string>

#include <json.hpp>

#include "cavarray/montecarlo.hpp"

namespace cavarray {

struct OutputSpec {
    std::string path;            // empty: derived from the command name
    std::string format = "csv";  // csv | json
};

/// Fully resolved run configuration. Loading merges the user document over
/// compiled-in defaults and validates units and ranges; the resolved form
/// is embedded in every output file for reproducibility.
struct RunConfig {
    CavityParams cavity;
    DriveParams drive;
    ArrayGeometry array;
    LevelScheme scheme = LevelScheme::rb87_d2();
    McConfig mc;
    nlohmann::json sweep = nlohmann::json::object();  // command-specific grids
    OutputSpec output;

    void validate() const;
    nlohmann::json resolved_json() const;

    static RunConfig defaults();
    static RunConfig from_json(const nlohmann::json& doc);
    static RunConfig from_file(const std::string& path);
};

/// Spacing values may be numeric (nm) or a string multiple of the
/// wavelength such as "5.5λ", "5.5lambda" or "5.5 lambda".
double resolve_spacing(const nlohmann::json& value, double lambda_nm);

}  // namespace cavarray
