#pragma once

#include <optional>
#include <string>

#include "cavarray/config.hpp"

namespace cavarray::cli {

struct CliOptions {
    std::string config_path;  // empty: CAVARRAY_CONFIG env var, then defaults
    std::optional<std::uint64_t> seed;
    std::optional<long> samples;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<std::string> model;  // "two-level" | "multilevel"
    int threads = 1;
};

RunConfig load_config(const CliOptions& opts);
ScatterModel resolve_model(const CliOptions& opts);

int cmd_two_atom_fringe(const RunConfig& cfg, const CliOptions& opts);
int cmd_offset_sweep(const RunConfig& cfg, const CliOptions& opts);
int cmd_scaling(const RunConfig& cfg, const CliOptions& opts);
int cmd_polarization(const RunConfig& cfg, const CliOptions& opts);
int cmd_spectrum(const RunConfig& cfg, const CliOptions& opts);
int cmd_magic(const RunConfig& cfg, const CliOptions& opts);

}  // namespace cavarray::cli
