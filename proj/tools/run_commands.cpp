#include "run_commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <vector>

#include "cavarray/errors.hpp"
#include "cavarray/polarization.hpp"
#include "cavarray/spectra.hpp"
#include "cavarray/steadystate.hpp"
#include "cavarray/version.hpp"

namespace cavarray::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> comments;  // emitted as '# ...' lines in CSV
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json provenance;
    json config;
};

void write_table(const Table& table, const std::string& path, const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    if (format == "json") {
        json doc;
        doc["config"] = table.config;
        doc["data"] = {{"columns", table.columns}, {"rows", table.rows}};
        doc["provenance"] = table.provenance;
        out << doc.dump(2) << "\n";
    } else {
        out << "# config: " << table.config.dump() << "\n";
        out << "# provenance: " << table.provenance.dump() << "\n";
        for (const auto& line : table.comments) out << "# " << line << "\n";
        for (size_t i = 0; i < table.columns.size(); ++i) {
            out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
        }
        out << "\n";
        for (const auto& row : table.rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                out << fmt(row[i]) << (i + 1 < row.size() ? "," : "");
            }
            out << "\n";
        }
    }
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

json base_provenance(const RunConfig& cfg, const char* command) {
    return {{"tool", "cavarray"},
            {"version", kVersion},
            {"command", command},
            {"seed", cfg.mc.seed},
            {"n_samples", cfg.mc.n_samples}};
}

std::string output_path(const RunConfig& cfg, const CliOptions& opts, const char* command) {
    if (opts.output) return *opts.output;
    if (!cfg.output.path.empty()) return cfg.output.path;
    return std::string(command) + (cfg.output.format == "json" ? ".json" : ".csv");
}

std::string output_format(const RunConfig& cfg, const CliOptions& opts) {
    const std::string f = opts.format.value_or(cfg.output.format);
    if (f != "csv" && f != "json") throw ConfigError("output format must be 'csv' or 'json'");
    return f;
}

double sweep_number(const json& sweep, const char* key, double fallback) {
    if (!sweep.contains(key)) return fallback;
    if (!sweep.at(key).is_number()) {
        throw ConfigError(std::string("sweep.") + key + " must be a number");
    }
    return sweep.at(key).get<double>();
}

// Gaussian-averaged two-atom fringe: atom 1 centered on the antinode, atom 2
// at nominal separation d; n2/n1 from the analytic position moments.
double fringe_overlay(double d_nm, double sigma_nm, const CavityParams& cav) {
    const double k = cav.wavenumber();
    const double cy1 = mean_cos(k, 0.0, sigma_nm);
    const double cy2 = mean_cos_sq(k, 0.0, sigma_nm);
    const double mean1 = mean_cos(k, 0.0, sigma_nm) * cy1;
    const double mean2 = mean_cos(k, d_nm, sigma_nm) * cy1;
    const double sq1 = mean_cos_sq(k, 0.0, sigma_nm) * cy2;
    const double sq2 = mean_cos_sq(k, d_nm, sigma_nm) * cy2;
    return (sq1 + sq2 + 2.0 * mean1 * mean2) / sq1;
}

// Least-squares cosine fit with the period fixed to lambda/2:
// y = a0 + ac cos(2kx) + as sin(2kx). Returns {a0, ac, as, rms residual}.
std::array<double, 4> cosine_fit(const std::vector<double>& x_nm, const std::vector<double>& y,
                                 double k) {
    double m[3][3] = {};
    double b[3] = {};
    for (size_t i = 0; i < x_nm.size(); ++i) {
        const double basis[3] = {1.0, std::cos(2.0 * k * x_nm[i]), std::sin(2.0 * k * x_nm[i])};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
            b[r] += basis[r] * y[i];
        }
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col || std::abs(m[col][col]) < 1e-300) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = 0; c < 3; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, 4> out{};
    for (int i = 0; i < 3; ++i) out[i] = (std::abs(m[i][i]) > 0) ? b[i] / m[i][i] : 0.0;
    double ss = 0.0;
    for (size_t i = 0; i < x_nm.size(); ++i) {
        const double f =
            out[0] + out[1] * std::cos(2.0 * k * x_nm[i]) + out[2] * std::sin(2.0 * k * x_nm[i]);
        ss += (y[i] - f) * (y[i] - f);
    }
    out[3] = std::sqrt(ss / x_nm.size());
    return out;
}

}  // namespace

RunConfig load_config(const CliOptions& opts) {
    RunConfig cfg;
    std::string path = opts.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("CAVARRAY_CONFIG")) path = env;
    }
    cfg = path.empty() ? RunConfig::defaults() : RunConfig::from_file(path);
    if (opts.seed) cfg.mc.seed = *opts.seed;
    if (opts.samples) cfg.mc.n_samples = *opts.samples;
    if (opts.output) cfg.output.path = *opts.output;
    if (opts.format) cfg.output.format = *opts.format;
    cfg.validate();
    // Validity warnings only; the run proceeds either way.
    if (!dispersive_regime(cfg.cavity, cfg.drive, cfg.scheme.gamma_mhz)) {
        std::cerr << "warning: |delta_ca| below 10x max(Omega0, g0, gamma); "
                     "the dispersive treatment is marginal\n";
    }
    if (!low_saturation(cfg.drive, cfg.cavity, cfg.scheme.gamma_mhz)) {
        std::cerr << "warning: drive saturates the transition; "
                     "linear response does not apply\n";
    }
    return cfg;
}

ScatterModel resolve_model(const CliOptions& opts) {
    const std::string m = opts.model.value_or("multilevel");
    if (m == "two-level") return ScatterModel::TwoLevel;
    if (m == "multilevel") return ScatterModel::Multilevel;
    throw ConfigError("model must be 'two-level' or 'multilevel'");
}

int cmd_two_atom_fringe(const RunConfig& cfg, const CliOptions& opts) {
    const double lambda = cfg.cavity.lambda_nm;
    const double d_min = sweep_number(cfg.sweep, "d_min_lambda", 1.0);
    const double d_max = sweep_number(cfg.sweep, "d_max_lambda", 2.0);
    const int points = static_cast<int>(sweep_number(cfg.sweep, "d_points", 41));
    if (points < 2 || d_max <= d_min) throw ConfigError("fringe: bad d grid");
    const ScatterModel model = resolve_model(opts);

    // Single-atom antinode reference under the same model and mF settings.
    ArrayGeometry reference = cfg.array;
    reference.n_atoms = 1;
    reference.offset_nm = 0.0;
    reference.spacing_nm = lambda;
    const McEstimate n1 = mc_photon_number(reference, cfg.cavity, cfg.drive, cfg.scheme,
                                           cfg.mc, model, CavityModification::Neglect,
                                           opts.threads);

    Table table;
    table.config = cfg.resolved_json();
    table.provenance = base_provenance(cfg, "two-atom-fringe");
    table.provenance["n1_mc"] = n1.mean;
    table.provenance["n1_analytic_two_level"] =
        analytic_constructive(1, reference, cfg.cavity, cfg.drive);
    table.columns = {"d_nm", "d_lambda", "ratio", "ratio_stderr", "overlay_sigma0",
                     "overlay_gaussian"};
    for (int i = 0; i < points; ++i) {
        const double dl = d_min + (d_max - d_min) * i / (points - 1);
        const double d = dl * lambda;
        ArrayGeometry pair = cfg.array;
        pair.n_atoms = 2;
        pair.spacing_nm = d;
        pair.offset_nm = 0.0;
        const McEstimate n2 =
            mc_photon_number(pair, cfg.cavity, cfg.drive, cfg.scheme, cfg.mc, model,
                             CavityModification::Neglect, opts.threads);
        const double ratio = n2.mean / n1.mean;
        const double err = std::sqrt(std::pow(n2.std_error / n1.mean, 2) +
                                     std::pow(ratio * n1.std_error / n1.mean, 2));
        const double kd = cfg.cavity.wavenumber() * d;
        const double sigma0 = std::pow(1.0 + std::cos(kd), 2);
        table.rows.push_back({d, dl, ratio, err, sigma0,
                              fringe_overlay(d, cfg.array.sigma_nm, cfg.cavity)});
    }
    write_table(table, output_path(cfg, opts, "two-atom-fringe"), output_format(cfg, opts));
    return 0;
}

int cmd_offset_sweep(const RunConfig& cfg, const CliOptions& opts) {
    const double lambda = cfg.cavity.lambda_nm;
    const double x_min = sweep_number(cfg.sweep, "offset_min_lambda", 0.0);
    const double x_max = sweep_number(cfg.sweep, "offset_max_lambda", 0.75);
    const int points = static_cast<int>(sweep_number(cfg.sweep, "offset_points", 31));
    if (points < 4 || x_max <= x_min) throw ConfigError("offset-sweep: bad offset grid");
    std::vector<int> n_list = {1, 2, 3};
    if (cfg.sweep.contains("n_list")) {
        try {
            n_list = cfg.sweep.at("n_list").get<std::vector<int>>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError("sweep.n_list must be an array of atom numbers");
        }
    }
    const ScatterModel model = resolve_model(opts);

    ArrayGeometry reference = cfg.array;
    reference.n_atoms = 1;
    reference.offset_nm = 0.0;
    reference.spacing_nm = lambda;
    const McEstimate n1_est = mc_photon_number(reference, cfg.cavity, cfg.drive, cfg.scheme,
                                               cfg.mc, model, CavityModification::Neglect,
                                               opts.threads);
    const double n1 = n1_est.mean;

    Table table;
    table.config = cfg.resolved_json();
    table.provenance = base_provenance(cfg, "offset-sweep");
    table.provenance["n1_mc"] = n1;
    table.columns = {"spacing_lambda", "n_atoms", "offset_nm",
                     "ratio",          "ratio_stderr", "overlay_gaussian"};
    json fits = json::array();
    const double k = cfg.cavity.wavenumber();
    const double sigma = cfg.array.sigma_nm;

    // Two-level Gaussian-moment overlay, normalized to the antinode n1:
    // displaced arrays keep a common |eta| profile; integer spacing adds
    // coherently (N^2), half-integer pairwise cancels (parity term).
    const auto overlay = [&](double spacing_l, int n, double dx) {
        const double m1 = mean_cos(k, dx, sigma) * mean_cos(k, 0.0, sigma);
        const double m2 = mean_cos_sq(k, dx, sigma) * mean_cos_sq(k, 0.0, sigma);
        const bool integer_spacing = std::abs(std::remainder(spacing_l, 1.0)) < 1e-9;
        const double coherent =
            integer_spacing ? static_cast<double>(n) * n : (n % 2 == 0 ? 0.0 : 1.0);
        const double ref = mean_cos_sq(k, 0.0, sigma) * mean_cos_sq(k, 0.0, sigma);
        return (n * (m2 - m1 * m1) + coherent * m1 * m1) / (n * ref);
    };

    for (double spacing_lambda : {4.0, 3.5}) {
        for (int n : n_list) {
            std::vector<double> xs, ys;
            for (int i = 0; i < points; ++i) {
                const double xl = x_min + (x_max - x_min) * i / (points - 1);
                ArrayGeometry geom = cfg.array;
                geom.n_atoms = n;
                geom.spacing_nm = spacing_lambda * lambda;
                geom.offset_nm = xl * lambda;
                const McEstimate est =
                    mc_photon_number(geom, cfg.cavity, cfg.drive, cfg.scheme, cfg.mc, model,
                                     CavityModification::Neglect, opts.threads);
                const double value = est.mean / (n * n1);
                table.rows.push_back(
                    {spacing_lambda, static_cast<double>(n), geom.offset_nm, value,
                     est.std_error / (n * n1), overlay(spacing_lambda, n, geom.offset_nm)});
                xs.push_back(geom.offset_nm);
                ys.push_back(value);
            }
            const auto fit = cosine_fit(xs, ys, k);
            fits.push_back({{"spacing_lambda", spacing_lambda},
                            {"n_atoms", n},
                            {"mean", fit[0]},
                            {"cos_amplitude", fit[1]},
                            {"sin_amplitude", fit[2]},
                            {"rms_residual", fit[3]}});
            table.comments.push_back("cosine fit (period lambda/2) spacing=" +
                                     std::to_string(spacing_lambda) + " N=" + std::to_string(n) +
                                     ": mean=" + fmt(fit[0]) + " cos=" + fmt(fit[1]) +
                                     " sin=" + fmt(fit[2]) + " rms=" + fmt(fit[3]));
        }
    }
    table.provenance["cosine_fits"] = fits;
    write_table(table, output_path(cfg, opts, "offset-sweep"), output_format(cfg, opts));
    return 0;
}

int cmd_scaling(const RunConfig& cfg, const CliOptions& opts) {
    const int n_max = static_cast<int>(sweep_number(cfg.sweep, "n_max", 8));
    if (n_max < 1 || n_max > ArrayGeometry::kMaxAtoms) throw ConfigError("scaling: bad n_max");
    const double lambda = cfg.cavity.lambda_nm;

    Table table;
    table.config = cfg.resolved_json();
    table.provenance = base_provenance(cfg, "scaling");
    table.columns = {"delta_ca_MHz", "constructive", "n_atoms",
                     "ratio",        "ratio_stderr", "analytic_ratio"};

    // Standard protocol: the magic-detuning dataset keeps position
    // fluctuations only (two-level); the -38 MHz dataset adds uniform m_F.
    struct Dataset {
        double delta_ca;
        ScatterModel model;
        MfDistribution mf;
    };
    const Dataset datasets[] = {
        {-507.0, ScatterModel::TwoLevel, MfDistribution::fixed(0)},
        {-38.0, ScatterModel::Multilevel, MfDistribution::uniform()},
    };

    for (const auto& ds : datasets) {
        CavityParams cav = cfg.cavity;
        cav.delta_ca_mhz = ds.delta_ca;
        McConfig mc = cfg.mc;
        mc.mf = ds.mf;
        for (double spacing_lambda : {5.0, 5.5}) {
            const bool constructive = spacing_lambda == 5.0;
            ArrayGeometry geom = cfg.array;
            geom.spacing_nm = spacing_lambda * lambda;
            geom.offset_nm = 0.0;

            geom.n_atoms = 1;
            const McEstimate n1 = mc_photon_number(geom, cav, cfg.drive, cfg.scheme, mc,
                                                   ds.model, CavityModification::Neglect,
                                                   opts.threads);
            const double analytic1 = analytic_constructive(1, geom, cav, cfg.drive);

            for (int n = 1; n <= n_max; ++n) {
                geom.n_atoms = n;
                const McEstimate est = mc_photon_number(geom, cav, cfg.drive, cfg.scheme, mc,
                                                        ds.model, CavityModification::Neglect,
                                                        opts.threads);
                const double ratio = est.mean / n1.mean;
                const double err = std::sqrt(std::pow(est.std_error / n1.mean, 2) +
                                             std::pow(ratio * n1.std_error / n1.mean, 2));
                const double analytic =
                    (constructive ? analytic_constructive(n, geom, cav, cfg.drive)
                                  : analytic_destructive(n, geom, cav, cfg.drive)) /
                    analytic1;
                table.rows.push_back({ds.delta_ca, constructive ? 1.0 : 0.0,
                                      static_cast<double>(n), ratio, err, analytic});
            }
        }
    }
    write_table(table, output_path(cfg, opts, "scaling"), output_format(cfg, opts));
    return 0;
}

int cmd_polarization(const RunConfig& cfg, const CliOptions& opts) {
    const ScatterModel model = resolve_model(opts);
    const auto result = polarization_decompose(cfg.array, cfg.cavity, cfg.drive, cfg.scheme,
                                               cfg.mc, model, CavityModification::Include,
                                               opts.threads);
    Table table;
    table.config = cfg.resolved_json();
    table.provenance = base_provenance(cfg, "polarization");
    table.provenance["I_z"] = result.i_z;
    table.provenance["I_y"] = result.i_y;
    table.provenance["y_fraction"] = result.y_fraction();
    table.columns = {"theta_deg", "T", "T_stderr"};
    for (const auto& pt : result.transmission) {
        table.rows.push_back({pt.theta_deg, pt.transmission, pt.std_error});
    }
    write_table(table, output_path(cfg, opts, "polarization"), output_format(cfg, opts));
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, const CliOptions& opts) {
    const ScatterModel model = resolve_model(opts);
    double center = predicted_center(cfg.array, cfg.cavity, cfg.scheme, model, cfg.mc.mf);
    if (cfg.sweep.contains("center_MHz")) center = sweep_number(cfg.sweep, "center_MHz", center);
    const double half_span = sweep_number(cfg.sweep, "half_span_MHz", 3.0);
    const int points = static_cast<int>(sweep_number(cfg.sweep, "points", 41));

    const auto grid = default_grid(center, half_span, points);
    const auto curve = sweep_spectrum(grid, cfg.array, cfg.cavity, cfg.drive, cfg.scheme,
                                      cfg.mc, model, CavityModification::Include, opts.threads);
    const auto fit = lorentzian_fit(curve);

    Table table;
    table.config = cfg.resolved_json();
    table.provenance = base_provenance(cfg, "spectrum");
    table.provenance["fit"] = {{"center_MHz", fit.center_mhz},
                               {"hwhm_MHz", fit.hwhm_mhz},
                               {"amplitude", fit.amplitude},
                               {"residual", fit.residual}};
    table.columns = {"delta_pc_MHz", "n_mean", "n_stderr"};
    for (const auto& pt : curve.points) {
        table.rows.push_back({pt.delta_pc_mhz, pt.n.mean, pt.n.std_error});
    }
    write_table(table, output_path(cfg, opts, "spectrum"), output_format(cfg, opts));

    const json summary = {{"center_MHz", fit.center_mhz},
                          {"hwhm_MHz", fit.hwhm_mhz},
                          {"amplitude", fit.amplitude},
                          {"residual", fit.residual}};
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_magic(const RunConfig& cfg, const CliOptions& opts) {
    const double lo = sweep_number(cfg.sweep, "lo_MHz", -1000.0);
    const double hi = sweep_number(cfg.sweep, "hi_MHz", -450.0);
    const auto magic = find_magic_detuning(cfg.scheme, lo, hi);

    Table table;
    table.config = cfg.resolved_json();
    table.provenance = base_provenance(cfg, "magic");
    table.provenance["interval_MHz"] = {lo, hi};
    table.columns = {"magic_detuning_MHz", "residual_spread", "raman_rayleigh_ratio"};
    table.rows.push_back({magic.detuning_mhz, magic.spread, magic.raman_rayleigh});
    write_table(table, output_path(cfg, opts, "magic"), output_format(cfg, opts));

    const json summary = {{"magic_detuning_MHz", magic.detuning_mhz},
                          {"residual_spread", magic.spread},
                          {"raman_rayleigh_ratio", magic.raman_rayleigh}};
    std::cout << summary.dump() << "\n";
    return 0;
}

}  // namespace cavarray::cli
