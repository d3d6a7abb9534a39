#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "cavarray/rng.hpp"
#include "cavarray/steadystate.hpp"

namespace cavarray {

/// Distribution of the Zeeman index m drawn per atom per shot.
struct MfDistribution {
    enum class Kind { Uniform, Fixed, Weights };
    Kind kind = Kind::Uniform;
    int fixed_m = 0;
    std::vector<double> weights;  // one entry per m = -F..F, normalized at load

    static MfDistribution uniform() { return {}; }
    static MfDistribution fixed(int m) { return {Kind::Fixed, m, {}}; }
    static MfDistribution custom(std::vector<double> w) {
        return {Kind::Weights, 0, std::move(w)};
    }
    void validate(int ground_f) const;
};

struct McConfig {
    long n_samples = 100000;
    std::uint64_t seed = 1;
    MfDistribution mf;

    void validate(int ground_f) const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
};

/// Draw one array realization: positions Gaussian about the nominal lattice,
/// m per the configured distribution. Deterministic given (seed, index)
/// through the rng stream.
AtomSample sample_atoms(const ArrayGeometry& geom, const LevelScheme& scheme,
                        const MfDistribution& mf, SampleRng& rng);

/// First and second moments of up to two observables accumulated over
/// samples in fixed-size blocks. Blocks are reduced in index order, so the
/// result is bitwise independent of the worker count.
struct McMoments {
    std::array<double, 2> sum{0.0, 0.0};
    std::array<double, 3> sumprod{0.0, 0.0, 0.0};  // xx, yy, xy
    long n = 0;

    double mean(int i) const { return sum[i] / n; }
    double variance(int i) const;
    double covariance() const;
    double std_error(int i) const;
    McEstimate estimate(int i) const { return {mean(i), std_error(i), n}; }
};

McMoments mc_accumulate(long n_samples, std::uint64_t seed, int threads,
                        const std::function<std::array<double, 2>(SampleRng&)>& per_sample);

/// Ensemble mean and standard error of the cavity photon number (coherent
/// z intensity plus incoherent Raman intensity), each shot evaluated via
/// the steady-state cavity field.
McEstimate mc_photon_number(const ArrayGeometry& geom, const CavityParams& cav,
                            const DriveParams& drv, const LevelScheme& scheme,
                            const McConfig& mc, ScatterModel model,
                            CavityModification modification = CavityModification::Include,
                            int threads = 1);

/// Debye-Waller factor D = |<eta>|^2 / <|eta|^2> for an antinode-centered
/// atom with isotropic Gaussian position spread in x and y.
double debye_waller(double sigma_nm, double k_per_nm);

/// Gaussian moments of the standing wave: <cos k(x0+dx)> and
/// <cos^2 k(x0+dx)> for dx ~ N(0, sigma^2).
double mean_cos(double k_per_nm, double x0_nm, double sigma_nm);
double mean_cos_sq(double k_per_nm, double x0_nm, double sigma_nm);

/// Closed-form photon number for an antinode-aligned array at Delta_pc = 0
/// with the atomic cavity modification neglected:
/// constructive (integer-wavelength spacing):
///   n_N = [N(<|eta|^2> - <eta>^2) + N^2 <eta>^2] / kappa^2
/// destructive (half-integer spacing):
///   n_N = [N(<|eta|^2> - <eta>^2) + (1-(-1)^N)/2 <eta>^2] / kappa^2
/// Preconditions on the geometry are enforced.
double analytic_constructive(int n, const ArrayGeometry& geom, const CavityParams& cav,
                             const DriveParams& drv);
double analytic_destructive(int n, const ArrayGeometry& geom, const CavityParams& cav,
                            const DriveParams& drv);

}  // namespace cavarray
