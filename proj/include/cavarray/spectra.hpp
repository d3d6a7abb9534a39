#pragma once

#include <vector>

#include "cavarray/montecarlo.hpp"

namespace cavarray {

struct SpectrumPoint {
    double delta_pc_mhz = 0.0;
    McEstimate n;
};

/// Cavity emission vs probe-cavity detuning on a strictly increasing grid
/// of at least 7 points spanning >= 6 kappa.
struct SpectrumCurve {
    std::vector<SpectrumPoint> points;

    void validate(double kappa_mhz) const;
};

/// Predicted dressed-resonance center: ensemble-mean dispersive shift of
/// the nominal array (Gaussian position moments, m averaged over the
/// configured distribution).
double predicted_center(const ArrayGeometry& geom, const CavityParams& cav,
                        const LevelScheme& scheme, ScatterModel model, const MfDistribution& mf);

/// 41 points spanning center +- 3 MHz (resolves kappa = 0.53 MHz with >= 7
/// points per half width).
std::vector<double> default_grid(double center_mhz, double half_span_mhz = 3.0, int n_points = 41);

/// One mc_photon_number evaluation per grid point with a shared base seed.
/// An empty array (N = 0) yields the bare-cavity response kernel
/// 1/(delta_pc^2 + kappa^2) (unit source), since the probe drives the
/// cavity only through the atoms.
SpectrumCurve sweep_spectrum(const std::vector<double>& grid_mhz, const ArrayGeometry& geom,
                             const CavityParams& cav, const DriveParams& drv,
                             const LevelScheme& scheme, const McConfig& mc, ScatterModel model,
                             CavityModification modification = CavityModification::Include,
                             int threads = 1);

struct LorentzianFit {
    double amplitude = 0.0;
    double center_mhz = 0.0;
    double hwhm_mhz = 0.0;
    double residual = 0.0;  // rms of the fit residuals
    int iterations = 0;
};

/// Least-squares fit of A / (1 + ((x - x0)/w)^2), uniform weights, no
/// offset term. Initial guess from the peak point and half-maximum
/// crossings, refined by damped Gauss-Newton until the relative parameter
/// change drops below 1e-9 (at most 200 iterations). Throws
/// std::invalid_argument when the curve has no interior maximum and
/// FitError on non-convergence.
LorentzianFit lorentzian_fit(const SpectrumCurve& curve);

}  // namespace cavarray
