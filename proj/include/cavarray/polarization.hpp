#pragma once

#include <vector>

#include "cavarray/montecarlo.hpp"

namespace cavarray {

struct TransmissionPoint {
    double theta_deg = 0.0;
    double transmission = 0.0;
    double std_error = 0.0;
};

/// Cavity output split into the coherent z-polarized (Rayleigh) and
/// incoherent y-polarized (Raman) intensities, plus the polarizer
/// transmission curve T(theta) = (I_z cos^2 + I_y sin^2)/(I_z + I_y).
struct PolarizationResult {
    double i_z = 0.0;
    double i_y = 0.0;
    double i_z_std_error = 0.0;
    double i_y_std_error = 0.0;
    std::vector<TransmissionPoint> transmission;

    double y_fraction() const { return i_y / (i_z + i_y); }
    double z_fraction() const { return i_z / (i_z + i_y); }
};

/// Monte Carlo decomposition: per shot, I_z = |sum_i eta_z,i|^2/|den|^2 and
/// I_y = sum_i (|eta_+1,i|^2 + |eta_-1,i|^2)/|den|^2 with the shared dressed
/// denominator. The theta grid is 0..180 degrees in 15-degree steps;
/// transmission errors propagate from the (I_z, I_y) covariance.
PolarizationResult polarization_decompose(const ArrayGeometry& geom, const CavityParams& cav,
                                          const DriveParams& drv, const LevelScheme& scheme,
                                          const McConfig& mc,
                                          ScatterModel model = ScatterModel::Multilevel,
                                          CavityModification modification = CavityModification::Include,
                                          int threads = 1);

}  // namespace cavarray
