#include "cavarray/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cavarray/errors.hpp"

namespace cavarray {

double CavityParams::wavenumber() const { return 2.0 * std::numbers::pi / lambda_nm; }

double CavityParams::cooperativity(double gamma_mhz) const {
    return g0_mhz * g0_mhz / (2.0 * kappa_mhz * gamma_mhz);
}

void CavityParams::validate() const {
    if (g0_mhz <= 0) throw ConfigError("cavity: g0 must be positive");
    if (kappa_mhz <= 0) throw ConfigError("cavity: kappa must be positive");
    if (lambda_nm <= 0) throw ConfigError("cavity: lambda must be positive");
}

void DriveParams::validate() const {
    if (omega0_mhz < 0) throw ConfigError("drive: omega0 must be non-negative");
}

bool low_saturation(const DriveParams& drv, const CavityParams& cav, double gamma_mhz) {
    const double d2 = cav.delta_ca_mhz * cav.delta_ca_mhz + gamma_mhz * gamma_mhz;
    return drv.omega0_mhz * drv.omega0_mhz / (4.0 * d2) < 0.05;
}

void ArrayGeometry::validate() const {
    if (n_atoms < 1) throw ConfigError("array: n_atoms must be >= 1");
    if (n_atoms > kMaxAtoms) {
        throw ConfigError("array: n_atoms exceeds the implementation bound of " +
                          std::to_string(kMaxAtoms));
    }
    if (sigma_nm < 0) throw ConfigError("array: sigma must be non-negative");
    if (spacing_nm < 0) throw ConfigError("array: spacing must be non-negative");
    if (n_atoms > 1 && spacing_nm == 0) throw ConfigError("array: spacing required for N > 1");
}

double standing_wave(double coord_nm, double lambda_nm) {
    // coord = n*(lambda/2) + h with |h| <= lambda/4 and h exact (IEEE
    // remainder), so cos(k*coord) = (-1)^n cos(2*pi*h/lambda) is exactly
    // periodic under lambda shifts and exactly antiperiodic under lambda/2.
    const double half = 0.5 * lambda_nm;
    const double h = std::remainder(coord_nm, half);
    const long long n = std::llround((coord_nm - h) / half);
    const double c = std::cos(2.0 * std::numbers::pi * (h / lambda_nm));
    return (n % 2 == 0) ? c : -c;
}

double mode_coupling(double x_nm, const CavityParams& cav) {
    return cav.g0_mhz * standing_wave(x_nm, cav.lambda_nm);
}

double drive_rabi(double y_nm, const DriveParams& drv, const CavityParams& cav) {
    return drv.omega0_mhz * standing_wave(y_nm, cav.lambda_nm);
}

EtaChannels eta(const Atom& atom, const CavityParams& cav, const DriveParams& drv,
                const LevelScheme& scheme, ScatterModel model) {
    const double prefactor = 0.5 * mode_coupling(atom.x_nm, cav) * drive_rabi(atom.y_nm, drv, cav);
    EtaChannels ch;
    if (model == ScatterModel::TwoLevel) {
        if (cav.delta_ca_mhz == 0.0) {
            throw SingularityError("eta: two-level amplitude diverges at delta_ca = 0");
        }
        ch.z = prefactor / cav.delta_ca_mhz;
        return ch;
    }
    ch.z = prefactor * rayleigh_amplitude(scheme, atom.m, cav.delta_ca_mhz);
    ch.y_plus = prefactor * raman_amplitude(scheme, atom.m, +1, cav.delta_ca_mhz);
    ch.y_minus = prefactor * raman_amplitude(scheme, atom.m, -1, cav.delta_ca_mhz);
    return ch;
}

}  // namespace cavarray
