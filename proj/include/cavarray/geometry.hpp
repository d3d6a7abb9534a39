#pragma once

#include <complex>
#include <vector>

#include "cavarray/atomic.hpp"

namespace cavarray {

/// Cavity parameters. g0 is quoted on the cycling transition; k and the
/// cooperativity are derived, not stored.
struct CavityParams {
    double g0_mhz = 3.1;
    double kappa_mhz = 0.53;
    double lambda_nm = 780.0;
    double delta_ca_mhz = -507.0;

    double wavenumber() const;  // 2*pi/lambda, nm^-1
    double cooperativity(double gamma_mhz) const;
    void validate() const;
};

struct DriveParams {
    double omega0_mhz = 1.0;
    double delta_pc_mhz = 0.0;

    void validate() const;
};

/// Excited-state population stays below 5% (linear-response validity).
bool low_saturation(const DriveParams& drv, const CavityParams& cav, double gamma_mhz);

/// One-dimensional array along the cavity axis: atom i nominally sits at
/// (offset + i*spacing, y_offset), with isotropic Gaussian position
/// fluctuations of rms sigma per axis.
struct ArrayGeometry {
    int n_atoms = 1;
    double spacing_nm = 0.0;
    double offset_nm = 0.0;    // displacement of atom 0 from a cavity antinode
    double y_offset_nm = 0.0;  // probe antinode by default
    double sigma_nm = 100.0;

    static constexpr int kMaxAtoms = 64;

    double nominal_x(int i) const { return offset_nm + i * spacing_nm; }
    double nominal_y(int) const { return y_offset_nm; }
    void validate() const;
};

struct Atom {
    double x_nm = 0.0;
    double y_nm = 0.0;
    int m = 0;
};

/// One Monte Carlo realization of the array.
struct AtomSample {
    std::vector<Atom> atoms;
};

/// cos(k*coord) evaluated through exact IEEE range reduction by half
/// periods, so that shifting by lambda (lambda/2) reproduces (negates) the
/// value exactly.
double standing_wave(double coord_nm, double lambda_nm);

/// Cavity mode coupling g(x) = g0 cos(kx), MHz.
double mode_coupling(double x_nm, const CavityParams& cav);

/// Probe Rabi frequency Omega(y) = Omega0 cos(ky), MHz.
double drive_rabi(double y_nm, const DriveParams& drv, const CavityParams& cav);

/// Per-channel scattering amplitude of one atom (MHz). Two-level:
/// eta = g(x) Omega(y) / (2 delta_ca) in the z channel only. Multilevel:
/// eta_c = g(x) Omega(y)/2 times the channel amplitude for the atom's m.
struct EtaChannels {
    std::complex<double> z;        // delta_m = 0, z-polarized mode
    std::complex<double> y_plus;   // delta_m = +1, y-polarized mode
    std::complex<double> y_minus;  // delta_m = -1, y-polarized mode

    double raman_intensity() const { return std::norm(y_plus) + std::norm(y_minus); }
};

EtaChannels eta(const Atom& atom, const CavityParams& cav, const DriveParams& drv,
                const LevelScheme& scheme, ScatterModel model);

}  // namespace cavarray
