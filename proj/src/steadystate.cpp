#include "cavarray/steadystate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavarray/errors.hpp"

namespace cavarray {

SteadyStateEvaluator::SteadyStateEvaluator(const CavityParams& cav, const DriveParams& drv,
                                           const LevelScheme& scheme, ScatterModel model,
                                           CavityModification modification)
    : cav_(cav),
      drv_(drv),
      gamma_mhz_(scheme.gamma_mhz),
      modification_(modification),
      ground_f_(scheme.ground_f) {
    const int n_m = 2 * ground_f_ + 1;
    rayleigh_.resize(n_m);
    raman_plus_.resize(n_m);
    raman_minus_.resize(n_m);
    dispersion_.resize(n_m);
    absorption_.resize(n_m);
    const double delta = cav.delta_ca_mhz;
    for (int m = -ground_f_; m <= ground_f_; ++m) {
        const int i = m + ground_f_;
        if (model == ScatterModel::TwoLevel) {
            if (delta == 0.0) {
                throw SingularityError("cavity_field: two-level model diverges at delta_ca = 0");
            }
            rayleigh_[i] = 1.0 / delta;
            raman_plus_[i] = 0.0;
            raman_minus_[i] = 0.0;
            dispersion_[i] = 1.0 / delta;
            absorption_[i] = 1.0 / (delta * delta);
        } else {
            rayleigh_[i] = rayleigh_amplitude(scheme, m, delta);
            raman_plus_[i] = raman_amplitude(scheme, m, +1, delta);
            raman_minus_[i] = raman_amplitude(scheme, m, -1, delta);
            dispersion_[i] = dispersion_weight(scheme, m, delta);
            absorption_[i] = absorption_weight(scheme, m, delta);
        }
    }
}

CavityField SteadyStateEvaluator::operator()(const AtomSample& sample) const {
    double shift = 0.0, broadening = 0.0;
    double source = 0.0;  // sum of z-channel amplitudes (real for real detunings)
    double raman = 0.0;   // sum of per-atom Raman intensities
    for (const auto& atom : sample.atoms) {
        if (atom.m < -ground_f_ || atom.m > ground_f_) {
            throw std::invalid_argument("cavity_field: atom Zeeman index outside the ground manifold");
        }
        const int i = atom.m + ground_f_;
        const double g = mode_coupling(atom.x_nm, cav_);
        const double half_drive = 0.5 * g * drive_rabi(atom.y_nm, drv_, cav_);
        source += half_drive * rayleigh_[i];
        const double rp = half_drive * raman_plus_[i];
        const double rm = half_drive * raman_minus_[i];
        raman += rp * rp + rm * rm;
        shift += g * g * dispersion_[i];
        broadening += gamma_mhz_ * g * g * absorption_[i];
    }

    const bool dress = modification_ == CavityModification::Include;
    const std::complex<double> den(drv_.delta_pc_mhz - (dress ? shift : 0.0),
                                   cav_.kappa_mhz + (dress ? broadening : 0.0));

    CavityField field;
    field.abar = source / den;
    field.n = std::norm(field.abar);
    field.shift_mhz = shift;
    field.broadening_mhz = broadening;
    field.n_raman = raman / std::norm(den);
    return field;
}

CavityField cavity_field(const AtomSample& sample, const CavityParams& cav,
                         const DriveParams& drv, const LevelScheme& scheme, ScatterModel model,
                         CavityModification modification) {
    return SteadyStateEvaluator(cav, drv, scheme, model, modification)(sample);
}

CavityField exact_linear_response(const AtomSample& sample, const CavityParams& cav,
                                  const DriveParams& drv, double gamma_mhz) {
    const std::complex<double> pa(drv.delta_pc_mhz + cav.delta_ca_mhz, gamma_mhz);
    std::complex<double> source = 0.0;
    std::complex<double> lamb = 0.0;
    for (const auto& atom : sample.atoms) {
        const double g = mode_coupling(atom.x_nm, cav);
        source += 0.5 * g * drive_rabi(atom.y_nm, drv, cav) / pa;
        lamb += g * g / pa;
    }
    const std::complex<double> den =
        std::complex<double>(drv.delta_pc_mhz, cav.kappa_mhz) - lamb;

    CavityField field;
    field.abar = source / den;
    field.n = std::norm(field.abar);
    field.shift_mhz = lamb.real();
    field.broadening_mhz = -lamb.imag();
    return field;
}

bool dispersive_regime(const CavityParams& cav, const DriveParams& drv, double gamma_mhz) {
    const double scale = std::max({drv.omega0_mhz, cav.g0_mhz, gamma_mhz});
    return std::abs(cav.delta_ca_mhz) >= 10.0 * scale;
}

}  // namespace cavarray
