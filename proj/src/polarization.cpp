#include "cavarray/polarization.hpp"

#include <cmath>
#include <numbers>

namespace cavarray {

PolarizationResult polarization_decompose(const ArrayGeometry& geom, const CavityParams& cav,
                                          const DriveParams& drv, const LevelScheme& scheme,
                                          const McConfig& mc, ScatterModel model,
                                          CavityModification modification, int threads) {
    geom.validate();
    mc.validate(scheme.ground_f);
    const SteadyStateEvaluator evaluate(cav, drv, scheme, model, modification);
    const auto moments = mc_accumulate(
        mc.n_samples, mc.seed, threads, [&](SampleRng& rng) -> std::array<double, 2> {
            const AtomSample sample = sample_atoms(geom, scheme, mc.mf, rng);
            const CavityField field = evaluate(sample);
            return {field.n, field.n_raman};
        });

    PolarizationResult result;
    result.i_z = moments.mean(0);
    result.i_y = moments.mean(1);
    result.i_z_std_error = moments.std_error(0);
    result.i_y_std_error = moments.std_error(1);

    const double total = result.i_z + result.i_y;
    const double var_z = moments.variance(0) / moments.n;
    const double var_y = moments.variance(1) / moments.n;
    const double cov = moments.covariance() / moments.n;

    for (int step = 0; step <= 12; ++step) {
        const double theta_deg = 15.0 * step;
        const double theta = theta_deg * std::numbers::pi / 180.0;
        const double c2 = std::cos(theta) * std::cos(theta);
        const double s2 = 1.0 - c2;
        TransmissionPoint pt;
        pt.theta_deg = theta_deg;
        pt.transmission = (result.i_z * c2 + result.i_y * s2) / total;
        // Delta method on T(I_z, I_y).
        const double dz = result.i_y * (c2 - s2) / (total * total);
        const double dy = result.i_z * (s2 - c2) / (total * total);
        const double var = dz * dz * var_z + dy * dy * var_y + 2.0 * dz * dy * cov;
        pt.std_error = std::sqrt(std::max(0.0, var));
        result.transmission.push_back(pt);
    }
    return result;
}

}  // namespace cavarray
