#include "cavarray/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cavarray/errors.hpp"

namespace cavarray {

void SpectrumCurve::validate(double kappa_mhz) const {
    if (points.size() < 7) {
        throw std::invalid_argument("spectrum grid needs at least 7 points");
    }
    for (size_t i = 1; i < points.size(); ++i) {
        if (points[i].delta_pc_mhz <= points[i - 1].delta_pc_mhz) {
            throw std::invalid_argument("spectrum grid must be strictly increasing");
        }
    }
    const double span = points.back().delta_pc_mhz - points.front().delta_pc_mhz;
    if (span < 6.0 * kappa_mhz) {
        throw std::invalid_argument("spectrum grid must span at least +-3 kappa");
    }
}

double predicted_center(const ArrayGeometry& geom, const CavityParams& cav,
                        const LevelScheme& scheme, ScatterModel model,
                        const MfDistribution& mf) {
    const double k = cav.wavenumber();
    double g2_sum = 0.0;
    for (int i = 0; i < geom.n_atoms; ++i) {
        g2_sum += cav.g0_mhz * cav.g0_mhz * mean_cos_sq(k, geom.nominal_x(i), geom.sigma_nm);
    }
    if (model == ScatterModel::TwoLevel) return g2_sum / cav.delta_ca_mhz;

    double disp = 0.0, weight = 0.0;
    for (int m = -scheme.ground_f; m <= scheme.ground_f; ++m) {
        double p = 1.0;
        if (mf.kind == MfDistribution::Kind::Fixed) {
            p = (m == mf.fixed_m) ? 1.0 : 0.0;
        } else if (mf.kind == MfDistribution::Kind::Weights) {
            p = mf.weights[m + scheme.ground_f];
        }
        disp += p * dispersion_weight(scheme, m, cav.delta_ca_mhz);
        weight += p;
    }
    return g2_sum * disp / weight;
}

std::vector<double> default_grid(double center_mhz, double half_span_mhz, int n_points) {
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) {
        grid[i] = center_mhz - half_span_mhz + 2.0 * half_span_mhz * i / (n_points - 1);
    }
    return grid;
}

SpectrumCurve sweep_spectrum(const std::vector<double>& grid_mhz, const ArrayGeometry& geom,
                             const CavityParams& cav, const DriveParams& drv,
                             const LevelScheme& scheme, const McConfig& mc, ScatterModel model,
                             CavityModification modification, int threads) {
    SpectrumCurve curve;
    curve.points.reserve(grid_mhz.size());
    for (double delta_pc : grid_mhz) {
        SpectrumPoint pt;
        pt.delta_pc_mhz = delta_pc;
        if (geom.n_atoms == 0) {
            const double den = delta_pc * delta_pc + cav.kappa_mhz * cav.kappa_mhz;
            pt.n = {1.0 / den, 0.0, mc.n_samples};
        } else {
            DriveParams drive = drv;
            drive.delta_pc_mhz = delta_pc;
            // Shared base seed across grid points (common random numbers).
            pt.n = mc_photon_number(geom, cav, drive, scheme, mc, model, modification, threads);
        }
        curve.points.push_back(pt);
    }
    curve.validate(cav.kappa_mhz);
    return curve;
}

namespace {

// Solve the symmetric 3x3 system M x = b in place; returns false if singular.
bool solve3(std::array<std::array<double, 3>, 3>& m, std::array<double, 3>& b) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-300) return false;
        std::swap(m[col], m[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int i = 0; i < 3; ++i) b[i] /= m[i][i];
    return true;
}

double rms_residual(const SpectrumCurve& curve, double A, double x0, double w) {
    double ss = 0.0;
    for (const auto& pt : curve.points) {
        const double t = (pt.delta_pc_mhz - x0) / w;
        const double r = pt.n.mean - A / (1.0 + t * t);
        ss += r * r;
    }
    return std::sqrt(ss / curve.points.size());
}

}  // namespace

LorentzianFit lorentzian_fit(const SpectrumCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 7) throw std::invalid_argument("lorentzian_fit: need at least 7 points");

    size_t peak = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].n.mean > pts[peak].n.mean) peak = i;
    }
    if (peak == 0 || peak + 1 == pts.size()) {
        throw std::invalid_argument("lorentzian_fit: curve has no interior maximum");
    }

    // Initial guess: peak point plus linearly interpolated half-max crossings.
    double A = pts[peak].n.mean;
    double x0 = pts[peak].delta_pc_mhz;
    const double half = 0.5 * A;
    double xl = pts.front().delta_pc_mhz, xr = pts.back().delta_pc_mhz;
    for (size_t i = peak; i-- > 0;) {
        if (pts[i].n.mean < half) {
            const double frac = (half - pts[i].n.mean) / (pts[i + 1].n.mean - pts[i].n.mean);
            xl = pts[i].delta_pc_mhz + frac * (pts[i + 1].delta_pc_mhz - pts[i].delta_pc_mhz);
            break;
        }
    }
    for (size_t i = peak + 1; i < pts.size(); ++i) {
        if (pts[i].n.mean < half) {
            const double frac = (pts[i - 1].n.mean - half) / (pts[i - 1].n.mean - pts[i].n.mean);
            xr = pts[i - 1].delta_pc_mhz + frac * (pts[i].delta_pc_mhz - pts[i - 1].delta_pc_mhz);
            break;
        }
    }
    double w = 0.5 * (xr - xl);
    if (!(w > 0)) w = 0.25 * (pts.back().delta_pc_mhz - pts.front().delta_pc_mhz);

    // Damped Gauss-Newton (Levenberg damping, adapted multiplicatively).
    double lambda = 1e-3;
    int iterations = 0;
    for (; iterations < 200; ++iterations) {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        double ss = 0.0;
        for (const auto& pt : pts) {
            const double t = (pt.delta_pc_mhz - x0) / w;
            const double den = 1.0 + t * t;
            const double f = A / den;
            const double r = pt.n.mean - f;
            ss += r * r;
            const std::array<double, 3> jac = {
                1.0 / den,                       // d/dA
                A * 2.0 * t / (w * den * den),   // d/dx0
                A * 2.0 * t * t / (w * den * den)  // d/dw
            };
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) jtj[a][b] += jac[a] * jac[b];
                jtr[a] += jac[a] * r;
            }
        }

        auto m = jtj;
        for (int d = 0; d < 3; ++d) m[d][d] *= 1.0 + lambda;
        auto step = jtr;
        if (!solve3(m, step)) {
            throw FitError("lorentzian_fit: singular normal equations at iteration " +
                           std::to_string(iterations));
        }

        const double A_new = A + step[0];
        const double x0_new = x0 + step[1];
        const double w_new = w + step[2];
        double ss_new = 0.0;
        for (const auto& pt : pts) {
            const double t = (pt.delta_pc_mhz - x0_new) / w_new;
            const double r = pt.n.mean - A_new / (1.0 + t * t);
            ss_new += r * r;
        }

        if (!std::isfinite(ss_new) || ss_new > ss) {
            lambda *= 10.0;
            if (lambda > 1e12) {
                throw FitError("lorentzian_fit: damping exhausted at iteration " +
                               std::to_string(iterations) + ", rss = " + std::to_string(ss));
            }
            continue;
        }

        const double rel = std::max({std::abs(step[0]) / std::max(std::abs(A_new), 1e-300),
                                     std::abs(step[1]) / std::max(std::abs(x0_new), 1.0),
                                     std::abs(step[2]) / std::max(std::abs(w_new), 1e-300)});
        A = A_new;
        x0 = x0_new;
        w = std::abs(w_new);
        lambda = std::max(lambda * 0.3, 1e-12);
        if (rel < 1e-9) break;
    }
    if (iterations >= 200) {
        throw FitError("lorentzian_fit: no convergence after 200 iterations (A=" +
                       std::to_string(A) + ", x0=" + std::to_string(x0) +
                       ", w=" + std::to_string(w) + ")");
    }
    if (!(w > 0) || !(A > 0)) {
        throw FitError("lorentzian_fit: converged to a non-physical parameter set");
    }

    LorentzianFit fit;
    fit.amplitude = A;
    fit.center_mhz = x0;
    fit.hwhm_mhz = w;
    fit.residual = rms_residual(curve, A, x0, w);
    fit.iterations = iterations;
    return fit;
}

}  // namespace cavarray
