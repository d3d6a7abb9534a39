#include "cavarray/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cavarray/errors.hpp"

namespace cavarray {

namespace {

// Fixed block size keeps the reduction order independent of the thread count.
constexpr long kBlockSize = 4096;

bool near_multiple(double value, double unit, double eps) {
    return std::abs(std::remainder(value, unit)) <= eps;
}

struct EtaMoments {
    double mean = 0.0;     // <eta> for an antinode-centered atom
    double mean_sq = 0.0;  // <|eta|^2>
};

EtaMoments antinode_eta_moments(const ArrayGeometry& geom, const CavityParams& cav,
                                const DriveParams& drv) {
    const double k = cav.wavenumber();
    const double eta0 = cav.g0_mhz * drv.omega0_mhz / (2.0 * cav.delta_ca_mhz);
    EtaMoments m;
    const double c1 = mean_cos(k, 0.0, geom.sigma_nm);
    const double c2 = mean_cos_sq(k, 0.0, geom.sigma_nm);
    m.mean = eta0 * c1 * c1;       // x and y factors
    m.mean_sq = eta0 * eta0 * c2 * c2;
    return m;
}

void check_scaling_preconditions(int n, const ArrayGeometry& geom, const CavityParams& cav,
                                 const DriveParams& drv, bool constructive) {
    if (n < 1 || n > ArrayGeometry::kMaxAtoms) {
        throw std::invalid_argument("analytic scaling: N out of range");
    }
    if (drv.delta_pc_mhz != 0.0) {
        throw std::invalid_argument("analytic scaling: requires Delta_pc = 0");
    }
    const double lambda = cav.lambda_nm;
    const double eps = 1e-9 * lambda;
    if (std::abs(geom.offset_nm) > eps) {
        throw std::invalid_argument("analytic scaling: requires antinode alignment (offset 0)");
    }
    if (std::abs(geom.y_offset_nm) > eps) {
        throw std::invalid_argument("analytic scaling: requires probe antinode (y_offset 0)");
    }
    if (n > 1) {
        if (constructive && !near_multiple(geom.spacing_nm, lambda, eps)) {
            throw std::invalid_argument(
                "analytic_constructive: spacing must be an integer multiple of lambda");
        }
        if (!constructive && (near_multiple(geom.spacing_nm, lambda, eps) ||
                              !near_multiple(geom.spacing_nm, 0.5 * lambda, eps))) {
            throw std::invalid_argument(
                "analytic_destructive: spacing must be a half-integer multiple of lambda");
        }
    }
}

}  // namespace

void MfDistribution::validate(int ground_f) const {
    switch (kind) {
        case Kind::Uniform:
            return;
        case Kind::Fixed:
            if (std::abs(fixed_m) > ground_f) {
                throw ConfigError("mc: fixed m outside the ground manifold");
            }
            return;
        case Kind::Weights: {
            if (static_cast<int>(weights.size()) != 2 * ground_f + 1) {
                throw ConfigError("mc: need one m_F weight per Zeeman state (2F+1)");
            }
            double total = 0.0;
            for (double w : weights) {
                if (w < 0) throw ConfigError("mc: m_F weights must be non-negative");
                total += w;
            }
            if (total <= 0) throw ConfigError("mc: m_F weights sum to zero");
            return;
        }
    }
}

void McConfig::validate(int ground_f) const {
    if (n_samples < 100) throw ConfigError("mc: n_samples must be >= 100");
    mf.validate(ground_f);
}

AtomSample sample_atoms(const ArrayGeometry& geom, const LevelScheme& scheme,
                        const MfDistribution& mf, SampleRng& rng) {
    AtomSample sample;
    sample.atoms.resize(geom.n_atoms);

    double total = 0.0;
    if (mf.kind == MfDistribution::Kind::Weights) {
        total = std::accumulate(mf.weights.begin(), mf.weights.end(), 0.0);
    }

    for (int i = 0; i < geom.n_atoms; ++i) {
        Atom& atom = sample.atoms[i];
        // Fixed draw order per atom: x, y, then m.
        atom.x_nm = geom.nominal_x(i) + geom.sigma_nm * rng.normal();
        atom.y_nm = geom.nominal_y(i) + geom.sigma_nm * rng.normal();
        switch (mf.kind) {
            case MfDistribution::Kind::Fixed:
                atom.m = mf.fixed_m;
                break;
            case MfDistribution::Kind::Uniform: {
                const int n_states = scheme.n_zeeman();
                int idx = static_cast<int>(rng.uniform01() * n_states);
                idx = std::min(idx, n_states - 1);
                atom.m = idx - scheme.ground_f;
                break;
            }
            case MfDistribution::Kind::Weights: {
                double u = rng.uniform01() * total;
                int idx = 0;
                for (size_t w = 0; w < mf.weights.size(); ++w) {
                    u -= mf.weights[w];
                    if (u < 0) {
                        idx = static_cast<int>(w);
                        break;
                    }
                    idx = static_cast<int>(w);
                }
                atom.m = idx - scheme.ground_f;
                break;
            }
        }
    }
    return sample;
}

double McMoments::variance(int i) const {
    if (n < 2) return 0.0;
    const int pos = (i == 0) ? 0 : 1;
    const double m = mean(i);
    const double raw = sumprod[pos] / n - m * m;
    return std::max(0.0, raw) * static_cast<double>(n) / static_cast<double>(n - 1);
}

double McMoments::covariance() const {
    if (n < 2) return 0.0;
    const double raw = sumprod[2] / n - mean(0) * mean(1);
    return raw * static_cast<double>(n) / static_cast<double>(n - 1);
}

double McMoments::std_error(int i) const { return std::sqrt(variance(i) / n); }

McMoments mc_accumulate(long n_samples, std::uint64_t seed, int threads,
                        const std::function<std::array<double, 2>(SampleRng&)>& per_sample) {
    if (n_samples < 1) throw std::invalid_argument("mc_accumulate: need at least one sample");
    threads = std::max(1, threads);

    const long n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<McMoments> partial(n_blocks);

    const auto run_block = [&](long block) {
        McMoments acc;
        const long begin = block * kBlockSize;
        const long end = std::min(n_samples, begin + kBlockSize);
        for (long idx = begin; idx < end; ++idx) {
            SampleRng rng(seed, static_cast<std::uint64_t>(idx));
            const auto v = per_sample(rng);
            acc.sum[0] += v[0];
            acc.sum[1] += v[1];
            acc.sumprod[0] += v[0] * v[0];
            acc.sumprod[1] += v[1] * v[1];
            acc.sumprod[2] += v[0] * v[1];
            ++acc.n;
        }
        partial[block] = acc;
    };

    if (threads == 1 || n_blocks == 1) {
        for (long b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        const int workers = static_cast<int>(std::min<long>(threads, n_blocks));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (long b = w; b < n_blocks; b += workers) run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }

    // Sequential combination in block order.
    McMoments total;
    for (const auto& p : partial) {
        total.sum[0] += p.sum[0];
        total.sum[1] += p.sum[1];
        total.sumprod[0] += p.sumprod[0];
        total.sumprod[1] += p.sumprod[1];
        total.sumprod[2] += p.sumprod[2];
        total.n += p.n;
    }
    return total;
}

McEstimate mc_photon_number(const ArrayGeometry& geom, const CavityParams& cav,
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
            return {field.n + field.n_raman, 0.0};
        });
    return moments.estimate(0);
}

double mean_cos(double k_per_nm, double x0_nm, double sigma_nm) {
    const double k2s2 = k_per_nm * k_per_nm * sigma_nm * sigma_nm;
    return std::cos(k_per_nm * x0_nm) * std::exp(-0.5 * k2s2);
}

double mean_cos_sq(double k_per_nm, double x0_nm, double sigma_nm) {
    const double k2s2 = k_per_nm * k_per_nm * sigma_nm * sigma_nm;
    return 0.5 * (1.0 + std::cos(2.0 * k_per_nm * x0_nm) * std::exp(-2.0 * k2s2));
}

double debye_waller(double sigma_nm, double k_per_nm) {
    if (sigma_nm < 0) throw std::invalid_argument("debye_waller: sigma must be >= 0");
    const double c1 = mean_cos(k_per_nm, 0.0, sigma_nm);
    const double c2 = mean_cos_sq(k_per_nm, 0.0, sigma_nm);
    // |<eta>|^2 / <|eta|^2> with identical x and y factors.
    return (c1 * c1 * c1 * c1) / (c2 * c2);
}

double analytic_constructive(int n, const ArrayGeometry& geom, const CavityParams& cav,
                             const DriveParams& drv) {
    check_scaling_preconditions(n, geom, cav, drv, /*constructive=*/true);
    const auto m = antinode_eta_moments(geom, cav, drv);
    const double coherent = m.mean * m.mean;
    const double kappa2 = cav.kappa_mhz * cav.kappa_mhz;
    return (n * (m.mean_sq - coherent) + static_cast<double>(n) * n * coherent) / kappa2;
}

double analytic_destructive(int n, const ArrayGeometry& geom, const CavityParams& cav,
                            const DriveParams& drv) {
    check_scaling_preconditions(n, geom, cav, drv, /*constructive=*/false);
    const auto m = antinode_eta_moments(geom, cav, drv);
    const double coherent = m.mean * m.mean;
    const double kappa2 = cav.kappa_mhz * cav.kappa_mhz;
    const double parity_term = (n % 2 == 0) ? 0.0 : 1.0;
    return (n * (m.mean_sq - coherent) + parity_term * coherent) / kappa2;
}

}  // namespace cavarray
