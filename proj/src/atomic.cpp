#include "cavarray/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "cavarray/angular.hpp"
#include "cavarray/errors.hpp"

namespace cavarray {

namespace {

// D2 line quantum numbers (J = 1/2 ground, J' = 3/2 excited, I = 3/2).
constexpr double kJ = 0.5;
constexpr double kJp = 1.5;
constexpr double kI = 1.5;

constexpr double kPoleToleranceMhz = 1e-6;

int parity(int n) { return (n % 2 == 0) ? 1 : -1; }

// Unnormalized |F,m> <-> |F', m+q> amplitude: hyperfine-reduced 6j factor
// times the Wigner-Eckart 3j, Condon-Shortley signs. The accumulated phase
// (-1)^{F'+J+1+I} (-1)^{F'-1+m} reduces to (-1)^m for integer F' and J+I=2.
double raw_weight(int f, int m, int f_prime, int q) {
    const int m_excited = m + q;
    if (std::abs(m) > f || std::abs(m_excited) > f_prime) return 0.0;
    const double hf = wigner6j(kJ, kJp, 1.0, f_prime, f, kI);
    const double tj = wigner3j(f_prime, 1.0, f, m_excited, -q, -m);
    return parity(m) * std::sqrt((2.0 * f_prime + 1.0) * (2.0 * kJ + 1.0) * (2.0 * f + 1.0)) *
           hf * tj;
}

double cycling_norm(int f) {
    return std::abs(raw_weight(f, f, f + 1, +1));
}

void check_pole(const LevelScheme& scheme, double delta_ca_mhz) {
    for (const auto& man : scheme.manifolds) {
        if (std::abs(delta_ca_mhz - man.offset_mhz) < kPoleToleranceMhz) {
            throw SingularityError("detuning " + std::to_string(delta_ca_mhz) +
                                   " MHz coincides with the F'=" + std::to_string(man.f_prime) +
                                   " resonance at " + std::to_string(man.offset_mhz) + " MHz");
        }
    }
}

void check_m(const LevelScheme& scheme, int m) {
    if (std::abs(m) > scheme.ground_f) {
        throw std::invalid_argument("Zeeman index m=" + std::to_string(m) +
                                    " outside ground manifold F=" +
                                    std::to_string(scheme.ground_f));
    }
}

// Sum over manifolds of the squared pi matrix elements from |F,m>.
// For the full D2 scheme this is m-independent (2/3 in cycling units).
double pi_strength(const LevelScheme& scheme, int m) {
    double sum = 0.0;
    for (const auto& man : scheme.manifolds) {
        const double w = dipole_weight(scheme.ground_f, m, man.f_prime, 0);
        sum += w * w;
    }
    return sum;
}

}  // namespace

LevelScheme LevelScheme::rb87_d2() {
    LevelScheme s;
    s.ground_f = 2;
    s.manifolds = {{3, 0.0}, {2, -266.65}, {1, -(266.65 + 156.95)}};
    s.gamma_mhz = 3.0;
    return s;
}

LevelScheme LevelScheme::two_level(double gamma_mhz) {
    LevelScheme s;
    s.ground_f = 2;
    s.manifolds = {{3, 0.0}};
    s.gamma_mhz = gamma_mhz;
    s.ideal_two_level = true;
    return s;
}

void LevelScheme::validate() const {
    if (ground_f < 1) throw ConfigError("LevelScheme: ground_F must be >= 1");
    if (gamma_mhz <= 0) throw ConfigError("LevelScheme: gamma must be positive");
    if (manifolds.empty()) throw ConfigError("LevelScheme: no excited manifolds");
    if (ideal_two_level) return;

    std::vector<ExcitedManifold> sorted = manifolds;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.f_prime > b.f_prime; });
    if (sorted.front().offset_mhz != 0.0) {
        throw ConfigError("LevelScheme: the highest-F' manifold must sit at offset 0");
    }
    for (size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].f_prime == sorted[i - 1].f_prime) {
            throw ConfigError("LevelScheme: duplicate F' manifold");
        }
        if (sorted[i].offset_mhz >= sorted[i - 1].offset_mhz) {
            throw ConfigError("LevelScheme: manifold offsets must decrease with F'");
        }
    }
    for (const auto& man : manifolds) {
        if (man.f_prime < 0 || man.f_prime > 3) {
            throw ConfigError("LevelScheme: F'=" + std::to_string(man.f_prime) +
                              " outside the J'=3/2, I=3/2 manifold range");
        }
    }
}

LevelScheme scheme_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scheme JSON parse error: ") + e.what());
    }
    LevelScheme s = LevelScheme::rb87_d2();
    try {
        if (j.contains("ground_F")) s.ground_f = j.at("ground_F").get<int>();
        if (j.contains("gamma_MHz")) s.gamma_mhz = j.at("gamma_MHz").get<double>();
        if (j.contains("manifolds")) {
            s.manifolds.clear();
            for (const auto& jm : j.at("manifolds")) {
                s.manifolds.push_back(
                    {jm.at("Fprime").get<int>(), jm.at("offset_MHz").get<double>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scheme JSON field error: ") + e.what());
    }
    s.validate();
    return s;
}

std::string scheme_to_json(const LevelScheme& scheme) {
    nlohmann::json j;
    j["ground_F"] = scheme.ground_f;
    j["gamma_MHz"] = scheme.gamma_mhz;
    j["manifolds"] = nlohmann::json::array();
    for (const auto& man : scheme.manifolds) {
        j["manifolds"].push_back({{"Fprime", man.f_prime}, {"offset_MHz", man.offset_mhz}});
    }
    return j.dump();
}

double dipole_weight(int f, int m, int f_prime, int q) {
    if (q < -1 || q > 1) throw std::invalid_argument("dipole_weight: |q| must be <= 1");
    if (f < 1 || f > 2) {
        throw std::invalid_argument("dipole_weight: ground F must be 1 or 2 on the D2 line");
    }
    if (f_prime < 0 || f_prime > 3) {
        throw std::invalid_argument("dipole_weight: F' must be in 0..3 on the D2 line");
    }
    if (std::abs(m) > f) return 0.0;
    // Canonicalize to m >= 0 so the m <-> -m reflection symmetry is exact:
    // w(F,-m,F',-q) = (-1)^{F+F'+1} w(F,m,F',q).
    if (m < 0 || (m == 0 && q < 0)) {
        return parity(f + f_prime + 1) * dipole_weight(f, -m, f_prime, -q);
    }
    static const double norm2 = cycling_norm(2);
    static const double norm1 = cycling_norm(1);
    return raw_weight(f, m, f_prime, q) / (f == 2 ? norm2 : norm1);
}

double rayleigh_amplitude(const LevelScheme& scheme, int m, double delta_ca_mhz) {
    check_m(scheme, m);
    check_pole(scheme, delta_ca_mhz);
    if (scheme.ideal_two_level) return 1.0 / delta_ca_mhz;
    const double p = pi_strength(scheme, m);
    if (p <= 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& man : scheme.manifolds) {
        const double w = dipole_weight(scheme.ground_f, m, man.f_prime, 0);
        sum += w * w / (delta_ca_mhz - man.offset_mhz);
    }
    return sum / p;
}

double raman_amplitude(const LevelScheme& scheme, int m, int delta_m, double delta_ca_mhz) {
    check_m(scheme, m);
    check_pole(scheme, delta_ca_mhz);
    if (delta_m != 1 && delta_m != -1) {
        throw std::invalid_argument("raman_amplitude: delta_m must be +-1");
    }
    if (scheme.ideal_two_level) return 0.0;
    const int m_final = m + delta_m;
    if (std::abs(m_final) > scheme.ground_f) return 0.0;
    const double p = pi_strength(scheme, m);
    if (p <= 0.0) return 0.0;
    // y = (sigma- - sigma+)/sqrt(2); emission lowering m by delta_m carries
    // the spherical component -delta_m.
    const double proj = (delta_m == 1 ? 1.0 : -1.0) / std::sqrt(2.0);
    double sum = 0.0;
    for (const auto& man : scheme.manifolds) {
        const double w_abs = dipole_weight(scheme.ground_f, m, man.f_prime, 0);
        const double w_emit = dipole_weight(scheme.ground_f, m_final, man.f_prime, -delta_m);
        sum += w_abs * w_emit / (delta_ca_mhz - man.offset_mhz);
    }
    return proj * sum / p;
}

double dispersion_weight(const LevelScheme& scheme, int m, double delta_ca_mhz) {
    return rayleigh_amplitude(scheme, m, delta_ca_mhz);
}

double absorption_weight(const LevelScheme& scheme, int m, double delta_ca_mhz) {
    check_m(scheme, m);
    check_pole(scheme, delta_ca_mhz);
    if (scheme.ideal_two_level) return 1.0 / (delta_ca_mhz * delta_ca_mhz);
    const double p = pi_strength(scheme, m);
    if (p <= 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& man : scheme.manifolds) {
        const double w = dipole_weight(scheme.ground_f, m, man.f_prime, 0);
        const double den = delta_ca_mhz - man.offset_mhz;
        sum += w * w / (den * den);
    }
    return sum / p;
}

std::array<ChannelAmplitude, 3> channel_amplitudes(const LevelScheme& scheme, int m,
                                                   double delta_ca_mhz) {
    std::array<ChannelAmplitude, 3> out;
    out[0] = {raman_amplitude(scheme, m, -1, delta_ca_mhz), -1, EmitPolarization::Y, m};
    out[1] = {rayleigh_amplitude(scheme, m, delta_ca_mhz), 0, EmitPolarization::Z, m};
    out[2] = {raman_amplitude(scheme, m, +1, delta_ca_mhz), +1, EmitPolarization::Y, m};
    return out;
}

double rayleigh_spread(const LevelScheme& scheme, double delta_ca_mhz) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double mean = 0.0;
    for (int m = -scheme.ground_f; m <= scheme.ground_f; ++m) {
        const double a = rayleigh_amplitude(scheme, m, delta_ca_mhz);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        mean += a;
    }
    mean /= scheme.n_zeeman();
    if (mean == 0.0) return 0.0;
    return (hi - lo) / std::abs(mean);
}

double raman_rayleigh_ratio(const LevelScheme& scheme, double delta_ca_mhz) {
    double raman = 0.0, rayleigh = 0.0;
    for (int m = -scheme.ground_f; m <= scheme.ground_f; ++m) {
        const double a0 = rayleigh_amplitude(scheme, m, delta_ca_mhz);
        const double ap = raman_amplitude(scheme, m, +1, delta_ca_mhz);
        const double am = raman_amplitude(scheme, m, -1, delta_ca_mhz);
        rayleigh += a0 * a0;
        raman += ap * ap + am * am;
    }
    if (rayleigh == 0.0) return 0.0;
    return raman / rayleigh;
}

MagicResult find_magic_detuning(const LevelScheme& scheme, double lo_mhz, double hi_mhz) {
    if (!(lo_mhz < hi_mhz)) {
        throw std::invalid_argument("find_magic_detuning: empty search interval");
    }
    for (const auto& man : scheme.manifolds) {
        if (man.offset_mhz >= lo_mhz && man.offset_mhz <= hi_mhz) {
            throw std::invalid_argument("find_magic_detuning: interval contains the F'=" +
                                        std::to_string(man.f_prime) + " pole");
        }
    }

    const auto objective = [&](double d) { return rayleigh_spread(scheme, d); };

    // Bracketed scan on a 1 MHz grid.
    constexpr double kStep = 1.0;
    std::vector<double> xs, fs;
    for (double x = lo_mhz + kStep; x < hi_mhz; x += kStep) {
        xs.push_back(x);
        fs.push_back(objective(x));
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("find_magic_detuning: interval too narrow for a 1 MHz scan");
    }

    const auto [min_it, max_it] = std::minmax_element(fs.begin(), fs.end());
    if (*max_it - *min_it <= 1e-12 * std::max(1e-300, std::abs(*max_it))) {
        throw NoMinimumError(
            "find_magic_detuning: objective is independent of detuning (degenerate scheme)");
    }
    const size_t best = static_cast<size_t>(min_it - fs.begin());
    if (best == 0 || best + 1 == xs.size()) {
        throw NoMinimumError("find_magic_detuning: no interior minimum in the search interval");
    }

    // Golden-section refinement to 0.01 MHz.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = xs[best - 1], b = xs[best + 1];
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 0.01) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, objective(x), raman_rayleigh_ratio(scheme, x)};
}

}  // namespace cavarray
