#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace cavarray {

/// Scattering model used by eta / cavity_field: ideal two-level emitter,
/// or the full hyperfine manifold structure.
enum class ScatterModel { TwoLevel, Multilevel };

struct ExcitedManifold {
    int f_prime = 0;
    double offset_mhz = 0.0;  // relative to the highest-F' resonance (<= 0)
};

/// Hyperfine level structure of the scatterer: ground manifold F, excited
/// manifolds F' with their frequency offsets, and the excited-state
/// half-linewidth gamma. Channel weights are derived from the quantum
/// numbers (D2-line J=1/2 -> J'=3/2, I=3/2) and normalized to the cycling
/// transition.
struct LevelScheme {
    int ground_f = 2;
    std::vector<ExcitedManifold> manifolds;
    double gamma_mhz = 3.0;
    /// Ideal two-level scheme: a single resonance with unit weight and no
    /// Raman channels. Used for degenerate-objective tests of the magic
    /// solver; the ScatterModel::TwoLevel code path does not need it.
    bool ideal_two_level = false;

    /// Rb87 D2 defaults: F=2 ground, F'=3,2,1 at 0 / -266.65 / -423.60 MHz,
    /// gamma = 3.0 MHz.
    static LevelScheme rb87_d2();
    static LevelScheme two_level(double gamma_mhz = 3.0);

    int n_zeeman() const { return 2 * ground_f + 1; }
    void validate() const;  // throws ConfigError on invariant violations
};

/// Parse a scheme from a JSON document with fields
/// {ground_F, manifolds: [{Fprime, offset_MHz}, ...], gamma_MHz}.
LevelScheme scheme_from_json(const std::string& text);
std::string scheme_to_json(const LevelScheme& scheme);

enum class EmitPolarization { Z, Y };

/// One two-photon scattering channel from ground state m: pi absorption
/// followed by emission that changes m by delta_m (0: z-polarized cavity
/// mode; +-1: the two sigma components of the y-polarized mode).
struct ChannelAmplitude {
    std::complex<double> value;  // MHz^-1
    int delta_m = 0;
    EmitPolarization emit_polarization = EmitPolarization::Z;
    int m_initial = 0;
};

/// Relative dipole matrix element for the |F,m> <-> |F', m+q> transition of
/// the D2 line (J=1/2 -> J'=3/2, I=3/2), Condon-Shortley signs, normalized
/// so that |dipole_weight(F, F, F+1, +1)| = 1 (cycling transition).
/// Selection-rule-violating inputs return 0. Throws std::invalid_argument
/// for quantum numbers outside the line (F not in {1,2}, F' not in {0..3},
/// |q| > 1).
double dipole_weight(int f, int m, int f_prime, int q);

/// The three two-photon channel amplitudes (delta_m = -1, 0, +1) for a
/// z-driven atom in ground state m at atom-cavity detuning delta_ca.
/// Amplitudes are normalized by the m-resolved pi-strength sum so that the
/// far-detuned delta_m=0 amplitude tends to 1/delta_ca (two-level limit);
/// for an ideal two-level scheme the delta_m=0 amplitude is exactly
/// 1/delta_ca. The y-mode decomposition uses y = (sigma- - sigma+)/sqrt(2).
/// Throws SingularityError within 1e-6 MHz of any manifold resonance.
std::array<ChannelAmplitude, 3> channel_amplitudes(const LevelScheme& scheme, int m,
                                                   double delta_ca_mhz);

/// Real-valued channel sums (the amplitudes are real for real detunings).
double rayleigh_amplitude(const LevelScheme& scheme, int m, double delta_ca_mhz);
double raman_amplitude(const LevelScheme& scheme, int m, int delta_m, double delta_ca_mhz);

/// Per-atom dispersive / absorptive response weights entering the cavity
/// denominator: shift contribution g^2 * dispersion_weight, broadening
/// contribution gamma * g^2 * absorption_weight. Two-level values are
/// 1/delta and 1/delta^2.
double dispersion_weight(const LevelScheme& scheme, int m, double delta_ca_mhz);
double absorption_weight(const LevelScheme& scheme, int m, double delta_ca_mhz);

/// Relative spread (max-min over m, divided by |mean|) of the delta_m=0
/// amplitude across the ground manifold.
double rayleigh_spread(const LevelScheme& scheme, double delta_ca_mhz);

/// Raman/Rayleigh intensity ratio averaged uniformly over m.
double raman_rayleigh_ratio(const LevelScheme& scheme, double delta_ca_mhz);

struct MagicResult {
    double detuning_mhz = 0.0;
    double spread = 0.0;          // residual relative spread at the optimum
    double raman_rayleigh = 0.0;  // Raman/Rayleigh intensity ratio at the optimum
};

/// Detuning in (lo, hi) minimizing rayleigh_spread: 1 MHz bracketed scan
/// followed by golden-section refinement to 0.01 MHz. Throws
/// std::invalid_argument if the interval contains a manifold pole,
/// NoMinimumError if the objective is degenerate or has no interior minimum.
MagicResult find_magic_detuning(const LevelScheme& scheme, double lo_mhz, double hi_mhz);

}  // namespace cavarray
