#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavarray/angular.hpp"
#include "cavarray/errors.hpp"
#include "cavarray/rng.hpp"
#include "cavarray/polarization.hpp"
#include "cavarray/spectra.hpp"
#include "cavarray/version.hpp"

namespace py = pybind11;
using namespace cavarray;

PYBIND11_MODULE(_cavarray, m) {
    m.doc() = "Collective cavity scattering by one-dimensional atom arrays";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::enum_<ScatterModel>(m, "ScatterModel")
        .value("TWO_LEVEL", ScatterModel::TwoLevel)
        .value("MULTILEVEL", ScatterModel::Multilevel);

    py::enum_<CavityModification>(m, "CavityModification")
        .value("INCLUDE", CavityModification::Include)
        .value("NEGLECT", CavityModification::Neglect);

    py::class_<ExcitedManifold>(m, "ExcitedManifold")
        .def(py::init<int, double>(), py::arg("f_prime"), py::arg("offset_mhz"))
        .def_readwrite("f_prime", &ExcitedManifold::f_prime)
        .def_readwrite("offset_mhz", &ExcitedManifold::offset_mhz);

    py::class_<LevelScheme>(m, "LevelScheme")
        .def(py::init<>())
        .def_static("rb87_d2", &LevelScheme::rb87_d2)
        .def_static("two_level", &LevelScheme::two_level, py::arg("gamma_mhz") = 3.0)
        .def_readwrite("ground_f", &LevelScheme::ground_f)
        .def_readwrite("manifolds", &LevelScheme::manifolds)
        .def_readwrite("gamma_mhz", &LevelScheme::gamma_mhz)
        .def_readwrite("ideal_two_level", &LevelScheme::ideal_two_level)
        .def("validate", &LevelScheme::validate)
        .def("n_zeeman", &LevelScheme::n_zeeman);

    m.def("scheme_from_json", &scheme_from_json, py::arg("text"));
    m.def("scheme_to_json", &scheme_to_json, py::arg("scheme"));

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<>())
        .def_readwrite("g0_mhz", &CavityParams::g0_mhz)
        .def_readwrite("kappa_mhz", &CavityParams::kappa_mhz)
        .def_readwrite("lambda_nm", &CavityParams::lambda_nm)
        .def_readwrite("delta_ca_mhz", &CavityParams::delta_ca_mhz)
        .def("wavenumber", &CavityParams::wavenumber)
        .def("cooperativity", &CavityParams::cooperativity, py::arg("gamma_mhz"));

    py::class_<DriveParams>(m, "DriveParams")
        .def(py::init<>())
        .def_readwrite("omega0_mhz", &DriveParams::omega0_mhz)
        .def_readwrite("delta_pc_mhz", &DriveParams::delta_pc_mhz);

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def(py::init<>())
        .def_readwrite("n_atoms", &ArrayGeometry::n_atoms)
        .def_readwrite("spacing_nm", &ArrayGeometry::spacing_nm)
        .def_readwrite("offset_nm", &ArrayGeometry::offset_nm)
        .def_readwrite("y_offset_nm", &ArrayGeometry::y_offset_nm)
        .def_readwrite("sigma_nm", &ArrayGeometry::sigma_nm)
        .def("nominal_x", &ArrayGeometry::nominal_x)
        .def("validate", &ArrayGeometry::validate);

    py::class_<Atom>(m, "Atom")
        .def(py::init<double, double, int>(), py::arg("x_nm"), py::arg("y_nm"), py::arg("m"))
        .def_readwrite("x_nm", &Atom::x_nm)
        .def_readwrite("y_nm", &Atom::y_nm)
        .def_readwrite("m", &Atom::m);

    py::class_<AtomSample>(m, "AtomSample")
        .def(py::init<>())
        .def_readwrite("atoms", &AtomSample::atoms);

    py::class_<MfDistribution>(m, "MfDistribution")
        .def_static("uniform", &MfDistribution::uniform)
        .def_static("fixed", &MfDistribution::fixed, py::arg("m"))
        .def_static("custom", &MfDistribution::custom, py::arg("weights"));

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &McConfig::n_samples)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("mf", &McConfig::mf);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("n_samples", &McEstimate::n_samples)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) +
                   ", std_error=" + std::to_string(e.std_error) + ")";
        });

    py::class_<ChannelAmplitude>(m, "ChannelAmplitude")
        .def_readonly("value", &ChannelAmplitude::value)
        .def_readonly("delta_m", &ChannelAmplitude::delta_m)
        .def_readonly("m_initial", &ChannelAmplitude::m_initial)
        .def_property_readonly("emit_polarization", [](const ChannelAmplitude& c) {
            return c.emit_polarization == EmitPolarization::Z ? "z" : "y";
        });

    py::class_<MagicResult>(m, "MagicResult")
        .def_readonly("detuning_mhz", &MagicResult::detuning_mhz)
        .def_readonly("spread", &MagicResult::spread)
        .def_readonly("raman_rayleigh", &MagicResult::raman_rayleigh);

    py::class_<CavityField>(m, "CavityField")
        .def_readonly("abar", &CavityField::abar)
        .def_readonly("n", &CavityField::n)
        .def_readonly("shift_mhz", &CavityField::shift_mhz)
        .def_readonly("broadening_mhz", &CavityField::broadening_mhz)
        .def_readonly("n_raman", &CavityField::n_raman);

    py::class_<EtaChannels>(m, "EtaChannels")
        .def_readonly("z", &EtaChannels::z)
        .def_readonly("y_plus", &EtaChannels::y_plus)
        .def_readonly("y_minus", &EtaChannels::y_minus)
        .def("raman_intensity", &EtaChannels::raman_intensity);

    py::class_<SpectrumPoint>(m, "SpectrumPoint")
        .def_readonly("delta_pc_mhz", &SpectrumPoint::delta_pc_mhz)
        .def_readonly("n", &SpectrumPoint::n);

    py::class_<SpectrumCurve>(m, "SpectrumCurve")
        .def(py::init<>())
        .def_readwrite("points", &SpectrumCurve::points);

    py::class_<LorentzianFit>(m, "LorentzianFit")
        .def_readonly("amplitude", &LorentzianFit::amplitude)
        .def_readonly("center_mhz", &LorentzianFit::center_mhz)
        .def_readonly("hwhm_mhz", &LorentzianFit::hwhm_mhz)
        .def_readonly("residual", &LorentzianFit::residual)
        .def_readonly("iterations", &LorentzianFit::iterations);

    py::class_<TransmissionPoint>(m, "TransmissionPoint")
        .def_readonly("theta_deg", &TransmissionPoint::theta_deg)
        .def_readonly("transmission", &TransmissionPoint::transmission)
        .def_readonly("std_error", &TransmissionPoint::std_error);

    py::class_<PolarizationResult>(m, "PolarizationResult")
        .def_readonly("i_z", &PolarizationResult::i_z)
        .def_readonly("i_y", &PolarizationResult::i_y)
        .def_readonly("i_z_std_error", &PolarizationResult::i_z_std_error)
        .def_readonly("i_y_std_error", &PolarizationResult::i_y_std_error)
        .def_readonly("transmission", &PolarizationResult::transmission)
        .def("y_fraction", &PolarizationResult::y_fraction)
        .def("z_fraction", &PolarizationResult::z_fraction);

    m.def("wigner3j", &wigner3j, py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("m1"),
          py::arg("m2"), py::arg("m3"));
    m.def("wigner6j", &wigner6j, py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("j4"),
          py::arg("j5"), py::arg("j6"));
    m.def("dipole_weight", &dipole_weight, py::arg("f"), py::arg("m"), py::arg("f_prime"),
          py::arg("q"));
    m.def("channel_amplitudes", &channel_amplitudes, py::arg("scheme"), py::arg("m"),
          py::arg("delta_ca_mhz"));
    m.def("rayleigh_amplitude", &rayleigh_amplitude);
    m.def("raman_amplitude", &raman_amplitude);
    m.def("rayleigh_spread", &rayleigh_spread);
    m.def("raman_rayleigh_ratio", &raman_rayleigh_ratio);
    m.def("find_magic_detuning", &find_magic_detuning, py::arg("scheme"), py::arg("lo_mhz"),
          py::arg("hi_mhz"));

    m.def("mode_coupling", &mode_coupling, py::arg("x_nm"), py::arg("cavity"));
    m.def("drive_rabi", &drive_rabi, py::arg("y_nm"), py::arg("drive"), py::arg("cavity"));
    m.def("eta", &eta, py::arg("atom"), py::arg("cavity"), py::arg("drive"), py::arg("scheme"),
          py::arg("model"));
    m.def("low_saturation", &low_saturation);

    m.def("cavity_field", &cavity_field, py::arg("sample"), py::arg("cavity"), py::arg("drive"),
          py::arg("scheme"), py::arg("model"),
          py::arg("modification") = CavityModification::Include);
    m.def("exact_linear_response", &exact_linear_response, py::arg("sample"), py::arg("cavity"),
          py::arg("drive"), py::arg("gamma_mhz"));
    m.def("dispersive_regime", &dispersive_regime);

    m.def("debye_waller", &debye_waller, py::arg("sigma_nm"), py::arg("k_per_nm"));
    m.def("mean_cos", &mean_cos);
    m.def("mean_cos_sq", &mean_cos_sq);
    m.def("analytic_constructive", &analytic_constructive, py::arg("n"), py::arg("geometry"),
          py::arg("cavity"), py::arg("drive"));
    m.def("analytic_destructive", &analytic_destructive, py::arg("n"), py::arg("geometry"),
          py::arg("cavity"), py::arg("drive"));
    m.def("mc_photon_number", &mc_photon_number, py::arg("geometry"), py::arg("cavity"),
          py::arg("drive"), py::arg("scheme"), py::arg("mc"), py::arg("model"),
          py::arg("modification") = CavityModification::Include, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "sample_atoms",
        [](const ArrayGeometry& geom, const LevelScheme& scheme, const MfDistribution& mf,
           std::uint64_t seed, std::uint64_t index) {
            SampleRng rng(seed, index);
            return sample_atoms(geom, scheme, mf, rng);
        },
        py::arg("geometry"), py::arg("scheme"), py::arg("mf"), py::arg("seed"),
        py::arg("index"));
    m.def("dispersion_weight", &dispersion_weight);
    m.def("absorption_weight", &absorption_weight);

    m.def("predicted_center", &predicted_center);
    m.def("default_grid", &default_grid, py::arg("center_mhz"), py::arg("half_span_mhz") = 3.0,
          py::arg("n_points") = 41);
    m.def("sweep_spectrum", &sweep_spectrum, py::arg("grid_mhz"), py::arg("geometry"),
          py::arg("cavity"), py::arg("drive"), py::arg("scheme"), py::arg("mc"), py::arg("model"),
          py::arg("modification") = CavityModification::Include, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("lorentzian_fit", &lorentzian_fit, py::arg("curve"));

    m.def("polarization_decompose", &polarization_decompose, py::arg("geometry"),
          py::arg("cavity"), py::arg("drive"), py::arg("scheme"), py::arg("mc"),
          py::arg("model") = ScatterModel::Multilevel,
          py::arg("modification") = CavityModification::Include, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
}
