#include <doctest.h>

#include <cmath>

#include "cavarray/montecarlo.hpp"

using namespace cavarray;

TEST_SUITE_BEGIN("montecarlo");

namespace {

const LevelScheme kScheme = LevelScheme::rb87_d2();

ArrayGeometry make_geom(int n, double spacing_nm, double sigma_nm, double offset_nm = 0.0) {
    ArrayGeometry g;
    g.n_atoms = n;
    g.spacing_nm = spacing_nm;
    g.offset_nm = offset_nm;
    g.sigma_nm = sigma_nm;
    return g;
}

McConfig make_mc(long samples, std::uint64_t seed,
                 MfDistribution mf = MfDistribution::fixed(0)) {
    McConfig mc;
    mc.n_samples = samples;
    mc.seed = seed;
    mc.mf = std::move(mf);
    return mc;
}

// Simpson quadrature over the Gaussian: independent check of the analytic
// moments behind the Debye-Waller factor.
double quad_mean(double (*f)(double), double k, double sigma) {
    const int n = 4000;
    const double lo = -8.0 * sigma, hi = 8.0 * sigma;
    const double h = (hi - lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double gauss = std::exp(-x * x / (2.0 * sigma * sigma)) /
                             (sigma * std::sqrt(2.0 * M_PI));
        sum += w * gauss * f(k * x);
    }
    return sum * h / 3.0;
}

double cos_of(double u) { return std::cos(u); }
double cos2_of(double u) { return std::cos(u) * std::cos(u); }

}  // namespace

TEST_CASE("debye-waller limits and frozen value") {
    const double k = 2.0 * M_PI / 780.0;
    CHECK(debye_waller(0.0, k) == 1.0);
    CHECK(debye_waller(1e6, k) < 1e-10);
    CHECK(debye_waller(100.0, k) == doctest::Approx(0.67404842012868).epsilon(1e-10));
}

TEST_CASE("debye-waller against quadrature of the Gaussian averages") {
    const double k = 2.0 * M_PI / 780.0;
    const double sigma = 100.0;
    const double mc = quad_mean(cos_of, k, sigma);
    const double mc2 = quad_mean(cos2_of, k, sigma);
    CHECK(mean_cos(k, 0.0, sigma) == doctest::Approx(mc).epsilon(1e-10));
    CHECK(mean_cos_sq(k, 0.0, sigma) == doctest::Approx(mc2).epsilon(1e-10));
    const double d_quad = (mc * mc * mc * mc) / (mc2 * mc2);
    CHECK(debye_waller(sigma, k) == doctest::Approx(d_quad).epsilon(1e-8));
}

TEST_CASE("sample_atoms: zero sigma and fixed m reproduce the lattice") {
    const auto geom = make_geom(4, 3900.0, 0.0);
    SampleRng rng(7, 0);
    const auto sample = sample_atoms(geom, kScheme, MfDistribution::fixed(1), rng);
    REQUIRE(sample.atoms.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(sample.atoms[i].x_nm == geom.nominal_x(i));
        CHECK(sample.atoms[i].y_nm == 0.0);
        CHECK(sample.atoms[i].m == 1);
    }
}

TEST_CASE("sample_atoms: position variance matches sigma^2") {
    const auto geom = make_geom(1, 0.0, 100.0);
    const long n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
        SampleRng rng(42, i);
        const auto s = sample_atoms(geom, kScheme, MfDistribution::uniform(), rng);
        sum += s.atoms[0].x_nm;
        sumsq += s.atoms[0].x_nm * s.atoms[0].x_nm;
    }
    const double var = sumsq / n - (sum / n) * (sum / n);
    CHECK(var == doctest::Approx(100.0 * 100.0).epsilon(0.03));
}

TEST_CASE("sample_atoms: uniform m frequencies") {
    const auto geom = make_geom(1, 0.0, 0.0);
    const long n = 100000;
    int counts[5] = {};
    for (long i = 0; i < n; ++i) {
        SampleRng rng(3, i);
        const auto s = sample_atoms(geom, kScheme, MfDistribution::uniform(), rng);
        ++counts[s.atoms[0].m + 2];
    }
    const double tol = 3.0 * std::sqrt(0.2 * 0.8 / n);
    for (int c : counts) {
        CHECK(static_cast<double>(c) / n == doctest::Approx(0.2).epsilon(tol / 0.2));
    }
}

TEST_CASE("sample_atoms: custom weights hit only allowed states") {
    const auto geom = make_geom(1, 0.0, 0.0);
    auto dist = MfDistribution::custom({0.0, 0.0, 1.0, 0.0, 3.0});
    dist.validate(2);
    int seen[5] = {};
    for (long i = 0; i < 2000; ++i) {
        SampleRng rng(9, i);
        const auto s = sample_atoms(geom, kScheme, dist, rng);
        ++seen[s.atoms[0].m + 2];
    }
    CHECK(seen[0] == 0);
    CHECK(seen[1] == 0);
    CHECK(seen[3] == 0);
    CHECK(seen[2] > 0);
    CHECK(seen[4] > 2 * seen[2]);
}

TEST_CASE("deterministic streams: same (seed, index) -> same sample") {
    const auto geom = make_geom(3, 3900.0, 100.0);
    SampleRng a(123, 77), b(123, 77), c(123, 78);
    const auto sa = sample_atoms(geom, kScheme, MfDistribution::uniform(), a);
    const auto sb = sample_atoms(geom, kScheme, MfDistribution::uniform(), b);
    const auto sc = sample_atoms(geom, kScheme, MfDistribution::uniform(), c);
    for (int i = 0; i < 3; ++i) {
        CHECK(sa.atoms[i].x_nm == sb.atoms[i].x_nm);
        CHECK(sa.atoms[i].m == sb.atoms[i].m);
    }
    CHECK(sa.atoms[0].x_nm != sc.atoms[0].x_nm);
}

TEST_CASE("mc mean is bitwise independent of the thread count") {
    const auto geom = make_geom(4, 3900.0, 100.0);
    const auto mc = make_mc(20000, 0xC0FFEE, MfDistribution::uniform());
    const CavityParams cav;
    const McEstimate one = mc_photon_number(geom, cav, DriveParams{}, kScheme, mc,
                                            ScatterModel::Multilevel,
                                            CavityModification::Include, 1);
    for (int threads : {2, 8}) {
        const McEstimate many = mc_photon_number(geom, cav, DriveParams{}, kScheme, mc,
                                                 ScatterModel::Multilevel,
                                                 CavityModification::Include, threads);
        CHECK(one.mean == many.mean);
        CHECK(one.std_error == many.std_error);
    }
}

TEST_CASE("sigma=0 fixed m: the estimate equals a single evaluation") {
    const auto geom = make_geom(3, 3900.0, 0.0);
    const auto mc = make_mc(500, 11, MfDistribution::fixed(2));
    const CavityParams cav;
    const McEstimate est = mc_photon_number(geom, cav, DriveParams{}, kScheme, mc,
                                            ScatterModel::Multilevel);
    AtomSample sample;
    for (int i = 0; i < 3; ++i) sample.atoms.push_back({geom.nominal_x(i), 0.0, 2});
    const CavityField field =
        cavity_field(sample, cav, DriveParams{}, kScheme, ScatterModel::Multilevel);
    // All samples are identical; the mean differs only by summation rounding
    // and the variance estimate only by cancellation noise.
    CHECK(est.mean == doctest::Approx(field.n + field.n_raman).epsilon(1e-14));
    CHECK(est.std_error < 1e-7 * est.mean);
}

TEST_CASE("constructive N^2 scaling at zero sigma") {
    CavityParams cav;
    cav.delta_ca_mhz = -1e7;
    const auto mc = make_mc(200, 5);
    const double n1 = mc_photon_number(make_geom(1, 3900.0, 0.0), cav, DriveParams{}, kScheme,
                                       mc, ScatterModel::TwoLevel,
                                       CavityModification::Neglect).mean;
    for (int n : {2, 4, 8}) {
        const double nn = mc_photon_number(make_geom(n, 3900.0, 0.0), cav, DriveParams{},
                                           kScheme, mc, ScatterModel::TwoLevel,
                                           CavityModification::Neglect).mean;
        CHECK(nn / n1 == doctest::Approx(static_cast<double>(n) * n).epsilon(1e-12));
    }
}

TEST_CASE("destructive even-N cancellation is exact at zero sigma") {
    CavityParams cav;
    const auto mc = make_mc(200, 5);
    for (int n : {2, 4, 8}) {
        const double nn = mc_photon_number(make_geom(n, 4290.0, 0.0), cav, DriveParams{},
                                           kScheme, mc, ScatterModel::TwoLevel,
                                           CavityModification::Neglect).mean;
        CHECK(nn == 0.0);
    }
}

TEST_CASE("analytic formulas: closed-form special cases") {
    const CavityParams cav;
    const DriveParams drv;
    const double eta0 = cav.g0_mhz * drv.omega0_mhz / (2.0 * cav.delta_ca_mhz);
    const double kappa2 = cav.kappa_mhz * cav.kappa_mhz;

    const auto frozen = make_geom(4, 5 * 780.0, 0.0);
    CHECK(analytic_constructive(4, frozen, cav, drv) ==
          doctest::Approx(16.0 * eta0 * eta0 / kappa2).epsilon(1e-12));
    CHECK(analytic_destructive(4, make_geom(4, 5.5 * 780.0, 0.0), cav, drv) == 0.0);
    CHECK(analytic_destructive(3, make_geom(3, 5.5 * 780.0, 0.0), cav, drv) ==
          doctest::Approx(eta0 * eta0 / kappa2).epsilon(1e-12));

    // N=1 equals <|eta|^2>/kappa^2.
    const auto thermal = make_geom(1, 5 * 780.0, 100.0);
    const double k = cav.wavenumber();
    const double c2 = mean_cos_sq(k, 0.0, 100.0);
    CHECK(analytic_constructive(1, thermal, cav, drv) ==
          doctest::Approx(eta0 * eta0 * c2 * c2 / kappa2).epsilon(1e-12));
}

TEST_CASE("analytic formulas reject bad geometries") {
    const CavityParams cav;
    const DriveParams drv;
    CHECK_THROWS_AS(analytic_constructive(2, make_geom(2, 4290.0, 0.0), cav, drv),
                    std::invalid_argument);
    CHECK_THROWS_AS(analytic_destructive(2, make_geom(2, 3900.0, 0.0), cav, drv),
                    std::invalid_argument);
    CHECK_THROWS_AS(analytic_constructive(2, make_geom(2, 3900.0, 0.0, 50.0), cav, drv),
                    std::invalid_argument);
    DriveParams off;
    off.delta_pc_mhz = 0.1;
    CHECK_THROWS_AS(analytic_constructive(2, make_geom(2, 3900.0, 0.0), cav, off),
                    std::invalid_argument);
}

TEST_CASE("MC agrees with the closed forms within 3 stderr for N=1..8") {
    CavityParams cav;
    cav.delta_ca_mhz = -1e6;  // atom-induced modification negligible
    const DriveParams drv;
    for (int n = 1; n <= 8; ++n) {
        const auto cgeom = make_geom(n, 5 * 780.0, 100.0);
        const auto mc = make_mc(40000, 2024 + n);
        const McEstimate est = mc_photon_number(cgeom, cav, drv, kScheme, mc,
                                                ScatterModel::TwoLevel,
                                                CavityModification::Include);
        const double analytic = analytic_constructive(n, cgeom, cav, drv);
        CAPTURE(n);
        CHECK(std::abs(est.mean - analytic) <= 3.0 * est.std_error);

        const auto dgeom = make_geom(n, 5.5 * 780.0, 100.0);
        const McEstimate dest = mc_photon_number(dgeom, cav, drv, kScheme, mc,
                                                 ScatterModel::TwoLevel,
                                                 CavityModification::Include);
        const double danalytic = analytic_destructive(n, dgeom, cav, drv);
        CHECK(std::abs(dest.mean - danalytic) <= 3.0 * dest.std_error);
    }
}

TEST_CASE("node-aligned arrays scatter linearly in N") {
    CavityParams cav;
    cav.delta_ca_mhz = -1e6;
    const double node = 780.0 / 4.0;
    const auto mc = make_mc(40000, 99);
    const McEstimate n1 = mc_photon_number(make_geom(1, 3900.0, 100.0, node), cav, DriveParams{},
                                           kScheme, mc, ScatterModel::TwoLevel,
                                           CavityModification::Include);
    for (int n : {2, 4, 8}) {
        const McEstimate est = mc_photon_number(make_geom(n, 3900.0, 100.0, node), cav,
                                                DriveParams{}, kScheme, mc,
                                                ScatterModel::TwoLevel,
                                                CavityModification::Include);
        const double ratio = est.mean / (n * n1.mean);
        const double err = ratio * std::sqrt(std::pow(est.std_error / est.mean, 2) +
                                             std::pow(n1.std_error / n1.mean, 2));
        CAPTURE(n);
        CHECK(std::abs(ratio - 1.0) <= 3.0 * err);
    }
}

TEST_CASE("offset shift by half a wavelength leaves n unchanged (same seed)") {
    CavityParams cav;
    const auto mc = make_mc(2000, 31415, MfDistribution::uniform());
    const McEstimate a = mc_photon_number(make_geom(3, 3900.0, 100.0, 123.0), cav, DriveParams{},
                                          kScheme, mc, ScatterModel::Multilevel,
                                          CavityModification::Include);
    const McEstimate b = mc_photon_number(make_geom(3, 3900.0, 100.0, 123.0 + 390.0), cav,
                                          DriveParams{}, kScheme, mc, ScatterModel::Multilevel,
                                          CavityModification::Include);
    // The lambda/2 shift flips every eta sign; identical draws land in a
    // different binade, so agreement is to rounding, not bitwise.
    CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-12));
    CHECK(a.std_error == doctest::Approx(b.std_error).epsilon(1e-10));
}

TEST_CASE("config validation") {
    McConfig mc;
    mc.n_samples = 50;
    CHECK_THROWS(mc.validate(2));
    mc.n_samples = 100;
    CHECK_NOTHROW(mc.validate(2));
    CHECK_THROWS(MfDistribution::fixed(3).validate(2));
    CHECK_THROWS(MfDistribution::custom({1.0, 2.0}).validate(2));
    CHECK_THROWS(MfDistribution::custom({0, 0, 0, 0, 0}).validate(2));
}

TEST_SUITE_END();
