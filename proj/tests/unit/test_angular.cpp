#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cavarray/angular.hpp"

using cavarray::wigner3j;
using cavarray::wigner6j;

TEST_SUITE_BEGIN("angular");

// Reference values frozen from an exact-rational evaluation of the Racah
// formulas (sympy.physics.wigner).
TEST_CASE("wigner3j reference values") {
    CHECK(wigner3j(1, 1, 0, 0, 0, 0) == doctest::Approx(-0.57735026918962576).epsilon(1e-14));
    CHECK(wigner3j(1, 1, 1, 0, 0, 0) == 0.0);  // odd j-sum, all m zero
    CHECK(wigner3j(2, 1, 3, 2, 1, -3) == doctest::Approx(0.37796447300922723).epsilon(1e-14));
    CHECK(wigner3j(2, 1, 2, 0, 0, 0) == 0.0);
    CHECK(wigner3j(3, 1, 2, 1, 1, -2) == doctest::Approx(0.097590007294853318).epsilon(1e-13));
    // Half-integer arguments.
    CHECK(wigner3j(0.5, 0.5, 1, 0.5, -0.5, 0) ==
          doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("wigner3j selection rules return zero") {
    CHECK(wigner3j(1, 1, 3, 0, 0, 0) == 0.0);   // triangle violated
    CHECK(wigner3j(1, 1, 2, 1, 1, -1) == 0.0);  // m-sum nonzero
    CHECK(wigner3j(1, 1, 2, 2, 0, -2) == 0.0);  // |m| > j
}

TEST_CASE("wigner3j rejects malformed inputs") {
    CHECK_THROWS_AS(wigner3j(0.3, 1, 1, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wigner3j(-1, 1, 1, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wigner3j(1, 1, 1, 0.5, -0.5, 0), std::invalid_argument);
}

TEST_CASE("wigner3j orthogonality sum rule for all j <= 4") {
    // sum_{m1,m2} (2 j3 + 1) (3j)^2 = 1 at each fixed m3.
    for (int tj1 = 0; tj1 <= 8; ++tj1) {
        for (int tj2 = 0; tj2 <= 8; ++tj2) {
            for (int tj3 = std::abs(tj1 - tj2); tj3 <= tj1 + tj2; tj3 += 2) {
                if (tj3 > 8) continue;
                const double j1 = tj1 / 2.0, j2 = tj2 / 2.0, j3 = tj3 / 2.0;
                for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
                    double sum = 0.0;
                    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                        const int tm2 = -tm3 - tm1;
                        if (std::abs(tm2) > tj2) continue;
                        const double v =
                            wigner3j(j1, j2, j3, tm1 / 2.0, tm2 / 2.0, tm3 / 2.0);
                        sum += (2.0 * j3 + 1.0) * v * v;
                    }
                    CAPTURE(j1);
                    CAPTURE(j2);
                    CAPTURE(j3);
                    CAPTURE(tm3);
                    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("wigner3j odd-permutation symmetry") {
    const double a = wigner3j(2, 1, 3, 1, -1, 0);
    // Odd permutation picks up (-1)^{j1+j2+j3}.
    CHECK(wigner3j(1, 2, 3, -1, 1, 0) == doctest::Approx(a).epsilon(1e-14));
}

TEST_CASE("wigner6j reference values") {
    CHECK(wigner6j(0, 0, 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(wigner6j(1, 1, 1, 1, 1, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(wigner6j(2, 1, 3, 1.5, 1.5, 1.5) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("wigner6j triangle violations return zero") {
    CHECK(wigner6j(1, 1, 3, 1, 1, 1) == 0.0);
    CHECK(wigner6j(2, 1, 3, 0.5, 1.5, 1.5) == 0.0);  // (j1,j5,j6) triad broken
}

TEST_CASE("wigner6j rejects malformed inputs") {
    CHECK_THROWS_AS(wigner6j(0.7, 1, 1, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(wigner6j(1, -2, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("wigner6j Biedenharn-Elliott identity") {
    // sum_x (-1)^{S+x} (2x+1) {a b x; c d p}{c d x; e f q}{e f x; b a r}
    //   = {p q r; e a d} {p q r; f b c},  S = a+b+c+d+e+f+p+q+r.
    // Tuples chosen so the x-sum passes through {2 1 3; 3/2 3/2 3/2}.
    const double a = 2, b = 1, c = 1.5, d = 1.5, p = 1.5;
    const struct {
        double e, f, q, r;
    } tuples[] = {{0, 1, 1.5, 2}, {0, 2, 1.5, 2}, {0.5, 0.5, 1, 1.5}, {0.5, 0.5, 2, 1.5}};
    for (const auto& t : tuples) {
        const double s_total = a + b + c + d + t.e + t.f + p + t.q + t.r;
        double lhs = 0.0;
        for (int tx = 0; tx <= 12; ++tx) {
            const double x = tx / 2.0;
            const double term = wigner6j(a, b, x, c, d, p) * wigner6j(c, d, x, t.e, t.f, t.q) *
                                wigner6j(t.e, t.f, x, b, a, t.r);
            if (term == 0.0) continue;
            const int sign = static_cast<int>(std::llround(s_total + x)) % 2 == 0 ? 1 : -1;
            lhs += sign * (2.0 * x + 1.0) * term;
        }
        const double rhs = wigner6j(p, t.q, t.r, t.e, a, d) * wigner6j(p, t.q, t.r, t.f, b, c);
        CAPTURE(t.e);
        CAPTURE(t.f);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(std::abs(rhs) > 1e-3);  // a non-trivial instance
    }
}

TEST_CASE("wigner6j orthogonality over the recoupling index") {
    // sum_x (2x+1) {a b x; c d p}{a b x; c d q} = delta_pq / (2p+1)
    const double a = 1.5, b = 1.5, c = 1.5, d = 1.5;
    for (int tp = 0; tp <= 6; tp += 2) {
        for (int tq = 0; tq <= 6; tq += 2) {
            const double p = tp / 2.0, q = tq / 2.0;
            double sum = 0.0;
            for (int tx = 0; tx <= 6; tx += 2) {
                const double x = tx / 2.0;
                sum += (2.0 * x + 1.0) * wigner6j(a, b, x, c, d, p) * wigner6j(a, b, x, c, d, q);
            }
            const double expected = (tp == tq) ? 1.0 / (2.0 * p + 1.0) : 0.0;
            CAPTURE(p);
            CAPTURE(q);
            CHECK(sum == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_SUITE_END();
