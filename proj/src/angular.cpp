#include "cavarray/angular.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cavarray {

namespace {

constexpr int kMaxFactorial = 128;

const std::array<long double, kMaxFactorial + 1>& factorial_table() {
    static const auto table = [] {
        std::array<long double, kMaxFactorial + 1> t{};
        t[0] = 1.0L;
        for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table;
}

long double fact(int n) { return factorial_table()[n]; }

// Doubled angular momentum as an exact integer; throws if 2j is not integral.
int doubled(double j, const char* name) {
    double two = 2.0 * j;
    double rounded = std::round(two);
    if (std::abs(two - rounded) > 1e-9) {
        throw std::invalid_argument(std::string(name) + " must be a half-integer, got " +
                                    std::to_string(j));
    }
    return static_cast<int>(rounded);
}

int parity(int n) { return (n % 2 == 0) ? 1 : -1; }

bool triangle_ok(int tj1, int tj2, int tj3) {
    return tj3 >= std::abs(tj1 - tj2) && tj3 <= tj1 + tj2 && (tj1 + tj2 + tj3) % 2 == 0;
}

// sqrt of the triangle coefficient Delta(abc); arguments are doubled j's.
long double sqrt_triangle_coeff(int ta, int tb, int tc) {
    return std::sqrt(fact((ta + tb - tc) / 2) * fact((ta - tb + tc) / 2) *
                     fact((-ta + tb + tc) / 2) / fact((ta + tb + tc) / 2 + 1));
}

}  // namespace

double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3) {
    const int tj1 = doubled(j1, "j1"), tj2 = doubled(j2, "j2"), tj3 = doubled(j3, "j3");
    const int tm1 = doubled(m1, "m1"), tm2 = doubled(m2, "m2"), tm3 = doubled(m3, "m3");
    if (tj1 < 0 || tj2 < 0 || tj3 < 0) {
        throw std::invalid_argument("wigner3j: angular momenta must be non-negative");
    }
    if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) {
        throw std::invalid_argument("wigner3j: m must differ from j by an integer");
    }
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (!triangle_ok(tj1, tj2, tj3)) return 0.0;

    // Racah sum; all half-sums below are exact integers.
    const int a = (tj1 + tj2 - tj3) / 2;    // j1+j2-j3
    const int j1m1 = (tj1 - tm1) / 2, j1p1 = (tj1 + tm1) / 2;
    const int j2m2 = (tj2 - tm2) / 2, j2p2 = (tj2 + tm2) / 2;
    const int j3m3 = (tj3 - tm3) / 2, j3p3 = (tj3 + tm3) / 2;

    const int t_min = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int t_max = std::min({a, j1m1, j2p2});
    if (t_min > t_max) return 0.0;

    long double sum = 0.0L;
    for (int t = t_min; t <= t_max; ++t) {
        long double term = fact(t) * fact(a - t) * fact(j1m1 - t) * fact(j2p2 - t) *
                           fact((tj3 - tj2 + tm1) / 2 + t) * fact((tj3 - tj1 - tm2) / 2 + t);
        sum += parity(t) / term;
    }

    long double result = sum * sqrt_triangle_coeff(tj1, tj2, tj3) *
                         std::sqrt(fact(j1p1) * fact(j1m1) * fact(j2p2) * fact(j2m2) *
                                   fact(j3p3) * fact(j3m3));
    result *= parity((tj1 - tj2 - tm3) / 2);
    return static_cast<double>(result);
}

double wigner6j(double j1, double j2, double j3, double j4, double j5, double j6) {
    const int t1 = doubled(j1, "j1"), t2 = doubled(j2, "j2"), t3 = doubled(j3, "j3");
    const int t4 = doubled(j4, "j4"), t5 = doubled(j5, "j5"), t6 = doubled(j6, "j6");
    if (t1 < 0 || t2 < 0 || t3 < 0 || t4 < 0 || t5 < 0 || t6 < 0) {
        throw std::invalid_argument("wigner6j: angular momenta must be non-negative");
    }
    if (!triangle_ok(t1, t2, t3) || !triangle_ok(t1, t5, t6) || !triangle_ok(t4, t2, t6) ||
        !triangle_ok(t4, t5, t3)) {
        return 0.0;
    }

    // Triad sums and the three "pair" sums, all exact integers.
    const int s1 = (t1 + t2 + t3) / 2;
    const int s2 = (t1 + t5 + t6) / 2;
    const int s3 = (t4 + t2 + t6) / 2;
    const int s4 = (t4 + t5 + t3) / 2;
    const int p1 = (t1 + t2 + t4 + t5) / 2;
    const int p2 = (t2 + t3 + t5 + t6) / 2;
    const int p3 = (t1 + t3 + t4 + t6) / 2;

    const int t_min = std::max({s1, s2, s3, s4});
    const int t_max = std::min({p1, p2, p3});
    if (t_min > t_max) return 0.0;

    long double sum = 0.0L;
    for (int t = t_min; t <= t_max; ++t) {
        long double term = fact(t - s1) * fact(t - s2) * fact(t - s3) * fact(t - s4) *
                           fact(p1 - t) * fact(p2 - t) * fact(p3 - t);
        sum += parity(t) * fact(t + 1) / term;
    }

    long double result = sum * sqrt_triangle_coeff(t1, t2, t3) * sqrt_triangle_coeff(t1, t5, t6) *
                         sqrt_triangle_coeff(t4, t2, t6) * sqrt_triangle_coeff(t4, t5, t3);
    return static_cast<double>(result);
}

}  // namespace cavarray
