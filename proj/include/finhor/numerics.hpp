#pragma once

#include <cmath>

#include "finhor/scenario.hpp"

namespace finhor {

// (log2 e)^2 / 2, the high-SINR limit of the channel dispersion.
inline constexpr double kDispersionLimit = 1.0406844905028039;

// Standard Gaussian complementary CDF, Q(x) = P(Z > x).
inline double q_function(double x) {
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

namespace detail {

// Acklam's rational approximation of the inverse standard normal CDF,
// accurate to ~1.15e-9 over (0,1). Used only as a Newton seed.
inline double inv_phi_seed(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

// Inverse of the standard Gaussian complementary CDF: returns x with
// Q(x) = p. Rational seed plus two Newton steps against the erfc-based
// Q; absolute accuracy well below 1e-10 over (0,1).
inline double inverse_q(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("inverse_q requires p in (0, 1)");
    double x = -detail::inv_phi_seed(p);
    for (int i = 0; i < 2; ++i) {
        // f(x) = Q(x) - p, f'(x) = -phi(x)
        double phi = 0.3989422804014326779 * std::exp(-0.5 * x * x);
        if (phi <= 0.0) break;
        x += (q_function(x) - p) / phi;
    }
    return x;
}

// SINR of pair n (0-based) under power tuple s, interference treated as
// noise.
inline double sinr(const NetworkScenario& sc, const PowerTuple& s, int n) {
    double interference = 0.0;
    for (int m = 0; m < sc.n_pairs; ++m) {
        if (m != n) interference += sc.gains[m][n] * s[m];
    }
    return sc.gains[n][n] * s[n] / (sc.noise[n] + interference);
}

// Channel dispersion V(gamma), in [0, kDispersionLimit).
inline double dispersion(double gamma) {
    double t = 1.0 + gamma;
    return kDispersionLimit * (1.0 - 1.0 / (t * t));
}

// Finite-blocklength maximum rate: normal approximation clamped at 0.
inline double max_rate(double gamma, int blocklength, double eps) {
    if (gamma <= 0.0) return 0.0;
    double r = 0.5 * std::log2(1.0 + gamma) -
               std::sqrt(dispersion(gamma) / blocklength) * inverse_q(eps);
    return r > 0.0 ? r : 0.0;
}

// Componentwise maximum rate tuple for a power tuple.
inline RateTuple max_rate_tuple(const NetworkScenario& sc, const PowerTuple& s) {
    RateTuple r(sc.n_pairs);
    for (int n = 0; n < sc.n_pairs; ++n)
        r[n] = max_rate(sinr(sc, s, n), sc.blocklength, sc.error_prob);
    return r;
}

// Interference-free SINR of pair n at its own maximum power.
inline double interference_free_sinr(const NetworkScenario& sc, int n) {
    double s_max = sc.power_sets[n].back();
    return sc.gains[n][n] * s_max / sc.noise[n];
}

}  // namespace finhor
