#include <cmath>

#include "hfl/errors.hpp"
#include "hfl/fracops.hpp"

namespace hfl {

namespace {

// 13-term Lanczos approximation in rational form,
// g = 6.024680040776729583740234375. Standard double-precision coefficient
// set; relative error of the approximation is below 2e-16 for z > 0.
constexpr double kLanczosG = 6.024680040776729583740234375;

constexpr double kNum[13] = {
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
};

// Denominator z(z+1)...(z+11) expanded; integer coefficients, exact.
constexpr double kDen[13] = {
    0.0,
    39916800.0,
    120543840.0,
    150917976.0,
    105258076.0,
    45995730.0,
    13339535.0,
    2637558.0,
    357423.0,
    32670.0,
    1925.0,
    66.0,
    1.0,
};

// num(z)/den(z) with both polynomials in ascending powers. For large z the
// ascending evaluation overflows, so evaluate in 1/z instead (the arrays are
// symmetric under that reversal).
double lanczosSum(double z) {
    if (z <= 1.0) {
        double num = 0.0;
        double den = 0.0;
        double zk = 1.0;
        for (int i = 0; i < 13; ++i) {
            num += kNum[i] * zk;
            den += kDen[i] * zk;
            zk *= z;
        }
        return num / den;
    }
    const double r = 1.0 / z;
    double num = 0.0;
    double den = 0.0;
    double rk = 1.0;
    for (int i = 12; i >= 0; --i) {
        num += kNum[i] * rk;
        den += kDen[i] * rk;
        rk *= r;
    }
    return num / den;
}

}  // namespace

double gamma(double z) {
    if (!std::isfinite(z) || z <= 0.0) {
        throw domain_error("gamma: argument must be a positive finite real");
    }
    const double t = z + kLanczosG - 0.5;
    const double sum = lanczosSum(z);
    if (z > 100.0) {
        // Split the power to avoid premature overflow of t^(z-1/2).
        const double half = std::pow(t, 0.5 * (z - 0.5));
        return sum * half * std::exp(-t) * half;
    }
    return sum * std::pow(t, z - 0.5) * std::exp(-t);
}

}  // namespace hfl
