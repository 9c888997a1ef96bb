#include <cmath>
#include <sstream>
#include <string>

#include "hfl/certificates.hpp"
#include "hfl/errors.hpp"
#include "hfl/fracops.hpp"
#include "hfl/model.hpp"

namespace hfl {

namespace {

// Shared scaffolding for the bound formulas. All quantities are absolute
// values; the bounds are monotone in each of them.
struct BoundContext {
    double kap1, kap2;          // phi1/|Lambda|, phi4/|Lambda|
    double absPhi1, absPhi2, absPhi3, absPhi4;
    double Ia2, Ip2, Iaa, Ipp;  // (b-a)^e / Gamma(e+1) for the four exponents
    double absL1, absL2;
    double sEtaP2, sEtaPp;      // eta-sums at exponents p2 and p1+p2
    double sXiA2, sXiAa;        // xi-sums at exponents alpha2 and alpha1+alpha2
};

double powerOverGamma(double base, double e) {
    return std::pow(base, e) / gamma(e + 1.0);
}

double termSum(const std::vector<BoundaryTerm>& terms, double a, double e) {
    double s = 0.0;
    for (const BoundaryTerm& term : terms) {
        s += std::abs(term.coeff) * powerOverGamma(term.point - a, e + term.order);
    }
    return s;
}

BoundContext makeContext(const ProblemSpec& spec) {
    const StructuralConstants sc = structural_constants(spec);
    const double absLambda = std::abs(sc.Lambda);
    const double w = spec.b - spec.a;

    BoundContext c;
    c.kap1 = sc.phi1 / absLambda;
    c.kap2 = sc.phi4 / absLambda;
    c.absPhi1 = std::abs(sc.phi1);
    c.absPhi2 = std::abs(sc.phi2);
    c.absPhi3 = std::abs(sc.phi3);
    c.absPhi4 = std::abs(sc.phi4);
    c.Ia2 = powerOverGamma(w, spec.alpha2);
    c.Ip2 = powerOverGamma(w, spec.p2);
    c.Iaa = powerOverGamma(w, spec.alpha1 + spec.alpha2);
    c.Ipp = powerOverGamma(w, spec.p1 + spec.p2);
    c.absL1 = std::abs(spec.lambda1);
    c.absL2 = std::abs(spec.lambda2);
    c.sEtaP2 = termSum(spec.xTerms, spec.a, spec.p2);
    c.sEtaPp = termSum(spec.xTerms, spec.a, spec.p1 + spec.p2);
    c.sXiA2 = termSum(spec.yTerms, spec.a, spec.alpha2);
    c.sXiAa = termSum(spec.yTerms, spec.a, spec.alpha1 + spec.alpha2);
    return c;
}

GrowthBounds boundsFrom(const BoundContext& c) {
    GrowthBounds g;
    g.X1 = c.absL1 * (c.Ia2 + c.kap1 * (c.absPhi4 * c.Ia2 + c.absPhi2 * c.sXiA2));
    g.Y1 = c.absL2 * c.kap1 * (c.absPhi4 * c.sEtaP2 + c.absPhi2 * c.Ip2);
    g.F1 = c.Iaa * (1.0 + c.kap1 * c.absPhi4) + c.kap1 * c.absPhi2 * c.sXiAa;
    g.G1 = c.kap1 * (c.absPhi4 * c.sEtaPp + c.absPhi2 * c.Ipp);
    g.X2 = c.absL1 * c.kap2 * (c.absPhi1 * c.sXiA2 + c.absPhi3 * c.Ia2);
    g.Y2 = c.absL2 * (c.Ip2 + c.kap2 * (c.absPhi1 * c.Ip2 + c.absPhi3 * c.sEtaP2));
    // The xi-sum here carries exponent alpha2 + order (not
    // alpha1+alpha2+order): kept exactly as the source bounds state it.
    g.F2 = c.kap2 * (c.absPhi1 * c.sXiA2 + c.absPhi3 * c.Iaa);
    g.G2 = c.Ipp * (1.0 + c.kap2 * c.absPhi1) + c.kap2 * c.absPhi3 * c.sEtaPp;
    return g;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

GrowthBounds growth_bounds(const ProblemSpec& spec) {
    return boundsFrom(makeContext(spec));
}

ExistenceCheck leray_schauder_check(const ProblemSpec& spec,
                                    const GrowthHypothesis& hyp) {
    const GrowthBounds g = growth_bounds(spec);
    const double fg = g.F1 + g.F2;
    const double gg = g.G1 + g.G2;

    ExistenceCheck out;
    out.K1 = fg * hyp.M2 + gg * hyp.Mbar2 + (g.X1 + g.X2);
    out.K2 = fg * hyp.M3 + gg * hyp.Mbar3 + (g.Y1 + g.Y2);
    if (out.K1 < 1.0 && out.K2 < 1.0) {
        out.lsBound = (fg * hyp.M1 + gg * hyp.Mbar1) /
                      std::min(1.0 - out.K1, 1.0 - out.K2);
        out.verdict = Verdict::pass;
        out.reason = "K1 = " + fmt(out.K1) + " < 1 and K2 = " + fmt(out.K2) +
                     " < 1; a solution exists and every solution satisfies "
                     "the a priori bound";
    } else {
        out.verdict = Verdict::fail;
        out.reason = (out.K1 >= 1.0)
                         ? "K1 = " + fmt(out.K1) + " >= 1"
                         : "K2 = " + fmt(out.K2) + " >= 1";
        out.reason += "; the growth condition for existence fails";
    }
    return out;
}

UniquenessCheck banach_check(const ProblemSpec& spec,
                             const LipschitzHypothesis& hyp) {
    const GrowthBounds g = growth_bounds(spec);
    const double fg = g.F1 + g.F2;
    const double gg = g.G1 + g.G2;

    UniquenessCheck out;
    out.kappa = fg * hyp.L1cal + gg * hyp.L2cal + (g.X1 + g.X2) + (g.Y1 + g.Y2);
    if (out.kappa < 1.0) {
        out.radius = (fg * hyp.L1zero + gg * hyp.L2zero) / (1.0 - out.kappa);
        out.verdict = Verdict::pass;
        out.reason = "kappa = " + fmt(out.kappa) +
                     " < 1; the solution operator is a contraction";
    } else {
        out.verdict = Verdict::fail;
        out.reason = "kappa = " + fmt(out.kappa) +
                     " >= 1; the contraction condition fails";
    }
    return out;
}

UhCheck uh_constants(const ProblemSpec& spec, const LipschitzHypothesis& hyp) {
    const BoundContext c = makeContext(spec);
    const double l1 = hyp.L1cal;
    const double l2 = hyp.L2cal;

    UhCheck out;
    out.A1 = c.Iaa * l1 + c.absL1 * c.Ia2 +
             c.kap1 * (c.absPhi4 * c.sEtaPp * l2 +
                       c.absPhi2 * (c.sXiAa * l1 + c.absL1 * c.sXiA2));
    out.B1 = c.Iaa * l1 +
             c.kap1 * (c.absPhi4 * (c.absL2 * c.sEtaP2 + c.sEtaPp * l2) +
                       c.absPhi2 * c.sXiAa * l1);
    out.A2 = c.Ipp * l2 + c.absL2 * c.Ip2 +
             c.kap2 * (c.absPhi1 * c.sXiAa * l1 +
                       c.absPhi3 * (c.sEtaPp * l2 + c.absL2 * c.sEtaP2));
    out.B2 = c.Ipp * l2 +
             c.kap2 * (c.absPhi1 * (c.absL1 * c.sXiA2 + c.sXiAa * l1) +
                       c.absPhi3 * c.sEtaPp * l2);
    out.C1 = c.Iaa;
    out.C2 = c.Ipp;

    if (out.A1 == 1.0 || out.A2 == 1.0) {
        throw domain_error(
            "uh_constants: degenerate constants (A1 or A2 equals 1 exactly)");
    }
    out.Delta = 1.0 - out.B1 * out.B2 / ((1.0 - out.A1) * (1.0 - out.A2));

    if (out.A1 < 1.0 && out.A2 < 1.0 && std::abs(out.Delta) > 1e-12) {
        out.lambdaUH = (out.C1 * (1.0 - out.A2) + out.B2 * out.C1 +
                        out.C2 * (1.0 - out.A1) + out.B1 * out.C2) /
                       (out.Delta * (1.0 - out.A1) * (1.0 - out.A2));
        out.verdict = Verdict::pass;
        out.reason = "A1 = " + fmt(out.A1) + " < 1, A2 = " + fmt(out.A2) +
                     " < 1, |Delta| = " + fmt(std::abs(out.Delta)) +
                     " > 1e-12; the system is Ulam-Hyers stable";
    } else {
        out.verdict = Verdict::fail;
        if (out.A1 >= 1.0) {
            out.reason = "A1 = " + fmt(out.A1) + " >= 1";
        } else if (out.A2 >= 1.0) {
            out.reason = "A2 = " + fmt(out.A2) + " >= 1";
        } else {
            out.reason = "|Delta| = " + fmt(std::abs(out.Delta)) + " <= 1e-12";
        }
        out.reason += "; the stability criterion fails";
    }
    return out;
}

Certificate certify(const ProblemSpec& spec) {
    Certificate cert;
    cert.orders = derived_orders(spec);
    cert.structural = structural_constants(spec);
    cert.growth = growth_bounds(spec);
    if (spec.growth) {
        cert.existence = leray_schauder_check(spec, *spec.growth);
    }
    if (spec.lipschitz) {
        cert.uniqueness = banach_check(spec, *spec.lipschitz);
        cert.ulamHyers = uh_constants(spec, *spec.lipschitz);
    }
    return cert;
}

}  // namespace hfl
