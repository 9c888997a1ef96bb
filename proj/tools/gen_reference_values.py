#!/usr/bin/env python3
"""Regenerates tests/reference_values.hpp.

Evaluates the closed-form certificate constants of the coupled Hilfer-Langevin
boundary-value problem in 40-digit arithmetic (mpmath) and freezes them as
double literals for the C++ regression tests. Run from the repository root:

    python3 tools/gen_reference_values.py > tests/reference_values.hpp
"""

from mpmath import mp, mpf, gamma, power, sqrt, pi

mp.dps = 40


class Term:
    def __init__(self, coeff, order, point):
        self.coeff = mpf(coeff)
        self.order = mpf(order)
        self.point = mpf(point)


class Fixture:
    def __init__(self, name, a, b, alpha1, beta1, alpha2, beta2,
                 p1, q1, p2, q2, lambda1, lambda2, x_terms, y_terms,
                 M=None, Mbar=None, lip=None, L=None):
        self.name = name
        self.a, self.b = mpf(a), mpf(b)
        self.alpha1, self.beta1 = mpf(alpha1), mpf(beta1)
        self.alpha2, self.beta2 = mpf(alpha2), mpf(beta2)
        self.p1, self.q1 = mpf(p1), mpf(q1)
        self.p2, self.q2 = mpf(p2), mpf(q2)
        self.lambda1, self.lambda2 = mpf(lambda1), mpf(lambda2)
        self.x_terms = [Term(*t) for t in x_terms]
        self.y_terms = [Term(*t) for t in y_terms]
        self.M = [mpf(v) for v in M] if M else None
        self.Mbar = [mpf(v) for v in Mbar] if Mbar else None
        self.lip = [mpf(v) for v in lip] if lip else None
        self.L = [mpf(v) for v in L] if L else None


def pw(base, expo):
    return power(base, expo)


def constants(fx):
    a, b = fx.a, fx.b
    gamma1 = fx.alpha1 + fx.beta1 - fx.alpha1 * fx.beta1
    gamma2 = fx.alpha2 + fx.beta2 - fx.alpha2 * fx.beta2
    delta1 = fx.p1 + fx.q1 - fx.p1 * fx.q1
    delta2 = fx.p2 + fx.q2 - fx.p2 * fx.q2
    ga, dp = gamma1 + fx.alpha2, delta1 + fx.p2
    aa, pp = fx.alpha1 + fx.alpha2, fx.p1 + fx.p2

    phi1 = pw(b - a, ga - 1) / gamma(ga)
    phi2 = sum(t.coeff * pw(t.point - a, dp + t.order - 1) / gamma(dp + t.order)
               for t in fx.x_terms)
    phi3 = sum(t.coeff * pw(t.point - a, ga + t.order - 1) / gamma(ga + t.order)
               for t in fx.y_terms)
    phi4 = pw(b - a, dp - 1) / gamma(dp)
    Lam = phi1 * phi4 - phi2 * phi3

    # Shorthand kernels multiplying the bracketed boundary blocks.
    k1 = pw(b - a, ga - 1) / (abs(Lam) * gamma(ga))
    k2 = pw(b - a, dp - 1) / (abs(Lam) * gamma(dp))

    # Per-term integral factors.
    def s_eta(extra):
        return sum(abs(t.coeff) * pw(t.point - a, extra + t.order)
                   / gamma(extra + t.order + 1) for t in fx.x_terms)

    def s_xi(extra):
        return sum(abs(t.coeff) * pw(t.point - a, extra + t.order)
                   / gamma(extra + t.order + 1) for t in fx.y_terms)

    Ia2 = pw(b - a, fx.alpha2) / gamma(fx.alpha2 + 1)
    Ip2 = pw(b - a, fx.p2) / gamma(fx.p2 + 1)
    Iaa = pw(b - a, aa) / gamma(aa + 1)
    Ipp = pw(b - a, pp) / gamma(pp + 1)

    X1 = abs(fx.lambda1) * (Ia2 + k1 * (abs(phi4) * Ia2 + abs(phi2) * s_xi(fx.alpha2)))
    Y1 = abs(fx.lambda2) * k1 * (abs(phi4) * s_eta(fx.p2) + abs(phi2) * Ip2)
    F1 = Iaa * (1 + k1 * abs(phi4)) + k1 * abs(phi2) * s_xi(aa)
    G1 = k1 * (abs(phi4) * s_eta(pp) + abs(phi2) * Ipp)
    X2 = abs(fx.lambda1) * k2 * (abs(phi1) * s_xi(fx.alpha2) + abs(phi3) * Ia2)
    Y2 = abs(fx.lambda2) * (Ip2 + k2 * (abs(phi1) * Ip2 + abs(phi3) * s_eta(fx.p2)))
    F2 = k2 * (abs(phi1) * s_xi(fx.alpha2) + abs(phi3) * Iaa)
    G2 = Ipp * (1 + k2 * abs(phi1)) + k2 * abs(phi3) * s_eta(pp)

    out = {
        "gamma1": gamma1, "gamma2": gamma2, "delta1": delta1, "delta2": delta2,
        "phi1": phi1, "phi2": phi2, "phi3": phi3, "phi4": phi4, "Lambda": Lam,
        "X1": X1, "Y1": Y1, "F1": F1, "G1": G1,
        "X2": X2, "Y2": Y2, "F2": F2, "G2": G2,
    }

    if fx.M:
        M1, M2, M3 = fx.M
        Mb1, Mb2, Mb3 = fx.Mbar
        K1 = (F1 + F2) * M2 + (G1 + G2) * Mb2 + (X1 + X2)
        K2 = (F1 + F2) * M3 + (G1 + G2) * Mb3 + (Y1 + Y2)
        out["K1"], out["K2"] = K1, K2
        if K1 < 1 and K2 < 1:
            out["lsBound"] = ((F1 + F2) * M1 + (G1 + G2) * Mb1) / min(1 - K1, 1 - K2)

    if fx.lip:
        l1, l2 = fx.lip
        kappa = (F1 + F2) * l1 + (G1 + G2) * l2 + (X1 + X2) + (Y1 + Y2)
        out["kappa"] = kappa
        if fx.L and kappa < 1:
            out["radius"] = ((F1 + F2) * fx.L[0] + (G1 + G2) * fx.L[1]) / (1 - kappa)

        A1 = Iaa * l1 + abs(fx.lambda1) * Ia2 \
            + k1 * (abs(phi4) * s_eta(pp) * l2
                    + abs(phi2) * (s_xi(aa) * l1 + abs(fx.lambda1) * s_xi(fx.alpha2)))
        B1 = Iaa * l1 + k1 * (abs(phi4) * (abs(fx.lambda2) * s_eta(fx.p2) + s_eta(pp) * l2)
                              + abs(phi2) * s_xi(aa) * l1)
        A2 = Ipp * l2 + abs(fx.lambda2) * Ip2 \
            + k2 * (abs(phi1) * s_xi(aa) * l1
                    + abs(phi3) * (s_eta(pp) * l2 + abs(fx.lambda2) * s_eta(fx.p2)))
        B2 = Ipp * l2 + k2 * (abs(phi1) * (abs(fx.lambda1) * s_xi(fx.alpha2) + s_xi(aa) * l1)
                              + abs(phi3) * s_eta(pp) * l2)
        C1, C2 = Iaa, Ipp
        out.update({"A1": A1, "B1": B1, "C1": C1, "A2": A2, "B2": B2, "C2": C2})
        if A1 < 1 and A2 < 1:
            Delta = 1 - B1 * B2 / ((1 - A1) * (1 - A2))
            out["Delta"] = Delta
            if abs(Delta) > mpf("1e-12"):
                out["lambdaUH"] = (C1 * (1 - A2) + B2 * C1 + C2 * (1 - A1) + B1 * C2) \
                    / (Delta * (1 - A1) * (1 - A2))
    return out


def lit(v):
    return mp.nstr(v, 17, strip_zeros=False)


FIXTURES = [
    Fixture("coupled", 0, 1, "0.75", "0.5", "0.75", "0.5", "0.75", "0.5", "0.75", "0.5",
            "0.1", "0.05", [("1.0", "0.5", "0.5")], [],
            M=("1.0", "0.05", "0.05"), Mbar=("1.0", "0.05", "0.05"),
            lip=("0.1", "0.1"), L=("1.0", "1.0")),
    Fixture("twosided", "0.5", "1.5", "0.6", "0.4", "0.9", "0.7", "0.8", "0.3", "0.65", "0.7",
            "-0.05", "0.08", [("0.6", "0.8", "0.9")], [("-0.4", "0.3", "1.2")],
            M=("0.2", "0.05", "0.05"), Mbar=("0.3", "0.05", "0.05"),
            lip=("0.05", "0.05"), L=("0.2", "0.3")),
    Fixture("contraction", 0, 1, "0.75", "0.5", "0.75", "0.5", "0.75", "0.5", "0.75", "0.5",
            "0", "0", [], [],
            M=("1.0", "0.166", "0.166"), Mbar=("0.5", "0.166", "0.166"),
            lip=("0.166", "0.166"), L=("1.0", "0.5")),
    Fixture("coupled_growth", 0, 1, "0.75", "0.5", "0.75", "0.5", "0.75", "0.5", "0.75", "0.5",
            "0.1", "0.05", [("1.0", "0.5", "0.5")], [],
            M=("0.1", "0.1", "0.05"), Mbar=("0.1", "0.05", "0.1"),
            lip=("0.1", "0.1"), L=("0.1", "0.1")),
    Fixture("linear", 0, 1, "0.75", "0.5", "0.75", "0.5", "0.75", "0.5", "0.75", "0.5",
            "0", "0", [], [],
            lip=("0", "0"), L=("1.0", "1.0")),
]


def emit():
    print("// Generated by tools/gen_reference_values.py -- do not edit by hand.")
    print("// 40-digit mpmath evaluations of the closed-form certificate constants,")
    print("// frozen to double for regression testing.")
    print("#pragma once")
    print()
    print("namespace refvals {")
    for fx in FIXTURES:
        vals = constants(fx)
        print(f"\nnamespace {fx.name} {{")
        for key, v in vals.items():
            print(f"inline constexpr double {key} = {lit(v)};")
        print(f"}}  // namespace {fx.name}")

    # Solution of the decoupled linear problem with unit forcing on [0,1]:
    # x(t) = (t^(alpha1+alpha2) - t^(gamma1+alpha2-1)) / Gamma(alpha1+alpha2+1)
    # sampled at t = k/20, k = 1..20 (y is identical by parameter symmetry).
    aa = mpf("1.5")
    ker = mpf("0.625")
    g = gamma(aa + 1)
    pts = [(pw(mpf(k) / 20, aa) - pw(mpf(k) / 20, ker)) / g for k in range(1, 21)]
    print("\nnamespace linear_solution {")
    print("// x(t_k) at t_k = k/20 for the unit-forcing decoupled fixture.")
    print("inline constexpr double at20[20] = {")
    for v in pts:
        print(f"    {lit(v)},")
    print("};")
    # Peak of |x|: stationary point of t^0.625 - t^1.5.
    tstar = pw(mpf("0.625") / mpf("1.5"), mpf(8) / 7)
    peak = (pw(tstar, ker) - pw(tstar, aa)) / g
    print(f"inline constexpr double supNorm = {lit(peak)};")
    print("}  // namespace linear_solution")

    # Gamma spot checks.
    zs = ["0.1", "0.3", "0.5", "1.0", "1.125", "1.5", "1.625", "1.75",
          "2.125", "2.25", "2.5", "3.0", "4.5", "5.0", "7.25", "10.0"]
    print("\nnamespace gamma_table {")
    print("inline constexpr double z[16] = {")
    print("    " + ", ".join(mp.nstr(mpf(z), 17) for z in zs))
    print("};")
    print("inline constexpr double value[16] = {")
    for z in zs:
        print(f"    {lit(gamma(mpf(z)))},")
    print("};")
    print("}  // namespace gamma_table")
    print("}  // namespace refvals")


if __name__ == "__main__":
    emit()
