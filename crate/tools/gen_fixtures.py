#!/usr/bin/env python3
"""Regenerate crates/core/tests/fixtures/reference.json.

Extended-precision reference values (mpmath, 40 digits) for the special
functions, S-matrix elements, closed-form amplitudes and radial solutions.
Inputs are Python floats so that they are bit-identical to the f64 inputs
used by the Rust tests; everything downstream of the inputs is evaluated
in high precision, independently of the Rust code paths.

    python3 tools/gen_fixtures.py
"""
import json
import os

import mpmath as mp

mp.mp.dps = 40

ALPHA = 1.0 / 137.035999  # f64, matches the crate default
HALF = mp.mpf(1) / 2


def c(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def kin_energy(gamma, energy):
    E = mp.mpf(energy)
    g = mp.mpf(gamma)
    k1, k2 = E + 1, E - 1
    k = mp.sqrt(k1 * k2)
    return dict(E=E, k1=k1, k2=k2, k=k, g=g, beta=g * E / k, bp=g / k, v=k / E)


def kin_velocity(gamma, v):
    v = mp.mpf(v)
    E = 1 / mp.sqrt(1 - v * v)
    return kin_energy_from(mp.mpf(gamma), E)


def kin_energy_from(g, E):
    k1, k2 = E + 1, E - 1
    k = mp.sqrt(k1 * k2)
    return dict(E=E, k1=k1, k2=k2, k=k, g=g, beta=g * E / k, bp=g / k, v=k / E)


def s_exact(two_j, K):
    j = mp.mpf(two_j) / 2
    g, b, bp = K["g"], K["beta"], K["bp"]
    s = mp.sqrt(j * j - g * g)
    return (j + 1j * bp) * mp.gamma(s - 1j * b) / mp.gamma(s + 1j * b + 1) * mp.exp(
        1j * j * mp.pi - 1j * s * mp.pi
    )


def s_small(two_j, K):
    j = mp.mpf(two_j) / 2
    b, bp = K["beta"], K["bp"]
    m = j - HALF
    if j > 0:
        return mp.gamma(m + HALF - 1j * b) / mp.gamma(m + HALF + 1j * b) - 1j * (
            b - bp
        ) * mp.gamma(m + HALF - 1j * b) / mp.gamma(m + 1.5 + 1j * b)
    am = abs(m)
    return mp.gamma(am + HALF - 1j * b) / mp.gamma(am + HALF + 1j * b) + 1j * (
        b - bp
    ) * mp.gamma(am - HALF - 1j * b) / mp.gamma(am + HALF + 1j * b)


def f0c(th, K):
    b, k = K["beta"], K["k"]
    h = mp.sin(th / 2)
    return -1j * mp.gamma(HALF - 1j * b) * mp.rgamma(1j * b) * mp.exp(
        1j * b * mp.log(h * h)
    ) / (mp.sqrt(2 * k) * h)


def f1c(th, K):
    b, bp, k = K["beta"], K["bp"], K["k"]
    h = mp.sin(th / 2)
    ratio = 1 - 1 / K["E"]  # 1 - beta'/beta
    return -mp.gamma(HALF - 1j * b) * mp.rgamma(1j * b) * ratio * mp.exp(
        -1j * th / 2
    ) * mp.exp(1j * b * mp.log(h * h)) / mp.sqrt(2 * k)


def f1s(th, K):
    b, bp, k = K["beta"], K["bp"], K["k"]
    R = mp.gamma(HALF - 1j * b) / mp.gamma(1.5 + 1j * b)
    F = lambda w: mp.hyp2f1(1, HALF - 1j * b, 1.5 + 1j * b, w)
    return -(b - bp) / mp.sqrt(2 * mp.pi * k) * R * (
        F(mp.exp(1j * th)) - mp.exp(-1j * th) * F(mp.exp(-1j * th))
    )


def radial_u(two_j, K, rho):
    j = mp.mpf(two_j) / 2
    g, b, bp = K["g"], K["beta"], K["bp"]
    s = mp.sqrt(j * j - g * g)
    m = j - HALF
    A = 1j * mp.sqrt((K["E"] + 1) / (2 * K["E"])) * mp.sqrt(2 / (mp.pi * K["k"]))
    a = (
        A
        * 2**s
        * (j + 1j * bp)
        * mp.gamma(s - 1j * b)
        / mp.gamma(2 * s + 1)
        * mp.exp(b * mp.pi / 2 + 1j * m * mp.pi - 1j * s * mp.pi / 2 + 1j * mp.pi / 4)
    )
    rho = mp.mpf(rho)
    u = a * rho**s * mp.hyp1f1(s - 1j * b, 2 * s + 1, -2j * rho)
    v = a * (s - 1j * b) / (j + 1j * bp) * rho**s * mp.hyp1f1(s - 1j * b + 1, 2 * s + 1, -2j * rho)
    return u, v


def main():
    out = {}

    # complex log-gamma (principal, continuous branch)
    pts = []
    xs = [-999.3, -120.25, -10.2, -2.5, -0.7, 0.1, 0.5, 1.0, 1.0001, 2.0, 3.7, 10.0, 100.0, 700.0]
    ys = [0.0, 1e-3, 0.3, 1.0, 2.1, 10.0, 100.0, 650.0]
    for x in xs:
        for y in ys:
            if abs(complex(x, y)) > 1000.0:
                continue
            for sy in (y, -y) if y else (y,):
                z = mp.mpc(x, sy)
                pts.append([x, sy] + c(mp.loggamma(z)))
    out["log_gamma"] = pts
    out["log_gamma_3p7_2p1i"] = c(mp.loggamma(mp.mpc(3.7, 2.1)))

    # Kummer Phi(a, b, -2 i rho) on the required domain
    kpts = []
    for s in [0.4, 0.5, 1.5, 2.5, 3.0]:
        for beta in [-0.5, 0.0, 0.0121622542895949, 0.3, 1.0]:
            for shift in (0, 1):
                a = mp.mpc(s + shift, -beta)
                b = 2 * s + 1
                for rho in [0.0, 0.01, 0.5, 3.0, 10.0, 14.0, 16.0, 25.0, 50.0, 100.0, 500.0, 5000.0]:
                    z = mp.mpc(0, -2 * rho)
                    val = mp.hyp1f1(a, b, z)
                    kpts.append([s + shift, -beta, b, 0.0, -2 * rho] + c(val))
    out["kummer"] = kpts
    out["kummer_0p5m0p2i_2_m100i"] = c(mp.hyp1f1(mp.mpc(0.5, -0.2), 2.0, mp.mpc(0, -100)))
    a = mp.mpc(0.5, -0.3)
    out["kummer_recurrence_case"] = {
        "phi": c(mp.hyp1f1(a, 2.2, mp.mpc(0, -10))),
        "phi_a1": c(mp.hyp1f1(a + 1, 2.2, mp.mpc(0, -10))),
        "phi_a1_b1": c(mp.hyp1f1(a + 1, 3.2, mp.mpc(0, -10))),
    }

    # Gauss F(1, 1/2 - i beta; 3/2 + i beta; e^{i theta})
    gpts = []
    for beta in [0.0, 0.05, 0.1, 0.2, -0.3]:
        for th in [mp.pi / 32, mp.pi / 16, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 31 * mp.pi / 16]:
            thf = float(th)
            w = mp.exp(1j * mp.mpf(thf))
            val = mp.hyp2f1(1, HALF - 1j * beta, 1.5 + 1j * beta, w)
            gpts.append([beta, thf] + c(val))
    out["gauss_unit"] = gpts
    out["gauss_beta0p1_w_i"] = c(mp.hyp2f1(1, HALF - 0.1j, 1.5 + 0.1j, 1j))

    # kinematics near threshold
    e = 1.0 + 1e-6
    K = kin_energy(ALPHA, e)
    out["kinematics_near_threshold"] = {
        "energy_ratio": e,
        "v_over_c": float(K["v"]),
        "beta": float(K["beta"]),
        "beta_prime": float(K["bp"]),
        "k": float(K["k"]),
        "bp_over_b": float(K["bp"] / K["beta"]),
    }

    # phase shifts
    Kz1 = kin_energy(ALPHA, 1.25)
    out["exponent_s_3half_alpha"] = float(mp.sqrt(mp.mpf(9) / 4 - mp.mpf(ALPHA) ** 2))
    out["s_exact_half_z1_e1p25"] = c(s_exact(1, Kz1))
    K01 = kin_velocity(0.01, 0.6)
    out["s_small_mhalf_g0p01_v0p6"] = c(s_small(-1, K01))
    out["s_nonrel_m0_b0p2"] = c(mp.gamma(HALF - 0.2j) / mp.gamma(HALF + 0.2j))
    sweep = []
    for g in [0.01, 0.3, 0.49, -0.3]:
        for E in [1.01, 50.0]:
            KK = kin_energy(g, E)
            for tj in [1, -1, 3, -5, 41, -401, 401]:
                sweep.append([g, E, tj] + c(s_exact(tj, KK)) + c(s_small(tj, KK)))
    out["s_matrix_sweep"] = sweep

    # closed forms
    Kb = kin_velocity(0.2 * 0.6, 0.6)  # beta = 0.2, k = 0.75
    out["f0_closed_pi_b0p2_k0p75"] = c(f0c(mp.pi, Kb))
    out["f1_closed_halfpi_z1_e1p25"] = c(f1c(mp.pi / 2, Kz1))
    out["f_closed_pi_z1_e1p25"] = c(f0c(mp.pi, Kz1) + f1c(mp.pi, Kz1))
    out["f1_series_pi_b0p2_v0p6"] = c(f1s(mp.pi, Kb))
    v = mp.mpf(0.6)
    kappa = mp.mpf(ALPHA)
    th = mp.pi / 2
    h2 = mp.sin(th / 2) ** 2
    out["sigma_classical_halfpi_v0p6_alpha"] = float(
        kappa * mp.tanh(mp.pi * kappa / v) / (2 * v * v * h2) * (1 - v * v * h2) * mp.sqrt(1 - v * v)
    )

    # radial Kummer solution
    u, vv = radial_u(1, Kz1, 1.0)
    out["radial_u_rho1_half_z1_e1p25"] = c(u)
    out["radial_v_rho1_half_z1_e1p25"] = c(vv)

    path = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures", "reference.json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")
    print("wrote", os.path.normpath(path))


if __name__ == "__main__":
    main()
