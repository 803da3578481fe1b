#!/usr/bin/env python3
"""Independent reference values for the C++ tests, computed with mpmath at 40 digits.

Nothing here shares code with the library; integrals go through mpmath.quad on a
split real axis, log-gamma and zeta come from mpmath directly.

    python3 tests/oracles/gen_reference.py > tests/data/reference.json
"""

import json

import mpmath as mp

mp.mp.dps = 40


def c(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def semi_inf(f):
    # the integrands decay exponentially; split the range so quad sees smooth pieces
    pts = [0] + [mp.mpf(k) / 2 for k in range(1, 40)] + [20, 40, 80, mp.inf]
    return mp.quad(f, pts)


def k0(lam, nu):
    lam, nu = mp.mpf(lam), mp.mpf(nu)

    def f(w):
        return (mp.sinh(2j * w * lam) / w * mp.sinh(1.5 * w) * mp.sinh((nu - 2) * w / 2)
                / (mp.sinh(2 * w) * mp.sinh((nu - 1) * w / 2)))

    return mp.exp(2 * semi_inf(f))


def k1(lam, x, kappa, nu):
    lam, x, nu = mp.mpf(lam), mp.mpf(x), mp.mpf(nu)
    kappa = mp.mpc(kappa)

    def f(w):
        return (mp.sinh(2j * w * lam) / w * mp.sinh((nu - 2 * x - 1) * w)
                / (2 * mp.sinh((nu - 1) * w) * mp.cosh(w)))

    pre = mp.pi * mp.sqrt(1j / (2 * kappa)) / mp.cosh(mp.pi / (nu - 1) * (lam - 1j * (nu - 2 * x) / 2))
    return pre * mp.exp(-2 * semi_inf(f))


def eps(lam, nu):
    lam, nu = mp.mpf(lam), mp.mpf(nu)

    def ahat(n, w):
        return mp.sinh((nu - n) * w / 2) / mp.sinh(nu * w / 2)

    def f(w):
        return mp.cos(w * lam) * ahat(1, w) / (1 + ahat(2, w))

    return semi_inf(f) / mp.pi


def main():
    out = {}

    pts = [1, 2, 0.5, 3.7, 0.1 + 0.2j, -2.5 + 0.3j, 10 - 7j, 0.3 + 25j, 150 + 80j, -7.4 - 0.01j, 900 + 0.5j,
           1e-3 + 1e-3j, -0.5 + 1e-8j]
    out["log_gamma"] = [{"z": c(z), "value": c(mp.loggamma(z))} for z in pts]

    out["hurwitz_zeta"] = [{"s": s, "a": a, "value": float(mp.zeta(s, a))}
                           for s in (2, 3, 5, 11) for a in (0.3, 1.0, 7.25, 200.0)]

    out["bernoulli_poly"] = [{"n": n, "x": c(x), "value": c(mp.bernpoly(n, x))}
                             for n in (0, 1, 2, 5, 11) for x in (0.25, 1.5 - 0.75j)]

    kappa = 0.4 - 0.3j
    out["k0"] = [{"lambda": l, "nu": nu, "value": c(k0(l, nu))} for nu in (2.5, 3.7, 5.0) for l in (0.25, 1.0, 2.0)]
    out["k1"] = [{"lambda": l, "x": x, "nu": nu, "kappa": c(kappa), "value": c(k1(l, x, kappa, nu))}
                 for nu in (2.5, 3.7) for x in (0.3, 1.2) for l in (0.0, 0.5, 1.75)]
    out["eps"] = [{"lambda": l, "nu": 3.7, "value": float(eps(l, 3.7))} for l in (0.0, 0.3, 1.1)]

    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
