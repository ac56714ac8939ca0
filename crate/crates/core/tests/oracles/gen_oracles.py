"""Reference values frozen in the integration tests.

Every value is computed here from a representation the library does not
use for that quantity (direct series at high precision, Fourier inversion,
spectral integrals), so agreement is a genuine cross-check.

    python3 gen_oracles.py
"""

import mpmath as mp

mp.mp.dps = 40


def wright_f_series(nu, z, terms=400):
    # F_nu(z) = sum_{n>=1} (-z)^n / (n! Gamma(-nu n))
    # explicit partial sum; extrapolating summation misreads this series
    return mp.fsum((-z) ** n * mp.rgamma(-nu * n) / mp.factorial(n) for n in range(1, terms))


def stable_sym_cf_inversion(alpha, x, scale=1):
    # (1/pi) int_0^inf cos(kx) exp(-scale k^alpha) dk
    f = lambda k: mp.cos(k * x) * mp.exp(-scale * k ** alpha)
    if x == 0:
        return mp.quad(f, [0, mp.inf]) / mp.pi
    return mp.quadosc(f, [0, mp.inf], omega=x) / mp.pi


def ml_negative(beta, y):
    # E_beta(-y), 0 < beta < 1, from the spectral integral with t = y^(1/beta)
    t = y ** (1 / beta)
    k = lambda r: r ** (beta - 1) * mp.sin(beta * mp.pi) / (
        mp.pi * (r ** (2 * beta) + 2 * r ** beta * mp.cos(beta * mp.pi) + 1))
    return mp.quad(lambda r: mp.exp(-r * t) * k(r), [0, 1, 10, mp.inf])


def green_sym_cf_inversion(alpha, beta, x, t, cut=200):
    # (1/pi) int_0^inf cos(kx) E_beta(-k^alpha t^beta) dk. Below `cut`,
    # panel quadrature with the spectral-integral E; above it, the
    # power-law expansion E_beta(-y) ~ sum_k (-1)^(k+1) y^-k / Gamma(1 - beta k).
    f = lambda k: mp.cos(k * x) * ml_negative(beta, k ** alpha * t ** beta)
    panels = [mp.mpf(0)] + [mp.pi / (2 * x) * (j + 1) for j in range(int(cut * 2 * x / mp.pi))]
    head = mp.quad(f, panels)
    tail = 0
    for k in range(1, 6):
        c = (-1) ** (k + 1) * t ** (-beta * k) * mp.rgamma(1 - beta * k)
        tail += c * mp.quadosc(lambda q: mp.cos(q * x) * q ** (-alpha * k), [panels[-1], mp.inf], omega=x)
    return (head + tail) / mp.pi


def main():
    mp.mp.dps = 20
    rows = {
        "wright_f(0.4, 1.7)": wright_f_series(mp.mpf("0.4"), mp.mpf("1.7")),
        "L_1.5^0(50)": stable_sym_cf_inversion(mp.mpf("1.5"), 50),
        "L_1.5^0(2)": stable_sym_cf_inversion(mp.mpf("1.5"), 2),
        "f_1.5,0(x=1, t*=2)": stable_sym_cf_inversion(mp.mpf("1.5"), 1, scale=2),
        "levy_smirnov_median": 1 / (4 * mp.erfinv(mp.mpf("0.5")) ** 2),
        "E_0.9(-2^1.5)": ml_negative(mp.mpf("0.9"), mp.mpf(2) ** mp.mpf("1.5")),
        "1/(2 Gamma(0.6))": 1 / (2 * mp.gamma(mp.mpf("0.6"))),
    }
    for k, v in rows.items():
        print(f"{k:28s} {mp.nstr(v, 20)}")
    mp.mp.dps = 15
    print(f"{'u_1.5,0.9(1, 1)':28s} {mp.nstr(green_sym_cf_inversion(mp.mpf('1.5'), mp.mpf('0.9'), 1, 1), 15)}")


if __name__ == "__main__":
    main()
