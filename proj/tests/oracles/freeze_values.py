"""High-precision reference values frozen into the C++ unit tests.

Every number here is computed by a route independent of the library code:
kernel coefficients come from Taylor expansion of the closed-form generating
function, iterated erfc values from direct quadrature of their integral
definition. Run with `python3 tests/oracles/freeze_values.py`.
"""
import mpmath as mp

mp.mp.dps = 40


def kernel_params(rho, b, c, h, tau, sigma, theta):
    rho, b, c, h, tau = map(mp.mpf, (rho, b, c, h, tau))
    sigma, theta = mp.mpf(sigma), mp.mpf(theta)
    a1 = h**2 * rho / (2 * tau * b)
    a0 = h**2 * c / (2 * b)
    d0 = a0 / a1
    d1 = 2 / a1
    alpha0 = 1 - d0 / (1 + sigma * d0)
    alpha1 = 1 - (d0 * (1 - 4 * theta) + d1) / ((1 + sigma * d0) * (1 - 4 * theta) + sigma * d1)
    delta = (1 + sigma * d0) * ((1 + sigma * d0) * (1 - 4 * theta) + sigma * d1)
    return dict(a1=a1, a0=a0, d0=d0, d1=d1, alpha0=alpha0, alpha1=alpha1,
                alpha=alpha0 * alpha1, beta=(alpha0 + alpha1) / 2, delta=delta)


def kernel_taylor(p, n):
    # R = coefficients of -2 a1 sqrt(delta) * sqrt((1 - alpha0 z)(1 - alpha1 z))
    f = lambda z: -2 * p["a1"] * mp.sqrt(p["delta"]) * mp.sqrt((1 - p["alpha0"] * z) * (1 - p["alpha1"] * z))
    return mp.taylor(f, 0, n)


def iterated_erfc_quad(n, xi):
    xi = mp.mpf(xi)
    return 2 / mp.sqrt(mp.pi) * mp.quad(lambda t: (t - xi)**n / mp.factorial(n) * mp.exp(-t**2), [xi, mp.inf])


def show(label, v):
    print(f"{label} = {mp.nstr(v, 20)}")


if __name__ == "__main__":
    print("# erfc reference")
    for xi in ["0", "0.5", "1", "2"]:
        show(f"erfc({xi})", mp.erfc(mp.mpf(xi)))

    print("# iterated erfc by quadrature")
    for n in range(5):
        for xi in ["0", "0.5", "1", "2"]:
            show(f"I_{n}({xi})", iterated_erfc_quad(n, xi))

    print("# u2 = 32 t^2 I_4(x / (2 sqrt t))")
    for x, t in [("0.5", "0.25"), ("1", "1"), ("0.1", "0.01")]:
        xi = mp.mpf(x) / (2 * mp.sqrt(mp.mpf(t)))
        show(f"u2({x},{t})", 32 * mp.mpf(t)**2 * iterated_erfc_quad(4, xi))

    print("# u1(2.5, 0), x*=1.25, t0=1/32")
    show("u1", mp.exp(-(mp.mpf("2.5") - mp.mpf("1.25"))**2 / (4 * mp.mpf(1) / 32)))

    cases = {
        "unit (h=tau=1, sigma=1, theta=0)": (1, 1, 0, 1, 1, 1, 0),
        "example1 (h=0.05, tau=1/1500, sigma=1/2, theta=1/12)": (1, 1, 0, "0.05", mp.mpf(1) / 1500, mp.mpf(1) / 2, mp.mpf(1) / 12),
        "example2 (h=0.1, tau=0.01, sigma=1/2, theta=1/12)": (1, 1, 0, "0.1", "0.01", mp.mpf(1) / 2, mp.mpf(1) / 12),
        "reactive (rho=2, b=0.5, c=3, h=0.2, tau=0.05, sigma=1, theta=1/6)": (2, "0.5", 3, "0.2", "0.05", 1, mp.mpf(1) / 6),
    }
    for name, args in cases.items():
        p = kernel_params(*args)
        print(f"# kernel {name}")
        for k in ["a1", "d0", "d1", "alpha0", "alpha1", "alpha", "beta", "delta"]:
            show(k, p[k])
        coeffs = kernel_taylor(p, 12)
        for m in [0, 1, 2, 3, 5, 10, 12]:
            show(f"R[{m}]", coeffs[m])
