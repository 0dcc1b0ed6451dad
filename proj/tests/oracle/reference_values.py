"""High-precision reference values frozen into the C++ test suite.

Run with mpmath at 40 digits; the printed literals are pasted into
tests/reference_values.hpp. Nothing here is used at build time.
"""
import mpmath as mp

mp.mp.dps = 40


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")


def g(z):
    return mp.loggamma(1 + z) - z * mp.digamma(1 + z)


def lam(theta, alpha):
    s = mp.sqrt(mp.mpc((alpha / 2) ** 2 - 1))
    c = 1 / (2 * mp.pi * theta)
    return c * (alpha / 2 + s), c * (alpha / 2 - s)


def c_oscillator(theta, alpha):
    lp, lm = lam(theta, alpha)
    a = alpha / (2 * mp.pi * theta)
    return 1 - a + lp**2 * mp.psi(1, 1 + lp) + lm**2 * mp.psi(1, 1 + lm)


def s_oscillator(theta, alpha):
    lp, lm = lam(theta, alpha)
    a = alpha / (2 * mp.pi * theta)
    return 1 + mp.log(theta) + a + g(lp) + g(lm)


def c_drude(theta, rho):
    a = 1 / (2 * mp.pi * theta)
    d = mp.sqrt(mp.mpc(1 - 4 / mp.mpf(rho)))
    z0 = rho / (4 * mp.pi * theta)
    zp, zm = z0 * (1 + d), z0 * (1 - d)
    return mp.mpf(1) / 2 - a / d * (zp * mp.psi(1, 1 + zp) - zm * mp.psi(1, 1 + zm))


def e_drude_free(theta, rho):
    # Matsubara energy of the free Drude particle, gamma = 1.
    beta = 1 / theta
    f = lambda n: rho / ((2 * mp.pi * n * theta) ** 2 + rho * 2 * mp.pi * n * theta + rho)
    return (1 + 2 * mp.nsum(f, [1, mp.inf])) / (2 * beta)


show("lngamma(3.7+2.1i)", mp.loggamma(mp.mpc(3.7, 2.1)))
show("lngamma(0.3-4.2i)", mp.loggamma(mp.mpc(0.3, -4.2)))
show("lngamma(-2.5+0.7i)", mp.loggamma(mp.mpc(-2.5, 0.7)))
show("digamma(0.5+5i)", mp.digamma(mp.mpc(0.5, 5)))
show("digamma(12-3i)", mp.digamma(mp.mpc(12, -3)))
show("trigamma(0.25+0.5i)", mp.psi(1, mp.mpc(0.25, 0.5)))
show("trigamma(1+30i)", mp.psi(1, mp.mpc(1, 30)))
show("g(10)", g(10))
show("g(2+3i)", g(mp.mpc(2, 3)))
print("g(10) stirling", mp.nstr(-10 + mp.log(2 * mp.pi * 10) / 2 - mp.mpf(1) / 2, 20))

print("C_osc(1,0)", mp.nstr(c_oscillator(1, mp.mpf("1e-30")).real, 20),
      mp.nstr((1 / (2 * mp.sinh(mp.mpf(1) / 2))) ** 2, 20))
print("C_osc(0.5,1)", mp.nstr(c_oscillator(mp.mpf("0.5"), 1).real, 20))
print("C_osc(0.2,3)", mp.nstr(c_oscillator(mp.mpf("0.2"), 3).real, 20))
print("C_osc(1e-3,1)", mp.nstr(c_oscillator(mp.mpf("1e-3"), 1).real, 20))
print("S_osc(1,0)", mp.nstr(1 / (mp.e - 1) - mp.log(1 - mp.exp(-1)), 20))
print("S_osc(1e-3,1)", mp.nstr(s_oscillator(mp.mpf("1e-3"), 1).real, 20))
print("S_osc(0.5,1)", mp.nstr(s_oscillator(mp.mpf("0.5"), 1).real, 20))
print("C_free(1/2pi)", mp.nstr(mp.pi**2 / 6 - mp.mpf(3) / 2, 20))
print("C_drude(0.5,1)", mp.nstr(c_drude(mp.mpf("0.5"), 1).real, 20))
print("C_drude(0.5,10)", mp.nstr(c_drude(mp.mpf("0.5"), 10).real, 20))
print("C_drude(0.5,4+1e-20)", mp.nstr(c_drude(mp.mpf("0.5"), 4 + mp.mpf("1e-20")).real, 20))
h = mp.mpf("1e-12")
dE = (e_drude_free(mp.mpf("0.5") + h, 1) - e_drude_free(mp.mpf("0.5") - h, 1)) / (2 * h)
print("dE/dT drude(0.5,1)", mp.nstr(dE, 20))
