"""Independent reference computations for the test suite.

Nothing here imports the package under test.
"""
import mpmath as mp

mp.mp.dps = 40


def phi_ref(x):
    return float(mp.ncdf(mp.mpf(x)))


def bisect(f, lo, hi, iters=400):
    """Root of ``f`` on ``[lo, hi]`` assuming ``f(lo) > 0 >= f(hi)`` or the reverse."""
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    f_lo = f(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def quantile_ref(p):
    return float(bisect(lambda x: mp.ncdf(x) - mp.mpf(p), -40, 40))


def z_s_squared_ref(t_o_sq, t_r_sq, c):
    """Root of ``(t_o^2/z^2 - 1)(t_r^2/z^2 - 1) = c`` below ``min(t_o^2, t_r^2)``."""
    t_o_sq, t_r_sq, c = mp.mpf(t_o_sq), mp.mpf(t_r_sq), mp.mpf(c)
    if t_o_sq == 0 or t_r_sq == 0:
        return 0.0
    f = lambda x: (t_o_sq / x - 1) * (t_r_sq / x - 1) - c
    return float(bisect(f, mp.mpf("1e-60"), min(t_o_sq, t_r_sq)))
