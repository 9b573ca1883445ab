#!/usr/bin/env python3
"""Reference ordinates of zeta zeros by bisection on mpmath's Hardy Z.

Independent of the Rust code: uses mpmath.siegelz at 40 digits, a 0.01
scan and bisection to 1e-20. Writes one ordinate per line.

    python3 scripts/reference_zeros.py 120 > crates/core/tests/data/zeta_zeros_120.txt
"""
import sys

import mpmath as mp

mp.mp.dps = 40


def zeros_below(height, step=mp.mpf("0.01")):
    out = []
    t = mp.mpf(0)
    z_prev = mp.siegelz(t)
    while t < height:
        u = min(t + step, mp.mpf(height))
        z = mp.siegelz(u)
        if z_prev * z < 0:
            a, b, za = t, u, z_prev
            while b - a > mp.mpf("1e-20"):
                m = (a + b) / 2
                zm = mp.siegelz(m)
                if za * zm <= 0:
                    b = m
                else:
                    a, za = m, zm
            out.append((a + b) / 2)
        t, z_prev = u, z
    return out


def main():
    height = float(sys.argv[1]) if len(sys.argv) > 1 else 120.0
    zs = zeros_below(height)
    # cross-check against mpmath's own zero locator
    for k, g in enumerate(zs, start=1):
        assert abs(g - mp.zetazero(k).imag) < mp.mpf("1e-15"), k
    print(f"# nontrivial zeta zeros 1/2 + i*gamma, 0 < gamma <= {height:g}")
    print("# height_bound: %g" % height)
    print("# precision: 1e-15")
    for g in zs:
        print(mp.nstr(g, 20, strip_zeros=False))


if __name__ == "__main__":
    main()
