"""Python smoke tests for the pyglsums module."""

import math
import sys

import pyglsums as gl


def approx(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(1.0, abs(b))


def main():
    # exact tuple sums at tiny scale
    r = gl.sum(kind="T", k=2, x=2, mode="exact")
    assert (r["num"], r["den"]) == ("3", "1"), r
    r = gl.sum(kind="S", k=2, x=2, mode="exact")
    assert (r["num"], r["den"]) == ("5", "2"), r

    # fast vs oracle
    fast = gl.fast_s2(200, mode="exact")
    oracle = gl.sum(kind="S", k=2, x=200, mode="exact", algorithm="oracle")
    assert (fast["num"], fast["den"]) == (oracle["num"], oracle["den"])

    # single-variable values
    assert gl.single_fn("G", 4)["num"] == "8"
    assert gl.single_fn("L", 4)["num"] == "24"
    h6 = gl.h_single(6)
    assert (h6["num"], h6["den"]) == ("6", "5")

    # constants
    assert approx(gl.constant("zeta2"), math.pi**2 / 6, 1e-12)

    # beta_2 window
    b = gl.beta_k(2, 2000)
    assert 2.99 <= b["value"] <= 3.0 + b["tail_estimate"], b
    assert b["tail_estimate"] <= 0.01

    # Euler sum
    e = gl.euler_sum_check(10_000)
    assert abs(e["error_vs_2zeta3"]) <= 2e-3

    # fit round trip
    pts = []
    for i in range(10):
        x = 100.0 * 10 ** (i / 2.0)
        t = math.log(x)
        pts.append((x, 2.0 * t**2 - 1.0 * t + 5.0))
    fit = gl.fit_log_polynomial(pts, 2)
    assert approx(fit["leading"], 2.0, 1e-8), fit

    # a quick verification suite end to end
    v = gl.verify("relations", k=2, x=6)
    assert v["overall"], v

    print("python smoke: all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
