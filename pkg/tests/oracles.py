"""Independent reference computations used by the tests.

Nothing here imports the package: each oracle is a plain loop or series so
that a bug in the library cannot leak into its own expected values.
"""

from __future__ import annotations

import math

# Frozen values, computed once with 30-digit mpmath arithmetic and plain lattice loops.
R1_UNIT_SQUARE_NEUMANN_100 = 628.8669007259236139
R1_UNIT_SQUARE_DIRICHLET_100 = 205.2158239564256552
R1_UNIT_CUBE_NEUMANN_50 = 317.0413623411746346
R2_UNIT_SQUARE_NEUMANN_100 = 45841.65293666197552
RECT_CENTER_UNIT_SQUARE_100 = 18.77295220699149347
RECT_LOWER_UNIT_SQUARE_100 = -8.491119856219754440
RECT_UPPER_UNIT_SQUARE_100 = 43.83875491912361187
TWOTERM_TERMS_100 = (397.8873577297383394, 53.05164769729844526, -3.272492347489367957)
PRODUCT_TWOTERM_100 = 490.9006837343777581
WEAK_TWOTERM_100 = 433.2551228612706363
HULL_ISOPERIMETRIC_100 = 425.6651355075161172
LAPTEV_CUBE_50 = 119.4081600522408881
BRACKET_K2 = (5.546918084736870902, 44.71856437269982091)
N_UNIT_SQUARE_NEUMANN_1E4 = 827
R1_SUBRECT_DIRICHLET_500 = 472.2503202195273696
R1_UNIT_SQUARE_DIRICHLET_500 = 7676.573665426113395


def j0_series(x: float, terms: int = 60) -> float:
    """J_0(x) = sum_k (-1)^k (x/2)^(2k) / (k!)^2."""
    total = 0.0
    term = 1.0
    q = (x / 2) ** 2
    for k in range(terms):
        total += term
        term *= -q / ((k + 1) ** 2)
    return total


def bessel_j0_first_zero(tol: float = 1e-15) -> float:
    lo, hi = 2.0, 3.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if j0_series(lo) * j0_series(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def brute_box_riesz(lengths, bc: str, z: float, sigma: float = 1.0) -> float:
    """sum (z - e)_+^sigma over box eigenvalues by nested loops (sigma = 0: strict count)."""
    start = 0 if bc == "neumann" else 1
    total = 0.0

    def rec(i, acc):
        nonlocal total
        if i == len(lengths):
            if acc < z:
                total += 1.0 if sigma == 0 else (z - acc) ** sigma
            return
        n = start
        while True:
            v = acc + (math.pi * n / lengths[i]) ** 2
            if v >= z:
                break
            rec(i + 1, v)
            n += 1

    rec(0, 0.0)
    return total


def brute_box_eigenvalues(lengths, bc: str, cutoff: float) -> list[float]:
    start = 0 if bc == "neumann" else 1
    out = []

    def rec(i, acc):
        if i == len(lengths):
            if acc < cutoff:
                out.append(acc)
            return
        n = start
        while True:
            v = acc + (math.pi * n / lengths[i]) ** 2
            if v >= cutoff:
                break
            rec(i + 1, v)
            n += 1

    rec(0, 0.0)
    return sorted(out)


def lattice_sum_1d(R: float, power: float = 1.0, start: int = 0) -> float:
    total = 0.0
    k = start
    while k < R:
        total += (R * R - k * k) ** power
        k += 1
    return total
