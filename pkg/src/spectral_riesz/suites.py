"""Verification suites: every inequality checked against its oracle on a fixed grid.

Each suite returns a list of ``CheckResult`` batches. Margins are oriented
so that a nonnegative value means the inequality holds; tolerances only
absorb floating-point rounding (or, for finite-difference spectra, three
times the Richardson error estimate).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

import numpy as np
from scipy.special import jn_zeros

from . import avp, bounds, inequalities, riesz1d
from .geometry import Box, Disk, UnitVector, width
from .report import CheckResult, VerificationRecord
from .spectra_exact import BoundaryCondition, counting, enumerate_box, enumerate_box_count, riesz_mean
from .spectra_numeric import discretize, lowest_eigenvalues, richardson_refine

__all__ = ["SUITES", "run_suite", "from_records", "DEFAULT_SEED"]

DEFAULT_SEED = 42
GOLDEN = (1 + math.sqrt(5)) / 2
CHAIN_BOXES = ((1.0, 1.0), (1.0, math.sqrt(2)), (1.0, 1.0, 1.0), (1.0, 2.0, 0.5))
KROEGER_BOXES = ((1.0, 1.0), (1.0, 1.0, 1.0), (1.0, math.sqrt(2)))
RECTANGLE_RATIOS = (1.0, 1.5, GOLDEN, 3.0, 10.0)
SUBRECTANGLES = ((0.4, 0.3), (0.5, 0.5), (0.2, 0.45), (0.1, 0.5))


def _rounding(*values) -> np.ndarray:
    scale = np.maximum.reduce([np.abs(np.asarray(v, dtype=float)) for v in values])
    return 1e-12 * np.maximum(1.0, scale)


def from_records(name: str, records: Iterable[VerificationRecord], note: str = "") -> CheckResult:
    recs = list(records)
    keys = list(recs[0].inputs) if recs else []
    inputs = {k: np.array([r.inputs[k] for r in recs]) for k in keys}
    return CheckResult(
        name,
        inputs,
        [r.bound for r in recs],
        [r.oracle for r in recs],
        [r.margin for r in recs],
        [r.tolerance for r in recs],
        note,
    )


def _pmap(fn: Callable, items, threads: int) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _box_tag(lengths) -> str:
    return "x".join(format(x, ".6g") for x in lengths)


def _tags(tag: str, n: int) -> np.ndarray:
    return np.full(n, tag, dtype=object)


# --- criterion 1-3: one-dimensional lattice sums ---------------------------------------


def suite_riesz1d(seed: int = DEFAULT_SEED, threads: int = 1, points: int = 10_000, rmax: float = 50.0) -> list[CheckResult]:
    R = np.linspace(rmax / points, rmax, points)
    b = riesz1d.riesz1_bounds(R)
    direct = riesz1d.riesz1_direct(R)
    tol = _rounding(direct)
    out = [
        CheckResult("riesz1d-lower", {"R": R}, b.lower, direct, direct - b.lower, tol),
        CheckResult("riesz1d-upper", {"R": R}, b.upper, direct, b.upper - direct, tol),
    ]
    ints = np.arange(1.0, math.floor(rmax) + 1)
    bi = riesz1d.riesz1_bounds(ints)
    di = riesz1d.riesz1_direct(ints)
    out.append(CheckResult("riesz1d-lower-equality", {"R": ints}, bi.lower, di, 1e-9 - np.abs(bi.lower - di)))
    small = R[R < 1]
    ds = riesz1d.riesz1_direct(small)
    out.append(CheckResult("riesz1d-below-one", {"R": small}, small**2, ds, 1e-12 - np.abs(ds - small**2)))
    f38 = float(riesz1d.sawtooth_excess(0.375))
    out.append(CheckResult("sawtooth-excess-3/8", {"R": [0.375]}, [25 / 96], [f38], [1e-12 - abs(f38 - 25 / 96)]))
    return out


def suite_sawtooth(seed: int = DEFAULT_SEED, threads: int = 1, samples: int = 10_000, rmax: float = 1000.0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    R = rmax * (1 - rng.random(samples))  # (0, rmax]
    closed = riesz1d.riesz1_exact(R)
    direct = riesz1d.riesz1_direct(R)
    rel = np.abs(closed - direct) / np.abs(direct)
    return [CheckResult("sawtooth-identity", {"R": R}, closed, direct, 1e-10 - rel)]


def suite_beta(seed: int = DEFAULT_SEED, threads: int = 1, points: int = 2000, rmax: float = 50.0) -> list[CheckResult]:
    R = np.linspace(rmax / points, rmax, points)
    out = []
    for beta in (0.25, 0.5, 1.0, 2.0, 5.0):
        b = riesz1d.riesz1_beta_bounds(R, beta)
        tol = _rounding(b.exact)
        beta_in = np.full(R.shape, beta)
        out.append(CheckResult(f"beta-lower[{beta:g}]", {"R": R, "beta": beta_in}, b.lower, b.exact, b.exact - b.lower, tol))
        out.append(CheckResult(f"beta-upper[{beta:g}]", {"R": R, "beta": beta_in}, b.upper, b.exact, b.upper - b.exact, tol))
    up = riesz1d.riesz1_sqrt_upper(R)
    direct = riesz1d.riesz1_direct(R, 0.5)
    out.append(CheckResult("sqrt-upper", {"R": R}, up, direct, up - direct, _rounding(direct)))
    return out


# --- criterion 4: Kroeger and the eigenvalue bracket --------------------------------------


def suite_kroeger(seed: int = DEFAULT_SEED, threads: int = 1, kmax: int = 10_000, boxes=KROEGER_BOXES) -> list[CheckResult]:
    def one(lengths):
        spec = enumerate_box_count(lengths, BoundaryCondition.NEUMANN, kmax + 1)
        prof = bounds.kroeger_profile(spec.eigenvalues, len(lengths), math.prod(lengths), kmax)
        m, S, k = prof["m"], prof["S"], prof["k"]
        tol = 1e-9 * m
        tag = _box_tag(lengths)
        inputs = {"box": _tags(tag, kmax), "k": k}
        mu = prof["mu_next"]
        return [
            CheckResult(f"kroeger[{tag}]", inputs, m, (len(lengths) + 2) / len(lengths) * np.cumsum(spec.eigenvalues[:kmax]) / k, m * (1 - S), tol),
            CheckResult(f"bracket-lower[{tag}]", inputs, prof["lower"], mu, mu - prof["lower"], tol),
            CheckResult(f"bracket-upper[{tag}]", inputs, prof["upper"], mu, prof["upper"] - mu, tol),
        ]

    return [c for batch in _pmap(one, boxes, threads) for c in batch]


# --- criterion 5: two-term Riesz-mean chain -----------------------------------------------


def _log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.geomspace(lo, hi, n)


def suite_twoterm(seed: int = DEFAULT_SEED, threads: int = 1, boxes=CHAIN_BOXES, zmax: float = 1e4, points: int = 200) -> list[CheckResult]:
    z = _log_grid(1.0, zmax, points)

    def one(lengths):
        d = len(lengths)
        vol = math.prod(lengths)
        spec = enumerate_box(lengths, BoundaryCondition.NEUMANN, zmax * (1 + 1e-9))
        exact = riesz_mean(spec, z, 1.0)
        tag = _box_tag(lengths)
        laptev = bounds.laptev_lower(z, d, vol).total
        res = []
        for a in range(d):
            w = width(Box(lengths), UnitVector.axis(d, a))
            inputs = {"box": _tags(tag, z.size), "axis": np.full(z.size, a), "z": z}
            plain = bounds.twoterm_lower(z, d, vol, w, "plain").total
            pos = bounds.twoterm_lower(z, d, vol, w, "positive_part").total
            weak = bounds.weak_twoterm_lower(z, d, vol, w).total
            prod = bounds.product_twoterm_lower(z, d, vol, lengths[a]).total
            tol = _rounding(exact, pos)
            sfx = f"[{tag},axis={a}]"
            res += [
                CheckResult("laptev<=positive-part" + sfx, inputs, laptev, pos, pos - laptev, tol),
                CheckResult("plain<=positive-part" + sfx, inputs, plain, pos, pos - plain, tol),
                CheckResult("positive-part<=R1" + sfx, inputs, pos, exact, exact - pos, tol),
                CheckResult("weak<=R1" + sfx, inputs, weak, exact, exact - weak, tol),
                CheckResult("product<=R1" + sfx, inputs, prod, exact, exact - prod, tol),
            ]
        return res

    return [c for batch in _pmap(one, boxes, threads) for c in batch]


# --- criterion 6: rectangle sandwich --------------------------------------------------------


def brute_riesz1_rectangle(l1: float, l2: float, z: float, bc) -> float:
    """Double-loop R_1 of a rectangle, written independently of the enumerator."""
    start = 0 if BoundaryCondition.parse(bc) is BoundaryCondition.NEUMANN else 1
    total = 0.0
    m = start
    while (math.pi * m / l1) ** 2 < z:
        n = start
        while True:
            ev = (math.pi * m / l1) ** 2 + (math.pi * n / l2) ** 2
            if ev >= z:
                break
            total += z - ev
            n += 1
        m += 1
    return total


def suite_rectangle(
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    ratios=RECTANGLE_RATIOS,
    points: int = 1000,
    l1: float = 1.0,
    spot: tuple[float, float, float] | None = (1.0, 1.0, 100.0),
) -> list[CheckResult]:
    jobs = [(r, bc) for r in ratios for bc in (BoundaryCondition.NEUMANN, BoundaryCondition.DIRICHLET)]

    def one(job):
        ratio, bc = job
        l2 = l1 * ratio
        zmax = 1e4 * math.pi**2 / l2**2
        z = np.linspace(zmax / points, zmax, points)
        rb = bounds.rectangle_riesz_bounds(l1, l2, z, bc)
        c = rb.center
        tol = _rounding(riesz_mean(enumerate_box((l1, l2), bc, zmax), z, 1.0))
        tag = f"{bc.value},l2/l1={ratio:.6g}"
        inputs = {"l1": np.full(z.size, l1), "l2": np.full(z.size, l2), "z": z}
        return [
            CheckResult(f"rectangle-lower[{tag}]", inputs, rb.lower.total, c, c - rb.lower.total, tol),
            CheckResult(f"rectangle-upper[{tag}]", inputs, rb.upper.total, c, rb.upper.total - c, tol),
        ]

    out = [c for batch in _pmap(one, jobs, threads) for c in batch]
    if spot is not None:
        a, b, zs = spot
        rb = bounds.rectangle_riesz_bounds(a, b, zs, "neumann")
        ref = brute_riesz1_rectangle(a, b, zs, "neumann") - bounds.rectangle_leading(a, b, zs, "neumann")
        out.append(CheckResult("rectangle-center-spot", {"l1": [a], "l2": [b], "z": [zs]}, [rb.center], [ref], [1e-6 - abs(rb.center - ref)]))
    return out


# --- criteria 7 and 8: Berezin, Polya curves, the product counting bound -----------------------


def suite_polya(seed: int = DEFAULT_SEED, threads: int = 1, zmax: float = 1e4, points: int = 200, deltas=(0.25, 0.5)) -> list[CheckResult]:
    out = []
    z = _log_grid(1.0, zmax, points)
    for lengths in CHAIN_BOXES:
        d = len(lengths)
        vol = math.prod(lengths)
        tag = _box_tag(lengths)
        dspec = enumerate_box(lengths, BoundaryCondition.DIRICHLET, zmax * (1 + 1e-9))
        exact = riesz_mean(dspec, z, 1.0)
        ber = bounds.berezin_upper(z, d, vol).total
        out.append(CheckResult(f"berezin[{tag}]", {"box": _tags(tag, z.size), "z": z}, ber, exact, ber - exact, _rounding(ber)))
        nspec = enumerate_box(lengths, BoundaryCondition.NEUMANN, zmax)
        j = np.arange(1, len(nspec) + 1)
        curve = bounds.polya_reference(j, d, vol, "neumann")
        out.append(CheckResult(f"polya-neumann[{tag}]", {"box": _tags(tag, j.size), "j": j}, curve, nspec.eigenvalues, curve - nspec.eigenvalues, _rounding(curve)))
        j = np.arange(1, len(dspec) + 1)
        curve = bounds.polya_reference(j, d, vol, "dirichlet")
        out.append(CheckResult(f"polya-dirichlet[{tag}]", {"box": _tags(tag, j.size), "j": j}, curve, dspec.eigenvalues, dspec.eigenvalues - curve, _rounding(curve)))
    out += suite_polya_product(seed, threads, zmax, points, deltas)
    return out


def suite_polya_product(seed: int = DEFAULT_SEED, threads: int = 1, zmax: float = 1e4, points: int = 200, deltas=(0.25, 0.5)) -> list[CheckResult]:
    """The product counting bound on [0,1]^2 x [0,delta] against exact N(z)."""
    out = []
    z = _log_grid(1.0, zmax, points)
    for delta in deltas:
        lengths = (1.0, 1.0, delta)
        spec = enumerate_box(lengths, BoundaryCondition.NEUMANN, zmax * (1 + 1e-9))
        n = counting(spec, z).astype(float)
        low = bounds.polya_counting_lower(z, 3, delta, delta).total
        tag = _box_tag(lengths)
        out.append(CheckResult(f"polya-product[{tag}]", {"box": _tags(tag, z.size), "z": z}, low, n, n - low, _rounding(n)))
    return out


# --- criteria 9 and 10: Dirichlet domination and solver calibration -------------------------------


def suite_dirichlet_box(
    seed: int = DEFAULT_SEED, threads: int = 1, h: float = 1 / 128, m: int = 40, points: int = 200, zmax: float = 2000.0
) -> list[CheckResult]:
    out = []
    box = (1.0, 1.0)
    for omega in SUBRECTANGLES:
        z = np.linspace(zmax / points, zmax, points)
        spec = enumerate_box(omega, BoundaryCondition.DIRICHLET, zmax)
        left, right, tol = bounds.domination_sides(spec, box, z)
        tag = _box_tag(omega)
        inputs = {"omega": _tags(tag, z.size), "z": z}
        out.append(CheckResult(f"domination[{tag}]", inputs, left, right, left - right, tol))
        up = bounds.dirichlet_2d_explicit_upper(z, math.prod(omega), box).total
        out.append(CheckResult(f"explicit-upper[{tag}]", inputs, up, right, up - right, tol))
    disk = Disk(0.25, (0.5, 0.5))
    spec = richardson_refine(disk, h, m, BoundaryCondition.DIRICHLET, threads=threads)
    z = np.linspace(spec.eigenvalues[0] / 2, spec.cutoff, points)
    left, right, tol = bounds.domination_sides(spec, box, z)
    inputs = {"omega": _tags("disk(r=0.25)", z.size), "z": z}
    note = f"finite differences, h={h:g} -> {h / 2:g}, {m} eigenvalues"
    out.append(CheckResult("domination[disk]", inputs, left, right, left - right, tol, note))
    up = bounds.dirichlet_2d_explicit_upper(z, math.pi * 0.25**2, box).total
    out.append(CheckResult("explicit-upper[disk]", inputs, up, right, up - right, tol, note))
    return out


def suite_numeric(seed: int = DEFAULT_SEED, threads: int = 1) -> list[CheckResult]:
    target = 2 * math.pi**2
    sq = richardson_refine(Box((1.0, 1.0)), 1 / 64, 1, "dirichlet", threads=threads).eigenvalues[0]
    j01 = float(jn_zeros(0, 1)[0])
    dk = richardson_refine(Disk(1.0), 1 / 64, 1, "dirichlet", threads=threads).eigenvalues[0]
    neu = lowest_eigenvalues(discretize(Box((1.0, 1.0)), 1 / 64, "neumann"), 1).eigenvalues[0]
    return [
        CheckResult("square-lambda1", {"h": [1 / 64]}, [target], [sq], [5e-4 - abs(sq / target - 1)]),
        CheckResult("disk-lambda1", {"h": [1 / 64]}, [j01**2], [dk], [3e-3 - abs(dk / j01**2 - 1)]),
        CheckResult("square-neumann-mu1", {"h": [1 / 64]}, [0.0], [neu], [1e-8 - abs(neu)]),
    ]


# --- criterion 11: refined Young / Hoelder ------------------------------------------------------


def _random_pair_values(rng, n, s, r):
    w = rng.uniform(0.1, 2.0, n)
    av = rng.exponential(1.0, n) * (rng.random(n) > 0.15)
    av[rng.integers(n)] += 0.1
    bv = rng.exponential(1.0, n) * (rng.random(n) > 0.15)
    bv[rng.integers(n)] += 0.1
    a = inequalities.normalize(inequalities.MeasureVector(w, av), s)
    b = inequalities.normalize(inequalities.MeasureVector(w, bv), r)
    return a, b


def suite_ineq(seed: int = DEFAULT_SEED, threads: int = 1, samples: int = 100_000, pairs: int = 10_000) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    s = rng.uniform(2.0, 5.0, samples)
    r = s / (s - 1)
    # log-uniform magnitudes with a^s, b^r up to 1e6, plus exact zeros and equality cases
    a = 10 ** rng.uniform(-3, 6 / s)
    b = 10 ** rng.uniform(-3, 6 / r)
    b = np.where(rng.random(samples) < 0.02, 0.0, b)
    a = np.where(rng.random(samples) < 0.02, 0.0, a)
    eq = rng.random(samples) < 0.02
    b = np.where(eq, a ** (s - 1), b)
    out = []
    for form in inequalities.YOUNG_FORMS:
        lhs, bound, _ = inequalities.young_arrays(a, b, r, s, form)
        margin = bound - lhs if form.startswith("refined") else lhs - bound
        scale = 1 + a * b + b**r / r + a**s / s
        out.append(CheckResult(f"young-{form}", {"a": a, "b": b, "s": s}, bound, lhs, margin, 1e-12 * scale))

    per = pairs // 4
    for sv in (2.0, 2.5, 3.0, 5.0):
        pair = inequalities.ConjugatePair.from_s(sv)
        rows = {f: [] for f in inequalities.HOLDER_FORMS}
        tight_lo, tight_hi, eq_flag, eq_attained, strict = [], [], [], [], []
        for t in range(per):
            n = int(rng.integers(2, 12))
            if t % 10 == 0:
                # an equality case: b^r = a^s pointwise
                a_vec, _ = _random_pair_values(rng, n, sv, pair.r)
                b_vec = inequalities.MeasureVector(a_vec.weights, a_vec.values ** (sv / pair.r))
            else:
                a_vec, b_vec = _random_pair_values(rng, n, sv, pair.r)
            g = {f: inequalities.holder_gaps(a_vec, b_vec, pair, f) for f in inequalities.HOLDER_FORMS}
            for f, res in g.items():
                rows[f].append((res.lower, res.middle, res.upper))
            tight_lo.append(g["1b"].lower - g["1a"].lower)
            tight_hi.append(g["1a"].upper - g["1b"].upper)
            # independent pointwise test of a^s = b^r
            dev = max(abs(x**sv - y**pair.r) for x, y in zip(a_vec.values, b_vec.values))
            expected = dev <= 1e-9
            eq_flag.append(all(g[f].equality == expected for f in g))
            eq_attained.append(all(g[f].attained for f in g) if expected else True)
            if sv != 2.0 and dev > 1e-3:
                # clearly unequal: the forms with an "iff" statement must not be attained
                strict.append(not g["1a"].attained and not g["1c"].attained)
        sfx = f"[s={sv:g}]"
        sin = {"s": np.full(per, sv), "sample": np.arange(per)}
        for f, vals in rows.items():
            lo, mid, up = np.array(vals).T
            tol = 1e-12 * np.maximum(1.0, np.abs(mid))
            out.append(CheckResult(f"holder-{f}-lower{sfx}", sin, lo, mid, mid - lo, tol))
            out.append(CheckResult(f"holder-{f}-upper{sfx}", sin, up, mid, up - mid, tol))
        out.append(CheckResult(f"holder-1b-tighter{sfx}", sin, 0.0, 0.0, np.minimum(tight_lo, tight_hi), 1e-12))
        for label, flags in (("equality-flag", eq_flag), ("equality-attained", eq_attained), ("strict-when-unequal", strict)):
            if not flags:
                continue
            flags = np.array(flags)
            idx = {"s": np.full(flags.size, sv), "sample": np.arange(flags.size)}
            out.append(CheckResult(f"holder-{label}{sfx}", idx, 1.0, flags.astype(float), np.where(flags, 0.0, -1.0)))
    return out


# --- criterion 12: averaged variational principle ---------------------------------------------


def suite_avp(seed: int = DEFAULT_SEED, threads: int = 1, trials: int = 1000, n: int = 20, kmax: int = 100, grid: int = 200) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    lhs, rhs, eq_gap, zs = [], [], [], []
    for _ in range(trials):
        op = avp.random_operator(n, rng)
        fam = avp.random_parseval_family(n, int(rng.integers(n, 2 * n + 1)), rng)
        z = float(rng.uniform(op.eigenvalues[0] - 1, op.eigenvalues[-1] + 1))
        res = avp.avp_check(op, fam, z)
        lhs.append(res.lhs)
        rhs.append(res.rhs)
        zs.append(z)
        e = avp.avp_check(op, avp.eigenbasis_family(op, z), z)
        eq_gap.append(abs(e.lhs - e.rhs))
    lhs, rhs, zs = map(np.array, (lhs, rhs, zs))
    out = [
        CheckResult("avp-parseval", {"trial": np.arange(trials), "z": zs}, rhs, lhs, lhs - rhs, 1e-9 * np.maximum(1, np.abs(zs)) * n),
        CheckResult("avp-eigenbasis-equality", {"trial": np.arange(trials), "z": zs}, 0.0, np.array(eq_gap), 1e-10 - np.array(eq_gap)),
    ]
    records = []
    for k in range(1, kmax + 1):
        m_k = bounds.weyl_constant(2) * k
        R = np.linspace(3 * math.sqrt(m_k) / grid, 3 * math.sqrt(m_k), grid)
        records += avp.kroeger_demo((1.0, 1.0), k, R)
    out.append(from_records("kroeger-avp", [r for r in records if r.name == "kroeger-avp"]))
    out.append(from_records("kroeger-normalized", [r for r in records if r.name == "kroeger-normalized"]))
    return out


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "riesz1d": lambda seed=DEFAULT_SEED, threads=1: suite_riesz1d(seed, threads) + suite_sawtooth(seed, threads) + suite_beta(seed, threads),
    "kroeger": suite_kroeger,
    "twoterm": suite_twoterm,
    "rectangle": suite_rectangle,
    "polya": suite_polya,
    "dirichlet-box": lambda seed=DEFAULT_SEED, threads=1: suite_dirichlet_box(seed, threads) + suite_numeric(seed, threads),
    "avp": suite_avp,
    "ineq": suite_ineq,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, threads: int = 1) -> list[CheckResult]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](seed=seed, threads=threads)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}") from None
    return fn(seed=seed, threads=threads)
