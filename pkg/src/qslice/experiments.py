"""Runnable verification harnesses.

Two families: identity sweeps, which re-run the algebraic identities on
random instances and report the worst residual, and the density scan,
which probes the image of a truncated essential-singularity model near its
center and records how many random targets it approaches (the
Casorati-Weierstrass experiment).  Everything is deterministic given the
seed; reports serialize to stable JSON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleEvaluation, UnknownIdentity
from .geometry import represent, sigma, tau
from .laurent import (LaurentExpansion, eval_truncated_many,
                      expansion_from_coefficients, star_power_value)
from .polynomial import QPolynomial, coeff_distance, star_mul
from .quaternion import I as QI
from .quaternion import Quaternion
from .rational import from_quotient, transport
from .rng import Xoshiro256

DENSITY_THRESHOLD_NOTE = (
    "hit-fraction threshold is an engineering choice; the theory asserts "
    "density of the image, not a rate")


# --- random instance helpers -------------------------------------------------

def random_quaternion(rng: Xoshiro256, box: float = 1.0) -> Quaternion:
    return Quaternion(rng.uniform(-box, box), rng.uniform(-box, box),
                      rng.uniform(-box, box), rng.uniform(-box, box))


def random_unit_imaginary(rng: Xoshiro256) -> Quaternion:
    while True:
        v = np.array([rng.normal(), rng.normal(), rng.normal()])
        n = float(np.linalg.norm(v))
        if n > 1e-3:
            v /= n
            return Quaternion(0.0, v[0], v[1], v[2])


def random_polynomial(rng: Xoshiro256, max_degree: int = 5, box: float = 1.0) -> QPolynomial:
    deg = 1 + int(rng.random() * max_degree)
    coeffs = [random_quaternion(rng, box) for _ in range(deg + 1)]
    if abs(coeffs[-1]) < 0.1:
        coeffs[-1] = coeffs[-1] + Quaternion(0.5)
    return QPolynomial(coeffs)


# --- identity sweeps ----------------------------------------------------------

@dataclass(frozen=True)
class SweepReport:
    identity: str
    trials: int
    seed: int
    tolerance: float
    passed: bool
    worst_residual: float
    worst_trial: int
    worst_case: dict

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "worst_trial": self.worst_trial,
            "worst_case": self.worst_case,
        }


def _sweep_product_formula(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng)
    g = random_polynomial(rng)
    q = random_quaternion(rng, 1.5)
    prod = star_mul(f, g)
    lhs = prod.eval(q)
    fq = f.eval(q)
    scale = (1.0 + f.scale_at(abs(q))) * (1.0 + g.scale_at(abs(q)))
    if abs(fq) <= 1e-12 * scale:
        resid = abs(lhs) / scale
    else:
        moved = fq.inverse() * q * fq
        resid = abs(lhs - fq * g.eval(moved)) / scale
    return resid, {"f": repr(f), "g": repr(g), "q": str(q)}


def _sweep_representation(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng)
    x = rng.uniform(-1.5, 1.5)
    y = rng.uniform(0.05, 1.5)
    i_unit = random_unit_imaginary(rng)
    j_unit = random_unit_imaginary(rng)
    base = Quaternion(x)
    direct = f.eval(base + j_unit * y)
    recon = represent(f.eval(base + i_unit * y), f.eval(base - i_unit * y),
                      i_unit, j_unit)
    scale = 1.0 + f.scale_at(abs(base) + y)
    return abs(direct - recon) / scale, {"f": repr(f), "x": x, "y": y,
                                         "I": str(i_unit), "J": str(j_unit)}


def _sweep_star_inverse(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng, max_degree=4)
    unit = from_quotient(f, f)
    resid = (unit.numerator - QPolynomial.one()).norm()
    den = unit.denominator.coeffs
    pad = np.zeros(max(den.shape[0], 1))
    pad[:den.shape[0]] = den
    pad[0] -= 1.0
    resid = max(resid, float(np.abs(pad).max()))
    for _ in range(20):
        q = random_quaternion(rng, 1.5)
        try:
            val = unit.eval(q)
        except PoleEvaluation:
            continue
        resid = max(resid, abs(val - Quaternion(1.0)))
        break
    return resid, {"f": repr(f)}


def _sweep_transport(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng, max_degree=4)
    g = random_polynomial(rng, max_degree=4)
    rat = from_quotient(f, g)
    for _ in range(50):
        q = random_quaternion(rng, 1.5)
        try:
            moved = transport(f, q)
            lhs = rat.eval(q)
        except PoleEvaluation:
            continue
        fv = f.eval(moved)
        if abs(fv) <= 1e-9 * (1.0 + f.scale_at(abs(q))):
            continue
        rhs = fv.inverse() * g.eval(moved)
        scale = 1.0 + abs(rhs)
        return abs(lhs - rhs) / scale, {"f": repr(f), "g": repr(g), "q": str(q)}
    return 0.0, {"f": repr(f), "g": repr(g), "note": "no admissible point sampled"}


def _sweep_transport_inverse(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng, max_degree=4)
    for _ in range(50):
        q = random_quaternion(rng, 1.5)
        try:
            there = transport(f, q)
            back = transport(f.regular_conj(), there)
        except PoleEvaluation:
            continue
        return abs(back - q) / (1.0 + abs(q)), {"f": repr(f), "q": str(q)}
    return 0.0, {"f": repr(f), "note": "no admissible point sampled"}


def _sweep_conj_reversal(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng)
    g = random_polynomial(rng)
    lhs = star_mul(f, g).regular_conj()
    rhs = star_mul(g.regular_conj(), f.regular_conj())
    scale = 1.0 + f.norm() * g.norm()
    return coeff_distance(lhs, rhs) / scale, {"f": repr(f), "g": repr(g)}


def _sweep_associativity(rng: Xoshiro256) -> tuple[float, dict]:
    f = random_polynomial(rng, max_degree=4)
    g = random_polynomial(rng, max_degree=4)
    h = random_polynomial(rng, max_degree=4)
    lhs = star_mul(star_mul(f, g), h)
    rhs = star_mul(f, star_mul(g, h))
    scale = 1.0 + f.norm() * g.norm() * h.norm()
    return coeff_distance(lhs, rhs) / scale, {"f": repr(f), "g": repr(g), "h": repr(h)}


def _power_pair(rng: Xoshiro256) -> tuple[Quaternion, Quaternion]:
    p = random_quaternion(rng, 1.5)
    q = random_quaternion(rng, 1.5)
    return p, q


def _sweep_power_upper(rng: Xoshiro256) -> tuple[float, dict]:
    p, q = _power_pair(rng)
    n = 1 + int(rng.random() * 20)
    val = abs(star_power_value(p, n, q))
    bound = sigma(q, p) ** n * (1.0 + 1e-10)
    resid = max(0.0, val - bound) / (1.0 + bound)
    return resid, {"p": str(p), "q": str(q), "n": n}


def _sweep_power_lower(rng: Xoshiro256) -> tuple[float, dict]:
    for _ in range(100):
        p, q = _power_pair(rng)
        if tau(q, p) <= 1e-3:
            continue
        m = 1 + int(rng.random() * 20)
        val = abs(star_power_value(p, -m, q))
        bound = tau(q, p) ** (-m) * (1.0 + 1e-10)
        return max(0.0, val - bound) / (1.0 + bound), {"p": str(p), "q": str(q), "m": m}
    return 0.0, {"note": "no admissible pair sampled"}


def _sweep_power_limit(rng: Xoshiro256) -> tuple[float, dict]:
    # slice angle bounded away from degenerate: the n = 50 root is within
    # 2% of sigma only when the interpolation weight is not tiny
    for _ in range(200):
        x = rng.uniform(-1.0, 1.0)
        yp = rng.uniform(0.2, 1.2)
        yq = rng.uniform(0.2, 1.2)
        iu = random_unit_imaginary(rng)
        ju = random_unit_imaginary(rng)
        cosang = -(iu * ju).x0
        if abs(cosang) > 0.5:
            continue
        p = Quaternion(x) + iu * yp
        q = Quaternion(rng.uniform(-1.0, 1.0)) + ju * yq
        if tau(q, p) > 0.8 * sigma(q, p) or tau(q, p) <= 1e-3:
            continue
        n = 50
        val = abs(star_power_value(p, n, q)) ** (1.0 / n)
        resid = abs(val - sigma(q, p)) / sigma(q, p)
        return max(0.0, resid - 0.02), {"p": str(p), "q": str(q)}
    return 0.0, {"note": "no admissible pair sampled"}


_REGISTRY = {
    "product_formula": (_sweep_product_formula, 1e-8),
    "representation": (_sweep_representation, 1e-8),
    "star_inverse": (_sweep_star_inverse, 1e-8),
    "transport": (_sweep_transport, 1e-8),
    "transport_inverse": (_sweep_transport_inverse, 1e-8),
    "conj_reversal": (_sweep_conj_reversal, 1e-8),
    "associativity": (_sweep_associativity, 1e-8),
    "power_upper": (_sweep_power_upper, 1e-10),
    "power_lower": (_sweep_power_lower, 1e-10),
    "power_limit": (_sweep_power_limit, 1e-10),
}


def identity_names() -> list[str]:
    return sorted(_REGISTRY)


def identity_sweep(which: str, trials: int, seed: int) -> SweepReport:
    """Run one registered identity on `trials` random instances."""
    if which not in _REGISTRY:
        raise UnknownIdentity(f"unknown identity {which!r}; known: {identity_names()}")
    fn, tol = _REGISTRY[which]
    rng = Xoshiro256(seed)
    worst = 0.0
    worst_trial = -1
    worst_case: dict = {}
    for t in range(trials):
        resid, case = fn(rng)
        if resid > worst:
            worst, worst_trial, worst_case = resid, t, case
    return SweepReport(which, trials, seed, tol, worst <= tol, worst,
                       worst_trial, worst_case)


# --- density scan -------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientGenerator:
    """Reproducible coefficient rules for truncated singular models."""

    rule: str  # "reciprocal_factorial" | "geometric" | "custom"
    c: Quaternion = Quaternion(1.0)
    ratio: float = 0.5
    custom_negative: tuple = ()

    def expansion(self, p: Quaternion, depth: int) -> LaurentExpansion:
        """Window with negative tail a_{-m} for m = 1..depth plus a_0 = 0."""
        coeffs: list[Quaternion] = []
        if self.rule == "reciprocal_factorial":
            coeffs = [self.c * (1.0 / math.factorial(m)) for m in range(depth, 0, -1)]
        elif self.rule == "geometric":
            coeffs = [self.c * (self.ratio ** m) for m in range(depth, 0, -1)]
        elif self.rule == "custom":
            tail = list(self.custom_negative[:depth])
            coeffs = list(reversed(tail))
        else:
            raise ValueError(f"unknown generator rule {self.rule!r}")
        coeffs.append(Quaternion(0.0))  # a_0
        return expansion_from_coefficients(p, coeffs, n_min=-len(coeffs) + 1,
                                           exact_negative_tail=False)


@dataclass(frozen=True)
class Witness:
    target: Quaternion
    point: Quaternion
    residual: float


@dataclass(frozen=True)
class DensityScanResult:
    rule: str
    center: Quaternion
    radius: float
    eps: float
    truncation: int
    seed: int
    budget: int
    targets_tried: int
    targets_hit: int
    witnesses: tuple[Witness, ...]

    @property
    def hit_fraction(self) -> float:
        return self.targets_hit / self.targets_tried if self.targets_tried else 0.0

    def to_json_dict(self) -> dict:
        return {
            "rule": self.rule,
            "center": str(self.center),
            "radius": self.radius,
            "eps": self.eps,
            "truncation": self.truncation,
            "seed": self.seed,
            "budget": self.budget,
            "targets_tried": self.targets_tried,
            "targets_hit": self.targets_hit,
            "hit_fraction": self.hit_fraction,
            "threshold_note": DENSITY_THRESHOLD_NOTE,
            "witnesses": [{"target": str(w.target), "witness": str(w.point),
                           "residual": w.residual} for w in self.witnesses],
        }


def _region_ok(q: np.ndarray, p: Quaternion, r: float) -> np.ndarray:
    """Vector membership in Sigma(p, 0, r) minus a small pole-sphere margin."""
    x = q[:, 0]
    y = np.sqrt((q[:, 1:] ** 2).sum(axis=1))
    px, py = p.x0, p.im_norm()
    margin = 1e-9 * (1.0 + abs(p))
    euclid = np.sqrt(((q - p.to_array()[None, :]) ** 2).sum(axis=1))
    if py == 0.0:
        return (euclid > margin) & (euclid < r)
    pu = p.im().to_array()[1:] / py
    safe_y = np.where(y > 0.0, y, 1.0)
    u = q[:, 1:] / safe_y[:, None]
    online = (y <= 1e-10) \
        | (np.sqrt(((u - pu) ** 2).sum(axis=1)) <= 1e-10) \
        | (np.sqrt(((u + pu) ** 2).sum(axis=1)) <= 1e-10)
    sig = np.where(online, euclid, np.sqrt((x - px) ** 2 + (y + py) ** 2))
    ta = np.where(online, euclid, np.sqrt((x - px) ** 2 + (y - py) ** 2))
    return (ta > margin) & (sig < r)


def scan_probe_points(p: Quaternion, r: float, seed: int, count: int) -> np.ndarray:
    """Deterministic shared probe pool in Sigma(p, 0, r); used as phase A
    of every target search (and usable as self-witness sources in tests)."""
    rng = Xoshiro256(seed, stream=0)
    py = p.im_norm()
    out = np.empty((count, 4))
    got = 0
    while got < count:
        vec = np.array([rng.normal(), rng.normal(), rng.normal(), rng.normal()])
        n = np.linalg.norm(vec)
        if n < 1e-9:
            continue
        rad = (py + r) * rng.random() ** 0.5
        cand = p.to_array() + vec / n * rad
        if cand[1] == 0.0 and cand[2] == 0.0 and cand[3] == 0.0:
            continue
        row = cand[None, :]
        if _region_ok(row, p, r)[0]:
            out[got] = cand
            got += 1
    return out


def casorati_scan(gen: CoefficientGenerator, p: Quaternion, r: float, eps: float,
                  ntargets: int, seed: int, depth: int = 40,
                  budget: int = 10_000, targets=None) -> DensityScanResult:
    """Search Sigma(p, 0, r) for near-preimages of random targets |v| <= 2.

    Per target the budget caps the number of truncated-series evaluations;
    the search runs a shared random probe pool, slice-aligned probes for
    the target's own slice (values of the model land on the slice of the
    argument), then shrinking local refinement around the best point.
    An explicit `targets` list overrides the seeded draw.
    """
    e = gen.expansion(p, depth)
    if targets is None:
        trng = Xoshiro256(seed, stream=10 ** 6)
        targets = []
        while len(targets) < ntargets:
            v = random_quaternion(trng, 2.0)
            if abs(v) <= 2.0:
                targets.append(v)
    else:
        targets = list(targets)
        ntargets = len(targets)

    n_pool = min(1500, budget // 6)
    pool = scan_probe_points(p, r, seed, n_pool)
    pool_vals = eval_truncated_many(e, pool)
    ok = np.all(np.isfinite(pool_vals), axis=1)
    pool, pool_vals = pool[ok], pool_vals[ok]

    witnesses: list[Witness] = []
    hits = 0
    for t_idx, v in enumerate(targets):
        rng = Xoshiro256(seed, stream=t_idx + 1)
        varr = v.to_array()
        resid = np.sqrt(((pool_vals - varr[None, :]) ** 2).sum(axis=1))
        k = int(np.argmin(resid))
        best_r = float(resid[k])
        best_z, best_unit = _slice_coords(pool[k])
        used = n_pool

        starts: list[tuple[float, complex, np.ndarray]] = [(best_r, best_z, best_unit)]
        for unit in _target_units(v):
            if best_r < eps or used >= budget:
                break
            found, used = _slice_sweep(e, p, r, varr, unit, rng, used, budget)
            for rr, z in found:
                starts.append((rr, z, unit))
                if rr < best_r:
                    best_r, best_z, best_unit = rr, z, unit
        # shrinking grid descent on each start's slice plane
        starts.sort(key=lambda s: s[0])
        for rr, z0, unit in starts[:6]:
            if best_r < eps or used >= budget:
                break
            cur_r, cur_z, span = rr, z0, 0.05 * r
            while cur_r >= eps and used < budget and span > 1e-13:
                z, got, used = _grid_step(e, p, r, varr, unit, cur_z, span, used, budget)
                if got < cur_r:
                    cur_r, cur_z = got, z
                    span *= 0.5
                else:
                    span *= 0.35
            if cur_r < best_r:
                best_r, best_z, best_unit = cur_r, cur_z, unit
        best_q = _embed_rows(np.array([best_z]), best_unit)[0]

        if best_r < eps:
            hits += 1
            witnesses.append(Witness(v, Quaternion.from_array(best_q), best_r))
    return DensityScanResult(gen.rule, p, r, eps, depth, seed, budget,
                             ntargets, hits, tuple(witnesses))


def _target_units(v: Quaternion) -> list[np.ndarray]:
    """Slice units worth probing for a target: values of the model on a
    slice land on that same slice, so the target's own slice leads."""
    units = []
    y = v.im_norm()
    if y > 1e-12:
        units.append((v.im() / y).to_array())
    units.append(QI.to_array())
    return units


def _slice_coords(q_row: np.ndarray) -> tuple[complex, np.ndarray]:
    y = float(np.linalg.norm(q_row[1:]))
    if y <= 1e-300:
        return complex(q_row[0], 0.0), QI.to_array()
    unit = np.zeros(4)
    unit[1:] = q_row[1:] / y
    return complex(q_row[0], y), unit


def _embed_rows(zs: np.ndarray, unit: np.ndarray) -> np.ndarray:
    out = np.zeros((zs.shape[0], 4))
    out[:, 0] = zs.real
    out[:, 1:] = np.multiply.outer(zs.imag, unit[1:])
    return out


def _best_of(e, p, r, varr, cand, zs):
    keep = _region_ok(cand, p, r)
    if not keep.any():
        return None
    vals = eval_truncated_many(e, cand[keep])
    fin = np.all(np.isfinite(vals), axis=1)
    if not fin.any():
        return None
    rr = np.sqrt(((vals[fin] - varr[None, :]) ** 2).sum(axis=1))
    k = int(np.argmin(rr))
    return float(rr[k]), complex(zs[keep][fin][k])


def _slice_sweep(e, p, r, varr, unit, rng, used, budget, top: int = 4):
    """Log-radial random sweep of the slice plane R + unit*R around p.

    Returns the `top` best candidates separated by at least 0.03*r, for
    multi-start descent."""
    count = min(1200, max(0, budget - used))
    if count == 0:
        return [], used
    py = p.im_norm()
    lo = math.log(0.02 * r)
    hi = math.log(0.999 * r)
    rad = np.exp([rng.uniform(lo, hi) for _ in range(count)])
    ang = np.array([rng.uniform(0.0, 2.0 * math.pi) for _ in range(count)])
    zs = (p.x0 + 1j * py) + rad * np.exp(1j * ang)
    cand = _embed_rows(zs, unit)
    used += count
    keep = _region_ok(cand, p, r)
    if not keep.any():
        return [], used
    vals = eval_truncated_many(e, cand[keep])
    fin = np.all(np.isfinite(vals), axis=1)
    if not fin.any():
        return [], used
    zk = zs[keep][fin]
    rr = np.sqrt(((vals[fin] - varr[None, :]) ** 2).sum(axis=1))
    order = np.argsort(rr)
    found: list[tuple[float, complex]] = []
    for idx in order:
        z = complex(zk[idx])
        if any(abs(z - z2) < 0.03 * r for _, z2 in found):
            continue
        found.append((float(rr[idx]), z))
        if len(found) >= top:
            break
    return found, used


def _grid_step(e, p, r, varr, unit, z0, span, used, budget):
    """One 7x7 grid refinement around z0 on a fixed slice plane."""
    side = np.linspace(-span, span, 7)
    zs = (z0 + side[:, None] + 1j * side[None, :]).ravel()
    cand = _embed_rows(zs, unit)
    used += zs.shape[0]
    got = _best_of(e, p, r, varr, cand, zs)
    if got is None:
        return z0, math.inf, used
    return got[1], got[0], used
