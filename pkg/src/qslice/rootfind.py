"""Polynomial root finding by simultaneous Aberth-Ehrlich iteration.

Feeds the zero and pole analyses: symmetrizations and denominators are real
polynomials whose complex roots (with multiplicities) locate the candidate
spheres.  Multiplicities come from cluster merging; because an m-fold root
is only resolved to ~eps^(1/m) in floating point, the merge radius adapts
upward from the base 1e-7*(1+|root|) until every cluster is consistent with
the valuation test at its centroid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cpoly
from .errors import NoConvergence
from .polynomial import RealPolynomial

MAX_ITER = 200
RESIDUAL_REL = 1e-8
# an m-fold root is only resolved to ~eps^(1/m) (already ~1e-7 for m = 2
# under coefficient-level rounding), so the base merge radius sits above
# that floor and escalates for higher multiplicities; escalation stops at
# the first radius whose clusters all pass the valuation consistency check
_MERGE_SCHEDULE = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2)


@dataclass(frozen=True)
class ComplexRootSet:
    """Roots with multiplicities; nonreal roots come in conjugate pairs."""

    roots: tuple[tuple[complex, int], ...]

    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def real_roots(self) -> list[tuple[float, int]]:
        return [(z.real, m) for z, m in self.roots if z.imag == 0.0]

    def conjugate_pairs(self) -> list[tuple[complex, int]]:
        """One representative (Im > 0) per nonreal conjugate pair."""
        return [(z, m) for z, m in self.roots if z.imag > 0.0]


def aberth(coeffs: np.ndarray, maxiter: int = MAX_ITER) -> np.ndarray:
    """All roots of a complex polynomial, one approximation per degree.

    Cauchy-bound initialization on a perturbed circle; iterates the Aberth
    correction until stagnation or a tiny step.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    c = cpoly.trim(c, 0.0)
    deg = c.shape[0] - 1
    if deg < 1:
        return np.zeros(0, dtype=np.complex128)
    if deg == 1:
        return np.array([-c[0] / c[1]])
    if deg == 2:
        a, b, cc = c[2], c[1], c[0]
        disc = np.sqrt(b * b - 4.0 * a * cc + 0j)
        # pair b with the root of matching sign to avoid cancellation
        s = -0.5 * (b + disc) if abs(b + disc) >= abs(b - disc) else -0.5 * (b - disc)
        if abs(s) == 0.0:
            return np.array([0j, 0j])
        return np.array([s / a, cc / s])

    c = c / c[-1]
    # Fujiwara root-magnitude bound: 2 max_k |c_{d-k}|^{1/k} (monic), far
    # tighter than the Cauchy bound when coefficients span many decades
    mags = np.abs(c[:-1])
    ks = deg - np.arange(deg)  # exponent 1/k for coefficient c_{d-k}
    terms = np.where(mags > 0, mags, 0.0)
    terms[0] = terms[0] * 0.5 if deg >= 1 else terms[0]
    with np.errstate(divide="ignore"):
        radius = 2.0 * float(np.max(np.where(terms > 0,
                                             terms ** (1.0 / ks), 0.0),
                                    initial=0.0))
    radius = max(radius, 1e-6)
    k = np.arange(deg)
    z = 0.7 * radius * np.exp(2j * np.pi * (k / deg + 0.37)) * (1.0 + 0.02 * k / deg)
    dc = c[1:] * np.arange(1, deg + 1)

    # multiple roots converge only linearly (rate (m-1)/m) down to the
    # ~eps^(1/m) rounding floor, so stagnation means no improvement at all
    prev_step = np.inf
    stall = 0
    nudge = np.exp(2j * np.pi * 0.119 * (k + 1))
    with np.errstate(all="ignore"):
        for _ in range(maxiter):
            pv = cpoly.polyval(c, z)
            dv = cpoly.polyval(dc, z)
            dv = np.where(dv == 0, 1e-300, dv)
            w = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            denom = 1.0 - w * s
            denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
            corr = w / denom
            corr = np.where(np.isfinite(corr), corr, 0.05 * radius * nudge)
            z = z - corr
            bad = ~np.isfinite(z)
            if bad.any():
                z = np.where(bad, 0.7 * radius * nudge, z)
            step = float(np.abs(corr).max(initial=0.0))
            if step <= 1e-14 * (1.0 + float(np.abs(z).max(initial=0.0))):
                break
            if step > 0.98 * prev_step:
                stall += 1
                if stall >= 15:
                    break
            else:
                stall = 0
            prev_step = step
    return z


def _derivative(c: np.ndarray) -> np.ndarray:
    if c.shape[0] <= 1:
        return np.zeros(0, dtype=c.dtype)
    return c[1:] * np.arange(1, c.shape[0])


def _polish(coeffs: np.ndarray, z0: complex, mult: int, allow: float) -> complex:
    """Newton-polish a root of multiplicity `mult`.

    An m-fold root of p is a simple root of p^(m-1), where Newton restores
    full precision from the ~eps^(1/m) cluster centroid.  Moves larger than
    `allow` (a multiple of the cluster scatter) are rejected as escapes
    toward a different root.
    """
    d = coeffs
    for _ in range(mult - 1):
        d = _derivative(d)
    dd = _derivative(d)
    z = z0
    for _ in range(40):
        dv = cpoly.polyval(dd, z)
        if dv == 0:
            break
        step = cpoly.polyval(d, z) / dv
        z = z - step
        if abs(step) <= 1e-16 * (1.0 + abs(z)):
            break
    if not np.isfinite(z) or abs(z - z0) > allow:
        return z0
    return complex(z)


def _merge_clusters(z: np.ndarray, rel: float) -> list[np.ndarray]:
    n = z.shape[0]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(z[a] - z[b]) <= rel * (1.0 + min(abs(z[a]), abs(z[b]))):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    return [z[idx] for idx in groups.values()]


def _remerge_polished(coeffs: np.ndarray, entries: list[tuple[complex, int]],
                      rel: float) -> list[tuple[complex, int]]:
    changed = True
    merged_any = False
    while changed:
        changed = False
        out: list[tuple[complex, int]] = []
        for z, m in sorted(entries, key=lambda e: (e[0].real, e[0].imag)):
            hit = -1
            for idx, (z2, m2) in enumerate(out):
                if abs(z - z2) <= rel * (1.0 + min(abs(z), abs(z2))):
                    hit = idx
                    break
            if hit >= 0:
                z2, m2 = out[hit]
                out[hit] = ((z * m + z2 * m2) / (m + m2), m + m2)
                changed = merged_any = True
            else:
                out.append((z, m))
        entries = out
    if merged_any:
        entries = [(_polish(coeffs, z, m, 1e-4 * (1.0 + abs(z))), m)
                   for z, m in entries]
    return entries


def _pair_conjugates(clusters: list[tuple[complex, int]], real_snap: float):
    """Snap near-real roots and average conjugate pairs; None if unpaired."""
    snapped = []
    for z, m in clusters:
        if abs(z.imag) <= real_snap * (1.0 + abs(z)):
            snapped.append((complex(z.real, 0.0), m))
        else:
            snapped.append((z, m))
    upper = [(z, m) for z, m in snapped if z.imag > 0.0]
    lower = [(z, m) for z, m in snapped if z.imag < 0.0]
    reals = [(z, m) for z, m in snapped if z.imag == 0.0]
    if len(upper) != len(lower):
        return None
    used = [False] * len(lower)
    out = list(reals)
    for z, m in upper:
        best, best_d = -1, np.inf
        for idx, (w, mw) in enumerate(lower):
            if used[idx] or mw != m:
                continue
            d = abs(np.conj(w) - z)
            if d < best_d:
                best, best_d = idx, d
        if best < 0 or best_d > 1e-4 * (1.0 + abs(z)):
            return None
        used[best] = True
        mean = 0.5 * (z + np.conj(lower[best][0]))
        out.append((mean, m))
        out.append((np.conj(mean), m))
    return out


def real_poly_roots(d: RealPolynomial) -> ComplexRootSet:
    """All complex roots of a nonzero real polynomial with multiplicities.

    Raises NoConvergence when the iteration cannot produce a root set that
    passes the residual bound and the per-cluster valuation consistency
    check at any merge radius.
    """
    if d.is_zero:
        raise ValueError("root finding on the zero polynomial")
    coeffs = d.coeffs.astype(np.complex128)
    scale = float(np.abs(coeffs).max())
    coeffs = cpoly.trim(coeffs, 0.0)
    deg = coeffs.shape[0] - 1
    if deg == 0:
        return ComplexRootSet(())

    # exact zero roots split off first
    zero_mult = 0
    while coeffs.shape[0] > 1 and abs(coeffs[0]) <= 1e-14 * scale:
        coeffs = coeffs[1:]
        zero_mult += 1

    approx = aberth(coeffs)
    entries: list[tuple[complex, int]] | None = None
    for rel in _MERGE_SCHEDULE:
        if approx.shape[0] == 0:
            entries = []
            break
        clusters = []
        for c in _merge_clusters(approx, rel):
            mid = complex(c.mean())
            scatter = float(np.abs(c - mid).max(initial=0.0))
            allow = 4.0 * scatter + 1e-6 * (1.0 + abs(mid))
            clusters.append((_polish(coeffs, mid, int(c.shape[0]), allow),
                             int(c.shape[0])))
        # polished representatives of one multiple root collapse onto each
        # other even when the raw scatter straddled the merge radius
        clusters = _remerge_polished(coeffs, clusters, rel)
        paired = _pair_conjugates(clusters, real_snap=1e-7)
        if paired is None:
            continue
        if _consistent(coeffs, paired):
            entries = paired
            break
    if entries is None:
        raise NoConvergence(
            f"could not resolve root multiplicities of degree-{deg} polynomial")
    if zero_mult:
        entries.append((0j, zero_mult))
    _check_residuals(d, entries)
    entries.sort(key=lambda e: (e[0].real, e[0].imag))
    return ComplexRootSet(tuple(entries))


def _consistent(coeffs: np.ndarray, entries: list[tuple[complex, int]]) -> bool:
    for z, m in entries:
        if cpoly.valuation(coeffs, z, rel_tol=RESIDUAL_REL) != m:
            return False
    return True


def _check_residuals(d: RealPolynomial, entries: list[tuple[complex, int]]):
    cc = d.coeffs.astype(np.complex128)
    norm = float(np.abs(d.coeffs).max())
    deg = d.degree
    for z, _ in entries:
        resid = abs(cpoly.polyval(cc, z))
        if resid > RESIDUAL_REL * norm * (1.0 + abs(z)) ** deg:
            raise NoConvergence(
                f"root residual {resid:.3e} at {z} exceeds bound")
