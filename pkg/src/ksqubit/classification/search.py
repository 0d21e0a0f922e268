"""Certificate search for Kadison-Schwarz violations.

The residual is homogeneous of degree two and invariant under a global phase,
so it is minimised over the gauge-fixed unit sphere

    w = (cos a, sin a cos b e^{i p1}, sin a sin b e^{i p2})

(four real parameters), with the real slot cycled through the three positions
to cover the chart boundary.  Scoring a Halton sample and polishing the best
points with batched Nelder-Mead descents gives a located minimum; a value
below ``-cert_tol`` is a certificate that the map is not Kadison-Schwarz.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.stats import qmc

from ..channel import TransferMap, require_unital
from ..config import DEFAULT_SEARCH, TOL, SearchConfig
from .residual import contraction_witness, ks_residual, largest_singular_value


class KsStatus(Enum):
    VIOLATION_CERTIFIED = "violated"
    NO_VIOLATION_FOUND = "undetermined"
    SUFFICIENT_CONDITION_HOLDS = "sufficient"


@dataclass(frozen=True, eq=False)
class KsVerdict:
    status: KsStatus
    witness: Optional[np.ndarray]
    min_residual: float
    evaluations: int

    @property
    def violated(self) -> bool:
        return self.status is KsStatus.VIOLATION_CERTIFIED

    @property
    def label(self) -> str:
        return self.status.value


def sphere_point(params, chart):
    """Real and imaginary parts ``(u, v)`` of the unit vector for angle parameters.

    ``params[..., :] = (a, b, p1, p2)``; ``chart`` selects the slot holding the
    real component.
    """
    a, b, p1, p2 = (params[..., k] for k in range(4))
    sa = np.sin(a)
    c0 = np.cos(a)
    r1 = sa * np.cos(b)
    r2 = sa * np.sin(b)
    u = np.stack([c0, r1 * np.cos(p1), r2 * np.cos(p2)], axis=-1)
    v = np.stack([np.zeros_like(c0), r1 * np.sin(p1), r2 * np.sin(p2)], axis=-1)
    chart = np.asarray(chart)
    if chart.ndim == 0:
        if int(chart):
            u = np.roll(u, int(chart), axis=-1)
            v = np.roll(v, int(chart), axis=-1)
        return u, v
    idx = (np.arange(3) - chart[..., None]) % 3
    return np.take_along_axis(u, idx, axis=-1), np.take_along_axis(v, idx, axis=-1)


def residual_at_angles(T, x):
    """Residual at the chart-0 sphere point of angles ``x[..., 4]``.

    ``T[..., 3, 3]`` broadcasts against ``x[..., 0]``.  Written component by
    component; every operation is elementwise, so batching does not change the
    bits of any single evaluation.
    """
    a, b, p1, p2 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    sa = np.sin(a)
    u0 = np.cos(a)
    r1 = sa * np.cos(b)
    r2 = sa * np.sin(b)
    u1 = r1 * np.cos(p1)
    v1 = r1 * np.sin(p1)
    u2 = r2 * np.cos(p2)
    v2 = r2 * np.sin(p2)
    t = [[T[..., i, j] for j in range(3)] for i in range(3)]
    # v0 = 0 in chart 0
    tu = [t[i][0] * u0 + t[i][1] * u1 + t[i][2] * u2 for i in range(3)]
    tv = [t[i][1] * v1 + t[i][2] * v2 for i in range(3)]
    n0 = u1 * v2 - u2 * v1
    n1 = -u0 * v2
    n2 = u0 * v1
    g0 = t[0][0] * n0 + t[0][1] * n1 + t[0][2] * n2 - (tu[1] * tv[2] - tu[2] * tv[1])
    g1 = t[1][0] * n0 + t[1][1] * n1 + t[1][2] * n2 - (tu[2] * tv[0] - tu[0] * tv[2])
    g2 = t[2][0] * n0 + t[2][1] * n1 + t[2][2] * n2 - (tu[0] * tv[1] - tu[1] * tv[0])
    margin = (u0 * u0 + u1 * u1 + u2 * u2 + v1 * v1 + v2 * v2
              - (tu[0] * tu[0] + tu[1] * tu[1] + tu[2] * tu[2])
              - (tv[0] * tv[0] + tv[1] * tv[1] + tv[2] * tv[2]))
    return margin - 2.0 * np.sqrt(g0 * g0 + g1 * g1 + g2 * g2)


def to_complex(params, chart) -> np.ndarray:
    """Unit vector for angle parameters, phase-fixed so its first non-zero entry is real positive."""
    u, v = sphere_point(np.asarray(params, dtype=float), chart)
    w = u + 1j * v
    w = w / np.linalg.norm(w)
    k = int(np.flatnonzero(np.abs(w) > 1e-12)[0])
    w = w * (abs(w[k]) / w[k])
    w[k] = abs(w[k])
    return w


@lru_cache(maxsize=8)
def _halton(n: int, seed: int):
    pts = qmc.Halton(d=4, scramble=True, seed=seed).random(n)
    params = pts * np.array([np.pi / 2, np.pi / 2, 2 * np.pi, 2 * np.pi])
    chart = np.arange(n) % 3
    params.setflags(write=False)
    chart.setflags(write=False)
    return params, chart


def _nelder_mead_batch(f, x0, step, ftol, xtol, max_iter):
    """Independent Nelder-Mead descents, one per row of ``x0``.

    ``f(rows, x)`` evaluates the objective of the listed rows at points
    ``x[r, k]`` and returns an array of shape ``x.shape[:2]``.  Returns best
    points, best values and per-row evaluation counts.
    """
    nb, d = x0.shape
    X = np.repeat(x0[:, None, :], d + 1, axis=1)
    for k in range(d):
        X[:, k + 1, k] += step
    all_rows = np.arange(nb)
    F = f(all_rows, X)
    nfev = np.full(nb, d + 1)
    rows = all_rows
    for _ in range(max_iter):
        Xa = X[rows]
        Fa = F[rows]
        order = np.argsort(Fa, axis=1, kind="stable")
        Xa = np.take_along_axis(Xa, order[:, :, None], axis=1)
        Fa = np.take_along_axis(Fa, order, axis=1)
        fspread = Fa[:, -1] - Fa[:, 0]
        xspread = np.max(np.abs(Xa[:, 1:] - Xa[:, :1]), axis=(1, 2))
        X[rows] = Xa
        F[rows] = Fa
        live = ~((fspread <= ftol) & (xspread <= xtol))
        rows = rows[live]
        if rows.size == 0:
            break
        Xa = Xa[live]
        Fa = Fa[live]
        c = Xa[:, :d].mean(axis=1)
        xw = Xa[:, d]
        cand = np.stack([2.0 * c - xw, 3.0 * c - 2.0 * xw, 1.5 * c - 0.5 * xw, 0.5 * c + 0.5 * xw], axis=1)
        fc = f(rows, cand)
        nfev[rows] += 4
        xr, xe, xoc, xic = (cand[:, k] for k in range(4))
        fr, fe, foc, fic = (fc[:, k] for k in range(4))
        f0, fsw, fw = Fa[:, 0], Fa[:, d - 1], Fa[:, d]

        new_x = xr.copy()
        new_f = fr.copy()
        expand = (fr < f0) & (fe < fr)
        new_x[expand] = xe[expand]
        new_f[expand] = fe[expand]
        outside = (fr >= fsw) & (fr < fw)
        inside = fr >= fw
        use_oc = outside & (foc <= fr)
        use_ic = inside & (fic < fw)
        new_x[use_oc] = xoc[use_oc]
        new_f[use_oc] = foc[use_oc]
        new_x[use_ic] = xic[use_ic]
        new_f[use_ic] = fic[use_ic]
        shrink = (outside & ~use_oc) | (inside & ~use_ic)

        keep = ~shrink
        Xa[keep, d] = new_x[keep]
        Fa[keep, d] = new_f[keep]
        if np.any(shrink):
            srows = rows[shrink]
            Xs = Xa[shrink]
            Xs[:, 1:] = Xs[:, :1] + 0.5 * (Xs[:, 1:] - Xs[:, :1])
            Fs = Fa[shrink]
            Fs[:, 1:] = f(srows, Xs[:, 1:])
            nfev[srows] += d
            Xa[shrink] = Xs
            Fa[shrink] = Fs
        X[rows] = Xa
        F[rows] = Fa
    best = np.argmin(F, axis=1)
    return X[all_rows, best], F[all_rows, best], nfev


_CYCLE = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


def _chart_rotation(k: int) -> np.ndarray:
    # np.roll(w, k) == P @ w for this cyclic permutation
    return np.linalg.matrix_power(_CYCLE, k)


def verify_ks_numeric_many(maps: Sequence[TransferMap], cfg: SearchConfig = DEFAULT_SEARCH,
                           chunk: Optional[int] = None) -> list:
    """Run :func:`verify_ks_numeric` on many maps with the descents batched together.

    Each map's result is identical to the single-map call.
    """
    maps = list(maps)
    for phi in maps:
        require_unital(phi)
    verdicts: list = [None] * len(maps)
    searched = []
    for i, phi in enumerate(maps):
        if largest_singular_value(phi) > 1.0 + TOL.contraction:
            w, r = contraction_witness(phi)
            r = ks_residual(phi, w)
            if r < -cfg.cert_tol:
                verdicts[i] = KsVerdict(KsStatus.VIOLATION_CERTIFIED, w, r, 1)
                continue
        searched.append(i)
    if not searched:
        return verdicts

    params, chart = _halton(cfg.n_samples, cfg.seed)
    n_starts = min(cfg.n_starts, cfg.n_samples)
    Ts = np.stack([maps[i].T for i in searched])
    if chunk is None:
        chunk = max(1, 2_000_000 // max(cfg.n_samples, 1))
    perms = np.stack([_chart_rotation(k) for k in range(3)])
    sample_min = np.empty(len(searched))
    sample_arg = np.empty(len(searched), dtype=int)
    start_idx = np.empty((len(searched), n_starts), dtype=int)
    for lo in range(0, len(searched), chunk):
        Tc = Ts[lo:lo + chunk]
        vals = np.empty((len(Tc), len(params)))
        for k in range(3):
            sel = chart == k
            Tk = np.einsum("ji,njk,kl->nil", perms[k], Tc, perms[k])
            vals[:, sel] = residual_at_angles(Tk[:, None], params[sel][None])
        order = np.argsort(vals, axis=1, kind="stable")[:, :n_starts]
        start_idx[lo:lo + chunk] = order
        sample_arg[lo:lo + chunk] = order[:, 0]
        sample_min[lo:lo + chunk] = np.take_along_axis(vals, order[:, :1], axis=1)[:, 0]

    # residual_T(P w) = residual_{P^T T P}(w) for a rotation P, so each descent
    # runs in chart 0 against a permuted transfer matrix
    row_map = np.repeat(np.arange(len(searched)), n_starts)
    row_chart = chart[start_idx.ravel()]
    row_perm = perms[row_chart]
    row_T = np.einsum("nji,njk,nkl->nil", row_perm, Ts[row_map], row_perm)[:, None]
    x0 = params[start_idx.ravel()].copy()

    def objective(rows, x):
        return residual_at_angles(row_T[rows], x)

    if cfg.max_iter > 0 and n_starts > 0:
        xbest, fbest, nfev = _nelder_mead_batch(objective, x0, cfg.step, cfg.ftol, cfg.xtol, cfg.max_iter)
    else:
        xbest = x0
        fbest = objective(np.arange(len(x0)), x0[:, None])[:, 0]
        nfev = np.zeros(len(x0), dtype=int)
    fbest = fbest.reshape(len(searched), n_starts)
    xbest = xbest.reshape(len(searched), n_starts, 4)
    charts = row_chart.reshape(len(searched), n_starts)
    per_map_evals = cfg.n_samples + nfev.reshape(len(searched), n_starts).sum(axis=1)

    for j, i in enumerate(searched):
        k = int(np.argmin(fbest[j]))
        if fbest[j, k] <= sample_min[j]:
            w = to_complex(xbest[j, k], charts[j, k])
        else:
            w = to_complex(params[sample_arg[j]], chart[sample_arg[j]])
        r = ks_residual(maps[i], w)
        if r < -cfg.cert_tol:
            verdicts[i] = KsVerdict(KsStatus.VIOLATION_CERTIFIED, w, r, int(per_map_evals[j]))
        else:
            verdicts[i] = KsVerdict(KsStatus.NO_VIOLATION_FOUND, w, r, int(per_map_evals[j]))
    return verdicts


def verify_ks_numeric(phi: TransferMap, cfg: SearchConfig = DEFAULT_SEARCH) -> KsVerdict:
    """Search for a unit ``w`` with negative Kadison-Schwarz residual.

    A contraction failure is settled at once by the top singular vector of ``T``.
    Otherwise the best ``cfg.n_starts`` of ``cfg.n_samples`` Halton points seed
    Nelder-Mead descents.  ``NO_VIOLATION_FOUND`` is not a proof that the map is
    Kadison-Schwarz; the verdict carries the located minimiser either way.
    """
    return verify_ks_numeric_many([phi], cfg)[0]
