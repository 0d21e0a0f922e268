"""Parameter-grid sweeps over diagonal maps and the (lambda, lambda, mu) boundary curves."""
import csv
import io
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .channel import DiagonalParams, diagonal_map, format_number
from .classification import KsStatus, check_cp_diagonal, check_ks_sufficient_diagonal, verify_ks_numeric_many
from .config import SCAN_SEARCH, TOL, SearchConfig

SCAN_COLUMNS = ["lambda1", "lambda2", "lambda3", "positive", "cp", "ks_label", "min_residual"]
BOUNDARY_COLUMNS = ["curve", "mu", "lambda", "lambda_clipped"]
CURVES = ("cp_quarter", "ks_ratio", "half_sq", "half_linear")


class GridError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ScanRow:
    lambda1: float
    lambda2: float
    lambda3: float
    positive: bool
    cp: bool
    ks_label: str
    min_residual: float
    witness: Optional[np.ndarray] = None

    def key(self):
        return (self.lambda1, self.lambda2, self.lambda3, self.positive, self.cp, self.ks_label,
                _fmt_residual(self.min_residual))


def grid_axis(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` points covering the closed interval ``[lo, hi]``, both ends included."""
    if n < 1:
        raise GridError("grid needs at least one point per axis")
    if not (-1.0 <= lo <= 1.0 and -1.0 <= hi <= 1.0):
        raise GridError(f"grid bounds must lie in [-1, 1], got [{lo}, {hi}]")
    if hi < lo:
        raise GridError("upper bound below lower bound")
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def classify_points(points: Sequence[Tuple[float, float, float]], cfg: SearchConfig = SCAN_SEARCH) -> List[ScanRow]:
    """Classify diagonal maps ``Phi_(l1, l2, l3)``; numeric searches run as one batch."""
    info = []
    pending = []
    for i, (l1, l2, l3) in enumerate(points):
        d = DiagonalParams(float(l1), float(l2), float(l3))
        positive = bool(max(abs(l1), abs(l2), abs(l3)) <= 1.0 + TOL.contraction)
        cp = check_cp_diagonal(d)
        sufficient = check_ks_sufficient_diagonal(d)
        info.append((d, positive, cp, sufficient))
        if not sufficient:
            pending.append(i)
    verdicts = verify_ks_numeric_many([diagonal_map(info[i][0].as_tuple()) for i in pending], cfg)
    found = dict(zip(pending, verdicts))
    rows = []
    for i, (d, positive, cp, sufficient) in enumerate(info):
        if sufficient:
            label, res, wit = KsStatus.SUFFICIENT_CONDITION_HOLDS.value, float("nan"), None
        else:
            v = found[i]
            label, res, wit = v.status.value, v.min_residual, v.witness
        rows.append(ScanRow(d.l1, d.l2, d.l3, positive, cp, label, res, wit))
    return rows


def scan_llm(lam_bounds=(-1.0, 1.0), mu_bounds=(-1.0, 1.0), n: int = 201,
             cfg: SearchConfig = SCAN_SEARCH) -> List[ScanRow]:
    """Sweep ``Phi_(lambda, lambda, mu)``; rows ordered by lambda, then mu."""
    lams = grid_axis(*lam_bounds, n)
    mus = grid_axis(*mu_bounds, n)
    return classify_points([(lam, lam, mu) for lam in lams for mu in mus], cfg)


def scan_cube(bounds=(-1.0, 1.0), n: int = 21, cfg: SearchConfig = SCAN_SEARCH) -> List[ScanRow]:
    """Sweep ``Phi_(l1, l2, l3)`` over a cube grid in lexicographic order."""
    ax = grid_axis(*bounds, n)
    return classify_points([(a, b, c) for a in ax for b in ax for c in ax], cfg)


def _fmt_residual(x: float) -> str:
    return "" if math.isnan(x) else format_number(x)


def rows_to_csv(rows: Sequence[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for r in rows:
        w.writerow([
            format_number(r.lambda1), format_number(r.lambda2), format_number(r.lambda3),
            "true" if r.positive else "false", "true" if r.cp else "false",
            r.ks_label, _fmt_residual(r.min_residual),
        ])
    return buf.getvalue()


def _parse_bool(s: str) -> bool:
    if s not in ("true", "false"):
        raise ValueError(f"expected true/false, got {s!r}")
    return s == "true"


def csv_to_rows(text: str) -> List[ScanRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != SCAN_COLUMNS:
        raise ValueError(f"unexpected scan header {header}")
    rows = []
    for rec in reader:
        l1, l2, l3, pos, cp, label, res = rec
        rows.append(ScanRow(float(l1), float(l2), float(l3), _parse_bool(pos), _parse_bool(cp), label,
                            float("nan") if res == "" else float(res)))
    return rows


# ---------------------------------------------------------------------------
# (lambda, lambda, mu) family


def llm_bounds(mu: float) -> dict:
    """Right-hand sides of ``lambda^2 <= f(mu)`` for the four region curves."""
    return {
        "cp_quarter": (1 + mu) ** 2 / 4,
        "ks_ratio": (1 + mu) / (3 - mu),
        "half_sq": (1 + mu) ** 2 / 2,
        "half_linear": (1 + mu) / 2,
    }


def llm_is_cp(lam: float, mu: float) -> bool:
    return lam * lam <= llm_bounds(mu)["cp_quarter"] + TOL.inequality


def llm_is_ks_sufficient(lam: float, mu: float) -> bool:
    b = llm_bounds(mu)
    return all(lam * lam <= b[k] + TOL.inequality for k in ("ks_ratio", "half_sq", "half_linear"))


@dataclass(frozen=True)
class BoundaryCurve:
    name: str
    samples: Tuple[Tuple[float, float], ...]


def boundary_curves(mu_bounds=(-1.0, 1.0), n: int = 201) -> List[BoundaryCurve]:
    """Sampled curves ``lambda = +-sqrt(f(mu))``; each sample is ``(mu, lambda)``."""
    mus = grid_axis(*mu_bounds, n)
    out = []
    for name in CURVES:
        pts = []
        for mu in mus:
            lam = math.sqrt(max(llm_bounds(float(mu))[name], 0.0))
            pts.append((float(mu), lam))
            pts.append((float(mu), -lam if lam else 0.0))
        out.append(BoundaryCurve(name, tuple(pts)))
    return out


def curves_to_csv(curves: Sequence[BoundaryCurve]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUNDARY_COLUMNS)
    for c in curves:
        for mu, lam in c.samples:
            w.writerow([c.name, format_number(mu), format_number(lam), format_number(max(-1.0, min(1.0, lam)))])
    return buf.getvalue()
