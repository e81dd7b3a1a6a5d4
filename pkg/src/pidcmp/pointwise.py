"""The three pointwise decompositions: Iccs (common change in surprisal),
Ipm (pointwise min of specificity/ambiguity), Isx (shared exclusions).

Each computes a shared component as a probability-weighted sum of local terms
and closes the remaining components against the observed classical measures;
negative components (misinformation) are legal for all three. Every method can
also emit a per-realization ledger whose probability-weighted column sums
reproduce the reported components exactly (to rounding).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .components import PidComponents, from_shared
from .dependency import PAIRWISE, maxent_fit
from .distributions import JointDistribution

__all__ = [
    "PointwiseLedger",
    "LEDGER_HEADER",
    "pid_ccs",
    "pid_pm",
    "pid_sx",
]

LEDGER_HEADER = ("y", "b", "a", "p", "local_shd", "local_unqb", "local_unqa", "local_syn")


@dataclass(frozen=True)
class PointwiseLedger:
    """Per-realization contributions to one pointwise decomposition.

    ``p`` is the weighting probability of each row (the observed probability
    for Ipm/Isx, the pairwise-maxent surrogate probability for Iccs); columns
    are local contributions whose p-weighted sums equal the components.
    """

    method: str
    labels: tuple[tuple, tuple, tuple]  # (Y, B, A) alphabet labels
    y: np.ndarray
    b: np.ndarray
    a: np.ndarray
    p: np.ndarray
    local_shd: np.ndarray
    local_unqb: np.ndarray
    local_unqa: np.ndarray
    local_syn: np.ndarray

    def column_sums(self) -> dict[str, float]:
        return {
            "shd": float((self.p * self.local_shd).sum()),
            "unq_b": float((self.p * self.local_unqb).sum()),
            "unq_a": float((self.p * self.local_unqa).sum()),
            "syn": float((self.p * self.local_syn).sum()),
        }

    def write_csv(self, path) -> None:
        """Full-precision deterministic CSV export."""
        ly, lb, la = self.labels
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(LEDGER_HEADER) + "\n")
            for i in range(self.p.size):
                fh.write(
                    f"{ly[self.y[i]]},{lb[self.b[i]]},{la[self.a[i]]},"
                    f"{self.p[i]!r},{self.local_shd[i]!r},{self.local_unqb[i]!r},"
                    f"{self.local_unqa[i]!r},{self.local_syn[i]!r}\n"
                )


def _safe_log_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """log2(num/den) where num > 0, else 0 (those cells are never weighted)."""
    out = np.zeros_like(num)
    m = num > 0.0
    out[m] = np.log2(num[m] / den[m])
    return out


def _local_tables(w: np.ndarray) -> dict[str, np.ndarray]:
    """Local information tables of a weighting pmf, zero-filled off support."""
    wy = w.sum(axis=(1, 2))
    wb = w.sum(axis=(0, 2))
    wa = w.sum(axis=(0, 1))
    wyb = w.sum(axis=2)
    wya = w.sum(axis=1)
    wba = w.sum(axis=0)
    i_yb = _safe_log_ratio(wyb, wy[:, None] * wb[None, :])
    i_ya = _safe_log_ratio(wya, wy[:, None] * wa[None, :])
    i_yba = _safe_log_ratio(w, wy[:, None, None] * wba[None, :, :])
    # i(y;b|a) = log2[ p(y,b,a) p(a) / (p(y,a) p(b,a)) ]
    i_yb_given_a = _safe_log_ratio(
        w * wa[None, None, :], wya[:, None, :] * wba[None, :, :]
    )
    return {
        "i_yb": i_yb[:, :, None],
        "i_ya": i_ya[:, None, :],
        "i_yba": i_yba,
        "i_yb_given_a": i_yb_given_a,
    }


def _ledger(
    method: str,
    weighting: JointDistribution,
    local_shd: np.ndarray,
    local_unqb: np.ndarray,
    local_unqa: np.ndarray,
    local_syn: np.ndarray,
) -> PointwiseLedger:
    w = weighting.pmf
    ys, bs, as_ = np.nonzero(w > 0.0)
    return PointwiseLedger(
        method=method,
        labels=(weighting.alpha_y.labels, weighting.alpha_b.labels, weighting.alpha_a.labels),
        y=ys,
        b=bs,
        a=as_,
        p=w[ys, bs, as_],
        local_shd=local_shd[ys, bs, as_],
        local_unqb=local_unqb[ys, bs, as_],
        local_unqa=local_unqa[ys, bs, as_],
        local_syn=local_syn[ys, bs, as_],
    )


def pid_ccs(
    dist: JointDistribution,
    *,
    ledger: bool = True,
    fit_tol: float = 1e-10,
) -> tuple[PidComponents, PointwiseLedger | None]:
    """Iccs: shared information as gated local co-information on the
    pairwise-maxent surrogate.

    A realization contributes its local co-information c = i(y;b) + i(y;a) -
    i(y;b,a) only when c is nonzero and every nonzero member of {i(y;b),
    i(y;a), i(y;b,a)} shares c's sign; exact-zero locals are sign-neutral.
    All locals and weights are evaluated on the surrogate matching the three
    pairwise marginals.
    """
    surrogate = maxent_fit(dist, PAIRWISE, tol=fit_tol)
    w = surrogate.pmf
    t = _local_tables(w)
    c = t["i_yb"] + t["i_ya"] - t["i_yba"]

    def agrees(v: np.ndarray) -> np.ndarray:
        return (v == 0.0) | (np.sign(v) == np.sign(c))

    contributes = (
        (w > 0.0) & (c != 0.0) & agrees(t["i_yb"]) & agrees(t["i_ya"]) & agrees(t["i_yba"])
    )
    local_shd = np.where(contributes, c, 0.0)
    shd = float((w * local_shd).sum())
    comps = from_shared(dist, shd, "iccs")
    if not ledger:
        return comps, None

    # The syn column must sum against the observed conditional term, which
    # lives on the observed support; importance-correct it to the surrogate
    # weighting so every column sum reproduces its component.
    t_obs = _local_tables(dist.pmf)
    ratio = np.divide(dist.pmf, w, out=np.zeros_like(w), where=w > 0.0)
    local_unqb = np.broadcast_to(t["i_yb"], w.shape) - local_shd
    local_unqa = np.broadcast_to(t["i_ya"], w.shape) - local_shd
    local_syn = ratio * t_obs["i_yb_given_a"] - local_unqb
    return comps, _ledger("iccs", surrogate, local_shd, local_unqb, local_unqa, local_syn)


def pid_pm(
    dist: JointDistribution,
    *,
    ledger: bool = True,
) -> tuple[PidComponents, PointwiseLedger | None]:
    """Ipm: shared information as pointwise min specificity minus min ambiguity.

    For each realization, specificity of an input value is its marginal
    surprisal -log2 p(x) and ambiguity its conditional surprisal -log2 p(x|y);
    the local shared term is min(h(b), h(a)) - min(h(b|y), h(a|y)).
    """
    w = dist.pmf
    supp = w > 0.0
    py = w.sum(axis=(1, 2))
    pb = w.sum(axis=(0, 2))
    pa = w.sum(axis=(0, 1))
    pyb = w.sum(axis=2)
    pya = w.sum(axis=1)

    with np.errstate(divide="ignore", invalid="ignore"):
        hb = -np.log2(pb)[None, :, None]
        ha = -np.log2(pa)[None, None, :]
        hb_y = -np.log2(np.divide(pyb, py[:, None], out=np.zeros_like(pyb), where=py[:, None] > 0))
        ha_y = -np.log2(np.divide(pya, py[:, None], out=np.zeros_like(pya), where=py[:, None] > 0))
        specificity = np.minimum(hb, ha)
        ambiguity = np.minimum(hb_y[:, :, None], ha_y[:, None, :])
        local_shd = np.where(supp, specificity - ambiguity, 0.0)
    shd = float((w * local_shd).sum())
    comps = from_shared(dist, shd, "ipm")
    if not ledger:
        return comps, None

    t = _local_tables(w)
    local_unqb = np.broadcast_to(t["i_yb"], w.shape) - local_shd
    local_unqa = np.broadcast_to(t["i_ya"], w.shape) - local_shd
    local_syn = t["i_yb_given_a"] - local_unqb
    return comps, _ledger("ipm", dist, local_shd, local_unqb, local_unqa, local_syn)


def pid_sx(
    dist: JointDistribution,
    *,
    ledger: bool = True,
) -> tuple[PidComponents, PointwiseLedger | None]:
    """Isx: shared information from the union of the two input events.

    The local shared term is log2[ p(y | E_b or E_a) / p(y) ], with the union
    event probability p(b) + p(a) - p(b,a); it is defined for every support
    realization.
    """
    w = dist.pmf
    supp = w > 0.0
    py = w.sum(axis=(1, 2))
    pb = w.sum(axis=(0, 2))
    pa = w.sum(axis=(0, 1))
    pyb = w.sum(axis=2)
    pya = w.sum(axis=1)
    pba = w.sum(axis=0)

    union3 = np.broadcast_to(pb[None, :, None] + pa[None, None, :] - pba[None, :, :], w.shape)
    joint_union = pyb[:, :, None] + pya[:, None, :] - w
    py3 = np.broadcast_to(py[:, None, None], w.shape)
    local_shd = np.zeros_like(w)
    local_shd[supp] = np.log2(joint_union[supp] / (union3[supp] * py3[supp]))
    shd = float((w * local_shd).sum())
    comps = from_shared(dist, shd, "isx")
    if not ledger:
        return comps, None

    t = _local_tables(w)
    local_unqb = np.broadcast_to(t["i_yb"], w.shape) - local_shd
    local_unqa = np.broadcast_to(t["i_ya"], w.shape) - local_shd
    local_syn = t["i_yb_given_a"] - local_unqb
    return comps, _ledger("isx", dist, local_shd, local_unqb, local_unqa, local_syn)
