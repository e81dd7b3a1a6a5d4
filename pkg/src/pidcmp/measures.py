"""Classical Shannon measures in bits on trivariate joints, plus local
(pointwise) mutual information terms.

All logarithms are base 2; zero-probability cells contribute nothing.
Measures that are nonnegative in exact arithmetic are clamped to 0 when within
-1e-12 of zero; larger negative values raise, surfacing bugs instead of
masking them.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .distributions import JointDistribution, marginal

__all__ = [
    "InfoSummary",
    "LocalTerm",
    "entropy",
    "mutual_information",
    "conditional_mi",
    "joint_mi",
    "interaction_information",
    "local_mi",
    "summarize",
    "normalize_summary",
]

_CLAMP = 1e-12


def _clamp_nonneg(value: float, what: str) -> float:
    if value < -_CLAMP:
        raise RuntimeError(f"internal consistency: {what} = {value!r} below -1e-12")
    return 0.0 if value < 0.0 else value


def _pmf_array(dist) -> np.ndarray:
    if isinstance(dist, JointDistribution):
        return dist.pmf
    p = np.asarray(dist, dtype=np.float64)
    if not np.all(np.isfinite(p)):
        raise ValueError("probabilities must be finite")
    if p.min(initial=0.0) < -_CLAMP:
        raise ValueError("probabilities must be nonnegative")
    total = float(p.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, expected 1")
    return np.clip(p, 0.0, None)


def entropy(dist) -> float:
    """Shannon entropy in bits of a distribution (array or JointDistribution)."""
    p = _pmf_array(dist).ravel()
    p = p[p > 0.0]
    h = float(-(p * np.log2(p)).sum())
    return _clamp_nonneg(h, "entropy")


def _distinct_vars(*names: str) -> tuple[str, ...]:
    flat = []
    for name in names:
        flat.extend(name)
    if len(set(flat)) != len(flat):
        raise ValueError(f"variables must be distinct, got {names}")
    return tuple(flat)


def mutual_information(dist: JointDistribution, x1: str, x2: str) -> float:
    """I(X1; X2) in bits for two distinct members of {y, b, a}."""
    _distinct_vars(x1, x2)
    value = (
        entropy(marginal(dist, x1))
        + entropy(marginal(dist, x2))
        - entropy(marginal(dist, x1 + x2))
    )
    return _clamp_nonneg(value, f"I({x1};{x2})")


def conditional_mi(dist: JointDistribution, x1: str, x2: str, given: str) -> float:
    """I(X1; X2 | X3) in bits for three distinct members of {y, b, a}."""
    _distinct_vars(x1, x2, given)
    value = (
        entropy(marginal(dist, x1 + given))
        + entropy(marginal(dist, x2 + given))
        - entropy(marginal(dist, given))
        - entropy(dist)
    )
    return _clamp_nonneg(value, f"I({x1};{x2}|{given})")


def joint_mi(dist: JointDistribution) -> float:
    """I(Y; B,A) in bits."""
    value = entropy(marginal(dist, "y")) + entropy(marginal(dist, "ba")) - entropy(dist)
    return _clamp_nonneg(value, "I(y;b,a)")


def interaction_information(dist: JointDistribution) -> float:
    """II(Y;B;A) = I(Y;B,A) - I(Y;B) - I(Y;A); sign-indefinite."""
    return joint_mi(dist) - mutual_information(dist, "y", "b") - mutual_information(dist, "y", "a")


@dataclass(frozen=True)
class LocalTerm:
    """Pointwise information value attached to one (y, b, a) realization."""

    realization: tuple[int, int, int]
    probability: float
    local_value: float


def _marginal_at(dist: JointDistribution, subset: str, coords: dict[str, int]) -> float:
    table = marginal(dist, subset)
    idx = tuple(coords[v] for v in "yba" if v in subset)
    return float(table[idx])


def local_mi(dist: JointDistribution, u: str, v, realization: tuple[int, int, int]) -> LocalTerm:
    """Local mutual information i(u; v) = log2 p(u|v)/p(u) at one realization.

    ``u`` is a single variable; ``v`` is a single variable or a pair such as
    "ba". The realization is a full (y, b, a) index triple and must have
    positive probability.
    """
    iy, ib, ia = realization
    ny, nb, na = dist.shape
    if not (0 <= iy < ny and 0 <= ib < nb and 0 <= ia < na):
        raise IndexError(f"realization {realization} outside table of shape {dist.shape}")
    p_full = float(dist.pmf[iy, ib, ia])
    if p_full <= 0.0:
        raise ValueError(f"realization {realization} has zero probability")
    v = v if isinstance(v, str) else "".join(v)
    _distinct_vars(u, v)
    coords = {"y": iy, "b": ib, "a": ia}
    p_u = _marginal_at(dist, u, coords)
    p_v = _marginal_at(dist, v, coords)
    p_uv = _marginal_at(dist, u + v, coords)
    value = float(np.log2(p_uv / (p_u * p_v)))
    return LocalTerm(realization=(iy, ib, ia), probability=p_full, local_value=value)


@dataclass(frozen=True)
class InfoSummary:
    """The classical measures of one distribution, in bits (or JMI fractions)."""

    h_y: float
    mi_yb: float
    mi_ya: float
    cmi_yb_given_a: float
    cmi_ya_given_b: float
    jmi: float
    ii: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def summarize(dist: JointDistribution) -> InfoSummary:
    """All classical measures of a trivariate distribution, in bits."""
    mi_yb = mutual_information(dist, "y", "b")
    mi_ya = mutual_information(dist, "y", "a")
    jmi = joint_mi(dist)
    return InfoSummary(
        h_y=entropy(marginal(dist, "y")),
        mi_yb=mi_yb,
        mi_ya=mi_ya,
        cmi_yb_given_a=conditional_mi(dist, "y", "b", "a"),
        cmi_ya_given_b=conditional_mi(dist, "y", "a", "b"),
        jmi=jmi,
        ii=jmi - mi_yb - mi_ya,
    )


def normalize_summary(s: InfoSummary) -> InfoSummary:
    """Every field divided by the joint mutual information."""
    if s.jmi <= 0.0:
        raise ValueError("joint mutual information is zero; summary cannot be normalized")
    return InfoSummary(**{k: v / s.jmi for k, v in s.as_dict().items()})
