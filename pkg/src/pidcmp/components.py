"""The four-part information decomposition container and its closure rules.

Every decomposition method supplies exactly one free quantity, either the
shared component or the unique pair, and the remaining components are closed
against the observed classical measures:

    I(Y;B)   = unq_b + shd
    I(Y;A)   = unq_a + shd
    I(Y;B|A) = unq_b + syn
    I(Y;A|B) = unq_a + syn

so the additive identities, and the method-independence of the unique
information asymmetry unq_b - unq_a = I(Y;B) - I(Y;A), hold by construction.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .measures import InfoSummary, summarize

__all__ = [
    "PidComponents",
    "ConsistencyResiduals",
    "METHODS",
    "METHOD_TOLERANCE",
    "COMPONENT_NAMES",
    "from_shared",
    "from_uniques",
    "normalize_components",
    "unique_info_asymmetry",
    "consistency_residuals",
    "synergy_lower_bound",
]

METHODS = ("ibroja", "idep", "iccs", "ipm", "isx")

COMPONENT_NAMES = ("unq_b", "unq_a", "shd", "syn")

# Closure-residual tolerances: analytic pointwise methods are exact up to
# rounding; optimization-backed methods inherit solver/fit error.
METHOD_TOLERANCE = {
    "ibroja": 1e-5,
    "idep": 1e-5,
    "iccs": 1e-5,
    "ipm": 1e-9,
    "isx": 1e-9,
}


@dataclass(frozen=True)
class PidComponents:
    """One method's decomposition of I(Y;B,A), raw bits or JMI fractions."""

    unq_b: float
    unq_a: float
    shd: float
    syn: float
    method: str
    normalized: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.unq_b, self.unq_a, self.shd, self.syn)

    def as_dict(self) -> dict:
        return asdict(self)

    def total(self) -> float:
        return self.unq_b + self.unq_a + self.shd + self.syn


def _summary_of(dist) -> InfoSummary:
    return dist if isinstance(dist, InfoSummary) else summarize(dist)


def from_shared(dist, shd: float, method: str) -> PidComponents:
    """Close a decomposition from its shared component.

    ``dist`` may be a JointDistribution or a precomputed raw InfoSummary.
    Negative results are legal (pointwise methods report misinformation).
    """
    s = _summary_of(dist)
    unq_b = s.mi_yb - shd
    unq_a = s.mi_ya - shd
    syn = s.cmi_yb_given_a - unq_b
    return PidComponents(unq_b=unq_b, unq_a=unq_a, shd=shd, syn=syn, method=method)


def from_uniques(dist, unq_b: float, unq_a: float, method: str, tol: float | None = None) -> PidComponents:
    """Close a decomposition from its unique pair.

    The stored quadruple is closed from ``unq_b`` alone; the supplied
    ``unq_a`` is only validated against the closure, since a unique pair that
    breaks unq_b - unq_a = I(Y;B) - I(Y;A) is inconsistent for every method.
    """
    s = _summary_of(dist)
    if tol is None:
        tol = METHOD_TOLERANCE.get(method, 1e-9)
    shd = s.mi_yb - unq_b
    closed_unq_a = s.mi_ya - shd
    if abs(closed_unq_a - unq_a) > tol:
        raise ValueError(
            f"inconsistent unique pair for {method}: unq_a={unq_a!r} but closure "
            f"gives {closed_unq_a!r} (tolerance {tol})"
        )
    syn = s.cmi_yb_given_a - unq_b
    return PidComponents(unq_b=unq_b, unq_a=closed_unq_a, shd=shd, syn=syn, method=method)


def normalize_components(c: PidComponents, jmi: float) -> PidComponents:
    """Divide each component by the joint mutual information (no clamping)."""
    if c.normalized:
        raise ValueError("components are already normalized")
    if jmi <= 0.0:
        raise ValueError("joint mutual information must be positive to normalize")
    return PidComponents(
        unq_b=c.unq_b / jmi,
        unq_a=c.unq_a / jmi,
        shd=c.shd / jmi,
        syn=c.syn / jmi,
        method=c.method,
        normalized=True,
    )


def unique_info_asymmetry(dist) -> float:
    """UIA = I(Y;B) - I(Y;A); equals unq_b - unq_a for every method."""
    s = _summary_of(dist)
    return s.mi_yb - s.mi_ya


@dataclass(frozen=True)
class ConsistencyResiduals:
    """Residuals of the four additive identities for one decomposition."""

    eq_mi_yb: float
    eq_mi_ya: float
    eq_cmi_yb: float
    eq_cmi_ya: float

    def max_abs(self) -> float:
        return max(abs(self.eq_mi_yb), abs(self.eq_mi_ya), abs(self.eq_cmi_yb), abs(self.eq_cmi_ya))


def consistency_residuals(c: PidComponents, s: InfoSummary) -> ConsistencyResiduals:
    """How far a decomposition drifts from the four additive identities.

    Pass a normalized summary when the components are normalized.
    """
    return ConsistencyResiduals(
        eq_mi_yb=c.unq_b + c.shd - s.mi_yb,
        eq_mi_ya=c.unq_a + c.shd - s.mi_ya,
        eq_cmi_yb=c.unq_b + c.syn - s.cmi_yb_given_a,
        eq_cmi_ya=c.unq_a + c.syn - s.cmi_ya_given_b,
    )


def synergy_lower_bound(s: InfoSummary) -> float | None:
    """Interaction information when positive, else None.

    A positive II bounds synergy from below for the nonnegative-component
    methods; it carries no such meaning when negative.
    """
    return s.ii if s.ii > 0.0 else None
