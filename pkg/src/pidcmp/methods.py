"""Single entry point over the five decomposition methods."""

from __future__ import annotations

from .broja import pid_broja
from .components import METHODS, PidComponents
from .dependency import pid_dep
from .distributions import JointDistribution
from .pointwise import PointwiseLedger, pid_ccs, pid_pm, pid_sx

__all__ = ["METHODS", "decompose"]


def _broja(dist, ledger):
    return pid_broja(dist), None


def _dep(dist, ledger):
    return pid_dep(dist), None


def _ccs(dist, ledger):
    return pid_ccs(dist, ledger=ledger)


def _pm(dist, ledger):
    return pid_pm(dist, ledger=ledger)


def _sx(dist, ledger):
    return pid_sx(dist, ledger=ledger)


_REGISTRY = {
    "ibroja": _broja,
    "idep": _dep,
    "iccs": _ccs,
    "ipm": _pm,
    "isx": _sx,
}


def decompose(
    dist: JointDistribution, method: str, ledger: bool = False
) -> tuple[PidComponents, PointwiseLedger | None]:
    """Decompose I(Y;B,A) with the named method.

    Returns the four components and, when the method defines local terms and
    ``ledger`` is set, a pointwise ledger; otherwise the second element is
    None.
    """
    if method not in _REGISTRY:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return _REGISTRY[method](dist, ledger)
