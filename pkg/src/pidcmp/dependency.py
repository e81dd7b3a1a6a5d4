"""Idep: unique information from the lattice of marginal-constraint sets.

Nodes are antichains of variable subsets (drawn from the singletons and pairs
of {Y, B, A}) whose union covers all three variables; each node names the
marginals a maximum-entropy model must preserve. The unique information of an
input is the least increase in I(Y;B,A) produced by adding that input's
output-coupling constraint along any covering edge of the lattice. Fits use
iterative proportional fitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .components import PidComponents, from_uniques
from .distributions import JointDistribution, build_joint, marginal
from .exceptions import ConvergenceError
from .measures import joint_mi

__all__ = [
    "ConstraintSet",
    "DependencyLattice",
    "PAIRWISE",
    "maxent_fit",
    "pid_dep",
]

_VARS = ("y", "b", "a")
_CANDIDATES = tuple(
    frozenset(c) for n in (1, 2) for c in combinations(_VARS, n)
)


def _subset_key(s: frozenset) -> str:
    return "".join(v for v in _VARS if v in s)


@dataclass(frozen=True)
class ConstraintSet:
    """Antichain of variable subsets covering {y, b, a}."""

    constraints: tuple[frozenset, ...]

    def __post_init__(self):
        cons = tuple(sorted((frozenset(c) for c in self.constraints), key=_subset_key))
        object.__setattr__(self, "constraints", cons)
        if not cons:
            raise ValueError("constraint set must be nonempty")
        union = set()
        for c in cons:
            if not c or not c.issubset(_VARS):
                raise ValueError(f"invalid constraint {set(c)}")
            union |= c
        if union != set(_VARS):
            raise ValueError("constraints must cover {y, b, a}")
        for u, v in combinations(cons, 2):
            if u <= v or v <= u:
                raise ValueError("constraints must form an antichain")

    @classmethod
    def of(cls, *names: str) -> "ConstraintSet":
        return cls(tuple(frozenset(n) for n in names))

    @property
    def name(self) -> str:
        return "+".join(_subset_key(c) for c in self.constraints)

    def implies(self, other: "ConstraintSet") -> bool:
        """True when every constraint of ``other`` is contained in one of ours."""
        return all(any(oc <= c for c in self.constraints) for oc in other.constraints)


PAIRWISE = ConstraintSet.of("yb", "ya", "ba")


@dataclass(frozen=True)
class DependencyLattice:
    """The eight constraint sets of the trivariate case and their cover edges."""

    nodes: tuple[ConstraintSet, ...]
    edges: tuple[tuple[ConstraintSet, ConstraintSet], ...]

    @classmethod
    def build(cls) -> "DependencyLattice":
        nodes = []
        for n in range(1, len(_CANDIDATES) + 1):
            for combo in combinations(_CANDIDATES, n):
                try:
                    nodes.append(ConstraintSet(combo))
                except ValueError:
                    continue
        nodes = sorted(set(nodes), key=lambda cs: (len(cs.constraints), cs.name))
        edges = []
        for lo in nodes:
            for hi in nodes:
                if lo == hi or not hi.implies(lo):
                    continue
                strictly_between = any(
                    mid not in (lo, hi) and hi.implies(mid) and mid.implies(lo)
                    for mid in nodes
                )
                if not strictly_between:
                    edges.append((lo, hi))
        return cls(nodes=tuple(nodes), edges=tuple(edges))

    def edges_adding(self, pair) -> tuple[tuple[ConstraintSet, ConstraintSet], ...]:
        """Cover edges whose upper node gains the given subset constraint."""
        pair = frozenset(pair)
        return tuple(
            (lo, hi)
            for lo, hi in self.edges
            if pair in hi.constraints and pair not in lo.constraints
        )


def _expand(table: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    """Broadcast a marginal table back over the full (y, b, a) axes."""
    shape = [1, 1, 1]
    for axis, size in zip(axes, table.shape):
        shape[axis] = size
    return table.reshape(shape)


def maxent_fit(
    dist: JointDistribution,
    cs: ConstraintSet,
    tol: float = 1e-10,
    max_sweeps: int = 10_000,
) -> JointDistribution:
    """Maximum-entropy distribution matching ``dist`` on every marginal in ``cs``.

    Iterative proportional fitting: cyclic marginal-scaling sweeps from the
    uniform seed restricted to the support implied by the constraints, until
    the largest marginal deviation falls below ``tol``.

    When the fit's limit has cells at zero that the constraints do not force
    to zero, plain IPF approaches it only algebraically (deviation ~ 1/sweeps).
    Such cells are recognised by halving over consecutive sweep-count doublings
    while already far below the uniform level; they are zeroed in place and the
    sweeps continue on the reduced support, where convergence is geometric.
    Zeroing preserves the limit because the iterate stays in the scaling family
    of the reduced-support seed.
    """
    targets = []
    for c in cs.constraints:
        axes = tuple(i for i, v in enumerate(_VARS) if v in c)
        targets.append((axes, marginal(dist, _subset_key(c))))

    mask = np.ones(dist.shape, dtype=bool)
    for axes, t in targets:
        mask &= np.broadcast_to(_expand(t, axes) > 0.0, dist.shape)
    q = mask / mask.sum()

    drop = {axes: tuple(i for i in range(3) if i not in axes) for axes, _ in targets}
    vanish_bar = 1e-2 / max(int(mask.sum()), 1)
    checkpoint = 64
    snapshot = None
    halvings = np.zeros(dist.shape, dtype=np.int64)
    for sweep in range(1, max_sweeps + 1):
        for axes, t in targets:
            cur = q.sum(axis=drop[axes])
            ratio = np.divide(t, cur, out=np.zeros_like(t), where=cur > 0.0)
            q = q * _expand(ratio, axes)
        deviation = max(
            float(np.abs(q.sum(axis=drop[axes]) - t).max()) for axes, t in targets
        )
        if deviation <= tol:
            return build_joint((dist.alpha_y, dist.alpha_b, dist.alpha_a), q)
        if sweep == checkpoint:
            if snapshot is not None:
                shrink = np.divide(
                    q, snapshot, out=np.ones_like(q), where=snapshot > 0.0
                )
                halvings = np.where(shrink < 0.7, halvings + 1, 0)
                vanishing = (halvings >= 2) & (q < vanish_bar)
                if vanishing.any():
                    q[vanishing] = 0.0
                    halvings[vanishing] = 0
            snapshot = q.copy()
            checkpoint *= 2
    raise ConvergenceError(
        f"IPF did not reach deviation {tol} within {max_sweeps} sweeps for {cs.name}"
    )


def pid_dep(dist: JointDistribution, tol: float = 1e-10) -> PidComponents:
    """Idep decomposition; components are nonnegative up to fit tolerance."""
    lattice = DependencyLattice.build()
    j = {node: joint_mi(maxent_fit(dist, node, tol)) for node in lattice.nodes}
    unq_b = min(j[hi] - j[lo] for lo, hi in lattice.edges_adding("yb"))
    unq_a = min(j[hi] - j[lo] for lo, hi in lattice.edges_adding("ya"))
    return from_uniques(dist, unq_b, unq_a, "idep")
