"""Word growth and packing covers in Z^m and H_n(Z).

Balls B_k are computed by breadth-first search over integer coordinate
tuples, so the counts are exact. On top of that sit a log-log exponent fit,
and the maximal-separated-set experiment: a greedy 2n-separated subset S of
B_(a*n) whose translates s*B_(2n) cover B_(a*n) while the translates s*B_n
pack disjointly, forcing |S| * |B_n| <= |B_((a+1)n)|.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import BudgetExceededError
from .heisenberg import Family, GroupKind, GroupPoint, inv_coords, mul_coords

IntCoords = Tuple[int, ...]

DEFAULT_ELEMENT_BUDGET = 50_000_000
BUDGET_ENV_VAR = "APERCUT_BUDGET"


def element_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(BUDGET_ENV_VAR)
    return int(raw) if raw else DEFAULT_ELEMENT_BUDGET


@dataclass(frozen=True)
class GenSet:
    """A finite symmetric generating set, identity excluded, stored sorted."""

    kind: GroupKind
    generators: Tuple[IntCoords, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("generating set is empty")
        ident = (0,) * self.kind.coord_count
        seen = set(self.generators)
        if ident in seen:
            raise ValueError("identity in generating set")
        for g in self.generators:
            if len(g) != self.kind.coord_count:
                raise ValueError(f"generator {g} has wrong length")
            if any(not isinstance(c, int) for c in g):
                raise ValueError(f"generator {g} must have integer coordinates")
            if inv_coords(self.kind, g) not in seen:
                raise ValueError(f"generating set not symmetric at {g}")

    @classmethod
    def make(cls, kind: GroupKind, gens: Iterable[Sequence[int]]) -> "GenSet":
        """Close under inversion, deduplicate, drop the identity, sort."""
        ident = (0,) * kind.coord_count
        closed = set()
        for g in gens:
            g = tuple(int(c) for c in g)
            if g == ident:
                continue
            closed.add(g)
            closed.add(inv_coords(kind, g))
        return cls(kind, tuple(sorted(closed)))

    @classmethod
    def standard(cls, kind: GroupKind) -> "GenSet":
        """+-e_i for Z^m; the 2n horizontal generators and inverses for H_n."""
        count = kind.coord_count
        basis = []
        upto = count if kind.family is Family.EUCLIDEAN else count - 1
        for i in range(upto):
            e = [0] * count
            e[i] = 1
            basis.append(tuple(e))
        return cls.make(kind, basis)

    def as_points(self) -> Tuple[GroupPoint, ...]:
        return tuple(GroupPoint(self.kind, g) for g in self.generators)


@dataclass(frozen=True)
class BallTable:
    """Cumulative ball sizes |B_0|, ..., |B_kmax| for one generating set."""

    kind: GroupKind
    generators: Tuple[IntCoords, ...]
    counts: Tuple[int, ...]

    @property
    def kmax(self) -> int:
        return len(self.counts) - 1

    def rows(self) -> list[tuple[int, int]]:
        return list(enumerate(self.counts))


def _bfs_layers(
    gens: GenSet, kmax: int, budget: int | None = None
) -> list[list[IntCoords]]:
    """Layers S_0, ..., S_kmax of new elements per word length, each sorted
    lexicographically (the canonical discovery-then-lex order)."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    limit = element_budget(budget)
    kind = gens.kind
    ident = (0,) * kind.coord_count
    seen = {ident}
    layers = [[ident]]
    frontier = [ident]
    for _ in range(kmax):
        nxt = set()
        for p in frontier:
            for g in gens.generators:
                q = mul_coords(kind, p, g)
                if q not in seen:
                    nxt.add(q)
        if len(seen) + len(nxt) > limit:
            raise BudgetExceededError(
                f"ball would exceed element budget {limit}"
            )
        frontier = sorted(nxt)
        seen.update(nxt)
        layers.append(frontier)
    return layers


def bfs_balls(gens: GenSet, kmax: int, budget: int | None = None) -> BallTable:
    layers = _bfs_layers(gens, kmax, budget)
    counts = []
    total = 0
    for layer in layers:
        total += len(layer)
        counts.append(total)
    return BallTable(gens.kind, gens.generators, tuple(counts))


def ball_elements(
    gens: GenSet, k: int, budget: int | None = None
) -> tuple[list[IntCoords], set[IntCoords]]:
    """B_k in canonical order, plus the same elements as a set."""
    layers = _bfs_layers(gens, k, budget)
    ordered = [p for layer in layers for p in layer]
    return ordered, set(ordered)


@dataclass(frozen=True)
class FitReport:
    """Least-squares growth exponent with supporting diagnostics."""

    exponent: float
    residual: float
    k_min: int
    doubling_ratios: Tuple[Tuple[int, float], ...]
    c_estimates: Tuple[Tuple[int, float], ...] = field(default_factory=tuple)


def fit_growth_exponent(
    table: BallTable, k_min: int = 1, degree_reference: int | None = None
) -> FitReport:
    counts = table.counts
    for k in range(1, len(counts)):
        if counts[k] <= counts[k - 1]:
            raise ValueError(f"ball counts not strictly increasing at k={k}")
    ks = [k for k in range(max(k_min, 1), len(counts))]
    if len(ks) < 3:
        raise ValueError("need at least 3 usable rows to fit an exponent")
    logs_k = np.log([float(k) for k in ks])
    logs_c = np.log([float(counts[k]) for k in ks])
    slope, intercept = np.polyfit(logs_k, logs_c, 1)
    fitted = slope * logs_k + intercept
    residual = float(np.sqrt(np.mean((logs_c - fitted) ** 2)))
    doubling = tuple(
        (k, counts[2 * k] / counts[k])
        for k in range(1, len(counts))
        if 2 * k < len(counts)
    )
    c_est: tuple = ()
    if degree_reference is not None:
        c_est = tuple(
            (k, counts[k] / float(k) ** degree_reference) for k in ks
        )
    return FitReport(float(slope), residual, max(k_min, 1), doubling, c_est)


@dataclass(frozen=True)
class CoverReport:
    """Result of the packing-cover experiment at parameters (a, n)."""

    a: int
    n: int
    packing_size: int
    bound: int
    bound_holds: bool
    covered: bool
    packing_disjoint: bool
    volume_check: bool
    d_used: int
    ball_n: int
    ball_2n: int
    ball_an: int
    ball_a1n: int
    separated_set: Tuple[IntCoords, ...]


def greedy_maximal_separated(
    gens: GenSet, a: int, n: int, budget: int | None = None
) -> list[IntCoords]:
    """Greedy 2n-separated subset of B_(a*n) in canonical order.

    Kept elements s satisfy s'^-1 s outside B_2n for every earlier kept s',
    and maximality holds by construction: every rejected element is within
    B_2n of something kept.
    """
    if a < 1 or n < 1:
        raise ValueError("need a >= 1 and n >= 1")
    ordered, _ = ball_elements(gens, a * n, budget)
    _, near = ball_elements(gens, 2 * n, budget)
    kind = gens.kind
    kept: list[IntCoords] = []
    for g in ordered:
        ok = True
        for s in kept:
            if mul_coords(kind, inv_coords(kind, s), g) in near:
                ok = False
                break
        if ok:
            kept.append(g)
    return kept


def verify_cover(
    gens: GenSet,
    a: int,
    n: int,
    d_used: int,
    budget: int | None = None,
    separated: Sequence[IntCoords] | None = None,
) -> CoverReport:
    """Check the three facts about a maximal 2n-separated set S in B_(a*n):
    the translates s*B_2n cover B_(a*n) (asserted), the translates s*B_n are
    pairwise disjoint (asserted), hence |S|*|B_n| <= |B_((a+1)n)| (asserted).
    The multiplicity-style bound |S| <= (a+1)^d_used is reported, not asserted.
    """
    kind = gens.kind
    S = list(separated) if separated is not None else greedy_maximal_separated(
        gens, a, n, budget)
    ordered_an, set_an = ball_elements(gens, a * n, budget)
    _, set_2n = ball_elements(gens, 2 * n, budget)
    ordered_n, _ = ball_elements(gens, n, budget)
    _, set_a1n = ball_elements(gens, (a + 1) * n, budget)

    inv_S = [inv_coords(kind, s) for s in S]
    covered = all(
        any(mul_coords(kind, si, g) in set_2n for si in inv_S)
        for g in ordered_an
    )
    if not covered:
        raise AssertionError(
            f"maximal separated set fails to cover B_{a * n} (a={a}, n={n})"
        )

    translates = set()
    total = 0
    inside = True
    for s in S:
        for g in ordered_n:
            q = mul_coords(kind, s, g)
            translates.add(q)
            total += 1
            if q not in set_a1n:
                inside = False
    disjoint = len(translates) == total
    if not disjoint:
        raise AssertionError(
            f"packing translates overlap (a={a}, n={n})"
        )
    volume_ok = inside and total <= len(set_a1n)
    if not volume_ok:
        raise AssertionError(
            f"packing volume inequality violated (a={a}, n={n})"
        )

    bound = (a + 1) ** d_used
    return CoverReport(
        a=a,
        n=n,
        packing_size=len(S),
        bound=bound,
        bound_holds=len(S) <= bound,
        covered=covered,
        packing_disjoint=disjoint,
        volume_check=volume_ok,
        d_used=d_used,
        ball_n=len(ordered_n),
        ball_2n=len(set_2n),
        ball_an=len(set_an),
        ball_a1n=len(set_a1n),
        separated_set=tuple(S),
    )
