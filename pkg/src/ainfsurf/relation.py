"""Evaluate the A-infinity coalgebra structure relation on generators.

For a complex with boundary ∂ and diagonals Δ_k the relation of index n is

    Δ_n ∂ - (-1)^{n-2} Σ_i (1^{⊗i} ⊗ ∂ ⊗ 1^{⊗n-i-1}) Δ_n
        = Σ_{i=1}^{n-2} Σ_{j=0}^{n-i-1} (-1)^{i(j+n+1)} (1^{⊗j} ⊗ Δ_{i+1} ⊗ 1^{⊗n-i-j-1}) Δ_{n-i}

Every tensor-factor application goes through :func:`apply_at`, so Koszul
signs are never written by hand here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .chains import Cell, DiagonalComplex, TensorElement, apply_at_element, extend_sum


@dataclass(frozen=True)
class Component:
    """One composite in the relation, already carrying its relation sign.

    ``kind`` is ``"delta_boundary"`` (Δ_n∂), ``"boundary_delta"``
    (the ∂Δ_n sum) or ``"composite"`` (Δ_{inner} at ``position`` applied to
    Δ_{outer}). ``side`` is ``"lhs"`` or ``"rhs"``.
    """

    side: str
    kind: str
    value: TensorElement
    inner: int | None = None
    outer: int | None = None
    position: int | None = None

    @property
    def raw_terms(self) -> int:
        return sum(abs(a) for _, a in self.value.items())


def relation_components(complex: DiagonalComplex, n: int, c: Cell) -> Iterator[Component]:
    if n < 2:
        raise ValueError(f"relation index must be at least 2, got {n}")
    d = complex.boundary
    dn = complex.delta(n)
    yield Component("lhs", "delta_boundary", dn.apply(d.chain(c)))
    sign = -1 if n % 2 else 1  # (-1)^{n-2}
    yield Component("lhs", "boundary_delta", -sign * extend_sum(d, dn(c)))
    for i in range(1, n - 1):
        outer = complex.delta(n - i)(c)
        inner = complex.delta(i + 1)
        for j in range(n - i):
            s = -1 if (i * (j + n + 1)) % 2 else 1
            value = apply_at_element(inner, j, outer) if outer else outer
            yield Component("rhs", "composite", s * value, inner=i + 1, outer=n - i, position=j)


def relation_defect(complex: DiagonalComplex, n: int, c: Cell, mod2: bool = False) -> TensorElement:
    """LHS(c) - RHS(c) for the relation of index ``n``; zero iff it holds."""
    lhs, rhs = [], []
    for comp in relation_components(complex, n, c):
        (lhs if comp.side == "lhs" else rhs).append(comp.value)
    defect = TensorElement.sum(lhs) - TensorElement.sum(rhs)
    return defect.mod2() if mod2 else defect


def reduced_defect(complex: DiagonalComplex, n: int, c: Cell) -> tuple[TensorElement, TensorElement]:
    """Split the defect at ``c`` into the three-term part and the rest.

    The three-term part collects ∂Δ_n, Δ_{n-1} applied to Δ_2 and Δ_2
    applied to Δ_{n-1} (each with the sign the full relation gives it,
    moved to the left-hand side). The rest is Δ_n∂ plus every composite
    Δ_j Δ_m with j, m >= 3; on polygons every such piece vanishes.
    Returns ``(reduced, rest)`` with ``reduced + rest == relation_defect``.
    """
    reduced, rest = [], []
    for comp in relation_components(complex, n, c):
        value = comp.value if comp.side == "lhs" else -comp.value
        if comp.kind == "boundary_delta":
            reduced.append(value)
        elif comp.kind == "composite" and 2 in (comp.inner, comp.outer):
            reduced.append(value)
        else:
            rest.append(value)
    return TensorElement.sum(reduced), TensorElement.sum(rest)


@dataclass
class RelationReport:
    """Per-generator outcome of the relation of index ``n``."""

    n: int
    defects: dict[Cell, TensorElement]
    term_counts: dict[Cell, dict[str, int]] = field(default_factory=dict)
    mod2: bool = False
    reduced_ok: bool | None = None

    @property
    def holds(self) -> bool:
        return all(d.is_zero() for d in self.defects.values())

    def failures(self) -> list[Cell]:
        return [c for c, d in self.defects.items() if not d.is_zero()]


def check_relation(complex: DiagonalComplex, n: int, cells: Iterable[Cell] | None = None, mod2: bool = False) -> RelationReport:
    defects: dict[Cell, TensorElement] = {}
    counts: dict[Cell, dict[str, int]] = {}
    for c in complex.cells if cells is None else cells:
        lhs, rhs, tally = [], [], {"lhs": 0, "rhs": 0}
        for comp in relation_components(complex, n, c):
            (lhs if comp.side == "lhs" else rhs).append(comp.value)
            tally[comp.side] += comp.raw_terms
        defect = TensorElement.sum(lhs) - TensorElement.sum(rhs)
        defects[c] = defect.mod2() if mod2 else defect
        counts[c] = tally
    return RelationReport(n=n, defects=defects, term_counts=counts, mod2=mod2)


def verify_all(complex: DiagonalComplex, n_max: int, mod2: bool = False) -> list[RelationReport]:
    """Reports for every relation index 2..n_max over every generator.

    For n > 3 the top cells are also checked in reduced form: the
    three-term part and the remainder must each vanish, and the remainder
    must vanish composite by composite. The outcome is stored in
    ``reduced_ok``.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    reports = []
    top_cells = complex.cells_of_dim(2)
    for n in range(2, n_max + 1):
        report = check_relation(complex, n, mod2=mod2)
        if n > 3:
            report.reduced_ok = all(_reduced_vanishes(complex, n, c, mod2) for c in top_cells)
        reports.append(report)
    return reports


def _reduced_vanishes(complex: DiagonalComplex, n: int, c: Cell, mod2: bool) -> bool:
    reduced, rest = reduced_defect(complex, n, c)
    if mod2:
        reduced, rest = reduced.mod2(), rest.mod2()
    if reduced or rest:
        return False
    for comp in relation_components(complex, n, c):
        if comp.kind == "composite" and comp.inner >= 3 and comp.outer >= 3:
            value = comp.value.mod2() if mod2 else comp.value
            if value:
                return False
        if comp.kind == "delta_boundary" and n >= 3:
            value = comp.value.mod2() if mod2 else comp.value
            if value:
                return False
    return True


def coassociativity_defect(complex: DiagonalComplex, c: Cell) -> TensorElement:
    """``(Δ2 ⊗ 1)Δ2(c) - (1 ⊗ Δ2)Δ2(c)``."""
    d2 = complex.delta(2)
    first = d2(c)
    return apply_at_element(d2, 0, first) - apply_at_element(d2, 1, first)
