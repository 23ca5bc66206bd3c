"""Cellular chains of an oriented polygon and its A-infinity diagonals.

An n-gon has vertices v1..vn, edges e1..en and one 2-cell P. With initial
vertex v1 and terminal vertex vt the edges form two directed paths from v1
to vt: the "left" path e1, …, e_{t-1} runs with the counterclockwise
orientation and the "right" path e_n, e_{n-1}, …, e_t runs against it.

For k >= 3 the diagonal Δ_k(P) is the sum of increasing k-subsets of the
left path minus the sum of increasing k-subsets of the right path (in path
order). Δ_2 adds the primitive terms v1⊗P + P⊗vt and sends each edge to
``start⊗e + e⊗end`` and each vertex to ``v⊗v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .chains import (
    Cell,
    ChainElement,
    DiagonalComplex,
    GradedOperation,
    TensorElement,
    TensorWord,
)


def vertex(i: int) -> Cell:
    return Cell(0, f"v{i}")


def edge(i: int) -> Cell:
    return Cell(1, f"e{i}")


def _path_sum(edges: Sequence[Cell], k: int) -> dict:
    return {TensorWord(ws): 1 for ws in combinations(edges, k)}


class PolygonComplex(DiagonalComplex):
    """Chains of an n-gon with initial vertex ``w_1`` and terminal ``w_t``.

    ``vertices`` and ``edges`` list the cells in counterclockwise order:
    edge ``i`` joins vertex ``i`` and vertex ``i + 1`` (edge ``n`` joins
    vertex 1 and vertex n). Labels are arbitrary so that split pieces can
    share cells with the polygon they came from.
    """

    def __init__(self, n: int, t: int, vertices: Sequence[Cell], edges: Sequence[Cell], face: Cell):
        # digons only arise as pieces of a split
        if n < 2:
            raise ValueError(f"a polygon needs at least 2 sides, got n={n}")
        if not 1 < t <= n:
            raise ValueError(f"terminal vertex index must satisfy 1 < t <= n, got t={t}, n={n}")
        if len(vertices) != n or len(edges) != n:
            raise ValueError("need exactly n vertices and n edges")
        self.n, self.t = n, t
        self.vertices, self.edges, self.face = tuple(vertices), tuple(edges), face
        cells = (*self.vertices, *self.edges, face)
        if len(set(cells)) != len(cells):
            raise ValueError("cell labels must be distinct")
        self._ops: dict[int, GradedOperation] = {}
        self._edge_index = {e: i for i, e in enumerate(self.edges, start=1)}
        super().__init__(cells, self._boundary(), {})

    # -- combinatorics -------------------------------------------------

    @property
    def initial(self) -> Cell:
        return self.vertices[0]

    @property
    def terminal(self) -> Cell:
        return self.vertices[self.t - 1]

    @property
    def left_path(self) -> tuple[Cell, ...]:
        return self.edges[: self.t - 1]

    @property
    def right_path(self) -> tuple[Cell, ...]:
        return tuple(reversed(self.edges[self.t - 1 :]))

    def endpoints(self, e: Cell) -> tuple[Cell, Cell]:
        """(start, end) of an edge with respect to the v1 -> vt direction."""
        i = self._edge_index[e]
        n, t, vs = self.n, self.t, self.vertices
        if i < t:
            return vs[i - 1], vs[i]
        if i == n:
            return vs[0], vs[n - 1]
        return vs[i], vs[i - 1]

    @property
    def vanishing_index(self) -> int:
        """Smallest k from which Δ_k vanishes identically: max{t, n-t+2}."""
        return max(self.t, self.n - self.t + 2)

    # -- operations ----------------------------------------------------

    def _boundary(self) -> GradedOperation:
        values = {}
        for e in self.edges:
            a, b = self.endpoints(e)
            values[e] = ChainElement({b: 1, a: -1})
        face = {e: 1 for e in self.left_path}
        face.update({e: -1 for e in self.right_path})
        values[self.face] = ChainElement(face)
        return GradedOperation(-1, 1, values, name="∂")

    def delta(self, k: int) -> GradedOperation:
        if k < 2:
            raise ValueError(f"diagonals start at k=2, got k={k}")
        op = self._ops.get(k)
        if op is None:
            op = self._ops[k] = self._build_delta(k)
        return op

    def _build_delta(self, k: int) -> GradedOperation:
        values: dict[Cell, TensorElement] = {}
        top = _path_sum(self.left_path, k)
        for w in _path_sum(self.right_path, k):
            top[w] = -1
        if k == 2:
            top[TensorWord((self.initial, self.face))] = 1
            top[TensorWord((self.face, self.terminal))] = 1
            for v in self.vertices:
                values[v] = TensorElement.of(v, v)
            for e in self.edges:
                a, b = self.endpoints(e)
                values[e] = TensorElement({(a, e): 1, (e, b): 1})
        values[self.face] = TensorElement(top)
        return GradedOperation(k - 2, k, values, name=f"Δ{k}")

    @property
    def top_index(self) -> int:
        return self.vanishing_index - 1

    def diagonal(self, k: int, c: Cell) -> TensorElement:
        """Δ_k(c); raises on an unknown cell."""
        if c not in self.cells:
            raise KeyError(f"{c.label} is not a cell of this polygon")
        return self.delta(k)(c)

    def boundary_of(self, c: Cell) -> ChainElement:
        if c not in self.cells:
            raise KeyError(f"{c.label} is not a cell of this polygon")
        return self.boundary.chain(c)

    def cell(self, label: str) -> Cell:
        for c in self.cells:
            if c.label == label:
                return c
        raise KeyError(label)

    def __repr__(self) -> str:
        return f"PolygonComplex(n={self.n}, t={self.t}, face={self.face.label})"


def build_polygon(n: int, t: int | None = None) -> PolygonComplex:
    """The standard n-gon with cells v1..vn, e1..en, P; ``t`` defaults to n."""
    if t is None:
        t = n
    if n < 3:
        raise ValueError(f"a polygon needs at least 3 sides, got n={n}")
    return PolygonComplex(
        n=n,
        t=t,
        vertices=tuple(vertex(i) for i in range(1, n + 1)),
        edges=tuple(edge(i) for i in range(1, n + 1)),
        face=Cell(2, "P"),
    )


@dataclass(frozen=True)
class Split:
    """Result of cutting an n-gon along the chord e0 from v1 to vt.

    ``subdivision`` sends every cell of the original polygon to a chain in
    the union of the two pieces (P goes to P1 + P2, everything else to
    itself); it is what lets Δ'_k(P) be compared with Δ_k(P1) + Δ_k(P2).
    """

    polygon: PolygonComplex
    first: PolygonComplex
    second: PolygonComplex
    chord: Cell

    def subdivision(self, c: Cell) -> ChainElement:
        if c == self.polygon.face:
            return ChainElement({self.first.face: 1, self.second.face: 1})
        return ChainElement.of(c)

    def subdivide(self, x: TensorElement) -> TensorElement:
        return x.map_cells(self.subdivision)


def split_polygons(n: int, t: int) -> Split:
    """Cut the (n, t) polygon into a t-gon P1 and an (n-t+2)-gon P2.

    Both pieces have initial vertex v1 and terminal vertex vt. P1 is a
    standard polygon (terminal vertex last); P2 has its terminal vertex
    second, so its long edge path is the right one. When t = 2, P1 is a
    digon.
    """
    if not 1 < t < n:
        raise ValueError(f"a split needs 1 < t < n, got n={n}, t={t}")
    poly = build_polygon(n, t)
    e0 = edge(0)
    first = PolygonComplex(
        n=t,
        t=t,
        vertices=tuple(vertex(i) for i in range(1, t + 1)),
        edges=(*(edge(i) for i in range(1, t)), e0),
        face=Cell(2, "P1"),
    )
    m = n - t + 2
    second = PolygonComplex(
        n=m,
        t=2,
        vertices=(vertex(1), *(vertex(i) for i in range(t, n + 1))),
        edges=(e0, *(edge(i) for i in range(t, n + 1))),
        face=Cell(2, "P2"),
    )
    return Split(poly, first, second, e0)


def split_defect(split: Split, k: int) -> tuple[TensorElement, TensorElement]:
    """Return ``(chord_terms, difference)`` for the splitting identity.

    ``chord_terms`` is the part of Δ_k(P1) + Δ_k(P2) whose words contain
    e0 (it must vanish); ``difference`` is the remainder minus the
    subdivided Δ'_k(P).
    """
    total = split.first.diagonal(k, split.first.face) + split.second.diagonal(k, split.second.face)
    with_chord = TensorElement({w: a for w, a in total if split.chord in w})
    rest = total - with_chord
    return with_chord, rest - split.subdivide(split.polygon.diagonal(k, split.polygon.face))
