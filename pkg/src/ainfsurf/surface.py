"""Closed surfaces as quotients of a polygon, and their induced diagonals.

A scheme is a boundary word read counterclockwise around an n-gon plus a
choice of terminal vertex. Gluing edges with equal labels (arrows aligned)
gives the quotient map q from the polygon's chains to the surface's chains,
and the surface diagonals are Δ_k(q σ) := q^{⊗k} Δ'_k(σ).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .chains import (
    Cell,
    ChainElement,
    DiagonalComplex,
    GradedOperation,
    TensorElement,
    TensorWord,
    cell_key,
)
from .polygon import PolygonComplex, build_polygon

Letter = tuple[str, int]

VERTEX = Cell(0, "v")
TOP = Cell(2, "X")

SPECIAL_KINDS = ("sphere", "projective_plane", "torus", "klein_bottle")


class SchemeError(ValueError):
    """The word or scheme is outside what the construction covers."""


class IllDefinedProjection(SchemeError):
    """Two representatives of one edge class project to different values."""


_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9_]*(?:\^-1)?")


def parse_word(text: str) -> tuple[Letter, ...]:
    """Parse ``"a a b b"`` or ``"a b A B"``; an uppercase initial (or a
    trailing ``^-1``) means exponent -1. Labels are stored lowercase-initial.
    """
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise SchemeError("empty word")
    letters = []
    for tok in tokens:
        if not _TOKEN.fullmatch(tok):
            raise SchemeError(f"bad letter {tok!r}")
        exp = 1
        if tok.endswith("^-1"):
            tok, exp = tok[:-3], -1
        if tok[0].isupper():
            exp = -exp
        letters.append((tok[0].lower() + tok[1:], exp))
    return tuple(letters)


def format_word(word: tuple[Letter, ...]) -> str:
    return " ".join(lab if e == 1 else lab[0].upper() + lab[1:] for lab, e in word)


def _check_pairs(word: tuple[Letter, ...]) -> dict[str, list[int]]:
    where: dict[str, list[int]] = {}
    for i, (lab, _) in enumerate(word, start=1):
        where.setdefault(lab, []).append(i)
    bad = sorted(lab for lab, pos in where.items() if len(pos) != 2)
    if bad:
        raise SchemeError(f"every label must occur exactly twice; offending: {', '.join(bad)}")
    return where


@dataclass(frozen=True)
class SurfaceScheme:
    """A boundary word on an n-gon with terminal vertex ``v_t``.

    ``word[i-1]`` labels polygon edge e_i, read counterclockwise; exponent
    +1 means the glued arrow points counterclockwise along that edge.
    """

    word: tuple[Letter, ...]
    t: int
    canonical: bool = False
    genus: int | None = None
    orientable: bool | None = None

    def __post_init__(self):
        _check_pairs(self.word)
        n = len(self.word)
        if n < 3:
            raise SchemeError("schemes on fewer than 3 sides are special cases (see build_special)")
        if not 1 < self.t <= n:
            raise SchemeError(f"terminal vertex must satisfy 1 < t <= n, got t={self.t}")
        chi = len(self.vertex_classes) - len(self.labels) + 1
        orient = all(
            self.word[i - 1][1] != self.word[j - 1][1] for i, j in _check_pairs(self.word).values()
        )
        genus = (2 - chi) // 2 if orient else 2 - chi
        if self.genus is None:
            object.__setattr__(self, "genus", genus)
        if self.orientable is None:
            object.__setattr__(self, "orientable", orient)
        if (self.genus, self.orientable) != (genus, orient):
            raise SchemeError(f"word describes genus {genus} ({'orientable' if orient else 'unorientable'})")

    @property
    def n(self) -> int:
        return len(self.word)

    @cached_property
    def polygon(self) -> PolygonComplex:
        return build_polygon(self.n, self.t)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        seen = dict.fromkeys(lab for lab, _ in self.word)
        return tuple(sorted(seen, key=lambda lab: cell_key(Cell(1, lab))))

    def _arrow(self, i: int) -> tuple[int, int]:
        """(tail, head) vertex indices of the glued arrow on edge e_i."""
        n = self.n
        a, b = (i, i + 1) if i < n else (n, 1)
        return (a, b) if self.word[i - 1][1] == 1 else (b, a)

    @cached_property
    def vertex_classes(self) -> tuple[frozenset[int], ...]:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in _check_pairs(self.word).values():
            for a, b in zip(self._arrow(i), self._arrow(j)):
                parent[find(a)] = find(b)
        groups: dict[int, set[int]] = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), set()).add(v)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    def edge_sign(self, i: int) -> int:
        """+1 if e_i's poset direction agrees with its glued arrow."""
        start, _ = self.polygon.endpoints(self.polygon.edges[i - 1])
        tail, _ = self._arrow(i)
        return 1 if self.polygon.vertices[tail - 1] == start else -1

    def __str__(self) -> str:
        return format_word(self.word)


def build_scheme(genus: int, orientable: bool) -> SurfaceScheme:
    """The canonical polygonal decomposition of a genus-``genus`` surface.

    Unorientable (genus >= 2): a 2g-gon whose left path carries the odd
    labels e1 e1 e3 e3 … and whose right path carries e2 e2 e4 e4 …, each
    pair glued as a projective plane. Orientable (genus >= 1): a 4g-gon
    with left path e1 … e_{2g} and right path ê1 … ê_{2g}, where
    ê_{2k-1} = e_{2k} and ê_{2k} = e_{2k-1}. All arrows point along the
    v1 -> vt direction.
    """
    if orientable:
        if genus < 1:
            raise SchemeError("the sphere has no polygon scheme here; use build_special('sphere')")
        left = [f"e{i}" for i in range(1, 2 * genus + 1)]
        right = [f"e{i + 1}" if i % 2 else f"e{i - 1}" for i in range(1, 2 * genus + 1)]
    else:
        if genus < 2:
            raise SchemeError("unorientable genus 1 is the projective plane; use build_special('projective_plane')")
        odd = [2 * p - 1 for p in range(1, (genus + 1) // 2 + 1)]
        even = [2 * p for p in range(1, genus // 2 + 1)]
        left = [f"e{i}" for i in odd for _ in range(2)]
        right = [f"e{i}" for i in even for _ in range(2)]
    # right path is read backwards counterclockwise, against the arrows
    word = tuple((lab, 1) for lab in left) + tuple((lab, -1) for lab in reversed(right))
    return SurfaceScheme(word, t=len(left) + 1, canonical=True, genus=genus, orientable=orientable)


def scheme_from_word(text: str, t: int) -> SurfaceScheme:
    return SurfaceScheme(parse_word(text), t=t)


class SurfaceComplex(DiagonalComplex):
    """Cellular chains of a surface with one 2-cell X and induced diagonals.

    Built either from a :class:`SurfaceScheme` by projection, or directly
    for the special cases. ``mod2_only`` marks structures that are only
    claimed after reduction mod 2.
    """

    def __init__(self, name, cells, boundary, diagonals, scheme=None, mod2_only=False, vanishing_index=None):
        super().__init__(cells, boundary, diagonals)
        self.name = name
        self.scheme = scheme
        self.mod2_only = mod2_only
        self.vanishing_index = vanishing_index if vanishing_index is not None else max(diagonals, default=1) + 1

    @property
    def top(self) -> Cell:
        return self.cells_of_dim(2)[0]

    @property
    def edge_cells(self) -> list[Cell]:
        return self.cells_of_dim(1)

    def projected_diagonal(self, k: int, c: Cell) -> TensorElement:
        if c not in self.cells:
            raise KeyError(f"{c.label} is not a cell of {self.name}")
        return self.delta(k)(c)

    def quotient(self, c: Cell) -> ChainElement:
        if self.scheme is None:
            raise SchemeError(f"{self.name} was not built from a polygon")
        return _quotient_map(self.scheme)(c)

    def __repr__(self) -> str:
        return f"SurfaceComplex({self.name})"


def _class_cells(scheme: SurfaceScheme) -> dict[int, Cell]:
    classes = scheme.vertex_classes
    if len(classes) == 1:
        return {v: VERTEX for v in classes[0]}
    return {v: Cell(0, f"v{min(cls)}") for cls in classes for v in cls}


def _quotient_map(scheme: SurfaceScheme):
    poly = scheme.polygon
    vmap = _class_cells(scheme)
    images: dict[Cell, ChainElement] = {}
    for i, v in enumerate(poly.vertices, start=1):
        images[v] = ChainElement.of(vmap[i])
    for i, e in enumerate(poly.edges, start=1):
        images[e] = ChainElement.of(Cell(1, scheme.word[i - 1][0]), scheme.edge_sign(i))
    images[poly.face] = ChainElement.of(TOP)

    def q(c: Cell) -> ChainElement:
        try:
            return images[c]
        except KeyError:
            raise KeyError(f"{c.label} is not a cell of the scheme's polygon") from None

    return q


def _section_value(q, image_cell: Cell, reps: list[Cell], op: GradedOperation, what: str) -> TensorElement:
    """Δ on a surface cell from each polygon representative; must agree."""
    found = None
    for rep in reps:
        coeff = q(rep).coefficient(image_cell)
        val = op(rep).map_cells(q) * coeff  # coeff is ±1
        if found is None:
            found = val
        elif val != found:
            raise IllDefinedProjection(
                f"{what}({image_cell.label}) differs between representatives: {found} vs {val}"
            )
    return found


def project(scheme: SurfaceScheme) -> SurfaceComplex:
    """Push the polygon's boundary and diagonals through the quotient map."""
    poly = scheme.polygon
    q = _quotient_map(scheme)

    reps: dict[Cell, list[Cell]] = {}
    for c in poly.cells:
        for img, _ in q(c).items():
            reps.setdefault(img, []).append(c)

    bvalues = {}
    for img, cs in reps.items():
        val = _section_value(q, img, cs, poly.boundary, "∂")
        bvalues[img] = val.chain()
    boundary = GradedOperation(-1, 1, bvalues, name="∂")

    diagonals = {}
    for k in range(2, poly.vanishing_index + 1):
        op = poly.delta(k)
        values = {img: _section_value(q, img, cs, op, f"Δ{k}") for img, cs in reps.items()}
        diagonals[k] = GradedOperation(k - 2, k, values, name=f"Δ{k}")

    kind = "orientable" if scheme.orientable else "unorientable"
    surf = SurfaceComplex(
        f"{kind} genus {scheme.genus} [{scheme}]",
        reps.keys(),
        boundary,
        diagonals,
        scheme=scheme,
        vanishing_index=poly.vanishing_index,
    )
    _check_chain_map(poly, surf, q)
    return surf


def _check_chain_map(poly: PolygonComplex, surf: SurfaceComplex, q) -> None:
    for c in poly.cells:
        lhs = ChainElement.sum(a * q(x) for x, a in poly.boundary.chain(c).items())
        rhs = ChainElement.sum(a * surf.boundary.chain(x) for x, a in q(c).items())
        if lhs != rhs:
            raise IllDefinedProjection(f"quotient is not a chain map at {c.label}: {lhs} vs {rhs}")


def build_surface(genus: int, orientable: bool) -> SurfaceComplex:
    return project(build_scheme(genus, orientable))


# -- closed forms ---------------------------------------------------------


def _e(i: int) -> Cell:
    return Cell(1, f"e{i}")


def _increasing(labels: list[int], k: int) -> dict:
    from itertools import combinations

    acc: dict = {}
    for idx in combinations(range(len(labels)), k):
        w = TensorWord(_e(labels[p]) for p in idx)
        acc[w] = acc.get(w, 0) + 1
    return acc


def closed_form_diagonal(k: int, genus: int, orientable: bool) -> GradedOperation:
    """The surface diagonal Δ_k written out directly, without any polygon.

    Unorientable, with s1 the s for which g ∈ {2s-1, 2s} and s2 the s for
    which g ∈ {2s, 2s+1}::

        Δ2(X) = v⊗X + X⊗v + Σ_{i≤s1} e_{2i-1}⊗e_{2i-1} - Σ_{j≤s2} e_{2j}⊗e_{2j}
        Δk(X) = Σ_{p1<…<pk≤2 s1} e_{i_p1}⊗…  -  Σ_{q1<…<qk≤2 s2} e_{j_q1}⊗…

    with i_p = 2⌊(p+1)/2⌋ - 1 and j_q = 2⌊(q+1)/2⌋. Orientable::

        Δ2(X) = v⊗X + X⊗v + Σ_i e_{2i-1}⊗e_{2i} - e_{2i}⊗e_{2i-1}
        Δk(X) = Σ_{i1<…<ik≤2g} e_{i1}⊗…⊗e_{ik} - ê_{i1}⊗…⊗ê_{ik}

    In both cases Δ2(v) = v⊗v and Δ2(e_i) = v⊗e_i + e_i⊗v.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if orientable and genus < 1 or not orientable and genus < 2:
        raise SchemeError(f"no closed form for genus {genus} ({'orientable' if orientable else 'unorientable'})")
    m = 2 * genus if orientable else genus
    edges = [_e(i) for i in range(1, m + 1)]
    top: dict = {}
    if orientable:
        if k == 2:
            for i in range(1, genus + 1):
                top[TensorWord((_e(2 * i - 1), _e(2 * i)))] = 1
                top[TensorWord((_e(2 * i), _e(2 * i - 1)))] = -1
        else:
            hat = [i + 1 if i % 2 else i - 1 for i in range(1, 2 * genus + 1)]
            for w, a in _increasing(list(range(1, 2 * genus + 1)), k).items():
                top[w] = top.get(w, 0) + a
            for w, a in _increasing(hat, k).items():
                top[w] = top.get(w, 0) - a
    else:
        s1 = (genus + 1) // 2
        s2 = genus // 2
        if k == 2:
            for i in range(1, s1 + 1):
                w = TensorWord((_e(2 * i - 1), _e(2 * i - 1)))
                top[w] = top.get(w, 0) + 1
            for j in range(1, s2 + 1):
                w = TensorWord((_e(2 * j), _e(2 * j)))
                top[w] = top.get(w, 0) - 1
        else:
            i_seq = [2 * ((p + 1) // 2) - 1 for p in range(1, 2 * s1 + 1)]
            j_seq = [2 * ((q + 1) // 2) for q in range(1, 2 * s2 + 1)]
            for w, a in _increasing(i_seq, k).items():
                top[w] = top.get(w, 0) + a
            for w, a in _increasing(j_seq, k).items():
                top[w] = top.get(w, 0) - a
    values: dict[Cell, TensorElement] = {}
    if k == 2:
        top[TensorWord((VERTEX, TOP))] = 1
        top[TensorWord((TOP, VERTEX))] = 1
        values[VERTEX] = TensorElement.of(VERTEX, VERTEX)
        for e in edges:
            values[e] = TensorElement({(VERTEX, e): 1, (e, VERTEX): 1})
    values[TOP] = TensorElement(top)
    return GradedOperation(k - 2, k, values, name=f"Δ{k}")


def closed_form_surface(genus: int, orientable: bool) -> SurfaceComplex:
    """Surface complex carrying the closed-form diagonals (for relation checks)."""
    scheme = build_scheme(genus, orientable)
    proj = project(scheme)
    kmax = proj.vanishing_index + 2
    diagonals = {k: closed_form_diagonal(k, genus, orientable) for k in range(2, kmax + 1)}
    return SurfaceComplex(f"closed form {proj.name}", proj.cells, proj.boundary, diagonals, scheme=scheme)


def agreement(surface: SurfaceComplex, k: int, mod2: bool = False) -> dict[Cell, TensorElement]:
    """Projected minus closed-form Δ_k on every cell; empty dict means equal."""
    scheme = surface.scheme
    if scheme is None or not scheme.canonical:
        raise SchemeError("closed forms exist only for canonical schemes")
    closed = closed_form_diagonal(k, scheme.genus, scheme.orientable)
    out = {}
    for c in surface.cells:
        diff = surface.delta(k)(c) - closed(c)
        if mod2:
            diff = diff.mod2()
        if diff:
            out[c] = diff
    return out


# -- homology and cup products -------------------------------------------


@dataclass(frozen=True)
class Mod2Homology:
    ranks: tuple[int, int, int]
    basis: tuple[tuple[Cell, ...], tuple[Cell, ...], tuple[Cell, ...]]


def mod2_homology(surface: SurfaceComplex) -> Mod2Homology:
    """H_*(X; Z2) when the mod-2 boundary vanishes (cells are then a basis)."""
    nonzero = [c for c in surface.cells if surface.boundary(c).mod2()]
    if nonzero:
        details = "; ".join(f"∂{c.label} = {surface.boundary(c)}" for c in nonzero)
        raise SchemeError(f"boundary is not zero mod 2 on {surface.name}: {details}")
    basis = tuple(tuple(surface.cells_of_dim(d)) for d in range(3))
    return Mod2Homology(tuple(len(b) for b in basis), basis)


def cup_matrix(surface: SurfaceComplex) -> np.ndarray:
    """Entry (i, j) is the mod-2 coefficient of e_i⊗e_j in Δ2(X)."""
    h = mod2_homology(surface)
    edges = h.basis[1]
    top = surface.delta(2)(surface.top)
    m = np.zeros((len(edges), len(edges)), dtype=np.int8)
    for i, a in enumerate(edges):
        for j, b in enumerate(edges):
            m[i, j] = top.coefficient(TensorWord((a, b))) % 2
    return m


def symplectic_matrix(genus: int) -> np.ndarray:
    """Block-diagonal mod-2 form with antidiagonal 2×2 blocks."""
    block = np.array([[0, 1], [1, 0]], dtype=np.int8)
    return np.kron(np.eye(genus, dtype=np.int8), block)


def has_higher_structure(surface: SurfaceComplex, mod2: bool = True, k_max: int | None = None) -> bool:
    """Whether some Δ_k with k >= 3 is nonzero (mod 2 by default)."""
    k_max = k_max if k_max is not None else surface.vanishing_index + 2
    for k in range(3, k_max + 1):
        for c in surface.cells:
            val = surface.delta(k)(c)
            if (val.mod2() if mod2 else val):
                return True
    return False


# -- special cases --------------------------------------------------------


def build_special(kind: str) -> SurfaceComplex:
    """Sphere, projective plane, torus or Klein bottle."""
    if kind == "torus":
        return build_surface(1, True)
    if kind == "klein_bottle":
        return build_surface(2, False)
    vv = TensorElement.of(VERTEX, VERTEX)
    prim = TensorElement({(VERTEX, TOP): 1, (TOP, VERTEX): 1})
    if kind == "sphere":
        cells = (VERTEX, TOP)
        boundary = GradedOperation(-1, 1, {}, name="∂")
        d2 = GradedOperation(0, 2, {VERTEX: vv, TOP: prim}, name="Δ2")
        return SurfaceComplex("sphere", cells, boundary, {2: d2}, vanishing_index=3)
    if kind == "projective_plane":
        e = Cell(1, "e")
        cells = (VERTEX, e, TOP)
        boundary = GradedOperation(-1, 1, {TOP: ChainElement.of(e, 2)}, name="∂")
        d2 = GradedOperation(
            0,
            2,
            {
                VERTEX: vv,
                e: TensorElement({(VERTEX, e): 1, (e, VERTEX): 1}),
                TOP: prim + TensorElement.of(e, e),
            },
            name="Δ2",
        )
        return SurfaceComplex("projective plane", cells, boundary, {2: d2}, mod2_only=True, vanishing_index=3)
    raise SchemeError(f"unknown special surface {kind!r}; expected one of {', '.join(SPECIAL_KINDS)}")
