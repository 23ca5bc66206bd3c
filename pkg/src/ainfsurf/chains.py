"""Graded free Z-modules, tensor words, and signed tensor-factor application.

Everything here is immutable. Coefficients are Python ints; mod-2 results
come from the ``mod2()`` reduction view and are never used internally.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

TENSOR = "⊗"


class Cell(NamedTuple):
    """A basis generator of a cellular chain complex."""

    dim: int
    label: str

    def __str__(self) -> str:
        return self.label


_SPLIT = re.compile(r"(\d+)")


@lru_cache(maxsize=None)
def cell_key(cell: Cell) -> tuple:
    # natural order on labels so that e2 < e10
    parts = _SPLIT.split(cell.label)
    return (cell.dim, tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p))


class TensorWord(tuple):
    """A nonempty flat sequence of cells ``c1⊗c2⊗…⊗ck``."""

    __slots__ = ()

    def __new__(cls, factors: Iterable[Cell]):
        word = super().__new__(cls, factors)
        if not word:
            raise ValueError("a tensor word needs at least one factor")
        return word

    @property
    def degree(self) -> int:
        return sum(c.dim for c in self)

    def key(self) -> tuple:
        return tuple(cell_key(c) for c in self)

    def __str__(self) -> str:
        return TENSOR.join(c.label for c in self)

    def __repr__(self) -> str:
        return f"TensorWord({str(self)!r})"


def word(*cells: Cell) -> TensorWord:
    return TensorWord(cells)


class _Combination:
    """Finite Z-linear combination of hashable basis keys, zeros dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = self._coerce_key(key)
            acc[key] = acc.get(key, 0) + coeff
        self._terms = {k: v for k, v in acc.items() if v}
        self._check()
        self._hash = None

    @classmethod
    def _coerce_key(cls, key):
        return key

    def _check(self) -> None:
        pass

    @classmethod
    def _raw(cls, terms: dict):
        # trusted constructor: keys coerced, zeros already removed
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        obj._check()
        return obj

    @staticmethod
    def _sort_key(key) -> tuple:
        raise NotImplementedError

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def keys(self) -> list:
        return [k for k, _ in self.items()]

    def coefficient(self, key) -> int:
        return self._terms.get(self._coerce_key(key), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if type(other) is not type(self):
            return NotImplemented
        acc = dict(self._terms)
        for k, v in other._terms.items():
            s = acc.get(k, 0) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return self._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return self._raw({})
        return self._raw({k: scalar * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def mod2(self):
        """Reduction view over Z/2: coefficients in {0, 1}."""
        return self._raw({k: 1 for k, v in self._terms.items() if v % 2})

    def map_coefficients(self, fn: Callable[[int], int]):
        return type(self)((k, fn(v)) for k, v in self._terms.items())

    @classmethod
    def sum(cls, elements: Iterable):
        acc: dict = {}
        for el in elements:
            for k, v in el._terms.items():
                acc[k] = acc.get(k, 0) + v
        return cls._raw({k: v for k, v in acc.items() if v})

    def __str__(self) -> str:
        return format_terms((str(k), v) for k, v in self.items())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


def format_terms(pairs: Iterable[tuple[str, int]]) -> str:
    out = []
    for text, coeff in pairs:
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = text if mag == 1 else f"{mag} {text}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


class ChainElement(_Combination):
    """Homogeneous integer chain: a combination of cells of one dimension."""

    __slots__ = ()

    def _check(self) -> None:
        dims = {c.dim for c in self._terms}
        if len(dims) > 1:
            raise ValueError(f"chain mixes dimensions {sorted(dims)}")

    @staticmethod
    def _sort_key(key) -> tuple:
        return cell_key(key)

    @property
    def dim(self) -> int | None:
        for c in self._terms:
            return c.dim
        return None

    @classmethod
    def of(cls, cell: Cell, coeff: int = 1) -> "ChainElement":
        return cls._raw({cell: coeff} if coeff else {})

    def tensor(self) -> "TensorElement":
        """View as a combination of length-1 words."""
        return TensorElement._raw({TensorWord((c,)): v for c, v in self._terms.items()})


class TensorElement(_Combination):
    """Integer combination of tensor words of one common length."""

    __slots__ = ()

    @classmethod
    def _coerce_key(cls, key):
        if isinstance(key, TensorWord):
            return key
        if isinstance(key, Cell):
            return TensorWord((key,))
        return TensorWord(key)

    def _check(self) -> None:
        lengths = {len(w) for w in self._terms}
        if len(lengths) > 1:
            raise ValueError(f"tensor element mixes word lengths {sorted(lengths)}")

    @staticmethod
    def _sort_key(key) -> tuple:
        return key.key()

    @property
    def length(self) -> int | None:
        for w in self._terms:
            return len(w)
        return None

    @classmethod
    def of(cls, *cells: Cell, coeff: int = 1) -> "TensorElement":
        return cls._raw({TensorWord(cells): coeff} if coeff else {})

    def otimes(self, other: "TensorElement") -> "TensorElement":
        """Tensor product of two elements (no sign: juxtaposition of words)."""
        acc: dict = {}
        for w1, a in self._terms.items():
            for w2, b in other._terms.items():
                w = TensorWord(w1 + w2)
                acc[w] = acc.get(w, 0) + a * b
        return self._raw({k: v for k, v in acc.items() if v})

    def chain(self) -> ChainElement:
        """Inverse of :meth:`ChainElement.tensor` for length-1 elements."""
        if self._terms and self.length != 1:
            raise ValueError("only length-1 tensor elements are chains")
        return ChainElement._raw({w[0]: v for w, v in self._terms.items()})

    def map_cells(self, fn: Callable[[Cell], ChainElement]) -> "TensorElement":
        """Apply a degree-0 chain map to every factor, multilinearly."""
        acc: dict = {}
        cache: dict = {}
        for w, coeff in self._terms.items():
            partial = [((), coeff)]
            for c in w:
                img = cache.get(c)
                if img is None:
                    img = cache[c] = list(fn(c)._terms.items())
                partial = [(p + (d,), a * b) for p, a in partial for d, b in img]
                if not partial:
                    break
            for p, a in partial:
                tw = TensorWord(p)
                acc[tw] = acc.get(tw, 0) + a
        return self._raw({k: v for k, v in acc.items() if v})


Value = Union[TensorElement, ChainElement]


class GradedOperation:
    """A map ``V -> V^{⊗k}`` of fixed degree, given by its values on cells.

    Cells without an entry map to zero. Values given as ``ChainElement``
    are stored as length-1 tensor elements.
    """

    __slots__ = ("degree", "arity", "_values", "name")

    def __init__(self, degree: int, arity: int, values: Mapping[Cell, Value], name: str = "f"):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.degree = degree
        self.arity = arity
        self.name = name
        stored = {}
        for cell, val in values.items():
            if isinstance(val, ChainElement):
                val = val.tensor()
            if not val:
                continue
            if val.length != arity:
                raise ValueError(f"{name}({cell.label}) has word length {val.length}, expected {arity}")
            for w in val._terms:
                if w.degree != cell.dim + degree:
                    raise ValueError(
                        f"{name}({cell.label}) contains {w} of degree {w.degree}, "
                        f"expected {cell.dim + degree}"
                    )
            stored[cell] = val
        self._values = stored

    @classmethod
    def zero(cls, degree: int, arity: int, name: str = "0") -> "GradedOperation":
        return cls(degree, arity, {}, name=name)

    def __call__(self, cell: Cell) -> TensorElement:
        val = self._values.get(cell)
        return val if val is not None else TensorElement._raw({})

    def support(self) -> list[Cell]:
        return sorted(self._values, key=cell_key)

    def values(self) -> dict[Cell, TensorElement]:
        return dict(self._values)

    def chain(self, cell: Cell) -> ChainElement:
        """Value on ``cell`` as a chain; arity-1 operations only."""
        if self.arity != 1:
            raise ValueError(f"{self.name} has arity {self.arity}")
        return self(cell).chain()

    def apply(self, x: Value) -> TensorElement:
        """Linear extension to chains (or length-1 tensor elements)."""
        if isinstance(x, TensorElement):
            x = x.chain()
        acc: dict = {}
        for cell, a in x._terms.items():
            for w, b in self(cell)._terms.items():
                acc[w] = acc.get(w, 0) + a * b
        return TensorElement._raw({k: v for k, v in acc.items() if v})

    def scaled(self, factor: int) -> "GradedOperation":
        return GradedOperation(
            self.degree, self.arity, {c: factor * v for c, v in self._values.items()}, name=f"{factor}{self.name}"
        )

    def __repr__(self) -> str:
        return f"GradedOperation({self.name}, degree={self.degree}, arity={self.arity})"


def apply_at(f: GradedOperation, j: int, w: TensorWord) -> TensorElement:
    """``(1^{⊗j} ⊗ f ⊗ 1^{⊗…})(w)`` with the Koszul sign ``(-1)^{|f| q}``.

    ``q`` is the total degree of the factors strictly left of position ``j``.
    """
    if not 0 <= j < len(w):
        raise IndexError(f"position {j} out of range for a word of length {len(w)}")
    image = f(w[j])
    if not image:
        return image
    q = sum(c.dim for c in w[:j])
    sign = -1 if (f.degree * q) % 2 else 1
    prefix, suffix = w[:j], w[j + 1 :]
    return TensorElement._raw({TensorWord(prefix + v + suffix): sign * a for v, a in image._terms.items()})


def extend_sum(f: GradedOperation, t: TensorElement) -> TensorElement:
    """``Σ_j (1^{⊗j} ⊗ f ⊗ 1^{⊗L-j-1})(t)`` over every position ``j``."""
    acc: dict = {}
    for w, coeff in t._terms.items():
        for j in range(len(w)):
            for v, a in apply_at(f, j, w)._terms.items():
                acc[v] = acc.get(v, 0) + coeff * a
    return TensorElement._raw({k: v for k, v in acc.items() if v})


def apply_at_element(f: GradedOperation, j: int, t: TensorElement) -> TensorElement:
    """Linear extension of :func:`apply_at` to a tensor element."""
    acc: dict = {}
    for w, coeff in t._terms.items():
        for v, a in apply_at(f, j, w)._terms.items():
            acc[v] = acc.get(v, 0) + coeff * a
    return TensorElement._raw({k: v for k, v in acc.items() if v})


def hom_differential(f: GradedOperation, boundary: GradedOperation) -> Callable[[Cell], TensorElement]:
    """Evaluator for ``δ(f) = f∘∂ - (-1)^{|f|} ∂∘f`` on generators.

    On the target side ``∂`` acts on tensor powers through :func:`extend_sum`.
    """
    sign = -1 if f.degree % 2 else 1

    def delta(cell: Cell) -> TensorElement:
        return f.apply(boundary.chain(cell)) - sign * extend_sum(boundary, f(cell))

    return delta


class DiagonalComplex:
    """A free chain complex together with a family of diagonals ``Δ_k``.

    ``diagonals`` maps ``k >= 2`` to a :class:`GradedOperation` of degree
    ``k - 2`` and arity ``k``; missing indices are the zero map.
    """

    def __init__(self, cells: Iterable[Cell], boundary: GradedOperation, diagonals: Mapping[int, GradedOperation]):
        self.cells = tuple(sorted(cells, key=cell_key))
        self.boundary = boundary
        self._diagonals = dict(diagonals)
        for k, op in self._diagonals.items():
            if k < 2 or op.arity != k or op.degree != k - 2:
                raise ValueError(f"Δ_{k} must have arity {k} and degree {k - 2}")

    def delta(self, k: int) -> GradedOperation:
        op = self._diagonals.get(k)
        if op is None:
            return GradedOperation.zero(k - 2, k, name=f"Δ{k}")
        return op

    @property
    def top_index(self) -> int:
        """Largest k with a nonzero stored Δ_k (1 if none)."""
        nz = [k for k, op in self._diagonals.items() if op.support()]
        return max(nz, default=1)

    def cells_of_dim(self, dim: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == dim]

    def with_diagonals(self, diagonals: Mapping[int, GradedOperation]) -> "DiagonalComplex":
        """Copy with some diagonals replaced (used for perturbation tests)."""
        top = max(self.top_index, *diagonals) if diagonals else self.top_index
        merged = {k: self.delta(k) for k in range(2, top + 1)}
        merged.update(diagonals)
        return DiagonalComplex(self.cells, self.boundary, merged)
