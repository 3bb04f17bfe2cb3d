"""Root data, Weyl groups and exact dominance combinatorics.

Coweights live in an ambient rational vector space (``X_*(T)_Q``) and roots
are covectors on it; the pairing is the coordinate dot product.  Everything
is exact: vectors are tuples of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from . import linalg as la
from .linalg import Matrix, Vector

DEFAULT_CAP = 10**6


class RootDatumError(ValueError):
    """Malformed or unsupported root datum."""


class EnumerationCapError(RuntimeError):
    """The Weyl group is larger than the configured enumeration cap."""


@dataclass(frozen=True)
class AmbientSpace:
    dimension: int
    inner_product: Matrix
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise RootDatumError("ambient dimension must be positive")
        g = self.inner_product
        if len(g) != self.dimension or any(len(r) != self.dimension for r in g):
            raise RootDatumError("inner product has wrong shape")
        if any(g[i][j] != g[j][i] for i in range(self.dimension) for j in range(i)):
            raise RootDatumError("inner product is not symmetric")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i + 1}" for i in range(self.dimension)))

    def inner(self, u: Vector, v: Vector) -> Fraction:
        return la.bilinear(self.inner_product, u, v)

    def sharp(self, covector: Vector) -> Vector:
        """The vector representing ``covector`` through the inner product."""
        return la.apply(self._inverse_gram, covector)

    @cached_property
    def _inverse_gram(self) -> Matrix:
        try:
            return la.inverse(self.inner_product)
        except ValueError:
            raise RootDatumError("inner product is degenerate; pass explicit directions") from None


@dataclass(frozen=True)
class RootDatum:
    """A based root datum: simple roots (covectors) and simple coroots (vectors)."""

    ambient: AmbientSpace
    simple_roots: tuple[Vector, ...]
    simple_coroots: tuple[Vector, ...]
    type_tag: str = "explicit"

    def __post_init__(self):
        n = self.ambient.dimension
        if len(self.simple_roots) != len(self.simple_coroots):
            raise RootDatumError("need one coroot per simple root")
        for v in (*self.simple_roots, *self.simple_coroots):
            if len(v) != n:
                raise RootDatumError("root/coroot of wrong dimension")
        _check_finite_cartan(self.cartan_pairings)
        if la.rank(list(self.simple_coroots)) != self.rank:
            raise RootDatumError("simple coroots are linearly dependent")
        for i in range(self.rank):
            s = reflection_matrix(self, i)
            if not preserves_form(s, self.ambient.inner_product):
                raise RootDatumError(f"inner product is not invariant under s{i + 1}")

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def root_labels(self) -> tuple[str, ...]:
        return tuple(f"a{i + 1}" for i in range(self.rank))

    @cached_property
    def cartan_pairings(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for cv in self.simple_coroots:
            row = []
            for r in self.simple_roots:
                x = la.dot(cv, r)
                if x.denominator != 1:
                    raise RootDatumError("Cartan pairings must be integers")
                row.append(int(x))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def central_directions(self) -> tuple[Vector, ...]:
        """Basis of the vectors killed by every root (the central cocharacters)."""
        return tuple(la.nullspace(list(self.simple_roots), self.ambient.dimension))

    def central_projection(self, v: Vector) -> Vector:
        """Orthogonal projection of ``v`` onto the central directions."""
        basis = self.central_directions
        if not basis:
            return la.zero(self.ambient.dimension)
        gram = tuple(tuple(self.ambient.inner(a, b) for b in basis) for a in basis)
        rhs = tuple(self.ambient.inner(a, v) for a in basis)
        coeffs = la.apply(la.inverse(gram), rhs)
        out = la.zero(self.ambient.dimension)
        for c, b in zip(coeffs, basis):
            out = la.add(out, la.scale(c, b))
        return out


def _check_finite_cartan(a: Sequence[Sequence[int]]) -> None:
    r = len(a)
    for i in range(r):
        if a[i][i] != 2:
            raise RootDatumError("Cartan matrix must have 2 on the diagonal")
        for j in range(r):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                raise RootDatumError("Cartan matrix off-diagonal entries are invalid")
    for k in range(1, r + 1):
        if la.det(la.mat([row[:k] for row in a[:k]])) <= 0:
            raise RootDatumError("Cartan matrix is not of finite type")


def reflection_matrix(datum: RootDatum, i: int) -> Matrix:
    n = datum.ambient.dimension
    cv, r = datum.simple_coroots[i], datum.simple_roots[i]
    return tuple(
        tuple(Fraction(int(a == b)) - cv[a] * r[b] for b in range(n)) for a in range(n)
    )


def preserves_form(m: Matrix, g: Matrix) -> bool:
    return la.matmul(la.transpose(m), la.matmul(g, m)) == g


def reflect(datum: RootDatum, v: Vector, i: int) -> Vector:
    """``v - <v, a_i> a_i^vee``."""
    if not 0 <= i < datum.rank:
        raise IndexError(f"simple index {i} out of range for rank {datum.rank}")
    c = la.dot(v, datum.simple_roots[i])
    return la.sub(v, la.scale(c, datum.simple_coroots[i]))


# -- builders ---------------------------------------------------------------

_SERIES = {"A", "B", "C", "D", "E", "F", "G"}


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Bourbaki-numbered Cartan matrix, entry ``[i][j] = <a_i^vee, a_j>``."""
    if rank < 1:
        raise RootDatumError("rank must be positive")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, ij=-1, ji=-1):
        a[i][j], a[j][i] = ij, ji

    if series == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif series in ("B", "C"):
        if rank < 2:
            raise RootDatumError(f"{series}{rank} is not defined")
        for i in range(rank - 2):
            link(i, i + 1)
        # B: last root short; C: last root long
        if series == "B":
            link(rank - 2, rank - 1, -1, -2)
        else:
            link(rank - 2, rank - 1, -2, -1)
    elif series == "D":
        if rank < 3:
            raise RootDatumError("D_n needs rank >= 3")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif series == "E":
        if rank not in (6, 7, 8):
            raise RootDatumError("E_n needs rank 6, 7 or 8")
        link(0, 2)
        link(1, 3)
        for i in range(2, rank - 1):
            link(i, i + 1)
    elif series == "F":
        if rank != 4:
            raise RootDatumError("F_n needs rank 4")
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif series == "G":
        if rank != 2:
            raise RootDatumError("G_n needs rank 2")
        link(0, 1, -3, -1)
    else:
        raise RootDatumError(f"unsupported series {series!r}")
    return a


def _symmetrizer(a: Sequence[Sequence[int]]) -> list[Fraction]:
    """Half squared coroot lengths, normalised so the shortest is 1."""
    r = len(a)
    half: list[Fraction | None] = [None] * r
    for start in range(r):
        if half[start] is not None:
            continue
        half[start] = Fraction(1)
        comp, queue = [start], deque([start])
        while queue:
            i = queue.popleft()
            for j in range(r):
                if j != i and a[i][j] and half[j] is None:
                    # (a_j^v, a_i^v) = L_i a[j][i] = L_j a[i][j]
                    half[j] = half[i] * a[j][i] / a[i][j]
                    comp.append(j)
                    queue.append(j)
        low = min(half[k] for k in comp)
        for k in comp:
            half[k] = half[k] / low
    return half  # type: ignore[return-value]


def semisimple_datum(series: str, rank: int) -> RootDatum:
    """Adjoint-type datum in fundamental-coweight coordinates."""
    a = cartan_matrix(series, rank)
    half = _symmetrizer(a)
    ainv = la.inverse(la.mat(a))
    # (w_j, w_k) = (A^-1)[k][j] L_j
    gram = tuple(tuple(ainv[k][j] * half[j] for k in range(rank)) for j in range(rank))
    ambient = AmbientSpace(rank, gram, tuple(f"w{i + 1}" for i in range(rank)))
    roots = tuple(tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank))
    coroots = la.mat(a)
    return RootDatum(ambient, roots, coroots, f"{series}{rank}")


def gl_datum(n: int) -> RootDatum:
    """GL_n in n coordinates with the standard dot product."""
    if n < 1:
        raise RootDatumError("GL_n needs n >= 1")
    ambient = AmbientSpace(n, la.identity(n), tuple(f"e{i + 1}" for i in range(n)))
    simple = tuple(
        tuple(Fraction((j == i) - (j == i + 1)) for j in range(n)) for i in range(n - 1)
    )
    return RootDatum(ambient, simple, simple, f"GL{n}")


def gsp4_datum() -> RootDatum:
    """GSp_4 with coordinates (a, b, c) for t -> diag(t^a, t^b, t^(c-b), t^(c-a)).

    The inner product is pulled back from the dot product on the four
    diagonal exponents.
    """
    gram = la.mat([[2, 0, -1], [0, 2, -1], [-1, -1, 2]])
    ambient = AmbientSpace(3, gram, ("a", "b", "c"))
    roots = la.mat([[1, -1, 0], [0, 2, -1]])
    coroots = la.mat([[1, -1, 0], [0, 1, 0]])
    return RootDatum(ambient, roots, coroots, "GSp4")


def product_datum(*factors: RootDatum) -> RootDatum:
    if not factors:
        raise RootDatumError("empty product")
    dims = [f.ambient.dimension for f in factors]
    n = sum(dims)
    gram = [[Fraction(0)] * n for _ in range(n)]
    roots: list[Vector] = []
    coroots: list[Vector] = []
    labels: list[str] = []
    off = 0
    for k, (f, d) in enumerate(zip(factors, dims)):
        for i in range(d):
            for j in range(d):
                gram[off + i][off + j] = f.ambient.inner_product[i][j]
        pad = lambda v: la.zero(off) + tuple(v) + la.zero(n - off - d)  # noqa: E731
        roots += [pad(r) for r in f.simple_roots]
        coroots += [pad(c) for c in f.simple_coroots]
        labels += [f"{lab}.{k + 1}" for lab in f.ambient.labels]
        off += d
    ambient = AmbientSpace(n, la.mat(gram), tuple(labels))
    tag = "x".join(f.type_tag for f in factors)
    return RootDatum(ambient, tuple(roots), tuple(coroots), tag)


def build_root_datum(type_tag: str, n: int | None = None) -> RootDatum:
    """Build a supported datum: ``("GL", n)``, ``("GSp4",)`` or a Cartan series."""
    tag = type_tag.strip()
    if tag.upper() == "GL":
        if n is None:
            raise RootDatumError("GL needs a dimension")
        return gl_datum(n)
    if tag.upper() == "GSP4":
        return gsp4_datum()
    if tag.upper() in _SERIES:
        if n is None or n < 1:
            raise RootDatumError("rank 0 is not supported")
        return semisimple_datum(tag.upper(), n)
    raise RootDatumError(f"unsupported type {type_tag!r}")


# -- Weyl group ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeylElement:
    word: tuple[int, ...]
    matrix: Matrix = field(repr=False)
    length: int

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __call__(self, v: Vector) -> Vector:
        return la.apply(self.matrix, v)

    @property
    def word_str(self) -> str:
        return word_to_str(self.word)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.length, self.word)


def word_to_str(word: Sequence[int]) -> str:
    if not word:
        return "e"
    sep = "" if all(i < 9 for i in word) else "."
    return sep.join(f"s{i + 1}" for i in word)


class WeylGroup(Sequence[WeylElement]):
    """Enumerated Weyl group in (length, lexicographic word) order."""

    def __init__(self, datum: RootDatum, elements: list[WeylElement]):
        self.datum = datum
        self._elements = tuple(elements)
        self._index = {w.matrix: k for k, w in enumerate(self._elements)}

    def __len__(self) -> int:
        return len(self._elements)

    def __getitem__(self, k):
        return self._elements[k]

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self._elements)

    def find(self, matrix: Matrix) -> WeylElement:
        try:
            return self._elements[self._index[matrix]]
        except KeyError:
            raise KeyError("matrix is not an element of this Weyl group") from None

    def __contains__(self, w) -> bool:
        return isinstance(w, WeylElement) and w.matrix in self._index

    @property
    def longest(self) -> WeylElement:
        return self._elements[-1]

    def length_polynomial(self) -> list[int]:
        coeffs = [0] * (self.longest.length + 1)
        for w in self._elements:
            coeffs[w.length] += 1
        return coeffs


def enumerate_weyl(datum: RootDatum, cap: int = DEFAULT_CAP) -> WeylGroup:
    """Breadth-first closure of the identity under right multiplication by s_i.

    The first word reaching an element is its lexicographically smallest
    reduced word, because each level is processed in sorted order.
    """
    n = datum.ambient.dimension
    ident = la.identity(n)
    level = [WeylElement((), ident, 0)]
    seen = {ident}
    out = list(level)
    while level:
        nxt = []
        for w in level:
            for i in range(datum.rank):
                cv, r = datum.simple_coroots[i], datum.simple_roots[i]
                wc = la.apply(w.matrix, cv)
                m = tuple(
                    tuple(w.matrix[a][b] - wc[a] * r[b] for b in range(n)) for a in range(n)
                )
                if m in seen:
                    continue
                seen.add(m)
                if len(seen) > cap:
                    raise EnumerationCapError(f"Weyl group exceeds cap of {cap} elements")
                nxt.append(WeylElement(w.word + (i,), m, w.length + 1))
        nxt.sort(key=lambda x: x.word)
        out += nxt
        level = nxt
    return WeylGroup(datum, out)


def positive_coroots(datum: RootDatum) -> list[Vector]:
    """All positive coroots, by closing the simple ones under s_i."""
    simple = list(datum.simple_coroots)
    found = list(simple)
    seen = set(found)
    queue = deque(found)
    while queue:
        g = queue.popleft()
        for i in range(datum.rank):
            if g == simple[i]:
                continue
            h = reflect(datum, g, i)
            if h not in seen:
                seen.add(h)
                found.append(h)
                queue.append(h)
    return found


def inversion_count(datum: RootDatum, w: WeylElement, positives: Sequence[Vector] | None = None) -> int:
    """Number of positive coroots that ``w`` sends to negative coroots."""
    pos = positive_coroots(datum) if positives is None else positives
    pos_set = set(pos)
    return sum(1 for g in pos if la.scale(-1, w(g)) in pos_set)


# -- dominance and dual bases -------------------------------------------------


def coroot_coefficients(datum: RootDatum, v: Vector) -> Vector | None:
    """Coefficients of ``v`` in the simple coroots, or None if outside their span."""
    return la.solve_combination(datum.simple_coroots, v)


def dominance_leq(datum: RootDatum, x: Vector, y: Vector) -> bool:
    """``x <= y``: y - x is a non-negative rational combination of simple coroots."""
    coeffs = coroot_coefficients(datum, la.sub(y, x))
    return coeffs is not None and all(c >= 0 for c in coeffs)


def is_dominant(datum: RootDatum, v: Vector) -> bool:
    return all(la.dot(v, r) >= 0 for r in datum.simple_roots)


def dual_basis_coweights(
    covectors: Sequence[Vector],
    ambient: AmbientSpace,
    directions: Sequence[Vector] | None = None,
) -> tuple[Vector, ...]:
    """Coweights w_a in the span of ``directions`` with <w_a, b> = delta_ab.

    Without explicit directions, the span of the vectors dual to the
    covectors under the inner product is used; it is orthogonal to every
    direction the covectors kill, in particular to the centre.
    """
    if not covectors:
        return ()
    dirs = [ambient.sharp(c) for c in covectors] if directions is None else list(directions)
    if len(dirs) != len(covectors):
        raise RootDatumError("need one direction per covector")
    pairing = tuple(tuple(la.dot(d, c) for c in covectors) for d in dirs)
    try:
        inv = la.inverse(pairing)
    except ValueError:
        raise RootDatumError("covector family is linearly dependent") from None
    out = []
    for a in range(len(covectors)):
        w = la.zero(ambient.dimension)
        for k, d in enumerate(dirs):
            w = la.add(w, la.scale(inv[a][k], d))
        out.append(w)
    return tuple(out)
