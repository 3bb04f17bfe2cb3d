"""Grothendieck-group bookkeeping for induced and generalized Steinberg symbols.

Representations are never materialised: ``i[P_I]`` and ``v[P_I]`` are formal
symbols tensored with a Galois orbit symbol and a Tate twist, and graded
virtual representations are integer combinations of such tokens.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence


@dataclass(frozen=True, order=True)
class RepSymbol:
    """``kind[P_I] (x) ind[orbit] (twist)``.

    ``subset`` is kept in the order of ``delta``.  Build through
    :func:`rep_symbol`, which identifies ``v[P_Delta]`` with ``i[P_Delta]``.
    """

    galois: str
    twist: int
    kind: str
    subset: tuple[str, ...]
    delta: tuple[str, ...]
    galois_dim: int = 1

    @property
    def is_trivial(self) -> bool:
        return self.subset == self.delta

    @property
    def parabolic(self) -> str:
        return "P_{" + ",".join(self.subset) + "}"

    def with_kind(self, kind: str, subset: Sequence[str]) -> "RepSymbol":
        return rep_symbol(kind, subset, self.delta, self.galois, self.galois_dim, self.twist)

    def __str__(self) -> str:
        return f"{self.kind}[{self.parabolic}] ⊗ ind[{self.galois}] ({self.twist})"


def rep_symbol(kind: str, subset: Iterable[str], delta: Sequence[str],
               galois: str = "e", galois_dim: int = 1, twist: int = 0) -> RepSymbol:
    if kind not in ("i", "v"):
        raise ValueError(f"unknown symbol kind {kind!r}")
    delta = tuple(delta)
    chosen = set(subset)
    if not chosen <= set(delta):
        raise ValueError(f"{sorted(chosen)} is not a subset of {list(delta)}")
    ordered = tuple(a for a in delta if a in chosen)
    if ordered == delta:
        kind = "i"
    return RepSymbol(galois, twist, kind, ordered, delta, galois_dim)


def steinberg_label(subset: Sequence[str], delta: Sequence[str]) -> str:
    """Display form of v[P_I]; the full subset gives the trivial representation."""
    if tuple(subset) == tuple(delta):
        return "triv"
    return "v[P_{" + ",".join(subset) + "}]"


# -- subset lattice -----------------------------------------------------------------


def supersets(subset: Sequence[str], delta: Sequence[str]) -> Iterator[tuple[str, ...]]:
    base = set(subset)
    rest = [a for a in delta if a not in base]
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            chosen = base | set(extra)
            yield tuple(a for a in delta if a in chosen)


def expand_v(subset: Sequence[str], delta: Sequence[str]) -> dict[tuple[str, ...], int]:
    """v[P_I] = sum over I <= K <= Delta of (-1)^|K \\ I| i[P_K]."""
    n = len(set(subset))
    return {k: (-1) ** (len(k) - n) for k in supersets(subset, delta)}


def expand_i(subset: Sequence[str], delta: Sequence[str]) -> dict[tuple[str, ...], int]:
    """Inverse of :func:`expand_v`: i[P_I] = sum over K >= I of v[P_K]."""
    return {k: 1 for k in supersets(subset, delta)}


# -- virtual graded representations ------------------------------------------------------


class VirtualGradedRep:
    """Finite integer combination of (degree, RepSymbol) tokens."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, RepSymbol], int] | None = None):
        clean: dict[tuple[int, RepSymbol], int] = {}
        for key, m in (terms or {}).items():
            if m:
                clean[key] = clean.get(key, 0) + m
        self._terms = {k: m for k, m in clean.items() if m}

    @classmethod
    def single(cls, degree: int, symbol: RepSymbol, mult: int = 1) -> "VirtualGradedRep":
        return cls({(degree, symbol): mult})

    @classmethod
    def sum(cls, reps: Iterable["VirtualGradedRep"]) -> "VirtualGradedRep":
        total: dict[tuple[int, RepSymbol], int] = defaultdict(int)
        for r in reps:
            for k, m in r._terms.items():
                total[k] += m
        return cls(total)

    def items(self) -> list[tuple[tuple[int, RepSymbol], int]]:
        return sorted(self._terms.items())

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualGradedRep) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "VirtualGradedRep") -> "VirtualGradedRep":
        return VirtualGradedRep.sum([self, other])

    def __neg__(self) -> "VirtualGradedRep":
        return VirtualGradedRep({k: -m for k, m in self._terms.items()})

    def __sub__(self, other: "VirtualGradedRep") -> "VirtualGradedRep":
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> list[int]:
        return sorted({d for d, _ in self._terms})

    def in_degree(self, degree: int) -> "VirtualGradedRep":
        return VirtualGradedRep({k: m for k, m in self._terms.items() if k[0] == degree})

    def euler(self) -> "VirtualGradedRep":
        """Alternating sum over degrees, placed in degree 0."""
        return VirtualGradedRep.sum(
            VirtualGradedRep.single(0, s, m * (-1) ** d) for (d, s), m in self._terms.items()
        )

    def expand(self) -> "VirtualGradedRep":
        """Rewrite every v-symbol as its alternating sum of i-symbols."""
        out = []
        for (d, s), m in self._terms.items():
            if s.kind == "i":
                out.append(VirtualGradedRep.single(d, s, m))
                continue
            for k, c in expand_v(s.subset, s.delta).items():
                out.append(VirtualGradedRep.single(d, s.with_kind("i", k), m * c))
        return VirtualGradedRep.sum(out)

    def dimension_by_degree(self) -> dict[int, int]:
        """Galois dimension carried in each degree (signed multiplicities)."""
        dims: dict[int, int] = defaultdict(int)
        for (d, s), m in self._terms.items():
            dims[d] += m * s.galois_dim
        return {d: x for d, x in sorted(dims.items()) if x}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (d, s), m in self.items():
            coef = "" if m == 1 else ("-" if m == -1 else f"{m}*")
            parts.append(f"{coef}{s} @{d}")
        return " + ".join(parts)

    __repr__ = __str__


# -- Ext groups ---------------------------------------------------------------------


def ext_dimension(subset: Iterable[str], other: Iterable[str], degree: int, center_rank: int) -> int:
    """dim Ext^degree(v[P_I], v[P_I']) for a J whose centre has split rank r.

    With d = |I symmetric-difference I'|, the answer is binomial(r, degree - d)
    when d <= degree <= r and zero otherwise.
    """
    if degree < 0 or center_rank < 0:
        return 0
    d = len(set(subset) ^ set(other))
    if d <= degree <= center_rank:
        return comb(center_rank, degree - d)
    return 0


def ext_table(delta: Sequence[str], center_rank: int, max_degree: int) -> dict:
    """Ext dimensions over all pairs of subsets of delta and 0..max_degree."""
    subsets = [s for k in range(len(delta) + 1) for s in combinations(tuple(delta), k)]
    return {
        (a, b): [ext_dimension(a, b, i, center_rank) for i in range(max_degree + 1)]
        for a in subsets
        for b in subsets
    }


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    items: tuple[str, ...] = ()


@dataclass(frozen=True)
class SplitPair:
    first: str
    second: str
    degree: int
    lengths: tuple[int, int]
    sizes: tuple[int, int]
    ext1: int

    @property
    def gap(self) -> int:
        return abs(self.sizes[0] - self.sizes[1])

    @property
    def ok(self) -> bool:
        return self.gap >= 2 and self.ext1 == 0

    def __str__(self) -> str:
        verdict = "ok" if self.ok else "FAIL"
        return (f"[{self.first}] vs [{self.second}] in degree {self.degree}: "
                f"l={self.lengths[0]},{self.lengths[1]} |I|={self.sizes[0]},{self.sizes[1]} "
                f"gap={self.gap} Ext1={self.ext1} {verdict}")


def splitting_check(summands: Sequence, center_rank: int) -> tuple[CheckReport, list[SplitPair]]:
    """Ext^1-vanishing between same-degree summands of different orbit length.

    ``summands`` need ``degree``, ``length``, ``parabolic_subset`` and
    ``orbit_rep`` attributes.
    """
    pairs = []
    for a, b in combinations(summands, 2):
        if a.degree != b.degree or a.length == b.length:
            continue
        pairs.append(SplitPair(
            a.orbit_rep, b.orbit_rep, a.degree, (a.length, b.length),
            (len(a.parabolic_subset), len(b.parabolic_subset)),
            ext_dimension(a.parabolic_subset, b.parabolic_subset, 1, center_rank),
        ))
    items = tuple(str(p) for p in pairs) or ("no same-degree pairs of different length",)
    return CheckReport("splitting", all(p.ok for p in pairs), items), pairs
