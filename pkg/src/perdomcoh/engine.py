"""Kostant representatives, Galois orbits, the sets Omega_I, the spectral
sequence pages and the assembly of the compactly supported cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import linalg as la
from .datum import PeriodDatum, require_valid
from .kgroup import (
    CheckReport,
    RepSymbol,
    SplitPair,
    VirtualGradedRep,
    rep_symbol,
    splitting_check,
    steinberg_label,
)
from .linalg import Matrix, Vector
from .roots import DEFAULT_CAP, WeylElement, WeylGroup, enumerate_weyl

SUBSET_SCAN_LIMIT = 12


class EngineError(RuntimeError):
    """An internal consistency assertion of the computation failed."""


# -- Kostant representatives and orbits -------------------------------------------------


@dataclass(frozen=True)
class KostantSet:
    elements: tuple[WeylElement, ...]
    stabilizer: tuple[WeylElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(w.length for w in self.elements)

    def find(self, matrix: Matrix) -> WeylElement | None:
        for w in self.elements:
            if w.matrix == matrix:
                return w
        return None


def kostant_representatives(weyl: WeylGroup, mu: Vector) -> KostantSet:
    """Minimal-length representatives of the cosets w W_mu.

    Cosets correspond to the points of the orbit W.mu; the group is scanned
    in length order, so the first element reaching a point is minimal.
    """
    best: dict[Vector, WeylElement] = {}
    for w in weyl:
        image = w(mu)
        cur = best.get(image)
        if cur is None:
            best[image] = w
        elif cur.length == w.length:
            raise EngineError(f"two minimal representatives for coset of {cur.word_str}")
    reps = sorted(best.values(), key=lambda w: w.sort_key)
    stab = tuple(w for w in weyl if w(mu) == mu)
    if len(reps) * len(stab) != len(weyl):
        raise EngineError("|W^mu| * |W_mu| != |W|")
    return KostantSet(tuple(reps), stab)


@dataclass(frozen=True)
class GaloisOrbit:
    representative: WeylElement
    members: tuple[WeylElement, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def length(self) -> int:
        return self.representative.length

    @property
    def rep(self) -> str:
        return self.representative.word_str

    @property
    def sort_key(self):
        return self.representative.sort_key


def _conjugate(g: Matrix, g_inv: Matrix, w: Matrix) -> Matrix:
    return la.matmul(g, la.matmul(w, g_inv))


def galois_orbits(kset: KostantSet, galois) -> list[GaloisOrbit]:
    """Partition W^mu under w -> gamma w gamma^-1."""
    g, g_inv = galois.generator, galois.inverse_generator()
    index = {w.matrix: w for w in kset.elements}
    seen: set[Matrix] = set()
    orbits = []
    for w in kset.elements:
        if w.matrix in seen:
            continue
        members, m = [], w.matrix
        while m not in members:
            members.append(m)
            m = _conjugate(g, g_inv, m)
        elems = []
        for x in members:
            if x not in index:
                raise EngineError("Galois action does not preserve the Kostant set")
            elems.append(index[x])
        if len({e.length for e in elems}) != 1:
            raise EngineError("Galois conjugation changed a length")
        if galois.order % len(elems):
            raise EngineError("orbit size does not divide the Galois order")
        seen.update(members)
        elems.sort(key=lambda e: e.sort_key)
        orbits.append(GaloisOrbit(elems[0], tuple(elems)))
    orbits.sort(key=lambda o: o.sort_key)
    return orbits


# -- cached context -----------------------------------------------------------------


@dataclass(frozen=True)
class _Context:
    datum: PeriodDatum
    weyl: WeylGroup
    kostant: KostantSet
    orbits: tuple[GaloisOrbit, ...]
    subsets: dict = field(hash=False, compare=False)


@lru_cache(maxsize=64)
def _context(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> _Context:
    require_valid(datum)
    weyl = enumerate_weyl(datum.root_datum, cap)
    kset = kostant_representatives(weyl, datum.mu)
    orbits = tuple(galois_orbits(kset, datum.galois))
    subsets = {o.rep: minimal_parabolic_subset(datum, o) for o in orbits}
    return _Context(datum, weyl, kset, orbits, subsets)


@lru_cache(maxsize=256)
def _omega_covectors(datum: PeriodDatum) -> tuple[Vector, ...]:
    g = datum.root_datum.ambient.inner_product
    return tuple(la.apply(g, w) for w in datum.inner_form.omega)


@lru_cache(maxsize=1 << 16)
def _excess(datum: PeriodDatum, w: WeylElement) -> tuple[bool, ...]:
    """Per label a of Delta: is (w mu, omega_a) > (nu, omega_a)?"""
    image = w(datum.mu)
    return tuple(la.dot(image, c) > la.dot(datum.nu, c) for c in _omega_covectors(datum))


def _exceeds(datum: PeriodDatum, w: WeylElement, label: str) -> bool:
    return _excess(datum, w)[datum.delta.index(label)]


def _in_omega(datum: PeriodDatum, w: WeylElement, subset: Sequence[str]) -> bool:
    chosen = set(subset)
    flags = _excess(datum, w)
    return all(f for a, f in zip(datum.delta, flags) if a not in chosen)


def omega_I(datum: PeriodDatum, subset: Sequence[str], cap: int = DEFAULT_CAP) -> list[GaloisOrbit]:
    """Orbits whose members pair strictly above nu against every omega_a, a not in I."""
    if not set(subset) <= set(datum.delta):
        raise ValueError(f"{list(subset)} is not a subset of Delta")
    out = []
    for orbit in _context(datum, cap).orbits:
        verdicts = {_in_omega(datum, w, subset) for w in orbit.members}
        if len(verdicts) != 1:
            raise EngineError(f"Omega membership depends on the representative of [{orbit.rep}]")
        if verdicts.pop():
            out.append(orbit)
    return out


def minimal_parabolic_subset(datum: PeriodDatum, orbit: GaloisOrbit) -> tuple[str, ...]:
    """I_[w] = {a : (w mu, omega_a) <= (nu, omega_a)}.

    For |Delta| <= 12 this is cross-checked against the smallest I with
    [w] in Omega_I found by scanning every subset.
    """
    delta = datum.delta
    results = {
        tuple(a for a in delta if not _exceeds(datum, w, a)) for w in orbit.members
    }
    if len(results) != 1:
        raise EngineError(f"I_[w] depends on the representative of [{orbit.rep}]")
    subset = results.pop()
    if len(delta) <= SUBSET_SCAN_LIMIT:
        w = orbit.representative
        members = [
            s for k in range(len(delta) + 1) for s in combinations(delta, k)
            if _in_omega(datum, w, s)
        ]
        smallest = min(members, key=len)
        if any(not set(smallest) <= set(s) for s in members) or smallest != subset:
            raise EngineError(f"subset scan disagrees with I_[w] for [{orbit.rep}]")
    return subset


# -- the main formula ----------------------------------------------------------------


@dataclass(frozen=True)
class CohomologySummand:
    orbit: GaloisOrbit
    parabolic_subset: tuple[str, ...]
    degree: int
    tate_twist: int
    steinberg: str
    galois_dim: int
    delta: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return self.orbit.length

    @property
    def orbit_rep(self) -> str:
        return self.orbit.rep

    @property
    def codim(self) -> int:
        return len(self.delta) - len(self.parabolic_subset)

    def symbol(self) -> RepSymbol:
        return rep_symbol("v", self.parabolic_subset, self.delta, self.orbit_rep,
                          self.galois_dim, self.tate_twist)

    def row(self) -> dict:
        return {
            "degree": self.degree,
            "tate_twist": self.tate_twist,
            "steinberg_symbol": self.steinberg,
            "parabolic_subset": list(self.parabolic_subset),
            "galois_orbit_rep": self.orbit_rep,
            "galois_dim": self.galois_dim,
            "orbit_length": self.length,
        }


def compute_cohomology(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> list[CohomologySummand]:
    """One summand v[P_I[w]] (x) ind[w] {-l[w]} [-|Delta - I[w]|] per orbit."""
    ctx = _context(datum, cap)
    delta = datum.delta
    out = []
    for orbit in ctx.orbits:
        subset = ctx.subsets[orbit.rep]
        codim = len(delta) - len(subset)
        out.append(CohomologySummand(
            orbit, subset, 2 * orbit.length + codim, -orbit.length,
            steinberg_label(subset, delta), orbit.size, delta,
        ))
    out.sort(key=lambda s: (s.degree, s.tate_twist, s.orbit.sort_key))
    return out


def domain_rep(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> VirtualGradedRep:
    """The cohomology of the period domain as a graded virtual representation."""
    return VirtualGradedRep.sum(
        VirtualGradedRep.single(s.degree, s.symbol()) for s in compute_cohomology(datum, cap)
    )


def kostant_set(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> KostantSet:
    return _context(datum, cap).kostant


def orbits(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> list[GaloisOrbit]:
    return list(_context(datum, cap).orbits)


def weyl_group(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> WeylGroup:
    return _context(datum, cap).weyl


# -- closed strata Y_I and the flag variety ------------------------------------------------


@dataclass(frozen=True)
class YCohomology:
    subset: tuple[str, ...]
    rep: VirtualGradedRep
    extension: bool

    def betti(self) -> dict[int, int]:
        return self.rep.dimension_by_degree()


def _orbit_class(datum: PeriodDatum, orbit: GaloisOrbit, subset: Sequence[str]) -> RepSymbol:
    return rep_symbol("i", subset, datum.delta, orbit.rep, orbit.size, -orbit.length)


def y_I_cohomology(datum: PeriodDatum, subset: Sequence[str], cap: int = DEFAULT_CAP) -> YCohomology:
    """sum over [w] in Omega_I of ind[w]{-l[w]}.

    I = Delta is accepted as an extension: it returns the flag variety.
    The J-factor is trivial here and is recorded as i[P_Delta].
    """
    delta = datum.delta
    chosen = tuple(a for a in delta if a in set(subset))
    extension = chosen == delta
    rep = VirtualGradedRep.sum(
        VirtualGradedRep.single(2 * o.length, _orbit_class(datum, o, delta))
        for o in omega_I(datum, chosen, cap)
    )
    return YCohomology(chosen, rep, extension)


def flag_cohomology(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> VirtualGradedRep:
    return y_I_cohomology(datum, datum.delta, cap).rep


# -- spectral sequence pages ------------------------------------------------------------


@dataclass(frozen=True)
class SpectralPage:
    name: str
    entries: dict  # (p, q, orbit rep) -> tuple[RepSymbol, ...]

    def __bool__(self) -> bool:
        return bool(self.entries)

    def keys(self) -> list[tuple[int, int, str]]:
        return sorted(self.entries)

    def orbit_reps(self) -> list[str]:
        return sorted({k[2] for k in self.entries})

    def rows(self) -> list[int]:
        return sorted({k[1] for k in self.entries})

    def at(self, p: int, q: int, orbit: str | None = None) -> tuple[RepSymbol, ...]:
        out: list[RepSymbol] = []
        for (pp, qq, o), syms in self.entries.items():
            if pp == p and qq == q and (orbit is None or o == orbit):
                out.extend(syms)
        return tuple(sorted(out))

    def total(self) -> VirtualGradedRep:
        """All entries, placed in total degree p + q."""
        return VirtualGradedRep.sum(
            VirtualGradedRep.single(p + q, s) for (p, q, _), syms in self.entries.items() for s in syms
        )

    def row_euler(self, q: int, orbit: str) -> VirtualGradedRep:
        """sum_p (-1)^p [E^{p,q}] restricted to one orbit subcomplex."""
        return VirtualGradedRep.sum(
            VirtualGradedRep.single(0, s, (-1) ** p)
            for (p, qq, o), syms in self.entries.items() if qq == q and o == orbit
            for s in syms
        )


def _proper_subsets(delta: Sequence[str]):
    for k in range(len(delta)):
        for s in combinations(tuple(delta), k):
            yield s


def e1_page(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> SpectralPage:
    """E1^{p,q} = sum over |Delta - I| = p+1 and [w] in Omega_I, q = 2 l[w], of i[P_I] (x) ind[w]."""
    delta = datum.delta
    entries: dict = {}
    for subset in _proper_subsets(delta):
        p = len(delta) - len(subset) - 1
        for o in omega_I(datum, subset, cap):
            key = (p, 2 * o.length, o.rep)
            entries[key] = entries.get(key, ()) + (_orbit_class(datum, o, subset),)
    return SpectralPage("E1", {k: tuple(sorted(v)) for k, v in sorted(entries.items())})


def e2_page(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> SpectralPage:
    """Closed form of E2, orbit by orbit.

    With k = |Delta - I[w]| and q = 2 l[w]: k = 1 leaves i[P_I[w]] at p = 0;
    k > 1 leaves i[P_Delta] at p = 0 and v[P_I[w]] at p = k - 1; k = 0
    contributes nothing.
    """
    ctx = _context(datum, cap)
    delta = datum.delta
    entries: dict = {}
    for o in ctx.orbits:
        subset = ctx.subsets[o.rep]
        k = len(delta) - len(subset)
        q = 2 * o.length
        if k == 1:
            entries[(0, q, o.rep)] = (_orbit_class(datum, o, subset),)
        elif k > 1:
            entries[(0, q, o.rep)] = (_orbit_class(datum, o, delta),)
            entries[(k - 1, q, o.rep)] = (
                rep_symbol("v", subset, delta, o.rep, o.size, -o.length),
            )
    return SpectralPage("E2", dict(sorted(entries.items())))


# -- consistency checks -----------------------------------------------------------------


def row_euler_check(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> CheckReport:
    """Row-wise Euler characteristics of E1 and E2 agree for every orbit subcomplex."""
    e1, e2 = e1_page(datum, cap), e2_page(datum, cap)
    bad = []
    count = 0
    for o in _context(datum, cap).orbits:
        for q in sorted(set(e1.rows()) | set(e2.rows())):
            lhs = e1.row_euler(q, o.rep).expand()
            rhs = e2.row_euler(q, o.rep).expand()
            count += 1
            if lhs != rhs:
                bad.append(f"[{o.rep}] row q={q}: E1 gives {lhs}, E2 gives {rhs}")
    items = tuple(bad) or (f"{count} (row, orbit) Euler identities hold",)
    return CheckReport("row_euler", not bad, items)


def y_cohomology(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> VirtualGradedRep:
    """Hypercohomology of the complement, read off the E2 page in total degree."""
    return e2_page(datum, cap).total()


def les_consistency(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> CheckReport:
    """chi(flag) = chi_c(period domain) + chi(complement) after v-expansion."""
    flag = flag_cohomology(datum, cap).euler().expand()
    period = domain_rep(datum, cap).euler().expand()
    comp = y_cohomology(datum, cap).euler().expand()
    defect = flag - period - comp
    if defect.is_zero:
        return CheckReport("les", True, ("chi(flag) - chi_c(domain) - chi(Y) = 0",))
    return CheckReport("les", False, tuple(f"offending token: {m:+d} x {s}" for (_, s), m in defect))


def check_splitting(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> tuple[CheckReport, list[SplitPair]]:
    return splitting_check(compute_cohomology(datum, cap), datum.inner_form.center_rank)
