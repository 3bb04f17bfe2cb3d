"""The input (G, Galois action, mu, nu, J) of the cohomology computation and
its validation, including the non-emptiness criterion ``mu_bar >= nu``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg as la
from .linalg import Matrix, Vector
from .roots import (
    RootDatum,
    coroot_coefficients,
    dominance_leq,
    dual_basis_coweights,
    gl_datum,
    is_dominant,
    preserves_form,
    reflection_matrix,
)


class DatumError(ValueError):
    """Structurally malformed period datum (wrong shapes, bad orders)."""


class ValidationError(RuntimeError):
    """Raised by downstream operations handed a datum that fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        failed = ", ".join(c.name for c in report.failures)
        super().__init__(f"period datum failed validation: {failed}")


def _power(m: Matrix, k: int) -> Matrix:
    out = la.identity(len(m))
    for _ in range(k):
        out = la.matmul(m, out)
    return out


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending basis vector e_i to e_perm[i]."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DatumError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    return tuple(tuple(Fraction(int(perm[j] == i)) for j in range(n)) for i in range(n))


def _group_closure(gens: Sequence[Matrix], n: int) -> list[Matrix]:
    elems = [la.identity(n)]
    seen = set(elems)
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = la.matmul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        elems += nxt
        frontier = nxt
    return elems


@dataclass(frozen=True)
class GaloisAction:
    """Finite cyclic image of the Galois group acting on the ambient space.

    ``averaging`` optionally generates the larger group used to form
    ``mu_bar``; when empty the cyclic group itself is used.
    """

    generator: Matrix
    order: int = 1
    averaging: tuple[Matrix, ...] = ()

    def __post_init__(self):
        if self.order < 1:
            raise DatumError("Galois order must be positive")
        n = len(self.generator)
        if any(len(r) != n for r in self.generator):
            raise DatumError("Galois generator must be square")
        for g in self.averaging:
            if len(g) != n or any(len(r) != n for r in g):
                raise DatumError("averaging generator has wrong shape")

    @classmethod
    def trivial(cls, dimension: int) -> "GaloisAction":
        return cls(la.identity(dimension), 1)

    @property
    def dimension(self) -> int:
        return len(self.generator)

    @property
    def is_trivial(self) -> bool:
        return self.generator == la.identity(self.dimension)

    def powers(self) -> list[Matrix]:
        """gamma^0, ..., gamma^(e-1)."""
        return [_power(self.generator, k) for k in range(self.order)]

    def inverse_generator(self) -> Matrix:
        return _power(self.generator, self.order - 1)

    def averaging_group(self) -> list[Matrix]:
        if not self.averaging:
            return self.powers()
        return _group_closure(self.averaging, self.dimension)

    def act(self, v: Vector) -> Vector:
        return la.apply(self.generator, v)

    def act_covector(self, c: Vector) -> Vector:
        """The covector c o gamma^-1."""
        return la.apply(la.transpose(self.inverse_generator()), c)


@dataclass(frozen=True)
class CocharacterClass:
    mu: Vector


@dataclass(frozen=True)
class SlopeDatum:
    nu: Vector
    s: int = 1


@dataclass(frozen=True)
class InnerFormDatum:
    """Relative simple roots of J, their dual coweights, and the centre rank."""

    delta: tuple[str, ...]
    relative_simple_roots: tuple[Vector, ...]
    omega: tuple[Vector, ...]
    center_rank: int

    def __post_init__(self):
        if not (len(self.delta) == len(self.relative_simple_roots) == len(self.omega)):
            raise DatumError("delta, relative roots and omegas must have equal length")
        if len(set(self.delta)) != len(self.delta):
            raise DatumError("delta labels must be distinct")
        if self.center_rank < 0:
            raise DatumError("center rank must be non-negative")

    def omega_of(self, label: str) -> Vector:
        return self.omega[self.delta.index(label)]


@dataclass(frozen=True)
class PeriodDatum:
    root_datum: RootDatum
    galois: GaloisAction
    cocharacter: CocharacterClass
    slope: SlopeDatum
    inner_form: InnerFormDatum

    def __post_init__(self):
        n = self.root_datum.ambient.dimension
        if self.galois.dimension != n:
            raise DatumError("Galois action has wrong dimension")
        if len(self.mu) != n or len(self.nu) != n:
            raise DatumError("mu and nu must live in the ambient space")
        if self.slope.s < 1:
            raise DatumError("decency exponent s must be positive")
        for v in (*self.inner_form.relative_simple_roots, *self.inner_form.omega):
            if len(v) != n:
                raise DatumError("inner-form data has wrong dimension")

    def __hash__(self) -> int:
        # used as a cache key all over the engine; the fields are large tuples
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.root_datum, self.galois, self.cocharacter, self.slope, self.inner_form))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def mu(self) -> Vector:
        return self.cocharacter.mu

    @property
    def nu(self) -> Vector:
        return self.slope.nu

    @property
    def delta(self) -> tuple[str, ...]:
        return self.inner_form.delta


# -- operations -----------------------------------------------------------------


def average_mu(mu: Vector, galois: GaloisAction) -> Vector:
    """Average of mu over the averaging group (``mu_bar``)."""
    group = galois.averaging_group()
    total = la.zero(len(mu))
    for g in group:
        total = la.add(total, la.apply(g, mu))
    return la.scale(Fraction(1, len(group)), total)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    info: tuple[Check, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> Check:
        for c in (*self.checks, *self.info):
            if c.name == name:
                return c
        raise KeyError(name)


NONEMPTY = "nonempty: mu_bar >= nu"


def validate(d: PeriodDatum) -> ValidationReport:
    """Check every hypothesis of the main formula; never raises on bad math."""
    rd, gal = d.root_datum, d.galois
    amb = rd.ambient
    fmt = la.fmt_vec
    checks: list[Check] = []

    def add(name, ok, detail=""):
        checks.append(Check(name, bool(ok), detail))

    # (a) mu
    add("mu_integral", la.is_integral(d.mu), fmt(d.mu))
    add("mu_dominant", is_dominant(rd, d.mu),
        "pairings " + fmt(tuple(la.dot(d.mu, r) for r in rd.simple_roots)))

    # (b) nu
    pairings = tuple(la.dot(d.nu, r) for r in rd.simple_roots)
    add("nu_basic", all(x == 0 for x in pairings), "pairings " + fmt(pairings))
    snu = la.scale(d.slope.s, d.nu)
    add("nu_decent", la.is_integral(snu), f"s*nu = {fmt(snu)}")

    # Galois action itself
    add("galois_order", _power(gal.generator, gal.order) == la.identity(amb.dimension),
        f"e = {gal.order}")
    images = {gal.act(c) for c in rd.simple_coroots}
    root_images = {gal.act_covector(r) for r in rd.simple_roots}
    add("galois_permutes_simple_coroots",
        images == set(rd.simple_coroots) and root_images == set(rd.simple_roots))

    # (c) Galois fixedness
    add("galois_fixes_mu", gal.act(d.mu) == d.mu)
    add("galois_fixes_nu", gal.act(d.nu) == d.nu)
    inner = d.inner_form
    add("galois_fixes_omega", all(gal.act(w) == w for w in inner.omega))

    # (d) invariance of the inner product
    g = amb.inner_product
    add("form_galois_invariant",
        all(preserves_form(m, g) for m in [gal.generator, *gal.averaging]))
    add("form_weyl_invariant",
        all(preserves_form(reflection_matrix(rd, i), g) for i in range(rd.rank)))

    # relative data of J
    dual_ok = all(
        la.dot(w, b) == (1 if i == j else 0)
        for i, w in enumerate(inner.omega)
        for j, b in enumerate(inner.relative_simple_roots)
    )
    add("omega_dual_basis", dual_ok)
    add("omega_dominant", all(is_dominant(rd, w) for w in inner.omega))

    # (e) non-emptiness
    mu_bar = average_mu(d.mu, gal)
    diff = la.sub(mu_bar, d.nu)
    coeffs = coroot_coefficients(rd, diff)
    if coeffs is None:
        detail = (f"central projections differ: mu_bar -> {fmt(rd.central_projection(mu_bar))}, "
                  f"nu -> {fmt(rd.central_projection(d.nu))}")
    else:
        detail = f"mu_bar - nu = {fmt(coeffs)} in simple coroots"
    add(NONEMPTY, dominance_leq(rd, d.nu, mu_bar), detail)

    lattice = coeffs is not None and la.is_integral(diff)
    info = (Check("mu_bar - nu in X_*(T_der)", lattice,
                  "informational; integral-lattice reading"),)
    return ValidationReport(tuple(checks), info)


def require_valid(d: PeriodDatum) -> ValidationReport:
    report = validate(d)
    if not report.ok:
        raise ValidationError(report)
    return report


# -- builtin inner forms ---------------------------------------------------------


def builtin_J_split(rd: RootDatum, galois: GaloisAction | None = None) -> InnerFormDatum:
    """J = G split (b = 1): absolute simple roots and fundamental coweights."""
    if galois is not None and not galois.is_trivial:
        raise DatumError("split inner form needs a trivial Galois action")
    omega = dual_basis_coweights(rd.simple_roots, rd.ambient)
    return InnerFormDatum(rd.root_labels, rd.simple_roots, omega, len(rd.central_directions))


def builtin_J_quasi_split(rd: RootDatum, galois: GaloisAction) -> InnerFormDatum:
    """J = G quasi-split: relative roots are Galois-orbit averages of simple roots."""
    if galois.is_trivial:
        return builtin_J_split(rd)
    labels, rel = [], []
    done: set[int] = set()
    for i, r in enumerate(rd.simple_roots):
        if i in done:
            continue
        orbit, c = [], r
        while True:
            k = rd.simple_roots.index(c)
            if k in orbit:
                break
            orbit.append(k)
            c = galois.act_covector(c)
        done.update(orbit)
        orbit.sort()
        avg = la.zero(rd.ambient.dimension)
        for k in orbit:
            avg = la.add(avg, rd.simple_roots[k])
        rel.append(la.scale(Fraction(1, len(orbit)), avg))
        labels.append("+".join(rd.root_labels[k] for k in orbit))
    omega = dual_basis_coweights(rel, rd.ambient)
    # split rank of the centre = dim of Galois-fixed central directions
    n = rd.ambient.dimension
    moved = [la.sub(row, e) for row, e in zip(galois.generator, la.identity(n))]
    fixed = la.nullspace(moved + list(rd.simple_roots), n)
    return InnerFormDatum(tuple(labels), tuple(rel), omega, len(fixed))


def builtin_J_gl_basic(n: int, k: int) -> tuple[SlopeDatum, InnerFormDatum]:
    """Basic slope k/n on GL_n; J is GL_m over a division algebra of invariant k'/n'."""
    if n <= 0:
        raise DatumError("n must be positive")
    g = gcd(k, n)
    n1 = n // g
    m = n // n1
    nu = tuple(Fraction(k, n) for _ in range(n))
    roots, omega = [], []
    for j in range(1, m):
        beta = [Fraction(0)] * n
        for i in range((j - 1) * n1, j * n1):
            beta[i] += Fraction(1, n1)
        for i in range(j * n1, (j + 1) * n1):
            beta[i] -= Fraction(1, n1)
        roots.append(tuple(beta))
        c = Fraction(j * n1, n)
        omega.append(tuple((Fraction(1) if i < j * n1 else Fraction(0)) - c for i in range(n)))
    labels = tuple(f"a{j}" for j in range(1, m))
    return SlopeDatum(nu, n1), InnerFormDatum(labels, tuple(roots), tuple(omega), 1)


def gl_period_datum(n: int, mu: Sequence[int], k: int) -> PeriodDatum:
    """GL_n with basic slope k/n, its inner form, and trivial Galois action."""
    rd = gl_datum(n)
    slope, inner = builtin_J_gl_basic(n, k)
    return PeriodDatum(rd, GaloisAction.trivial(n), CocharacterClass(la.vec(mu)), slope, inner)
