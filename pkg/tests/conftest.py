from __future__ import annotations

import sys
from fractions import Fraction
from math import lcm
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from perdomcoh import linalg as la  # noqa: E402
from perdomcoh.datum import (  # noqa: E402
    CocharacterClass,
    GaloisAction,
    PeriodDatum,
    SlopeDatum,
    builtin_J_quasi_split,
    builtin_J_split,
)
from perdomcoh.roots import gl_datum  # noqa: E402


def split_datum(rd, mu, galois=None):
    """b basic with nu the central part of mu; J quasi-split (split if galois is trivial)."""
    n = rd.ambient.dimension
    galois = galois or GaloisAction.trivial(n)
    mu = la.vec(mu)
    nu = rd.central_projection(mu)
    s = lcm(*(Fraction(x).denominator for x in nu)) if nu else 1
    inner = builtin_J_split(rd) if galois.is_trivial else builtin_J_quasi_split(rd, galois)
    return PeriodDatum(rd, galois, CocharacterClass(mu), SlopeDatum(nu, s), inner)


def gl_b1(n, mu):
    """GL_n with b = 1 (nu = 0) and split J; mu must have coordinate sum 0."""
    rd = gl_datum(n)
    return PeriodDatum(rd, GaloisAction.trivial(n), CocharacterClass(la.vec(mu)),
                       SlopeDatum(la.zero(n), 1), builtin_J_split(rd))


def projective_mu(n):
    """The central-free cocharacter whose flag variety is P^(n-1)."""
    return [n - 1] + [-1] * (n - 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])


@pytest.fixture
def F():
    return Fraction
