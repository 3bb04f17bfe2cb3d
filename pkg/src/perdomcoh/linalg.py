"""Exact rational linear algebra on tuples of Fractions.

Vectors are ``tuple[Fraction, ...]`` and matrices are tuples of row tuples.
Solving and inversion are delegated to sympy's rational matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def frac(x) -> Fraction:
    """Coerce ints, Fractions, sympy Rationals and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zero(n: int) -> Vector:
    return (Fraction(0),) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    # Weyl matrices are mostly zeros; skipping them keeps Fraction work down
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def apply(m: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def bilinear(g: Matrix, u: Vector, v: Vector) -> Fraction:
    return dot(u, apply(g, v))


def _to_sympy(m: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


def _from_sympy(m: sympy.Matrix) -> Matrix:
    return tuple(tuple(frac(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def det(m: Matrix) -> Fraction:
    return frac(_to_sympy(m).det())


def inverse(m: Matrix) -> Matrix:
    sm = _to_sympy(m)
    if sm.det() == 0:
        raise ValueError("matrix is singular")
    return _from_sympy(sm.inv())


def rank(rows: Sequence[Vector]) -> int:
    if not rows:
        return 0
    return _to_sympy(rows).rank()


def solve_combination(basis: Sequence[Vector], target: Vector) -> Vector | None:
    """Coefficients ``c`` with ``sum c_i basis[i] == target``, or None.

    ``basis`` must be linearly independent; the solution is then unique.
    """
    if not basis:
        return () if all(x == 0 for x in target) else None
    a = _to_sympy(basis).T
    b = _to_sympy([target]).T
    try:
        sol, params = a.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        raise ValueError("basis is linearly dependent")
    return tuple(frac(sol[i, 0]) for i in range(sol.rows))


def nullspace(rows: Sequence[Vector], n: int) -> list[Vector]:
    """Basis of ``{x in Q^n : row . x = 0 for every row}``."""
    if not rows:
        return list(identity(n))
    return [tuple(frac(x) for x in v) for v in _to_sympy(rows).nullspace()]


def is_integral(v: Iterable[Fraction]) -> bool:
    return all(x.denominator == 1 for x in v)


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Iterable[Fraction]) -> str:
    return "(" + ",".join(fmt(x) for x in v) + ")"
