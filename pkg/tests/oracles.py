"""Independent oracle for products of GL_n with coordinate-permuting Frobenius.

Works with permutations only: no matrices, no root datum, no engine code.
Running this file regenerates ``tests/fixtures/weil_restriction_gl2_oracle.json``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations, product
from pathlib import Path

FIXTURE = Path(__file__).parent / "fixtures" / "weil_restriction_gl2_oracle.json"


def blocks_of(sizes):
    out, start = [], 0
    for n in sizes:
        out.append(list(range(start, start + n)))
        start += n
    return out


def simple_swaps(sizes):
    """Adjacent transpositions, numbered 1.. across the blocks in order."""
    return [(b[j], b[j + 1]) for b in blocks_of(sizes) for j in range(len(b) - 1)]


def block_permutations(sizes):
    n = sum(sizes)
    per_block = [list(permutations(b)) for b in blocks_of(sizes)]
    for choice in product(*per_block):
        sigma = [0] * n
        for block, image in zip(blocks_of(sizes), choice):
            for i, j in zip(block, image):
                sigma[i] = j
        yield tuple(sigma)


def act(sigma, v):
    """Coordinate i of v moves to position sigma[i]."""
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[sigma[i]] = x
    return tuple(out)


def compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def length(sigma):
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def transposition(n, i, j):
    t = list(range(n))
    t[i], t[j] = j, i
    return tuple(t)


def reduced_word(sigma, sizes):
    """Lexicographically smallest reduced word, greedily peeling left descents."""
    n = len(sigma)
    swaps = [transposition(n, i, j) for i, j in simple_swaps(sizes)]
    word, cur = [], sigma
    while length(cur) > 0:
        for k, s in enumerate(swaps):
            nxt = compose(s, cur)
            if length(nxt) < length(cur):
                word.append(k + 1)
                cur = nxt
                break
    if not word:
        return "e"
    sep = "." if any(k >= 10 for k in word) else ""
    return sep.join(f"s{k}" for k in word)


def pair(u, v):
    return sum(Fraction(a) * Fraction(b) for a, b in zip(u, v))


def oracle_summands(sizes, mu, nu, frobenius, delta, omegas):
    """Rows (degree, twist, subset, rep word, orbit size, length) computed by brute force.

    ``frobenius`` is a coordinate permutation; ``omegas`` are the coweights
    dual to the relative simple roots in ``delta`` under the standard form.
    """
    group = list(block_permutations(sizes))
    # minimal element in each coset sigma * Stab(mu)
    best = {}
    for s in group:
        pt = act(s, mu)
        if pt not in best or length(s) < length(best[pt]):
            best[pt] = s
    reps = set(best.values())
    f, f_inv = tuple(frobenius), inverse(frobenius)
    seen, rows = set(), []
    for s in sorted(reps, key=lambda x: (length(x), reduced_word(x, sizes))):
        if s in seen:
            continue
        orbit, cur = [], s
        while cur not in orbit:
            orbit.append(cur)
            cur = compose(f, compose(cur, f_inv))
        seen.update(orbit)
        rep = min(orbit, key=lambda x: (length(x), reduced_word(x, sizes)))
        subset = [a for a, w in zip(delta, omegas) if pair(act(rep, mu), w) <= pair(nu, w)]
        l = length(rep)
        rows.append({
            "degree": 2 * l + len(delta) - len(subset),
            "tate_twist": -l,
            "parabolic_subset": subset,
            "galois_orbit_rep": reduced_word(rep, sizes),
            "galois_dim": len(orbit),
            "orbit_length": l,
        })
    rows.sort(key=lambda r: (r["degree"], r["tate_twist"], r["orbit_length"], r["galois_orbit_rep"]))
    return rows


def weil_restriction_rows():
    half = Fraction(1, 2)
    return oracle_summands(
        sizes=(2, 2),
        mu=(1, 0, 1, 0),
        nu=(half,) * 4,
        frobenius=(2, 3, 0, 1),
        delta=["a1+a2"],
        omegas=[(half, -half, half, -half)],
    )


if __name__ == "__main__":
    FIXTURE.parent.mkdir(exist_ok=True)
    FIXTURE.write_text(json.dumps(weil_restriction_rows(), indent=2, sort_keys=True) + "\n")
    print(FIXTURE.read_text())
