"""Property suite run by ``perdomcoh selftest`` and the test-suite.

The brute-force parts deliberately avoid the engine's shortcuts: Kostant
representatives come from multiplying out whole cosets, orbits from the
full conjugation closure, Omega_I and I_[w] from scanning every subset of
Delta against every orbit member.
"""

from __future__ import annotations

from itertools import combinations

from . import engine
from . import linalg as la
from .datum import PeriodDatum
from .kgroup import CheckReport, expand_i, expand_v, ext_dimension
from .roots import DEFAULT_CAP, inversion_count, positive_coroots, preserves_form

BRUTE_FORCE_LIMIT = 120
LENGTH_CHECK_LIMIT = 10**4


def _report(name, failures, ok_text):
    return CheckReport(name, not failures, tuple(failures) or (ok_text,))


def _all_subsets(delta):
    return [s for k in range(len(delta) + 1) for s in combinations(tuple(delta), k)]


def check_lengths(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> list[CheckReport]:
    rd = datum.root_datum
    weyl = engine.weyl_group(datum, cap)
    out = []
    if len(weyl) <= LENGTH_CHECK_LIMIT:
        pos = positive_coroots(rd)
        bad = [f"{w.word_str}: length {w.length} != {inversion_count(rd, w, pos)} inversions"
               for w in weyl if inversion_count(rd, w, pos) != w.length]
        bad += [f"s{i + 1} has length {w.length}" for i, w in enumerate(weyl[1:1 + rd.rank])
                if w.length != 1]
        out.append(_report("length_axiom", bad, f"l(w) = #inversions for all {len(weyl)} elements"))
    poly = weyl.length_polynomial()
    out.append(_report("length_palindromic", [] if poly == poly[::-1] else [f"{poly}"],
                       f"length polynomial {poly} is palindromic"))
    g = rd.ambient.inner_product
    bad = [w.word_str for w in weyl if not preserves_form(w.matrix, g)]
    out.append(_report("form_weyl_invariant", bad, "(wu, wv) = (u, v) for all w"))
    return out


def check_galois(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> list[CheckReport]:
    gal = datum.galois
    g, g_inv = gal.generator, gal.inverse_generator()
    weyl = engine.weyl_group(datum, cap)
    bad_len, bad_mu = [], []
    for w in weyl:
        c = weyl.find(la.matmul(g, la.matmul(w.matrix, g_inv)))
        if c.length != w.length:
            bad_len.append(f"{w.word_str} -> {c.word_str}")
        if c(datum.mu) != gal.act(w(datum.mu)):
            bad_mu.append(w.word_str)
    return [
        _report("galois_preserves_length", bad_len, "l(g w g^-1) = l(w)"),
        _report("galois_conjugate_on_mu", bad_mu, "(g w g^-1) mu = g (w mu)"),
    ]


def brute_force_kostant(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> set:
    """Matrices of minimal-length coset representatives, by multiplying cosets out."""
    weyl = engine.weyl_group(datum, cap)
    stab = [u for u in weyl if u(datum.mu) == datum.mu]
    reps = set()
    for w in weyl:
        coset = [weyl.find(la.matmul(w.matrix, u.matrix)) for u in stab]
        low = min(x.length for x in coset)
        minimal = [x for x in coset if x.length == low]
        if len(minimal) != 1:
            raise AssertionError(f"coset of {w.word_str} has {len(minimal)} minimal elements")
        reps.add(minimal[0].matrix)
    return reps


def brute_force_orbits(datum: PeriodDatum, reps: set) -> set[frozenset]:
    conj = [(g, la.inverse(g)) for g in datum.galois.powers()]
    return {frozenset(la.matmul(g, la.matmul(m, gi)) for g, gi in conj) for m in reps}


def _pair_exceeds(datum, m, label):
    amb = datum.root_datum.ambient
    omega = datum.inner_form.omega_of(label)
    return amb.inner(la.apply(m, datum.mu), omega) > amb.inner(datum.nu, omega)


def brute_force_excess(datum: PeriodDatum, matrices) -> dict:
    """matrix -> set of labels a with (w mu, omega_a) > (nu, omega_a)."""
    return {m: {a for a in datum.delta if _pair_exceeds(datum, m, a)} for m in matrices}


def brute_force_omega(datum: PeriodDatum, orbit: frozenset, subset, excess: dict | None = None) -> bool:
    excess = excess or brute_force_excess(datum, orbit)
    needed = set(datum.delta) - set(subset)
    return all(needed <= excess[m] for m in orbit)


def check_oracle(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> list[CheckReport]:
    weyl = engine.weyl_group(datum, cap)
    if len(weyl) > BRUTE_FORCE_LIMIT:
        return [CheckReport("oracle", True, (f"skipped: |W| = {len(weyl)} > {BRUTE_FORCE_LIMIT}",))]
    kset = engine.kostant_set(datum, cap)
    reps = brute_force_kostant(datum, cap)
    out = [_report("oracle_kostant",
                   [] if reps == {w.matrix for w in kset} else ["Kostant sets differ"],
                   f"|W^mu| = {len(reps)} agrees")]

    orbits = engine.orbits(datum, cap)
    engine_part = {frozenset(w.matrix for w in o.members) for o in orbits}
    brute_part = brute_force_orbits(datum, reps)
    out.append(_report("oracle_orbits", [] if engine_part == brute_part else ["orbit partitions differ"],
                       f"{len(brute_part)} orbits agree"))

    delta = datum.delta
    excess = brute_force_excess(datum, reps)
    bad_omega = []
    for subset in _all_subsets(delta):
        engine_set = {frozenset(w.matrix for w in o.members) for o in engine.omega_I(datum, subset, cap)}
        brute_set = {o for o in brute_part if brute_force_omega(datum, o, subset, excess)}
        if engine_set != brute_set:
            bad_omega.append(f"Omega_{{{','.join(subset)}}} differs")
    out.append(_report("oracle_omega", bad_omega, f"Omega_I agrees for all {2 ** len(delta)} subsets"))

    bad_i = []
    by_members = {frozenset(w.matrix for w in o.members): o for o in orbits}
    summands = {s.orbit_rep: s for s in engine.compute_cohomology(datum, cap)}
    for members, o in by_members.items():
        containing = [set(s) for s in _all_subsets(delta) if brute_force_omega(datum, members, s, excess)]
        smallest = min(containing, key=len)
        if any(not smallest <= s for s in containing):
            bad_i.append(f"[{o.rep}]: no minimum")
        elif smallest != set(summands[o.rep].parabolic_subset):
            bad_i.append(f"[{o.rep}]: brute force {sorted(smallest)}")
    out.append(_report("oracle_minimal_subset", bad_i, "I_[w] agrees for every orbit"))
    return out


def check_engine_properties(datum: PeriodDatum, cap: int = DEFAULT_CAP) -> list[CheckReport]:
    delta = datum.delta
    orbits = engine.orbits(datum, cap)
    summands = engine.compute_cohomology(datum, cap)
    out = []

    omegas = {s: {o.rep for o in engine.omega_I(datum, s, cap)} for s in _all_subsets(delta)}
    bad = [f"{list(a)} <= {list(b)}" for a in omegas for b in omegas
           if set(a) <= set(b) and not omegas[a] <= omegas[b]]
    if omegas[tuple(delta)] != {o.rep for o in orbits}:
        bad.append("Omega_Delta is not everything")
    out.append(_report("omega_monotone", bad, "I <= I' implies Omega_I <= Omega_I'"))

    top = 2 * max(w.length for w in engine.kostant_set(datum, cap))
    bad = [f"[{s.orbit_rep}] degree {s.degree}" for s in summands if not 0 <= s.degree <= top]
    if len(summands) != len(orbits) or {s.orbit_rep for s in summands} != {o.rep for o in orbits}:
        bad.append("summands do not match orbits one-to-one")
    bad += [f"[{s.orbit_rep}] twist" for s in summands
            if s.degree != -2 * s.tate_twist + s.codim]
    out.append(_report("summand_shape", bad, f"{len(summands)} summands, degrees in [0, {top}]"))

    betti = engine.y_I_cohomology(datum, delta, cap).betti()
    seq = [betti.get(d, 0) for d in range(top + 1)]
    out.append(_report("flag_palindromic", [] if seq == seq[::-1] else [str(seq)],
                       f"flag Betti numbers {seq} are palindromic"))

    size = sum(o.size for o in orbits)
    out.append(_report("orbit_sizes", [] if size == len(engine.kostant_set(datum, cap)) else [str(size)],
                       f"orbit sizes sum to |W^mu| = {size}"))
    return out


def check_kgroup(datum: PeriodDatum) -> list[CheckReport]:
    delta = datum.delta
    r = datum.inner_form.center_rank
    subsets = _all_subsets(delta)
    bad = []
    if len(delta) <= 12:
        for a in subsets:
            # v -> i -> v must be the identity on the subset lattice
            total: dict = {}
            for k, c in expand_v(a, delta).items():
                for m, e in expand_i(k, delta).items():
                    total[m] = total.get(m, 0) + c * e
            if {m: c for m, c in total.items() if c} != {a: 1}:
                bad.append(f"Moebius inversion fails at {list(a)}")
    out = [_report("moebius", bad, "expand_v and its inverse compose to the identity")]
    bad = []
    for a in subsets:
        for b in subsets:
            for i in range(len(delta) + r + 2):
                x = ext_dimension(a, b, i, r)
                if x != ext_dimension(b, a, i, r):
                    bad.append(f"asymmetric at {a},{b},{i}")
                if i > r and x:
                    bad.append(f"nonzero above r at {a},{b},{i}")
    out.append(_report("ext_properties", bad, "Ext dimensions symmetric and vanish above r"))
    return out


def run_invariants(datum: PeriodDatum, cap: int = DEFAULT_CAP,
                   include_engine_checks: bool = True) -> list[CheckReport]:
    out = [
        *check_lengths(datum, cap),
        *check_galois(datum, cap),
        *check_oracle(datum, cap),
        *check_engine_properties(datum, cap),
        *check_kgroup(datum),
    ]
    if include_engine_checks:
        out += [
            engine.les_consistency(datum, cap),
            engine.row_euler_check(datum, cap),
            engine.check_splitting(datum, cap)[0],
        ]
    return out
