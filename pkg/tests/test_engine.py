from fractions import Fraction as F
from itertools import permutations

import pytest

from perdomcoh import engine
from perdomcoh import linalg as la
from perdomcoh.datum import GaloisAction, ValidationError, builtin_J_split, gl_period_datum, permutation_matrix
from perdomcoh.kgroup import rep_symbol
from perdomcoh.roots import enumerate_weyl, gl_datum, product_datum

from conftest import gl_b1, projective_mu
from oracles import oracle_summands

HALF = F(1, 2)


def words(orbits):
    return [o.rep for o in orbits]


def drinfeld_oracle(n):
    delta = [f"a{j}" for j in range(1, n)]
    # omega_j = (1,..,1,0,..,0) - j/n (1,..,1), j ones
    omegas = [tuple(F(int(i < j)) - F(j, n) for i in range(n)) for j in range(1, n)]
    return oracle_summands((n,), projective_mu(n), (0,) * n, tuple(range(n)), delta, omegas)


class TestKostant:
    def test_gl2(self):
        ks = engine.kostant_representatives(enumerate_weyl(gl_datum(2)), la.vec([1, 0]))
        assert [w.word_str for w in ks] == ["e", "s1"]
        assert ks.lengths == (0, 1)

    def test_gl3_against_permutations(self):
        mu = (1, 0, 0)
        # oracle: minimal number of inversions per distinct rearrangement of mu
        best = {}
        for p in permutations(range(3)):
            image = tuple(mu[p.index(i)] for i in range(3))
            inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
            best[image] = min(best.get(image, 9), inv)
        ks = engine.kostant_representatives(enumerate_weyl(gl_datum(3)), la.vec(mu))
        assert [w.word_str for w in ks] == ["e", "s1", "s2s1"]
        assert sorted(ks.lengths) == sorted(best.values()) == [0, 1, 2]
        assert len(ks.stabilizer) == 2

    def test_central_mu(self):
        ks = engine.kostant_representatives(enumerate_weyl(gl_datum(3)), la.vec([1, 1, 1]))
        assert [w.word_str for w in ks] == ["e"]


class TestOrbits:
    def test_trivial_action_gives_singletons(self):
        ks = engine.kostant_representatives(enumerate_weyl(gl_datum(3)), la.vec([2, 1, 0]))
        orbits = engine.galois_orbits(ks, GaloisAction.trivial(3))
        assert len(orbits) == len(ks) == 6
        assert all(o.size == 1 for o in orbits)

    def test_weil_restriction_orbits(self):
        rd = product_datum(gl_datum(2), gl_datum(2))
        ks = engine.kostant_representatives(enumerate_weyl(rd), la.vec([1, 0, 1, 0]))
        orbits = engine.galois_orbits(ks, GaloisAction(permutation_matrix([2, 3, 0, 1]), 2))
        assert len(ks) == 4
        assert [sorted(w.word_str for w in o.members) for o in orbits] == [["e"], ["s1", "s2"], ["s1s2"]]
        assert [o.size for o in orbits] == [1, 2, 1]
        assert sum(o.size for o in orbits) == len(ks)


class TestOmega:
    def test_raw_pairings_gl2(self):
        # (mu, omega) = 1/2 and (s mu, omega) = -1/2 for mu = (1,0)
        rd = gl_datum(2)
        (omega,) = builtin_J_split(rd).omega
        assert la.dot(la.vec([1, 0]), omega) == HALF
        assert la.dot(la.vec([0, 1]), omega) == -HALF

    def test_gl2_b1(self):
        d = gl_b1(2, projective_mu(2))
        assert words(engine.omega_I(d, ())) == ["e"]
        assert words(engine.omega_I(d, ("a1",))) == ["e", "s1"]

    def test_raw_pairings_gl3(self):
        rd = gl_datum(3)
        om = builtin_J_split(rd).omega
        pts = [la.vec(p) for p in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
        table = [tuple(la.dot(p, w) for w in om) for p in pts]
        assert table == [(F(2, 3), F(1, 3)), (F(-1, 3), F(1, 3)), (F(-1, 3), F(-2, 3))]

    def test_gl3_b1(self):
        d = gl_b1(3, projective_mu(3))
        assert words(engine.omega_I(d, ())) == ["e"]
        assert words(engine.omega_I(d, ("a1",))) == ["e", "s1"]
        assert words(engine.omega_I(d, ("a2",))) == ["e"]
        assert words(engine.omega_I(d, ("a1", "a2"))) == ["e", "s1", "s2s1"]

    def test_not_a_subset(self):
        with pytest.raises(ValueError):
            engine.omega_I(gl_b1(2, projective_mu(2)), ("a7",))


class TestMinimalSubset:
    def test_gl3_s1(self):
        d = gl_b1(3, projective_mu(3))
        orbit = next(o for o in engine.orbits(d) if o.rep == "s1")
        assert engine.minimal_parabolic_subset(d, orbit) == ("a1",)

    def test_regular_dominant_identity(self):
        d = gl_b1(3, [1, 0, -1])
        assert engine.minimal_parabolic_subset(d, engine.orbits(d)[0]) == ()

    def test_empty_delta(self):
        d = gl_period_datum(3, [1, 0, 0], 1)
        assert all(engine.minimal_parabolic_subset(d, o) == () for o in engine.orbits(d))


class TestCohomology:
    def test_gl2(self):
        rows = [s.row() for s in engine.compute_cohomology(gl_b1(2, projective_mu(2)))]
        assert [(r["degree"], r["tate_twist"], r["steinberg_symbol"], r["galois_dim"]) for r in rows] == [
            (1, 0, "v[P_{}]", 1),
            (2, -1, "triv", 1),
        ]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_projective_space_closed_form(self, n):
        summands = engine.compute_cohomology(gl_b1(n, projective_mu(n)))
        labels = [f"a{j}" for j in range(1, n)]
        assert [(s.degree, s.tate_twist, s.parabolic_subset, s.galois_dim) for s in summands] == [
            (n - 1 + i, -i, tuple(labels[:i]), 1) for i in range(n)
        ]

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_projective_space_matches_oracle(self, n):
        got = [{k: v for k, v in s.row().items() if k != "steinberg_symbol"}
               for s in engine.compute_cohomology(gl_b1(n, projective_mu(n)))]
        assert got == drinfeld_oracle(n)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_lubin_tate(self, n):
        summands = engine.compute_cohomology(gl_period_datum(n, [1] + [0] * (n - 1), 1))
        assert [(s.degree, s.tate_twist, s.steinberg, s.galois_dim) for s in summands] == [
            (2 * i, -i, "triv", 1) for i in range(n)
        ]

    def test_invalid_datum_is_refused(self):
        with pytest.raises(ValidationError):
            engine.compute_cohomology(gl_b1(2, [1, 0]))

    def test_symbol(self):
        s = engine.compute_cohomology(gl_b1(2, projective_mu(2)))[0]
        assert str(s.symbol()) == "v[P_{}] ⊗ ind[e] (0)"


class TestStrata:
    def test_flag_gl3(self):
        d = gl_b1(3, projective_mu(3))
        assert engine.y_I_cohomology(d, d.delta).betti() == {0: 1, 2: 1, 4: 1}
        assert engine.y_I_cohomology(d, d.delta).extension

    def test_gl2_empty_subset(self):
        rep = engine.y_I_cohomology(gl_b1(2, projective_mu(2)), ()).rep
        ((deg, sym), mult), = rep.items()
        assert (deg, sym.twist, mult) == (0, 0, 1)

    def test_empty_omega_gives_zero(self):
        # mu = nu = 0: every pairing is 0, never strictly positive
        d = gl_b1(3, [0, 0, 0])
        assert engine.omega_I(d, ()) == []
        assert engine.y_I_cohomology(d, ()).rep.is_zero


class TestPages:
    def test_gl2(self):
        d = gl_b1(2, projective_mu(2))
        e1, e2 = engine.e1_page(d), engine.e2_page(d)
        assert e1.at(0, 0) == (rep_symbol("i", (), d.delta, "e", 1, 0),)
        assert e1.at(0, 2) == ()
        assert e1.entries == e2.entries

    def test_gl3(self):
        d = gl_b1(3, projective_mu(3))
        e1, e2 = engine.e1_page(d), engine.e2_page(d)
        assert [(s.kind, s.subset) for s in e1.at(0, 0)] == [("i", ("a1",)), ("i", ("a2",))]
        assert [(s.kind, s.subset) for s in e1.at(1, 0)] == [("i", ())]
        assert [(s.kind, s.subset) for s in e2.at(0, 0)] == [("i", ("a1", "a2"))]
        assert [(s.kind, s.subset) for s in e2.at(1, 0)] == [("v", ())]

    def test_empty_delta(self):
        d = gl_period_datum(3, [1, 0, 0], 1)
        assert not engine.e1_page(d) and not engine.e2_page(d)


class TestChecks:
    @pytest.mark.parametrize("d", [
        gl_b1(2, projective_mu(2)),
        gl_b1(3, projective_mu(3)),
        gl_period_datum(3, [1, 0, 0], 1),
        gl_b1(4, [2, 0, -1, -1]),
    ])
    def test_les_and_rows(self, d):
        assert engine.les_consistency(d).passed
        assert engine.row_euler_check(d).passed

    def test_les_gl2_is_the_steinberg_relation(self):
        # chi(flag) = [e] - [s1]; chi_c = -v_B + i_G(-1); chi(Y) = i_B at [e]
        d = gl_b1(2, projective_mu(2))
        flag = engine.flag_cohomology(d).euler().expand()
        dom = engine.domain_rep(d).euler().expand()
        comp = engine.y_cohomology(d).euler().expand()
        assert (flag - dom - comp).is_zero
        assert {(s.subset, m) for (_, s), m in dom if s.galois == "e"} == {((), -1), (("a1",), 1)}

    def test_empty_delta_domain_is_flag(self):
        d = gl_period_datum(4, [1, 0, 0, 0], 1)
        assert engine.y_cohomology(d).euler().is_zero
        assert engine.domain_rep(d).euler().expand() == engine.flag_cohomology(d).euler().expand()
