"""Acceptance gate: seven criteria, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s``.  Everything is exact
arithmetic; every equality is zero-tolerance.  The whole module is budgeted
to run in well under ten seconds.
"""

import contextlib
import itertools
import random
from math import comb

from conftest import data_path, enumerate_ideals
from nleib.catalog import abelian, h3, lz2, sl2, squares_on_x, v4
from nleib.cli import main as cli_main
from nleib.exactla import Field, span, subspace_sum
from nleib.ext import (
    GaloisStructure,
    central_obstruction,
    cube_1,
    cube_from_ideals,
    is_central,
    is_central_oracle,
    is_extension,
    _section_columns,
)
from nleib.homology import compare_uce, hopf_evaluate, uce_leibniz, uce_lie
from nleib.nalg import (
    AlgebraMorphism,
    Ideal,
    NaryAlgebra,
    commutator,
    daletskii,
    direct_sum,
    free_nilpotent2,
    ideal_closure,
    kernel_ideal,
    liesation,
    validate_leibniz,
    validate_lie,
)

Q = Field(0)


@contextlib.contextmanager
def verdict(number, title):
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({title}): FAIL")
        raise
    print(f"criterion {number} ({title}): PASS")


# --- 1: axiom suite + mutation test --------------------------------------

def mutations(a):
    """Every single-entry mutation of the structure constants."""
    for args, val in a.structure.items():
        for j in range(a.dim):
            mutated = dict(a.structure)
            new = list(val)
            new[j] = a.field.add(new[j], a.field.one)
            mutated[args] = tuple(new)
            yield NaryAlgebra(a.name + "#mut", a.n, a.dim, a.field, mutated)


def test_criterion_1_axiom_suite():
    with verdict(1, "axiom suite and mutation test"):
        for d in (1, 2, 3):
            assert validate_lie(abelian(d)).ok
        for a in (h3(), sl2(), v4()):
            assert validate_lie(a).ok
        assert validate_leibniz(lz2()).ok
        rep = validate_lie(lz2())
        assert not rep.ok and rep.counterexample[:2] == ("skew symmetry", (1, 1))
        assert not validate_leibniz(squares_on_x()).ok
        for a in (h3(), sl2(), v4()):
            for mutant in mutations(a):
                assert not validate_lie(mutant).ok, \
                    f"undetected mutation in {a.name}"


# --- 2: oracle equivalence on 1-cubes -------------------------------------

def test_criterion_2_oracle_equivalence_1cubes():
    with verdict(2, "1-fold centrality oracle equivalence"):
        cases = 0
        for a in (h3(), sl2(), lz2(), v4(), abelian(3)):
            is_lie = validate_lie(a).ok
            for ideal in enumerate_ideals(a):
                c = cube_from_ideals(a, [ideal])
                for g in GaloisStructure:
                    if g is GaloisStructure.LIE_OVER_VECT and not is_lie:
                        continue
                    assert is_central(c, g) == is_central_oracle(c, g), \
                        (a.name, ideal.space.basis, g)
                    cases += 1
        assert cases >= 15, cases


# --- 3: oracle equivalence on 2-cubes -------------------------------------

def test_criterion_3_oracle_equivalence_2cubes():
    with verdict(3, "2-fold centrality oracle equivalence"):
        structures = (GaloisStructure.LB_OVER_VECT, GaloisStructure.LB_OVER_LIE)
        for a in (h3(), direct_sum(lz2(), lz2(), name="lz2+lz2")):
            ideals = enumerate_ideals(a, max_generators=1)
            for i, j in itertools.product(ideals, ideals):
                c = cube_from_ideals(a, [i, j])
                for g in structures:
                    assert is_central(c, g) == is_central_oracle(c, g), \
                        (a.name, i.space.basis, j.space.basis, g)
        # the h3 square: an extension, not 2-central, obstruction = span{e3}
        a = h3()
        sq = cube_from_ideals(a, [
            ideal_closure(a, span(Q, [(Q.zero, Q.one, Q.zero),
                                      (Q.zero, Q.zero, Q.one)], 3)),
            ideal_closure(a, span(Q, [(Q.one, Q.zero, Q.zero),
                                      (Q.zero, Q.zero, Q.one)], 3)),
        ])
        assert is_extension(sq).ok
        obs = central_obstruction(sq, GaloisStructure.LB_OVER_VECT)
        assert obs.ideal.space == span(Q, [(Q.zero, Q.zero, Q.one)], 3)
        assert not is_central(sq, GaloisStructure.LB_OVER_VECT)


# --- 4: Hopf values on free-nilpotent presentations -----------------------

def truncated_free_leibniz(d):
    """Degree-<=3 truncation of the genuine free Leibniz algebra on d
    generators: basis = words of length 1..3, [x, v] = x*v for a generator
    v, [x, w*v] = [x,w]*v - [x*v, w], words of length > 3 truncated to 0."""
    words = [(i,) for i in range(1, d + 1)]
    words += [t for t in itertools.product(range(1, d + 1), repeat=2)]
    words += [t for t in itertools.product(range(1, d + 1), repeat=3)]
    pos = {w: k for k, w in enumerate(words)}
    dim = len(words)
    structure = {}

    def unit(w):
        v = [Q.zero] * dim
        v[pos[w]] = Q.one
        return v

    for wi, w in enumerate(words, start=1):
        for xi, x in enumerate(words, start=1):
            if len(x) == 1:
                if len(w) <= 2:
                    structure[(wi, xi)] = tuple(unit(w + x))
            elif len(x) == 2 and len(w) == 1:
                u, v = x
                val = unit(w + (u, v))
                sub = unit(w + (v, u))
                structure[(wi, xi)] = tuple(Q.sub(a, b) for a, b in zip(val, sub))
    t = NaryAlgebra(f"freeLb3({d})", 2, dim, Q, structure)
    target = abelian(d)
    cols = [Q.unit_vec(d, i) for i in range(d)] + [Q.zero_vec(d)] * (dim - d)
    from nleib.exactla import from_columns
    eps = AlgebraMorphism(t, target, from_columns(Q, d, cols))
    return t, eps


def test_criterion_4_hopf_abelian_values():
    with verdict(4, "Hopf formula on abelian presentations"):
        for n in (2, 3):
            for d in (1, 2, 3):
                f, eps = free_nilpotent2(n, d, "leibniz")
                c = cube_1(eps)
                assert hopf_evaluate(c, GaloisStructure.LB_OVER_VECT).h_dim == d ** n
                assert hopf_evaluate(c, GaloisStructure.LB_OVER_LIE).h_dim \
                    == d ** n - comb(d, n)
                fl, epsl = free_nilpotent2(n, d, "lie")
                assert hopf_evaluate(cube_1(epsl),
                                     GaloisStructure.LIE_OVER_VECT).h_dim == comb(d, n)
        # independent oracle for n = 2: the degree-<=3 truncation of the
        # genuine free Leibniz algebra gives the same three values
        for d in (1, 2, 3):
            t, eps = truncated_free_leibniz(d)
            assert validate_leibniz(t).ok
            c = cube_1(eps)
            assert hopf_evaluate(c, GaloisStructure.LB_OVER_VECT).h_dim == d ** 2
            assert hopf_evaluate(c, GaloisStructure.LB_OVER_LIE).h_dim \
                == d ** 2 - comb(d, 2)
            lie_t, proj = liesation(t)
            from nleib.exactla import from_columns
            cols = [eps.apply(rep) for rep in _section_columns(proj)]
            eps_lie = AlgebraMorphism(lie_t, abelian(d), from_columns(Q, d, cols))
            assert hopf_evaluate(cube_1(eps_lie),
                                 GaloisStructure.LIE_OVER_VECT).h_dim == comb(d, 2)


# --- 5: universal central extensions --------------------------------------

def test_criterion_5_uce_suite():
    with verdict(5, "universal central extensions"):
        # frozen oracle values, computed independently before this module
        res = uce_lie(sl2())
        assert (res.U.dim, res.kernel.rank) == (3, 0)
        assert res.u.is_surjective() and res.u.map.rank() == 3  # isomorphism
        res = uce_leibniz(sl2())
        assert (res.U.dim, res.kernel.rank) == (3, 0)
        res = uce_lie(v4())
        assert (res.U.dim, res.kernel.rank) == (4, 0)
        for cmp in (compare_uce(sl2()), compare_uce(v4())):
            assert cmp.checks["surjective_and_compatible"]
            assert cmp.checks["dimension_exactness"]
            assert cmp.checks["kernel_is_relative_commutator"]
            assert cmp.uce_lb.kernel.rank == cmp.uce_lie.kernel.rank + cmp.ker_f_dim


# --- 6: structural properties ---------------------------------------------

def covers_obstruction(c, g):
    """Obstruction summed over arbitrary (possibly overlapping) covers."""
    from nleib.exactla import subspace_intersect
    a = c.domain
    kernels = {i: kernel_ideal(c.arrows[((), (i,))]).space
               for i in range(1, c.m + 1)}
    slots = list(range(a.n))
    nonempty = [s for k in range(1, a.n + 1)
                for s in itertools.combinations(slots, k)]
    total = a.zero_ideal().space
    for choice in itertools.product(nonempty, repeat=c.m):
        slot_spaces = [None] * a.n
        for i, subset in enumerate(choice, start=1):
            for s in subset:
                ks = kernels[i]
                slot_spaces[s] = ks if slot_spaces[s] is None \
                    else subspace_intersect(slot_spaces[s], ks)
        slot_ideals = [a.full() if sp is None else Ideal(a, sp, _checked=True)
                       for sp in slot_spaces]
        term = commutator(a, slot_ideals, g.commutator_variant)
        total = subspace_sum(total, term.space)
    return total


def test_criterion_6_structural_properties():
    with verdict(6, "structural properties"):
        rng = random.Random(20240811)
        corpus = [h3(), sl2(), lz2(), v4(), abelian(3)]
        # relative subseteq leibniz on 100 random ideal tuples
        for _ in range(100):
            a = rng.choice(corpus)
            ideals = []
            for _ in range(a.n):
                vec = tuple(Q.of(rng.randint(-2, 2)) for _ in range(a.dim))
                ideals.append(ideal_closure(a, span(Q, [vec], a.dim)))
            rel = commutator(a, ideals, "relative")
            lb = commutator(a, ideals, "leibniz")
            assert rel.space.is_subspace_of(lb.space)
        # Vect-central implies Lie-relative-central on corpus extensions
        cubes = []
        for a in (h3(), lz2(), sl2()):
            for ideal in enumerate_ideals(a, max_generators=1):
                cubes.append(cube_from_ideals(a, [ideal]))
        for c in cubes:
            if is_central(c, GaloisStructure.LB_OVER_VECT):
                assert is_central(c, GaloisStructure.LB_OVER_LIE)
        # denominator subseteq numerator in every HopfReport
        f, eps = free_nilpotent2(2, 2, "leibniz")
        for g in (GaloisStructure.LB_OVER_VECT, GaloisStructure.LB_OVER_LIE):
            rep = hopf_evaluate(cube_1(eps), g)
            assert rep.denominator.is_subspace_of(rep.numerator)
            assert rep.h_dim == rep.numerator.rank - rep.denominator.rank
        # arbitrary covers give the same obstruction as disjoint ones
        a = h3()
        sq = cube_from_ideals(a, [
            ideal_closure(a, span(Q, [(Q.zero, Q.one, Q.zero),
                                      (Q.zero, Q.zero, Q.one)], 3)),
            ideal_closure(a, span(Q, [(Q.one, Q.zero, Q.zero),
                                      (Q.zero, Q.zero, Q.one)], 3)),
        ])
        e23 = ideal_closure(a, span(Q, [(Q.zero, Q.one, Q.zero),
                                        (Q.zero, Q.zero, Q.one)], 3))
        v = v4()
        v_cube = cube_from_ideals(v, [v.full()])
        test_cubes = [cube_from_ideals(a, [e23]), sq, v_cube]
        for c in test_cubes:
            for g in GaloisStructure:
                assert covers_obstruction(c, g) == central_obstruction(c, g).ideal.space
        # liesation lands in Lie; daletskii(V4) is Leibniz
        for a in (lz2(), direct_sum(lz2(), h3())):
            out, _ = liesation(a)
            assert validate_lie(out).ok
        assert validate_leibniz(daletskii(v4())).ok


# --- 7: CLI round trips and exit codes ------------------------------------

def test_criterion_7_cli(capsys):
    with verdict(7, "CLI determinism and exit codes"):
        commands = [
            ("check", data_path("h3.json"), "--lie"),
            ("check", data_path("lz2.json"), "--lie", "--json"),
            ("commutator", data_path("sl2.json"), "--variant", "leibniz"),
            ("abelianize", data_path("h3.json"), "--json"),
            ("liesate", data_path("lz2.json")),
            ("daletskii", data_path("h3.json")),
            ("extension", data_path("cube_h3_square.json")),
            ("central", data_path("cube_h3_square.json"),
             "--galois", "lie-vect", "--oracle"),
            ("hopf", data_path("cube_h3_e3.json"), "--galois", "lb-vect", "--json"),
            ("uce", data_path("sl2.json"), "--variant", "lie"),
            ("h2", data_path("sl2.json"), "--variant", "leibniz"),
            ("compare-uce", data_path("sl2.json")),
        ]
        for argv in commands:
            code1 = cli_main(list(argv))
            out1 = capsys.readouterr()
            code2 = cli_main(list(argv))
            out2 = capsys.readouterr()
            assert code1 == code2 == 0, argv
            assert out1.out == out2.out, argv
        # spot-check one documented answer
        cli_main(["central", data_path("cube_h3_square.json"), "--galois", "lie-vect"])
        out = capsys.readouterr().out
        assert out == "central: false; obstruction dim 1; basis: e3\n"
        # exit codes: semantic failure and parse failure
        assert cli_main(["uce", data_path("h3.json"), "--variant", "leibniz"]) == 1
        assert "not Vect-perfect" in capsys.readouterr().err
        assert cli_main(["check", data_path("does_not_exist.json")]) == 2
        capsys.readouterr()
