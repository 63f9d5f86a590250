import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from strandalg.corpus import (
    corpus_surfaces,
    disc,
    disc_with_arc,
    double_cover_decoration,
    one_disc_decoration,
    torus_decoration,
)
from strandalg.strands import (
    Algebra,
    NotInMatchedSpan,
    brute_force_dimension,
    check_algebra,
    consum_check,
    directedness_check,
    enumerate_chords,
    matched_basis,
    opposite_algebra_map,
    opposite_check,
)
from strandalg.surface import make_surface

TORUS = torus_decoration()
DISC1 = disc_with_arc()


# ---------------------------------------------------------------------------
# chords


def test_chords_disc_with_one_arc():
    chords = enumerate_chords(DISC1)
    assert chords == {(0, 0): ((0, 1),)}


def test_chords_interleaved():
    chords = enumerate_chords(TORUS)
    sizes = {pair: len(cs) for pair, cs in chords.items()}
    assert sizes == {(0, 0): 1, (1, 1): 1, (0, 1): 3, (1, 0): 1}
    assert sum(sizes.values()) == 6


def test_chords_respect_interval_locality():
    ds = make_surface([["z", "e1", "e2", "z", "e3", "e4"]], [["e1", "e2"], ["e3", "e4"]])
    chords = enumerate_chords(ds)
    assert sum(len(cs) for cs in chords.values()) == 2


# ---------------------------------------------------------------------------
# basis


def test_basis_dimensions_interleaved():
    assert len(matched_basis(TORUS, 0)) == 1
    assert len(matched_basis(TORUS, 1)) == 8
    assert len(matched_basis(TORUS, 2)) == 7


def test_basis_block_split_k1():
    alg = Algebra.from_surface(TORUS, 1)
    sizes = {st_: len(ix) for st_, ix in alg.blocks.items()}
    assert sizes == {((0,), (0,)): 2, ((0,), (1,)): 3, ((1,), (0,)): 1, ((1,), (1,)): 2}


def test_basis_k2_split_by_bijection():
    alg = Algebra.from_surface(TORUS, 2)
    ident = [b for b in alg.basis if b.f == b.s]
    swapped = [b for b in alg.basis if b.f != b.s]
    assert (len(ident), len(swapped)) == (4, 3)


def test_k_out_of_range():
    with pytest.raises(ValueError):
        Algebra.from_surface(TORUS, 3)


def test_idempotent_count_is_n_choose_k():
    for _, ds in corpus_surfaces()[:25]:
        for k in range(ds.n_arcs + 1):
            alg = Algebra.from_surface(ds, k)
            assert len(alg.idempotents()) == comb(ds.n_arcs, k)


# ---------------------------------------------------------------------------
# expansion and contraction


def test_expand_idempotent_two_sections():
    alg = Algebra.from_surface(TORUS, 1)
    (i,) = alg.idempotent([0]).support
    assert alg._expansions[i] == frozenset({((0, 0),), ((2, 2),)})


def test_expand_chord_pair_single_diagram():
    alg = Algebra.from_surface(TORUS, 2)
    (i,) = alg.from_descriptor({"chords": [[0, 2], [1, 3]]}).support
    (d,) = alg._expansions[i]
    assert d == ((0, 2), (1, 3))
    assert alg.inversions(d) == 0


def test_expand_marker_with_chord_inversions():
    alg = Algebra.from_surface(TORUS, 2)
    (i,) = alg.from_descriptor({"chords": [[1, 3]], "markers": [0]}).support
    exp = alg._expansions[i]
    assert exp == frozenset({((0, 0), (1, 3)), ((1, 3), (2, 2))})
    assert sorted(alg.inversions(d) for d in exp) == [0, 1]


def test_expansion_size_is_two_to_the_marked():
    for k in (0, 1, 2):
        alg = Algebra.from_surface(TORUS, k)
        for i, b in enumerate(alg.basis):
            assert len(alg._expansions[i]) == 2 ** len(b.marked)


def test_contract_round_trips_every_basis_element():
    for k in (0, 1, 2):
        alg = Algebra.from_surface(TORUS, k)
        for i in range(alg.dim):
            assert alg.contract(alg._expansions[i]) == frozenset([i])


def test_contract_empty_sum_is_zero():
    alg = Algebra.from_surface(TORUS, 1)
    assert alg.contract(frozenset()) == frozenset()


def test_contract_half_expansion_fails():
    alg = Algebra.from_surface(TORUS, 2)
    with pytest.raises(NotInMatchedSpan):
        alg.contract(frozenset({((0, 0), (1, 3))}))  # partner with marker at 2 missing


# ---------------------------------------------------------------------------
# differential and product (frozen examples)


def test_diff_of_idempotents_vanishes():
    for k in (0, 1, 2):
        alg = Algebra.from_surface(TORUS, k)
        for e in alg.idempotents():
            assert e.diff().is_zero()


def test_diff_crossing_resolution():
    alg = Algebra.from_surface(TORUS, 2)
    crossed = alg.from_descriptor({"chords": [[0, 3], [1, 2]]})
    straight = alg.from_descriptor({"chords": [[0, 2], [1, 3]]})
    assert crossed.diff() == straight


def test_diff_marker_term():
    alg = Algebra.from_surface(TORUS, 2)
    e = alg.from_descriptor({"chords": [[1, 3]], "markers": [0]})
    expect = alg.from_descriptor({"chords": [[2, 3], [1, 2]]})
    assert e.diff() == expect


def test_idempotents_act_as_units():
    alg = Algebra.from_surface(TORUS, 1)
    for i in range(alg.dim):
        b = alg.element([i])
        src = alg.idempotent(alg.basis[i].s)
        tgt = alg.idempotent(alg.basis[i].t)
        other = alg.idempotent([1 - alg.basis[i].s[0]])
        assert src * b == b
        assert b * tgt == b
        assert (other * b).is_zero() or other.support == src.support


def test_mul_concatenation():
    alg = Algebra.from_surface(TORUS, 1)
    c01 = alg.from_descriptor({"chords": [[0, 1]]})
    c12 = alg.from_descriptor({"chords": [[1, 2]]})
    assert c01 * c12 == alg.from_descriptor({"chords": [[0, 2]]})
    assert (c01 * c01).is_zero()


def test_algebra_depends_only_on_intervals_and_matching():
    """Rebuilding from the interval data alone gives identical structure
    constants; face analysis never enters."""
    for _, ds in corpus_surfaces()[:15]:
        for k in range(ds.n_arcs + 1):
            a = Algebra.from_surface(ds, k)
            arc_of = {t: i for i, pair in enumerate(ds.arcs) for t in pair}
            b = Algebra(
                tuple(tuple(arc_of[t] for t in iv) for iv in ds.intervals()),
                k,
                n_arcs=ds.n_arcs,
            )
            assert a.basis == b.basis
            assert all(a.diff_basis(i) == b.diff_basis(i) for i in range(a.dim))
            assert all(
                a.mul_basis(i, j) == b.mul_basis(i, j)
                for i in range(a.dim)
                for j in range(a.dim)
            )


# ---------------------------------------------------------------------------
# law checks


@pytest.mark.parametrize("k", [0, 1, 2])
def test_check_algebra_interleaved(k):
    rep = check_algebra(TORUS, k)
    assert rep.ok, rep.failures


def test_check_algebra_trivial_k0():
    rep = check_algebra(disc(), 0)
    assert rep.ok and rep.dim == 1


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_check_algebra_one_disc_g2(k):
    rep = check_algebra(one_disc_decoration(2), k)
    assert rep.ok, rep.failures


def test_dimension_formula_against_brute_force():
    for _, ds in corpus_surfaces()[:20]:
        for k in range(ds.n_arcs + 1):
            assert Algebra.from_surface(ds, k).dim == brute_force_dimension(ds, k)


def test_dimension_formula_matches_chord_table():
    # dim = sum over (s, t, f) of the product of chord-option counts
    for ds in (TORUS, double_cover_decoration(1)):
        for k in range(ds.n_arcs + 1):
            alg = Algebra.from_surface(ds, k)
            total = 0
            for s in itertools.combinations(range(ds.n_arcs), k):
                for t in itertools.combinations(range(ds.n_arcs), k):
                    for image in itertools.permutations(t):
                        prod = 1
                        for i, j in zip(s, image):
                            prod *= len(alg.chords.get((i, j), ())) + (i == j)
                        total += prod
            assert total == alg.dim


# ---------------------------------------------------------------------------
# opposite algebra, connected sum, directedness


@pytest.mark.parametrize("k", [0, 1])
def test_opposite_disc_with_arc(k):
    assert opposite_check(DISC1, k)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_opposite_interleaved(k):
    assert opposite_check(TORUS, k)


def test_opposite_map_is_an_anti_isomorphism():
    alg, ralg, op = opposite_algebra_map(TORUS, 2)
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = frozenset(op[x] for x in alg.mul_basis(i, j))
            assert lhs == ralg.mul_support(frozenset([op[j]]), frozenset([op[i]]))


def test_consum_with_trivial_disc():
    for k in (0, 1, 2):
        assert consum_check(TORUS, disc(), k)


def test_consum_discs_with_arcs():
    assert consum_check(DISC1, DISC1, 1)
    from strandalg.surface import boundary_connected_sum

    dd = boundary_connected_sum(DISC1, 0, DISC1, 0)
    assert Algebra.from_surface(dd, 1).dim == 4  # 1*2 + 2*1


def test_consum_tori_dimension_78():
    from strandalg.surface import boundary_connected_sum

    tt = boundary_connected_sum(TORUS, 0, TORUS, 0)
    assert Algebra.from_surface(tt, 2).dim == 7 + 8 * 8 + 7 == 78
    assert consum_check(TORUS, TORUS, 2)


def test_directedness_double_cover_true():
    ds = double_cover_decoration(1)
    assert all(directedness_check(ds, k) for k in range(0, 4))


def test_directedness_interleaved_false_at_k1():
    assert not directedness_check(TORUS, 1)
    assert directedness_check(TORUS, 0)


# ---------------------------------------------------------------------------
# properties


@st.composite
def small_algebras(draw):
    n = draw(st.integers(min_value=1, max_value=2))
    eps = [f"e{i}" for i in range(1, 2 * n + 1)]
    perm = draw(st.permutations(eps))
    arcs = [[perm[2 * i], perm[2 * i + 1]] for i in range(n)]
    order = draw(st.permutations(eps))
    k = draw(st.integers(min_value=0, max_value=n))
    ds = make_surface([["z"] + list(order)], arcs)
    return Algebra.from_surface(ds, k)


@settings(max_examples=25, deadline=None)
@given(small_algebras())
def test_d_squared_and_leibniz_property(alg):
    for i in range(alg.dim):
        assert not alg.diff_support(alg.diff_basis(i))
        for j in range(alg.dim):
            if alg.basis[i].t != alg.basis[j].s:
                continue
            lhs = alg.diff_support(alg.mul_basis(i, j))
            rhs = alg.mul_support(alg.diff_basis(i), frozenset([j])) ^ alg.mul_support(
                frozenset([i]), alg.diff_basis(j)
            )
            assert lhs == rhs
