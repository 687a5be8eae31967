import itertools

import pytest

from dicube.chains import (
    ChainOrder,
    CubeChain,
    chain_is_valid,
    chain_leq,
    chain_poset,
    enumerate_chains,
    face_swap,
)
from dicube.complexes import (
    build_final_complex,
    build_final_covering,
    build_ordered_cover,
    build_standard_cube,
)
from dicube.errors import ContractError, ResourceCapError
from dicube.orders import enumerate_orders


def cover_chain(cover, *cell_labels):
    return CubeChain(tuple(cover.complex.cell_of_label(lab) for lab in cell_labels))


# -- enumeration -----------------------------------------------------------------


def test_chains_of_edge():
    K = build_standard_cube(1)
    chains = enumerate_chains(K)
    assert len(chains) == 1 and chains[0].dimension_vector == (1,)


def test_chains_of_square():
    K = build_standard_cube(2)
    chains = enumerate_chains(K)
    assert len(chains) == 3
    assert sorted(c.dimension_vector for c in chains) == [(1, 1), (1, 1), (2,)]


def test_chains_of_ordered_cover_match_regular_orders():
    for n in (1, 2, 3):
        cover = build_ordered_cover(n)
        chains = enumerate_chains(cover.complex)
        assert len(chains) == len(enumerate_orders(cover.ground, "regular"))
        for c in chains:
            assert chain_is_valid(cover.complex, c)
            assert c.length == n


def test_chains_of_final_covering():
    zt, _ = build_final_covering(2)
    chains = enumerate_chains(zt)
    assert [c.text(zt) for c in chains] == ["z1_0;z1_1", "z2_0"]


def test_chain_altitudes_strictly_increase():
    cover = build_ordered_cover(3)
    for chain in enumerate_chains(cover.complex):
        alts = [cover.cover_cell(c).altitude for c in chain.cells]
        assert alts == sorted(alts) and len(set(alts)) == len(alts)


def test_enumeration_cap_on_looping_complex():
    z = build_final_complex(2)  # base vertex loops, chain set is infinite
    with pytest.raises(ResourceCapError):
        enumerate_chains(z, node_cap=500)


# -- the chain order ----------------------------------------------------------------


def test_chain_leq_edge_pair_below_square():
    cover = build_ordered_cover(2)
    two_step = cover_chain(cover, "(|a|b)", "(a|b|)")
    square = cover_chain(cover, "(|a<b|)")
    assert chain_leq(cover.complex, two_step, square)
    assert not chain_leq(cover.complex, square, two_step)


def test_chain_leq_reflexive_and_top_cubes_incomparable():
    cover = build_ordered_cover(2)
    sq1 = cover_chain(cover, "(|a<b|)")
    sq2 = cover_chain(cover, "(|b<a|)")
    order = ChainOrder(cover.complex)
    assert order.leq(sq1, sq1)
    assert not order.leq(sq1, sq2) and not order.leq(sq2, sq1)


def test_chain_order_contract_requires_altitude_and_injectivity():
    with pytest.raises(ContractError):
        ChainOrder(build_final_complex(1))  # no altitude labeling
    zt, _ = build_final_covering(2)
    with pytest.raises(ContractError):
        ChainOrder(zt)  # self-linked: the top cube pinches


def test_chain_poset_of_square():
    poset, chains = chain_poset(build_standard_cube(2))
    assert len(poset) == 3
    assert len(poset.maximal_elements()) == 1
    assert len(poset.minimal_elements()) == 2


def test_chain_poset_of_cover_two():
    # the two squares share all four boundary edges, so each edge chain sits
    # below both square chains: the 4-cycle
    cover = build_ordered_cover(2)
    poset, chains = chain_poset(cover.complex)
    assert len(poset) == 4
    maxima = poset.maximal_elements()
    minima = poset.minimal_elements()
    assert len(maxima) == 2 and len(minima) == 2
    for i in minima:
        above = [j for j in maxima if poset.leq[i][j]]
        assert len(above) == 2
    assert len(poset.covers()) == 4


def test_chain_order_poset_axioms():
    cover = build_ordered_cover(3)
    order = ChainOrder(cover.complex)
    chains = enumerate_chains(cover.complex)
    leq = {(i, j): order.leq(a, b) for i, a in enumerate(chains) for j, b in enumerate(chains)}
    for i in range(len(chains)):
        assert leq[(i, i)]
        for j in range(len(chains)):
            if leq[(i, j)] and leq[(j, i)]:
                assert i == j
            for k in range(len(chains)):
                if leq[(i, j)] and leq[(j, k)]:
                    assert leq[(i, k)]


# -- face swap --------------------------------------------------------------------------


def exhaustive_swap_solutions(p, q, V, W):
    """All (V', W') passing the symbolic identity, by brute force."""
    s = p + len(W)
    cube = build_standard_cube(s)
    top = (s, 0)
    out = []
    for vp in itertools.combinations(range(1, s + 1), len(V)):
        for wp in itertools.combinations(range(1, s + 1), len(W)):
            left = cube.iterated_face(cube.iterated_face(top, wp, 0), V, 1)
            right = cube.iterated_face(cube.iterated_face(top, vp, 1), W, 0)
            if left == right:
                out.append((frozenset(vp), frozenset(wp)))
    return out


def test_face_swap_trivial_case():
    assert face_swap(0, 0, set(), set()) == (frozenset(), frozenset())


def test_face_swap_unit_case_against_oracle():
    got = face_swap(1, 1, {1}, {1})
    solutions = exhaustive_swap_solutions(1, 1, {1}, {1})
    assert got in solutions


def test_face_swap_mixed_case_against_oracle():
    got = face_swap(2, 1, {1, 2}, {1})
    assert len(got[0]) == 2 and len(got[1]) == 1
    assert got in exhaustive_swap_solutions(2, 1, {1, 2}, {1})


def test_face_swap_all_small_cases_verified():
    checked = 0
    for p in range(0, 6):
        for q in range(0, 6 - p):
            for V in map(frozenset, _subsets(p)):
                for W in map(frozenset, _subsets(q)):
                    if p - len(V) != q - len(W):
                        continue
                    vp, wp = face_swap(p, q, V, W)
                    assert len(vp) == len(V) and len(wp) == len(W)
                    checked += 1
    assert checked > 50


def _subsets(n):
    items = range(1, n + 1)
    for r in range(n + 1):
        yield from itertools.combinations(items, r)


def test_face_swap_bad_arithmetic():
    with pytest.raises(ContractError):
        face_swap(2, 2, {1}, set())
    with pytest.raises(ContractError):
        face_swap(1, 1, {2}, {1})
