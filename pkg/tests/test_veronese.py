from math import comb

import pytest
from hypothesis import given, strategies as st

from lml.groebner import hom_check, hom_kernel, ideal_equal
from lml.veronese import (_unsorted_pair, c1_xv_presentation, f_map, image_membership, index_set,
                          kernel_pi_check, lemma_sort_check, monomial_map, psi_map, sort_pair,
                          sorted_binomials, veronese_kernel_oracle, veronese_span_check, xv_matches_chart)


@pytest.mark.parametrize("n,g", [(n, g) for n in range(1, 5) for g in range(1, 4)])
def test_index_set_size(n, g):
    A = index_set(n, g)
    assert len(A) == comb(n + g - 1, g)
    assert all(sum(c) == g and min(c) >= 0 for c in A)
    assert A == sorted(A, reverse=True)


@pytest.mark.parametrize("n,g", [(n, g) for n in range(1, 5) for g in range(1, 4)])
def test_sort_lemma_exhaustive(n, g):
    assert lemma_sort_check(n, g)


def test_unsorted_split_is_not_a_normal_form():
    assert not lemma_sort_check(2, 2, sorter=_unsorted_pair)


def _pairs(n, g):
    A = index_set(n, g)
    return st.tuples(st.sampled_from(A), st.sampled_from(A))


@given(st.integers(2, 4).flatmap(lambda n: st.integers(1, 4).flatmap(lambda g: _pairs(n, g))))
def test_sort_pair_properties(pair):
    c1, c2 = pair
    s1, s2 = sort_pair(c1, c2)
    assert tuple(a + b for a, b in zip(s1, s2)) == tuple(a + b for a, b in zip(c1, c2))
    assert sort_pair(s1, s2) == (s1, s2)
    assert sort_pair(c2, c1) == (s1, s2)
    assert sum(s1) == sum(s2) == sum(c1)


def test_sort_pair_example():
    assert sort_pair((2, 0), (0, 2)) == ((1, 1), (1, 1))
    assert sort_pair((1, 0, 1), (0, 2, 0)) == ((1, 1, 0), (0, 1, 1))


@pytest.mark.parametrize("n,g", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_binomials_lie_in_kernel(n, g):
    phi = monomial_map(n, g)
    for b in sorted_binomials(n, g).gens:
        assert phi(b).is_zero()


@pytest.mark.parametrize("n,g", [(2, 2), (3, 2), (2, 3)])
def test_sorted_binomials_generate_kernel(n, g):
    K = veronese_kernel_oracle(n, g)
    assert ideal_equal(sorted_binomials(n, g), K)
    assert ideal_equal(sorted_binomials(n, g, alternative=True), K)


def test_twisted_cubic_kernel_has_three_quadrics():
    K = sorted_binomials(2, 3)
    assert len(K.gens) == 3


def test_psi_and_f_are_well_defined():
    for n, p in [(2, 3), (3, 3), (3, 5)]:
        psi, src, tgt = psi_map(n, p)
        assert hom_check(psi, src.ideal(), tgt.ideal())
        f, src, tgt = f_map(n, p)
        assert hom_check(f, src.ideal(), tgt.ideal())


def test_xv_presentation_matches_component():
    assert xv_matches_chart(2, 3)
    assert xv_matches_chart(3, 3)


def test_xv_presentation_shape():
    P = c1_xv_presentation(3, 3)
    assert P.ring.variables == ("x_0", "x_1", "x_2", "v_0", "v_1", "v_2", "t")
    assert len(P.gens) == 5


def test_psi_kernel_is_presentation():
    psi, src, tgt = psi_map(3, 3)
    K = hom_kernel(psi, tgt.ideal())
    assert ideal_equal(K, src.ideal())


@pytest.mark.parametrize("n,g,D", [(2, 2, 8), (3, 2, 8), (2, 3, 9), (3, 3, 9)])
def test_span_matches_divisibility(n, g, D):
    out = veronese_span_check(n, g, D)
    assert out["mismatches"] == 0
    assert out["checked"] == comb(D + n, n)


def test_kernel_pi_certificate():
    out = kernel_pi_check(3, 3, 12)
    assert out["unknowns"] > 0 and out["unforced"] == 0
    assert kernel_pi_check(3, 3, 3)["unknowns"] == 0


def test_image_membership():
    assert image_membership(3, 3, 12)
    assert image_membership(2, 3)
