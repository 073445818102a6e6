import pytest

from lml.alcoves import enumerate_minuscule, extreme_alcoves, worst_alcove
from lml.charts import (ChartError, ModelParams, base_point, build_component, build_elliptic_triangle,
                        build_gl_iwahori, build_gl_iwahori_matrix, build_gl_pro_p, build_gsp_hs, build_gsp_iwahori,
                        build_gsp_shadrach, chart_fp_points, chart_membership, combinatorial_vanishing, cyclotomic,
                        drinfeld_target, expected_worst_fiber_basis, find_fp_point, flag_pattern, gl_matrix_equations,
                        gl_point_flag, gsp_canonical, gsp_variables, hs_auxiliary_point, in_worst_chart,
                        point_satisfies, presentation_equivalence, vanishing_pattern, worst_fiber)
from lml.groebner import IdealHandle, colon, hom_check, ideal_equal
from lml.ring_core import PolyRing


def test_model_params():
    prm = ModelParams(3, 1, 3)
    assert (prm.g, prm.h, prm.m) == (2, 1, 1)
    for n, r, p in [(4, 1, 3), (5, 2, 7), (3, 1, 5)]:
        q = ModelParams(n, r, p)
        assert q.g * q.h == p - 1 and q.g * q.m == n - r
    with pytest.raises(ChartError):
        ModelParams(3, 0, 3)
    with pytest.raises(ChartError):
        ModelParams(3, 1, 4)
    with pytest.raises(ChartError):
        ModelParams(3, 1, 2)


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
def test_alpha_beta_relation(n, r):
    B = build_gl_iwahori(n, r)
    t = B.ring.gen("t")
    for i in range(n):
        assert B.ideal().contains(B.named[f"alpha_{i}"] * B.named[f"beta_{i}"] - t)
    assert B.ring.nvars == n * r * (n - r) + 1


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2)])
def test_presentation_equivalence(n, r):
    assert presentation_equivalence(n, r) == {"ideals_equal": True, "entries_expressible": True}


def test_families_agree_with_matrix_equations():
    for n, r in [(3, 1), (3, 2), (4, 2)]:
        B = build_gl_iwahori(n, r)
        assert ideal_equal(B.ideal(), IdealHandle(B.ring, gl_matrix_equations(n, r, B.ring)))


def test_matrix_presentation_shape():
    M = build_gl_iwahori_matrix(3, 1)
    assert M.ring.variables == ("a_0_1", "a_1_1", "a_2_1", "t")
    # for r = 1 the cyclic products collapse to a_0 a_1 a_2 = t
    assert ideal_equal(M.ideal(), IdealHandle(M.ring, ["a_0_1*a_1_1*a_2_1 - t"]))


@pytest.mark.parametrize("n,r,p", [(2, 1, 3), (3, 1, 3), (3, 2, 3), (4, 1, 3), (3, 1, 5)])
def test_pro_p_product_relation(n, r, p):
    C = build_gl_pro_p(ModelParams(n, r, p))
    t = C.ring.gen("t")
    assert C.ideal().contains(C.named["u_product"] ** (p - 1) - t ** (n - r))


def test_literal_sign_fails_when_r_is_even():
    C = build_gl_pro_p(ModelParams(3, 2, 3), sign="literal")
    t = C.ring.gen("t")
    assert not C.ideal().contains(C.named["u_product"] ** 2 - t)
    assert C.ideal().contains(C.named["u_product"] ** 2 - t) is False
    with pytest.raises(ChartError):
        build_gl_pro_p(ModelParams(3, 2, 3), sign="other")


def test_components():
    prm = ModelParams(3, 1, 3)
    plus = build_component(prm, 1)
    minus = build_component(prm, -1)
    assert plus.params["eps"] == "+1" and minus.params["eps"] == "-1"
    assert "torsion_witness" in plus.named and "torsion_witness" not in minus.named
    U = plus.named["u_product"]
    t = plus.ring.gen("t")
    assert plus.ideal().contains(U - t)
    assert minus.ideal().contains(U + t)
    with pytest.raises(ChartError):
        build_component(ModelParams(4, 1, 3), -1)   # g = 1
    with pytest.raises(ChartError):
        build_component(prm, 3)


def test_cyclotomic_component():
    prm = ModelParams(4, 1, 7)          # g = gcd(6, 3) = 3
    C = build_component(prm, 3)
    e = C.ring.gen("e")
    assert C.params["eps"] == "zeta_3"
    assert C.ideal().contains(e ** 3 - 1)


def test_cyclotomic_polynomials():
    R = PolyRing(["e"])
    assert cyclotomic(1, R, "e") == R("e - 1")
    assert cyclotomic(4, R, "e") == R("e^2 + 1")
    assert cyclotomic(6, R, "e") == R("e^2 - e + 1")
    assert cyclotomic(12, R, "e") == R("e^4 - e^2 + 1")


@pytest.mark.parametrize("prm", [(3, 1, 3), (2, 1, 3)])
def test_worst_fiber_basis(prm):
    C = build_gl_pro_p(ModelParams(*prm))
    got = worst_fiber(C).ideal().basis()
    want = IdealHandle(C.ring, expected_worst_fiber_basis(C)).basis()
    assert [g.terms for g in got] == [w.terms for w in want]


def test_torsion_witness_for_c1():
    C = build_component(ModelParams(3, 1, 3), 1)
    f = C.named["torsion_witness"]
    assert str(f) in ("u_1*u_2 - a_0_1_1*u_0", "-a_0_1_1*u_0 + u_1*u_2")
    t = C.ring.gen("t")
    assert C.ideal().contains(t * f)
    assert not C.ideal().contains(f)
    J = colon(C.ideal(), t)
    assert J.contains(f)


def test_drinfeld_target():
    D = drinfeld_target(2, 3)
    assert D.ring.variables == ("u_0", "u_1", "t")
    assert D.ideal().contains(D.ring("u_0^2*u_1^2 - t"))


def test_gsp_variables_canonical():
    n = 2
    names = gsp_variables(n)
    assert len(names) == len(set(names))
    for i in (0, n):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                c = gsp_canonical(n, i, j, k)
                assert gsp_canonical(n, *c) == c


@pytest.mark.parametrize("n", [2, 3])
def test_lemma_identity(n):
    B = build_gsp_iwahori(n)
    assert B.ideal().contains(B.named["lemma_identity"], budget=5 * 10 ** 6)


def test_lemma_identity_as_printed_is_not_in_the_ideal():
    B = build_gsp_iwahori(2)
    assert not B.ideal().contains(B.named["lemma_identity_literal"])


def test_hs_chart():
    H = build_gsp_hs(2, 3)
    f = H.named["torsion_witness"]
    t = H.ring.gen("t")
    assert H.ideal().contains(t * f)
    assert not H.ideal().contains(f)
    vs = [H.ring.gen("v_0"), H.ring.gen("v_1")]
    assert not IdealHandle(H.ring, list(H.gens) + vs).contains(f)


@pytest.mark.parametrize("n", [2, 3])
def test_hs_auxiliary_point(n):
    pt = hs_auxiliary_point(n)
    assert point_satisfies(build_gsp_iwahori(n), pt, 3)


def test_shadrach_chart():
    S = build_gsp_shadrach(1, 3)
    assert S.ring.nvars - 1 == len(gsp_variables(1)) + 2
    w, t = S.ring.gen("w"), S.ring.gen("t")
    assert S.ideal().contains(w ** 2 - t)


def test_elliptic_triangle():
    tri = build_elliptic_triangle(3)
    assert hom_check(tri.homs["sh_to_hs"], tri.sh.ideal(), tri.hs.ideal())
    assert hom_check(tri.homs["prime_to_sh"], tri.prime.ideal(), tri.sh.ideal())
    assert hom_check(tri.homs["prime_to_hs"], tri.prime.ideal(), tri.hs.ideal())
    comp = tri.homs["sh_to_hs"].compose(tri.homs["prime_to_sh"])
    for v in tri.prime.ring.variables:
        g = tri.prime.ring.gen(v)
        assert tri.hs.ideal().contains(comp(g) - tri.homs["prime_to_hs"](g))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_vanishing_patterns_agree(n):
    for r in range(n + 1):
        for x in enumerate_minuscule(n, r):
            assert vanishing_pattern(x) == combinatorial_vanishing(x)


def test_extreme_dichotomy_42():
    ext = extreme_alcoves(4, 2)
    assert len(ext) == 6
    for x in ext:
        assert all(a != b for a, b in vanishing_pattern(x))


def test_worst_point_pattern_and_membership():
    for n, r in [(3, 1), (4, 2)]:
        tau = worst_alcove(n, r)
        assert all(not a and not b for a, b in vanishing_pattern(tau))
        assert chart_membership(tau, tau)


def test_base_points_outside_worst_chart():
    # only the worst point itself is a base point lying in U_tau
    for n, r in [(3, 1), (4, 2)]:
        tau = worst_alcove(n, r)
        inside = [x for x in enumerate_minuscule(n, r) if chart_membership(x, tau)]
        assert inside == [tau]


def test_base_point_dimensions():
    x = worst_alcove(3, 1)
    assert [F.cols for F in base_point(x)] == [1, 1, 1]


def test_fp_points_of_small_chart():
    B = build_gl_iwahori(2, 1)
    pts = chart_fp_points(B, 3)
    # special fiber of Q[x, y, t]/(x y - t): x y = 0 over F_3
    assert len(pts) == 5
    for P in pts:
        assert point_satisfies(B, P, 3)
        assert in_worst_chart(2, 1, P, 3)
        assert flag_pattern(gl_point_flag(2, 1, P, 3)) == [
            (P["a_1_1_1"] != 0, P["a_0_1_1"] != 0), (P["a_0_1_1"] != 0, P["a_1_1_1"] != 0)]


def test_find_fp_point_with_nonvanishing():
    B = build_gl_iwahori(3, 1)
    R = B.ring
    pt = find_fp_point(R, list(B.gens) + [R.gen("t")], 3, nonzero=[B.named["beta_0"], B.named["beta_1"]])
    assert pt is not None and pt["a_0_1_1"] and pt["a_1_1_1"]
    assert find_fp_point(R, list(B.gens) + [R.gen("t") - 1, R.gen("a_0_1_1")], 3) is None


def test_chart_json():
    C = build_component(ModelParams(3, 1, 3), 1)
    js = C.to_json()
    assert js["ring"]["vars"][-1] == "t"
    assert set(js["named"]) >= {"alpha_0", "beta_0", "f_eps", "torsion_witness"}
