import random

import pytest

from k2yoneda.algebra import GradedAlgebraData, algebra_from_table, monomial_algebra
from k2yoneda.bar import (
    BarComplex,
    BarTensor,
    NotConnectedError,
    bar_differential,
    coproduct_on_tor3,
    default_max_degree,
    k2_low_degree_test,
    reduced_coproduct,
    tor_dimensions,
)
from k2yoneda.chains import enumerate_chains
from k2yoneda.linalg import Field, SubspaceBasis, add_scaled, kernel_vectors, quotient_projector
from k2yoneda.showcase import zeta
from k2yoneda.yoneda import build_ext_algebra

from .conftest import load_sample, random_presentation

F = Field(32003)


def labels_tensor(alg, *labels):
    return tuple(alg.index(l) for l in labels)


def test_zeta_boundary_terms(ext, bar):
    """d(zeta) = mbar.alpha.beta.gamma (x) zbar - mbar.alpha (x) beta.gamma.zbar, both terms zero."""
    z = zeta(ext)
    (t,) = z.terms
    assert bar.boundary_of(t) == {}
    assert not bar.apply_differential(z)


def test_four_tensor_boundary(ext, bar):
    """d(mbar (x) alpha (x) beta.gamma (x) zbar) = zeta - mbar (x) alpha.beta.gamma (x) zbar."""
    one = lambda x: next(iter(x.terms))
    m, z = ext.letter("m"), ext.letter("z")
    a, b, g = ext.relation("nnpqr"), ext.relation("stu"), ext.relation("vwxyy")
    assert (a * b * g).terms and not (b * g * z).terms
    got = bar.boundary_of((one(m), one(a), one(b * g), one(z)))
    (zt,) = zeta(ext).terms
    assert got == {zt: 1, (one(m), one(a * b * g), one(z)): F(-1)}


def test_zero_multiplication_gives_zero_differential():
    alg = algebra_from_table(["1", "a", "b"], [0, 1, 1], {})
    bar = BarComplex(alg, F)
    for i in (2, 3):
        for d in range(i, i + 1):
            assert all(not col for col in bar.differential(i, d).cols)


def test_differential_squares_to_zero_on_E(bar):
    for d in range(4, 19):
        for t in bar.active_tuples(4, d):
            img = bar.boundary_of(t)
            total: dict = {}
            for s, c in img.items():
                add_scaled(F, total, c, bar.boundary_of(s))
            assert total == {}


def test_differential_squares_to_zero_matrices(bar):
    for d in (6, 8, 10):
        D3, D2 = bar.differential(3, d), bar.differential(2, d)
        assert all(not col for col in D2.matmul(D3).cols)


def test_not_connected():
    alg = GradedAlgebraData(["1", "e"], [0, 0], {})
    with pytest.raises(NotConnectedError):
        BarComplex(alg)


def test_tor1_of_E(bar):
    assert [bar.tor_dim(1, d) for d in range(1, 7)] == [13, 9, 0, 0, 0, 0]


def test_tor_x2_dual_numbers():
    alg = monomial_algebra(load_sample("x2.alg"))
    assert alg.dim == 2
    tor = tor_dimensions(alg, 5, 7)
    assert {k: v for k, v in tor.items() if v} == {(i, i): 1 for i in range(0, 6)}


def test_tor_unit_only():
    alg = GradedAlgebraData(["1"], [0], {})
    assert tor_dimensions(alg, 3, 5) == {(0, 0): 1}
    s = k2_low_degree_test(alg)
    assert s.generated_by_lower and s.kernel_dims == {}


def test_homology_representatives(ext, bar):
    reps, proj = bar.homology_representatives(3, 8)
    assert len(reps) == bar.tor_dim(3, 8) == 1
    idx = bar.index(3, 8)
    zvec = bar.tensor_vector(zeta(ext), 3, 8)
    rep = {idx[t]: c for t, c in reps[0].terms.items()}
    assert proj(zvec) and proj(rep) == {0: 1}
    for b in bar.boundaries(3, 8).rows()[:200]:
        assert proj(b) == {}
    empty_reps, _ = bar.homology_representatives(3, 2)
    assert empty_reps == []


def test_reduced_coproduct_examples():
    z = BarTensor({(1, 2, 3): 1})
    assert reduced_coproduct(z) == {1: {((1,), (2, 3)): 1}, 2: {((1, 2), (3,)): 1}}
    assert reduced_coproduct(BarTensor({(4, 5): 1})) == {1: {((4,), (5,)): 1}}


def _tensor_differential(bar, left_right: dict) -> dict:
    """(d (x) 1 + (-1)^{|left|} 1 (x) d) on a dict (left, right) -> coefficient."""
    out: dict = {}
    for (u, v), c in left_right.items():
        for s, x in bar.boundary_of(u).items():
            key = (s, v)
            out[key] = (out.get(key, 0) + c * x) % F.p
        sign = -1 if len(u) % 2 else 1
        for s, x in bar.boundary_of(v).items():
            key = (u, s)
            out[key] = (out.get(key, 0) + sign * c * x) % F.p
    return {k: v for k, v in out.items() if v}


def _flat_coproduct(z: BarTensor) -> dict:
    out: dict = {}
    for _, terms in reduced_coproduct(z).items():
        for k, c in terms.items():
            out[k] = (out.get(k, 0) + c) % F.p
    return {k: v for k, v in out.items() if v}


def test_coproduct_commutes_with_differential(bar):
    rng = random.Random(1)
    for d in (6, 8, 9):
        tuples = bar.active_tuples(4, d)
        for _ in range(30):
            z = BarTensor({t: rng.randrange(1, F.p) for t in rng.sample(tuples, 3)})
            lhs = _flat_coproduct(bar.apply_differential(z))
            rhs = _tensor_differential(bar, _flat_coproduct(z))
            assert lhs == rhs


def test_coproduct_kernel_contains_zeta(ext, bar):
    M = coproduct_on_tor3(bar, 8)
    assert M.n_cols == 1 and len(kernel_vectors(M)) == 1
    assert bar.coproduct_image(zeta(ext)) == {}


def test_empty_tor3_degree(bar):
    M = coproduct_on_tor3(bar, 18)
    assert M.n_cols == 0


def test_default_max_degree(ext):
    assert default_max_degree(ext.algebra) == 18


def test_k2_test_example(ext, bar):
    s = k2_low_degree_test(ext.algebra, bar=bar)
    assert s.verdict == "new-generators-found"
    assert s.first_failure_degree == 8
    assert {d: k for d, k in s.kernel_dims.items() if k} == {8: 1}
    (w,) = s.witnesses[8]
    assert w.terms == zeta(ext).terms
    assert s.tor1_support == [1, 2]


def test_k2_test_koszul_cases():
    x2 = monomial_algebra(load_sample("x2.alg"))
    s = k2_low_degree_test(x2, d_max=6)
    assert s.generated_by_lower and s.tor_by_degree(3) == {3: 1}
    xy_dual = build_ext_algebra(enumerate_chains(load_sample("xy.alg"), 4)).algebra
    assert xy_dual.dim == 4
    s2 = k2_low_degree_test(xy_dual)
    assert s2.generated_by_lower
    for d, k in s2.kernel_dims.items():
        assert k == 0 and s2.tor[(3, d)] > 0


@pytest.mark.parametrize("p", [2, 3, 0])
def test_field_independence(ext, bar, p):
    base = tor_dimensions(ext.algebra, 3, 18, bar=bar)
    other = BarComplex(ext.algebra, Field(p))
    assert tor_dimensions(ext.algebra, 3, 18, bar=other) == base
    assert {d: k for d, k in k2_low_degree_test(ext.algebra, bar=other).kernel_dims.items() if k} == {8: 1}


def test_bar_differential_function(ext):
    M = bar_differential(ext.algebra, 2, 3, F)
    assert M.n_rows == 8 and M.n_cols == len(BarComplex(ext.algebra).slice(2, 3))


# -- Kunneth oracle ---------------------------------------------------------------


def _tensor_complex_homology(bar1: BarComplex, bar2: BarComplex, n: int, e: int):
    """Directly compute H_n of (Bar_+ (x) Bar_+) in internal degree e, together with the
    classes given by projector (x) projector; returns (dim H_n, rank of p(x)p on cycles,
    whether p(x)p kills the boundaries)."""

    def basis(k):
        out = []
        for a in range(1, k):
            b = k - a
            for e1 in range(0, e + 1):
                for u in bar1.slice(a, e1):
                    for v in bar2.slice(b, e - e1):
                        out.append((u, v))
        return out

    def diff(uv):
        u, v = uv
        out: dict = {}
        for s, x in bar1.boundary_of(u).items():
            out[(s, v)] = (out.get((s, v), 0) + x) % F.p
        sign = -1 if len(u) % 2 else 1
        for s, x in bar2.boundary_of(v).items():
            out[(u, s)] = (out.get((u, s), 0) + sign * x) % F.p
        return {k: c for k, c in out.items() if c}

    Cn, Cn1, Cm1 = basis(n), basis(n + 1), basis(n - 1)
    idx_n = {t: i for i, t in enumerate(Cn)}
    idx_m = {t: i for i, t in enumerate(Cm1)}
    dn_cols = [{idx_m[k]: c for k, c in diff(t).items() if len(k[0]) >= 1 and len(k[1]) >= 1} for t in Cn]
    from k2yoneda.linalg import SparseMatrix

    Z = SubspaceBasis.spanned_by(len(Cn), kernel_vectors(SparseMatrix(len(Cm1), len(Cn), F, dn_cols)), F)
    Bd = SubspaceBasis.spanned_by(len(Cn), ({idx_n[k]: c for k, c in diff(t).items() if len(k[0]) and len(k[1])} for t in Cn1), F)
    H = quotient_projector(Z, Bd)

    def pp(vec):
        out: dict = {}
        for i, c in vec.items():
            u, v = Cn[i]
            lu = bar1.homology(len(u), bar1.tensor_degree(u)).projector({bar1.index(len(u), bar1.tensor_degree(u))[u]: 1})
            rv = bar2.homology(len(v), bar2.tensor_degree(v)).projector({bar2.index(len(v), bar2.tensor_degree(v))[v]: 1})
            for a, x in lu.items():
                for b, y in rv.items():
                    key = (len(u), bar1.tensor_degree(u), a, b)
                    out[key] = (out.get(key, 0) + c * x * y) % F.p
        return {k: v for k, v in out.items() if v}

    images = [pp(z) for z in Z.rows()]
    keys = sorted({k for im in images for k in im})
    kidx = {k: i for i, k in enumerate(keys)}
    img_rank = len(SubspaceBasis.spanned_by(len(keys), ({kidx[k]: c for k, c in im.items()} for im in images), F))
    kills = all(not pp(b) for b in Bd.rows())
    return H.dim, img_rank, kills


def test_kunneth_consistency():
    rng = random.Random(4)
    done = 0
    while done < 6:
        p1 = random_presentation(rng, max_letters=2, max_relations=3, max_len=3)
        p2 = random_presentation(rng, max_letters=2, max_relations=3, max_len=3)
        a1, a2 = monomial_algebra(p1), monomial_algebra(p2)
        if a1.dim > 8 or a2.dim > 8:
            continue
        b1, b2 = BarComplex(a1, F), BarComplex(a2, F)
        for n in (2, 3):
            for e in range(n, n + 3):
                expected = sum(
                    b1.tor_dim(a, e1) * b2.tor_dim(n - a, e - e1) for a in range(1, n) for e1 in range(e + 1)
                )
                dim_h, img_rank, kills = _tensor_complex_homology(b1, b2, n, e)
                assert dim_h == expected
                assert img_rank == expected  # p (x) p maps cycles onto H (x) H
                assert kills
        done += 1
