import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatjordan import NotJCommuting, NotNilpotent, StructureViolation
from quatjordan.gen import GRID, gen, random_spec
from quatjordan.hmat import HMatrix, complex_adjoint, hinverse, jmap
from quatjordan.jordan import (
    JordanBlock,
    complex_chains_for,
    jordan_form,
    jordan_matrix,
    make_spec,
    paired_nilpotent_jordan,
    real_chains_for,
    spec_equivalent,
)
from quatjordan.quat import Quaternion, qinv, qmul
from quatjordan.spectral import spectrum

J = [0, 0, 1, 0]


def hm(rows):
    return HMatrix.from_rows(rows)


def check_chain(M, lam, C, tol=1e-8):
    """(M - lam) v1 = 0 and (M - lam) v_{t+1} = v_t."""
    T = M - lam * np.eye(M.shape[0])
    scale = 1 + np.abs(M).max()
    assert np.max(np.abs(T @ C[:, 0])) <= tol * scale
    for t in range(1, C.shape[1]):
        assert np.max(np.abs(T @ C[:, t] - C[:, t - 1])) <= tol * scale


def basis_rank(chains):
    cols = np.hstack([np.hstack([c.chain, c.mirror]) for c in chains])
    return np.linalg.matrix_rank(cols, tol=1e-8), cols.shape[1]


def test_paired_nilpotent_examples():
    chains = paired_nilpotent_jordan(np.zeros((2, 2)))
    assert [c.size for c in chains] == [1]
    assert basis_rank(chains) == (2, 2)

    M = complex_adjoint(hm([[0, 1], [0, 0]]))
    chains = paired_nilpotent_jordan(M)
    assert [c.size for c in chains] == [2]
    assert basis_rank(chains) == (4, 4)

    M = complex_adjoint(jordan_matrix([(0, 2), (0, 1)]))
    chains = paired_nilpotent_jordan(M)
    assert sorted(c.size for c in chains) == [1, 2]
    assert basis_rank(chains) == (6, 6)
    for c in chains:
        check_chain(M, 0, c.chain)
        check_chain(M, 0, c.mirror)


def test_paired_nilpotent_errors():
    with pytest.raises(NotNilpotent):
        paired_nilpotent_jordan(np.eye(2))
    with pytest.raises(NotJCommuting):
        paired_nilpotent_jordan(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(StructureViolation):
        paired_nilpotent_jordan(np.zeros((3, 3)))


def test_paired_nilpotent_on_conjugated_instance():
    A = gen([(0, 3), (0, 2), (0, 2), (0, 1)], seed=21).A
    M = complex_adjoint(A)
    chains = paired_nilpotent_jordan(M)
    assert sorted(c.size for c in chains) == [1, 2, 2, 3]
    assert basis_rank(chains) == (16, 16)
    for c in chains:
        check_chain(M, 0, c.chain, 1e-7)
        check_chain(M, 0, c.mirror, 1e-7)
        # every prefix spans an invariant subspace
        for i in range(1, c.size + 1):
            S = c.chain[:, :i]
            img = M @ S
            resid = img - S @ np.linalg.lstsq(S, img, rcond=None)[0]
            assert np.max(np.abs(resid)) <= 1e-7 * (1 + np.abs(M).max())


def test_complex_chains_examples():
    chains = complex_chains_for(complex_adjoint(hm([[J]])), 1j)
    assert [c.size for c in chains] == [1]
    M = complex_adjoint(jordan_matrix([(1j, 2)]))
    chains = complex_chains_for(M, 1j)
    assert [c.size for c in chains] == [2]
    check_chain(M, 1j, chains[0].chain)
    check_chain(M, -1j, chains[0].mirror)
    chains = complex_chains_for(complex_adjoint(jordan_matrix([(1j, 1), (1j, 1)])), 1j)
    assert [c.size for c in chains] == [1, 1]
    with pytest.raises(ValueError):
        complex_chains_for(M, -1j)


def test_jordan_form_of_j():
    r = jordan_form(hm([[J]]))
    assert spec_equivalent(r.spec, [JordanBlock(1j, 1)], 1e-14)
    p = r.P[0, 0]
    got = qmul(qmul(qinv(p), Quaternion(0, 0, 1)), p)
    assert np.allclose(got.to_array(), [0, 1, 0, 0], atol=1e-14)


def test_jordan_form_hand_example():
    A = hm([[[0, 1, 0, 0], [0, 0, 1, -2]], [0, [1, 1, 0, 0]]])
    P0 = hm([[1, J], [0, 1]])
    assert (P0 @ jordan_matrix([(1j, 1), (1 + 1j, 1)]) @ hinverse(P0)).allclose(A, 1e-14)
    r = jordan_form(A)
    assert spec_equivalent(r.spec, make_spec([(1j, 1), (1 + 1j, 1)]), 1e-12)
    assert r.residual <= 1e-12


def test_jordan_form_nilpotent_identity():
    A = jordan_matrix([(0, 3)])
    r = jordan_form(A)
    assert r.spec == (JordanBlock(0j, 3),)
    assert r.P.allclose(HMatrix.identity(3), 1e-14)


def test_spec_order_and_json():
    spec = make_spec([(2, 1), (1j, 1), (1j, 3), (-1, 2)])
    assert [(b.value, b.size) for b in spec] == [(-1, 2), (1j, 3), (1j, 1), (2, 1)]
    assert spec[0].to_json() == {"re": -1.0, "im": 0.0, "size": 2}
    with pytest.raises(ValueError):
        make_spec([(1, 0)])


def test_spec_equivalent_examples():
    assert spec_equivalent(make_spec([(1j, 2)]), make_spec([(1j, 2)]))
    a = [JordanBlock(1j, 1), JordanBlock(1 + 1j, 1)]
    assert spec_equivalent(a, a[::-1])
    assert spec_equivalent([JordanBlock(-1j, 2)], [JordanBlock(1j, 2)])
    assert not spec_equivalent([JordanBlock(1j, 2)], [JordanBlock(1j, 1), JordanBlock(1j, 1)])
    assert not spec_equivalent([JordanBlock(1j, 1)], [JordanBlock(1.01j, 1)], 1e-5)


def test_rank_profile_matches_blocks():
    spec = make_spec([(1 + 1j, 2), (1 + 1j, 1), (-1, 3), (-1, 1)])
    A = gen(spec, seed=9).A
    M = complex_adjoint(A)
    n2 = M.shape[0]
    r = jordan_form(A)
    assert spec_equivalent(r.spec, spec, 1e-6)
    for lam in (1 + 1j, -1):
        T = M - lam * np.eye(n2)
        ranks = [np.linalg.matrix_rank(np.linalg.matrix_power(T, t), tol=1e-6 * (1 + np.abs(M).max()) ** t)
                 for t in range(5)]
        for t in range(1, 4):
            at_least = ranks[t - 1] - ranks[t]
            want = sum(1 for b in spec if np.isclose(b.value, lam) and b.size >= t)
            # complex lam: each block of A gives one adjoint block at lam; real: two
            assert at_least == (2 * want if np.imag(lam) == 0 else want)


def test_real_chains_pairing():
    A = gen([(2, 2), (2, 2), (2, 1)], seed=4).A
    M = complex_adjoint(A)
    chains = real_chains_for(M, 2.0)
    assert sorted(c.size for c in chains) == [1, 2, 2]
    for c in chains:
        check_chain(M, 2.0, c.chain, 1e-7)
        check_chain(M, 2.0, c.mirror, 1e-7)
        assert np.allclose(c.mirror, jmap(c.chain))


def test_result_json():
    doc = jordan_form(hm([[J]])).to_json()
    (b,) = doc["spec"]
    assert b["size"] == 1 and abs(b["re"]) < 1e-14 and abs(b["im"] - 1) < 1e-14
    assert doc["P"]["n"] == 1 and doc["residual"] >= 0


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(seed, n):
    rng = np.random.default_rng(seed)
    spec = random_spec(n, rng, GRID)
    g = gen(spec, seed)
    r = jordan_form(g.A)
    assert spec_equivalent(r.spec, spec, 1e-5)
    R = hinverse(r.P) @ g.A @ r.P - jordan_matrix(r.spec)
    assert R.norm() <= 1e-5 * g.A.norm()
    # pulled-back chains are independent over H
    assert np.linalg.matrix_rank(complex_adjoint(r.P)) == 2 * n


def test_spectrum_consistency_with_jordan():
    A = gen([(1j, 2), (1, 2), (1, 1)], seed=12).A
    spec = spectrum(A)
    r = jordan_form(A, spec=spec)
    for e in spec:
        sizes = sum(b.size for b in r.spec if abs(b.value - e.value) < 1e-6)
        assert sizes == (e.mult // 2 if e.kind == "real" else e.mult)
