import numpy as np
import pytest

from fourqubit.classify import signature
from fourqubit.families import construct, named_state
from fourqubit.normal_form import lu_equivalent, lu_normal_form
from fourqubit.states import LocalOperation, apply_local, sample


def random_lu(rng):
    return LocalOperation([sample("su2", rng) for _ in range(4)], kind="unitary")


def test_normal_form_invariant_under_local_unitaries():
    rng = np.random.default_rng(51)
    for _ in range(20):
        psi = sample("haar_state", rng)
        nf1 = lu_normal_form(psi)
        nf2 = lu_normal_form(apply_local(psi, random_lu(rng)))
        assert not nf1.degenerate
        assert np.max(np.abs(nf1.normalR - nf2.normalR)) < 1e-10
        assert np.allclose(nf1.singularValues, nf2.singularValues, atol=1e-10)


def test_normal_form_reconstructs_R():
    rng = np.random.default_rng(52)
    psi = sample("haar_state", rng)
    nf = lu_normal_form(psi)
    from fourqubit.magic import to_R

    R = to_R(psi.normalized())
    rebuilt = nf.left @ (nf.phase * R) @ nf.right
    assert np.max(np.abs(rebuilt - nf.normalR)) < 1e-12
    assert abs(abs(nf.phase) - 1.0) < 1e-12
    assert np.allclose(nf.left @ nf.left.T, np.eye(4), atol=1e-12)
    assert np.allclose(nf.right @ nf.right.T, np.eye(4), atol=1e-12)


def test_degenerate_flag_on_ghz4():
    nf = lu_normal_form(named_state("ghz4"))
    assert nf.degenerate
    sv = np.sort(np.abs(nf.singularValues))[::-1]
    assert np.allclose(sv, [2**-0.5, 2**-0.5, 0, 0], atol=1e-10)


def test_fallback_gauge_on_traceless_rrt():
    # w4 has tr(R R^T) = 0 so the phase gauge falls back
    nf = lu_normal_form(named_state("w4"))
    assert nf.fallbackGauge


def test_lu_equivalent_positive_pairs():
    rng = np.random.default_rng(53)
    for _ in range(10):
        psi = sample("haar_state", rng)
        phi = apply_local(psi, random_lu(rng))
        eq, residual = lu_equivalent(psi, phi)
        assert eq, residual
        assert residual < 1e-10


def test_lu_equivalent_negative_pairs():
    rng = np.random.default_rng(54)
    for _ in range(10):
        psi = sample("haar_state", rng)
        phi = sample("haar_state", rng)
        eq, residual = lu_equivalent(psi, phi)
        assert not eq
        assert residual > 1e-4


def test_lu_equivalent_implies_matching_signature():
    rng = np.random.default_rng(55)
    psi = sample("haar_state", rng)
    phi = apply_local(psi, random_lu(rng))
    eq, _ = lu_equivalent(psi, phi)
    assert eq
    q1 = np.asarray(signature(psi).quad)
    q2 = np.asarray(signature(phi).quad)
    assert np.max(np.abs(q1 - q2)) < 1e-10


def test_lu_equivalent_degenerate_gauge_search():
    # degenerate singular values allow extra gauge moves; GHZ4 against a
    # rotated copy must still match through the orbit search
    rng = np.random.default_rng(56)
    ghz = named_state("ghz4")
    eq, residual = lu_equivalent(ghz, apply_local(ghz, random_lu(rng)))
    assert eq, residual


def test_odd_sign_twin_is_not_equivalent():
    # same squared parameters, different orbit: one sign flip cannot be
    # reached by determinant-one local unitaries
    p = np.array([1.1 + 0.3j, 0.8 - 0.2j, 0.5 + 0.6j, 0.3 + 0.1j])
    a = construct("G_abcd", p, normalize=True)
    q = p.copy()
    q[0] = -q[0]
    b = construct("G_abcd", q, normalize=True)
    eq, residual = lu_equivalent(a, b)
    assert not eq
    # but an even double flip is equivalent
    q[1] = -q[1]
    c = construct("G_abcd", q, normalize=True)
    eq, residual = lu_equivalent(a, c)
    assert eq, residual
