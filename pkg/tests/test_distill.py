import numpy as np
import pytest

from fourqubit.classify import signature
from fourqubit.distill import DistillationResult, distill, distill_step
from fourqubit.errors import InvalidInputError
from fourqubit.families import named_state
from fourqubit.states import (
    LocalOperation,
    apply_local,
    basis_state,
    reduced_density,
    sample,
)


def reduction_residual(psi):
    worst = 0.0
    for q in (1, 2, 3, 4):
        rho = reduced_density(psi, {q}).entries
        worst = max(worst, np.linalg.norm(2.0 * rho - np.eye(2)))
    return worst


def test_ghz4_already_stochastic():
    res = distill(named_state("ghz4"))
    assert res.status == "converged"
    assert res.iterations == 0
    assert res.successProbability == pytest.approx(1.0, abs=1e-12)
    for f in res.filters.ops:
        assert np.allclose(f, np.eye(2), atol=1e-12)


def test_w4_diverges():
    res = distill(named_state("w4"), max_iter=500)
    assert res.status == "diverging"
    assert res.successProbability < 1e-6


def test_product_state_hits_singular_filter():
    res = distill(named_state("product_0000"))
    assert res.status == "diverging"
    assert res.successProbability == 0.0


def test_step_flattens_target_reduction():
    rng = np.random.default_rng(71)
    psi = sample("haar_state", rng)
    for q in (1, 2, 3, 4):
        out, f = distill_step(psi, q)
        rho = reduced_density(out, {q}).entries
        assert np.linalg.norm(2.0 * rho - np.eye(2)) < 1e-10
        assert f.shape == (2, 2)
    with pytest.raises(InvalidInputError):
        distill_step(psi, 0)


def test_random_state_converges_with_consistent_record():
    rng = np.random.default_rng(72)
    psi = sample("haar_state", rng)
    res = distill(psi, max_iter=5000)
    assert res.status == "converged"
    assert reduction_residual(res.finalState) < 1e-9

    # the recorded filters replay the whole trajectory
    raw = apply_local(psi, res.filters)
    replay = raw.normalized()
    overlap = abs(np.vdot(replay.amplitudes, res.finalState.amplitudes))
    assert overlap == pytest.approx(1.0, abs=1e-9)
    assert res.successProbability == pytest.approx(raw.norm2, rel=1e-8)

    for f in res.filters.ops:
        assert np.linalg.det(f) == pytest.approx(1.0, abs=1e-10)


def test_signature_rides_along_the_trajectory():
    rng = np.random.default_rng(73)
    psi = sample("haar_state", rng)
    res = distill(psi, max_iter=5000)
    assert res.status == "converged"
    quad0 = np.array(signature(psi).quad)
    quadf = np.array(signature(res.finalState).quad)
    scaled = quadf * np.sqrt(res.successProbability)
    assert np.allclose(np.sort_complex(scaled), np.sort_complex(quad0), atol=1e-8)


def test_max_iter_validation_and_cap():
    with pytest.raises(InvalidInputError):
        distill(named_state("ghz4"), max_iter=0)
    rng = np.random.default_rng(74)
    psi = sample("haar_state", rng)
    res = distill(psi, max_iter=1)
    assert isinstance(res, DistillationResult)
    assert res.status in ("converged", "max-iterations")
    assert res.iterations <= 1
