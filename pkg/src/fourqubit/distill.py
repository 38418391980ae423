"""Single-copy distillation by iterated local filtering.

Each step filters one qubit with F = det(2 rho)^(1/4) (2 rho)^(-1/2),
the unique determinant-one positive filter taking that qubit's reduced
density operator to I/2.  Sweeping the qubits cyclically drives a
generic state to the locally stochastic normal form; the non-generic
families never reach it and the accumulated success probability decays
to zero instead, which is reported as a diverging status rather than an
error.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SingularFilterError
from .linalg import herm2_fn
from .states import LocalOperation, apply_local, reduced_density


@dataclass(frozen=True)
class DistillationResult:
    """finalState is normalized; filters is the accumulated per-qubit
    operation renormalized to determinant one; successProbability is the
    squared norm of the unnormalized filtered state (product of the
    per-step branch probabilities); iterations counts full 4-qubit
    cycles.  status is one of converged / diverging / max-iterations;
    a singular filter (rank-one reduction) reports diverging with
    successProbability 0, the limit value of the failing branch.
    """

    finalState: object
    filters: LocalOperation
    successProbability: float
    iterations: int
    status: str


def _step(psi, qubit):
    """Unnormalized filtered state and filter for one (normalized) input."""
    rho2 = 2.0 * reduced_density(psi, {qubit}).entries
    f = herm2_fn(rho2, "invsqrt")
    det = (rho2[0, 0] * rho2[1, 1] - rho2[0, 1] * rho2[1, 0]).real
    f = f * max(det, 0.0) ** 0.25
    mats = [np.eye(2, dtype=complex)] * 4
    mats[qubit - 1] = f
    return apply_local(psi, LocalOperation(mats, kind="determinant-one")), f


def distill_step(state, qubit):
    """One filtering step: returns (normalized new state, 2x2 filter).

    Raises SingularFilterError when the qubit's reduction is numerically
    rank-one (the trajectory is diverging).
    """
    if qubit not in (1, 2, 3, 4):
        raise InvalidInputError("qubit must be 1..4")
    filtered, f = _step(state.normalized(), qubit)
    return filtered.normalized(), f


def _unit_det(mat):
    d = np.sqrt(complex(np.linalg.det(mat)))
    return mat / d


def distill(state, max_iter=1000, tol=1e-10, floor=1e-8):
    """Drive a state to the locally stochastic form by cyclic filtering.

    Converged when every reduction satisfies |2 rho_q - I|_F < tol;
    diverging when the accumulated success probability drops below
    ``floor`` (or a reduction becomes singular); max-iterations after
    ``max_iter`` full cycles.
    """
    if max_iter < 1:
        raise InvalidInputError("max_iter must be >= 1")
    psi = state.normalized()
    acc = [np.eye(2, dtype=complex) for _ in range(4)]
    prob = 1.0
    iterations = 0
    status = "max-iterations"

    def residual(s):
        eye = np.eye(2)
        return max(
            float(np.linalg.norm(2.0 * reduced_density(s, {q}).entries - eye))
            for q in (1, 2, 3, 4)
        )

    while iterations < max_iter:
        if residual(psi) < tol:
            status = "converged"
            break
        try:
            for q in (1, 2, 3, 4):
                filtered, f = _step(psi, q)
                prob *= filtered.norm2
                psi = filtered.normalized()
                acc[q - 1] = f @ acc[q - 1]
        except SingularFilterError:
            prob = 0.0
            status = "diverging"
            break
        iterations += 1
        if prob < floor:
            status = "diverging"
            break
    else:
        if residual(psi) < tol:
            status = "converged"

    filters = LocalOperation([_unit_det(m) for m in acc], kind="determinant-one")
    return DistillationResult(
        finalState=psi,
        filters=filters,
        successProbability=float(prob),
        iterations=iterations,
        status=status,
    )
