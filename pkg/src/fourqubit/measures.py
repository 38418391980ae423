"""Entanglement monotones, concurrence, 3-tangle, and decomposition
witnesses for 4-qubit pure states.

The monotones M_alpha are built from the spectral signature quad; the
mixed-state quantities (concurrence of 2-qubit reductions, averaged
square-root 3-tangle of 3-qubit reductions) work on the reduced density
operators.  A reduced 3-qubit operator of a pure 4-qubit state has rank
at most 2, so its pure-state decompositions are parameterized by right-
unitary mixings of an 8x2 square root; the witness for the generic
family exhibits the specific mixer whose four output vectors all have
vanishing 3-tangle.
"""

from dataclasses import dataclass

import numpy as np

from .classify import classify, signature
from .errors import InvalidInputError
from .states import DensityMatrix, _as_rng, reduced_density

_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class MonotoneValue:
    alpha: int
    value: float


def monotone_M(state, alpha):
    """M_alpha = |sum of quad^alpha|^(2/alpha) for a positive integer alpha.

    Integer powers only: fractional powers of the complex quad entries
    would need a branch choice on top of the Re >= 0 convention.
    """
    if int(alpha) != alpha or alpha < 1:
        raise InvalidInputError("alpha must be a positive integer")
    alpha = int(alpha)
    quad = signature(state).quad
    total = 0.0 + 0.0j
    for q in quad:
        power = 1.0 + 0.0j
        for _ in range(alpha):
            power *= q
        total += power
    return MonotoneValue(alpha=alpha, value=float(abs(total) ** (2.0 / alpha)))


def concurrence(rho):
    """Wootters concurrence of a 2-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy).  Computed from the
    similar Hermitian matrix sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho):
    the product form has degenerate eigenvalues for many structured
    states, which a non-symmetric solver only resolves to sqrt(eps), while
    the Hermitian eigenproblem keeps them at working precision.
    """
    if isinstance(rho, DensityMatrix):
        entries = rho.entries
    else:
        entries = DensityMatrix(np.asarray(rho, dtype=complex), (1, 2)).entries
    if entries.shape != (4, 4):
        raise InvalidInputError("concurrence expects a 2-qubit density matrix")
    entries = entries / np.trace(entries).real
    lam, vec = np.linalg.eigh(entries)
    root = (vec * np.sqrt(np.clip(lam, 0.0, None))) @ vec.conj().T
    flipped = _SIGMA_YY @ entries.conj() @ _SIGMA_YY
    lam = np.linalg.eigvalsh(root @ flipped @ root)
    lam = np.sqrt(np.clip(lam, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def three_tangle(psi3):
    """3-tangle of a 3-qubit pure state: 4 |Hdet| with Hdet the degree-4
    hyperdeterminant of the amplitude tensor (big-endian index order)."""
    v = np.asarray(psi3, dtype=complex).reshape(-1)
    if v.shape != (8,):
        raise InvalidInputError("three_tangle expects 8 amplitudes")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("three_tangle expects finite amplitudes")
    n = np.linalg.norm(v)
    if n == 0.0:
        raise InvalidInputError("three_tangle expects a non-zero state")
    v = v / n
    d = (
        v[0] ** 2 * v[7] ** 2
        + v[1] ** 2 * v[6] ** 2
        + v[2] ** 2 * v[5] ** 2
        + v[4] ** 2 * v[3] ** 2
        - 2.0
        * (
            v[0] * v[7] * v[3] * v[4]
            + v[0] * v[7] * v[5] * v[2]
            + v[0] * v[7] * v[6] * v[1]
            + v[3] * v[4] * v[5] * v[2]
            + v[3] * v[4] * v[6] * v[1]
            + v[5] * v[2] * v[6] * v[1]
        )
        + 4.0 * (v[0] * v[6] * v[5] * v[3] + v[7] * v[1] * v[2] * v[4])
    )
    return float(4.0 * abs(d))


@dataclass(frozen=True)
class SqrtDecomposition:
    """sqrtMatrix: 8 x k with rho = sqrtMatrix @ sqrtMatrix^dagger the
    reduced 3-qubit density operator; traced: the qubit that was traced
    out (remaining qubits keep their relative big-endian order)."""

    sqrtMatrix: np.ndarray
    traced: int


def sqrt_decomposition(state, traced):
    """Square root of the 3-qubit reduction of a pure 4-qubit state."""
    if traced not in (1, 2, 3, 4):
        raise InvalidInputError("traced qubit must be 1..4")
    amps = state.normalized().tensor()
    A = np.moveaxis(amps, traced - 1, 0).reshape(2, 8)
    return SqrtDecomposition(sqrtMatrix=A.T.copy(), traced=traced)


def _haar_unitary(n, rng):
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sqrt_tangle_average(dec, samples, seed, terms=4):
    """Mean and standard deviation, across random right-unitary mixings,
    of the decomposition-averaged square-root 3-tangle.

    Each sample draws a Haar k x n right-unitary V (n = max(terms, k)),
    forms the columns w_j of sqrtMatrix @ V, and evaluates
    sum_j |w_j|^2 sqrt(tau(w_j / |w_j|)).
    """
    if samples < 1:
        raise InvalidInputError("samples must be >= 1")
    M = np.asarray(dec.sqrtMatrix, dtype=complex)
    k = M.shape[1]
    n = max(int(terms), k)
    rng = _as_rng(seed)
    values = np.empty(samples)
    for i in range(samples):
        V = _haar_unitary(n, rng)[:k, :]
        W = M @ V
        total = 0.0
        for j in range(n):
            w = W[:, j]
            p = float(np.real(np.vdot(w, w)))
            if p > 1e-30:
                total += p * np.sqrt(three_tangle(w / np.sqrt(p)))
        values[i] = total
    return float(np.mean(values)), float(np.std(values))


@dataclass(frozen=True)
class GabcdTangleWitness:
    """mixer: the 2x4 right-unitary U built from beta; vectors: the four
    3-qubit states (columns of sqrtMatrix @ U), each with vanishing
    3-tangle; reducedRank marks parameter choices where the square root
    is numerically rank-deficient."""

    beta: complex
    q: complex
    r: complex
    mixer: np.ndarray
    vectors: tuple
    sqrtMatrix: np.ndarray
    reducedRank: bool


def gabcd_witness(a, b, c, d):
    """Zero-3-tangle decomposition witness for the generic-family state.

    The reduction of the generic state over qubit 1 has the 8x2 square
    root M = [m1 m2]; the hyperdeterminant of alpha m1 + beta m2 is a
    quadratic in beta^2 whose coefficients are the printed q and r, so
    choosing beta^2 as the small root of 2 r Y^2 + q Y + 2 r = 0 makes
    the 3-tangle of all four mixed columns vanish.
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    nu2 = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2
    if nu2 == 0.0:
        raise InvalidInputError("witness parameters must not all vanish")
    m1 = np.array([a + d, 0, 0, a - d, 0, b + c, b - c, 0], dtype=complex) / 2.0
    m2 = np.array([0, b - c, b + c, 0, a - d, 0, 0, a + d], dtype=complex) / 2.0
    M = np.column_stack([m1, m2]) / np.sqrt(nu2)

    q = (
        8.0 * a**2 * d**2
        + 8.0 * b**2 * c**2
        - 4.0 * a**2 * b**2
        - 4.0 * a**2 * c**2
        - 4.0 * d**2 * b**2
        - 4.0 * d**2 * c**2
    )
    r = (a**2 - d**2) * (b**2 - c**2)
    scale4 = max(abs(a), abs(b), abs(c), abs(d)) ** 4
    if abs(r) <= 1e-13 * max(scale4, abs(q)):
        beta = 0.0 + 0.0j
    else:
        disc = np.sqrt(q**2 - 16.0 * r**2)
        roots = [(-q + disc) / (4.0 * r), (-q - disc) / (4.0 * r)]
        beta = np.sqrt(min(roots, key=abs))

    norm = 1.0 / np.sqrt(2.0 * (1.0 + abs(beta) ** 2))
    mixer = norm * np.array(
        [[1.0, beta, 1.0, -beta], [beta, 1.0, -beta, 1.0]], dtype=complex
    )
    sv = np.linalg.svd(M, compute_uv=False)
    reduced = bool(sv[1] <= 1e-12 * max(sv[0], 1e-300))
    cols = M @ mixer
    vectors = tuple(cols[:, j].copy() for j in range(4))
    return GabcdTangleWitness(
        beta=complex(beta),
        q=q,
        r=r,
        mixer=mixer,
        vectors=vectors,
        sqrtMatrix=M,
        reducedRank=reduced,
    )


_KEPT_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def entanglement_report(
    state, seed, samples=128, alphas=(1, 2, 3, 4, 6), tol=1e-6, rank_tol=1e-8
):
    """All headline quantities for one state, as a plain dict.

    Tangle averages are sampled over random right-unitary mixings; the
    per-reduction decompositionDependent flag records whether the sample
    spread exceeds 1e-6, in which case the mean is an estimate for one
    decomposition family rather than a decomposition-independent value.
    """
    psi = state.normalized()
    label = classify(psi, tol=tol, rank_tol=rank_tol)
    concurrences = {}
    for pair in _KEPT_PAIRS:
        concurrences[pair] = concurrence(reduced_density(psi, set(pair)))
    tangles = {}
    for traced in (1, 2, 3, 4):
        dec = sqrt_decomposition(psi, traced)
        mean, std = sqrt_tangle_average(dec, samples, seed + traced)
        tangles[traced] = {
            "mean": mean,
            "std": std,
            "decompositionDependent": bool(std >= 1e-6),
        }
    return {
        "signature": signature(psi, tol=tol),
        "label": label,
        "monotones": [monotone_M(psi, alpha) for alpha in alphas],
        "concurrences": concurrences,
        "tangleAverages": tangles,
        "samples": int(samples),
        "seed": int(seed),
    }
