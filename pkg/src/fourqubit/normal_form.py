"""Local-unitary normal form of the magic-basis matrix R.

Local unitaries act on R as R -> e^{i theta} O1 R O2 with O1, O2 special
orthogonal, so a canonical representative is reached by fixing the global
phase and then diagonalizing Re(R) with the real singular value
decomposition.  The phase cannot be fixed from a single entry of R (no
entry is invariant under the rotations); instead it is chosen to make
trace(R R^T) real and non-negative, which transforms by exactly e^{2i
theta} and therefore commutes with the group action up to an overall
sign.  The sign, and the residual even-sign diagonal gauge of the SVD,
are canonicalized by maximizing a fixed generic linear functional over
the finite candidate set.
"""

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .linalg import real_svd_so4
from .magic import to_R

# Any fixed full-support complex matrix works here; generated once from a
# fixed seed so the canonical gauge is reproducible across runs.
_GAUGE_W = np.random.default_rng(407041).standard_normal(
    (4, 4)
) + 1j * np.random.default_rng(123407).standard_normal((4, 4))

_EVEN_SIGNS = (
    np.array([1.0, 1.0, 1.0, 1.0]),
    np.array([1.0, 1.0, -1.0, -1.0]),
    np.array([1.0, -1.0, 1.0, -1.0]),
    np.array([1.0, -1.0, -1.0, 1.0]),
)


def _functional(N):
    return float(np.real(np.sum(_GAUGE_W.conj() * N)))


@dataclass(frozen=True)
class LUNormalForm:
    """normalR = left @ (phase * R) @ right with Re(normalR) diagonal.

    singularValues are those of Re(phase * R), descending, with any sign
    needed to keep both rotations special orthogonal carried by the last
    entry.  degenerate marks singular-value gaps below 1e-8 (the form is
    then unique only up to reorderings inside the degenerate groups);
    fallbackGauge marks states where trace(R R^T) is too small to fix the
    phase invariantly and an entry-based gauge was used instead.
    """

    normalR: np.ndarray
    phase: complex
    left: np.ndarray
    right: np.ndarray
    singularValues: tuple
    degenerate: bool
    fallbackGauge: bool


def lu_normal_form(state):
    """Canonical form of a pure 4-qubit state under local unitaries."""
    psi = state.normalized()
    R = to_R(psi)
    w = complex(np.trace(R @ R.T))
    fro2 = float(np.sum(np.abs(R) ** 2))
    fallback = abs(w) < 1e-6 * fro2
    if fallback:
        z = R[0, 0]
        if abs(z) < 1e-12 * np.sqrt(fro2):
            z = R.flat[int(np.argmax(np.abs(R)))]
        base = np.conj(z) / abs(z)
    else:
        base = np.exp(-0.5j * np.angle(w))

    best = None
    for sign in (1.0, -1.0):
        p = sign * base
        Rp = p * R
        O1, s, O2 = real_svd_so4(np.real(Rp))
        N = O1.T @ Rp @ O2.T
        for e in _EVEN_SIGNS:
            cand = N * np.outer(e, e)
            val = _functional(cand)
            if best is None or val > best[0]:
                left = e[:, None] * O1.T
                right = O2.T * e[None, :]
                best = (val, cand, p, left, right, s)

    _, N, p, left, right, s = best
    gaps = s[:3] - s[1:]
    sv = np.sort(np.abs(s))[::-1]
    degenerate = bool(np.min(gaps) < 1e-8 or np.min(sv[:3] - sv[1:]) < 1e-8)
    return LUNormalForm(
        normalR=N,
        phase=complex(p),
        left=left,
        right=right,
        singularValues=tuple(float(v) for v in s),
        degenerate=degenerate,
        fallbackGauge=fallback,
    )


def _degenerate_perms(values, tol=1e-8):
    """Permutations of 0..3 that only move indices within groups of
    (nearly) equal |singular value|."""
    mags = np.abs(np.asarray(values))
    groups = []
    current = [0]
    for i in range(1, 4):
        if abs(mags[i] - mags[current[-1]]) < tol:
            current.append(i)
        else:
            groups.append(current)
            current = [i]
    groups.append(current)
    pools = [permutations(g) for g in groups]
    for combo in product(*pools):
        perm = [i for g in combo for i in g]
        yield perm


def _variants(nf):
    """Gauge orbit of a normal form: signed permutations (determinant +1,
    permutation part restricted to degenerate singular-value groups)
    acting as S^T N S, plus the overall phase sign."""
    N = nf.normalR
    perms = list(_degenerate_perms(nf.singularValues)) if nf.degenerate else [
        [0, 1, 2, 3]
    ]
    seen = []
    for perm in perms:
        base = N[np.ix_(perm, perm)]
        for e in _EVEN_SIGNS:
            for phase_sign in (1.0, -1.0):
                seen.append(phase_sign * base * np.outer(e, e))
    return seen


def lu_equivalent(s1, s2, tol=1e-8):
    """Whether two states are related by local unitaries.

    Returns (equivalent, residual): the smallest max-entry difference
    between the normal form of s1 and the gauge orbit of the normal form
    of s2.  Both canonical forms are already gauge-fixed, but near-ties in
    the gauge functional would otherwise turn into false negatives, so the
    finite orbit is searched explicitly.
    """
    nf1 = lu_normal_form(s1)
    nf2 = lu_normal_form(s2)
    residual = min(
        float(np.max(np.abs(nf1.normalR - cand))) for cand in _variants(nf2)
    )
    return residual <= tol, residual
