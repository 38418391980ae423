"""Small dense complex linear algebra used by the classifier and distiller.

Everything here works on plain numpy arrays: 4x4 complex eigenproblems,
tolerant rank counting, closed-form 2x2 Hermitian matrix functions, and a
determinant +1 real singular value decomposition.
"""

import numpy as np

from .errors import InvalidInputError, SingularFilterError


def char_poly4(M):
    """Coefficients (c1, c2, c3, c4) of det(xI - M) = x^4 + c1 x^3 + ... + c4
    for a complex 4x4 matrix, by the Faddeev-LeVerrier recursion.

    The recursion is exact in exact arithmetic and cheap enough that it is
    also used directly on R R^T when fitting root multiplicities.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (4, 4):
        raise InvalidInputError("char_poly4 expects a 4x4 matrix")
    eye = np.eye(4)
    N = M.copy()
    c1 = -np.trace(N)
    N = M @ (N + c1 * eye)
    c2 = -np.trace(N) / 2.0
    N = M @ (N + c2 * eye)
    c3 = -np.trace(N) / 3.0
    N = M @ (N + c3 * eye)
    c4 = -np.trace(N) / 4.0
    return np.array([c1, c2, c3, c4])


def _polish_roots(roots, coeffs, scale):
    """Newton-polish quartic roots until |p(x)| < 1e-13 * scale^4 (or 50 steps)."""
    c1, c2, c3, c4 = coeffs
    target = 1e-13 * max(scale, 1e-300) ** 4
    out = np.empty(4, dtype=complex)
    for i, x in enumerate(roots):
        for _ in range(50):
            p = (((x + c1) * x + c2) * x + c3) * x + c4
            if abs(p) < target:
                break
            dp = ((4.0 * x + 3.0 * c1) * x + 2.0 * c2) * x + c3
            if dp == 0:
                break
            step = p / dp
            x = x - step
            if abs(step) < 1e-17 * max(abs(x), 1.0):
                break
        out[i] = x
    return out


def eig4(M):
    """The 4 eigenvalues of a complex 4x4 matrix.

    Characteristic polynomial by Faddeev-LeVerrier, roots from the companion
    matrix, then Newton polishing on the polynomial.  Defective spectra are
    fine; the polish simply stops at the residual target or iteration cap.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (4, 4) or not np.all(np.isfinite(M)):
        raise InvalidInputError("eig4 expects a finite 4x4 matrix")
    coeffs = char_poly4(M)
    companion = np.zeros((4, 4), dtype=complex)
    companion[0, :] = -coeffs
    companion[1, 0] = companion[2, 1] = companion[3, 2] = 1.0
    roots = np.linalg.eigvals(companion)
    return _polish_roots(roots, coeffs, np.linalg.norm(M))


def rank_tol(M, tol=1e-8):
    """Number of singular values above tol * sigma_max (0 for the zero matrix)."""
    if tol <= 0:
        raise InvalidInputError("rank_tol needs tol > 0")
    s = np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def herm2_fn(H, fn, floor=1e-12):
    """Apply sqrt or invsqrt to a 2x2 Hermitian matrix in closed form.

    For invsqrt, both eigenvalues must exceed ``floor``; otherwise a
    SingularFilterError is raised (a rank-deficient single-qubit reduction
    cannot be filtered back to maximal mixedness).
    """
    H = np.asarray(H, dtype=complex)
    if H.shape != (2, 2):
        raise InvalidInputError("herm2_fn expects a 2x2 matrix")
    if np.max(np.abs(H - H.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(H))):
        raise InvalidInputError("herm2_fn expects a Hermitian matrix")
    if fn not in ("sqrt", "invsqrt"):
        raise InvalidInputError("fn must be 'sqrt' or 'invsqrt'")

    mid = 0.5 * (H[0, 0].real + H[1, 1].real)
    # hypot form keeps full relative accuracy in the gap; the textbook
    # sqrt(mid^2 - det) cancels catastrophically once the eigenvalues
    # agree to ~1e-8, which is exactly the regime the distiller ends in.
    gap = np.hypot(0.5 * (H[0, 0].real - H[1, 1].real), abs(H[0, 1]))
    lo, hi = mid - gap, mid + gap

    if fn == "invsqrt" and lo <= floor:
        raise SingularFilterError(
            "eigenvalue %.3e at or below floor %.3e" % (lo, floor)
        )

    def f(x):
        if fn == "sqrt":
            return np.sqrt(max(x, 0.0))
        return 1.0 / np.sqrt(x)

    eye = np.eye(2)
    if gap < 1e-14 * max(abs(mid), 1.0):
        # Equal eigenvalues: H is (numerically) a multiple of the identity.
        out = f(mid) * eye
    else:
        proj_hi = (H - lo * eye) / (hi - lo)
        out = f(hi) * proj_hi + f(lo) * (eye - proj_hi)
    return 0.5 * (out + out.conj().T)


def real_svd_so4(M):
    """SVD of a real 4x4 matrix with both orthogonal factors in SO(4).

    Returns (O1, sigma, O2) with M = O1 @ diag(sigma) @ O2, O1 and O2 special
    orthogonal, and sigma sorted by decreasing absolute value.  Any sign
    needed to keep the determinants at +1 is carried by the last sigma entry.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (4, 4) or not np.all(np.isfinite(M)):
        raise InvalidInputError("real_svd_so4 expects a finite real 4x4 matrix")
    U, s, Vt = np.linalg.svd(M)
    s = s.copy()
    if np.linalg.det(U) < 0:
        U[:, 3] = -U[:, 3]
        s[3] = -s[3]
    if np.linalg.det(Vt) < 0:
        Vt[3, :] = -Vt[3, :]
        s[3] = -s[3]
    return U, s, Vt
