"""Pure 4-qubit states, local operations, partial traces, and samplers.

Basis convention: amplitudes are indexed by the bit string i1 i2 i3 i4 with
qubit 1 most significant, so index = 8*i1 + 4*i2 + 2*i3 + i4.  Qubit indices
in the API are 1-based throughout.
"""

import numpy as np

from .errors import InvalidInputError

_KINDS = ("unitary", "determinant-one", "general-invertible")


class PureState4:
    """A pure state of 4 qubits, held as 16 complex amplitudes.

    Unnormalized states are allowed (SLOCC operations do not preserve norm);
    ``normalized()`` returns a unit-norm copy.
    """

    def __init__(self, amplitudes):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (16,):
            raise InvalidInputError(
                "expected 16 amplitudes, got %d" % amps.size
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise InvalidInputError("non-finite amplitude")
        if np.vdot(amps, amps).real <= 0.0:
            raise InvalidInputError("state has zero norm")
        self.amplitudes = amps.copy()

    @property
    def norm2(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def norm(self):
        return float(np.sqrt(self.norm2))

    @property
    def is_normalized(self):
        return abs(self.norm2 - 1.0) <= 1e-12

    def normalized(self):
        return PureState4(self.amplitudes / self.norm)

    def tensor(self):
        """Amplitudes reshaped to a (2,2,2,2) tensor, qubit 1 first."""
        return self.amplitudes.reshape(2, 2, 2, 2)

    def __repr__(self):
        return "PureState4(norm2=%.6g)" % self.norm2


def basis_state(label):
    """Computational basis state from a 4-bit string, e.g. '0110'."""
    if len(label) != 4 or any(ch not in "01" for ch in label):
        raise InvalidInputError("basis label must be 4 bits, got %r" % label)
    amps = np.zeros(16, dtype=complex)
    amps[int(label, 2)] = 1.0
    return PureState4(amps)


class LocalOperation:
    """A quadruple (A1, A2, A3, A4) of one-qubit operators.

    kind is one of 'unitary', 'determinant-one', 'general-invertible' and is
    checked at construction.
    """

    def __init__(self, ops, kind="general-invertible"):
        mats = [np.asarray(A, dtype=complex) for A in ops]
        if len(mats) != 4 or any(A.shape != (2, 2) for A in mats):
            raise InvalidInputError("LocalOperation needs four 2x2 matrices")
        if any(not np.all(np.isfinite(A.view(float))) for A in mats):
            raise InvalidInputError("non-finite operator entry")
        if kind not in _KINDS:
            raise InvalidInputError("unknown kind %r" % kind)
        for A in mats:
            det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
            if kind == "unitary":
                if np.max(np.abs(A @ A.conj().T - np.eye(2))) > 1e-10:
                    raise InvalidInputError("operator is not unitary")
            elif kind == "determinant-one":
                if abs(det - 1.0) > 1e-10:
                    raise InvalidInputError("operator determinant is not 1")
            else:
                if abs(det) == 0.0:
                    raise InvalidInputError("operator is singular")
        self.ops = tuple(mats)
        self.kind = kind

    @classmethod
    def identity(cls):
        return cls([np.eye(2)] * 4, kind="unitary")

    def compose(self, other):
        """The operation acting as self after other (entrywise A_i @ B_i)."""
        if self.kind == other.kind:
            kind = self.kind
        else:
            kind = "general-invertible"
        return LocalOperation(
            [A @ B for A, B in zip(self.ops, other.ops)], kind=kind
        )


class QubitPermutation:
    """A relabeling of the 4 qubits.

    ``images[k]`` is the new (1-based) position of qubit k+1.
    """

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        if sorted(images) != [1, 2, 3, 4]:
            raise InvalidInputError("permutation must be a bijection on 1..4")
        self.images = images

    @classmethod
    def identity(cls):
        return cls((1, 2, 3, 4))

    def inverse(self):
        inv = [0] * 4
        for old, new in enumerate(self.images):
            inv[new - 1] = old + 1
        return QubitPermutation(inv)


def apply_local(state, op):
    """(A1 x A2 x A3 x A4) |psi>, unnormalized."""
    t = state.tensor()
    A1, A2, A3, A4 = op.ops
    out = np.einsum("ai,bj,ck,dl,ijkl->abcd", A1, A2, A3, A4, t)
    return PureState4(out.reshape(16))


def permute_qubits(state, perm):
    """Relabel qubits: amplitude of the new index string equals the original."""
    if not isinstance(perm, QubitPermutation):
        perm = QubitPermutation(perm)
    axes = [0] * 4
    for old, new in enumerate(perm.images):
        axes[new - 1] = old
    return PureState4(np.transpose(state.tensor(), axes).reshape(16))


class DensityMatrix:
    """A reduced density operator on 1, 2, or 3 of the qubits."""

    def __init__(self, entries, subsystem):
        entries = np.asarray(entries, dtype=complex)
        k = entries.shape[0]
        if entries.shape != (k, k) or k not in (2, 4, 8):
            raise InvalidInputError("density matrix must be 2x2, 4x4 or 8x8")
        scale = max(1.0, float(np.max(np.abs(entries))))
        if np.max(np.abs(entries - entries.conj().T)) > 1e-12 * scale:
            raise InvalidInputError("density matrix is not Hermitian")
        if np.trace(entries).real <= 0:
            raise InvalidInputError("density matrix has non-positive trace")
        if np.min(np.linalg.eigvalsh(entries)) < -1e-12 * scale:
            raise InvalidInputError("density matrix has a negative eigenvalue")
        self.entries = 0.5 * (entries + entries.conj().T)
        self.subsystem = tuple(sorted(subsystem))

    def __repr__(self):
        return "DensityMatrix(subsystem=%r)" % (self.subsystem,)


def reduced_density(state, keep):
    """Partial trace keeping the given 1-based qubit indices.

    The input is normalized internally, so the result has unit trace.
    """
    keep = tuple(sorted(set(int(q) for q in keep)))
    if not keep or len(keep) >= 4 or any(q < 1 or q > 4 for q in keep):
        raise InvalidInputError("keep must be a proper nonempty subset of 1..4")
    t = state.normalized().tensor()
    drop = [q - 1 for q in range(1, 5) if q not in keep]
    order = [q - 1 for q in keep] + drop
    mat = np.transpose(t, order).reshape(2 ** len(keep), 2 ** len(drop))
    rho = mat @ mat.conj().T
    return DensityMatrix(rho, keep)


def _as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample(kind, seed, cond_bound=10.0):
    """Seeded samplers: 'haar_state', 'su2', or 'sl2_det1'.

    ``seed`` may be an integer or a numpy Generator.  sl2_det1 draws a
    Ginibre matrix scaled to determinant 1 and rejects condition numbers
    above ``cond_bound``.
    """
    rng = _as_rng(seed)
    if kind == "haar_state":
        z = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        return PureState4(z / np.linalg.norm(z))
    if kind == "su2":
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        q, r = np.linalg.qr(g)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        det = q[0, 0] * q[1, 1] - q[0, 1] * q[1, 0]
        return q / np.sqrt(det)
    if kind == "sl2_det1":
        while True:
            g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
            if abs(det) < 1e-6:
                continue
            a = g / np.sqrt(det)
            if np.linalg.cond(a) <= cond_bound:
                return a
    raise InvalidInputError("unknown sample kind %r" % kind)
