"""SLOCC invariants and family classification for 4-qubit pure states.

The spectral signature is the quadruple of square roots (Re >= 0 convention)
of the eigenvalues of R R^T.  The family label comes from the Jordan block
structure of the 8x8 matrix P, measured for the three pair splits 12|34,
13|24 and 14|23; the multiset of the three structures plus the single-qubit
rank multiset picks a row of a fixed table covering all nine families and
their degenerate parameter slices.

Eigenvalue clustering is never done by raw distance: root multiplicities
are fitted in coefficient space (every candidate multiplicity pattern is
fitted to the exact characteristic polynomial of R R^T and the coarsest
pattern that fits within tolerance wins).  Raw distance clustering breaks
down for defective eigenvalues, whose numerical scatter grows like the
noise to the power 1/blocksize.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousStructureError, InvalidInputError
from .linalg import char_poly4, eig4
from .magic import to_P, to_R
from .states import QubitPermutation, permute_qubits, reduced_density

# images[k] = new position of qubit k+1; within-pair order is irrelevant
# because a swap inside a pair acts as an orthogonal factor on R.
PAIRINGS = {
    "12|34": (1, 2, 3, 4),
    "13|24": (1, 3, 2, 4),
    "14|23": (1, 4, 3, 2),
}

_SHAPES = {
    0: [()],
    1: [(1,)],
    2: [(2,), (1, 1)],
    3: [(3,), (2, 1), (1, 1, 1)],
    4: [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)],
}


def _canon_key(z):
    return (-abs(z), -z.real, -z.imag)


def _canon_sqrt(s):
    z = np.sqrt(complex(s))
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        z = -z
    return z


@dataclass(frozen=True)
class SpectralSignature:
    """quad: the four P eigenvalues with non-negative real part, sorted by
    (-|z|, -Re, -Im); rrt_eigenvalues: eigenvalues of R R^T (same order
    convention); norm: squared norm of the source state."""

    quad: tuple
    rrt_eigenvalues: tuple
    norm: float


@dataclass(frozen=True)
class SegreCharacteristic:
    """clusters: (eigenvalue, block sizes) pairs for the 8x8 P; pairing:
    index pairs (i, j) into clusters marking the +-lambda mirrors."""

    clusters: tuple
    pairing: tuple


@dataclass(frozen=True)
class FamilyLabel:
    family: str
    params: tuple
    diagnostics: dict = field(default_factory=dict, compare=False)


def signature(state, tol=1e-6):
    """SLOCC spectral signature (normalizes the input internally).

    Zero eigenvalues are detected from the characteristic coefficients,
    not from the raw roots: a zero of algebraic multiplicity m means the
    m trailing coefficients vanish, and the coefficients are accurate to
    roundoff while the roots of a defective zero scatter like
    roundoff^(1/m) (1e-4 for a nilpotent R R^T).  The matching number of
    smallest roots is snapped to exactly zero, which is what makes the
    monotones of the zero-quad families vanish to full precision.

    ``tol`` is accepted for interface symmetry with segre/classify; no
    clustering happens here.
    """
    norm2 = state.norm2
    R = to_R(state.normalized())
    rrt_mat = R @ R.T
    roots = sorted(eig4(rrt_mat), key=abs)
    coeffs = char_poly4(rrt_mat)
    scale = max(float(np.linalg.norm(rrt_mat, 2)), 1e-300)
    zeros = 0
    for j in (4, 3, 2, 1):
        if abs(coeffs[j - 1]) > 1e-11 * scale**j:
            break
        zeros += 1
    for i in range(zeros):
        roots[i] = 0.0 + 0.0j
    rrt = sorted(roots, key=_canon_key)
    quad = sorted((_canon_sqrt(s) for s in rrt), key=_canon_key)
    return SpectralSignature(tuple(quad), tuple(rrt), norm2)


def _staircase(P, lam, rank_tol, expect=None, gap_floor=1e3):
    """Jordan block sizes of P at eigenvalue lam by ranks of (P - lam I)^k.

    The shift must be the root fitted from the characteristic
    coefficients, not a raw eigenvalue estimate: the fitted root is
    accurate to roundoff, so the collapsing singular values land at
    machine level even though raw estimates of a defective eigenvalue
    scatter by roughly roundoff^(1/blocksize).

    Without ``expect`` (the zero staircase, where the kernel is
    structural) ranks are counted against rank_tol * sigma_max^k.  An
    absolute cutoff is not safe for nonzero eigenvalues: the mirror
    cluster at -lam is itself defective, and the smallest singular value
    of its k-th power dives like |2 lam|^(k+m-1), which crosses any fixed
    threshold once |lam| is small.  With ``expect`` given (the algebraic
    multiplicity from the polynomial fit), each power instead counts the
    kernel by the widest singular-value gap among the admissible kernel
    sizes, and stalls when the best gap is thinner than gap_floor.
    """
    A = P - lam * np.eye(8)
    base = np.linalg.svd(A, compute_uv=False)[0]
    if base == 0.0:
        return (1,) * 8, 8
    kernels = [0]
    inc = expect if expect is not None else 8
    M = np.eye(8, dtype=complex)
    for k in range(1, 9):
        M = M @ A
        s = np.linalg.svd(M, compute_uv=False)
        if expect is None:
            kern = 8 - int(np.count_nonzero(s > rank_tol * base**k))
        else:
            kern, best = kernels[-1], gap_floor
            for j in range(kernels[-1] + 1, min(expect, kernels[-1] + inc) + 1):
                ratio = s[7 - j] / max(s[8 - j], 1e-300)
                if ratio >= best:
                    kern, best = j, ratio
        kernels.append(kern)
        if kernels[-1] == kernels[-2]:
            kernels.pop()
            break
        inc = kernels[-1] - kernels[-2]
        if expect is not None and kernels[-1] >= expect:
            break
    counts = [kernels[k] - kernels[k - 1] for k in range(1, len(kernels))]
    counts.append(0)
    blocks = []
    for size in range(1, len(counts)):
        blocks.extend([size] * (counts[size - 1] - counts[size]))
    blocks.sort(reverse=True)
    return tuple(blocks), kernels[-1]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _best_grouping(values, shape):
    """Initial grouping of eigenvalue estimates for a multiplicity shape:
    the set partition with matching sizes and least within-group scatter."""
    best, best_scatter = None, None
    for part in _set_partitions(list(values)):
        if tuple(sorted((len(g) for g in part), reverse=True)) != shape:
            continue
        scatter = sum(
            float(np.sum(np.abs(np.array(g) - np.mean(g)) ** 2)) for g in part
        )
        if best is None or scatter < best_scatter:
            best, best_scatter = part, scatter
    if best is None:
        return []
    # Order must match the shape tuple (descending sizes): the fitted root
    # list inherits this order and is zipped back against the shape.
    best.sort(key=len, reverse=True)
    return [sorted(g, key=_canon_key) for g in best]


def _poly_coeffs(roots, mults, n_zero):
    p = np.array([1.0 + 0j])
    for s, m in zip(roots, mults):
        for _ in range(m):
            p = np.convolve(p, [1.0, -s])
    for _ in range(n_zero):
        p = np.convolve(p, [1.0, 0.0])
    return p[1:]


def _fit_partition(coeffs, groups, n_zero, scale):
    """Gauss-Newton fit of a root/multiplicity pattern to exact char-poly
    coefficients.  Returns (roots, relative residual); roots[j] refines
    the mean of groups[j]."""
    mults = [len(g) for g in groups]
    roots = np.array([np.mean(g) for g in groups], dtype=complex)
    w = np.maximum(scale ** np.arange(1, 5), 1e-300)
    res = None
    for _ in range(40):
        model = _poly_coeffs(roots, mults, n_zero)
        res = (model - coeffs) / w
        if roots.size == 0:
            break
        J = np.zeros((4, roots.size), dtype=complex)
        for j in range(roots.size):
            dp = np.array([1.0 + 0j])
            for i, (s, m) in enumerate(zip(roots, mults)):
                reps = m - 1 if i == j else m
                for _ in range(reps):
                    dp = np.convolve(dp, [1.0, -s])
            for _ in range(n_zero):
                dp = np.convolve(dp, [1.0, 0.0])
            J[:, j] = -mults[j] * dp / w
        step, *_ = np.linalg.lstsq(J, -res, rcond=None)
        roots = roots + step
        if np.max(np.abs(step)) <= 1e-15 * max(scale, 1e-300):
            model = _poly_coeffs(roots, mults, n_zero)
            res = (model - coeffs) / w
            break
    return roots, float(np.linalg.norm(res))


def _pairing_structure(state, images, tol, rank_tol, fit_tol):
    """Measured structure of one pair split: ((zero blocks, nonzero block
    tuples), cluster detail, zero multiplicity, margin)."""
    permuted = permute_qubits(state, QubitPermutation(images))
    R = to_R(permuted)
    P = to_P(R)

    zero_blocks, m0 = _staircase(P, 0.0, rank_tol)
    if m0 % 2:
        raise AmbiguousStructureError(
            "odd zero multiplicity %d of P (rank staircase is inconsistent)"
            % m0,
            candidates=[("zero-staircase", zero_blocks)],
        )
    n = 4 - m0 // 2

    clusters = []
    margin = np.inf
    if n > 0:
        rrt = R @ R.T
        coeffs = char_poly4(rrt)
        estimates = sorted(eig4(rrt), key=abs)[4 - n :]
        scale = max(max(abs(e) for e in estimates), 1e-300)

        fits = []
        for shape in _SHAPES[n]:
            groups = _best_grouping(estimates, shape)
            roots, res = _fit_partition(coeffs, groups, 4 - n, scale)
            fits.append((shape, roots, res))

        passing = [f for f in fits if f[2] < fit_tol]
        if not passing:
            best = sorted(fits, key=lambda f: f[2])[:2]
            raise AmbiguousStructureError(
                "no multiplicity pattern fits the characteristic polynomial "
                "within %.1e (best residuals %s)"
                % (fit_tol, ", ".join("%.2e" % f[2] for f in best)),
                candidates=[(f[0], f[2]) for f in best],
            )
        fewest = min(len(f[0]) for f in passing)
        finalists = [f for f in passing if len(f[0]) == fewest]
        if len(finalists) > 1:
            raise AmbiguousStructureError(
                "two multiplicity patterns fit equally well: %s"
                % ", ".join("%s (res %.2e)" % (f[0], f[2]) for f in finalists),
                candidates=[(f[0], f[2]) for f in finalists],
            )
        shape, roots, res = finalists[0]
        near = [
            f
            for f in fits
            if f[0] != shape and len(f[0]) <= fewest and f[2] < 2 * fit_tol
        ]
        if near:
            raise AmbiguousStructureError(
                "structure %s is ambiguous: %s also fits within twice the "
                "tolerance (residuals %.2e vs %.2e)"
                % (shape, near[0][0], res, near[0][2]),
                candidates=[(shape, res), (near[0][0], near[0][2])],
            )
        margin = min(
            (f[2] for f in fits if f[0] != shape and len(f[0]) <= fewest),
            default=np.inf,
        ) / fit_tol

        xis = [_canon_sqrt(s) for s in roots]
        xmax = max(abs(x) for x in xis)
        for i in range(len(xis)):
            if abs(xis[i]) < tol * (1.0 + xmax):
                raise AmbiguousStructureError(
                    "fitted nonzero eigenvalue %.3e is below the clustering "
                    "tolerance; zero structure is ambiguous" % abs(xis[i]),
                    candidates=[(shape, res)],
                )
            for j in range(i + 1, len(xis)):
                if abs(xis[i] - xis[j]) < tol * (1.0 + xmax):
                    raise AmbiguousStructureError(
                        "fitted eigenvalues %.6g and %.6g are closer than the "
                        "clustering tolerance but a merged pattern did not fit"
                        % (abs(xis[i]), abs(xis[j])),
                        candidates=[(shape, res)],
                    )

        for xi, mult in zip(xis, shape):
            blocks, measured = _staircase(P, xi, rank_tol, expect=mult)
            mirror, measured_m = _staircase(P, -xi, rank_tol, expect=mult)
            if measured != mult or measured_m != mult or blocks != mirror:
                raise AmbiguousStructureError(
                    "rank staircase at %.6g gives multiplicity %d/%d "
                    "(mirror %d), expected %d from the polynomial fit"
                    % (abs(xi), measured, measured_m, measured_m, mult),
                    candidates=[(shape, res), ("staircase", blocks, mirror)],
                )
            clusters.append((xi, blocks))

    structure = (
        zero_blocks,
        tuple(sorted(blocks for _, blocks in clusters)),
    )
    return structure, clusters, m0, margin


def local_ranks(state, tol=1e-10):
    """Sorted tuple of the ranks of the four single-qubit reductions."""
    ranks = []
    for q in (1, 2, 3, 4):
        lam = np.linalg.eigvalsh(reduced_density(state, {q}).entries)
        ranks.append(int(np.count_nonzero(lam > tol)))
    return tuple(sorted(ranks))


def segre(state, tol=1e-6, rank_tol=1e-8, fit_tol=1e-8):
    """Jordan structure of P (pair split 12|34), clustered by the
    coefficient-space multiplicity fit."""
    psi = state.normalized()
    structure, clusters, m0, _ = _pairing_structure(
        psi, PAIRINGS["12|34"], tol, rank_tol, fit_tol
    )
    entries = []
    pairing = []
    if m0:
        entries.append((0.0 + 0.0j, structure[0]))
    for xi, blocks in clusters:
        pairing.append((len(entries), len(entries) + 1))
        entries.append((xi, blocks))
        entries.append((-xi, blocks))
    total = sum(sum(b) for _, b in entries)
    if total != 8:
        raise AmbiguousStructureError(
            "cluster multiplicities sum to %d, not 8" % total,
            candidates=[entries],
        )
    return SegreCharacteristic(tuple(entries), tuple(pairing))


# ---------------------------------------------------------------------------
# The family table.
#
# Key: (sorted multiset of the three pair-split structures, sorted local
# ranks).  Value: (family, canonical structure for parameter extraction
# (None: read the 12|34 split), note or None).  Rows were enumerated by
# sweeping every parameter slice of every family constructor (including all
# zero/equal-parameter degenerations) through the measurement pipeline.
# ---------------------------------------------------------------------------

_Z = ()


def _row(structs, family, canonical=None, note=None):
    return (tuple(sorted(structs)), family, canonical, note)


_BOUNDARY_NOTE = (
    "a measure-zero boundary stratum of L_abc2 (both outer parameters zero) "
    "shares this structure and is reported as L_ab3"
)

_OVERLAP_NOTE = (
    "L_abc2 slices with the double root equal to an outer parameter are "
    "SLOCC-equal to L_ab3 states and collapse onto this row"
)

_TABLE_ROWS = [
    # G_abcd: generic and every parameter degeneration
    _row([(_Z, ((1,), (1,), (1,), (1,)))] * 3, "G_abcd"),
    _row(
        [(_Z, ((1,), (1,), (1,), (1,)))] * 2 + [((1, 1), ((1,), (1,), (1,)))],
        "G_abcd",
    ),
    _row([(_Z, ((1,), (1,), (1, 1)))] * 3, "G_abcd"),
    _row(
        [(_Z, ((1,), (1,), (1, 1)))] * 2 + [((1, 1), ((1,), (1, 1)))],
        "G_abcd",
    ),
    _row([(_Z, ((1,), (1, 1, 1)))] * 3, "G_abcd"),
    _row([(_Z, ((1,), (1, 1, 1)))] * 2 + [((1, 1), ((1, 1, 1),))], "G_abcd"),
    _row(
        [(_Z, ((1, 1), (1, 1)))] * 2 + [((1, 1, 1, 1), ((1,), (1,)))],
        "G_abcd",
    ),
    _row([((1, 1, 1, 1), ((1, 1),))] * 3, "G_abcd"),
    _row(
        [(_Z, ((1, 1, 1, 1),))] * 2 + [((1, 1, 1, 1, 1, 1), ((1,),))],
        "G_abcd",
    ),
    # L_abc2
    _row([(_Z, ((1,), (1,), (2,)))] * 3, "L_abc2", (_Z, ((1,), (1,), (2,)))),
    _row(
        [(_Z, ((1,), (1,), (2,)))] * 2 + [((1, 1), ((1,), (2,)))],
        "L_abc2",
        (_Z, ((1,), (1,), (2,))),
    ),
    _row(
        [(_Z, ((1, 1), (2,)))] * 2 + [((2, 2), ((1,), (1,)))],
        "L_abc2",
        (_Z, ((1, 1), (2,))),
    ),
    _row(
        [((1, 1, 1, 1), ((2,),))] + [((2, 2), ((1, 1),))] * 2,
        "L_abc2",
        ((1, 1, 1, 1), ((2,),)),
    ),
    _row(
        [((2, 2, 1, 1, 1, 1), _Z)] * 3,
        "L_abc2",
        ((2, 2, 1, 1, 1, 1), _Z),
        None,
    ),
    # L_ab3 (including the slices shared with L_abc2, see notes)
    _row(
        [(_Z, ((1,), (2, 1)))] * 3,
        "L_ab3",
        (_Z, ((1,), (2, 1))),
        _OVERLAP_NOTE,
    ),
    _row(
        [(_Z, ((1,), (2, 1)))] * 2 + [((1, 1), ((2, 1),))],
        "L_ab3",
        ((1, 1), ((2, 1),)),
        _OVERLAP_NOTE,
    ),
    _row(
        [(_Z, ((2, 1, 1),))] * 2 + [((2, 2, 1, 1), ((1,),))],
        "L_ab3",
        (_Z, ((2, 1, 1),)),
        _BOUNDARY_NOTE,
    ),
    _row(
        [(_Z, ((3, 1),))] * 2 + [((3, 3), ((1,),))],
        "L_ab3",
        ((3, 3), ((1,),)),
    ),
    _row([((3, 3, 1, 1), _Z)] * 3, "L_ab3", ((3, 3, 1, 1), _Z)),
    # L_a2b2
    _row(
        [(_Z, ((2,), (2,)))] * 2 + [((3, 1), ((1,), (1,)))],
        "L_a2b2",
        (_Z, ((2,), (2,))),
    ),
    _row(
        [(_Z, ((2, 2),))] * 2 + [((3, 1, 1, 1), ((1,),))],
        "L_a2b2",
        (_Z, ((2, 2),)),
    ),
    _row(
        [((2, 2), ((2,),))] * 2 + [((3, 1), ((1, 1),))],
        "L_a2b2",
        ((2, 2), ((2,),)),
    ),
    _row(
        [((2, 2, 2, 2), _Z)] * 2 + [((3, 1, 1, 1, 1, 1), _Z)],
        "L_a2b2",
        ((2, 2, 2, 2), _Z),
    ),
    # L_a4
    _row(
        [(_Z, ((4,),))] * 2 + [((5, 1), ((1,),))],
        "L_a4",
        (_Z, ((4,),)),
    ),
    _row([((4, 4), _Z)] * 2 + [((5, 1, 1, 1), _Z)], "L_a4", ((4, 4), _Z)),
    # L_a2_0_31
    _row([((3, 1), ((2,),))] * 3, "L_a2_0_31", ((3, 1), ((2,),))),
    _row([((3, 2, 2, 1), _Z)] * 3, "L_a2_0_31", ((3, 2, 2, 1), _Z)),
    # parameterless families
    _row([((3, 3, 1, 1), _Z)] * 3, "L_0_31_0_31", ((3, 3, 1, 1), _Z)),
    _row([((5, 3), _Z)] * 3, "L_0_53", ((5, 3), _Z)),
    _row([((7, 1), _Z)] * 3, "L_0_71", ((7, 1), _Z)),
]

# Local-rank multisets: (2,2,2,2) everywhere except the four product-like
# rows, which is also what disambiguates W4 (L_ab3) from GHZ3 (L_0_31_0_31):
# both have zero structure (3,3,1,1) in all three splits.
_RANK_EXCEPTIONS = {
    (((2, 2, 1, 1, 1, 1), _Z),) * 3: (1, 1, 1, 1),
    tuple(sorted([((2, 2, 2, 2), _Z)] * 2 + [((3, 1, 1, 1, 1, 1), _Z)])): (
        1,
        1,
        2,
        2,
    ),
    (((3, 2, 2, 1), _Z),) * 3: (1, 2, 2, 2),
}

_GHZ3_TRIP = (((3, 3, 1, 1), _Z),) * 3

_TABLE = {}
for _trip, _family, _canonical, _note in _TABLE_ROWS:
    if _trip == _GHZ3_TRIP:
        _ranks = (1, 2, 2, 2) if _family == "L_0_31_0_31" else (2, 2, 2, 2)
    else:
        _ranks = _RANK_EXCEPTIONS.get(_trip, (2, 2, 2, 2))
    _TABLE[(_trip, _ranks)] = (_family, _canonical, _note)


def _quad_values(m0, clusters):
    """Rebuild the 4 signature values of one pair split from its zero
    multiplicity and nonzero clusters."""
    vals = [0.0 + 0.0j] * (m0 // 2)
    for xi, blocks in clusters:
        vals.extend([xi] * sum(blocks))
    if len(vals) != 4:
        raise AmbiguousStructureError(
            "pair-split multiplicities rebuild %d signature values, not 4"
            % len(vals),
            candidates=[clusters],
        )
    return vals


def _extract_params(family, m0, clusters):
    quad = _quad_values(m0, clusters)
    if family == "G_abcd":
        return tuple(sorted(quad, key=_canon_key))
    if family == "L_abc2":
        doubles = [xi for xi, blocks in clusters if 2 in blocks]
        c = doubles[0] if doubles else 0.0 + 0.0j
        rest = list(quad)
        for _ in range(2):
            rest.remove(min(rest, key=lambda z: abs(z - c)))
        a, b = sorted(rest, key=_canon_key)
        return (a, b, c)
    if family == "L_ab3":
        big = [xi for xi, blocks in clusters if max(blocks) >= 2]
        a = big[0] if big else 0.0 + 0.0j
        rest = list(quad)
        for _ in range(3):
            rest.remove(min(rest, key=lambda z: abs(z - a)))
        return (a, rest[0])
    if family == "L_a2b2":
        vals = []
        for xi, blocks in clusters:
            vals.extend([xi] * (len(blocks) if blocks == (2, 2) else 1))
        vals.extend([0.0 + 0.0j] * ((m0 // 2) // 2))
        a, b = sorted(vals, key=_canon_key)
        return (a, b)
    if family == "L_a4":
        quads = [xi for xi, blocks in clusters if blocks == (4,)]
        return (quads[0] if quads else 0.0 + 0.0j,)
    if family == "L_a2_0_31":
        doubles = [xi for xi, blocks in clusters if blocks == (2,)]
        return (doubles[0] if doubles else 0.0 + 0.0j,)
    return ()


def _fix_parity(params, psi):
    """Resolve the sign ambiguity of the G_abcd parameters.

    The squared parameters only determine (a, b, c, d) up to sign flips,
    and only an even number of flips can be realized by determinant-one
    local operations; an odd flip lands in a different orbit with the
    same squares.  The product of the true parameters equals det R, so a
    principal-branch extraction that disagrees with it is off by exactly
    one flip, and which entry gets flipped is immaterial (any two single
    flips differ by an even flip).
    """
    det = complex(np.linalg.det(to_R(psi)))
    prod = params[0] * params[1] * params[2] * params[3]
    if abs(prod - det) > abs(prod + det):
        flipped = [-params[0], *params[1:]]
        return tuple(sorted(flipped, key=_canon_key))
    return params


def classify(state, tol=1e-6, rank_tol=1e-8, fit_tol=1e-8):
    """Family label of a state, robust to SLOCC operations and qubit
    permutations.

    Raises AmbiguousStructureError whenever competing structures fit within
    the tolerances; near-boundary parameter choices are reported ambiguous
    rather than silently mislabeled.
    """
    if state.norm2 < 1e-20:
        raise InvalidInputError("state norm is below tolerance")
    psi = state.normalized()

    structures = {}
    details = {}
    margins = {}
    for name, images in PAIRINGS.items():
        structure, clusters, m0, margin = _pairing_structure(
            psi, images, tol, rank_tol, fit_tol
        )
        structures[name] = structure
        details[name] = (m0, clusters)
        margins[name] = margin

    ranks = local_ranks(psi)
    key = (tuple(sorted(structures.values())), ranks)
    try:
        family, canonical, note = _TABLE[key]
    except KeyError:
        raise AmbiguousStructureError(
            "measured structure multiset %s with local ranks %s matches no "
            "family table row (near-boundary parameters?)"
            % (key[0], ranks),
            candidates=[structures],
        ) from None

    if canonical is None:
        extract_from = "12|34"
    else:
        extract_from = next(
            name for name in PAIRINGS if structures[name] == canonical
        )
    m0, clusters = details[extract_from]
    params = _extract_params(family, m0, clusters)
    if family == "G_abcd":
        params = _fix_parity(params, psi)

    diagnostics = {
        "structures": {name: structures[name] for name in PAIRINGS},
        "localRanks": ranks,
        "marginRatio": float(min(margins.values())),
        "extractionSplit": extract_from,
    }
    if note:
        diagnostics["note"] = note
    return FamilyLabel(family, params, diagnostics)
