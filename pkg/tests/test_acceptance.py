"""End-to-end checks of the toolkit's headline guarantees.

Each test exercises one guarantee at its stated tolerance and budget,
prints a single summary line (visible with -s or in captured output),
and then asserts, so a plain pytest run is also the acceptance report.
"""
import time

import numpy as np

from fourqubit.classify import classify, signature
from fourqubit.distill import distill
from fourqubit.errors import AmbiguousStructureError
from fourqubit.families import FAMILY_ARITY, construct, named_state
from fourqubit.linalg import herm2_fn
from fourqubit.measures import (
    concurrence,
    gabcd_witness,
    monotone_M,
    sqrt_decomposition,
    sqrt_tangle_average,
    three_tangle,
)
from fourqubit.normal_form import lu_equivalent, lu_normal_form
from fourqubit.states import (
    LocalOperation,
    PureState4,
    QubitPermutation,
    apply_local,
    permute_qubits,
    reduced_density,
    sample,
)

ALL_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def report(num, ok, detail):
    print("criterion %d: %s (%s)" % (num, "PASS" if ok else "FAIL", detail))
    return ok


def sorted_quad(state):
    return np.sort_complex(np.asarray(signature(state).quad))


def random_det1(rng):
    return LocalOperation(
        [sample("sl2_det1", rng) for _ in range(4)], "determinant-one"
    )


def test_criterion_01_example_table():
    t0 = time.perf_counter()
    expected = {
        "product_0000": "L_abc2",
        "epr_12": "L_a2b2",
        "two_epr": "G_abcd",
        "ghz3": "L_0_31_0_31",
        "w3": "L_a2_0_31",
        "ghz4": "G_abcd",
        "phi4_cluster": "G_abcd",
        "w4": "L_ab3",
        "la4_companion": "L_a4",
    }
    zero_params = {"product_0000", "epr_12", "w3", "w4", "la4_companion"}
    bad = []
    for name, family in expected.items():
        label = classify(named_state(name))
        if label.family != family:
            bad.append("%s->%s" % (name, label.family))
        elif name in zero_params and np.max(
            np.abs(np.asarray(label.params, dtype=complex))
        ) > 1e-8:
            bad.append("%s params %r" % (name, label.params))
    want = np.sort_complex(np.array([0, 0, 0, 1], dtype=complex))
    if not np.allclose(sorted_quad(named_state("two_epr")), want, atol=1e-8):
        bad.append("two_epr quad")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    detail = "9 example labels, %.2fs" % elapsed
    if bad:
        detail += "; " + ", ".join(bad)
    assert report(1, ok, detail)


def test_criterion_02_signature_slocc_invariance():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2026)
    worst = 0.0
    for _ in range(1000):
        psi = sample("haar_state", rng)
        u1 = sorted_quad(psi)
        u2 = sorted_quad(apply_local(psi, random_det1(rng)))
        u1 = u1 / np.linalg.norm(u1)
        u2 = u2 / np.linalg.norm(u2)
        worst = max(worst, float(np.linalg.norm(u1 - u2)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 10.0
    assert report(
        2, ok, "1000 det-1 trials, worst quad drift %.1e, %.1fs" % (worst, elapsed)
    )


def test_criterion_03_family_round_trip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3033)
    recovered = ambiguous = wrong = trials = 0
    for family, arity in FAMILY_ARITY.items():
        for _ in range(100):
            trials += 1
            p = rng.standard_normal(arity) + 1j * rng.standard_normal(arity)
            psi = construct(family, p, normalize=True)
            out = apply_local(psi, random_det1(rng))
            out = permute_qubits(
                out, QubitPermutation(list(rng.permutation(4) + 1))
            )
            try:
                label = classify(out)
            except AmbiguousStructureError:
                ambiguous += 1
                continue
            if label.family == family:
                recovered += 1
            else:
                wrong += 1
    elapsed = time.perf_counter() - t0
    ok = recovered >= 0.99 * trials and wrong == 0 and elapsed < 60.0
    assert report(
        3,
        ok,
        "%d/%d recovered, %d ambiguous, %d wrong, %.1fs"
        % (recovered, trials, ambiguous, wrong, elapsed),
    )


def test_criterion_04_w4_concurrences_and_monotones():
    w4 = named_state("w4")
    cdev = max(
        abs(concurrence(reduced_density(w4, set(pair))) - 0.5)
        for pair in ALL_PAIRS
    )
    mdev = max(abs(monotone_M(w4, alpha).value) for alpha in (1, 2, 3, 4, 6))
    ok = cdev <= 1e-10 and mdev <= 1e-10
    assert report(
        4, ok, "concurrence dev %.1e, monotone dev %.1e" % (cdev, mdev)
    )


def test_criterion_05_l071_measures():
    psi = construct("L_0_71", (), normalize=True)
    cdev = max(
        concurrence(reduced_density(psi, set(pair))) for pair in ALL_PAIRS
    )
    mdev = sdev = 0.0
    for traced in (2, 3, 4):
        mean, std = sqrt_tangle_average(
            sqrt_decomposition(psi, traced), 128, seed=50 + traced
        )
        mdev = max(mdev, abs(mean - 0.5))
        sdev = max(sdev, std)
    M = sqrt_decomposition(psi, 1).sqrtMatrix
    witnessed = 0.0
    for j in range(M.shape[1]):
        p = float(np.real(np.vdot(M[:, j], M[:, j])))
        if p > 1e-30:
            witnessed += p * three_tangle(M[:, j] / np.sqrt(p))
    ok = cdev <= 1e-10 and mdev <= 1e-6 and sdev < 1e-6 and witnessed < 1e-9
    assert report(
        5,
        ok,
        "concurrences %.1e, tangle mean dev %.1e, std %.1e, traced-1 tau %.1e"
        % (cdev, mdev, sdev, witnessed),
    )


def test_criterion_06_l053_measures():
    psi = construct("L_0_53", (), normalize=True)
    half = {(2, 3), (2, 4)}  # keep-sets left after tracing {1,4} and {1,3}
    cdev = 0.0
    for pair in ALL_PAIRS:
        c = concurrence(reduced_density(psi, set(pair)))
        cdev = max(cdev, abs(c - (0.5 if pair in half else 0.0)))
    mdev = 0.0
    for traced in (2, 3, 4):
        mean, _ = sqrt_tangle_average(
            sqrt_decomposition(psi, traced), 128, seed=60 + traced
        )
        mdev = max(mdev, abs(mean - 0.5))
    ok = cdev <= 1e-10 and mdev <= 1e-6
    assert report(
        6, ok, "concurrence dev %.1e, tangle mean dev %.1e" % (cdev, mdev)
    )


def test_criterion_07_companion_measures():
    psi = named_state("la4_companion")
    mdev = 0.0
    for traced in (1, 4):
        mean, _ = sqrt_tangle_average(
            sqrt_decomposition(psi, traced), 128, seed=70 + traced
        )
        mdev = max(mdev, abs(mean - 2.0 / 3.0))
    cdev = 0.0
    for pair in ALL_PAIRS:
        c = concurrence(reduced_density(psi, set(pair)))
        want = 2.0 / 3.0 if pair == (1, 4) else 0.0
        cdev = max(cdev, abs(c - want))
    ok = mdev <= 1e-6 and cdev <= 1e-10
    assert report(
        7, ok, "tangle mean dev %.1e, concurrence dev %.1e" % (mdev, cdev)
    )


def test_criterion_08_witness_decompositions():
    rng = np.random.default_rng(808)
    worst = 0.0
    degenerate = 0
    for k in range(100):
        a, b, c, d = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        if k % 10 == 9:
            d = a  # exact r = 0, the degenerate beta branch
        wit = gabcd_witness(a, b, c, d)
        if wit.beta == 0.0:
            degenerate += 1
        for v in wit.vectors:
            n = np.linalg.norm(v)
            if n > 1e-12:
                worst = max(worst, three_tangle(v / n))
    ok = worst < 1e-9 and degenerate >= 10
    assert report(
        8,
        ok,
        "100 draws, worst tau %.1e, %d degenerate-branch hits"
        % (worst, degenerate),
    )


def test_criterion_09_distillation():
    t0 = time.perf_counter()
    rng = np.random.default_rng(909)
    worst_red = worst_sig = worst_lu = 0.0
    failures = []
    for k in range(100):
        psi = sample("haar_state", rng)
        res = distill(psi, max_iter=10000)
        if res.status != "converged":
            failures.append("trial %d %s" % (k, res.status))
            continue
        for q in (1, 2, 3, 4):
            rho = reduced_density(res.finalState, {q}).entries
            worst_red = max(
                worst_red, float(np.linalg.norm(rho - np.eye(2) / 2.0))
            )
        scaled = sorted_quad(res.finalState) * np.sqrt(res.successProbability)
        worst_sig = max(
            worst_sig, float(np.max(np.abs(scaled - sorted_quad(psi))))
        )
        try:
            label = classify(res.finalState)
        except AmbiguousStructureError:
            failures.append("trial %d ambiguous" % k)
            continue
        target = construct("G_abcd", label.params, normalize=True)
        equivalent, residual = lu_equivalent(res.finalState, target)
        worst_lu = max(worst_lu, residual)
        if label.family != "G_abcd" or not equivalent:
            failures.append("trial %d not generic" % k)
    w4 = distill(named_state("w4"), max_iter=500)
    prod = distill(named_state("product_0000"))
    diverging = (
        w4.status == "diverging"
        and w4.successProbability < 1e-6
        and prod.status == "diverging"
        and prod.successProbability < 1e-6
    )
    elapsed = time.perf_counter() - t0
    ok = (
        not failures
        and worst_red <= 1e-8
        and worst_sig <= 1e-8
        and diverging
        and elapsed < 60.0
    )
    detail = (
        "100 converged, reduction dev %.1e, signature dev %.1e, "
        "normal-form residual %.1e, divergers flagged %s, %.1fs"
        % (worst_red, worst_sig, worst_lu, diverging, elapsed)
    )
    if failures:
        detail += "; " + ", ".join(failures[:4])
    assert report(9, ok, detail)


def test_criterion_10_statistical_monotonicity():
    rng = np.random.default_rng(1010)
    worst = -np.inf
    for _ in range(1000):
        psi = sample("haar_state", rng)
        m0 = monotone_M(psi, 2).value
        q = int(rng.integers(1, 5))
        A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        f1 = A / np.linalg.svd(A, compute_uv=False)[0] * rng.uniform(0.2, 0.95)
        f2 = herm2_fn(np.eye(2) - f1.conj().T @ f1, "sqrt")
        average = 0.0
        for f in (f1, f2):
            mats = [np.eye(2, dtype=complex) for _ in range(4)]
            mats[q - 1] = f
            out = apply_local(psi, LocalOperation(mats))
            if out.norm2 > 1e-30:
                average += out.norm2 * monotone_M(out, 2).value
        worst = max(worst, average - m0)
    ok = worst <= 1e-8
    assert report(
        10, ok, "1000 two-outcome filters, worst M_2 increase %.1e" % worst
    )


def test_criterion_11_lu_normal_form():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1111)
    worst_form = worst_sig = 0.0
    degenerate = 0
    not_equivalent = 0
    for _ in range(200):
        psi = sample("haar_state", rng)
        op = LocalOperation([sample("su2", rng) for _ in range(4)], "unitary")
        phi = apply_local(psi, op)
        # a global phase exercises the gauge fixing as well
        phi = PureState4(np.exp(1j * rng.uniform(0, 2 * np.pi)) * phi.amplitudes)
        nf1, nf2 = lu_normal_form(psi), lu_normal_form(phi)
        if nf1.degenerate or nf2.degenerate:
            degenerate += 1
            continue
        worst_form = max(
            worst_form, float(np.max(np.abs(nf1.normalR - nf2.normalR)))
        )
        equivalent, _ = lu_equivalent(psi, phi)
        if not equivalent:
            not_equivalent += 1
        # equivalence must come with matching signatures; the phase is a
        # det-1 statement, so compare before the decorating global phase
        worst_sig = max(
            worst_sig,
            float(
                np.max(np.abs(sorted_quad(psi) - sorted_quad(apply_local(psi, op))))
            ),
        )
    false_positive = 0
    for _ in range(200):
        a = sample("haar_state", rng)
        b = sample("haar_state", rng)
        equivalent, _ = lu_equivalent(a, b)
        if equivalent:
            false_positive += 1
    elapsed = time.perf_counter() - t0
    ok = (
        worst_form <= 1e-8
        and worst_sig <= 1e-8
        and not_equivalent == 0
        and false_positive == 0
    )
    assert report(
        11,
        ok,
        "form drift %.1e, signature drift %.1e, %d degenerate skips, "
        "%d missed pairs, %d false positives, %.1fs"
        % (worst_form, worst_sig, degenerate, not_equivalent, false_positive, elapsed),
    )
