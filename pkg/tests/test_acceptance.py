"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line.

Scaling conventions (the norm is the largest entry modulus throughout):
  products of two computed parts X, Y        tol * (1 + |X|) (1 + |Y|)
  n-th power of a computed part X            tol * (1 + |X|)^n
  identities with one side A (or U, S)       tol * (1 + |A|)
  exp relation on exp(A)                     tol * (1 + |exp A|)
"""
from __future__ import annotations

import time

import numpy as np
import pytest
from corpus import integer_corpus, invertible_corpus, rank_corpus, round_trip_corpus

from quatjordan import (
    CongruenceSystem,
    additive_jcd,
    char_poly,
    complex_adjoint,
    crt_solve,
    exp_jcd_relation,
    hexp,
    hinverse,
    hlog,
    hrank,
    is_semisimple,
    jordan_form,
    multiplicative_jcd,
    roots_with_multiplicity,
    spec_equivalent,
    spectrum,
)
from quatjordan.hmat import HMatrix
from quatjordan.jcd import hpow
from quatjordan.poly import PAIR, REAL, confluent_vandermonde, eval_at_hmatrix, realify

EPS = np.finfo(float).eps


@pytest.fixture(scope="module")
def corpus():
    return round_trip_corpus()


@pytest.fixture(scope="module")
def additive_results(corpus):
    return [(seed, g, additive_jcd(g.A)) for seed, g in corpus]


def test_c1_jordan_round_trip(corpus, report):
    t0 = time.perf_counter()
    bad_spec, bad_res, errors, worst = [], [], [], 0.0
    for seed, g in corpus:
        try:
            r = jordan_form(g.A)
        except Exception as exc:  # noqa: BLE001, a crash counts as a violation, reported with its seed
            errors.append((seed, repr(exc)))
            continue
        if not spec_equivalent(r.spec, g.spec, 1e-5):
            bad_spec.append(seed)
        R = (hinverse(r.P) @ g.A @ r.P - r.jordan_matrix()).norm()
        worst = max(worst, R / max(g.A.norm(), 1e-300))
        if R > 1e-5 * g.A.norm():
            bad_res.append(seed)
    elapsed = time.perf_counter() - t0
    ok = not (bad_spec or bad_res or errors) and elapsed < 60.0
    report(
        "C1 Jordan round-trip",
        ok,
        f"{len(corpus)} instances, spec mismatches {len(bad_spec)}, residual breaches {len(bad_res)}, "
        f"errors {len(errors)}, worst |P^-1AP-J|/|A| {worst:.2e}, {elapsed:.1f}s (< 60s)",
    )
    assert not errors, errors[:5]
    assert not bad_spec, bad_spec[:10]
    assert not bad_res, bad_res[:10]
    assert elapsed < 60.0


def test_c2_cayley_hamilton(report):
    mats = integer_corpus()
    t0 = time.perf_counter()
    bad, worst = [], 0.0
    for t, A in enumerate(mats):
        r = eval_at_hmatrix(char_poly(A), A).norm()
        scale = (1.0 + A.norm()) ** (2 * A.n)
        worst = max(worst, r / scale)
        if r > 1e-6 * scale:
            bad.append(t)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10.0
    report("C2 Cayley-Hamilton", ok,
           f"{len(mats)} matrices, breaches {len(bad)}, worst |p(A)|/(1+|A|)^2n {worst:.2e}, {elapsed:.1f}s (< 10s)")
    assert not bad
    assert elapsed < 10.0


def _structure_violations(A) -> list[str]:
    out = []
    n2 = 2 * A.n
    spec = spectrum(A)
    if spec.total() != n2:
        out.append(f"multiplicities sum to {spec.total()} != {n2}")
    for e in spec:
        if e.kind == REAL and (e.mult % 2 or e.value.imag != 0.0):
            out.append(f"real eigenvalue {e.value} with multiplicity {e.mult}")
        if e.kind == PAIR and e.value.imag <= 0.0:
            out.append(f"pair representative {e.value} not in the upper half plane")
    # every raw eigenvalue of the adjoint belongs to exactly one reported member;
    # counting per member checks m(lam) = m(conj lam)
    ev = np.linalg.eigvals(complex_adjoint(A))
    members = [(e.value, e.mult) for e in spec] + [(e.value.conjugate(), e.mult) for e in spec if e.kind == PAIR]
    vals = np.array([v for v, _ in members])
    counts = np.bincount([int(np.argmin(np.abs(vals - z))) for z in ev], minlength=len(members))
    for (v, m), c in zip(members, counts):
        if c != m:
            out.append(f"{c} adjoint eigenvalues near {v:.4g}, multiplicity says {m}")
    # the characteristic-polynomial route gives the same conjugation-closed multiset
    roots = roots_with_multiplicity(char_poly(A))
    if roots.total() != n2:
        out.append("char_poly roots do not sum to 2n")
    rv = sorted(roots.values(), key=lambda z: (round(z.real, 4), round(z.imag, 4)))
    cv = sorted(np.conj(rv), key=lambda z: (round(z.real, 4), round(z.imag, 4)))
    if np.max(np.abs(np.array(rv) - np.array(cv))) > 1e-9:
        out.append("char_poly roots not conjugation-closed")
    return out


def test_c3_spectrum_structure(report):
    mats = integer_corpus()
    bad = []
    for t, A in enumerate(mats):
        try:
            v = _structure_violations(A)
        except Exception as exc:  # noqa: BLE001
            v = [repr(exc)]
        if v:
            bad.append((t, v))
    report("C3 spectrum structure", not bad, f"{len(mats)} matrices, violations {len(bad)}")
    assert not bad, bad[:5]


def test_c4a_exact_sum(additive_results, report):
    """S + N == A bitwise, component by component."""
    exact, inexact, wide = 0, [], 0
    gap_worst = 0.0
    for seed, g, d in additive_results:
        a, s, nn = g.A.components(), d.S.components(), d.N.components()
        total = (d.S + d.N).components()
        miss = total != a
        if not miss.any():
            exact += 1
            continue
        inexact.append(seed)
        # every mismatch sits where |S| > |A|: no float near S has A - S representable
        wide += int(np.all(np.abs(s[miss]) > np.abs(a[miss])))
        # what remains is the single rounding of forming N = A - S
        gap = np.max(np.abs(total - a) / (EPS * (np.abs(nn) + np.abs(a)) + 1e-300))
        gap_worst = max(gap_worst, gap)
    report(
        "C4a additive JCD, S+N == A bitwise",
        not inexact,
        f"{exact}/{len(additive_results)} instances bitwise exact; {len(inexact)} inexact, of which {wide} "
        f"have all mismatches at |S_ij| > |A_ij|; worst |fl(S+N)-A| / eps(|N|+|A|) {gap_worst:.2f}",
    )
    assert not inexact, f"{len(inexact)} instances with S + N != A bitwise, e.g. seeds {inexact[:5]}"


def test_c4b_additive_jcd(additive_results, report):
    counts = dict.fromkeys(["commutator", "nilpotent", "semisimple", "constant", "f_of_A", "g_of_A"], 0)
    worst = 0.0
    for seed, g, d in additive_results:
        A, S, N, n = g.A, d.S, d.N, g.A.n
        checks = {
            "commutator": ((S @ N - N @ S).norm(), 1e-7 * (1 + S.norm()) * (1 + N.norm())),
            "nilpotent": (hpow(N, n).norm(), 1e-6 * (1 + N.norm()) ** n),
            "f_of_A": ((eval_at_hmatrix(d.f, A) - S).norm(), 1e-6 * (1 + A.norm())),
            "g_of_A": ((eval_at_hmatrix(d.g, A) - N).norm(), 1e-6 * (1 + A.norm())),
        }
        for key, (val, bound) in checks.items():
            worst = max(worst, val / bound)
            counts[key] += int(val > bound)
        counts["semisimple"] += int(not is_semisimple(S))
        counts["constant"] += int(not (d.f[0] == 0.0 and d.g[0] == 0.0))
    ok = not any(counts.values())
    report("C4b additive JCD, remaining invariants", ok,
           f"{len(additive_results)} instances, breaches {counts}, worst residual/bound {worst:.2e}")
    assert ok, counts


def test_c5_multiplicative_jcd(corpus, report):
    members = [(seed, g) for seed, g in corpus if all(b.value != 0 for b in g.spec)]
    counts = dict.fromkeys(["product", "unipotent", "constant", "h_of_A"], 0)
    worst = 0.0
    for seed, g in members:
        A, n = g.A, g.A.n
        d = multiplicative_jcd(A)
        E = d.U - HMatrix.identity(n)
        checks = {
            "product": ((d.S @ d.U - A).norm(), 1e-6 * (1 + A.norm())),
            "unipotent": (hpow(E, n).norm(), 1e-6 * (1 + E.norm()) ** n),
            "h_of_A": ((eval_at_hmatrix(d.h, A) - d.U).norm(), 1e-6 * (1 + d.U.norm())),
        }
        for key, (val, bound) in checks.items():
            worst = max(worst, val / bound)
            counts[key] += int(val > bound)
        counts["constant"] += int(d.h[0] != 1.0)
    ok = not any(counts.values()) and len(members) > 0
    report("C5 multiplicative JCD", ok,
           f"{len(members)} invertible instances, breaches {counts}, worst residual/bound {worst:.2e}")
    assert ok, counts


def test_c6_exp_relation(corpus, report):
    members = [(seed, g) for seed, g in corpus if g.A.norm() <= 5.0]
    bad, worst = [], 0.0
    for seed, g in members:
        r = exp_jcd_relation(g.A)
        bound = 1e-5 * (1 + r.expA.norm())
        worst = max(worst, r.semisimple_residual / bound, r.unipotent_residual / bound)
        if r.semisimple_residual > bound or r.unipotent_residual > bound:
            bad.append(seed)
    ok = not bad and len(members) > 0
    report("C6 exp relation", ok, f"{len(members)} instances with |A| <= 5, breaches {len(bad)}, "
           f"worst residual/bound {worst:.2e}")
    assert ok, bad[:10]


def test_c7_surjectivity(report):
    mats = invertible_corpus()
    bad, worst = [], 0.0
    for t, A in enumerate(mats):
        r = (hexp(hlog(A)) - A).norm() / A.norm()
        worst = max(worst, r)
        if r > 1e-5:
            bad.append(t)
    report("C7 exp(log A) = A", not bad, f"{len(mats)} matrices, breaches {len(bad)}, worst relative {worst:.2e}")
    assert not bad


def _random_system(rng, symmetric: bool) -> CongruenceSystem:
    roots: list[complex] = []
    while len(roots) < int(rng.integers(1, 5)):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.3, 3) if symmetric else rng.uniform(-3, 3))
        if rng.random() < 0.3:
            z = complex(z.real, 0.0)
        if all(abs(z - w) > 0.5 and abs(z - np.conj(w)) > 0.5 for w in roots):
            roots.append(z)
    system = CongruenceSystem(mod_x=bool(rng.random() < 0.7))
    for z in roots:
        m = int(rng.integers(1, 5))
        t = rng.normal(size=m) + 1j * rng.normal(size=m)
        if symmetric and z.imag == 0:
            t = t.real + 0j
        system.add(t, z, m)
        if symmetric and z.imag != 0:
            system.add(np.conj(t), np.conj(z), m)
    return system


def test_c8_oracle_cross_checks(report):
    mats = rank_corpus()
    rank_bad = []
    deficient = 0
    for t, A in enumerate(mats):
        r_c = np.linalg.matrix_rank(complex_adjoint(A))
        deficient += int(r_c < 2 * A.n)
        if r_c % 2 or hrank(A) != r_c // 2:
            rank_bad.append(t)

    rng = np.random.default_rng(4242)
    crt_bad, worst = [], 0.0
    for t in range(300):
        symmetric = t % 2 == 1
        system = _random_system(rng, symmetric)
        V, b = confluent_vandermonde(system)
        for c in [crt_solve(system)] + ([realify(crt_solve(system))] if symmetric else []):
            c = np.concatenate([c, np.zeros(V.shape[1] - len(c))])
            res = np.linalg.norm(V @ c - b) / (np.linalg.norm(V, 2) * np.linalg.norm(c) + np.linalg.norm(b))
            worst = max(worst, res)
            if res > 1e-8:
                crt_bad.append(t)
    ok = not rank_bad and not crt_bad
    report("C8 oracle cross-checks", ok,
           f"rank: {len(mats)} matrices ({deficient} rank-deficient), violations {len(rank_bad)}; "
           f"crt: 300 systems, worst Vandermonde residual {worst:.2e}, breaches {len(crt_bad)}")
    assert not rank_bad, rank_bad[:10]
    assert not crt_bad, crt_bad[:10]
