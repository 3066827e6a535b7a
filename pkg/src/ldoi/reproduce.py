"""Reproduction suites behind ``ldoi reproduce``.

Each suite returns rows of ``{"quantity", "measured", "expected", "kind",
"pass"}``. ``kind`` is ``"reference"`` for known literature values and
``"derived"`` for values checked against an independent computation.
Timings stay out of the rows so reruns give identical digests.
"""

from __future__ import annotations

import numpy as np

from .entangle import fourier_matrix, ldui_dual, profile_closed_form
from .hadamardness import SignMatrix, exhaustive_min
from .schmidt import dense_schmidt_rank, make_rank, explicit_cases, explicit_triple, schmidt_rank
from .special import perfect_witness
from .triples import InvarianceClass, MatrixTriple
from .unitary import Field, random_unitary

KNOWN_MINIMA = {3: (33, 6), 5: (145, 120), 6: (264, 28800)}
FIRST_ARGMIN = {
    3: ["+++", "++-", "+-+"],
    5: ["+++++", "+++--", "++-+-", "+-++-", "+---+"],
    6: ["++++++", "++++--", "+++-+-", "++---+", "+-+--+", "+--++-"],
}


def _row(quantity, measured, expected, kind, ok):
    return {"quantity": quantity, "measured": measured, "expected": expected, "kind": kind, "pass": bool(ok)}


def table1(workers=1):
    rows = []
    for d, (mn, cnt) in KNOWN_MINIMA.items():
        res = exhaustive_min(d, workers=workers)
        rows.append(_row(f"d={d} (min h, argmin count)", [res.min_value, res.argmin_count], [mn, cnt],
                         "reference", (res.min_value, res.argmin_count) == (mn, cnt)))
        first = SignMatrix.from_text("\n".join(FIRST_ARGMIN[d]))
        rows.append(_row(f"d={d} first argmin", res.first_argmin.to_text().splitlines(), FIRST_ARGMIN[d],
                         "reference", res.first_argmin == first))
    return rows


def max_ep(dims=range(2, 9), tol=1e-10):
    rows = []
    for d in dims:
        F = fourier_matrix(d)
        ep = profile_closed_form(ldui_dual(F)).e_power
        rows.append(_row(f"e_p(Fourier dual) d={d}", ep, d / (d + 1), "reference", abs(ep - d / (d + 1)) <= tol))
        G = F.copy()
        G[1, 1] *= np.exp(0.3j)
        ep2 = profile_closed_form(ldui_dual(G)).e_power
        rows.append(_row(f"e_p after phase perturbation d={d}", ep2, f"< {ep!r}", "derived", ep2 < ep - tol))
    return rows


def schmidt_coverage(dims=(3, 4, 5), seed=0):
    rows = []
    for d in dims:
        got, agree = [], True
        for k in range(1, d * d + 1):
            t = make_rank(d, k, seed=seed)
            r, r_dense = schmidt_rank(t), dense_schmidt_rank(t)
            agree &= r == r_dense
            got.append(r)
        want = list(range(1, d * d + 1))
        rows.append(_row(f"d={d} achieved ranks", got, want, "reference", got == want and agree))
    for d, k in explicit_cases():
        t = explicit_triple(d, k)
        r, r_dense = schmidt_rank(t), dense_schmidt_rank(t)
        rows.append(_row(f"explicit triple d={d} rank {k}", [r, r_dense], [k, k], "reference", r == r_dense == k))
    return rows


def perfect_none(n=10_000, dims=range(2, 7), seed=0):
    rng = np.random.default_rng(seed)
    dims = list(dims)
    classes = list(InvarianceClass)
    failures = 0
    for _ in range(n):
        d = int(rng.choice(dims))
        cls = classes[int(rng.integers(len(classes)))]
        t = random_unitary(d, cls, Field.COMPLEX, seed=int(rng.integers(2**63)))
        failures += not perfect_witness(t).certified
    rows = [_row(f"uncertified random unitaries out of {n}", failures, 0, "reference", failures == 0)]
    t = analytic_contradiction(3)
    w = perfect_witness(t)
    rows.append(_row("all moduli 1/sqrt(2): certificate kind", w.kind, "phase", "reference", w.kind == "phase"))
    return rows


def analytic_contradiction(d):
    """Triple with every off-diagonal modulus ``1/sqrt 2``.

    ``A = B`` real symmetric and ``C_ji = -C_ij``, so all modulus tests
    pass and only the phase clause can certify.
    """
    M = np.full((d, d), 1 / np.sqrt(2), dtype=complex)
    np.fill_diagonal(M, 1.0)
    C = M.copy()
    iu = np.triu_indices(d, 1)
    C[iu[1], iu[0]] = -C[iu]
    return MatrixTriple(M, M.copy(), C)


SUITES = {
    "table1": table1,
    "schmidt-coverage": schmidt_coverage,
    "max-ep": max_ep,
    "perfect-none": perfect_none,
}
