"""Acceptance suite: every criterion exact, one printed line per criterion.

All comparisons are integer/polynomial equality (zero tolerance).  The one
genuinely open case in the catalog is Ceva(3) at k = 3 (and k = 9): the lower
bound machinery cannot close those intervals, which is itself criterion 4.
Where a property sweep needs cover Betti numbers of Ceva(3) at multiples of 3
it uses the documented assertion set for k = 3 and skips m = 9 (whose k = 9
system is equally resonant but has no authoritative closure).
"""

import json
import random
from contextlib import contextmanager
from itertools import combinations
from math import gcd

from arrcover import catalog
from arrcover.arrangement import (
    beta,
    betti_numbers,
    cone,
    deletion,
    euler_characteristic,
    intersection_lattice,
    permuted,
    poincare_polynomial,
    restriction,
)
from arrcover.cli import main as cli_main
from arrcover.covers import (
    cover_betti,
    local_betti,
    monodromy_charpoly,
    periodicity,
    zeta_coefficients,
)
from arrcover.cyclofield import IntPoly, reduced_row_echelon, row_in_span
from arrcover.exactlin import cohomology_Q, cohomology_modN, smith_normal_form
from arrcover.osalgebra import aomoto_matrices, nbc_basis

CEVA3_K3 = {(3, 1): 2, (3, 2): 13, (3, 3): 11}


@contextmanager
def criterion(number, label):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} FAIL: {label}")
        raise
    print(f"ACCEPTANCE {number} PASS: {label}")


def resolution_for(key, m):
    if key == "ceva3" and m % 3 == 0:
        return CEVA3_K3
    return None


def computable_ms(key, upto=12):
    if key == "ceva3":
        return [m for m in range(1, upto + 1) if m != 9]
    return list(range(1, upto + 1))


# ---------------------------------------------------------------------------
# Criterion 1: Selberg.
# ---------------------------------------------------------------------------

def test_criterion_1_selberg(selberg):
    with criterion(1, "Selberg values"):
        assert poincare_polynomial(selberg).coeffs == (1, 5, 6)
        assert beta(selberg) == 2

        intervals = local_betti(selberg, 3)
        assert intervals[1].resolved and intervals[1].value == 1
        assert intervals[1].witness_shift == (0, 0, -1, 0, 0)

        assert cover_betti(selberg, 6).betti == (1, 7, 18)
        for m in (1, 2, 4, 5, 7, 8):
            assert cover_betti(selberg, m).betti == (1, 5, 4 + 2 * m)

        zeta = zeta_coefficients(selberg, 1)
        assert zeta.finite_terms == ((1, 5), (3, 2))
        assert zeta.tail_beta == 0


# ---------------------------------------------------------------------------
# Criterion 2: MacLane decone.
# ---------------------------------------------------------------------------

def test_criterion_2_maclane(maclane_decone):
    with criterion(2, "MacLane decone values"):
        assert poincare_polynomial(maclane_decone).coeffs == (1, 7, 13)
        assert beta(maclane_decone) == 7

        complex_ = aomoto_matrices(maclane_decone, (1,) * 7)
        for n in range(2, 9):
            dims = cohomology_modN(complex_, n).dims
            assert dims[0] == 0 and dims[1] == 0

        assert cover_betti(maclane_decone, 8).betti == (1, 7, 62)

        report = periodicity(maclane_decone)
        assert report.period == 420
        for cls in report.classes:
            assert cls.constants == (7,)
            assert (cls.top_slope, cls.top_constant) == (7, 6)


# ---------------------------------------------------------------------------
# Criterion 3: Hessian decone.
# ---------------------------------------------------------------------------

def test_criterion_3_hessian(hessian_decone):
    with criterion(3, "Hessian decone values"):
        assert poincare_polynomial(hessian_decone).coeffs == (1, 11, 28)
        assert beta(hessian_decone) == 18

        complex_ = aomoto_matrices(hessian_decone, (1,) * 11)
        assert cohomology_modN(complex_, 2).dims == (0, 2, 20)
        assert cohomology_modN(complex_, 4).dims == (0, 2, 20)

        for k in (2, 4):
            intervals = local_betti(hessian_decone, k)
            q1 = intervals[1]
            assert q1.lower == 2 and q1.resolved
            assert q1.witness_shift is not None
            assert len(q1.witness_shift) == 11
            assert set(q1.witness_shift) <= {-1, 0}

        assert cover_betti(hessian_decone, 12).betti == (1, 17, 232)

        t_minus_1 = IntPoly((-1, 1))
        t4_minus_1 = IntPoly((-1, 0, 0, 0, 1))
        t12_minus_1 = IntPoly((-1,) + (0,) * 11 + (1,))
        assert monodromy_charpoly(hessian_decone, 12, 0).expanded == t_minus_1
        delta1 = monodromy_charpoly(hessian_decone, 12, 1)
        assert delta1.expanded == t_minus_1.pow(9) * t4_minus_1.pow(2)
        delta2 = monodromy_charpoly(hessian_decone, 12, 2)
        assert delta2.expanded == t_minus_1.pow(8) * t4_minus_1.pow(2) * t12_minus_1.pow(18)


# ---------------------------------------------------------------------------
# Criterion 4: Ceva(3).
# ---------------------------------------------------------------------------

def test_criterion_4_ceva3(ceva3, capsys):
    with criterion(4, "Ceva(3) strict lower bound stays open"):
        complex_ = aomoto_matrices(ceva3, (1,) * 9)
        assert cohomology_modN(complex_, 3).dims[1] == 2

        intervals = local_betti(ceva3, 3)
        q1 = intervals[1]
        assert not q1.resolved
        assert q1.upper == 2
        assert q1.lower <= 1

        code = cli_main(["cover-betti", "--catalog", "ceva3", "--m", "3"])
        out = capsys.readouterr().out
        assert code == 2
        payload = json.loads(out)
        assert payload["error"] == "unresolved-interval"


# ---------------------------------------------------------------------------
# Criterion 5: property suites over the whole catalog.
# ---------------------------------------------------------------------------

def _mat_mul(a, b):
    return [
        [sum(a[r][k] * b[k][c] for k in range(len(b))) for c in range(len(b[0]))]
        for r in range(len(a))
    ]


def test_criterion_5_property_suites(catalog_arrangements):
    rng = random.Random(101)
    with criterion(5, "catalog-wide property suites"):
        for key, a in catalog_arrangements.items():
            # differentials square to zero
            for weights in [(1,) * a.n, tuple(rng.randint(-3, 3) for _ in range(a.n))]:
                cx = aomoto_matrices(a, weights)
                for q in range(len(cx.diffs) - 1):
                    if cx.diffs[q + 1].rows and cx.diffs[q].entries:
                        product = _mat_mul(cx.diffs[q + 1].dense(), cx.diffs[q].dense())
                        assert all(v == 0 for row in product for v in row)

            # NBC counts match Poincare coefficients
            counts = tuple(len(level) for level in nbc_basis(a))
            assert counts == poincare_polynomial(a).coeffs

            # deletion-restriction for every hyperplane
            p = poincare_polynomial(a)
            for at in range(a.n):
                assert p == (
                    poincare_polynomial(deletion(a, at))
                    + IntPoly((0, 1)) * poincare_polynomial(restriction(a, at))
                )

            # cone factorization
            assert poincare_polynomial(cone(a)) == IntPoly((1, 1)) * p

            # Euler identity and divisor monotonicity for the covers
            chi = euler_characteristic(a)
            reports = {
                m: cover_betti(a, m, resolution_for(key, m)).betti
                for m in computable_ms(key)
            }
            for m, b in reports.items():
                assert sum((-1) ** q * v for q, v in enumerate(b)) == m * chi
            for k in reports:
                for m in reports:
                    if m % k == 0:
                        assert all(x <= y for x, y in zip(reports[k], reports[m]))

            # characteristic polynomial degrees
            for m in (2, 6, 12):
                if m not in reports:
                    continue
                for q in range(a.ell + 1):
                    cp = monodromy_charpoly(a, m, q, resolution_for(key, m))
                    assert cp.expanded.degree == reports[m][q]

        # permutation invariance of cohomology dimensions
        for a, weights in (
            (catalog_arrangements["selberg"], (1, 1, -2, 1, 1)),
            (catalog_arrangements["maclane-decone"], (1,) * 7),
        ):
            base_q = cohomology_Q(aomoto_matrices(a, weights)).dims
            base_n = cohomology_modN(aomoto_matrices(a, weights), 3).dims
            for _ in range(2):
                perm = list(range(a.n))
                rng.shuffle(perm)
                pa = permuted(a, perm)
                pw = tuple(weights[i] for i in perm)
                assert cohomology_Q(aomoto_matrices(pa, pw)).dims == base_q
                assert cohomology_modN(aomoto_matrices(pa, pw), 3).dims == base_n

        # periodicity cross-check for Selberg
        report = periodicity(catalog_arrangements["selberg"])
        for m in range(1, 31):
            assert report.betti(m) == cover_betti(catalog_arrangements["selberg"], m).betti


# ---------------------------------------------------------------------------
# Criterion 6: oracle equivalences.
# ---------------------------------------------------------------------------

def _lattice_oracle(a):
    rows = [h.affine_row() for h in a.hyperplanes]
    spaces = {}
    for size in range(a.n + 1):
        for subset in combinations(range(a.n), size):
            echelon, pivots = reduced_row_echelon([rows[i] for i in subset])
            if a.ambient_dim in pivots:
                continue
            support = tuple(j for j in range(a.n) if row_in_span(rows[j], echelon))
            spaces[echelon] = (len(echelon), support)
    flats = sorted(spaces.values())
    mobius = {}
    for codim, support in flats:
        below = sum(v for (c2, s2), v in mobius.items() if set(s2) < set(support))
        mobius[(codim, support)] = 1 if codim == 0 else -below
    return mobius


def _det_int(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
            total += (-1) ** j * rows[0][j] * _det_int(minor)
    return total


def _determinant_divisor_factors(m):
    nr, nc = len(m), len(m[0])
    size = min(nr, nc)
    dets = [1]
    for k in range(1, size + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                g = gcd(g, _det_int([[m[r][c] for c in ci] for r in ri]))
        dets.append(g)
    return tuple(
        0 if dets[k] == 0 else dets[k] // dets[k - 1] for k in range(1, size + 1)
    )


def test_criterion_6_oracle_equivalence(selberg):
    rng = random.Random(211)
    with criterion(6, "brute-force oracle agreement"):
        small = [selberg, cone(selberg)]
        for a in small:
            assert a.n <= 6
            computed = {
                (f.codim, f.support): f.mobius for f in intersection_lattice(a).flats()
            }
            assert computed == _lattice_oracle(a)

        for _ in range(25):
            nr, nc = rng.randint(1, 5), rng.randint(1, 5)
            matrix = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
            assert (
                smith_normal_form(matrix).invariant_factors
                == _determinant_divisor_factors(matrix)
            )
