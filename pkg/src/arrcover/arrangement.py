"""Affine hyperplane arrangements over Q(zeta_d) and their intersection lattices.

An arrangement is an ordered list of affine hyperplanes c0 + sum(c_i x_i) = 0
with coefficients in one cyclotomic field.  This module provides validated
construction, the cone/decone pair, the intersection lattice with its Mobius
function, the Poincare polynomial, the beta invariant, and dense-edge flags on
the projective closure.  Flats are deduplicated by the canonical reduced
row-echelon form of their defining affine systems, so the flat set does not
depend on hyperplane order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .cyclofield import (
    CycNum,
    IntPoly,
    field_matrix_rank,
    reduced_row_echelon,
    row_in_span,
)


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane {x : constant + coeffs . x = 0}; linear part nonzero."""

    constant: CycNum
    coeffs: tuple[CycNum, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if all(c.is_zero for c in self.coeffs):
            raise ValueError("hyperplane has zero linear part")
        orders = {self.constant.order} | {c.order for c in self.coeffs}
        if len(orders) != 1:
            raise ValueError(f"mixed cyclotomic orders in hyperplane: {sorted(orders)}")

    @property
    def order(self) -> int:
        return self.constant.order

    def affine_row(self) -> tuple[CycNum, ...]:
        """Row (coeffs | -constant) of the linear system coeffs . x = -constant."""
        return self.coeffs + (-self.constant,)

    def proportional(self, other: "Hyperplane") -> bool:
        """Whether the two affine forms differ by a nonzero scalar."""
        a = (self.constant,) + self.coeffs
        b = (other.constant,) + other.coeffs
        lead = next(i for i, v in enumerate(a) if not v.is_zero)
        if b[lead].is_zero:
            return False
        ratio = a[lead] / b[lead]
        return all((x - ratio * y).is_zero for x, y in zip(a, b))


@dataclass(frozen=True)
class Arrangement:
    """Ordered, duplicate-free arrangement of n hyperplanes in C^ambient_dim."""

    ambient_dim: int
    cyc_order: int
    hyperplanes: tuple[Hyperplane, ...]
    is_central: bool

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    @property
    def ell(self) -> int:
        return self.ambient_dim


def build(ambient_dim: int, cyc_order: int, hyperplanes) -> Arrangement:
    """Validated arrangement: rejects duplicates and non-essential input.

    Essentiality (the linear parts span the ambient space) is required by all
    downstream invariants; the error message names the rank actually found.
    """
    hps = tuple(hyperplanes)
    if ambient_dim < 1:
        raise ValueError("ambient dimension must be >= 1")
    for h in hps:
        if h.order != cyc_order:
            raise ValueError(f"hyperplane order {h.order} != arrangement order {cyc_order}")
        if len(h.coeffs) != ambient_dim:
            raise ValueError(f"expected {ambient_dim} coefficients, got {len(h.coeffs)}")
    for i in range(len(hps)):
        for j in range(i + 1, len(hps)):
            if hps[i].proportional(hps[j]):
                raise ValueError(f"duplicate hyperplanes at indices {i} and {j}")
    rank = field_matrix_rank([list(h.coeffs) for h in hps])
    if rank != ambient_dim:
        raise ValueError(
            f"non-essential arrangement: linear parts have rank {rank} < {ambient_dim}"
        )
    central = all(h.constant.is_zero for h in hps)
    return Arrangement(ambient_dim, cyc_order, hps, central)


def _unchecked(ambient_dim: int, cyc_order: int, hps) -> Arrangement:
    # Internal constructor for deletion/restriction helpers, which may produce
    # non-essential (or empty) arrangements used only for lattice invariants.
    hps = tuple(hps)
    central = all(h.constant.is_zero for h in hps)
    return Arrangement(ambient_dim, cyc_order, hps, central)


def permuted(a: Arrangement, perm) -> Arrangement:
    """Reorder hyperplanes; perm[i] is the old index placed at position i."""
    return build(a.ambient_dim, a.cyc_order, tuple(a.hyperplanes[i] for i in perm))


# ---------------------------------------------------------------------------
# Cone and decone.
# ---------------------------------------------------------------------------

def cone(a: Arrangement) -> Arrangement:
    """Central arrangement in one more variable.

    Each form c0 + sum(c_i x_i) becomes c0*x0 + sum(c_i x_i) with the
    homogenizing coordinate x0 placed last; the new hyperplane {x0 = 0} is
    appended last.
    """
    d = a.cyc_order
    zero = CycNum.zero(d)
    one = CycNum.one(d)
    hps = [Hyperplane(zero, h.coeffs + (h.constant,)) for h in a.hyperplanes]
    hps.append(Hyperplane(zero, (zero,) * a.ambient_dim + (one,)))
    return build(a.ambient_dim + 1, d, hps)


def decone(c: Arrangement, at: int) -> Arrangement:
    """Affine arrangement obtained by sending hyperplane `at` to infinity.

    An invertible coordinate change takes the chosen linear form to the last
    coordinate (the complementary coordinates are chosen greedily by pivot
    position), which is then set to 1.
    """
    if not c.is_central:
        raise ValueError("decone requires a central arrangement")
    if not 0 <= at < c.n:
        raise ValueError(f"hyperplane index {at} out of range")
    d = c.cyc_order
    alpha = c.hyperplanes[at].coeffs
    dim = c.ambient_dim
    p = next(i for i, v in enumerate(alpha) if not v.is_zero)
    inv_ap = alpha[p].inverse()
    # Columns of the change of basis: e_k - (alpha_k/alpha_p) e_p for k != p,
    # then e_p/alpha_p.  A form with row vector `coef` becomes coef @ M, whose
    # last entry is the coefficient of the coordinate being set to 1.
    new_hps = []
    for i, h in enumerate(c.hyperplanes):
        if i == at:
            continue
        coef = h.coeffs
        linear = tuple(
            coef[k] - alpha[k] * coef[p] * inv_ap for k in range(dim) if k != p
        )
        constant = coef[p] * inv_ap
        new_hps.append(Hyperplane(constant, linear))
    return build(dim - 1, d, new_hps)


# ---------------------------------------------------------------------------
# Intersection lattice.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Flat:
    """Flat of the intersection lattice.

    support is the full closure (every hyperplane containing the flat);
    multiplicity is len(support); system is the canonical reduced row-echelon
    form of the defining affine equations, used as the dedup key.
    """

    support: tuple[int, ...]
    codim: int
    mobius: int
    dense: bool | None
    system: tuple[tuple[CycNum, ...], ...]

    @property
    def multiplicity(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class IntersectionLattice:
    """Flats grouped by codimension 0..rank."""

    levels: tuple[tuple[Flat, ...], ...]
    rank: int

    def flats(self):
        for level in self.levels:
            yield from level

    def of_codim(self, c: int) -> tuple[Flat, ...]:
        return self.levels[c] if 0 <= c < len(self.levels) else ()


@lru_cache(maxsize=None)
def intersection_lattice(a: Arrangement) -> IntersectionLattice:
    """All nonempty intersections with Mobius values.

    Built level by level: flats of codim c+1 are closures of (codim-c flat)
    cap hyperplane, deduplicated by canonical echelon form; empty
    intersections are discarded.  Mobius values follow the recursion
    mu(Y) = -sum(mu(Z)) over flats Z with support(Z) strictly inside
    support(Y).
    """
    rows = [h.affine_row() for h in a.hyperplanes]
    width = a.ambient_dim + 1

    def closure(system):
        return tuple(
            j for j in range(a.n) if row_in_span(rows[j], system)
        )

    top = Flat(support=(), codim=0, mobius=1, dense=None, system=())
    levels: list[list[Flat]] = [[top]]
    current = [top]
    while current:
        next_level: dict = {}
        for flat in current:
            in_support = set(flat.support)
            for j in range(a.n):
                if j in in_support:
                    continue
                candidate = list(flat.system) + [rows[j]]
                echelon, pivots = reduced_row_echelon(candidate)
                if (width - 1) in pivots:
                    continue  # inconsistent system: empty intersection
                if len(echelon) == flat.codim:
                    continue  # hyperplane already contains the flat
                if echelon not in next_level:
                    next_level[echelon] = Flat(
                        support=closure(echelon),
                        codim=len(echelon),
                        mobius=0,
                        dense=None,
                        system=echelon,
                    )
        current = list(next_level.values())
        if current:
            levels.append(current)

    # Mobius recursion over the interval below each flat.
    by_support: dict[tuple[int, ...], int] = {(): 1}
    out_levels: list[tuple[Flat, ...]] = [(top,)]
    for level in levels[1:]:
        finished = []
        for flat in level:
            sset = set(flat.support)
            acc = 0
            for prev in out_levels:
                for z in prev:
                    if set(z.support) < sset:
                        acc += by_support[z.support]
            mu = -acc
            by_support[flat.support] = mu
            finished.append(replace(flat, mobius=mu))
        out_levels.append(tuple(finished))
    return IntersectionLattice(levels=tuple(out_levels), rank=len(out_levels) - 1)


@lru_cache(maxsize=None)
def poincare_polynomial(a: Arrangement) -> IntPoly:
    """P(A,t) = sum over flats of mu(Y) (-t)^codim(Y); coefficients are Betti numbers."""
    lattice = intersection_lattice(a)
    coeffs = [0] * (lattice.rank + 1)
    for flat in lattice.flats():
        coeffs[flat.codim] += flat.mobius * (-1) ** flat.codim
    return IntPoly(tuple(coeffs))


def betti_numbers(a: Arrangement) -> tuple[int, ...]:
    p = poincare_polynomial(a)
    return tuple(p.coefficient(q) for q in range(a.ell + 1))


def euler_characteristic(a: Arrangement) -> int:
    return poincare_polynomial(a).evaluate(-1)


def beta(a: Arrangement) -> int:
    """beta(A) = |P(A,-1)| = |chi(M(A))|."""
    return abs(euler_characteristic(a))


# ---------------------------------------------------------------------------
# Dense edges of the projective closure.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def dense_edges(a: Arrangement) -> IntersectionLattice:
    """Lattice of the projective closure with dense flags.

    The closure lattice is the lattice of cone(A) minus its center flat of
    codim ell+1 (which is projectively empty).  A flat Y is dense when the
    decone of the central subarrangement A_Y has beta > 0, computed as
    P(A_Y, t)/(1+t) evaluated at -1; hyperplane flats are always dense.  The
    last closure index is the hyperplane at infinity.
    """
    closure = cone(a)
    lattice = intersection_lattice(closure)
    # Interval Poincare polynomial below a flat: the closure's support sets
    # are downward closed, so global Mobius values restrict to each interval.
    mu_by_support = {f.support: f.mobius for f in lattice.flats()}

    def subarrangement_poincare(support: tuple[int, ...]) -> IntPoly:
        sset = set(support)
        coeffs = [0] * (len(support) + 1)
        for f in lattice.flats():
            if set(f.support) <= sset:
                coeffs[f.codim] += mu_by_support[f.support] * (-1) ** f.codim
        return IntPoly(tuple(coeffs))

    out_levels = [lattice.levels[0]]
    for level in lattice.levels[1:]:
        marked = []
        for flat in level:
            if flat.codim > a.ell:
                continue  # center of the cone: empty in projective space
            p_sub = subarrangement_poincare(flat.support)
            deconed = p_sub.divexact(IntPoly((1, 1)))
            marked.append(replace(flat, dense=abs(deconed.evaluate(-1)) > 0))
        if marked:
            out_levels.append(tuple(marked))
    return IntersectionLattice(levels=tuple(out_levels), rank=len(out_levels) - 1)


# ---------------------------------------------------------------------------
# Deletion and restriction (used by the deletion-restriction property tests).
# ---------------------------------------------------------------------------

def deletion(a: Arrangement, at: int) -> Arrangement:
    """A minus one hyperplane; may be non-essential, so skips validation."""
    hps = tuple(h for i, h in enumerate(a.hyperplanes) if i != at)
    return _unchecked(a.ambient_dim, a.cyc_order, hps)


def restriction(a: Arrangement, at: int) -> Arrangement:
    """The arrangement induced on hyperplane `at`, coincident images deduplicated.

    Parallel hyperplanes (empty trace) are dropped.  The result may be empty
    or non-essential; it is meant for lattice/Poincare computations only.
    """
    h0 = a.hyperplanes[at]
    alpha = h0.coeffs
    p = next(i for i, v in enumerate(alpha) if not v.is_zero)
    inv_ap = alpha[p].inverse()
    restricted: list[Hyperplane] = []
    for i, h in enumerate(a.hyperplanes):
        if i == at:
            continue
        # substitute x_p = -(c0 + sum_{k != p} a_k x_k)/a_p into h
        factor = h.coeffs[p] * inv_ap
        constant = h.constant - factor * h0.constant
        linear = tuple(
            h.coeffs[k] - factor * alpha[k] for k in range(a.ambient_dim) if k != p
        )
        if all(c.is_zero for c in linear):
            continue  # parallel to the restriction hyperplane
        candidate = Hyperplane(constant, linear)
        if not any(candidate.proportional(g) for g in restricted):
            restricted.append(candidate)
    return _unchecked(a.ambient_dim - 1, a.cyc_order, restricted)
