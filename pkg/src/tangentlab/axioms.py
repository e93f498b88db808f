"""Equation engine for categorical axioms over polynomial maps.

Every axiom of interest is an equality of two composites of PolyMaps.
Checking is exact: both sides are flattened by substitution and compared in
canonical form, so a pass is a proof of the identity over all rational
points and a fail carries the nonzero difference polynomials as witness.

Universal properties (pullback and product diagrams) are verified by
constructing the concrete fiber product of the cospan, building the
comparison map from the candidate apex, and searching for a polynomial
inverse of bounded degree.  The search solves an exact linear system for a
left inverse and then confirms the two-sided identities; a certificate of
non-invertibility is a rational point where the Jacobian is singular.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import (DimensionError, Exponent, Poly, PolyMap, compose_chain,
                   poly_compose, stack)
from . import tangent as tg
from .tangent import (FiberedObject, InputError, TangentStructure,
                      select_coordinates, structure_map, tangent_map, tn_pair)

PASS = "pass"
FAIL = "fail"
NOT_VERIFIED = "not-verified"

_SPOT_CHECK_SEED = 0x7A11
_SPOT_CHECK_POINTS = 10


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of one axiom check.

    witness holds rendered nonzero difference polynomials (or a rational
    counterexample point for invertibility failures); degree_bound is set
    when an inverse search was exhausted without a verdict.
    """

    name: str
    status: str
    witness: tuple[str, ...] = ()
    degree_bound: int | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


class Composite:
    """A composable chain of PolyMaps stored in application order."""

    __slots__ = ("factors", "_flat")

    def __init__(self, factors: Sequence[PolyMap]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a composite needs at least one factor")
        for a, b in zip(factors, factors[1:]):
            if a.codomain_dim != b.domain_dim:
                raise DimensionError(
                    f"adjacent factors disagree: {a.codomain_dim} vs "
                    f"{b.domain_dim}")
        self.factors = factors
        self._flat: PolyMap | None = None

    @staticmethod
    def of(*factors: PolyMap) -> Composite:
        return Composite(factors)

    @property
    def domain_dim(self) -> int:
        return self.factors[0].domain_dim

    @property
    def codomain_dim(self) -> int:
        return self.factors[-1].codomain_dim

    def flatten(self) -> PolyMap:
        if self._flat is None:
            self._flat = compose_chain(self.factors)
        return self._flat


def _as_map(side: Composite | PolyMap) -> PolyMap:
    return side.flatten() if isinstance(side, Composite) else side


def _sample_points(dim: int, count: int, seed: int) -> list[list[Fraction]]:
    rng = random.Random(seed ^ (dim * 0x9E37))
    pool = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2),
            Fraction(-2), Fraction(1, 2), Fraction(-1, 3), Fraction(3),
            Fraction(5, 2), Fraction(-3, 2)]
    return [[rng.choice(pool) for _ in range(dim)] for _ in range(count)]


def check_equation(name: str, lhs: Composite | PolyMap,
                   rhs: Composite | PolyMap) -> VerificationResult:
    """Exact equality of two composites, with difference witnesses."""
    left, right = _as_map(lhs), _as_map(rhs)
    if (left.domain_dim, left.codomain_dim) != (right.domain_dim,
                                                right.codomain_dim):
        raise DimensionError(
            f"{name}: sides have different shapes "
            f"{left.domain_dim}->{left.codomain_dim} vs "
            f"{right.domain_dim}->{right.codomain_dim}")
    diff = left.difference(right)
    nonzero = [c for c in diff.components if not c.is_zero()]
    if nonzero:
        return VerificationResult(name, FAIL,
                                  tuple(str(c) for c in nonzero))
    # Defensive spot check: a symbolic pass must agree pointwise.
    for pt in _sample_points(left.domain_dim, _SPOT_CHECK_POINTS,
                             _SPOT_CHECK_SEED):
        if left.eval_at(pt) != right.eval_at(pt):
            raise RuntimeError(f"{name}: symbolic pass contradicted at {pt}")
    return VerificationResult(name, PASS)


def sample_point_witness(lhs: Composite | PolyMap, rhs: Composite | PolyMap,
                         seed: int = 0xBEE) -> list[Fraction] | None:
    """A rational point where the two sides differ, found by sampling."""
    left, right = _as_map(lhs), _as_map(rhs)
    for pt in _sample_points(left.domain_dim, 200, seed):
        if left.eval_at(pt) != right.eval_at(pt):
            return pt
    return None


# ---------------------------------------------------------------------------
# Exact linear algebra over Q
# ---------------------------------------------------------------------------


def solve_linear(rows: list[list[Fraction]],
                 rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of rows . t = rhs by Gaussian elimination, or None.

    Free variables are set to zero, making the output deterministic.
    """
    if not rows:
        return []
    n_cols = len(rows[0])
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot_row = None
        for i in range(r, len(aug)):
            if aug[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        factor = aug[r][col]
        aug[r] = [v / factor for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                scale = aug[i][col]
                aug[i] = [a - scale * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n_cols] != 0:
            return None
    solution = [Fraction(0)] * n_cols
    for row_idx, col in enumerate(pivots):
        solution[col] = aug[row_idx][n_cols]
    return solution


def matrix_inverse(mat: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if aug[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        factor = aug[col][col]
        aug[col] = [v / factor for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                scale = aug[i][col]
                aug[i] = [a - scale * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    m = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                scale = m[i][col] * inv
                m[i] = [a - scale * b for a, b in zip(m[i], m[col])]
    return det


# ---------------------------------------------------------------------------
# Invertibility search
# ---------------------------------------------------------------------------


def _monomials_up_to(dim: int, degree: int) -> list[Exponent]:
    monos: list[Exponent] = []
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(dim), total):
            exp = [0] * dim
            for idx in combo:
                exp[idx] += 1
            monos.append(tuple(exp))
    seen: list[Exponent] = []
    for mono in sorted(set(monos), key=lambda e: (sum(e), e)):
        seen.append(mono)
    return seen


def _affine_parts(f: PolyMap) -> tuple[list[list[Fraction]], list[Fraction]] | None:
    """Split an affine map into (matrix, constant); None if degree > 1."""
    matrix: list[list[Fraction]] = []
    consts: list[Fraction] = []
    for comp in f.components:
        if comp.total_degree() > 1:
            return None
        row = [Fraction(0)] * f.domain_dim
        const = Fraction(0)
        for mono, coeff in comp.terms.items():
            if sum(mono) == 0:
                const = coeff
            else:
                row[mono.index(1)] = coeff
        matrix.append(row)
        consts.append(const)
    return matrix, consts


def polynomial_inverse(f: PolyMap, max_degree: int) -> PolyMap | None:
    """A two-sided polynomial inverse of degree <= max_degree, if one exists.

    The left inverse condition g . f = id is linear in g's coefficients, so
    it is solved exactly; the right inverse condition is then confirmed by
    substitution.
    """
    if f.domain_dim != f.codomain_dim:
        return None
    m = f.domain_dim
    if m == 0:
        return PolyMap.identity(0)
    affine = _affine_parts(f)
    if affine is not None:
        matrix, consts = affine
        inv = matrix_inverse(matrix)
        if inv is None:
            return None
        comps = []
        for i in range(m):
            acc = Poly.const(m, -sum(inv[i][j] * consts[j] for j in range(m)))
            for j in range(m):
                if inv[i][j] != 0:
                    acc = acc + Poly.var(m, j + 1).scale(inv[i][j])
            comps.append(acc)
        return PolyMap.from_components(m, comps)

    basis = _monomials_up_to(m, max_degree)
    images: list[Poly] = []
    for mono in basis:
        term = Poly.const(m, 1)
        for j, e in enumerate(mono):
            for _ in range(e):
                term = term * f.components[j]
        images.append(term)
    # Row index set: all monomials appearing in any image or in the identity.
    row_monos = sorted({mono for img in images for mono in img.terms}
                       | {tuple(int(i == j) for i in range(m))
                          for j in range(m)},
                       key=lambda e: (sum(e), e))
    row_index = {mono: i for i, mono in enumerate(row_monos)}
    columns = [[Fraction(0)] * len(basis) for _ in row_monos]
    for col, img in enumerate(images):
        for mono, coeff in img.terms.items():
            columns[row_index[mono]][col] = coeff
    inverse_comps: list[Poly] = []
    for j in range(m):
        target = [Fraction(0)] * len(row_monos)
        unit = tuple(int(i == j) for i in range(m))
        target[row_index[unit]] = Fraction(1)
        solution = solve_linear([row[:] for row in columns], target)
        if solution is None:
            return None
        terms = {mono: coeff for mono, coeff in zip(basis, solution)
                 if coeff != 0}
        inverse_comps.append(Poly(m, terms))
    candidate = PolyMap.from_components(m, inverse_comps)
    if poly_compose(f, candidate) != PolyMap.identity(m):
        return None
    return candidate


def _singular_point(f: PolyMap, seed: int = 0x5EED) -> list[Fraction] | None:
    """A rational point where f's Jacobian is singular, if sampling finds one."""
    m = f.domain_dim
    jac = tg.jacobian(f)
    points = [[Fraction(0)] * m]
    for i in range(m):
        unit = [Fraction(0)] * m
        unit[i] = Fraction(1)
        points.append(unit)
    points.extend(_sample_points(m, 120, seed))
    for pt in points:
        numeric = [[entry.eval_at(pt) for entry in row] for row in jac]
        if _det(numeric) == 0:
            return pt
    return None


def verify_iso(name: str, f: PolyMap, max_degree: int = 2) -> VerificationResult:
    """Decide invertibility of f within the degree bound.

    pass: a two-sided polynomial inverse was found (round trips exact).
    fail: a rational point with singular Jacobian certifies non-invertibility.
    not-verified: the bounded search was exhausted without either outcome.
    """
    if f.domain_dim != f.codomain_dim:
        raise DimensionError(
            f"{name}: iso candidate must have equal dimensions, got "
            f"{f.domain_dim} -> {f.codomain_dim}")
    inverse = polynomial_inverse(f, max_degree)
    if inverse is not None:
        return VerificationResult(name, PASS)
    point = _singular_point(f)
    if point is not None:
        rendered = "point (" + ", ".join(str(v) for v in point) + ")"
        return VerificationResult(name, FAIL, (rendered,))
    return VerificationResult(name, NOT_VERIFIED, degree_bound=max_degree)


# ---------------------------------------------------------------------------
# Pullback squares
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareSpec:
    """A commuting square with candidate apex.

        apex --top-->  B
         |             |
        left         right
         v             v
         A --bottom--> C

    The cospan legs right and bottom must be affine so the fiber product
    A x_C B has an exact rational coordinate description.
    """

    name: str
    top: PolyMap
    left: PolyMap
    right: PolyMap
    bottom: PolyMap


@dataclass(frozen=True)
class FiberProduct:
    """Affine parametrization of {(a, b) : bottom(a) = right(b)}."""

    param_dim: int
    include: PolyMap   # params -> A x B
    retract: PolyMap   # A x B -> params (left inverse of include on the set)


def affine_fiber_product(bottom: PolyMap, right: PolyMap) -> FiberProduct:
    """Solve the affine constraint system of a cospan exactly."""
    if bottom.codomain_dim != right.codomain_dim:
        raise DimensionError("cospan legs have different codomains")
    a_dim, b_dim = bottom.domain_dim, right.domain_dim
    total = a_dim + b_dim
    shift = [a_dim + i for i in range(b_dim)]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(bottom.codomain_dim):
        constraint = (bottom.components[i].remap_vars(list(range(a_dim)), total)
                      - right.components[i].remap_vars(shift, total))
        if constraint.total_degree() > 1:
            raise InputError(
                "cospan legs not fiber-linear (unsupported shape)")
        row = [Fraction(0)] * total
        const = Fraction(0)
        for mono, coeff in constraint.terms.items():
            if sum(mono) == 0:
                const = coeff
            else:
                row[mono.index(1)] = coeff
        rows.append(row)
        rhs.append(-const)
    # Reduced row echelon form to classify pivot vs free coordinates.
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(total):
        pivot_row = None
        for i in range(r, len(aug)):
            if aug[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        factor = aug[r][col]
        aug[r] = [v / factor for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                scale = aug[i][col]
                aug[i] = [x - scale * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][total] != 0:
            raise InputError("cospan has an empty fiber product")
    free = [c for c in range(total) if c not in pivots]
    param_dim = len(free)
    free_pos = {c: i for i, c in enumerate(free)}
    include_comps: list[Poly] = []
    for col in range(total):
        if col in free_pos:
            include_comps.append(Poly.var(param_dim, free_pos[col] + 1))
        else:
            row = aug[pivots.index(col)]
            acc = Poly.const(param_dim, row[total])
            for fc in free:
                if row[fc] != 0:
                    acc = acc - Poly.var(param_dim, free_pos[fc] + 1).scale(row[fc])
            include_comps.append(acc)
    include = PolyMap.from_components(param_dim, include_comps)
    retract = select_coordinates(total, free)
    return FiberProduct(param_dim, include, retract)


def verify_pullback_square(sq: SquareSpec,
                           max_degree: int = 2) -> VerificationResult:
    """Check the square commutes, then test the comparison map for isoness."""
    commute = check_equation(f"{sq.name}:commutes",
                             Composite.of(sq.top, sq.right),
                             Composite.of(sq.left, sq.bottom))
    if not commute.passed:
        return VerificationResult(sq.name, FAIL, commute.witness)
    product = affine_fiber_product(sq.bottom, sq.right)
    pairing = stack([sq.left, sq.top])
    comparison = poly_compose(product.retract, pairing)
    # The pairing must land on the constraint set; with a commuting square
    # this is automatic, but assert it to guard the construction.
    if poly_compose(product.include, comparison) != pairing:
        raise RuntimeError(f"{sq.name}: fiber-product parametrization broken")
    if comparison.domain_dim != comparison.codomain_dim:
        return VerificationResult(
            sq.name, FAIL,
            (f"apex dimension {comparison.domain_dim} != fiber product "
             f"dimension {comparison.codomain_dim}",))
    return verify_iso(sq.name, comparison, max_degree)


# ---------------------------------------------------------------------------
# The tangent-structure axiom suite
# ---------------------------------------------------------------------------


def t_tn_pair(maps: Sequence[PolyMap], base_dim: int, copies: int = 2) -> PolyMap:
    """Pair maps A -> T^2(base) into T(T_n(base)).

    Each map is read as (x, v_i, xdot, vdot_i); shared blocks come from the
    first map.
    """
    m = base_dim
    first = maps[0]
    comps = list(first.components[:m])
    for f in maps:
        comps.extend(f.components[m:2 * m])
    comps.extend(first.components[2 * m:3 * m])
    for f in maps:
        comps.extend(f.components[3 * m:4 * m])
    assert len(maps) == copies
    return PolyMap.from_components(first.domain_dim, comps)


def generate_monomial_corpus(max_dim: int = 3, max_degree: int = 3
                             ) -> list[tuple[str, PolyMap]]:
    """Single-monomial maps spanning all maps of bounded degree.

    Naturality equations are linear in the coefficients of the tested map,
    so this corpus is exhaustive for naturality up to the degree bound.
    """
    corpus: list[tuple[str, PolyMap]] = []
    for m in range(1, max_dim + 1):
        corpus.append((f"id{m}", PolyMap.identity(m)))
        for n in range(1, max_dim + 1):
            for slot in range(n):
                for mono in _monomials_up_to(m, max_degree):
                    comps = [Poly.zero(m)] * n
                    comps[slot] = Poly(m, {mono: Fraction(1)})
                    name = (f"mon-m{m}n{n}s{slot}e"
                            + "".join(str(e) for e in mono))
                    corpus.append((name, PolyMap.from_components(m, comps)))
    return corpus


def random_polymap(rng: random.Random, domain_dim: int, codomain_dim: int,
                   max_degree: int, terms_per_component: int = 3) -> PolyMap:
    comps = []
    monos = _monomials_up_to(domain_dim, max_degree)
    for _ in range(codomain_dim):
        terms: dict[Exponent, Fraction] = {}
        for _ in range(terms_per_component):
            mono = rng.choice(monos)
            coeff = Fraction(rng.randint(-3, 3))
            if coeff:
                terms[mono] = terms.get(mono, Fraction(0)) + coeff
        comps.append(Poly(domain_dim, terms))
    return PolyMap.from_components(domain_dim, comps)


def _swap_fibers(fo: FiberedObject) -> PolyMap:
    m = fo.base_dim
    order = (list(range(m)) + list(range(2 * m, 3 * m))
             + list(range(m, 2 * m)))
    return PolyMap.permutation(order)


def _structural_axioms(S: TangentStructure, m: int,
                       max_degree: int) -> list[VerificationResult]:
    T = S.apply_to
    p, z, s = S.component("p", m), S.component("z", m), S.component("s", m)
    l, c, n = S.component("l", m), S.component("c", m), S.component("n", m)
    p_T = S.component("p", 2 * m)
    z_T = S.component("z", 2 * m)
    s_T = S.component("s", 2 * m)
    l_T = S.component("l", 2 * m)
    c_T = S.component("c", 2 * m)
    Tp, Tz, Ts = T(p), T(z), T(s)
    Tl, Tc = T(l), T(c)
    t2 = FiberedObject(m, 2)
    t3 = FiberedObject(m, 3)
    idT = PolyMap.identity(2 * m)
    results: list[VerificationResult] = []

    def eq(axiom: str, lhs, rhs):
        results.append(check_equation(f"tangent.{axiom}@{m}", lhs, rhs))

    # Additive bundle (p, z, s).
    eq("p-z-section", Composite.of(z, p), PolyMap.identity(m))
    eq("s-proj", Composite.of(s, p), t2.base_proj())
    zp = poly_compose(z, p)
    eq("s-unit-left", Composite.of(tn_pair([zp, idT], m), s), idT)
    eq("s-unit-right", Composite.of(tn_pair([idT, zp], m), s), idT)
    pair12 = tn_pair([poly_compose(s, tn_pair([t3.proj(1), t3.proj(2)], m)),
                      t3.proj(3)], m)
    pair23 = tn_pair([t3.proj(1),
                      poly_compose(s, tn_pair([t3.proj(2), t3.proj(3)], m))], m)
    eq("s-assoc", Composite.of(pair12, s), Composite.of(pair23, s))
    eq("s-comm", Composite.of(_swap_fibers(t2), s), s)

    # (z, l) is an additive bundle morphism p -> Tp.
    eq("l-proj", Composite.of(l, Tp), Composite.of(p, z))
    eq("l-zero", Composite.of(z, l), Composite.of(z, Tz))
    l_pair = t_tn_pair([poly_compose(l, t2.proj(1)),
                        poly_compose(l, t2.proj(2))], m)
    eq("l-sum", Composite.of(l_pair, Ts), Composite.of(s, l))

    # (id, c) is an additive bundle morphism Tp -> p_T.
    eq("c-proj", Composite.of(c, p_T), Tp)
    eq("c-zero", Composite.of(Tz, c), z_T)
    dim_tt2 = 2 * t2.dim
    c_pair = tn_pair([poly_compose(c, select_coordinates(dim_tt2,
                                                         _tpi_indices(m, 1))),
                      poly_compose(c, select_coordinates(dim_tt2,
                                                         _tpi_indices(m, 2)))],
                     2 * m)
    eq("c-sum", Composite.of(Ts, c), Composite.of(c_pair, s_T))

    # Coassociativity, flip compatibility, exchange, braiding.
    eq("l-coassoc", Composite.of(l, Tl), Composite.of(l, l_T))
    eq("l-c-compat", Composite.of(l, c), l)
    eq("l-c-exchange", Composite.of(l_T, Tc, c_T), Composite.of(c, Tl))
    eq("c-involution", Composite.of(c, c), PolyMap.identity(4 * m))
    eq("c-yang-baxter", Composite.of(Tc, c_T, Tc), Composite.of(c_T, Tc, c_T))

    # Negatives.
    eq("negatives", Composite.of(tn_pair([n, idT], m), s), Composite.of(p, z))

    # Locally linear: T_2 is the pullback of z along Tp, compared through
    # the composite Ts . (z_T x l).
    zt_l = t_tn_pair([poly_compose(z_T, t2.proj(1)),
                      poly_compose(l, t2.proj(2))], m)
    comparison_top = poly_compose(Ts, zt_l)
    results.append(verify_pullback_square(SquareSpec(
        name=f"tangent.locally-linear@{m}",
        top=comparison_top,
        left=poly_compose(p, t2.proj(1)),
        right=Tp,
        bottom=z), max_degree))

    # T_2 as the two-fold pullback of p, and its preservation by T.
    results.append(verify_pullback_square(SquareSpec(
        name=f"tangent.T2-pullback@{m}",
        top=t2.proj(2), left=t2.proj(1), right=p, bottom=p), max_degree))
    results.append(verify_pullback_square(SquareSpec(
        name=f"tangent.T2-preserved@{m}",
        top=tangent_map(t2.proj(2)), left=tangent_map(t2.proj(1)),
        right=Tp, bottom=Tp), max_degree))
    results.append(verify_pullback_square(SquareSpec(
        name=f"tangent.T3-pullback@{m}",
        top=t3.proj(3),
        left=tn_pair([t3.proj(1), t3.proj(2)], m),
        right=p,
        bottom=poly_compose(p, FiberedObject(m, 2).proj(1))), max_degree))
    return results


def _tpi_indices(m: int, which: int) -> list[int]:
    """Coordinate picks realizing T(pi_which): T(T_2(m)) -> T^2(m)."""
    base = list(range(m))
    fiber = list(range(which * m, (which + 1) * m))
    dot_base = [3 * m + i for i in base]
    dot_fiber = [3 * m + i for i in fiber]
    return base + fiber + dot_base + dot_fiber


def _naturality_axioms(S: TangentStructure, name: str, f: PolyMap
                       ) -> list[VerificationResult]:
    T = S.apply_to
    m, n = f.domain_dim, f.codomain_dim
    Tf = T(f)
    TTf = T(Tf)
    results = []

    def eq(axiom: str, lhs, rhs):
        results.append(check_equation(f"tangent.nat-{axiom}:{name}", lhs, rhs))

    eq("p", Composite.of(Tf, S.component("p", n)),
       Composite.of(S.component("p", m), f))
    eq("z", Composite.of(f, S.component("z", n)),
       Composite.of(S.component("z", m), Tf))
    t2f = tn_pair([poly_compose(Tf, FiberedObject(m, 2).proj(1)),
                   poly_compose(Tf, FiberedObject(m, 2).proj(2))], n)
    eq("s", Composite.of(t2f, S.component("s", n)),
       Composite.of(S.component("s", m), Tf))
    eq("l", Composite.of(Tf, S.component("l", n)),
       Composite.of(S.component("l", m), TTf))
    eq("c", Composite.of(TTf, S.component("c", n)),
       Composite.of(S.component("c", m), TTf))
    eq("n", Composite.of(Tf, S.component("n", n)),
       Composite.of(S.component("n", m), Tf))
    return results


def _functoriality_axioms(S: TangentStructure, dims: Sequence[int],
                          pairs: int, seed: int) -> list[VerificationResult]:
    T = S.apply_to
    rng = random.Random(seed)
    results = []
    for m in dims:
        results.append(check_equation(
            f"tangent.functor-id@{m}", T(PolyMap.identity(m)),
            PolyMap.identity(2 * m)))
    for i in range(pairs):
        a = rng.choice(list(dims))
        b = rng.choice(list(dims))
        c = rng.choice(list(dims))
        f = random_polymap(rng, a, b, 3)
        g = random_polymap(rng, b, c, 3)
        results.append(check_equation(
            f"tangent.functor-compose:{i:03d}",
            T(poly_compose(g, f)),
            Composite.of(T(f), T(g))))
    return results


def verify_tangent_axioms(dims: Sequence[int],
                          sample_maps: Sequence[tuple[str, PolyMap]]
                          | None = None,
                          structure: TangentStructure | None = None,
                          max_degree: int = 2,
                          functoriality_pairs: int = 120,
                          seed: int = 20240801) -> list[VerificationResult]:
    """Run the full structural suite at the given dims.

    sample_maps feed the naturality checks (defaults to the spanning
    monomial corpus restricted to the given dims); functoriality uses
    seeded random composable pairs so reruns are reproducible.
    """
    S = structure if structure is not None else TangentStructure.canonical()
    if sample_maps is None:
        max_dim = max(dims)
        sample_maps = [(name, f) for name, f in
                       generate_monomial_corpus(max_dim=max_dim)
                       if f.domain_dim in dims and f.codomain_dim in dims]
    if not sample_maps:
        raise InputError("naturality corpus is empty")
    results: list[VerificationResult] = []
    for m in dims:
        results.extend(_structural_axioms(S, m, max_degree))
    for name, f in sample_maps:
        results.extend(_naturality_axioms(S, name, f))
    results.extend(_functoriality_axioms(S, dims, functoriality_pairs, seed))
    results.sort(key=lambda r: r.name)
    return results
