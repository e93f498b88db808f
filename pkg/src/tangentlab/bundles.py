"""Differential objects and display differential bundles in the model.

A differential object is carried by a dimension n with a zero point, an
addition map, and a differential projection TA -> A.  A differential bundle
is carried by a total space Q^(m+k) whose projection onto the first m
coordinates is the bundle map; zero section, fiberwise sum, and vertical
lift are explicit PolyMaps.  Both are plain data: validity is a verdict
produced by the verify_* suites, never a construction-time precondition
(diagnosing invalid structures with witnesses is part of the point).

The representation restricts projections to coordinate projections (global
trivializations).  Iterated tangents of such projections stay coordinate
selections up to permutation, which makes every pullback demanded by the
display condition a concrete coordinate product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .axioms import (Composite, SquareSpec, VerificationResult, PASS, FAIL,
                     check_equation, polynomial_inverse, verify_pullback_square)
from .poly import Poly, PolyMap, compose_chain, poly_compose, stack
from .tangent import (DEFAULT_MAX_TANGENT_ORDER, InputError, cartesian_prod,
                      coordinate_projection, iterate_tangent,
                      product_tangent_shuffle, select_coordinates,
                      structure_map, tangent_map, tn_pair, to_terminal)


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiffObject:
    """Candidate differential object: (dim, zero point, sum, projection)."""

    dim: int
    zeta: PolyMap    # 0 -> dim
    sigma: PolyMap   # 2*dim -> dim
    phat: PolyMap    # 2*dim -> dim

    def __post_init__(self):
        n = self.dim
        shapes = [(self.zeta, 0, n), (self.sigma, 2 * n, n),
                  (self.phat, 2 * n, n)]
        for f, dom, cod in shapes:
            if (f.domain_dim, f.codomain_dim) != (dom, cod):
                raise InputError(
                    f"differential object map has shape "
                    f"{f.domain_dim}->{f.codomain_dim}, expected {dom}->{cod}")


@dataclass(frozen=True)
class DiffBundle:
    """Candidate differential bundle over Q^m with fiber Q^k.

    The projection q must be the coordinate projection (x, e) -> x; the
    remaining structure maps are arbitrary polynomial data.
    """

    base_dim: int
    fiber_dim: int
    q: PolyMap    # (m+k) -> m
    zq: PolyMap   # m -> (m+k)
    sq: PolyMap   # (m+2k) -> (m+k), on E_2 coordinates (x, e1, e2)
    lq: PolyMap   # (m+k) -> 2(m+k), into TE coordinates (x, e, xdot, edot)

    def __post_init__(self):
        m, k = self.base_dim, self.fiber_dim
        if self.q != coordinate_projection(m + k, m):
            raise InputError(
                "q not a coordinate projection (unsupported representation)")
        shapes = [(self.zq, m, m + k), (self.sq, m + 2 * k, m + k),
                  (self.lq, m + k, 2 * (m + k))]
        for f, dom, cod in shapes:
            if (f.domain_dim, f.codomain_dim) != (dom, cod):
                raise InputError(
                    f"bundle map has shape {f.domain_dim}->{f.codomain_dim}, "
                    f"expected {dom}->{cod}")

    @property
    def total_dim(self) -> int:
        return self.base_dim + self.fiber_dim


# ---------------------------------------------------------------------------
# Fiber-power plumbing for a bundle (m, k)
# ---------------------------------------------------------------------------


def e2_dim(m: int, k: int) -> int:
    return m + 2 * k


def e2_proj(m: int, k: int, which: int) -> PolyMap:
    base = list(range(m))
    fiber = list(range(m + (which - 1) * k, m + which * k))
    return select_coordinates(e2_dim(m, k), base + fiber)


def e2_base(m: int, k: int) -> PolyMap:
    return coordinate_projection(e2_dim(m, k), m)


def e2_pair(f: PolyMap, g: PolyMap, m: int, k: int) -> PolyMap:
    """Pair two maps into E with a shared base into E_2 (base from f)."""
    comps = list(f.components[:m]) + list(f.components[m:m + k]) \
        + list(g.components[m:m + k])
    return PolyMap.from_components(f.domain_dim, comps)


def e2_swap(m: int, k: int) -> PolyMap:
    order = (list(range(m)) + list(range(m + k, m + 2 * k))
             + list(range(m, m + k)))
    return PolyMap.permutation(order)


def te2_pair(f: PolyMap, g: PolyMap, m: int, k: int) -> PolyMap:
    """Pair maps A -> TE sharing their T(base) part into T(E_2).

    TE coordinates are (x, e, xdot, edot); the output T(E_2) coordinates
    are (x, e1, e2, xdot, edot1, edot2) with shared blocks from f.
    """
    mk = m + k
    comps = (list(f.components[:m])                       # x
             + list(f.components[m:mk])                   # e1
             + list(g.components[m:mk])                   # e2
             + list(f.components[mk:mk + m])              # xdot
             + list(f.components[mk + m:2 * mk])          # edot1
             + list(g.components[mk + m:2 * mk]))         # edot2
    return PolyMap.from_components(f.domain_dim, comps)


def universality_comparison(B: DiffBundle) -> PolyMap:
    """The comparison E_2 -> TE: lift the first summand, zero the second,
    add with the tangent of the bundle sum."""
    m, k = B.base_dim, B.fiber_dim
    z_e = structure_map("z", m + k)
    lifted = poly_compose(B.lq, e2_proj(m, k, 1))
    zeroed = poly_compose(z_e, e2_proj(m, k, 2))
    return poly_compose(tangent_map(B.sq), te2_pair(lifted, zeroed, m, k))


# ---------------------------------------------------------------------------
# Differential objects
# ---------------------------------------------------------------------------


def standard_diff_object(n: int) -> DiffObject:
    """Zero point, coordinatewise sum, fiber projection on Q^n."""
    if n < 0:
        raise InputError(f"negative dimension {n}")
    zeta = PolyMap.zero_map(0, n)
    dim2 = 2 * n
    sigma = PolyMap.from_components(
        dim2, [Poly.var(dim2, i + 1) + Poly.var(dim2, n + i + 1)
               for i in range(n)])
    phat = select_coordinates(dim2, list(range(n, 2 * n)))
    return DiffObject(n, zeta, sigma, phat)


def verify_diff_object(D: DiffObject,
                       max_degree: int = 2) -> list[VerificationResult]:
    """The full axiom suite for a candidate differential object."""
    n = D.dim
    ident = PolyMap.identity(n)
    zeta_pt = poly_compose(D.zeta, to_terminal(n))   # A -> A, constant zero
    p = structure_map("p", n)
    z = structure_map("z", n)
    s = structure_map("s", n)
    l = structure_map("l", n)
    t2_proj1 = select_coordinates(3 * n, list(range(n)) + list(range(n, 2 * n)))
    t2_proj2 = select_coordinates(3 * n, list(range(n)) + list(range(2 * n, 3 * n)))
    shuffle = product_tangent_shuffle([n, n])        # T(AxA) -> TA x TA
    t_sigma = tangent_map(D.sigma)
    t_phat = tangent_map(D.phat)
    results = [
        check_equation("do.monoid.unit-left",
                       Composite.of(stack([zeta_pt, ident]), D.sigma), ident),
        check_equation("do.monoid.unit-right",
                       Composite.of(stack([ident, zeta_pt]), D.sigma), ident),
        check_equation("do.monoid.assoc",
                       Composite.of(cartesian_prod(D.sigma, ident), D.sigma),
                       Composite.of(cartesian_prod(ident, D.sigma), D.sigma)),
        check_equation("do.monoid.comm",
                       Composite.of(PolyMap.permutation(
                           list(range(n, 2 * n)) + list(range(n))), D.sigma),
                       D.sigma),
        check_equation("do.add1.zero",
                       Composite.of(tangent_map(D.zeta), D.phat), D.zeta),
        check_equation("do.add1.sum",
                       Composite.of(t_sigma, D.phat),
                       Composite.of(shuffle,
                                    cartesian_prod(D.phat, D.phat), D.sigma)),
        check_equation("do.add2.zero",
                       Composite.of(z, D.phat), zeta_pt),
        check_equation("do.add2.sum",
                       Composite.of(s, D.phat),
                       Composite.of(stack([poly_compose(D.phat, t2_proj1),
                                           poly_compose(D.phat, t2_proj2)]),
                                    D.sigma)),
        check_equation("do.linearity",
                       Composite.of(l, t_phat, D.phat), D.phat),
        verify_pullback_square(SquareSpec(
            name="do.universality",
            top=D.phat, left=p,
            right=to_terminal(n), bottom=to_terminal(n)), max_degree),
    ]
    results.sort(key=lambda r: r.name)
    return results


def tangent_diff_object(D: DiffObject) -> DiffObject:
    """Apply the tangent functor to a differential object.

    The new sum is the tangent of the old one under the T(AxA) = TA x TA
    identification; the new projection precomposes the tangent of the old
    projection with the canonical flip.
    """
    n = D.dim
    unshuffle = product_tangent_shuffle([n, n]).permutation_inverse()
    sigma = poly_compose(tangent_map(D.sigma), unshuffle)
    phat = compose_chain([structure_map("c", n), tangent_map(D.phat)])
    return DiffObject(2 * n, tangent_map(D.zeta), sigma, phat)


# ---------------------------------------------------------------------------
# Differential bundles
# ---------------------------------------------------------------------------


def tangent_bundle_of(m: int) -> DiffBundle:
    """The tangent bundle of Q^m as a differential bundle."""
    return DiffBundle(m, m,
                      q=structure_map("p", m),
                      zq=structure_map("z", m),
                      sq=structure_map("s", m),
                      lq=structure_map("l", m))


def trivial_bundle(m: int, k: int) -> DiffBundle:
    """The product bundle Q^m x Q^k with fiberwise structure."""
    mk = m + k
    q = coordinate_projection(mk, m)
    zq = PolyMap.from_components(
        m, [Poly.var(m, i + 1) for i in range(m)] + [Poly.zero(m)] * k)
    dim2 = e2_dim(m, k)
    sq = PolyMap.from_components(
        dim2, [Poly.var(dim2, i + 1) for i in range(m)]
        + [Poly.var(dim2, m + i + 1) + Poly.var(dim2, m + k + i + 1)
           for i in range(k)])
    lq = PolyMap.from_components(
        mk, [Poly.var(mk, i + 1) for i in range(m)] + [Poly.zero(mk)] * k
        + [Poly.zero(mk)] * m + [Poly.var(mk, m + i + 1) for i in range(k)])
    return DiffBundle(m, k, q, zq, sq, lq)


def _display_check(B: DiffBundle, max_tangent_order: int) -> VerificationResult:
    """T^j q must stay a coordinate selection with distinct variables,
    which keeps every pullback along it a coordinate product preserved by
    further tangents."""
    for j in range(max_tangent_order + 1):
        iterated = iterate_tangent(B.q, j, max_order=max_tangent_order)
        seen: set[int] = set()
        for comp in iterated.components:
            terms = list(comp.terms.items())
            if len(terms) != 1:
                return VerificationResult(
                    "db.display", FAIL,
                    (f"T^{j} of the projection has component {comp}",))
            mono, coeff = terms[0]
            if coeff != 1 or sum(mono) != 1 or mono.index(1) in seen:
                return VerificationResult(
                    "db.display", FAIL,
                    (f"T^{j} of the projection has component {comp}",))
            seen.add(mono.index(1))
    return VerificationResult("db.display", PASS)


def verify_diff_bundle(B: DiffBundle, max_degree: int = 2,
                       max_tangent_order: int = DEFAULT_MAX_TANGENT_ORDER
                       ) -> list[VerificationResult]:
    """The full axiom suite for a candidate differential bundle."""
    m, k = B.base_dim, B.fiber_dim
    mk = m + k
    ident_e = PolyMap.identity(mk)
    z_m = structure_map("z", m)
    z_e = structure_map("z", mk)
    s_e = structure_map("s", mk)
    l_e = structure_map("l", mk)
    p_e = structure_map("p", mk)
    pi1, pi2 = e2_proj(m, k, 1), e2_proj(m, k, 2)
    lq_pi1 = poly_compose(B.lq, pi1)
    lq_pi2 = poly_compose(B.lq, pi2)
    t_zq, t_sq, t_lq = tangent_map(B.zq), tangent_map(B.sq), tangent_map(B.lq)
    t_q = tangent_map(B.q)

    # Associativity runs on E_3 with coordinates (x, e1, e2, e3).
    dim3 = m + 3 * k
    e3_proj = [select_coordinates(dim3, list(range(m))
                                  + list(range(m + i * k, m + (i + 1) * k)))
               for i in range(3)]
    sum12 = poly_compose(B.sq, e2_pair(e3_proj[0], e3_proj[1], m, k))
    sum23 = poly_compose(B.sq, e2_pair(e3_proj[1], e3_proj[2], m, k))

    results = [
        check_equation("db.section", Composite.of(B.zq, B.q),
                       PolyMap.identity(m)),
        check_equation("db.sum-base", Composite.of(B.sq, B.q), e2_base(m, k)),
        check_equation("db.monoid.unit-left",
                       Composite.of(e2_pair(compose_chain([B.q, B.zq]),
                                            ident_e, m, k), B.sq), ident_e),
        check_equation("db.monoid.unit-right",
                       Composite.of(e2_pair(ident_e,
                                            compose_chain([B.q, B.zq]),
                                            m, k), B.sq), ident_e),
        check_equation("db.monoid.assoc",
                       Composite.of(e2_pair(sum12, e3_proj[2], m, k), B.sq),
                       Composite.of(e2_pair(e3_proj[0], sum23, m, k), B.sq)),
        check_equation("db.monoid.comm",
                       Composite.of(e2_swap(m, k), B.sq), B.sq),
        check_equation("db.add1.proj", Composite.of(B.lq, t_q),
                       Composite.of(B.q, z_m)),
        check_equation("db.add1.zero", Composite.of(B.zq, B.lq),
                       Composite.of(z_m, t_zq)),
        check_equation("db.add1.sum",
                       Composite.of(te2_pair(lq_pi1, lq_pi2, m, k), t_sq),
                       Composite.of(B.sq, B.lq)),
        check_equation("db.add2.proj", Composite.of(B.lq, p_e),
                       Composite.of(B.q, B.zq)),
        check_equation("db.add2.zero", Composite.of(B.zq, B.lq),
                       Composite.of(B.zq, z_e)),
        check_equation("db.add2.sum",
                       Composite.of(tn_pair([lq_pi1, lq_pi2], mk), s_e),
                       Composite.of(B.sq, B.lq)),
        check_equation("db.linearity", Composite.of(B.lq, t_lq),
                       Composite.of(B.lq, l_e)),
        verify_pullback_square(SquareSpec(
            name="db.universality",
            top=universality_comparison(B),
            left=e2_base(m, k),
            right=t_q,
            bottom=z_m), max_degree),
        _display_check(B, max_tangent_order),
    ]
    results.sort(key=lambda r: r.name)
    return results


# ---------------------------------------------------------------------------
# Tangent functor on bundles
# ---------------------------------------------------------------------------


def total_reorder(m: int, k: int) -> PolyMap:
    """Permutation from doubled-bundle coordinates (x, xdot, e, edot) to the
    natural TE coordinates (x, e, xdot, edot)."""
    images = (list(range(m)) + list(range(2 * m, 2 * m + k))
              + list(range(m, 2 * m)) + list(range(2 * m + k, 2 * m + 2 * k)))
    return PolyMap.permutation(images)


def _te2_reorder(m: int, k: int) -> PolyMap:
    """Permutation from doubled-bundle E_2 coordinates
    (x, xdot, e1, edot1, e2, edot2) to T(E_2) coordinates
    (x, e1, e2, xdot, edot1, edot2)."""
    x = list(range(m))
    xdot = list(range(m, 2 * m))
    e1 = list(range(2 * m, 2 * m + k))
    edot1 = list(range(2 * m + k, 2 * m + 2 * k))
    e2 = list(range(2 * m + 2 * k, 2 * m + 3 * k))
    edot2 = list(range(2 * m + 3 * k, 2 * m + 4 * k))
    return PolyMap.permutation(x + e1 + e2 + xdot + edot1 + edot2)


def tangent_diff_bundle(B: DiffBundle) -> DiffBundle:
    """Apply the tangent functor to a differential bundle.

    Base and fiber dimensions double; the structure maps are the tangents
    of the old ones conjugated by the coordinate shuffles that present TE
    as a bundle over TM, and the new lift is the flip after the tangent of
    the old lift.
    """
    m, k = B.base_dim, B.fiber_dim
    rho = total_reorder(m, k)               # new total -> TE
    rho_inv = rho.permutation_inverse()
    zq = poly_compose(rho_inv, tangent_map(B.zq))
    sq = compose_chain([_te2_reorder(m, k), tangent_map(B.sq), rho_inv])
    lq = compose_chain([rho, tangent_map(B.lq), structure_map("c", m + k),
                        tangent_map(rho_inv)])
    return DiffBundle(2 * m, 2 * k,
                      q=coordinate_projection(2 * m + 2 * k, 2 * m),
                      zq=zq, sq=sq, lq=lq)


def bundle_morphism_is_linear(name: str, f: PolyMap, g: PolyMap,
                              B: DiffBundle, B2: DiffBundle
                              ) -> VerificationResult:
    """Check (f, g) commutes with projections and with vertical lifts."""
    if (f.domain_dim != B.base_dim or f.codomain_dim != B2.base_dim
            or g.domain_dim != B.total_dim or g.codomain_dim != B2.total_dim):
        raise InputError(f"{name}: morphism dimensions do not match bundles")
    proj_square = check_equation(f"{name}.proj", Composite.of(g, B2.q),
                                 Composite.of(B.q, f))
    lift_square = check_equation(f"{name}.lift", Composite.of(g, B2.lq),
                                 Composite.of(B.lq, tangent_map(g)))
    if proj_square.passed and lift_square.passed:
        return VerificationResult(name, PASS)
    return VerificationResult(name, FAIL,
                              proj_square.witness + lift_square.witness)


# ---------------------------------------------------------------------------
# Differential bundles over the point vs differential objects
# ---------------------------------------------------------------------------


def bundle_point_to_diff_object(B: DiffBundle,
                                max_degree: int = 2) -> DiffObject:
    """Read a differential object off a bundle over the terminal object.

    The universality comparison E x E -> TE is inverted and the first
    component (the slot fed by the lift) is the differential projection.
    """
    if B.base_dim != 0:
        raise InputError("bundle base must be the terminal object")
    k = B.fiber_dim
    mu = universality_comparison(B)
    mu_inv = polynomial_inverse(mu, max_degree)
    if mu_inv is None:
        raise InputError(
            "lift universality comparison is not invertible; the bundle is "
            "not a differential bundle over the point")
    phat = poly_compose(select_coordinates(2 * k, list(range(k))), mu_inv)
    return DiffObject(k, B.zq, B.sq, phat)


def diff_object_to_bundle_point(D: DiffObject,
                                max_degree: int = 2) -> DiffBundle:
    """Present a differential object as a bundle over the terminal object,
    rebuilding the lift from the projection pairing."""
    n = D.dim
    pairing = stack([structure_map("p", n), D.phat])
    inverse = polynomial_inverse(pairing, max_degree)
    if inverse is None:
        raise InputError(
            "projection pairing <p, phat> is not invertible; not a valid "
            "differential object")
    zeta_pt = poly_compose(D.zeta, to_terminal(n))
    lq = poly_compose(inverse, stack([zeta_pt, PolyMap.identity(n)]))
    return DiffBundle(0, n, q=to_terminal(n), zq=D.zeta, sq=D.sigma, lq=lq)


def is_tangent_bundle(B: DiffBundle) -> bool:
    return B == tangent_bundle_of(B.base_dim)


def all_passed(results: Sequence[VerificationResult]) -> bool:
    return all(r.passed for r in results)
