"""Vertical, horizontal, and full connections on differential bundles.

A vertical connection is a map k: TE -> E retracting the vertical lift; a
horizontal connection is a map h: H -> TE from the horizontal bundle
H = E x_M TM with coordinates (x, e, y) splitting the projection pairing
<Tq, p>.  Connections on tangent bundles are generated from Christoffel
fields of polynomial coefficients.

Slot-order and sign calibration, fixed once for the whole package and
validated by the verifier suites plus the classical coordinate oracles:

  k(x, u, y, w) = (x, w + G(x)(y, u))        direction y in the first slot
  h(x, u, y)    = ((x, u), (y, -G(x)(y, u)))
  covariant derivative fiber:  Jsigma . v + G(v, sigma)
  curvature tensor = R^l_ijk v^i u^j s^k  for the classical symbol
      R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
  torsion tensor fiber = (G^k_ij - G^k_ji) u^i v^j

where G(a, b)^k = G^k_ij a^i b^j.  With these choices the torsion identity
W_u v = nabla_u v - nabla_v u - [u, v] holds exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .axioms import (Composite, VerificationResult, PASS, FAIL,
                     check_equation, random_polymap)
from .bundles import (DiffBundle, bundle_morphism_is_linear, e2_pair,
                      is_tangent_bundle, tangent_bundle_of,
                      tangent_diff_bundle, total_reorder, trivial_bundle,
                      universality_comparison)
from .poly import Poly, PolyMap, compose_chain, poly_compose, stack
from .tangent import (InputError, select_coordinates, structure_map,
                      tangent_map, tn_pair)


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorField:
    """A polynomial vector field on Q^n, stored by its coefficient map."""

    dim: int
    sigma: PolyMap   # n -> n

    def __post_init__(self):
        if (self.sigma.domain_dim, self.sigma.codomain_dim) != (self.dim,
                                                                self.dim):
            raise InputError("vector field coefficients must be a map n -> n")

    def as_map(self) -> PolyMap:
        """The section x -> (x, sigma(x)) of the tangent projection."""
        return stack([PolyMap.identity(self.dim), self.sigma])

    @staticmethod
    def constant(dim: int, values: Sequence[int | Fraction]) -> VectorField:
        comps = [Poly.const(dim, v) for v in values]
        return VectorField(dim, PolyMap.from_components(dim, comps))


@dataclass(frozen=True)
class BundleSection:
    """A section of a differential bundle: s: M -> E with q . s = id."""

    bundle: DiffBundle
    s: PolyMap

    def __post_init__(self):
        B = self.bundle
        if (self.s.domain_dim, self.s.codomain_dim) != (B.base_dim,
                                                        B.total_dim):
            raise InputError("section has the wrong shape for its bundle")
        if poly_compose(B.q, self.s) != PolyMap.identity(B.base_dim):
            raise InputError("not a section: q . s != id")

    def fiber(self) -> PolyMap:
        B = self.bundle
        return PolyMap.from_components(B.base_dim,
                                       self.s.components[B.base_dim:])

    @staticmethod
    def from_fiber(bundle: DiffBundle, fiber: PolyMap) -> BundleSection:
        m = bundle.base_dim
        comps = [Poly.var(m, i + 1) for i in range(m)] + list(fiber.components)
        return BundleSection(bundle, PolyMap.from_components(m, comps))


class ChristoffelField:
    """Connection coefficients: an n x n x n array of polynomials in x1..xn.

    gamma[k][i][j] is the output-k coefficient; no symmetry is assumed, so
    torsion is a measured output rather than a hypothesis.
    """

    __slots__ = ("dim", "gamma")

    def __init__(self, dim: int, gamma: Sequence[Sequence[Sequence[Poly]]]):
        self.dim = dim
        self.gamma = tuple(tuple(tuple(row) for row in plane)
                           for plane in gamma)
        if len(self.gamma) != dim or any(
                len(plane) != dim or any(len(row) != dim for row in plane)
                for plane in self.gamma):
            raise InputError("Christoffel array must be dim x dim x dim")
        for plane in self.gamma:
            for row in plane:
                for entry in row:
                    if entry.dim != dim:
                        raise InputError(
                            "Christoffel entries must live in the base "
                            "variables")

    @staticmethod
    def zero(dim: int) -> ChristoffelField:
        z = Poly.zero(dim)
        return ChristoffelField(
            dim, [[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @staticmethod
    def from_entries(dim: int,
                     entries: dict[tuple[int, int, int], Poly]
                     ) -> ChristoffelField:
        """Build from sparse 1-indexed entries (k, i, j) -> Poly."""
        gamma = [[[Poly.zero(dim) for _ in range(dim)] for _ in range(dim)]
                 for _ in range(dim)]
        for (k, i, j), poly in entries.items():
            if not (1 <= k <= dim and 1 <= i <= dim and 1 <= j <= dim):
                raise InputError(f"Christoffel index ({k},{i},{j}) out of "
                                 f"range 1..{dim}")
            gamma[k - 1][i - 1][j - 1] = poly
        return ChristoffelField(dim, gamma)

    @staticmethod
    def random(rng: random.Random, dim: int,
               max_degree: int = 2) -> ChristoffelField:
        field = random_polymap(rng, dim, dim * dim * dim, max_degree,
                               terms_per_component=2)
        comps = iter(field.components)
        return ChristoffelField(
            dim, [[[next(comps) for _ in range(dim)] for _ in range(dim)]
                  for _ in range(dim)])

    def contract(self, a: Sequence[Poly], b: Sequence[Poly],
                 ambient_dim: int, x_map: Sequence[int]) -> list[Poly]:
        """G(a, b)^k = sum_ij G^k_ij a^i b^j with base vars embedded via
        x_map into an ambient variable space."""
        out = []
        for k in range(self.dim):
            acc = Poly.zero(ambient_dim)
            for i in range(self.dim):
                for j in range(self.dim):
                    entry = self.gamma[k][i][j]
                    if entry.is_zero():
                        continue
                    lifted = entry.remap_vars(list(x_map), ambient_dim)
                    acc = acc + lifted * a[i] * b[j]
            out.append(acc)
        return out


@dataclass(frozen=True)
class Connection:
    """A differential bundle with a vertical map and optional horizontal map."""

    bundle: DiffBundle
    k: PolyMap
    h: PolyMap | None = None

    def __post_init__(self):
        B = self.bundle
        te = 2 * B.total_dim
        if (self.k.domain_dim, self.k.codomain_dim) != (te, B.total_dim):
            raise InputError("vertical map must have shape TE -> E")
        if self.h is not None:
            hd = B.total_dim + B.base_dim
            if (self.h.domain_dim, self.h.codomain_dim) != (hd, te):
                raise InputError("horizontal map must have shape H -> TE")


# ---------------------------------------------------------------------------
# Horizontal bundle plumbing
# ---------------------------------------------------------------------------


def horizontal_dim(m: int, k: int) -> int:
    return m + k + m


def h_proj_total(m: int, k: int) -> PolyMap:
    """pi_E: (x, e, y) -> (x, e)."""
    return select_coordinates(horizontal_dim(m, k), list(range(m + k)))


def h_proj_tangent(m: int, k: int) -> PolyMap:
    """pi_TM: (x, e, y) -> (x, y)."""
    return select_coordinates(horizontal_dim(m, k),
                              list(range(m)) + list(range(m + k, m + k + m)))


def projection_pairing(m: int, k: int) -> PolyMap:
    """<Tq, p> assembled in horizontal coordinates: TE -> (x, e, y=xdot)."""
    return select_coordinates(2 * (m + k),
                              list(range(m + k))
                              + list(range(m + k, 2 * m + k)))


def _zero_polys(dim: int, count: int) -> list[Poly]:
    return [Poly.zero(dim) for _ in range(count)]


def _h_vars(m: int, k: int, block: str) -> list[Poly]:
    dim = horizontal_dim(m, k)
    offsets = {"x": (0, m), "e": (m, m + k), "y": (m + k, m + k + m)}
    lo, hi = offsets[block]
    return [Poly.var(dim, i + 1) for i in range(lo, hi)]


def horizontal_zero_lift(m: int, k: int) -> PolyMap:
    """The lift of the horizontal bundle over E: (x,e,y) ->
    ((x,e,0),(0,0,y)) in T(H) coordinates."""
    dim = horizontal_dim(m, k)
    comps = (_h_vars(m, k, "x") + _h_vars(m, k, "e") + _zero_polys(dim, m)
             + _zero_polys(dim, m + k) + _h_vars(m, k, "y"))
    return PolyMap.from_components(dim, comps)


def horizontal_lift_lift(B: DiffBundle) -> PolyMap:
    """The lift of the horizontal bundle over TM: the bundle lift on the
    fiber block and the zero tangent on the direction block."""
    m, k = B.base_dim, B.fiber_dim
    dim = horizontal_dim(m, k)
    lq_e = poly_compose(B.lq, h_proj_total(m, k))
    mk = m + k
    comps = (list(lq_e.components[:m]) + list(lq_e.components[m:mk])
             + _h_vars(m, k, "y") + list(lq_e.components[mk:mk + m])
             + list(lq_e.components[mk + m:2 * mk]) + _zero_polys(dim, m))
    return PolyMap.from_components(dim, comps)


# ---------------------------------------------------------------------------
# Construction from Christoffel fields
# ---------------------------------------------------------------------------


def connection_from_christoffel(G: ChristoffelField) -> Connection:
    """The affine connection on the tangent bundle generated by G.

    Calibrated coordinate formulas (see the module docstring): the vertical
    map adds the bilinear correction G(y, u) to the mixed second-order slot,
    the horizontal map subtracts it.
    """
    n = G.dim
    bundle = tangent_bundle_of(n)
    te = 4 * n
    x_map = list(range(n))
    u = [Poly.var(te, n + i + 1) for i in range(n)]
    y = [Poly.var(te, 2 * n + i + 1) for i in range(n)]
    w = [Poly.var(te, 3 * n + i + 1) for i in range(n)]
    correction = G.contract(y, u, te, x_map)
    k_comps = [Poly.var(te, i + 1) for i in range(n)] \
        + [w[i] + correction[i] for i in range(n)]
    k_map = PolyMap.from_components(te, k_comps)

    hd = 3 * n
    hu = [Poly.var(hd, n + i + 1) for i in range(n)]
    hy = [Poly.var(hd, 2 * n + i + 1) for i in range(n)]
    h_correction = G.contract(hy, hu, hd, x_map)
    h_comps = ([Poly.var(hd, i + 1) for i in range(n)] + hu + hy
               + [-h_correction[i] for i in range(n)])
    h_map = PolyMap.from_components(hd, h_comps)
    return Connection(bundle, k_map, h_map)


def flat_connection(B: DiffBundle) -> Connection:
    """The trivial connection reading off the fiber tangent block."""
    m, k = B.base_dim, B.fiber_dim
    mk = m + k
    te = 2 * mk
    k_map = select_coordinates(te, list(range(m))
                               + list(range(mk + m, te)))
    hd = horizontal_dim(m, k)
    h_comps = (_h_vars(m, k, "x") + _h_vars(m, k, "e") + _h_vars(m, k, "y")
               + _zero_polys(hd, k))
    h_map = PolyMap.from_components(hd, h_comps)
    return Connection(B, k_map, h_map)


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def verify_vertical_connection(B: DiffBundle, k_map: PolyMap
                               ) -> list[VerificationResult]:
    """Retract law, base compatibility, the two lift equations, and the two
    linear-morphism conditions against the tangent-lifted bundle and the
    tangent bundle of the total space."""
    m, k = B.base_dim, B.fiber_dim
    mk = m + k
    te = 2 * mk
    if (k_map.domain_dim, k_map.codomain_dim) != (te, mk):
        raise InputError("vertical map must have shape TE -> E")
    p_e = structure_map("p", mk)
    l_e = structure_map("l", mk)
    c_e = structure_map("c", mk)
    t_k = tangent_map(k_map)
    results = [
        check_equation("conn.vertical.retract",
                       Composite.of(B.lq, k_map), PolyMap.identity(mk)),
        check_equation("conn.vertical.base",
                       Composite.of(k_map, B.q), Composite.of(p_e, B.q)),
        check_equation("conn.vertical.lift-1",
                       Composite.of(k_map, B.lq), Composite.of(l_e, t_k)),
        check_equation("conn.vertical.lift-2",
                       Composite.of(k_map, B.lq),
                       Composite.of(tangent_map(B.lq), c_e, t_k)),
    ]
    lifted = tangent_diff_bundle(B)
    rho = total_reorder(m, k)
    results.append(bundle_morphism_is_linear(
        "conn.vertical.linear-T", structure_map("p", m),
        poly_compose(k_map, rho), lifted, B))
    results.append(bundle_morphism_is_linear(
        "conn.vertical.linear-p", B.q, k_map, tangent_bundle_of(mk), B))
    results.sort(key=lambda r: r.name)
    return results


def verify_horizontal_connection(B: DiffBundle, h_map: PolyMap
                                 ) -> list[VerificationResult]:
    """Section law, the two projection squares, the two whiskered lift
    equations, and the linear-morphism conditions against the two
    pullback-bundle structures on the horizontal bundle."""
    m, k = B.base_dim, B.fiber_dim
    mk = m + k
    hd = horizontal_dim(m, k)
    if (h_map.domain_dim, h_map.codomain_dim) != (hd, 2 * mk):
        raise InputError("horizontal map must have shape H -> TE")
    p_e = structure_map("p", mk)
    l_e = structure_map("l", mk)
    c_e = structure_map("c", mk)
    t_q = tangent_map(B.q)
    t_h = tangent_map(h_map)
    results = [
        check_equation("conn.horizontal.section",
                       Composite.of(h_map, projection_pairing(m, k)),
                       PolyMap.identity(hd)),
        check_equation("conn.horizontal.proj-1",
                       Composite.of(h_map, t_q), h_proj_tangent(m, k)),
        check_equation("conn.horizontal.proj-2",
                       Composite.of(h_map, p_e), h_proj_total(m, k)),
        check_equation("conn.horizontal.lift-1",
                       Composite.of(h_map, l_e),
                       Composite.of(horizontal_zero_lift(m, k), t_h)),
        check_equation("conn.horizontal.lift-2",
                       Composite.of(h_map, tangent_map(B.lq), c_e),
                       Composite.of(horizontal_lift_lift(B), t_h)),
    ]
    results.append(bundle_morphism_is_linear(
        "conn.horizontal.linear-over-E", PolyMap.identity(mk), h_map,
        trivial_bundle(mk, m), tangent_bundle_of(mk)))
    # The pullback bundle over TM uses reordered coordinates (x, y, e).
    reorder_h = PolyMap.permutation(list(range(m))
                                    + list(range(m + k, m + k + m))
                                    + list(range(m, m + k)))
    over_tm_dim = 2 * m + k
    lq_edot = [comp.remap_vars(list(range(m)) + list(range(2 * m, 2 * m + k)),
                               over_tm_dim)
               for comp in B.lq.components[mk + m:]]
    lift = PolyMap.from_components(
        over_tm_dim,
        [Poly.var(over_tm_dim, i + 1) for i in range(2 * m)]
        + _zero_polys(over_tm_dim, k) + _zero_polys(over_tm_dim, 2 * m)
        + lq_edot)
    over_tm = DiffBundle(
        2 * m, k,
        q=select_coordinates(over_tm_dim, list(range(2 * m))),
        zq=PolyMap.from_components(
            2 * m, [Poly.var(2 * m, i + 1) for i in range(2 * m)]
            + _zero_polys(2 * m, k)),
        sq=PolyMap.from_components(
            2 * m + 2 * k,
            [Poly.var(2 * m + 2 * k, i + 1) for i in range(2 * m)]
            + [Poly.var(2 * m + 2 * k, 2 * m + i + 1)
               + Poly.var(2 * m + 2 * k, 2 * m + k + i + 1)
               for i in range(k)]),
        lq=lift)
    lifted = tangent_diff_bundle(B)
    rho_inv = total_reorder(m, k).permutation_inverse()
    results.append(bundle_morphism_is_linear(
        "conn.horizontal.linear-over-TM", PolyMap.identity(2 * m),
        compose_chain([reorder_h.permutation_inverse(), h_map, rho_inv]),
        over_tm, lifted))
    results.sort(key=lambda r: r.name)
    return results


def verify_full_connection(C: Connection,
                           include_component_suites: bool = True
                           ) -> list[VerificationResult]:
    """Both component suites plus orthogonality and the direct-sum law."""
    if C.h is None:
        raise InputError("full-connection verification needs a horizontal map")
    B = C.bundle
    m, k = B.base_dim, B.fiber_dim
    mk = m + k
    results: list[VerificationResult] = []
    if include_component_suites:
        results.extend(verify_vertical_connection(B, C.k))
        results.extend(verify_horizontal_connection(B, C.h))
    p_e = structure_map("p", mk)
    s_e = structure_map("s", mk)
    results.append(check_equation(
        "conn.full.orthogonal",
        Composite.of(C.h, C.k),
        Composite.of(h_proj_total(m, k), B.q, B.zq)))
    vertical_part = compose_chain([e2_pair(C.k, p_e, m, k),
                                   universality_comparison(B)])
    horizontal_part = compose_chain([projection_pairing(m, k), C.h])
    results.append(check_equation(
        "conn.full.direct-sum",
        Composite.of(tn_pair([vertical_part, horizontal_part], mk), s_e),
        PolyMap.identity(2 * mk)))
    results.sort(key=lambda r: r.name)
    return results


# ---------------------------------------------------------------------------
# Tangent functor on connections
# ---------------------------------------------------------------------------


def tangent_connection(C: Connection) -> Connection:
    """Lift a connection to the tangent of its bundle: the vertical map
    becomes the tangent of k after the flip; the horizontal map becomes the
    tangent of h after flipping the direction block."""
    B = C.bundle
    m, k = B.base_dim, B.fiber_dim
    mk = m + k
    lifted = tangent_diff_bundle(B)
    rho = total_reorder(m, k)
    rho_inv = rho.permutation_inverse()
    k_new = compose_chain([tangent_map(rho), structure_map("c", mk),
                           tangent_map(C.k), rho_inv])
    h_new = None
    if C.h is not None:
        # New horizontal coordinates (x, xdot, e, edot, y, ydot) map onto
        # T(H) coordinates (x, e, y, xdot, edot, ydot).
        psi = PolyMap.permutation(
            list(range(m))
            + list(range(2 * m, 2 * m + k))
            + list(range(2 * m + 2 * k, 3 * m + 2 * k))
            + list(range(m, 2 * m))
            + list(range(2 * m + k, 2 * m + 2 * k))
            + list(range(3 * m + 2 * k, 4 * m + 2 * k)))
        h_new = compose_chain([psi, tangent_map(C.h), tangent_map(rho_inv)])
    return Connection(lifted, k_new, h_new)


# ---------------------------------------------------------------------------
# Covariant derivative, curvature, torsion
# ---------------------------------------------------------------------------


def covariant_derivative(C: Connection, v: VectorField,
                         s: BundleSection) -> BundleSection:
    """nabla_v s = k . Ts . v, a section of the same bundle."""
    B = C.bundle
    if v.dim != B.base_dim or s.bundle != B:
        raise InputError("vector field and section must live on the bundle")
    composite = compose_chain([v.as_map(), tangent_map(s.s), C.k])
    return BundleSection(B, composite)


def _fiber_difference(a: PolyMap, b: PolyMap, base_dim: int) -> PolyMap:
    """Subtract fiberwise over a shared base block (taken from a)."""
    comps = list(a.components[:base_dim]) + [
        x - y for x, y in zip(a.components[base_dim:],
                              b.components[base_dim:])]
    return PolyMap.from_components(a.domain_dim, comps)


def curvature_morphism(C: Connection) -> PolyMap:
    """rho = k . Tk - k . Tk . c as a map T^2(total) -> total."""
    B = C.bundle
    mk = B.total_dim
    straight = compose_chain([tangent_map(C.k), C.k])
    flipped = compose_chain([structure_map("c", mk), tangent_map(C.k), C.k])
    return _fiber_difference(straight, flipped, B.base_dim)


def curvature_tensor(C: Connection, u: VectorField, v: VectorField,
                     s: BundleSection) -> BundleSection:
    """R_{u,v} s = rho . T^2 s . Tu . v."""
    B = C.bundle
    if u.dim != B.base_dim or v.dim != B.base_dim or s.bundle != B:
        raise InputError("fields and section must live on the bundle")
    t2s = tangent_map(tangent_map(s.s))
    composite = compose_chain([v.as_map(), tangent_map(u.as_map()), t2s,
                               curvature_morphism(C)])
    return BundleSection(B, composite)


def torsion_morphism(C: Connection) -> PolyMap:
    """tau = c . k - k as a map T^2 M -> TM; affine connections only."""
    B = C.bundle
    if not is_tangent_bundle(B):
        raise InputError("torsion is defined for connections on a tangent "
                         "bundle")
    n = B.base_dim
    flipped = compose_chain([structure_map("c", n), C.k])
    return _fiber_difference(flipped, C.k, n)


def torsion_tensor(C: Connection, u: VectorField, v: VectorField
                   ) -> VectorField:
    """W_u v = tau . Tu . v as a vector field on the base."""
    n = C.bundle.base_dim
    if u.dim != n or v.dim != n:
        raise InputError("torsion tensor fields must live on the base")
    composite = compose_chain([v.as_map(), tangent_map(u.as_map()),
                               torsion_morphism(C)])
    if tuple(composite.components[:n]) != tuple(
            PolyMap.identity(n).components):
        raise RuntimeError("torsion composite is not based at the identity")
    return VectorField(n, PolyMap.from_components(
        n, composite.components[n:]))


# ---------------------------------------------------------------------------
# Classical oracles
# ---------------------------------------------------------------------------


def lie_bracket(u: VectorField, v: VectorField) -> VectorField:
    """[u, v] with coefficients Jv . u - Ju . v."""
    if u.dim != v.dim:
        raise InputError("bracket of fields on different spaces")
    n = u.dim
    comps = []
    for out in range(n):
        acc = Poly.zero(n)
        for j in range(n):
            acc = acc + v.sigma.components[out].partial(j + 1) \
                * u.sigma.components[j]
            acc = acc - u.sigma.components[out].partial(j + 1) \
                * v.sigma.components[j]
        comps.append(acc)
    return VectorField(n, PolyMap.from_components(n, comps))


def riemann_oracle(G: ChristoffelField, u: VectorField, v: VectorField,
                   s: VectorField) -> VectorField:
    """Classical coordinate curvature contracted with (v, u, s).

    Uses R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
    with i contracted against v, j against u, and k against s; this is the
    one-time calibration matching the connection constructor.
    """
    n = G.dim
    if not (u.dim == v.dim == s.dim == n):
        raise InputError("oracle fields must live on the base space")
    comps = []
    for out in range(n):
        acc = Poly.zero(n)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    symbol = (G.gamma[out][j][k].partial(i + 1)
                              - G.gamma[out][i][k].partial(j + 1))
                    for mid in range(n):
                        symbol = symbol + G.gamma[out][i][mid] \
                            * G.gamma[mid][j][k]
                        symbol = symbol - G.gamma[out][j][mid] \
                            * G.gamma[mid][i][k]
                    if symbol.is_zero():
                        continue
                    acc = acc + symbol * v.sigma.components[i] \
                        * u.sigma.components[j] * s.sigma.components[k]
        comps.append(acc)
    return VectorField(n, PolyMap.from_components(n, comps))


def torsion_oracle(G: ChristoffelField, u: VectorField,
                   v: VectorField) -> VectorField:
    """Antisymmetrized Christoffel contraction (G^k_ij - G^k_ji) u^i v^j."""
    n = G.dim
    comps = []
    for out in range(n):
        acc = Poly.zero(n)
        for i in range(n):
            for j in range(n):
                skew = G.gamma[out][i][j] - G.gamma[out][j][i]
                if skew.is_zero():
                    continue
                acc = acc + skew * u.sigma.components[i] \
                    * v.sigma.components[j]
        comps.append(acc)
    return VectorField(n, PolyMap.from_components(n, comps))


# ---------------------------------------------------------------------------
# Scalar-multiplication helpers used by the tensoriality properties
# ---------------------------------------------------------------------------


def field_scale(f: Poly, v: VectorField) -> VectorField:
    comps = [f * c for c in v.sigma.components]
    return VectorField(v.dim, PolyMap.from_components(v.dim, comps))


def section_scale(f: Poly, s: BundleSection) -> BundleSection:
    fiber = [f * c for c in s.fiber().components]
    return BundleSection.from_fiber(
        s.bundle, PolyMap.from_components(s.bundle.base_dim, fiber))


def section_add(a: BundleSection, b: BundleSection) -> BundleSection:
    if a.bundle != b.bundle:
        raise InputError("sections of different bundles")
    fiber = [x + y for x, y in zip(a.fiber().components,
                                   b.fiber().components)]
    return BundleSection.from_fiber(
        a.bundle, PolyMap.from_components(a.bundle.base_dim, fiber))


def directional_derivative(f: Poly, v: VectorField) -> Poly:
    acc = Poly.zero(v.dim)
    for j in range(v.dim):
        acc = acc + f.partial(j + 1) * v.sigma.components[j]
    return acc
