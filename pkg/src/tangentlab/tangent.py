"""Tangent structure on the category of polynomial maps over Q.

Objects are dimensions m (the spaces Q^m); morphisms are PolyMaps.  The
tangent functor doubles coordinates and acts on maps as symbolic
forward-mode differentiation.  Coordinate conventions, fixed once and used
by every other module:

  T(m) = 2m with coordinates (x, v);   Tf(x, v) = (f(x), Jf(x) . v)
  p(x, v) = x                          projection      2m -> m
  z(x) = (x, 0)                        zero section     m -> 2m
  s(x, v1, v2) = (x, v1 + v2)          fiberwise sum   3m -> 2m
  l(x, v) = (x, 0, 0, v)               vertical lift   2m -> 4m
  c(x, v, y, w) = (x, y, v, w)         canonical flip  4m -> 4m
  n(x, v) = (x, -v)                    fiber negation  2m -> 2m

T^2(m) = 4m carries coordinates (x, v, y, w) standing for the element
((x, v), (y, w)) of T(T m); iterating T doubles blocks on the right.
The multi-fiber object T_n(m) has coordinates (x, v1, ..., vn).

Whiskering follows the usual two flavours: T applied to a transformation
(tangent_map of its component) versus the transformation instantiated at a
tangent object (the component at dimension 2m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .poly import DimensionError, Poly, PolyMap, stack

DEFAULT_MAX_TANGENT_ORDER = 4


class InputError(ValueError):
    """User-facing input error (bad configuration or unsupported request)."""


# ---------------------------------------------------------------------------
# The tangent functor on morphisms
# ---------------------------------------------------------------------------


def jacobian(f: PolyMap) -> list[list[Poly]]:
    """Jacobian matrix of formal partials, entry [i][j] = d f_i / d x_{j+1}."""
    return [[comp.partial(j + 1) for j in range(f.domain_dim)]
            for comp in f.components]


def tangent_map(f: PolyMap) -> PolyMap:
    """Tf(x, v) = (f(x), Jf(x) . v), a map 2m -> 2n."""
    m, n = f.domain_dim, f.codomain_dim
    dom = 2 * m
    # Embed f's components into 2m variables (x block unchanged).
    embed = list(range(m))
    base = [comp.remap_vars(embed, dom) for comp in f.components]
    jac = jacobian(f)
    fiber = []
    for i in range(n):
        acc = Poly.zero(dom)
        for j in range(m):
            entry = jac[i][j].remap_vars(embed, dom)
            acc = acc + entry * Poly.var(dom, m + j + 1)
        fiber.append(acc)
    return PolyMap(dom, 2 * n, tuple(base + fiber))


def iterate_tangent(f: PolyMap, k: int,
                    max_order: int = DEFAULT_MAX_TANGENT_ORDER) -> PolyMap:
    """T^k f; k is bounded by max_order because dimensions grow as m * 2^k."""
    if k < 0:
        raise InputError(f"negative tangent order {k}")
    if k > max_order:
        raise InputError(
            f"tangent order {k} exceeds the configured bound {max_order}")
    result = f
    for _ in range(k):
        result = tangent_map(result)
    return result


# ---------------------------------------------------------------------------
# Structure maps
# ---------------------------------------------------------------------------


def _vars(dim: int, indices: Sequence[int]) -> tuple[Poly, ...]:
    return tuple(Poly.var(dim, i + 1) for i in indices)


def _zeros(dim: int, count: int) -> tuple[Poly, ...]:
    return tuple(Poly.zero(dim) for _ in range(count))


@lru_cache(maxsize=None)
def structure_map(name: str, m: int) -> PolyMap:
    """The canonical structural transformation at dimension m."""
    if m < 0:
        raise InputError(f"negative dimension {m}")
    if name == "p":
        return PolyMap(2 * m, m, _vars(2 * m, range(m)))
    if name == "z":
        return PolyMap(m, 2 * m, _vars(m, range(m)) + _zeros(m, m))
    if name == "s":
        dim = 3 * m
        x = _vars(dim, range(m))
        summed = tuple(Poly.var(dim, m + i + 1) + Poly.var(dim, 2 * m + i + 1)
                       for i in range(m))
        return PolyMap(dim, 2 * m, x + summed)
    if name == "l":
        dim = 2 * m
        return PolyMap(dim, 4 * m,
                       _vars(dim, range(m)) + _zeros(dim, 2 * m)
                       + _vars(dim, range(m, 2 * m)))
    if name == "c":
        dim = 4 * m
        order = (list(range(m)) + list(range(2 * m, 3 * m))
                 + list(range(m, 2 * m)) + list(range(3 * m, 4 * m)))
        return PolyMap(dim, dim, _vars(dim, order))
    if name == "n":
        dim = 2 * m
        negated = tuple(-Poly.var(dim, m + i + 1) for i in range(m))
        return PolyMap(dim, dim, _vars(dim, range(m)) + negated)
    raise InputError(f"unknown structure map {name!r}")


def whisker(transform: str | PolyMap, position: str, dim: int) -> PolyMap:
    """Whisker a structural transformation with T.

    position "left-by-T" gives the transformation T(alpha) (tangent_map of
    the component at dim); "right-at-T" gives alpha at the tangent object
    (the component at dimension 2*dim).
    """
    if position == "left-by-T":
        component = (structure_map(transform, dim)
                     if isinstance(transform, str) else transform)
        return tangent_map(component)
    if position == "right-at-T":
        if not isinstance(transform, str):
            raise InputError("right-at-T whiskering needs a named family")
        return structure_map(transform, 2 * dim)
    raise InputError(f"unknown whisker position {position!r}")


# ---------------------------------------------------------------------------
# Cartesian structure
# ---------------------------------------------------------------------------


def cartesian_pair(f: PolyMap, g: PolyMap) -> PolyMap:
    """<f, g>: shared domain, stacked components."""
    return stack([f, g])


def cartesian_prod(f: PolyMap, g: PolyMap) -> PolyMap:
    """f x g: acts componentwise on the sum of domains."""
    dom = f.domain_dim + g.domain_dim
    left = [c.remap_vars(list(range(f.domain_dim)), dom) for c in f.components]
    shift = [f.domain_dim + i for i in range(g.domain_dim)]
    right = [c.remap_vars(shift, dom) for c in g.components]
    return PolyMap.from_components(dom, left + right)


def projection(dims: Sequence[int], which: int) -> PolyMap:
    """Projection from the product of the listed dims onto factor `which`."""
    total = sum(dims)
    offset = sum(dims[:which])
    return PolyMap(total, dims[which],
                   _vars(total, range(offset, offset + dims[which])))


def to_terminal(m: int) -> PolyMap:
    """The unique map m -> 0 (the empty tuple of components)."""
    return PolyMap(m, 0, ())


def coordinate_projection(total: int, first: int) -> PolyMap:
    """Projection onto the first `first` coordinates."""
    return PolyMap(total, first, _vars(total, range(first)))


def select_coordinates(total: int, indices: Sequence[int]) -> PolyMap:
    """Map picking out the (0-indexed) coordinates in order."""
    return PolyMap(total, len(indices), _vars(total, indices))


# ---------------------------------------------------------------------------
# Multi-fiber objects T_n and coordinate shuffles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiberedObject:
    """The n-fold fiber power of p over dimension m: coordinates (x, v1..vn)."""

    base_dim: int
    copies: int

    @property
    def dim(self) -> int:
        return self.base_dim * (1 + self.copies)

    def proj(self, i: int) -> PolyMap:
        """pi_i: (x, v1..vn) -> (x, v_i), with i 1-indexed."""
        if not 1 <= i <= self.copies:
            raise InputError(f"projection index {i} out of range")
        m = self.base_dim
        idx = list(range(m)) + list(range(i * m, (i + 1) * m))
        return select_coordinates(self.dim, idx)

    def base_proj(self) -> PolyMap:
        return coordinate_projection(self.dim, self.base_dim)


def tn_pair(maps: Sequence[PolyMap], base_dim: int) -> PolyMap:
    """Pair maps A -> T(base_dim) sharing the p-projection into T_n.

    The base block is read off the first map; callers are responsible for
    the compatibility p . f_i = p . f_1 (valid inputs satisfy it, and the
    axiom checkers verify it where it is an axiom).
    """
    m = base_dim
    comps = list(maps[0].components[:m])
    for f in maps:
        if f.codomain_dim != 2 * m:
            raise DimensionError("tn_pair expects maps into T(base_dim)")
        comps.extend(f.components[m:])
    return PolyMap.from_components(maps[0].domain_dim, comps)


def product_tangent_shuffle(dims: Sequence[int]) -> PolyMap:
    """The iso T(A1 x ... x Ak) -> TA1 x ... x TAk as a permutation map.

    Input coordinates (a1..ak, da1..dak); output ((a1, da1), ..., (ak, dak)).
    """
    total = sum(dims)
    images: list[int] = []
    offset = 0
    for d in dims:
        images.extend(range(offset, offset + d))
        images.extend(range(total + offset, total + offset + d))
        offset += d
    return PolyMap.permutation(images)


# ---------------------------------------------------------------------------
# Candidate tangent structures
# ---------------------------------------------------------------------------


@dataclass
class TangentStructure:
    """A (possibly non-canonical) choice of structural maps for the model.

    The canonical structure uses the convention-table maps and the
    forward-mode action on morphisms.  Overridden candidates are plain
    data: validity is a verdict produced by the axiom suite, not a
    construction-time guarantee.
    """

    maps: dict[str, Callable[[int], PolyMap]] = field(default_factory=dict)
    apply_to: Callable[[PolyMap], PolyMap] = tangent_map

    @staticmethod
    def canonical() -> TangentStructure:
        return TangentStructure()

    def component(self, name: str, m: int) -> PolyMap:
        override = self.maps.get(name)
        if override is not None:
            return override(m)
        return structure_map(name, m)

    def with_override(self, name: str,
                      builder: Callable[[int], PolyMap]) -> TangentStructure:
        replaced = dict(self.maps)
        replaced[name] = builder
        return TangentStructure(replaced, self.apply_to)
