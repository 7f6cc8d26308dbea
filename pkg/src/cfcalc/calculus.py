"""The calculus of integer-valued functions constant on open simplices.

Operations: pointwise arithmetic, Euler integration, pullback, proper
pushforward, combinatorial duality, and the restriction and extension
operators derived from them.  Every computation is exact integer
arithmetic; there are no tolerances anywhere.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .complexes import (
    Involution,
    OpenSubset,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    Subcomplex,
    complement_open,
    quotient_by_involution,
)
from .errors import MissingSimplexError, ModelError


def _clean_items(
    ambient: SimplicialComplex, values: Mapping
) -> tuple[tuple[Simplex, int], ...]:
    cleaned: dict[Simplex, int] = {}
    for key, raw in values.items():
        s = Simplex(key)
        if s not in ambient.simplices:
            raise MissingSimplexError(f"{s} is not a simplex of the ambient complex")
        if not isinstance(raw, int):
            raise ModelError(f"value at {s} must be an integer, got {raw!r}")
        v = int(raw)
        if v:
            cleaned[s] = v
    return tuple(sorted(cleaned.items()))


@dataclass(frozen=True, init=False)
class ConstructibleFunction:
    """An integer value per open simplex of a fixed ambient complex.

    Only nonzero values are stored.  The support is an arbitrary subset of
    the simplices; duals and shrieks routinely produce supports that are
    not face-closed.
    """

    ambient: SimplicialComplex
    items: tuple[tuple[Simplex, int], ...]

    def __init__(self, ambient: SimplicialComplex, values: Mapping) -> None:
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "items", _clean_items(ambient, values))

    def _lookup(self) -> dict[Simplex, int]:
        table = getattr(self, "_table", None)
        if table is None:
            table = dict(self.items)
            object.__setattr__(self, "_table", table)
        return table

    def value(self, simplex_like) -> int:
        s = Simplex(simplex_like)
        if s not in self.ambient.simplices:
            raise MissingSimplexError(f"{s} is not a simplex of the ambient complex")
        return self._lookup().get(s, 0)

    @property
    def support(self) -> frozenset[Simplex]:
        return frozenset(s for s, _ in self.items)

    def _same_ambient(self, other: "ConstructibleFunction") -> None:
        if self.ambient != other.ambient:
            raise ModelError("functions live on different ambient complexes")

    def __add__(self, other):
        if not isinstance(other, ConstructibleFunction):
            return NotImplemented
        self._same_ambient(other)
        acc = dict(self.items)
        for s, v in other.items:
            acc[s] = acc.get(s, 0) + v
        return ConstructibleFunction(self.ambient, acc)

    def __sub__(self, other):
        if not isinstance(other, ConstructibleFunction):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ConstructibleFunction(self.ambient, {s: -v for s, v in self.items})

    def __mul__(self, other):
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return ConstructibleFunction(
                self.ambient, {s: other * v for s, v in self.items}
            )
        if isinstance(other, ConstructibleFunction):
            self._same_ambient(other)
            table = other._lookup()
            return ConstructibleFunction(
                self.ambient,
                {s: v * table[s] for s, v in self.items if s in table},
            )
        return NotImplemented

    __rmul__ = __mul__


def constructible_function(ambient: SimplicialComplex, values: Mapping | None = None):
    return ConstructibleFunction(ambient, values or {})


def zero_function(ambient: SimplicialComplex) -> ConstructibleFunction:
    return ConstructibleFunction(ambient, {})


def indicator(region) -> ConstructibleFunction:
    """Value 1 on every simplex of a subcomplex, open subset, or whole complex."""
    if isinstance(region, SimplicialComplex):
        return ConstructibleFunction(region, {s: 1 for s in region.simplices})
    if isinstance(region, (Subcomplex, OpenSubset)):
        return ConstructibleFunction(region.parent, {s: 1 for s in region.simplices})
    raise ModelError(f"cannot take the indicator of {type(region).__name__}")


def euler_integral(phi: ConstructibleFunction) -> int:
    """Sum of (-1)^dim times the value, over all open simplices.

    This is the compactly supported Euler characteristic weighted by the
    function; on indicators of subcomplexes it is the Euler characteristic.
    """
    return sum(-v if s.dim % 2 else v for s, v in phi.items)


def pullback(f: SimplicialMap, psi: ConstructibleFunction) -> ConstructibleFunction:
    """Composition with the map: value at a simplex is the value at its image."""
    if psi.ambient != f.target:
        raise ModelError("function does not live on the target of the map")
    table = psi._lookup()
    values = {}
    for s in f.source.simplices:
        v = table.get(f.image(s), 0)
        if v:
            values[s] = v
    return ConstructibleFunction(f.source, values)


def pushforward(f: SimplicialMap, phi: ConstructibleFunction) -> ConstructibleFunction:
    """Proper pushforward: fiberwise sum weighted by (-1) to the dimension drop.

    Composing with the map to a point recovers euler_integral.
    """
    if phi.ambient != f.source:
        raise ModelError("function does not live on the source of the map")
    acc: dict[Simplex, int] = defaultdict(int)
    for s, v in phi.items:
        t = f.image(s)
        acc[t] += -v if (s.dim - t.dim) % 2 else v
    return ConstructibleFunction(f.target, acc)


def dual(phi: ConstructibleFunction) -> ConstructibleFunction:
    """Combinatorial duality: the signed star sum.

    The dual at a simplex sums (-1)^dim(t) * phi(t) over all cofaces t.
    Applying it twice is the identity, and it sends the indicator of a
    closed d-manifold subcomplex to (-1)^d times itself.  Implemented by
    scattering each support simplex onto its faces, which is the same sum
    grouped the other way.
    """
    acc: dict[Simplex, int] = defaultdict(int)
    for t, v in phi.items:
        signed = -v if t.dim % 2 else v
        for s in t.subsimplices():
            acc[s] += signed
    return ConstructibleFunction(phi.ambient, acc)


def restrict(phi: ConstructibleFunction, closed: Subcomplex) -> ConstructibleFunction:
    """Plain restriction of values to a subcomplex, viewed as its own complex."""
    if phi.ambient != closed.parent:
        raise ModelError("function does not live on the parent of the subcomplex")
    table = phi._lookup()
    return ConstructibleFunction(
        closed.as_complex(),
        {s: table[s] for s in closed.simplices if s in table},
    )


def shriek_restrict(closed: Subcomplex, phi: ConstructibleFunction) -> ConstructibleFunction:
    """Restriction conjugated by duality on both sides.

    This is the costalk-weighted restriction: dualize on the ambient
    complex, restrict, dualize on the subcomplex.
    """
    return dual(restrict(dual(phi), closed))


def restrict_open(phi: ConstructibleFunction, opensub: OpenSubset) -> ConstructibleFunction:
    """Zero out all values outside an open subset.

    Functions on an open subset are carried on the ambient complex with
    support inside the subset; that is a faithful encoding because open
    subsets are not face-closed and have no standalone complex.
    """
    if phi.ambient != opensub.parent:
        raise ModelError("function does not live on the parent of the open subset")
    return ConstructibleFunction(
        phi.ambient,
        {s: v for s, v in phi.items if s in opensub.simplices},
    )


def _require_supported_in(phi: ConstructibleFunction, opensub: OpenSubset) -> None:
    if phi.ambient != opensub.parent:
        raise ModelError("function does not live on the parent of the open subset")
    stray = sorted(phi.support - opensub.simplices)
    if stray:
        raise ModelError(f"function is not supported in the open subset: {stray[0]}")


def open_extend(opensub: OpenSubset, psi: ConstructibleFunction) -> ConstructibleFunction:
    """Extension by zero from an open subset to the whole complex.

    With supports already carried on the ambient complex this only checks
    the support condition; the returned function is unchanged.
    """
    _require_supported_in(psi, opensub)
    return psi

def open_pushforward(opensub: OpenSubset, psi: ConstructibleFunction) -> ConstructibleFunction:
    """Pushforward along the open inclusion, via duality on both sides.

    Dualize inside the open subset (cofaces of its simplices never leave
    it, so the star sums need no clipping), extend by zero, dualize on the
    whole complex.
    """
    _require_supported_in(psi, opensub)
    inner = restrict_open(dual(psi), opensub)
    return dual(open_extend(opensub, inner))


def triangle_decompose(
    closed: Subcomplex, phi: ConstructibleFunction
) -> tuple[ConstructibleFunction, ConstructibleFunction]:
    """Split the restriction to a subcomplex into costalk and boundary terms.

    Returns (shriek_restrict(closed, phi), restriction of the open
    pushforward of phi from the complement).  Their sum is the plain
    restriction, exactly, on every subcomplex and every function.
    """
    opensub = complement_open(closed.parent, closed)
    costalk = shriek_restrict(closed, phi)
    boundary = restrict(open_pushforward(opensub, restrict_open(phi, opensub)), closed)
    return costalk, boundary


def _clean_mod2(ambient: SimplicialComplex, values: Mapping):
    cleaned = {}
    for key, raw in values.items():
        s = Simplex(key)
        if s not in ambient.simplices:
            raise MissingSimplexError(f"{s} is not a simplex of the ambient complex")
        if not isinstance(raw, int) or raw not in (0, 1):
            raise ModelError(f"mod-2 value at {s} must be 0 or 1, got {raw!r}")
        if raw:
            cleaned[s] = 1
    return tuple(sorted(cleaned.items()))


@dataclass(frozen=True, init=False)
class Mod2Function:
    """A value in {0, 1} per open simplex; addition is pointwise xor."""

    ambient: SimplicialComplex
    items: tuple[tuple[Simplex, int], ...]

    def __init__(self, ambient: SimplicialComplex, values: Mapping) -> None:
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "items", _clean_mod2(ambient, values))

    def value(self, simplex_like) -> int:
        s = Simplex(simplex_like)
        if s not in self.ambient.simplices:
            raise MissingSimplexError(f"{s} is not a simplex of the ambient complex")
        return 1 if (s, 1) in set(self.items) else 0

    @property
    def support(self) -> frozenset[Simplex]:
        return frozenset(s for s, _ in self.items)

    def __add__(self, other):
        if not isinstance(other, Mod2Function):
            return NotImplemented
        if self.ambient != other.ambient:
            raise ModelError("functions live on different ambient complexes")
        return Mod2Function(
            self.ambient, {s: 1 for s in self.support ^ other.support}
        )


def mod2_function(ambient: SimplicialComplex, values: Mapping | None = None) -> Mod2Function:
    return Mod2Function(ambient, values or {})


def mod2_reduce(phi: ConstructibleFunction) -> Mod2Function:
    return Mod2Function(phi.ambient, {s: v % 2 for s, v in phi.items})


def mod2_euler_integral(alpha: Mod2Function) -> int:
    # signs are invisible mod 2, so this is just the support count
    return len(alpha.items) % 2


def mod2_pushforward(f: SimplicialMap, alpha: Mod2Function) -> Mod2Function:
    if alpha.ambient != f.source:
        raise ModelError("function does not live on the source of the map")
    acc: dict[Simplex, int] = defaultdict(int)
    for s, _ in alpha.items:
        acc[f.image(s)] ^= 1
    return Mod2Function(f.target, acc)


def orbit_pushforward(tau: Involution, alpha: ConstructibleFunction) -> ConstructibleFunction:
    """Sum over orbits of a strongly free involution, on the quotient complex.

    The value at an orbit is alpha(s) + alpha(tau(s)); the quotient complex
    is available as the ambient of the result.
    """
    if alpha.ambient != tau.space:
        raise ModelError("function does not live on the involution's complex")
    _, projection = quotient_by_involution(tau)
    return pushforward(projection, alpha)
