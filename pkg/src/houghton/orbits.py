"""Orbit structure of a single element acting on Z.

An element with shift c != 0 has exactly |c| infinite orbits; far to the
right each one covers a residue class mod |c|, and likewise far to the
left (possibly a different residue).  Anything else the element does is
confined to finitely many finite orbits near the support of its finitary
part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .elem import GroupElement


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class InfiniteOrbit:
    """One of the |shift| infinite orbits of an element.

    index        -- position in 0..|shift|-1, equal to pos_residue
    pos_residue  -- residue mod |shift| of the far-positive tail
    neg_residue  -- residue mod |shift| of the far-negative tail
    exceptional_points -- orbit points x with |x| <= eventual_bound, sorted
    """

    index: int
    pos_residue: int
    neg_residue: int
    exceptional_points: Tuple[int, ...]


@dataclass(frozen=True)
class OrbitDecomposition:
    shift: int
    bound: int
    infinite: Tuple[InfiniteOrbit, ...]
    finite: Tuple[Tuple[int, ...], ...]

    def orbit_id_of(self, g: GroupElement, x: int) -> str:
        """Identify the orbit of x: 'inf<j>', 'fin<i>', or 'fixed'."""
        if self.shift == 0:
            for i, cyc in enumerate(self.finite):
                if x in cyc:
                    return "fin%d" % i
            return "fixed"
        for i, cyc in enumerate(self.finite):
            if x in cyc:
                return "fin%d" % i
        y = x
        d = abs(self.shift)
        limit = (abs(x) + 2 * (self.bound + d)) // d + 2 * (self.bound + d) + 8
        for _ in range(limit):
            if y > self.bound and self.shift > 0:
                return "inf%d" % (y % d)
            if y < -self.bound and self.shift < 0:
                for orb in self.infinite:
                    if orb.neg_residue == y % d:
                        return "inf%d" % orb.index
            y = g.apply(y)
        raise OrbitError("could not locate orbit of %d" % x)


def decompose(g: GroupElement) -> OrbitDecomposition:
    m = g.eventual_bound()
    c = g.shift
    if c == 0:
        return OrbitDecomposition(shift=0, bound=m, infinite=(), finite=g.fin.cycles())
    d = abs(c)
    leftward = g.inverse() if c > 0 else g
    on_infinite = set()
    orbits = []
    for j in range(d):
        x0 = m + 1 + ((j - (m + 1)) % d)
        pts = []
        y = x0
        while y >= -(m + d):
            if y <= m + d:
                on_infinite.add(y)
            if abs(y) <= m:
                pts.append(y)
            y = leftward.apply(y)
        orbits.append(
            InfiniteOrbit(
                index=j,
                pos_residue=j,
                neg_residue=y % d,
                exceptional_points=tuple(sorted(pts)),
            )
        )
    if len({orb.neg_residue for orb in orbits}) != d:
        raise OrbitError("infinite orbits do not partition the left tail")
    finite = []
    seen = set(on_infinite)
    for x in range(-(m + d), m + d + 1):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = g.apply(x)
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = g.apply(y)
        finite.append(tuple(cyc))
    return OrbitDecomposition(shift=c, bound=m, infinite=tuple(orbits), finite=tuple(finite))


def orbit_index(g: GroupElement, x: int, y: int, limit: Optional[int] = None) -> Optional[int]:
    """Least-magnitude n with (x)g^n = y, preferring positive n on ties.

    Returns None when y is not on the orbit of x (within a search limit
    that is exhaustive for points near the support)."""
    if x == y:
        return 0
    m = g.eventual_bound()
    d = abs(g.shift)
    if limit is None:
        limit = (abs(x) + abs(y) + 2 * (m + d)) // max(d, 1) + 2 * (m + d) + 8
    fwd = bwd = x
    for n in range(1, limit + 1):
        fwd = g.apply(fwd)
        if fwd == y:
            return n
        if fwd == x:
            # finite orbit of length n; y is not on it
            return None
        bwd = g.inverse().apply(bwd)
        if bwd == y:
            return -n
    return None
