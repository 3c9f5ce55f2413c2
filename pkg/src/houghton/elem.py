"""Elements of the second Houghton group H_2.

Every element has a unique normal form g = sigma * t^c where sigma is a
finitely supported permutation, t is the translation z -> z+1, and c is an
integer.  The action is on the right: (x)g = (x)sigma + c.

The subgroups of interest are G_k = <Alt(Z), t^k>; an element sigma * t^c
lies in G_k exactly when k divides c and sigma is even.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .perm import FinPerm, PermError


class ElemError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    fin: FinPerm
    shift: int

    # -- action ----------------------------------------------------------

    def apply(self, x: int) -> int:
        return self.fin.apply(x) + self.shift

    def __call__(self, x: int) -> int:
        return self.fin.apply(x) + self.shift

    def is_identity(self) -> bool:
        return self.shift == 0 and self.fin.is_identity()

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """(x)(g*h) = ((x)g)h.

        In normal form: sigma_g t^c * sigma_h t^d = sigma_g * tau * t^(c+d)
        where tau = t^c sigma_h t^-c moves the support of sigma_h by -c.
        """
        if not isinstance(other, GroupElement):
            return NotImplemented
        tau = other.fin.translate(-self.shift)
        return GroupElement(self.fin * tau, self.shift + other.shift)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.fin.inverse().translate(self.shift), -self.shift)

    def __pow__(self, n: int) -> "GroupElement":
        if n == 0:
            return identity()
        base = self if n > 0 else self.inverse()
        n = abs(n)
        out = identity()
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self, w: "GroupElement") -> "GroupElement":
        """self^w = w^-1 * self * w."""
        return w.inverse() * self * w

    def eventual_bound(self) -> int:
        """Least m >= 0 such that (x)g = x + shift whenever |x| > m."""
        return max((abs(x) for x in self.fin.support), default=0)

    # -- text ------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_identity():
            return "e"
        if self.shift == 0:
            return str(self.fin)
        if self.fin.is_identity():
            return "t^%d" % self.shift
        return "%s t^%d" % (self.fin, self.shift)

    def __repr__(self) -> str:
        return "GroupElement(%s)" % str(self)


def identity() -> GroupElement:
    return GroupElement(FinPerm.identity(), 0)


def t(k: int = 1) -> GroupElement:
    return GroupElement(FinPerm.identity(), k)


def finitary(sigma: FinPerm) -> GroupElement:
    return GroupElement(sigma, 0)


def make_s(sigma: FinPerm, k: int = 1) -> GroupElement:
    """s = sigma^-1 t^k sigma, the relabelled translation by k."""
    w = finitary(sigma)
    return w.inverse() * t(k) * w


_ELEM_RE = re.compile(
    r"^\s*(?P<cycles>e|(?:\([^()]*\)\s*)*)\s*(?:\*\s*)?(?P<t>t(?:\^(-?\d+))?)?\s*$"
)


def parse_element(text: str) -> GroupElement:
    """Parse elements like '(1 2 3) t^2', '(0 1)', 't', 't^-3', 'e'.

    An optional '*' may separate the finitary part from the translation
    part, and 'e' is accepted as the finitary part ('e t^-1').  Commas
    inside cycles are treated as whitespace.  Only ASCII is accepted.
    """
    s = text.strip()
    if any(ord(ch) > 127 for ch in s):
        raise ElemError("non-ASCII character in %r" % text)
    if s == "e":
        return identity()
    if not s:
        raise ElemError("empty element text")
    m = _ELEM_RE.match(s)
    if not m or (not m.group("cycles").strip() and not m.group("t")):
        raise ElemError("cannot parse element %r" % text)
    shift = 0
    if m.group("t"):
        tpart = m.group("t")
        shift = 1 if tpart == "t" else int(tpart.split("^", 1)[1])
    cyc_text = m.group("cycles").strip()
    try:
        fin = FinPerm.parse(cyc_text) if cyc_text and cyc_text != "e" else FinPerm.identity()
    except PermError as exc:
        raise ElemError(str(exc)) from exc
    return GroupElement(fin, shift)


# -- groups ----------------------------------------------------------------


@dataclass(frozen=True)
class Group:
    """Either the full group H_2 or a subgroup G_k = <Alt(Z), t^k>."""

    kind: str  # "H2" or "Gk"
    k: int = 0

    def __post_init__(self):
        if self.kind == "H2":
            if self.k != 0:
                raise ElemError("H2 takes no parameter")
        elif self.kind == "Gk":
            if self.k < 1:
                raise ElemError("G_k needs k >= 1")
        else:
            raise ElemError("unknown group kind %r" % self.kind)

    def __str__(self) -> str:
        return "H2" if self.kind == "H2" else "G%d" % self.k


H2 = Group("H2")


def G(k: int) -> Group:
    return Group("Gk", k)


def parse_group(text: str) -> Group:
    s = text.strip()
    if s == "H2":
        return H2
    m = re.fullmatch(r"G_?(\d+)", s)
    if m:
        return G(int(m.group(1)))
    raise ElemError("cannot parse group %r" % text)


def member(g: GroupElement, group: Group) -> bool:
    if group.kind == "H2":
        return True
    return g.shift % group.k == 0 and g.fin.is_even()


# -- translation classes -----------------------------------------------------


@dataclass(frozen=True)
class ClassTkWitness:
    """Witness that g is conjugate in Sym(Z) to t^k: a point seed_j per
    residue class j in 0..k-1 such that pi(j + n*k) = (seed_j)g^n is a
    bijection of Z with pi^-1 g pi = t^k.  The sign records the shift
    orientation of g itself, which distinguishes the classes of t^k and
    t^-k inside H_2 (where reflections are unavailable)."""

    k: int
    sign: int
    seeds: Tuple[int, ...]


def _has_finite_orbit(g: GroupElement) -> bool:
    """True if g has a finite orbit (requires shift != 0 for termination)."""
    c = g.shift
    assert c != 0
    m = g.eventual_bound()
    lo, hi = -(m + abs(c)), m + abs(c)
    seen_infinite = set()
    for x in range(lo, hi + 1):
        if x in seen_infinite:
            continue
        trail = [x]
        y = g.apply(x)
        while True:
            if y == x:
                return True
            if (c > 0 and y > m) or (c < 0 and y < -m):
                seen_infinite.update(p for p in trail if lo <= p <= hi)
                break
            trail.append(y)
            y = g.apply(y)
    return False


def in_class_tk(g: GroupElement, k: int) -> Optional[ClassTkWitness]:
    """If g is conjugate in Sym(Z) to t^k or t^-k, return a witness; else None.

    This holds exactly when |shift| = k and g has no finite orbits.  Seed_j
    is the least-absolute-value point of the j-th infinite orbit (orbits are
    indexed by the residue mod k of their far-positive tail); ties between
    x and -x go to the positive point.
    """
    if k < 1 or abs(g.shift) != k:
        return None
    if _has_finite_orbit(g):
        return None
    sign = 1 if g.shift > 0 else -1
    m = g.eventual_bound()
    seeds = []
    for j in range(k):
        # start from a far-positive point with residue j, beyond the support
        x0 = m + 1 + ((j - (m + 1)) % k)
        # walk backwards through the orbit while it decreases |value|
        best = x0
        y = x0
        fwd = g if sign < 0 else g.inverse()
        # going "inward": repeatedly apply the direction that moves left
        while True:
            y = fwd.apply(y)
            if (c := abs(y)) < abs(best) or (c == abs(best) and y > best):
                best = y
            if y < -(m + k):
                break
        seeds.append(best)
    return ClassTkWitness(k=k, sign=sign, seeds=tuple(seeds))


def class_tk_relabel(
    g: GroupElement, w: ClassTkWitness, points: Tuple[int, ...]
) -> Dict[int, int]:
    """Map each given point y to pi^-1(y) where pi(j + n*k) = (seed_j)g^n.

    Each point must lie on one of the witnessed orbits within a bounded
    search; raises ElemError otherwise.
    """
    m = g.eventual_bound()
    out: Dict[int, int] = {}
    limit = 2 * (m + w.k) + 4 * len(points) + 16
    remaining = set(points)
    for j, seed in enumerate(w.seeds):
        y = seed
        for n in range(limit):
            if y in remaining:
                out[y] = j + n * w.k
                remaining.discard(y)
            y = g.apply(y)
        y = seed
        for n in range(1, limit):
            y = g.inverse().apply(y)
            if y in remaining:
                out[y] = j - n * w.k
                remaining.discard(y)
    if remaining:
        raise ElemError("points %r not located on witnessed orbits" % sorted(remaining))
    return out
