"""Montesinos knots from Seifert data via rational tangles.

Tangles are drawn in a square with ports NW, NE, SW, SE.  A twist crossing
has its arms listed counterclockwise as SW, SE, NE, NW, with the SW-NE strand
on top; the same crossing serves as a horizontal twist (adds 1 to the
fraction) and as a vertical twist (``F -> 1/(1/F + 1)``).

For a fraction ``beta/alpha`` with ``alpha/beta = [c1, ..., cm]`` (all
coefficients positive) the tangle is grown from the innermost coefficient:
odd-indexed coefficients are vertical twists, even-indexed ones horizontal,
starting from the infinity tangle when m is odd and the zero tangle when m
is even.  The knot ``k(a1,a2,a3)`` is the numerator closure of
``T(b1/a1) + T(b2/a2) + T(b3/a3) + [b]``, where ``[b]`` is ``|b|``
horizontal twists of sign ``b``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConventionError, DiagramError
from .pd import PDCode, assemble
from .seifert import SeifertData

__all__ = [
    "continued_fraction",
    "evaluate_continued_fraction",
    "RationalTangle",
    "Tangle",
    "rational_tangle",
    "integer_tangle",
    "build_diagram",
    "montesinos_diagram",
]

SW, SE, NE, NW = 0, 1, 2, 3


def continued_fraction(alpha: int, beta: int) -> list[int]:
    """Positive expansion ``alpha/beta = c1 + 1/(c2 + ...)``.

    The last coefficient is at least 2 unless the expansion is ``[1]``.
    """
    if not 0 < beta < alpha:
        raise ValueError(f"need 0 < beta < alpha, got alpha={alpha}, beta={beta}")
    if math.gcd(alpha, beta) != 1:
        raise ValueError(f"gcd({alpha}, {beta}) = {math.gcd(alpha, beta)} != 1")
    out = []
    a, b = alpha, beta
    while b:
        q, r = divmod(a, b)
        out.append(q)
        a, b = b, r
    return out


def evaluate_continued_fraction(coeffs) -> Fraction:
    value = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        value = c + 1 / value
    return value


@dataclass(frozen=True)
class RationalTangle:
    alpha: int
    beta: int
    expansion: tuple[int, ...]

    @classmethod
    def of(cls, alpha: int, beta: int) -> "RationalTangle":
        return cls(alpha, beta, tuple(continued_fraction(alpha, beta)))

    @property
    def crossing_count(self) -> int:
        return sum(self.expansion)


class Tangle:
    """A 4-ended tangle under construction.

    Endpoints are ``("x", i, arm)`` for crossing arms and ``("w", k, end)``
    for the two ends of a free wire.  ``links`` pairs endpoints symmetrically.
    ``crossings`` holds ``(id, parity)``: arms ``parity`` and ``parity + 2``
    carry the over-strand.
    """

    _ids = itertools.count()

    def __init__(self):
        self.crossings: list[tuple[int, int]] = []  # (id, over-arm-parity)
        self.links: dict = {}
        self.ports: dict[str, tuple] = {}

    # basic pieces -------------------------------------------------------
    @classmethod
    def _wires(cls, pairs):
        t = cls()
        for a, b in pairs:
            k = next(cls._ids)
            t.ports[a] = ("w", k, 0)
            t.ports[b] = ("w", k, 1)
        return t

    @classmethod
    def zero(cls) -> "Tangle":
        return cls._wires([("NW", "NE"), ("SW", "SE")])

    @classmethod
    def infinity(cls) -> "Tangle":
        return cls._wires([("NW", "SW"), ("NE", "SE")])

    def _link(self, u, v):
        self.links[u] = v
        self.links[v] = u

    def _new_crossing(self, sign: int) -> int:
        i = next(self._ids)
        # sign +1: SW-NE strand on top (arms 0 and 2); -1: SE-NW on top
        self.crossings.append((i, 0 if sign > 0 else 1))
        return i

    # operations ---------------------------------------------------------
    def twist_horizontal(self, sign: int = 1) -> "Tangle":
        i = self._new_crossing(sign)
        self._link(self.ports["NE"], ("x", i, NW))
        self._link(self.ports["SE"], ("x", i, SW))
        self.ports["NE"] = ("x", i, NE)
        self.ports["SE"] = ("x", i, SE)
        return self

    def twist_vertical(self, sign: int = 1) -> "Tangle":
        i = self._new_crossing(sign)
        self._link(self.ports["SW"], ("x", i, NW))
        self._link(self.ports["SE"], ("x", i, NE))
        self.ports["SW"] = ("x", i, SW)
        self.ports["SE"] = ("x", i, SE)
        return self

    def __add__(self, other: "Tangle") -> "Tangle":
        t = Tangle()
        t.crossings = self.crossings + other.crossings
        t.links = {**self.links, **other.links}
        t._link(self.ports["NE"], other.ports["NW"])
        t._link(self.ports["SE"], other.ports["SW"])
        t.ports = {"NW": self.ports["NW"], "SW": self.ports["SW"], "NE": other.ports["NE"], "SE": other.ports["SE"]}
        return t

    def numerator(self) -> PDCode:
        return self._close(("NW", "NE"), ("SW", "SE"))

    def denominator(self) -> PDCode:
        return self._close(("NW", "SW"), ("NE", "SE"))

    # closing into a PD code ---------------------------------------------
    def _close(self, *pairs) -> PDCode:
        links = dict(self.links)
        for a, b in pairs:
            u, v = self.ports[a], self.ports[b]
            links[u] = v
            links[v] = u
        if not self.crossings:
            raise DiagramError("closure without crossings")
        index = {cid: k for k, (cid, _) in enumerate(self.crossings)}

        def far_end(arm):
            # follow links through wires until another crossing arm is reached
            seen = 0
            cur = links[arm]
            while cur[0] == "w":
                cur = links[("w", cur[1], 1 - cur[2])]
                seen += 1
                if seen > len(links):
                    raise DiagramError("wire cycle without crossings")
            return (index[cur[1]], cur[2])

        nbr = {(k, s): far_end(("x", cid, s)) for k, (cid, _) in enumerate(self.crossings) for s in range(4)}
        return assemble(nbr, [p for _, p in self.crossings])


def integer_tangle(k: int) -> Tangle:
    t = Tangle.zero()
    for _ in range(abs(k)):
        t.twist_horizontal(1 if k > 0 else -1)
    return t


def rational_tangle(alpha: int, beta: int) -> Tangle:
    """The rational tangle of fraction ``beta/alpha``."""
    coeffs = continued_fraction(alpha, beta)
    m = len(coeffs)
    t = Tangle.infinity() if m % 2 else Tangle.zero()
    for k in range(m, 0, -1):
        for _ in range(coeffs[k - 1]):
            if k % 2:
                t.twist_vertical()
            else:
                t.twist_horizontal()
    return t


def montesinos_diagram(fractions, base: int) -> PDCode:
    """Numerator closure of ``T(b1/a1) + ... + [base]`` for ``fractions = [(a_i, b_i)]``."""
    total = None
    for a, b in fractions:
        t = rational_tangle(a, b)
        total = t if total is None else total + t
    if base:
        total = total + integer_tangle(base)
    return total.numerator()


def build_diagram(data: SeifertData) -> PDCode:
    """Diagram of the Montesinos knot whose double branched cover is ``data``."""
    if data.n != 3:
        raise DiagramError("Montesinos diagrams are built for three fibers only")
    d = montesinos_diagram(list(zip(data.multiplicities, data.pair_weights)), data.base_weight)
    if not d.is_planar():
        raise ConventionError(f"non-planar diagram produced for {data.text()}")
    if len(d.components) != 1:
        raise ConventionError(f"{len(d.components)}-component diagram produced for {data.text()}")
    return d
