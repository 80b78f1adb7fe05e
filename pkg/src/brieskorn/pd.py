"""Planar diagram codes.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting at
the incoming under-strand.  The under-strand therefore runs from slot 0 to
slot 2 and the over-strand occupies slots 1 and 3.  A crossing is positive
when the over-strand enters through slot 3.

A position is a pair ``(crossing index, slot)``.  Every label occurs at
exactly two positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import DiagramError

__all__ = ["PDCode", "assemble", "mirror", "writhe", "UNKNOT", "TREFOIL_RIGHT", "TREFOIL_LEFT", "FIGURE_EIGHT"]

Position = tuple[int, int]


@dataclass(frozen=True)
class PDCode:
    """An oriented planar diagram.  The empty code is the round unknot."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in x) for x in self.crossings))
        for x in self.crossings:
            if len(x) != 4:
                raise DiagramError(f"crossing {x} does not have four slots")
        counts: dict[int, int] = {}
        for x in self.crossings:
            for v in x:
                counts[v] = counts.get(v, 0) + 1
        bad = sorted(v for v, k in counts.items() if k != 2)
        if bad:
            raise DiagramError(f"edge labels {bad[:5]} do not occur exactly twice")

    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({v for x in self.crossings for v in x}))

    @cached_property
    def _positions(self) -> dict[int, list[Position]]:
        out: dict[int, list[Position]] = {}
        for c, x in enumerate(self.crossings):
            for s, v in enumerate(x):
                out.setdefault(v, []).append((c, s))
        return out

    @cached_property
    def partner(self) -> dict[Position, Position]:
        """Map each position to the other end of its edge."""
        out = {}
        for a, b in self._positions.values():
            out[a] = b
            out[b] = a
        return out

    @cached_property
    def _traversal(self):
        """Orient every component.

        Returns ``(heads, components)``: ``heads`` maps a label to the
        position it enters, ``components`` lists labels in travel order.
        """
        heads: dict[int, Position] = {}
        components: list[list[int]] = []
        starts = [(c, 0) for c in range(self.n)] + [(c, s) for c in range(self.n) for s in (1, 3)]
        for start in starts:
            label = self.crossings[start[0]][start[1]]
            if label in heads:
                continue
            comp = []
            pos = start
            while True:
                c, s = pos
                label = self.crossings[c][s]
                if label in heads:
                    if heads[label] != pos:
                        raise DiagramError(f"inconsistent orientation at edge {label}")
                    break
                if s == 2:
                    raise DiagramError(f"under-strand enters crossing {c} through slot 2")
                heads[label] = pos
                comp.append(label)
                out = (c, (s + 2) % 4)
                pos = self.partner[out]
            components.append(comp)
        return heads, components

    @property
    def heads(self) -> dict[int, Position]:
        return self._traversal[0]

    @property
    def components(self) -> list[list[int]]:
        if not self.crossings:
            return [[]]
        return self._traversal[1]

    def is_incoming(self, pos: Position) -> bool:
        c, s = pos
        return self.heads[self.crossings[c][s]] == pos

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if self.is_incoming((c, 3)) else -1 for c in range(self.n))

    @cached_property
    def faces(self) -> list[list[Position]]:
        """Faces as cycles of corners; corner ``(c, s)`` sits between slots s and s+1.

        Walking a face keeps it on the right-hand side.  The edge leaving
        corner ``(c, s)`` is the one at slot ``s+1``.
        """
        seen = set()
        faces = []
        for c in range(self.n):
            for s in range(4):
                if (c, s) in seen:
                    continue
                face = []
                cur = (c, s)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    cur = self.partner[(cur[0], (cur[1] + 1) % 4)]
                faces.append(face)
        return faces

    def is_connected(self) -> bool:
        if not self.crossings:
            return True
        adj = {c: set() for c in range(self.n)}
        for (c, _), (d, _) in self.partner.items():
            adj[c].add(d)
        seen, stack = {0}, [0]
        while stack:
            for d in adj[stack.pop()]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return len(seen) == self.n

    def is_planar(self) -> bool:
        """Euler characteristic check V - E + F = 2 on the 4-valent graph."""
        if not self.crossings:
            return True
        return self.is_connected() and self.n - 2 * self.n + len(self.faces) == 2

    def validate_knot(self) -> "PDCode":
        if not self.is_planar():
            raise DiagramError("diagram is not planar and connected")
        if len(self.components) != 1:
            raise DiagramError(f"expected a knot, found {len(self.components)} components")
        return self

    # ------------------------------------------------------------------
    def writhe(self) -> int:
        if len(self.components) != 1:
            raise DiagramError("writhe of a link depends on orientations; knot required")
        return sum(self.signs)

    def mirror(self) -> "PDCode":
        """Switch every crossing; the edge labels and planar structure are kept."""
        out = []
        for c, (a, b, cc, d) in enumerate(self.crossings):
            # the old over-strand becomes the under-strand; start at its entry
            out.append((d, a, b, cc) if self.signs[c] > 0 else (b, cc, d, a))
        return PDCode(tuple(out))

    def relabeled(self) -> "PDCode":
        """Relabel edges 1..2n along the travel order of the components."""
        order = [v for comp in self.components for v in comp]
        new = {v: i + 1 for i, v in enumerate(order)}
        return PDCode(tuple(tuple(new[v] for v in x) for x in self.crossings))

    def gauss_code(self) -> list[int]:
        """Signed Gauss code of a knot: ``+(i+1)`` over, ``-(i+1)`` under."""
        if len(self.components) != 1:
            raise DiagramError("Gauss code export supports knots only")
        code = []
        for label in self.components[0]:
            c, s = self.heads[label]
            code.append(-(c + 1) if s == 0 else c + 1)
        return code

    def to_text(self) -> str:
        """``[X(1,4,2,5), X(3,6,4,1), ...]``; ``from_text`` also reads ``PD[X[...], ...]``."""
        return "[" + ", ".join("X(" + ",".join(map(str, x)) + ")" for x in self.crossings) + "]"

    @classmethod
    def from_text(cls, text: str) -> "PDCode":
        found = re.findall(r"X\s*[\[\(]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\]\)]", text)
        if not found and re.sub(r"\s", "", text) not in ("", "PD[]", "[]", "PD()"):
            raise DiagramError(f"no crossings found in {text!r}")
        return cls(tuple(tuple(int(v) for v in x) for x in found))

    def isomorphic(self, other: "PDCode") -> bool:
        """Same oriented diagram on the sphere up to relabelling and reindexing."""
        if self.n != other.n:
            return False
        if self.n == 0:
            return True
        P, Q = self.partner, other.partner
        for root in range(other.n):
            image = {0: root}
            used = {root}
            stack = [0]
            ok = True
            while stack and ok:
                c = stack.pop()
                for s in range(4):
                    d, t = P[(c, s)]
                    e, u = Q[(image[c], s)]
                    if t != u:
                        ok = False
                        break
                    if d in image:
                        if image[d] != e:
                            ok = False
                            break
                    elif e in used:
                        ok = False
                        break
                    else:
                        image[d] = e
                        used.add(e)
                        stack.append(d)
            if ok and len(image) == self.n:
                return True
        return False

    def to_json(self) -> list[list[int]]:
        return [list(x) for x in self.crossings]


def assemble(nbr: dict[Position, Position], parity) -> PDCode:
    """Turn an embedded 4-valent graph into a PD code.

    ``nbr`` maps every arm ``(crossing, k)`` (arms listed counterclockwise)
    to the arm at the other end of its edge.  At crossing ``c`` the arms
    ``parity[c]`` and ``parity[c] + 2`` carry the over-strand.  Strands are
    oriented by walking in from an under arm; edges are labelled in travel
    order.
    """
    n = len(parity)
    label_at: dict[Position, int] = {}
    entered: set[Position] = set()

    def walk(start, label):
        pos = start
        while pos not in entered:
            c, s = pos
            entered.add(pos)
            out = (c, (s + 2) % 4)
            nxt = nbr[out]
            label_at[out] = label_at[nxt] = label
            label += 1
            pos = nxt
        if pos != start:
            raise DiagramError("strand walk did not close up")
        return label

    label = 1
    for c in range(n):
        start = (c, 1 - parity[c])
        if start not in label_at:
            label = walk(start, label)
    # components passing only over crossings get an arbitrary direction
    for c in range(n):
        for s in (parity[c], parity[c] + 2):
            if (c, s) not in label_at:
                label = walk((c, s), label)
    crossings = []
    for c in range(n):
        under_in = next(s for s in (1 - parity[c], 3 - parity[c]) if (c, s) in entered)
        crossings.append(tuple(label_at[(c, (under_in + k) % 4)] for k in range(4)))
    return PDCode(tuple(crossings))


def mirror(d: PDCode) -> PDCode:
    return d.mirror()


def writhe(d: PDCode) -> int:
    return d.writhe()


UNKNOT = PDCode(())
TREFOIL_LEFT = PDCode(((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)))
TREFOIL_RIGHT = TREFOIL_LEFT.mirror()
FIGURE_EIGHT = PDCode(((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)))
