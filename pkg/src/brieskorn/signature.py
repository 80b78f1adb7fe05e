"""Checkerboard colorings, Goeritz forms and the Gordon-Litherland signature.

Corner ``(c, s)`` of a crossing lies between slots ``s`` and ``s+1``, so the
corners ``{0, 2}`` and ``{1, 3}`` are the two opposite pairs.  Spinning the
over-strand counterclockwise sweeps corners 1 and 3.  The local sign of a
crossing with respect to a shaded set is

    eta(c) = +1 if the shaded corners are {0, 2}, else -1,

and the crossing is of type II when the oriented smoothing merges the two
unshaded corners.  (A positive crossing's oriented smoothing merges {1, 3},
a negative one merges {0, 2}.)  Then

    sigma = signature(G) - sum of eta over type II crossings,

where ``G`` is the Goeritz matrix of the shaded regions with one region
deleted.  With these conventions the right-handed trefoil has signature -2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .bracket import jones
from .errors import DiagramError, InconsistencyError
from .exact import signature as form_signature, symmetric_determinant
from .pd import PDCode

__all__ = ["GoeritzData", "checkerboard", "goeritz", "gl_signature", "goeritz_determinant", "determinant"]


@dataclass(frozen=True)
class GoeritzData:
    matrix: tuple[tuple[int, ...], ...]  # reduced: one shaded region deleted
    correction: int
    color: int
    regions: int

    @property
    def signature(self) -> int:
        return form_signature(self.matrix) - self.correction


def checkerboard(d: PDCode) -> tuple[list[int], list[int]]:
    """Return ``(face_of_corner_index, color_of_face)``.

    Corner ``(c, s)`` is stored at index ``4c + s``.  The face containing
    corner ``(0, 0)`` gets color 0.
    """
    faces = d.faces
    face_of = [0] * (4 * d.n)
    for f, corners in enumerate(faces):
        for c, s in corners:
            face_of[4 * c + s] = f
    adj = [[] for _ in faces]
    for c in range(d.n):
        for s in range(4):
            a, b = face_of[4 * c + s], face_of[4 * c + (s + 1) % 4]
            adj[a].append(b)
            adj[b].append(a)
    color = [-1] * len(faces)
    color[face_of[0]] = 0
    queue = deque([face_of[0]])
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if color[g] < 0:
                color[g] = 1 - color[f]
                queue.append(g)
            elif color[g] == color[f]:
                raise DiagramError("faces do not admit a checkerboard coloring")
    return face_of, color


def goeritz(d: PDCode, color: int = 0) -> GoeritzData:
    if d.n == 0:
        return GoeritzData((), 0, color, 1)
    face_of, colors = checkerboard(d)
    shaded = [f for f, k in enumerate(colors) if k == color]
    index = {f: i for i, f in enumerate(shaded)}
    m = len(shaded)
    G = [[0] * m for _ in range(m)]
    correction = 0
    signs = d.signs
    for c in range(d.n):
        pair = 0 if colors[face_of[4 * c]] == color else 1  # shaded corners {pair, pair+2}
        eta = 1 if pair == 0 else -1
        merged = 1 if signs[c] > 0 else 0
        if merged != pair:
            correction += eta
        a, b = index[face_of[4 * c + pair]], index[face_of[4 * c + pair + 2]]
        if a != b:
            G[a][b] -= eta
            G[b][a] -= eta
            G[a][a] += eta
            G[b][b] += eta
    reduced = tuple(tuple(row[1:]) for row in G[1:])
    return GoeritzData(reduced, correction, color, m)


def gl_signature(d: PDCode) -> int:
    """Gordon-Litherland signature, checked against the other coloring."""
    s0 = goeritz(d, 0).signature
    if d.n:
        s1 = goeritz(d, 1).signature
        if s0 != s1:
            raise InconsistencyError(f"checkerboard colorings disagree on the signature ({s0} vs {s1})")
    return s0


def goeritz_determinant(d: PDCode) -> int:
    return abs(symmetric_determinant(goeritz(d, 0).matrix))


def determinant(d: PDCode) -> int:
    """Knot determinant from ``|V(-1)|`` and from the Goeritz form; they must agree."""
    via_jones = abs(jones(d)(-1))
    via_goeritz = goeritz_determinant(d)
    if via_jones != via_goeritz:
        raise InconsistencyError(f"determinant mismatch: |V(-1)| = {via_jones}, Goeritz = {via_goeritz}")
    return via_jones
