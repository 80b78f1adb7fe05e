"""Kauffman bracket and Jones polynomial of planar diagrams.

Two engines compute the bracket:

* :func:`kauffman_bracket` contracts the diagram one crossing at a time.
  The state after a batch of crossings is a map from planar matchings of the
  open boundary edges to polynomials in ``A``.  Diagrams of small cut-width
  (Montesinos diagrams among them) keep only a handful of matchings alive.
* :func:`state_sum_bracket` enumerates all ``2^c`` states with numpy and is
  kept as an oracle for small diagrams.

Smoothing conventions: the A-smoothing joins slots (0,1) and (2,3), the
B-smoothing joins (0,3) and (1,2); the loop value is ``d = -A^2 - A^-2``.
With these choices a positive kink has bracket ``-A^3``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

import numpy as np

from .errors import DiagramError, ResourceLimit
from .laurent import LaurentPolynomial
from .pd import PDCode

__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "kauffman_bracket",
    "state_sum_bracket",
    "jones",
    "jones_from_bracket",
    "log_derivative_at_minus_one",
]

# Montesinos diagrams for pqr <= 1000 reach a couple of hundred crossings;
# the contraction engine stays linear on them.
DEFAULT_MAX_CROSSINGS = 512
STATE_SUM_LIMIT = 26

_A = "A"


def _loop_powers(k: int) -> list[dict[int, int]]:
    d = {2: -1, -2: -1}
    out = [{0: 1}]
    for _ in range(k):
        prev = out[-1]
        nxt: dict[int, int] = defaultdict(int)
        for e1, c1 in prev.items():
            for e2, c2 in d.items():
                nxt[e1 + e2] += c1 * c2
        out.append({e: c for e, c in nxt.items() if c})
    return out


def _contraction_order(d: PDCode) -> list[int]:
    """Greedy order: next crossing shares the most edges with those done."""
    n = d.n
    nbrs = [[] for _ in range(n)]
    for (c, _), (e, _) in d.partner.items():
        nbrs[c].append(e)
    done = [False] * n
    weight = [0] * n
    order = []
    for _ in range(n):
        best = max((c for c in range(n) if not done[c]), key=lambda c: (weight[c], -c))
        done[best] = True
        order.append(best)
        for e in nbrs[best]:
            weight[e] += 1
    return order


def _resolve(pairs, arcs, is_open):
    """Join boundary pairs with new arcs; return (new pairs, closed loops)."""
    edges = list(pairs) + list(arcs)
    inc: dict[int, list[int]] = defaultdict(list)
    for i, (a, b) in enumerate(edges):
        inc[a].append(i)
        inc[b].append(i)
    used = [False] * len(edges)
    new_pairs = []
    for start in sorted(v for v in inc if is_open(v)):
        if used[inc[start][0]]:
            continue
        cur, e = start, inc[start][0]
        while True:
            used[e] = True
            a, b = edges[e]
            cur = b if a == cur else a
            if is_open(cur):
                break
            i0, i1 = inc[cur]
            e = i1 if i0 == e else i0
        new_pairs.append((start, cur) if start < cur else (cur, start))
    loops = 0
    for i in range(len(edges)):
        if used[i]:
            continue
        loops += 1
        used[i] = True
        cur, e = edges[i][1], i
        while True:
            i0, i1 = inc[cur]
            e = i1 if i0 == e else i0
            if used[e]:
                break
            used[e] = True
            a, b = edges[e]
            cur = b if a == cur else a
    return tuple(sorted(new_pairs)), loops


def kauffman_bracket(d: PDCode, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPolynomial:
    """Exact bracket in ``A`` by boundary-matching contraction."""
    if d.n > max_crossings:
        raise ResourceLimit(f"{d.n} crossings exceeds the budget of {max_crossings}")
    if d.n == 0:
        return LaurentPolynomial({0: 1}, _A)
    if not d.is_connected():
        raise DiagramError("bracket engine expects a connected diagram")
    order = _contraction_order(d)
    remaining = {v: 2 for v in d.labels}
    dpow = _loop_powers(2 * d.n + 1)
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for step, c in enumerate(order):
        last = step == d.n - 1
        l0, l1, l2, l3 = d.crossings[c]
        for v in (l0, l1, l2, l3):
            remaining[v] -= 1
        is_open = lambda v: remaining[v] > 0  # noqa: E731
        smoothings = (((l0, l1), (l2, l3)), 1), (((l0, l3), (l1, l2)), -1)
        nxt: dict[tuple, dict[int, int]] = defaultdict(lambda: defaultdict(int))
        for key, poly in states.items():
            for arcs, shift in smoothings:
                new_key, loops = _resolve(key, arcs, is_open)
                if last:
                    loops -= 1
                target = nxt[new_key]
                for e2, c2 in dpow[loops].items():
                    for e1, c1 in poly.items():
                        target[e1 + e2 + shift] += c1 * c2
        states = {k: {e: c for e, c in v.items() if c} for k, v in nxt.items()}
    (result,) = states.values()
    return LaurentPolynomial(result, _A)


def _cycle_count(f: np.ndarray) -> np.ndarray:
    """Number of cycles of each row permutation ``f`` (shape S x N)."""
    S, N = f.shape
    base = (np.arange(S, dtype=np.int32) * N)[:, None]
    g = (f.astype(np.int32) + base).ravel()
    ident = np.arange(S * N, dtype=np.int32)
    label = ident.copy()
    span = 1
    while span < N:
        np.minimum(label, label[g], out=label)
        g = g[g]
        span *= 2
    return (label == ident).reshape(S, N).sum(axis=1)


def state_sum_bracket(d: PDCode, max_crossings: int = STATE_SUM_LIMIT, chunk: int = 1 << 14) -> LaurentPolynomial:
    """Brute-force state sum over all ``2^c`` smoothings."""
    c = d.n
    if c > max_crossings:
        raise ResourceLimit(f"state sum over 2^{c} states refused (limit 2^{max_crossings})")
    if c == 0:
        return LaurentPolynomial({0: 1}, _A)
    N = 4 * c
    partner = np.empty(N, dtype=np.int64)
    for (x, s), (y, t) in d.partner.items():
        partner[4 * x + s] = 4 * y + t
    pc, ps = partner // 4, partner % 4
    a_mate = pc * 4 + (ps ^ 1)
    b_mate = pc * 4 + (3 - ps)
    # a loop visiting 2k positions splits into two cycles of mate∘partner
    tally: dict[tuple[int, int], int] = defaultdict(int)
    total = 1 << c
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        bits = ((idx[:, None] >> np.arange(c)) & 1).astype(bool)
        use_b = bits[:, pc]
        f = np.where(use_b, b_mate, a_mate)
        loops = _cycle_count(f) // 2
        n_b = bits.sum(axis=1)
        key = n_b * (N + 1) + loops
        vals, counts = np.unique(key, return_counts=True)
        for v, k in zip(vals.tolist(), counts.tolist()):
            tally[divmod(v, N + 1)] += k
    dpow = _loop_powers(2 * c + 1)
    acc: dict[int, int] = defaultdict(int)
    for (n_b, loops), k in tally.items():
        shift = (c - n_b) - n_b
        for e, coef in dpow[loops - 1].items():
            acc[e + shift] += k * coef
    return LaurentPolynomial(acc, _A)


def jones_from_bracket(bracket: LaurentPolynomial, w: int) -> LaurentPolynomial:
    """``V(t) = (-A^3)^(-w) <D>`` with ``t = A^-4``."""
    norm = LaurentPolynomial({-3 * w: (-1) ** (w % 2)}, _A)
    return (norm * bracket).rescale_exponents(-4, "t")


def jones(d: PDCode, engine: str = "contract", **kw) -> LaurentPolynomial:
    if d.n and len(d.components) != 1:
        raise DiagramError("Jones polynomial is implemented for knots only")
    w = d.writhe() if d.n else 0
    if engine == "contract":
        b = kauffman_bracket(d, **kw)
    elif engine == "states":
        b = state_sum_bracket(d, **kw)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return jones_from_bracket(b, w)


def log_derivative_at_minus_one(V: LaurentPolynomial) -> Fraction:
    """``V'(-1) / V(-1)`` as an exact rational."""
    v = V(-1)
    if v == 0:
        raise ValueError("V(-1) = 0; logarithmic derivative undefined")
    return Fraction(V.derivative()(-1)) / v
