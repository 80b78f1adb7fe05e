"""Seifert invariants of Seifert fibered integral homology spheres.

A homology sphere ``Sigma(a_1, ..., a_n)`` with pairwise coprime
multiplicities ``a_i >= 2`` carries unnormalized Seifert invariants
``{b; (a_1, b_1), ..., (a_n, b_n)}`` subject to

    sum_i b_i * (A / a_i) + b * A = 1,        A = a_1 * ... * a_n.

For three fibers this is the familiar ``b1*q*r + b2*p*r + b3*p*q + b*p*q*r = 1``;
the n-fiber version used here is the degree-matching generalization.  We
always normalize to ``0 < b_i < a_i``, which makes the solution unique.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from itertools import combinations

from .errors import SeifertError

__all__ = [
    "SeifertData",
    "SpliceDecomposition",
    "solve_seifert_invariants",
    "verify_seifert",
    "splice_decompose",
    "parse_sigma",
    "coprime_triples",
]


@dataclass(frozen=True)
class SeifertData:
    multiplicities: tuple[int, ...]
    pair_weights: tuple[int, ...]
    base_weight: int

    @property
    def n(self) -> int:
        return len(self.multiplicities)

    @property
    def product(self) -> int:
        return math.prod(self.multiplicities)

    def seifert_sum(self) -> int:
        A = self.product
        return sum(b * (A // a) for a, b in zip(self.multiplicities, self.pair_weights)) + self.base_weight * A

    def to_json(self) -> dict:
        return {"a": list(self.multiplicities), "b": list(self.pair_weights), "base": self.base_weight}

    @classmethod
    def from_json(cls, payload: dict | str) -> "SeifertData":
        if isinstance(payload, str):
            payload = json.loads(payload)
        return cls(tuple(payload["a"]), tuple(payload["b"]), int(payload["base"]))

    def text(self) -> str:
        return "sigma(" + ",".join(str(a) for a in self.multiplicities) + ")"

    def __str__(self) -> str:
        pairs = ", ".join(f"({a},{b})" for a, b in zip(self.multiplicities, self.pair_weights))
        return f"{{{self.base_weight}; {pairs}}}"


@dataclass(frozen=True)
class SpliceDecomposition:
    left: SeifertData
    right: SeifertData
    j: int
    p: int
    q: int


def _check_multiplicities(multiplicities) -> tuple[int, ...]:
    a = tuple(int(x) for x in multiplicities)
    if len(a) < 3:
        raise SeifertError(f"need at least 3 multiplicities, got {len(a)}")
    for x in a:
        if x < 2:
            raise SeifertError(f"multiplicity {x} < 2")
    for (i, x), (j, y) in combinations(enumerate(a), 2):
        if math.gcd(x, y) != 1:
            raise SeifertError(f"multiplicities a[{i}]={x} and a[{j}]={y} are not coprime (gcd {math.gcd(x, y)})")
    return a


def solve_seifert_invariants(multiplicities) -> SeifertData:
    """Return the unique normalized Seifert data over the given multiplicities.

    Each ``b_i`` is the inverse of ``A/a_i`` modulo ``a_i``; the base weight is
    then forced by the homology-sphere condition.
    """
    a = _check_multiplicities(multiplicities)
    A = math.prod(a)
    weights = tuple(pow(A // x, -1, x) for x in a)
    rest = 1 - sum(b * (A // x) for x, b in zip(a, weights))
    base, rem = divmod(rest, A)
    assert rem == 0, "CRT guarantees divisibility"
    return SeifertData(a, weights, base)


def verify_seifert(data: SeifertData) -> bool:
    a, w = data.multiplicities, data.pair_weights
    if len(a) < 3 or len(a) != len(w):
        return False
    if any(x < 2 for x in a):
        return False
    if any(math.gcd(x, y) != 1 for x, y in combinations(a, 2)):
        return False
    if any(not 0 < b < x for x, b in zip(a, w)):
        return False
    return data.seifert_sum() == 1


def splice_decompose(data: SeifertData, j: int) -> SpliceDecomposition:
    """Split ``Sigma(a_1..a_n)`` into ``Sigma(a_1..a_j, p)`` and ``Sigma(q, a_{j+1}..a_n)``.

    Here ``p = a_{j+1} * ... * a_n`` and ``q = a_1 * ... * a_j``.
    """
    n = data.n
    if n < 4:
        raise SeifertError(f"splicing needs at least 4 fibers, got {n}")
    if not 2 <= j <= n - 2:
        raise SeifertError(f"splice index j={j} outside [2, {n - 2}]")
    a = data.multiplicities
    p = math.prod(a[j:])
    q = math.prod(a[:j])
    left = solve_seifert_invariants(a[:j] + (p,))
    right = solve_seifert_invariants((q,) + a[j:])
    return SpliceDecomposition(left=left, right=right, j=j, p=p, q=q)


_SIGMA_RE = re.compile(r"\s*sigma\s*\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)\s*$", re.IGNORECASE)


def parse_sigma(text: str) -> SeifertData:
    """Parse ``sigma(2,3,7)`` (case-insensitive, ``Σ`` also accepted)."""
    cleaned = text.replace("Σ", "sigma")
    m = _SIGMA_RE.match(cleaned)
    if m is None:
        # locate the first offending character for the message
        pos = 0
        prefix = "sigma("
        low = cleaned.strip().lower()
        while pos < min(len(low), len(prefix)) and low[pos] == prefix[pos]:
            pos += 1
        raise SyntaxError(f"cannot parse {text!r} as sigma(a1,...,an) (problem near position {pos})")
    return solve_seifert_invariants(int(x) for x in m.group(1).split(","))


def coprime_triples(max_product: int):
    """Sorted pairwise-coprime triples ``2 <= p < q < r`` with ``pqr <= max_product``.

    Yielded in lexicographic order.
    """
    out = []
    p = 2
    while p * (p + 1) * (p + 2) <= max_product:
        q = p + 1
        while p * q * (q + 1) <= max_product:
            if math.gcd(p, q) == 1:
                r = q + 1
                while p * q * r <= max_product:
                    if math.gcd(p, r) == 1 and math.gcd(q, r) == 1:
                        out.append((p, q, r))
                    r += 1
            q += 1
        p += 1
    return out
