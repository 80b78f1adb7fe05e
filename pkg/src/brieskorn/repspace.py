"""Irreducible SU(2) representations of Brieskorn sphere groups.

The fundamental group of ``Sigma(p,q,r)`` with Seifert data
``{b; (p,b1), (q,b2), (r,b3)}`` is generated by a central ``h`` and
``x, y, z`` with

    x^p = h^-b1,  y^q = h^-b2,  z^r = h^-b3,  xyz = h^-b.

An irreducible representation sends ``h`` to ``+-1`` and is determined up to
conjugacy by the rotation angles of ``x``, ``y`` and ``xy``:
``theta_i = pi * l_i / a_i``.  Since ``(xy)^r = h^(b3 - r b)``, the parity of
``l_i`` is fixed by the sign of ``h``.  A triple of angles is realized by a
non-abelian pair exactly when the open spherical triangle inequality

    |t1 - t2| < t3 < min(t1 + t2, 2 pi - t1 - t2)

holds.  Quaternions are numpy arrays ``[w, x, y, z]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InconsistencyError, NumericalFailure, SeifertError
from .seifert import SeifertData

__all__ = [
    "RotationVector",
    "QuaternionRep",
    "enumerate_rotation_vectors",
    "casson_lambda",
    "trace_free_count",
    "realize_representation",
    "verify_rho_invariance",
    "sigma_star_images",
    "newton_search",
    "RELATION_TOL",
    "RHO_TOL",
    "IRREDUCIBLE_TOL",
]

RELATION_TOL = 1e-9
RHO_TOL = 1e-8
IRREDUCIBLE_TOL = 1e-6

ONE = np.array([1.0, 0.0, 0.0, 0.0])


# quaternion helpers (all accept arrays with a trailing axis of length 4)
def qmul(a, b):
    aw, ax, ay, az = np.moveaxis(np.asarray(a), -1, 0)
    bw, bx, by, bz = np.moveaxis(np.asarray(b), -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a):
    return np.asarray(a) * np.array([1.0, -1.0, -1.0, -1.0])


def qpow(a, n: int):
    """Integer power by repeated squaring (negative powers use the conjugate)."""
    a = np.asarray(a, dtype=float)
    if n < 0:
        a, n = qconj(a), -n
    result = np.broadcast_to(ONE, a.shape).copy()
    while n:
        if n & 1:
            result = qmul(result, a)
        a = qmul(a, a)
        n >>= 1
    return result


def _scalar(sign: int) -> np.ndarray:
    return sign * ONE


@dataclass(frozen=True, order=True)
class RotationVector:
    h_sign: int
    ells: tuple[int, int, int]
    multiplicities: tuple[int, int, int]

    @property
    def angles(self) -> tuple[Fraction, Fraction, Fraction]:
        """Angles as rational multiples of pi."""
        return tuple(Fraction(l, a) for l, a in zip(self.ells, self.multiplicities))

    def radians(self) -> tuple[float, float, float]:
        return tuple(math.pi * float(t) for t in self.angles)

    def to_json(self) -> dict:
        return {"h": self.h_sign, "l": list(self.ells)}

    def __str__(self) -> str:
        return f"({self.h_sign:+d}; {', '.join(map(str, self.ells))})"


def _three_fibers(data: SeifertData):
    if data.n != 3:
        raise SeifertError(f"three fibers required, got {data.n}")
    return data.multiplicities, data.pair_weights, data.base_weight


def _epsilons(data: SeifertData, h: int) -> tuple[int, int, int]:
    (_, _, r), (b1, b2, b3), b = _three_fibers(data)
    return h ** (b1 % 2), h ** (b2 % 2), h ** ((b3 - r * b) % 2)


def triangle_ok(t1: Fraction, t2: Fraction, t3: Fraction) -> bool:
    """Strict triangle condition on angles given in units of pi."""
    return abs(t1 - t2) < t3 < min(t1 + t2, 2 - t1 - t2)


def enumerate_rotation_vectors(data: SeifertData) -> list[RotationVector]:
    (p, q, r), _, _ = _three_fibers(data)
    out = []
    for h in (-1, 1):
        eps = _epsilons(data, h)
        par = [0 if e == 1 else 1 for e in eps]
        for l1 in range(1, p):
            if l1 % 2 != par[0]:
                continue
            for l2 in range(1, q):
                if l2 % 2 != par[1]:
                    continue
                t1, t2 = Fraction(l1, p), Fraction(l2, q)
                lo, hi = abs(t1 - t2), min(t1 + t2, 2 - t1 - t2)
                # l3 with lo < l3/r < hi
                start = math.floor(lo * r) + 1
                for l3 in range(max(start, 1), r):
                    t3 = Fraction(l3, r)
                    if t3 >= hi:
                        break
                    if l3 % 2 == par[2]:
                        out.append(RotationVector(h, (l1, l2, l3), (p, q, r)))
    out.sort()
    return out


def casson_lambda(data: SeifertData) -> int:
    count = len(enumerate_rotation_vectors(data))
    if count % 2:
        raise InconsistencyError(f"odd number ({count}) of rotation vectors for {data.text()}")
    return count // 2


def trace_free_count(data: SeifertData) -> int:
    """Number of trace-free representations of the branch knot group (twice the classes)."""
    return 2 * len(enumerate_rotation_vectors(data))


@dataclass(frozen=True)
class QuaternionRep:
    h: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    data: SeifertData

    def images(self) -> dict[str, np.ndarray]:
        return {"h": self.h, "x": self.x, "y": self.y, "z": self.z}

    def residuals(self) -> dict[str, float]:
        (p, q, r), (b1, b2, b3), b = _three_fibers(self.data)
        h = self.h
        return {
            "x^p": float(np.linalg.norm(qpow(self.x, p) - qpow(h, -b1))),
            "y^q": float(np.linalg.norm(qpow(self.y, q) - qpow(h, -b2))),
            "z^r": float(np.linalg.norm(qpow(self.z, r) - qpow(h, -b3))),
            "xyz": float(np.linalg.norm(qmul(qmul(self.x, self.y), self.z) - qpow(h, -b))),
        }

    def commutator_distance(self) -> float:
        comm = qmul(qmul(self.x, self.y), qmul(qconj(self.x), qconj(self.y)))
        return float(np.linalg.norm(comm - ONE))

    def conjugated(self, g) -> "QuaternionRep":
        g = np.asarray(g, dtype=float)
        g = g / np.linalg.norm(g)
        f = lambda a: qmul(qmul(g, a), qconj(g))  # noqa: E731
        return QuaternionRep(f(self.h), f(self.x), f(self.y), f(self.z), self.data)

    def to_json(self, digits: int = 12) -> dict:
        # values below 1e-14 are rounding noise of exact zeros
        fmt = lambda a: [0.0 if abs(v) < 1e-14 else float(f"{v:.{digits}g}") for v in a]  # noqa: E731
        return {k: fmt(v) for k, v in self.images().items()}


def realize_representation(
    data: SeifertData, v: RotationVector, phase: float = 0.0, tol: float = RELATION_TOL
) -> QuaternionRep:
    """Closed-form representative with ``x`` on the complex circle.

    ``y`` lies on the circle of unit quaternions with angle ``theta_2`` whose
    product with ``x`` has angle ``theta_3``; ``phase`` picks the point on that
    circle (rotation about the ``i`` axis).
    """
    (p, q, r), _, b = _three_fibers(data)
    if v.multiplicities != (p, q, r):
        raise SeifertError("rotation vector belongs to different multiplicities")
    if not all(0 < l < a for l, a in zip(v.ells, v.multiplicities)):
        raise SeifertError(f"rotation numbers {v.ells} out of range")
    if not triangle_ok(*v.angles):
        raise SeifertError(f"angles {v.angles} (units of pi) violate the strict triangle condition")
    eps = _epsilons(data, v.h_sign)
    if any((l % 2 == 0) != (e == 1) for l, e in zip(v.ells, eps)):
        raise SeifertError(f"parity of {v.ells} does not match h = {v.h_sign}")
    t1, t2, t3 = v.radians()
    c = (math.cos(t1) * math.cos(t2) - math.cos(t3)) / (math.sin(t1) * math.sin(t2))
    s = math.sqrt(max(0.0, 1.0 - c * c))
    axis = np.array([0.0, c, s * math.cos(phase), s * math.sin(phase)])
    x = np.array([math.cos(t1), math.sin(t1), 0.0, 0.0])
    y = math.cos(t2) * ONE + math.sin(t2) * axis
    h = _scalar(v.h_sign)
    z = qmul(qconj(qmul(x, y)), qpow(h, -b))
    rep = QuaternionRep(h, x, y, z, data)
    worst = max(rep.residuals().values())
    if worst >= tol:
        raise NumericalFailure(f"relation residual {worst:.3e} exceeds {tol}")
    if rep.commutator_distance() <= IRREDUCIBLE_TOL:
        raise NumericalFailure("realized representation is numerically reducible")
    return rep


def sigma_star_images(rep: QuaternionRep) -> dict[str, np.ndarray]:
    """Images of ``sigma_*(t)`` for t in h, x, y, z under the involution.

    ``h -> h^-1``, ``x -> x^-1``, ``y -> x y^-1 x^-1``, ``z -> x y z^-1 y^-1 x^-1``.
    """
    x, y, z, h = rep.x, rep.y, rep.z, rep.h
    xi, yi, zi = qconj(x), qconj(y), qconj(z)
    xy = qmul(x, y)
    return {
        "h": qconj(h),
        "x": xi,
        "y": qmul(qmul(x, yi), xi),
        "z": qmul(qmul(xy, zi), qconj(xy)),
    }


def _left_matrix(a):
    w, x, y, z = a
    return np.array([[w, -x, -y, -z], [x, w, -z, y], [y, z, w, -x], [z, -y, x, w]])


def _right_matrix(a):
    w, x, y, z = a
    return np.array([[w, -x, -y, -z], [x, w, z, -y], [y, -z, w, x], [z, y, -x, w]])


def verify_rho_invariance(rep: QuaternionRep, tol: float = RHO_TOL) -> np.ndarray:
    """Find the trace-free unit quaternion conjugating ``alpha`` into ``alpha o sigma_*``.

    Solves ``alpha(sigma_* t) rho - rho alpha(t) = 0`` for ``rho`` in the span
    of ``i, j, k`` by least squares.  The sign of ``rho`` is fixed so that its
    first nonzero coordinate is positive.
    """
    if rep.commutator_distance() <= IRREDUCIBLE_TOL:
        raise SeifertError("representation is reducible; the conjugating element is not unique")
    target = sigma_star_images(rep)
    blocks = []
    for name, a in rep.images().items():
        blocks.append(_left_matrix(target[name]) - _right_matrix(a))
    M = np.vstack(blocks)[:, 1:]
    _, sv, vt = np.linalg.svd(M)
    rho = np.concatenate([[0.0], vt[-1]])
    rho /= np.linalg.norm(rho)
    lead = next(v for v in rho if abs(v) > 1e-12)
    if lead < 0:
        rho = -rho
    sq = float(np.linalg.norm(qmul(rho, rho) + ONE))
    resid = max(
        float(np.linalg.norm(target[n] - qmul(qmul(rho, a), qconj(rho)))) for n, a in rep.images().items()
    )
    if sq >= RELATION_TOL or resid >= tol or abs(2 * rho[0]) >= RELATION_TOL:
        raise InconsistencyError(
            f"no trace-free conjugating element (residual {resid:.3e}, |rho^2+1| = {sq:.3e})"
        )
    return rho


# --- randomized Newton oracle ----------------------------------------------

def _exp(v):
    """exp of pure quaternions given as (..., 3) vectors."""
    t = np.linalg.norm(v, axis=-1, keepdims=True)
    s = np.where(t > 1e-300, np.sin(t) / np.where(t > 1e-300, t, 1.0), 1.0)
    return np.concatenate([np.cos(t), s * v], axis=-1)


def _fast_pow(a, n: int):
    """``a^n = T_n(w) + U_{n-1}(w) v`` for unit quaternions ``a = w + v``."""
    w = np.clip(a[..., :1], -1.0, 1.0)
    t = np.arccos(w)
    st = np.sin(t)
    small = np.abs(st) < 1e-7
    # near +-1 use the limit U_{n-1}(+-1) = n (+-1)^(n-1)
    u = np.where(small, n * np.sign(w) ** (n - 1), np.sin(n * t) / np.where(small, 1.0, st))
    return np.concatenate([np.cos(n * t), u * a[..., 1:]], axis=-1)


def _random_su2(rng, n):
    g = rng.normal(size=(n, 4))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def newton_search(
    data: SeifertData,
    h_sign: int,
    restarts: int = 10_000,
    seed: int = 0,
    iterations: int = 60,
    tol: float = 1e-11,
):
    """Solve the relations for random starting pairs ``(x, y)``.

    Levenberg-Marquardt on ``SU(2)^2`` with right-multiplicative updates and
    a finite-difference Jacobian.  Returns the set of ``(h, l1, l2, l3)``
    rotation data read off the converged irreducible solutions, together with
    the counts ``(converged, irreducible)``.
    """
    (p, q, r), _, _ = _three_fibers(data)
    e1, e2, e3 = _epsilons(data, h_sign)
    rng = np.random.default_rng(seed)
    x = _random_su2(rng, restarts)
    y = _random_su2(rng, restarts)
    targets = np.concatenate([_scalar(e1), _scalar(e2), _scalar(e3)])

    def residual(x, y):
        return np.concatenate([_fast_pow(x, p), _fast_pow(y, q), _fast_pow(qmul(x, y), r)], axis=-1) - targets

    mu = np.full(restarts, 1e-3)
    F = residual(x, y)
    cost = (F * F).sum(axis=1)
    step = 1e-7
    eye = np.eye(3)
    for it in range(iterations):
        if it == iterations // 2:
            # seeds still far from a solution halfway through are abandoned
            cost[cost > 1e-6] = np.inf
        active = np.isfinite(cost) & (cost > tol * tol)
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        xa, ya, Fa = x[idx], y[idx], F[idx]
        J = np.empty((len(idx), 12, 6))
        for k in range(3):
            d = _exp(step * eye[k])
            J[:, :, k] = (residual(qmul(xa, d), ya) - Fa) / step
            J[:, :, 3 + k] = (residual(xa, qmul(ya, d)) - Fa) / step
        JT = np.transpose(J, (0, 2, 1))
        A = JT @ J
        g = (JT @ Fa[:, :, None])[:, :, 0]
        A = A + mu[idx, None, None] * np.eye(6)
        delta = -np.linalg.solve(A, g[:, :, None])[:, :, 0]
        xn = qmul(xa, _exp(delta[:, :3]))
        yn = qmul(ya, _exp(delta[:, 3:]))
        xn /= np.linalg.norm(xn, axis=1, keepdims=True)
        yn /= np.linalg.norm(yn, axis=1, keepdims=True)
        Fn = residual(xn, yn)
        cn = (Fn * Fn).sum(axis=1)
        better = cn < cost[idx]
        good = idx[better]
        x[good], y[good], F[good], cost[good] = xn[better], yn[better], Fn[better], cn[better]
        mu[good] = np.maximum(mu[good] / 3, 1e-12)
        mu[idx[~better]] *= 4
        # give up on seeds whose damping has exploded
        cost[(mu > 1e8) & (cost > tol * tol)] = np.inf
    converged = cost <= tol * tol
    comm = qmul(qmul(x, y), qmul(qconj(x), qconj(y)))
    irreducible = converged & (np.linalg.norm(comm - ONE, axis=1) > IRREDUCIBLE_TOL)
    found = set()
    for i in np.nonzero(irreducible)[0]:
        ells = []
        for a, quat in ((p, x[i]), (q, y[i]), (r, qmul(x[i], y[i]))):
            t = math.acos(max(-1.0, min(1.0, quat[0]))) * a / math.pi
            l = round(t)
            if abs(t - l) > 1e-6:
                raise InconsistencyError(f"converged solution has non-integral rotation number {t}")
            ells.append(l)
        found.add((h_sign, *ells))
    return found, int(converged.sum()), int(irreducible.sum())
