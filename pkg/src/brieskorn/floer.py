"""Floer ranks, the nu / mu-bar invariants and the audits built on them.

For a Brieskorn sphere the instanton Floer groups live in even degrees, are
4-periodic, and have ranks

    r0 = r4 = (8 lambda - sign k) / 16,    r2 = r6 = (8 lambda + sign k) / 16,

where ``k`` is the Montesinos knot whose double branched cover is the
sphere.  Then ``nu = r2 - r0 = sign k / 8``, which is also mu-bar.  For
more fibers, mu-bar is computed by splicing down to three fibers.

The Jones audit compares ``x = -(1/12) V'(-1)/V(-1)`` with the ranks.  Its
findings are reported, never raised: only non-integral or negative ranks
are hard errors.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .bracket import jones, log_derivative_at_minus_one
from .errors import TheoremViolation
from .laurent import LaurentPolynomial
from .montesinos import build_diagram
from .pd import PDCode
from .repspace import casson_lambda
from .seifert import SeifertData, splice_decompose
from .signature import determinant, gl_signature

__all__ = [
    "FloerRanks",
    "floer_ranks",
    "nu_invariant",
    "KnotSummary",
    "knot_summary",
    "mu_bar",
    "AuditFlags",
    "InvariantBundle",
    "compute_bundle",
    "JonesAudit",
    "jones_floer_audit",
    "CobordismReport",
    "cobordism_report",
    "surgery_family",
    "SCHEMA",
]

SCHEMA = "brieskorn.bundle/1"


@dataclass(frozen=True)
class FloerRanks:
    r0: int
    r2: int
    r4: int
    r6: int

    @property
    def total(self) -> int:
        return self.r0 + self.r2 + self.r4 + self.r6

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.r0, self.r2, self.r4, self.r6)

    def swapped(self) -> "FloerRanks":
        """Ranks of the orientation-reversed knot data (sign k negated)."""
        return FloerRanks(self.r2, self.r0, self.r6, self.r4)


def floer_ranks(lam: int, sign_k: int) -> FloerRanks:
    lo, hi = 8 * lam - sign_k, 8 * lam + sign_k
    if lo % 16 or hi % 16:
        raise TheoremViolation(
            f"8*lambda -+ sign k = {lo}, {hi} not divisible by 16", lam=lam, sign_k=sign_k
        )
    r0, r2 = lo // 16, hi // 16
    if r0 < 0 or r2 < 0:
        raise TheoremViolation(f"negative Floer rank ({r0}, {r2})", lam=lam, sign_k=sign_k)
    return FloerRanks(r0, r2, r0, r2)


def nu_invariant(ranks: FloerRanks) -> int:
    """Half the alternating sum ``-r0 + r2 - r4 + r6``."""
    s = -ranks.r0 + ranks.r2 - ranks.r4 + ranks.r6
    if s % 2:
        raise TheoremViolation("alternating rank sum is odd", ranks=ranks.as_tuple())
    return s // 2


@dataclass(frozen=True)
class KnotSummary:
    diagram: PDCode
    jones: LaurentPolynomial
    signature: int
    determinant: int

    @property
    def log_derivative(self) -> Fraction:
        return log_derivative_at_minus_one(self.jones)


@lru_cache(maxsize=4096)
def knot_summary(data: SeifertData, mirror: bool = False) -> KnotSummary:
    """Diagram of k(p,q,r) (or its mirror) with Jones polynomial, signature and determinant."""
    d = build_diagram(data)
    if mirror:
        d = d.mirror()
    return KnotSummary(d, jones(d), gl_signature(d), determinant(d))


def mu_bar(data: SeifertData, j: int = 2) -> int:
    """mu-bar of a Seifert homology sphere.

    Three fibers go through the whole pipeline (lambda, signature, ranks,
    nu).  More fibers are spliced at position ``j`` (clamped to the legal
    range on the smaller pieces) until three remain.
    """
    if data.n == 3:
        ranks = floer_ranks(casson_lambda(data), knot_summary(data).signature)
        return nu_invariant(ranks)
    parts = splice_decompose(data, j)
    return mu_bar(parts.left, min(j, parts.left.n - 2)) + mu_bar(parts.right, min(j, parts.right.n - 2))


@dataclass(frozen=True)
class AuditFlags:
    theorem1_ok: bool
    theorem3_ok: bool
    mirror_calibrated: bool
    cobordism_note: bool


@dataclass(frozen=True)
class InvariantBundle:
    seifert: SeifertData
    lam: int
    sign_k: int
    ranks: FloerRanks
    nu: int
    mu_bar: int
    lambda_rho: int
    chi_rho: int
    determinant: int
    jones: LaurentPolynomial
    jones_log_derivative: Fraction
    audit_flags: AuditFlags
    mirrored: bool = False

    @property
    def h_invariant(self) -> Fraction:
        """Lin's trace-free count ``h(k) = sign k / 2``."""
        return Fraction(self.sign_k, 2)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "seifert": self.seifert.to_json(),
            "mirrored": self.mirrored,
            "lambda": self.lam,
            "sign_k": self.sign_k,
            "ranks": list(self.ranks.as_tuple()),
            "nu": self.nu,
            "mu_bar": self.mu_bar,
            "lambda_rho": self.lambda_rho,
            "chi_rho": self.chi_rho,
            "determinant": self.determinant,
            "jones": self.jones.to_pairs(),
            "jones_log_derivative": str(self.jones_log_derivative),
            "audit_flags": asdict(self.audit_flags),
        }

    @classmethod
    def from_json(cls, payload: dict | str) -> "InvariantBundle":
        if isinstance(payload, str):
            payload = json.loads(payload)
        if payload.get("schema") != SCHEMA:
            raise ValueError(f"unsupported bundle schema {payload.get('schema')!r}")
        return cls(
            seifert=SeifertData.from_json(payload["seifert"]),
            lam=payload["lambda"],
            sign_k=payload["sign_k"],
            ranks=FloerRanks(*payload["ranks"]),
            nu=payload["nu"],
            mu_bar=payload["mu_bar"],
            lambda_rho=payload["lambda_rho"],
            chi_rho=payload["chi_rho"],
            determinant=payload["determinant"],
            jones=LaurentPolynomial.from_pairs(payload["jones"]),
            jones_log_derivative=Fraction(payload["jones_log_derivative"]),
            audit_flags=AuditFlags(**payload["audit_flags"]),
            mirrored=payload["mirrored"],
        )


def compute_bundle(data: SeifertData, mirror: bool = False) -> InvariantBundle:
    """All invariants of a 3-fiber sphere, using k(p,q,r) or its mirror."""
    lam = casson_lambda(data)
    knot = knot_summary(data, mirror)
    sign_k = knot.signature
    ranks = floer_ranks(lam, sign_k)
    nu = nu_invariant(ranks)
    # mu-bar follows the chirality of the diagram actually used
    mb = mu_bar(data) * (-1 if mirror else 1)
    if sign_k % 8:
        raise TheoremViolation("sign k is not divisible by 8", sign_k=sign_k)
    chi_rho = 2 * nu
    theorem1 = ranks.total == 2 * lam and nu == sign_k // 8 == mb
    partial = InvariantBundle(
        seifert=data,
        lam=lam,
        sign_k=sign_k,
        ranks=ranks,
        nu=nu,
        mu_bar=mb,
        lambda_rho=sign_k // 8,
        chi_rho=chi_rho,
        determinant=knot.determinant,
        jones=knot.jones,
        jones_log_derivative=knot.log_derivative,
        audit_flags=AuditFlags(theorem1, False, False, nu >= 0),
        mirrored=mirror,
    )
    audit = jones_floer_audit(partial)
    flags = AuditFlags(theorem1, audit.strict, audit.strict_chirality != "none", nu >= 0)
    return replace(partial, audit_flags=flags)


@dataclass(frozen=True)
class JonesAudit:
    """Outcome of comparing ``x = -(1/12) (ln V)'(-1)`` with the ranks.

    ``strict``: x == r0 for the diagram used.  ``robust``: x is an integer in
    ``{r0, r2}`` and the mirror (which negates x and swaps r0, r2) lands on
    the complementary rank.  ``strict_chirality`` names the chiralities for
    which the strict form holds.
    """

    x: Fraction
    r0: int
    r2: int
    integral: bool
    strict: bool
    mirror_x: Fraction
    mirror_strict: bool
    robust: bool
    strict_chirality: str
    findings: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        out = asdict(self)
        out["x"] = str(self.x)
        out["mirror_x"] = str(self.mirror_x)
        out["findings"] = list(self.findings)
        return out


def jones_floer_audit(bundle: InvariantBundle) -> JonesAudit:
    x = -bundle.jones_log_derivative / 12
    # V(1/t) has logarithmic derivative -L at t = -1
    mx = -x
    r0, r2 = bundle.ranks.r0, bundle.ranks.r2
    integral = x.denominator == 1
    strict = integral and x == r0
    mirror_strict = integral and mx == r2
    in_set = integral and x in (r0, r2)
    # degree slots matched by x on each side; the mirror swaps the ranks
    built_slots = {i for i, r in ((0, r0), (2, r2)) if integral and x == r}
    mirror_slots = {i for i, r in ((0, r2), (2, r0)) if integral and mx == r}
    robust = any(i != k for i in built_slots for k in mirror_slots)
    chirality = {(True, True): "both", (True, False): "built", (False, True): "mirror"}.get(
        (strict, mirror_strict), "none"
    )
    findings = []
    if not integral:
        findings.append(f"x = {x} is not an integer")
    if not strict:
        findings.append(f"strict form fails: x = {x}, r0 = {r0}")
    if integral and not in_set:
        findings.append(f"x = {x} is not a rank in {{{r0}, {r2}}}")
    if in_set and not robust:
        findings.append(f"mirror gives x = {mx}, not the complementary rank")
    if strict_tension(bundle, x):
        findings.append(
            "sign-convention tension: lambda-rho = -1 forces r0 = 1 while the "
            "torus-knot Jones polynomial gives x = 0"
        )
    return JonesAudit(x, r0, r2, integral, strict, mx, mirror_strict, robust, chirality, tuple(findings))


def strict_tension(bundle: InvariantBundle, x: Fraction) -> bool:
    """The documented case: x = 0 but lambda-rho = -1 puts the rank in degree 0."""
    return bundle.lambda_rho == -1 and bundle.lam == 1 and x == 0 and bundle.ranks.r0 == 1


def surgery_family(multiplicities) -> tuple[int, int, int, int] | None:
    """Return ``(p, q, m, sign)`` when the data is ``Sigma(p, q, pqm + sign)``."""
    a = sorted(multiplicities)
    if len(a) != 3:
        return None
    for r in (a[2], a[1], a[0]):
        p, q = sorted(x for x in a if x != r)
        for sign in (1, -1):
            m, rem = divmod(r - sign, p * q)
            if rem == 0 and m >= 1:
                return p, q, m, sign
    return None


@dataclass(frozen=True)
class CobordismReport:
    multiplicities: tuple[int, ...]
    nu: int
    claimed: bool
    nonnegative: bool
    family: tuple[int, int, int, int] | None
    family_nu_zero: bool | None
    refuted: bool
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        out = asdict(self)
        out["multiplicities"] = list(self.multiplicities)
        out["family"] = list(self.family) if self.family else None
        out["notes"] = list(self.notes)
        return out


def cobordism_report(data: SeifertData, claimed_cobordant_to_zero: bool = False) -> CobordismReport:
    """Check a homology-cobordant-to-zero claim against the nu obstructions.

    Never asserts cobordism; it can only refute a claim.
    """
    nu = mu_bar(data)
    family = surgery_family(data.multiplicities)
    nonneg = nu >= 0
    family_zero = (nu == 0) if family else None
    notes = [f"nu = {nu}"]
    refuted = False
    if claimed_cobordant_to_zero:
        if not nonneg:
            notes.append("claim refuted: a sphere cobordant to zero has nu >= 0")
            refuted = True
        if family and not family_zero:
            p, q, m, s = family
            notes.append(
                f"claim refuted: Sigma({p},{q},{p * q}*{m}{'+' if s > 0 else '-'}1) "
                "cobordant to zero would force nu = 0"
            )
            refuted = True
        if not refuted:
            notes.append("no nu obstruction to the claim")
    return CobordismReport(
        tuple(data.multiplicities), nu, claimed_cobordant_to_zero, nonneg, family, family_zero, refuted, tuple(notes)
    )

