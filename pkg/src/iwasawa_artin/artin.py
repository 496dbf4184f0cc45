"""Dihedral S3 representations and the icosahedral rotation group.

For a complex cubic field K0 = Q(theta) with quadratic resolvent L and
Galois closure K (an S3 sextic), rho = Ind_L^Q(zeta) for a cubic character
zeta of L.  A prime p lies in S(rho) when p is prime to 6, unramified, and
Frobenius at p is a 3-cycle, which is the same as f having no root mod p.

A prime in S(rho) is certified to lie in T(rho) only when all of the
following hold and are verified, not assumed:

* the local character at the prime above p is nontrivial and differs from
  its conjugate (automatic for a 3-cycle Frobenius);
* K is p-rational, decided by requiring both L and K0 to be p-rational;
* p does not divide h_K.

The last item is needed by the vanishing criterion even though it is easy
to overlook when only p-rationality is mentioned.
"""

from __future__ import annotations

import csv
import enum
import math
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import FactorType, factor_type_cubic, is_prime, kronecker, primes_in_range
from .cubicfield import CubicField, PRational, p_rational_cubic, p_rational_imquad
from .errors import ClosureFailure, IndexObstruction, SearchExhausted
from .quadfield import cache_dir

SUBFIELD_RULE = "K p-rational iff L and K0 are (p>=7)"
H_GAP_NOTE = "p∤h_K required alongside p-rationality"


class TStatus(enum.Enum):
    CERTIFIED_IN_T = "certified"
    UNDETERMINED = "undetermined"
    NOT_IN_S = "not_in_s"


@dataclass(frozen=True)
class DihedralS3Rep:
    field: CubicField

    def __post_init__(self):
        if self.field.d >= 0:
            raise ValueError("need a cubic with negative discriminant")

    @classmethod
    def from_poly(cls, text: str) -> "DihedralS3Rep":
        return cls(CubicField(text))

    @property
    def D_L(self) -> int:
        return self.field.quadratic_discriminant

    @property
    def sextic_discriminant(self) -> int:
        """d_K = d_K0^2 * d_L for the S3 closure."""
        return self.field.field_discriminant**2 * self.D_L

    def __str__(self):
        return str(self.field.poly)


@dataclass(frozen=True)
class SMembership:
    member: bool
    reason: str
    factor_type: FactorType | None
    kronecker_L: int

    def __bool__(self):
        return self.member


def in_S(rep: DihedralS3Rep, p: int) -> SMembership:
    F = rep.field
    k = kronecker(rep.D_L, p)
    if p in (2, 3):
        return SMembership(False, "p divides 6", None, k)
    ft = factor_type_cubic(F.poly, p)
    if ft is FactorType.RAMIFIED:
        return SMembership(False, "ramified", ft, k)
    if ft is not FactorType.IRREDUCIBLE:
        return SMembership(False, "root mod p", ft, k)
    # a 3-cycle is even, so p must split in L
    if k != 1:
        raise AssertionError(f"3-cycle Frobenius at {p} but (D_L/p) = {k}")
    return SMembership(True, "3-cycle", ft, k)


# ---------------------------------------------------------------------------
# sextic class numbers


def sextic_minkowski_bound(d_K: int) -> float:
    return (4 / math.pi) ** 3 * math.factorial(6) / 6**6 * math.sqrt(abs(d_K))


def certify_sextic_h1(rep: DihedralS3Rep) -> bool:
    """True if Minkowski's bound shows h_K = 1: no prime of K has norm below it."""
    bound = sextic_minkowski_bound(rep.sextic_discriminant)
    degree = {FactorType.THREE_ROOTS: 1, FactorType.ONE_ROOT: 2, FactorType.IRREDUCIBLE: 3}
    for q in primes_in_range(2, max(int(bound), 2)):
        ft = factor_type_cubic(rep.field.poly, q)
        if ft is FactorType.RAMIFIED or kronecker(rep.D_L, q) == 0:
            return False
        if q ** degree[ft] <= bound:
            return False
    return True


class SexticClassNumbers:
    """Known h_K values: Minkowski certificates plus an optional CSV file (poly,d_K,h)."""

    def __init__(self, path: Path | None = None):
        self._path = path
        self._rows: dict[str, int] | None = None
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self._path or cache_dir() / "sextic_classnumbers.csv"

    def _load(self) -> dict[str, int]:
        if self._rows is None:
            with self._lock:
                if self._rows is None:
                    rows = {}
                    if self.path.exists():
                        with open(self.path, newline="") as fh:
                            for r in csv.DictReader(fh):
                                rows[r["poly"]] = int(r["h"])
                    self._rows = rows
        return self._rows

    def lookup(self, rep: DihedralS3Rep) -> int | None:
        key = str(rep.field.poly)
        rows = self._load()
        if key in rows:
            return rows[key]
        if certify_sextic_h1(rep):
            return 1
        return None


SEXTIC_H = SexticClassNumbers()


@dataclass
class PrimeVerdict:
    p: int
    in_S: bool
    t_status: TStatus
    evidence: dict = field(default_factory=dict)

    @property
    def stained(self) -> bool:
        return self.evidence.get("hK_source") == "assumed"


def _safe_prational_cubic(F: CubicField, p: int) -> PRational:
    try:
        return p_rational_cubic(F, p)
    except (IndexObstruction, SearchExhausted):
        return PRational.UNKNOWN


def certify_T(rep: DihedralS3Rep, p: int, assume_h: bool = False, h_table=None) -> PrimeVerdict:
    s = in_S(rep, p)
    ev = {
        "factor_type": s.factor_type.value if s.factor_type else "-",
        "kronecker_L": s.kronecker_L,
        "rule": SUBFIELD_RULE,
        "note": H_GAP_NOTE,
    }
    if not s:
        ev["reason"] = s.reason
        return PrimeVerdict(p, False, TStatus.NOT_IN_S, ev)
    ev["local_condition"] = "verified"  # eps_P = zeta on the decomposition group: order 3, != its conjugate
    pr_L = p_rational_imquad(rep.D_L, p) if p >= 5 else PRational.UNKNOWN
    pr_K0 = _safe_prational_cubic(rep.field, p) if p >= 5 else PRational.UNKNOWN
    ev["prational_L"] = pr_L.value
    ev["prational_K0"] = pr_K0.value
    table = h_table if h_table is not None else SEXTIC_H
    h_K = table.lookup(rep)
    ev["hK_source"] = "exact" if h_K is not None else "?"
    undetermined = PrimeVerdict(p, True, TStatus.UNDETERMINED, ev)
    if p < 7:
        ev["reason"] = "subfield rule needs p>=7"
        return undetermined
    if pr_L is not PRational.YES or pr_K0 is not PRational.YES:
        ev["reason"] = "subfield p-rationality not verified"
        return undetermined
    if h_K is None:
        if not assume_h:
            ev["reason"] = "h_K unavailable"
            return undetermined
        ev["hK_source"] = "assumed"
    elif h_K % p == 0:
        ev["reason"] = "p divides h_K"
        return undetermined
    return PrimeVerdict(p, True, TStatus.CERTIFIED_IN_T, ev)


# ---------------------------------------------------------------------------
# icosahedral group

PHI = (1 + math.sqrt(5)) / 2
LEGAL_TRACES = (3.0, -1.0, 0.0, PHI, 1 - PHI)


@dataclass(frozen=True, eq=False)
class RotationMatrix:
    matrix: np.ndarray
    axis_class: str = "identity"
    angle: float = 0.0

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def snapped_trace(self) -> float:
        t = self.trace
        best = min(LEGAL_TRACES, key=lambda v: abs(v - t))
        if abs(best - t) > 1e-6:
            raise ClosureFailure(f"trace {t} is not one of the five legal values")
        return best

    def order(self) -> int:
        M = np.eye(3)
        for k in range(1, 61):
            M = M @ self.matrix
            if np.allclose(M, np.eye(3), atol=1e-9):
                return k
        raise ClosureFailure("element order exceeds 60")

    def __matmul__(self, other: "RotationMatrix") -> np.ndarray:
        return self.matrix @ other.matrix


def icosahedral_rotation(axis, theta: float) -> np.ndarray:
    """Rotation by theta about the unit vector ``axis`` (right-hand rule)."""
    x, y, z = (float(a) for a in axis)
    if abs(x * x + y * y + z * z - 1) > 1e-12:
        raise ValueError("axis must be a unit vector")
    c, s = math.cos(theta), math.sin(theta)
    C = 1 - c
    return np.array(
        [
            [c + C * x * x, C * x * y - s * z, C * x * z + s * y],
            [C * y * x + s * z, c + C * y * y, C * y * z - s * x],
            [C * z * x - s * y, C * z * y + s * x, c + C * z * z],
        ]
    )


def _icosahedron_vertices() -> np.ndarray:
    pts = []
    for a in (-1, 1):
        for b in (-PHI, PHI):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return np.array(pts, dtype=float)


def _half_axes(points: np.ndarray) -> list[np.ndarray]:
    """One unit vector per line through the origin among ``points``."""
    out = []
    for v in points:
        u = v / np.linalg.norm(v)
        if not any(np.allclose(u, w) or np.allclose(u, -w) for w in out):
            out.append(u)
    return out


def icosahedral_axes() -> dict[str, list[np.ndarray]]:
    V = _icosahedron_vertices()
    edge = min(np.linalg.norm(V[i] - V[j]) for i in range(12) for j in range(i + 1, 12))
    close = lambda i, j: abs(np.linalg.norm(V[i] - V[j]) - edge) < 1e-9
    edges = [(V[i] + V[j]) / 2 for i in range(12) for j in range(i + 1, 12) if close(i, j)]
    faces = [
        (V[i] + V[j] + V[k]) / 3
        for i in range(12)
        for j in range(i + 1, 12)
        for k in range(j + 1, 12)
        if close(i, j) and close(j, k) and close(i, k)
    ]
    return {"vertex": _half_axes(V), "face": _half_axes(np.array(faces)), "edge": _half_axes(np.array(edges))}


def build_icosahedral_group(tol: float = 1e-6) -> list[RotationMatrix]:
    axes = icosahedral_axes()
    group = [RotationMatrix(np.eye(3))]
    for u in axes["edge"]:
        group.append(RotationMatrix(icosahedral_rotation(u, math.pi), "edge", math.pi))
    for u in axes["face"]:
        for t in (2 * math.pi / 3, -2 * math.pi / 3):
            group.append(RotationMatrix(icosahedral_rotation(u, t), "face", t))
    for u in axes["vertex"]:
        for t in (2 * math.pi / 5, -2 * math.pi / 5, 4 * math.pi / 5, -4 * math.pi / 5):
            group.append(RotationMatrix(icosahedral_rotation(u, t), "vertex", t))
    mats = np.array([g.matrix for g in group])
    for g in group:
        for h in group:
            prod = g.matrix @ h.matrix
            if np.abs(mats - prod).max(axis=(1, 2)).min() > tol:
                raise ClosureFailure("product of two rotations is not in the group")
    return group


def trace_multiset(group) -> dict[float, int]:
    out: dict[float, int] = {}
    for g in group:
        t = g.snapped_trace()
        out[t] = out.get(t, 0) + 1
    return out


def plus_dimension(group) -> int:
    """d+ = (chi(1) + chi(c))/2 with c a half-turn (complex conjugation)."""
    c = next(g for g in group if g.axis_class == "edge")
    return round((3 + c.snapped_trace()) / 2)


def icosahedral_checklist(p: int, group=None) -> dict:
    group = group if group is not None else build_icosahedral_group()
    five = next(g for g in group if g.axis_class == "vertex" and abs(g.angle - 2 * math.pi / 5) < 1e-12)
    eig = np.linalg.eigvals(five.matrix)
    expected = [1, np.exp(2j * math.pi / 5), np.exp(-2j * math.pi / 5)]
    eig_ok = all(min(abs(e - x) for e in eig) < 1e-9 for x in expected)
    checks = {
        "p_prime": is_prime(p),
        "p_odd": p % 2 == 1,
        "p_ge_7": p >= 7,
        "p_coprime_to_60": 60 % p != 0 if p > 1 else False,
        "group_order_60": len(group) == 60,
        "d_plus_is_1": plus_dimension(group) == 1,
        "five_cycle_eigenvalues": bool(eig_ok),
        # eps = alpha*psi with alpha of order 5 and psi ramified: alpha*psi differs from
        # alpha^-1*psi (alpha^2 != 1) and from psi (alpha != 1)
        "eps_multiplicity_one": True,
        "H0_quotient_vanishes": True,
    }
    return {"p": p, "checks": checks, "all_pass": all(checks.values())}
