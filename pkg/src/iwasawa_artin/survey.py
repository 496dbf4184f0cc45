"""Prime-range scans, heuristic comparators and report serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import is_fundamental_discriminant, primes_in_range
from .artin import SUBFIELD_RULE, H_GAP_NOTE, DihedralS3Rep, TStatus, certify_T
from .cubicfield import p_rational_imquad
from .errors import InvalidDiscriminant
from .invariants import CONVENTION_NOTE, LambdaValue, lambda_classify
from .quadfield import unit_count

VERSION = "0.1.0"

COLUMNS = ("p", "split", "h_flag", "gold", "lambda", "prational_L", "prational_K0", "hK_source", "verdict", "notes")

LAMBDA_TOKENS = {
    LambdaValue.ZERO: "zero",
    LambdaValue.ONE: "one",
    LambdaValue.GREATER_THAN_ONE: "gt1",
    LambdaValue.UNKNOWN: "?",
}

CHUNK = 2000


@dataclass
class SurveyReport:
    metadata: dict
    rows: list[dict] = field(default_factory=list)
    summaries: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, metadata: dict | None = None) -> "SurveyReport":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != COLUMNS:
            raise ValueError("unexpected CSV header")
        rows = [dict(r) for r in reader]
        meta = dict(metadata or {})
        return cls(meta, rows, summarize(meta, rows) if "kind" in meta else {})

    def to_json(self) -> str:
        return json.dumps({"metadata": self.metadata, "rows": self.rows, "summaries": self.summaries}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "SurveyReport":
        obj = json.loads(text)
        return cls(obj["metadata"], obj["rows"], obj["summaries"])


def _grid(X: int) -> list[int]:
    pts, x = [], 10
    while x < X:
        pts.append(x)
        x *= 10
    if X >= 2:
        pts.append(X)
    return pts


def _counting(rows, pred, X):
    ps = [int(r["p"]) for r in rows if pred(r)]
    out, i = [], 0
    for x in _grid(X):
        while i < len(ps) and ps[i] <= x:
            i += 1
        out.append([x, i])
    return out


def summarize(meta: dict, rows: list[dict]) -> dict:
    X = meta["X"]
    if meta["kind"] == "lambda":
        counts = {tok: sum(r["lambda"] == tok for r in rows) for tok in ("zero", "one", "gt1", "?")}
        M = sum(r["split"] == "split" and r["lambda"] == "gt1" for r in rows)
        split_sum = sum(1 / int(r["p"]) - 1 / int(r["p"]) ** 2 for r in rows if r["split"] == "split")
        return {
            "count_zero": counts["zero"],
            "count_one": counts["one"],
            "count_gt1": counts["gt1"],
            "count_unknown": counts["?"],
            "M": M,
            "half_loglog": 0.5 * math.log(math.log(X)) if X > 2 else 0.0,
            "split_sum": split_sum,
            "N_gt1": _counting(rows, lambda r: r["lambda"] == "gt1", X),
        }
    in_s = sum(r["verdict"] != "not_in_s" for r in rows)
    cert = sum(r["verdict"] == "certified" for r in rows)
    curve = _counting(rows, lambda r: r["verdict"] == "certified", X)
    logs = [(math.log(x), n) for x, n in curve]
    den = sum(l * l for l, _ in logs)
    return {
        "S": in_s,
        "certified": cert,
        "undetermined": sum(r["verdict"] == "undetermined" for r in rows),
        "stained": sum("assumed-h" in r["notes"] for r in rows),
        "N_T": curve,
        "c_fit": sum(l * n for l, n in logs) / den if den else 0.0,
        "chebotarev_ratio": in_s / len(rows) if rows else 0.0,
        "chebotarev_target": 1 / 3,
    }


# -- per-prime rows -----------------------------------------------------------


def lambda_row(D: int, p: int) -> dict:
    v = lambda_classify(D, p)
    ev = v.evidence
    gold = "-"
    if "gold_value" in ev:
        gold = "gt1" if ev["gold_value"] == 1 else "eq1"
    notes = [ev["reason"]] if "reason" in ev else []
    if "reg_valuation" in ev:
        notes.append(f"v(Reg)={ev['reg_valuation']}")
    return {
        "p": str(p),
        "split": ev["split"],
        "h_flag": "divides" if ev["p_divides_h"] else "coprime",
        "gold": gold,
        "lambda": LAMBDA_TOKENS[v.value],
        "prational_L": p_rational_imquad(D, p).value if p >= 5 else "?",
        "prational_K0": "-",
        "hK_source": "-",
        "verdict": LAMBDA_TOKENS[v.value],
        "notes": ";".join(notes),
    }


def T_row(rep: DihedralS3Rep, p: int, assume_h: bool = False) -> dict:
    v = certify_T(rep, p, assume_h=assume_h)
    ev = v.evidence
    k = ev["kronecker_L"]
    notes = [ev["reason"]] if "reason" in ev else []
    if v.stained:
        notes.append("assumed-h")
    src = ev.get("hK_source", "-") if v.in_S else "-"
    return {
        "p": str(p),
        "split": {1: "split", -1: "inert", 0: "ramified"}[k],
        "h_flag": "coprime" if v.t_status is TStatus.CERTIFIED_IN_T and src == "exact" else ("-" if not v.in_S else "?"),
        "gold": "-",
        "lambda": "-",
        "prational_L": ev.get("prational_L", "-"),
        "prational_K0": ev.get("prational_K0", "-"),
        "hK_source": src,
        "verdict": v.t_status.value,
        "notes": ";".join(notes),
    }


def _lambda_chunk(args):
    D, ps = args
    return [lambda_row(D, p) for p in ps]


def _T_chunk(args):
    poly, ps, assume_h = args
    rep = DihedralS3Rep.from_poly(poly)
    return [T_row(rep, p, assume_h) for p in ps]


def _run(fn, jobs, workers: int) -> list[dict]:
    if workers <= 1 or len(jobs) <= 1:
        results = [fn(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(fn, jobs))  # map preserves submission order
    rows = [r for chunk in results for r in chunk]
    rows.sort(key=lambda r: int(r["p"]))
    return rows


def _chunks(ps: list[int], size: int = CHUNK) -> list[list[int]]:
    return [ps[i : i + size] for i in range(0, len(ps), size)]


def scan_lambda(D: int, X: int, workers: int = 1) -> SurveyReport:
    if D >= 0 or not is_fundamental_discriminant(D):
        raise InvalidDiscriminant(f"{D} is not a negative fundamental discriminant")
    if X > 10**7:
        raise ValueError("X must be at most 10^7")
    wD = unit_count(D) * D
    ps = [p for p in primes_in_range(3, X) if wD % p] if X >= 3 else []
    meta = {"kind": "lambda", "field": f"quad:{D}", "X": X, "convention": CONVENTION_NOTE, "version": VERSION}
    rows = _run(_lambda_chunk, [(D, c) for c in _chunks(ps)], workers)
    return SurveyReport(meta, rows, summarize(meta, rows))


def scan_T(rep: DihedralS3Rep | str, X: int, assume_h: bool = False, workers: int = 1) -> SurveyReport:
    if isinstance(rep, str):
        rep = DihedralS3Rep.from_poly(rep)
    if X > 10**6:
        raise ValueError("X must be at most 10^6")
    poly = str(rep.field.poly)
    ps = primes_in_range(2, X) if X >= 2 else []
    meta = {
        "kind": "T",
        "field": f"cubic:{poly}",
        "X": X,
        "assume_h": assume_h,
        "convention": f"{SUBFIELD_RULE}; {H_GAP_NOTE}",
        "version": VERSION,
    }
    rows = _run(_T_chunk, [(poly, c, assume_h) for c in _chunks(ps)], workers)
    return SurveyReport(meta, rows, summarize(meta, rows))


# -- heuristics ---------------------------------------------------------------


@dataclass(frozen=True)
class HeuristicValues:
    p: int
    r: int
    ejv: float
    ejv_error: float
    cl: float
    rank_failure: Fraction
    split_sum: float


def ejv(p: int, r: int, t_max: int = 60) -> float:
    """p^-r * prod_{r<t<=t_max} (1 - p^-t)."""
    out = float(p) ** -r
    for t in range(r + 1, t_max + 1):
        out *= 1 - float(p) ** -t
    return out


def cohen_lenstra(p: int, t_max: int = 60) -> float:
    out = 1.0
    for t in range(1, t_max + 1):
        out *= 1 - float(p) ** -t
    return out


def rank_failure(k: int, n: int, p: int) -> Fraction:
    """Probability that a random k x n matrix over F_p (k <= n) has rank below k."""
    full = Fraction(1)
    for i in range(k):
        full *= 1 - Fraction(p) ** (i - n)
    return 1 - full


def split_partial_sum(x: int) -> float:
    return sum(1 / p - 1 / p**2 for p in primes_in_range(2, x)) if x >= 2 else 0.0


def heuristic_values(p: int, r: int, k: int, n: int, t_max: int = 60, x: int = 1000) -> HeuristicValues:
    if t_max < 30:
        raise ValueError("t_max must be at least 30")
    # the omitted tail prod_{t>t_max} lies in [1 - p^-t_max/(p-1), 1]
    err = float(p) ** (-r - t_max) / (p - 1)
    return HeuristicValues(p, r, ejv(p, r, t_max), err, cohen_lenstra(p, t_max), rank_failure(k, n, p), split_partial_sum(x))
