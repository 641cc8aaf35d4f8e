"""
verification.py

Runs every check for one (p, n) or a grid of them and collects the results
into a VerificationReport. JSON is the machine contract; the text rendering
and the pandas summary table are derived from the same record.

Each check carries a stable anchor naming the claim it certifies, for
example "homology-order:S" or "donaldson:no-embedding", the source reference
of that claim (REFERENCES), and a status of pass, fail or skipped (with a
reason). Skips never hide a failure.
"""

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from src.exact_core.int_matrix import NEGATIVE_DEFINITE
from src.exact_core.rational import format_rational, parse_rational
from src.floer_arith.degrees import (
    MINUS_X_COBORDISM,
    QUARTER,
    V_COBORDISM,
    c1_square,
    degree_collapse_check,
    quarter_shift,
    rank_identities,
)
from src.floer_arith.spin_structures import SpinIdentificationError, minus_l_spin_degrees
from src.floer_arith.spinc import chern_class_reduction, spin_count
from src.plumbing_lattice.embedding import (
    DEFAULT_NODE_BUDGET,
    NO_EMBEDDING,
    SearchBudgetExceeded,
    donaldson_obstruction,
)
from src.plumbing_lattice.graphs import build_W, intersection_matrix, nr_obstruction_sum
from src.seifert_slopes.sign_vectors import enumerate_candidates, survivor_count_formula, upper_bound
from src.surgery_calc.families import FamilyConsistencyError, closed_form_order, family_presentation, family_record
from src.surgery_calc.homology import presentation

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

HOMOLOGY = "homology"
TRIANGLE = "triangle"
SPIN = "spin"
ENUMERATION = "enumeration"
OBSTRUCTION = "obstruction"
CHERN = "chern"
DEGREE = "degree"
CHECK_GROUPS = (HOMOLOGY, TRIANGLE, SPIN, ENUMERATION, OBSTRUCTION, CHERN, DEGREE)

REPORT_FAMILIES = ("S", "E", "L", "U")

# claim identifier -> source anchor it certifies
REFERENCES: Dict[str, str] = {
    "homology-order:S": 'Eq. (4) "p(pn+1)(p(n+1)+2)-p(n+1)-1"',
    "homology-order:E": 'Eq. (10) "p^2n-pn-1"',
    "homology-order:L": 'Eq. (11) "p(pn+1)(p(n+1)+1)"',
    "homology-order:U": '§6 "p^3n(n+1)+p(p+1)(n+1)+1"',
    "homology-order:coprime": 'Lemma 6.7 proof, "h_L and h_S are coprime"',
    "homology-order:parity": 'Lemma 6.8 proof, "both h_S and h_E are odd numbers"',
    "triangle-rank:S=E+L": 'Prop. 6.3 proof, "h_E+h_L=h_S"',
    "triangle-rank:L=E+U": 'related-triangle corollary proof, "h_L=h_E+h_U"',
    "spin-count:S,E,L": (
        r'§6 lemma proof, "the number of inequivalent spin structures is given by '
        r'$\vert H^1 (Y; \mathbb Z /2\mathbb Z )\vert$"'
    ),
    "spin-degrees:minus-L": '§6, "the degrees are additive under connected sums"',
    "enumeration:survivors": r'Theorem 1.1, "2 \max\{p(p-1)-4, 0\}"',
    "enumeration:bound": (
        'proof of Theorem 1.1, "there are exactly two positive, tight contact structure[s]"'
    ),
    "donaldson:negative-definite": 'Prop. 4.1, "the closed 4--manifold ... is negative definite"',
    "donaldson:nr-sum": 'Lemma 6.6 proof, "it is enough to check that"',
    "donaldson:no-embedding": 'Prop. 4.1 proof, "embeds into the diagonal intersection form $Q_Z$"',
    "chern-class:generator": r'Lemma 5.4, conclusion "c_1(\t_{p,n})=PD(\mu_d)"',
    "degree:collapse": "Eq. (12)",
    "degree:quarter-shift": r'Prop. 6.10, "\deg(\t_E)=\deg(\t_W)+\frac{1}{4}"',
    "degree:c1-square": (
        r'Lemma 6.8 statement "c_1(\mathbf s)\cdot c_1(\mathbf s) = -\frac{k^2 h_L}{h_S}"'
    ),
}


class ReportError(Exception):
    """Raised for invalid report parameters or options (a usage error)."""
    pass


@dataclass(frozen=True)
class VerifyOptions:
    """
    Knobs of a verification run.

    checks : check groups to run, None for all of CHECK_GROUPS.
    embedding : run the diagonal-embedding search (the expensive check).
    embedding_margin : search in Z^(rank + margin).
    embedding_budget : node budget; exhaustion skips the check.
    workers : processes for the embedding search, or for grid entries.
    """

    checks: Optional[Tuple[str, ...]] = None
    embedding: bool = True
    embedding_margin: int = 0
    embedding_budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1

    def __post_init__(self):
        if self.checks is not None:
            object.__setattr__(self, "checks", tuple(self.checks))
            unknown = [c for c in self.checks if c not in CHECK_GROUPS]
            if unknown:
                raise ReportError(f"unknown check group(s) {unknown}; expected a subset of {CHECK_GROUPS}")
        if self.embedding_margin < 0:
            raise ReportError("embedding margin must be nonnegative")
        if self.embedding_budget < 1:
            raise ReportError("embedding budget must be positive")
        if self.workers < 1:
            raise ReportError("workers must be at least 1")

    def selected(self, group: str) -> bool:
        return self.checks is None or group in self.checks


@dataclass(frozen=True)
class CheckResult:
    anchor: str
    status: str
    detail: str = ""
    reason: Optional[str] = None
    reference: str = ""

    def to_dict(self) -> dict:
        return {
            "anchor": self.anchor,
            "status": self.status,
            "detail": self.detail,
            "reason": self.reason,
            "reference": self.reference,
        }


def _check(anchor: str, condition: bool, detail: str) -> CheckResult:
    return CheckResult(anchor, PASS if condition else FAIL, detail, reference=REFERENCES[anchor])


def _fail(anchor: str, detail: str) -> CheckResult:
    return CheckResult(anchor, FAIL, detail, reference=REFERENCES[anchor])


def _skip(anchor: str, reason: str) -> CheckResult:
    return CheckResult(anchor, SKIPPED, "", reason, REFERENCES[anchor])


def _fraction(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_rational(value)


@dataclass
class VerificationReport:
    p: int
    n: int
    h: Dict[str, int] = field(default_factory=dict)
    rank_identities: Optional[Dict[str, bool]] = None
    spin_counts: Optional[Dict[str, int]] = None
    spin_degrees: Optional[Dict[str, Fraction]] = None
    survivors: Optional[List[Tuple[int, int, int]]] = None
    bound: Optional[int] = None
    obstruction: Optional[dict] = None
    chern_residue: Optional[int] = None
    degrees: Optional[Dict[str, object]] = None
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def status(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def counts(self) -> Dict[str, int]:
        return {s: sum(1 for c in self.checks if c.status == s) for s in (PASS, FAIL, SKIPPED)}

    def to_dict(self) -> dict:
        degrees = None
        if self.degrees is not None:
            degrees = {
                key: _fraction(value) if isinstance(value, Fraction) else value for key, value in self.degrees.items()
            }
        return {
            "p": self.p,
            "n": self.n,
            "h": dict(self.h),
            "rank_identities": self.rank_identities,
            "spin_counts": self.spin_counts,
            "spin_degrees": None
            if self.spin_degrees is None
            else {key: _fraction(value) for key, value in self.spin_degrees.items()},
            "survivors": None if self.survivors is None else [list(q) for q in self.survivors],
            "bound": self.bound,
            "obstruction": self.obstruction,
            "chern_residue": self.chern_residue,
            "degrees": degrees,
            "checks": [c.to_dict() for c in self.checks],
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, document: dict) -> "VerificationReport":
        """Inverse of to_dict; the derived "status" field is recomputed."""
        try:
            degrees = document["degrees"]
            if degrees is not None:
                degrees = {
                    key: value if isinstance(value, bool) else parse_rational(value) for key, value in degrees.items()
                }
            spin_degrees = document["spin_degrees"]
            if spin_degrees is not None:
                spin_degrees = {key: parse_rational(value) for key, value in spin_degrees.items()}
            survivors = document["survivors"]
            return cls(
                p=document["p"],
                n=document["n"],
                h=dict(document["h"]),
                rank_identities=document["rank_identities"],
                spin_counts=document["spin_counts"],
                spin_degrees=spin_degrees,
                survivors=None if survivors is None else [tuple(q) for q in survivors],
                bound=document["bound"],
                obstruction=document["obstruction"],
                chern_residue=document["chern_residue"],
                degrees=degrees,
                checks=[
                    CheckResult(c["anchor"], c["status"], c["detail"], c["reason"], c["reference"])
                    for c in document["checks"]
                ],
            )
        except (KeyError, TypeError) as exc:
            raise ReportError(f"malformed report document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        lines = [f"(p, n) = ({self.p}, {self.n})  " + "  ".join(f"h_{k}={v}" for k, v in self.h.items())]
        for check in self.checks:
            tail = check.detail if check.status != SKIPPED else f"({check.reason})"
            lines.append(f"  [{check.status.upper():7}] {check.anchor:28} {tail}  <{check.reference}>")
        lines.append(f"  => {self.status}")
        return "\n".join(lines)


def validate_parameters(p, n) -> None:
    for name, value, low in (("p", p, 2), ("n", n, 1)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ReportError(f"{name} must be an integer, got {value!r}")
        if value < low:
            raise ReportError(f"{name} must be at least {low}, got {value}")


# ---------------------------------------------------------------------------
# Check groups
# ---------------------------------------------------------------------------

def _homology_checks(report: VerificationReport) -> None:
    p, n = report.p, report.n
    for family in REPORT_FAMILIES:
        anchor = f"homology-order:{family}"
        try:
            record = family_record(family, p, n)
        except FamilyConsistencyError as exc:
            report.checks.append(_fail(anchor, str(exc)))
            continue
        report.checks.append(_check(anchor, record.h == report.h[family], f"|H1| = {record.h}"))
    hs, he, hl = report.h["S"], report.h["E"], report.h["L"]
    report.checks.append(_check("homology-order:coprime", math.gcd(hl, hs) == 1, f"gcd(h_L, h_S) = {math.gcd(hl, hs)}"))
    report.checks.append(
        _check("homology-order:parity", hs % 2 == 1 and he % 2 == 1 and hl % 2 == 0, f"h_S={hs}, h_E={he}, h_L={hl}")
    )


def _triangle_checks(report: VerificationReport) -> None:
    identities = rank_identities(report.p, report.n)
    report.rank_identities = identities.to_dict()
    report.checks.append(_check("triangle-rank:S=E+L", identities.s_equals_e_plus_l, "h_S = h_E + h_L"))
    report.checks.append(_check("triangle-rank:L=E+U", identities.l_equals_e_plus_u, "h_L = h_E + h_U"))


def _spin_checks(report: VerificationReport) -> None:
    p, n = report.p, report.n
    counts = {family: spin_count(presentation(family_presentation(family, p, n))) for family in ("S", "E", "L")}
    report.spin_counts = counts
    observed = (counts["S"], counts["E"], counts["L"])
    report.checks.append(_check("spin-count:S,E,L", observed == (1, 1, 2), f"counts {observed}"))
    try:
        degrees = minus_l_spin_degrees(p, n)
    except SpinIdentificationError as exc:
        report.checks.append(_fail("spin-degrees:minus-L", str(exc)))
        return
    report.spin_degrees = {
        "tau_V": degrees.tau_V.d,
        "tau_W": degrees.tau_W.d,
        "predicted_tau_E": degrees.predicted_tau_E,
    }
    report.checks.append(
        _check(
            "spin-degrees:minus-L",
            degrees.tau_V.sublink != degrees.tau_W.sublink,
            f"d(tau_V) = {degrees.tau_V.d}, d(tau_W) = {degrees.tau_W.d}",
        )
    )


def _enumeration_checks(report: VerificationReport) -> None:
    p, n = report.p, report.n
    survivors = enumerate_candidates(p, n)
    report.survivors = [(q.q1, q.q2, q.q3) for q in survivors]
    report.bound = upper_bound(p, n)
    expected = survivor_count_formula(p)
    report.checks.append(
        _check("enumeration:survivors", len(survivors) == expected, f"{len(survivors)} survivors, formula {expected}")
    )
    report.checks.append(
        _check("enumeration:bound", report.bound == 2 * len(survivors), f"bound {report.bound}")
    )


def _obstruction_checks(report: VerificationReport, options: VerifyOptions) -> None:
    p, n = report.p, report.n
    lattice = intersection_matrix(build_W(p, n))
    kind = lattice.definiteness()
    det = abs(lattice.determinant())
    nr_sum = nr_obstruction_sum(p, n)
    report.obstruction = {
        "rank": lattice.rank,
        "definiteness": kind,
        "determinant": det,
        "nr_sum": format_rational(nr_sum),
        "embedding": None,
        "certificate": None,
    }
    detail = f"{kind}, |det| = {det}"
    report.checks.append(
        _check("donaldson:negative-definite", kind == NEGATIVE_DEFINITE and det == report.h["E"], detail)
    )
    report.checks.append(_check("donaldson:nr-sum", nr_sum < 0, f"sum = {format_rational(nr_sum)}"))

    anchor = "donaldson:no-embedding"
    if not options.embedding:
        report.checks.append(_skip(anchor, "embedding search disabled"))
        return
    try:
        verdict = donaldson_obstruction(
            p, n, margin=options.embedding_margin, budget=options.embedding_budget, workers=options.workers
        )
    except SearchBudgetExceeded:
        logger.warning("Embedding search for (%d,%d) ran out of budget; check skipped", p, n)
        report.checks.append(_skip(anchor, "budget"))
        return
    report.obstruction["embedding"] = verdict.verdict
    report.obstruction["certificate"] = verdict.certificate.to_dict()
    report.checks.append(
        _check(anchor, verdict.verdict == NO_EMBEDDING, f"{verdict.verdict} in Z^{verdict.dimension}")
    )


def _chern_checks(report: VerificationReport) -> None:
    if report.p % 2 == 0:
        report.checks.append(_skip("chern-class:generator", "even p"))
        return
    residue = chern_class_reduction(report.p, report.n)
    report.chern_residue = residue
    report.checks.append(_check("chern-class:generator", residue == 1, f"c1 = {residue} mu_d"))


def _degree_checks(report: VerificationReport) -> None:
    p, n = report.p, report.n
    collapse = degree_collapse_check(p, n)
    shift = quarter_shift()
    c1_v = c1_square(V_COBORDISM, 1, p, n)
    c1_x = c1_square(MINUS_X_COBORDISM, 1, p, n)
    report.degrees = {"collapse": collapse, "quarter_shift": shift, "c1_square_V": c1_v, "c1_square_minusX": c1_x}
    report.checks.append(_check("degree:collapse", collapse, "sandwich width 1/4"))
    report.checks.append(_check("degree:quarter-shift", shift == QUARTER, f"shift = {format_rational(shift)}"))
    report.checks.append(
        _check("degree:c1-square", c1_v + c1_x == -1, f"c1^2(V) + c1^2(-X) = {format_rational(c1_v + c1_x)}")
    )


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def verify(p: int, n: int, options: VerifyOptions = VerifyOptions()) -> VerificationReport:
    """
    Run the selected check groups for (p, n).

    Parameters
    ----------
    p, n : int
        Family parameters, p >= 2 and n >= 1.
    options : VerifyOptions
        Check selection and embedding-search settings.

    Returns
    -------
    VerificationReport
        Fails if any check failed; skipped checks do not count as failures.

    Raises
    ------
    ReportError
        For invalid parameters.
    """
    validate_parameters(p, n)
    try:
        report = VerificationReport(p, n, h={family: closed_form_order(family, p, n) for family in REPORT_FAMILIES})
        if options.selected(HOMOLOGY):
            _homology_checks(report)
        if options.selected(TRIANGLE):
            _triangle_checks(report)
        if options.selected(SPIN):
            _spin_checks(report)
        if options.selected(ENUMERATION):
            _enumeration_checks(report)
        if options.selected(OBSTRUCTION):
            _obstruction_checks(report, options)
        if options.selected(CHERN):
            _chern_checks(report)
        if options.selected(DEGREE):
            _degree_checks(report)
        logger.info("Verified (%d,%d): %s %s", p, n, report.status, report.counts())
        return report
    except Exception:
        logger.exception("Failed to verify p=%s, n=%s", p, n)
        raise


def _verify_entry(args) -> VerificationReport:
    p, n, options = args
    return verify(p, n, options)


def grid(p_range: Iterable[int], n_range: Iterable[int], options: VerifyOptions = VerifyOptions()) -> List[VerificationReport]:
    """
    verify() over p_range x n_range, p-major.

    With options.workers > 1 the entries run in a process pool (each entry's
    embedding search then runs single-process); results keep grid order.
    """
    n_values = list(n_range)
    pairs = [(p, n) for p in p_range for n in n_values]
    for p, n in pairs:
        validate_parameters(p, n)
    if options.workers > 1 and len(pairs) > 1:
        inner = replace(options, workers=1)
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            reports = list(pool.map(_verify_entry, [(p, n, inner) for p, n in pairs]))
    else:
        reports = [verify(p, n, options) for p, n in pairs]
    logger.info("Grid of %d entries: %d failing", len(reports), sum(r.status == FAIL for r in reports))
    return reports


def grid_to_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2)


SUMMARY_COLUMNS = ["p", "n", "h_S", "h_E", "h_L", "h_U", "survivors", "bound", "passed", "failed", "skipped", "status"]


def summary_table(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    """One row per report with the orders, the survivor count and pass/fail/skip counts."""
    rows = []
    for report in reports:
        counts = report.counts()
        rows.append(
            {
                "p": report.p,
                "n": report.n,
                **{f"h_{family}": report.h.get(family) for family in REPORT_FAMILIES},
                "survivors": None if report.survivors is None else len(report.survivors),
                "bound": report.bound,
                "passed": counts[PASS],
                "failed": counts[FAIL],
                "skipped": counts[SKIPPED],
                "status": report.status,
            }
        )
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def export_summary_csv(reports: Sequence[VerificationReport], path: str) -> pd.DataFrame:
    df = summary_table(reports)
    df.to_csv(path, index=False)
    logger.info("Wrote grid summary of %d rows to %s", len(df), path)
    return df
