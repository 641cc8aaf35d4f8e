# src/service/backend/api_endpoints.py

import logging
from typing import Optional

from fastapi import APIRouter, HTTPException
from fastapi.responses import JSONResponse

from src.cli_report.cli import parse_checks
from src.cli_report.verification import ReportError, VerifyOptions, validate_parameters, verify
from src.exact_core.rational import ExactArithmeticError, format_rational
from src.floer_arith.lens_spaces import LensSpace, d_invariant_lens
from src.floer_arith.spinc import FloerArithmeticError
from src.plumbing_lattice.embedding import DEFAULT_NODE_BUDGET
from src.plumbing_lattice.graphs import LatticeError
from src.seifert_slopes.sign_vectors import enumerate_candidates, filter_histogram, upper_bound
from src.seifert_slopes.slopes import SlopeError
from src.surgery_calc.families import FAMILIES, family_record
from src.surgery_calc.framed_link import SurgeryError

logger = logging.getLogger(__name__)

router = APIRouter()

DOMAIN_ERRORS = (ReportError, ExactArithmeticError, SurgeryError, SlopeError, LatticeError, FloerArithmeticError)


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@router.get("/verify")
def get_verify(
    p: int,
    n: int,
    checks: Optional[str] = None,
    embedding: bool = False,
    margin: int = 0,
    budget: int = DEFAULT_NODE_BUDGET,
):
    """
    Returns the verification report for (p, n). The embedding search is off
    unless requested.
    """
    try:
        groups = None
        if checks:
            try:
                groups = parse_checks(checks)
            except Exception as exc:
                raise ReportError(str(exc)) from exc
        options = VerifyOptions(checks=groups, embedding=embedding, embedding_margin=margin, embedding_budget=budget)
        return JSONResponse(content=verify(p, n, options).to_dict())
    except DOMAIN_ERRORS as e:
        raise _bad_request(e)
    except Exception as e:
        logger.exception("Verification request failed")
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/enumerate")
def get_enumerate(p: int, n: int):
    """
    Returns the surviving sign vectors, the per-filter histogram and the bound.
    """
    try:
        survivors = enumerate_candidates(p, n)
        return JSONResponse(
            content={
                "p": p,
                "n": n,
                "survivors": [list(q.as_tuple()) for q in survivors],
                "histogram": filter_histogram(p, n),
                "bound": upper_bound(p, n),
            }
        )
    except DOMAIN_ERRORS as e:
        raise _bad_request(e)
    except Exception as e:
        logger.exception("Enumeration request failed")
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/dinv")
def get_dinv(p: int, q: int, reverse: bool = False):
    """
    Returns d(L(p, q), c) for every spin^c label c, as "a/b" strings.
    """
    try:
        lens = LensSpace(p, q, -1 if reverse else 1)
        return JSONResponse(
            content={
                "p": p,
                "q": q,
                "orientation": lens.orientation,
                "d": {str(label.c): format_rational(d_invariant_lens(lens, label)) for label in lens.labels()},
                "spin": [label.c for label in lens.spin_labels()],
            }
        )
    except DOMAIN_ERRORS as e:
        raise _bad_request(e)
    except Exception as e:
        logger.exception("d-invariant request failed")
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/families")
def get_families(p: int, n: int):
    """
    Returns the cross-checked records of E, S, L and U for (p, n).
    """
    try:
        validate_parameters(p, n)
        return JSONResponse(content=[family_record(family, p, n).to_dict() for family in FAMILIES])
    except DOMAIN_ERRORS as e:
        raise _bad_request(e)
    except Exception as e:
        logger.exception("Family request failed")
        raise HTTPException(status_code=500, detail=str(e))
