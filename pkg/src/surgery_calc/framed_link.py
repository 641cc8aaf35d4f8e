"""
framed_link.py

Framed links at linking-matrix level: one rational (or infinite) framing per
component plus a symmetric matrix of pairwise linking numbers.

Crossing data is not modelled. Moves that need a component to be an unknot
(blow-downs, Rolfsen twists, slam-dunks) trust the caller on that point.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from src.exact_core.int_matrix import IntMatrix
from src.exact_core.rational import (
    INFINITY,
    ExactArithmeticError,
    Slope,
    format_rational,
    is_infinite,
    parse_slope,
    to_rational,
)

logger = logging.getLogger(__name__)


class SurgeryError(Exception):
    """Raised when a surgery presentation or a move on it is invalid."""
    pass


def _coerce_framing(value) -> Slope:
    if is_infinite(value):
        return INFINITY
    try:
        if isinstance(value, str):
            return parse_slope(value)
        return to_rational(value)
    except ExactArithmeticError as exc:
        raise SurgeryError(f"invalid framing {value!r}") from exc


@dataclass(frozen=True)
class FramedLink:
    """
    Surgery presentation of a closed 3-manifold.

    Attributes
    ----------
    framings : tuple of Fraction or INFINITY
        Surgery coefficient of each component.
    linking : IntMatrix
        Symmetric matrix of linking numbers; the diagonal is ignored.
    labels : tuple of str
        Unique component names, "K0", "K1", ... when not given.
    """

    framings: Tuple[Slope, ...]
    linking: IntMatrix
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        framings = tuple(_coerce_framing(f) for f in self.framings)
        linking = self.linking if isinstance(self.linking, IntMatrix) else IntMatrix(self.linking, n_cols=len(framings))
        k = len(framings)
        if linking.shape != (k, k):
            raise SurgeryError(f"linking matrix shape {linking.shape} does not match {k} components")
        if not linking.is_symmetric():
            raise SurgeryError("linking matrix must be symmetric")
        # the diagonal carries no information; store it as zero
        linking = IntMatrix([[0 if i == j else linking[i, j] for j in range(k)] for i in range(k)], n_cols=k)
        labels = tuple(self.labels) if self.labels else tuple(f"K{i}" for i in range(k))
        if len(labels) != k or len(set(labels)) != k:
            raise SurgeryError("component labels must be unique, one per component")
        object.__setattr__(self, "framings", framings)
        object.__setattr__(self, "linking", linking)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def unknot(cls, framing, label: str = "K0") -> "FramedLink":
        return cls((framing,), IntMatrix([[0]]), (label,))

    @classmethod
    def from_components(cls, framings: Sequence, links: Dict[Tuple[int, int], int], labels: Sequence[str] = ()) -> "FramedLink":
        """Build from a sparse {(i, j): lk} map (each pair once)."""
        k = len(framings)
        rows = [[0] * k for _ in range(k)]
        for (i, j), value in links.items():
            if i == j:
                raise SurgeryError("a component does not link itself")
            rows[i][j] = rows[j][i] = value
        return cls(tuple(framings), IntMatrix(rows, n_cols=k), tuple(labels))

    @property
    def n_components(self) -> int:
        return len(self.framings)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SurgeryError(f"no component labelled {label!r}") from None

    def linking_number(self, i: int, j: int) -> int:
        return 0 if i == j else self.linking[i, j]

    def linking_vector(self, i: int) -> List[int]:
        return [self.linking_number(i, j) for j in range(self.n_components)]

    def is_integral(self) -> bool:
        return all(not is_infinite(f) and f.denominator == 1 for f in self.framings)

    def linking_matrix(self) -> IntMatrix:
        """Framings on the diagonal; only defined for integral links."""
        if not self.is_integral():
            raise SurgeryError("linking matrix needs integral framings; integralize first")
        k = self.n_components
        return IntMatrix(
            [[self.framings[i].numerator if i == j else self.linking[i, j] for j in range(k)] for i in range(k)],
            n_cols=k,
        )

    def delete(self, index: int) -> "FramedLink":
        keep = [i for i in range(self.n_components) if i != index]
        return FramedLink(
            tuple(self.framings[i] for i in keep),
            self.linking.principal_submatrix(keep),
            tuple(self.labels[i] for i in keep),
        )

    def with_framing(self, index: int, framing) -> "FramedLink":
        framings = list(self.framings)
        framings[index] = framing
        return FramedLink(tuple(framings), self.linking, self.labels)

    # -- JSON ---------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "components": [
                {"label": label, "framing": format_rational(f)} for label, f in zip(self.labels, self.framings)
            ],
            "linking": self.linking.to_lists(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, document: dict) -> "FramedLink":
        try:
            components = document["components"]
            framings = tuple(parse_slope(str(c["framing"])) for c in components)
            labels = tuple(c.get("label", f"K{i}") for i, c in enumerate(components))
            linking = IntMatrix(document["linking"], n_cols=len(components))
        except (KeyError, TypeError, ExactArithmeticError) as exc:
            raise SurgeryError(f"malformed framed-link document: {exc}") from exc
        return cls(framings, linking, labels)

    @classmethod
    def from_json(cls, text: str) -> "FramedLink":
        return cls.from_dict(json.loads(text))
