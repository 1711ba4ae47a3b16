"""Certification reports: a tree of claims with witnesses, plus JSON I/O.

Every check in the package returns a :class:`CertReport`.  Reports are
immutable; aggregation goes through :func:`merge` or :func:`combine`, which
order children by ``claim_id`` so that output is deterministic.
"""

from __future__ import annotations

import enum
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

SCHEMA_VERSION = 1


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class Provenance(str, enum.Enum):
    """Where an exact expected value comes from."""

    REFERENCE = "reference"  # value stated in the source construction
    TRIVIAL = "trivial"
    DERIVED = "derived"  # computed by an independent route


class DuplicateClaimError(ValueError):
    pass


_EXACT_TYPES = (int, bool, Fraction, str)


def _is_float_like(value: Any) -> bool:
    kind = type(value)
    if kind in _EXACT_TYPES:
        return False
    if isinstance(value, (float, complex)):
        return True
    if isinstance(value, (list, tuple)):
        return any(map(_is_float_like, value))
    return False


@dataclass(frozen=True)
class Witness:
    label: str
    value: Any
    provenance: Provenance | None = None
    tolerance: float | None = None

    def __post_init__(self):
        if _is_float_like(self.value):
            if self.tolerance is None:
                raise ValueError(f"float witness {self.label!r} needs a tolerance")
        elif self.provenance is None:
            raise ValueError(f"exact witness {self.label!r} needs a provenance")

    def to_json(self) -> dict:
        out = {"label": self.label, "value": encode_value(self.value)}
        if self.provenance is not None:
            out["provenance"] = Provenance(self.provenance).value
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        return out


def exact(label: str, value: Any, provenance: Provenance = Provenance.DERIVED) -> Witness:
    return Witness(label, value, provenance=provenance)


def approx(label: str, value: Any, tolerance: float) -> Witness:
    return Witness(label, value, tolerance=tolerance)


@dataclass(frozen=True)
class CertReport:
    claim_id: str
    status: Status
    witnesses: tuple[Witness, ...] = ()
    children: tuple["CertReport", ...] = ()
    note: str = ""
    metadata: tuple[tuple[str, Any], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        object.__setattr__(self, "witnesses", tuple(self.witnesses))
        object.__setattr__(self, "children", tuple(self.children))
        if isinstance(self.metadata, dict):
            object.__setattr__(self, "metadata", tuple(sorted(self.metadata.items())))
        if self.status is Status.PASS and any(c.status is not Status.PASS for c in self.children):
            raise ValueError(f"{self.claim_id}: pass status with a non-passing child")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def witness(self, label: str) -> Any:
        for w in self.witnesses:
            if w.label == label:
                return w.value
        raise KeyError(label)

    def find(self, claim_id: str) -> "CertReport":
        """Depth-first lookup of a descendant (or self) by claim id."""
        if self.claim_id == claim_id:
            return self
        for c in self.children:
            try:
                return c.find(claim_id)
            except KeyError:
                pass
        raise KeyError(claim_id)

    def iter_leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.iter_leaves()

    def to_json(self) -> dict:
        out: dict[str, Any] = {"claim_id": self.claim_id, "status": self.status.value}
        if self.note:
            out["note"] = self.note
        if self.metadata:
            out["metadata"] = {k: encode_value(v) for k, v in self.metadata}
        if self.witnesses:
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def summary(self, indent: int = 0) -> str:
        """Plain-text outline; failing children are listed before the rest."""
        pad = "  " * indent
        line = f"{pad}[{self.status.value.upper()}] {self.claim_id}"
        if self.note:
            line += f": {self.note}"
        lines = [line]
        order = sorted(self.children, key=lambda c: (c.status is Status.PASS, c.status is Status.SKIP))
        for c in order:
            lines.append(c.summary(indent + 1))
        return "\n".join(lines)


def aggregate_status(statuses: Iterable[Status], own: Status = Status.PASS) -> Status:
    statuses = [Status(s) for s in statuses] + [Status(own)]
    if Status.FAIL in statuses:
        return Status.FAIL
    if Status.SKIP in statuses:
        return Status.SKIP
    return Status.PASS


def leaf(claim_id: str, ok: bool, witnesses: Sequence[Witness] = (), note: str = "", **metadata) -> CertReport:
    return CertReport(
        claim_id,
        Status.PASS if ok else Status.FAIL,
        tuple(witnesses),
        note=note,
        metadata=tuple(sorted(metadata.items())),
    )


def combine(
    claim_id: str,
    children: Sequence[CertReport],
    witnesses: Sequence[Witness] = (),
    note: str = "",
    own_ok: bool = True,
    **metadata,
) -> CertReport:
    """Group ``children`` under a new claim; status aggregates the children."""
    kids = _sorted_unique(children)
    status = aggregate_status((c.status for c in kids), Status.PASS if own_ok else Status.FAIL)
    return CertReport(claim_id, status, tuple(witnesses), kids, note, tuple(sorted(metadata.items())))


def merge(reports: Sequence[CertReport], claim_id: str = "all") -> CertReport:
    """Merge sibling reports. Empty input gives a passing report with no children."""
    return combine(claim_id, reports)


def _sorted_unique(children: Sequence[CertReport]) -> tuple[CertReport, ...]:
    seen = set()
    for c in children:
        if c.claim_id in seen:
            raise DuplicateClaimError(c.claim_id)
        seen.add(c.claim_id)
    return tuple(sorted(children, key=lambda c: c.claim_id))


def encode_value(value: Any) -> Any:
    """JSON encoding: exact integers and rationals become strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    if hasattr(value, "item"):  # numpy scalars
        return encode_value(value.item())
    return str(value)


def dumps(report: CertReport) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "report": report.to_json()}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_report(report: CertReport, path: str | os.PathLike | None) -> None:
    """Write JSON to ``path`` atomically; ``"-"`` or ``None`` means stdout."""
    text = dumps(report)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".report-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
