"""Three-valued decision outcomes and sweep budgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from .core import Element, format_ext


class Status(str, Enum):
    PROVEN = "Proven"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Budget:
    """Search limits.

    ``n`` caps unbounded existential multiplicities, ``basis`` is the depth
    of basis chains used for x' << x on infinite models, and ``grid`` is the
    value level of the finite sample used for quantifiers over infinite
    carriers.
    """

    n: int = 8
    basis: int = 12
    grid: int = 2


DEFAULT_BUDGET = Budget()


@dataclass
class Verdict:
    name: str
    status: Status
    witness: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)
    note: str = ""

    @property
    def proven(self) -> bool:
        return self.status is Status.PROVEN

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status.value}
        if self.witness:
            out["witness"] = render(self.witness)
        if self.certificate:
            out["certificate"] = render(self.certificate)
        if self.note:
            out["note"] = self.note
        return out

    def summary(self) -> str:
        parts = [self.status.value]
        data = self.witness if self.proven else self.certificate
        if data:
            parts.append(" ".join(f"{k}={_text(v)}" for k, v in data.items()))
        if self.note:
            parts.append(f"({self.note})")
        return " ".join(parts)

    def renamed(self, name: str) -> "Verdict":
        return Verdict(name, self.status, dict(self.witness), dict(self.certificate), self.note)


def proven(name: str, note: str = "", **witness) -> Verdict:
    return Verdict(name, Status.PROVEN, witness=witness, note=note)


def refuted(name: str, note: str = "", **certificate) -> Verdict:
    return Verdict(name, Status.REFUTED, certificate=certificate, note=note)


def unknown(name: str, note: str = "", **certificate) -> Verdict:
    return Verdict(name, Status.UNKNOWN, certificate=certificate, note=note)


def conjoin(name: str, verdicts: Iterable[Verdict]) -> Verdict:
    """AND-merge: first Refuted wins, else first Unknown, else Proven."""
    verdicts = list(verdicts)
    for v in verdicts:
        if v.refuted:
            return Verdict(name, v.status, dict(v.witness), {"part": v.name, **v.certificate}, v.note)
    for v in verdicts:
        if v.unknown:
            return Verdict(name, v.status, dict(v.witness), {"part": v.name, **v.certificate}, v.note)
    notes = sorted({v.note for v in verdicts if v.note})
    return Verdict(name, Status.PROVEN, note="; ".join(notes))


def negate(v: Verdict) -> Status:
    return {Status.PROVEN: Status.REFUTED, Status.REFUTED: Status.PROVEN}.get(v.status, Status.UNKNOWN)


def render(value):
    """JSON-ready rendering of witness data."""
    if isinstance(value, Element):
        return str(value)
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, float):
        return format_ext(value)
    return value


def _text(value) -> str:
    r = render(value)
    if isinstance(r, list):
        return "[" + ",".join(_text(v) for v in r) + "]"
    return str(r)
