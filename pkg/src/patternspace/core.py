"""The abstract-pattern-space contract: cut, support, action, order,
compatibility, supremum and zero, dispatched uniformly over the instance kinds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .geometry import Isometry, Window, GroupSpec, ALL, EMPTY


class PatternError(Exception):
    pass


class NotPairwiseCompatible(PatternError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class NotLocallyFinite(PatternError):
    def __init__(self, msg, window=None):
        super().__init__(msg)
        self.window = window


class UnboundedRequest(PatternError):
    pass


class KindMismatch(PatternError):
    pass


class Undecided(PatternError):
    """The question is outside the exactly decidable fragment."""


class GroupError(PatternError):
    pass


PASS, FAIL, UNDECIDED = "PASS", "FAIL", "UNDECIDED"


@dataclass
class Verdict:
    status: str
    reason: str = ""
    counterexample: dict | None = None
    checked_cases: int = 0
    certificate: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status == PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @staticmethod
    def ok(checked=0, certificate="", **details) -> "Verdict":
        return Verdict(PASS, checked_cases=checked, certificate=certificate, details=details)

    @staticmethod
    def fail(reason, counterexample=None, checked=0, certificate="") -> "Verdict":
        return Verdict(FAIL, reason=reason, counterexample=counterexample,
                       checked_cases=checked, certificate=certificate)

    def __repr__(self):
        s = f"Verdict({self.status}"
        if self.reason:
            s += f", {self.reason}"
        return s + f", cases={self.checked_cases})"


@dataclass(frozen=True)
class BoundedComponentsCertificate:
    radius: Fraction          # rational R_P (upper bound)
    radius_sq: Fraction       # exact squared diameter bound it was derived from


@dataclass(frozen=True)
class SupportHandle:
    pattern: Any
    bounding_radius: Any      # Fraction, or None for UNBOUNDED
    anchor: tuple

    def contains(self, x) -> bool:
        return self.pattern.support_contains(x)


class AbstractPattern:
    """Base class.  Concrete kinds live in ``patternspace.instances``."""
    kind: str = "abstract"
    space: str = "X"          # "X" for R^d, "Gamma" for patterns over the group
    glueable: bool = True

    group: GroupSpec

    # -- required interface ------------------------------------------------
    def cut(self, w: Window) -> "AbstractPattern":
        raise NotImplementedError

    def act(self, g: Isometry) -> "AbstractPattern":
        raise NotImplementedError

    def is_finite(self) -> bool:
        raise NotImplementedError

    def is_zero(self) -> bool:
        raise NotImplementedError

    def support_contains(self, x) -> bool:
        raise NotImplementedError

    def support_within(self, w: Window) -> bool:
        raise NotImplementedError

    def leq(self, other) -> bool:
        raise NotImplementedError

    def compatible(self, other) -> bool:
        raise NotImplementedError

    @classmethod
    def zero(cls, group: GroupSpec, **kw) -> "AbstractPattern":
        raise NotImplementedError

    @classmethod
    def sup(cls, items: list, group: GroupSpec, **kw) -> "AbstractPattern":
        raise NotImplementedError

    def validate(self) -> Verdict:
        return Verdict.ok()

    def component_radius(self):
        return None

    def support(self) -> SupportHandle:
        raise NotImplementedError

    @property
    def dim(self) -> int:
        return self.group.dim

    def _check_group(self, g: Isometry):
        if g.dim != self.group.dim:
            raise GroupError("dimension mismatch")
        if not self.group.contains(g.rotation):
            raise GroupError("rotation part outside the point group")

    def zero_like(self):
        return type(self).zero(self.group, **self._zero_kwargs())

    def _zero_kwargs(self) -> dict:
        return {}


def _same_kind(p, q):
    if p.kind != q.kind:
        raise KindMismatch(f"{p.kind} vs {q.kind}")
    if p.group.dim != q.group.dim:
        raise KindMismatch("dimension mismatch")


# ------------------------------------------------------------------ contract

def cut(p: AbstractPattern, w: Window) -> AbstractPattern:
    return p.cut(w)


def act(g: Isometry, p: AbstractPattern) -> AbstractPattern:
    return p.act(g)


def is_leq(q: AbstractPattern, p: AbstractPattern) -> bool:
    """q <= p, i.e. p ∧ supp q = q."""
    _same_kind(p, q)
    return q.leq(p)


def are_compatible(p: AbstractPattern, q: AbstractPattern) -> bool:
    _same_kind(p, q)
    return p.compatible(q)


def supremum(xs: Iterable, kind=None, group: GroupSpec | None = None, **kw) -> AbstractPattern:
    """Least upper bound of a locally finite pairwise compatible family.

    ``xs`` is a finite iterable of patterns, or a family object exposing
    ``supremum()`` (see ``instances.families``).  For an empty family the kind
    and group must be supplied and the zero element is returned."""
    if hasattr(xs, "supremum"):
        return xs.supremum()
    xs = list(xs)
    if not xs:
        if kind is None or group is None:
            raise ValueError("empty supremum needs kind and group")
        return zero_of(kind, group, **kw)
    k = type(xs[0])
    for x in xs[1:]:
        _same_kind(xs[0], x)
    if not k.glueable:
        raise PatternError(f"{k.kind} is not glueable")
    return k.sup(xs, xs[0].group, **xs[0]._zero_kwargs())


_KINDS: dict[str, type] = {}


def register_kind(cls):
    _KINDS[cls.kind] = cls
    return cls


def kind_class(kind) -> type:
    if isinstance(kind, type):
        return kind
    try:
        return _KINDS[kind]
    except KeyError:
        raise KindMismatch(f"unknown kind {kind!r}") from None


def zero_of(kind, group: GroupSpec, **kw) -> AbstractPattern:
    cls = kind_class(kind)
    if not cls.glueable:
        raise PatternError(f"{cls.kind} is not glueable")
    return cls.zero(group, **kw)


def bounded_component_radius(p: AbstractPattern):
    return p.component_radius()


def support(p: AbstractPattern) -> SupportHandle:
    return p.support()
