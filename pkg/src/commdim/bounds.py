"""Closed-form dimension bounds and the simple-algebra dimension table.

All values are exact rationals; nothing is rounded silently.  Floor/ceil
companions ride along in the serialized form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import StructureConstantAlgebra, nilpotency_class

FIELD_CLASSES = ("C", "R", "closed", "char0", "any")

# default constant for the semisimple associative bound over closed/finite fields
DEFAULT_C = Fraction(9, 2)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    side: str  # "lower" | "upper"
    value: Fraction
    field_class: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "side": self.side,
            "value": str(self.value),
            "floor": math.floor(self.value),
            "ceil": math.ceil(self.value),
            "field_class": self.field_class,
        }


@dataclass
class BoundReport:
    n: int
    field_class: str
    entries: list[BoundEntry]

    def get(self, name: str, side: str) -> Fraction:
        for e in self.entries:
            if e.name == name and e.side == side:
                return e.value
        raise KeyError(f"no entry {name}/{side}")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field_class": self.field_class,
            "entries": [e.to_json() for e in self.entries],
        }

    def table(self) -> str:
        lines = [f"{'function':<10} {'side':<6} {'value':>12} {'floor':>8} {'ceil':>8}"]
        for e in self.entries:
            lines.append(
                f"{e.name:<10} {e.side:<6} {str(e.value):>12} "
                f"{math.floor(e.value):>8} {math.ceil(e.value):>8}"
            )
        return "\n".join(lines)


def _generic_lower(n: int) -> Fraction:
    return Fraction(n * n + 4 * n - 5, 8)


def bound_table(n: int, field_class: str, c: Fraction | None = None) -> BoundReport:
    """All applicable two-sided bounds for the given field class at n.

    The optional constant c feeds the semisimple associative upper bound
    (n^2 + (2c+1) n) / 2 for the "closed" class; its default 9/2 is the
    value for algebraically closed and finite fields.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if field_class not in FIELD_CLASSES:
        raise ValueError(f"unknown field class {field_class!r}")
    if c is None:
        c = DEFAULT_C
    else:
        c = Fraction(c)

    low = _generic_lower(n)
    up_l_complex = Fraction(n * n + 17 * n, 2)
    up_a_closed = Fraction(n * n, 2) + Fraction((2 * c + 1) * n, 2)
    low_l_real = Fraction(2 * n * n + n)
    up_l_real = Fraction(4 * n * n + 18 * n)
    up_char0 = Fraction(3 * n * n + n, 2)
    low_a1 = Fraction(n * n + 2 * n, 8)
    class2_up = Fraction(n * n, 4) + n

    fc = field_class
    entries: list[BoundEntry] = []

    def add(name, side, value):
        entries.append(BoundEntry(name, side, value, fc))

    if fc == "C":
        add("l_C", "lower", low)
        add("l_C", "upper", up_l_complex)
        add("g_C", "lower", low)
        add("g_C", "upper", up_l_complex)
        add("a_C", "lower", low)
        add("a_C", "upper", Fraction(n * n, 2) + 5 * n)
    elif fc == "R":
        add("l_R", "lower", low_l_real)
        add("l_R", "upper", up_l_real)
        add("g_R", "lower", low_l_real)
        add("g_R", "upper", up_l_real)
        add("a_R", "lower", low)
        add("a_R", "upper", Fraction(n * n, 2) + 5 * n)
    elif fc == "closed":
        add("l_K", "lower", low)
        add("a_K", "lower", low)
        add("a_K", "upper", up_a_closed)
        add("a1_K", "lower", low_a1)
        add("a1_K", "upper", up_a_closed)
    elif fc == "char0":
        add("l_K", "lower", low)
        add("a_K", "lower", low)
        add("a_K", "upper", up_char0)
        add("a1_K", "lower", low_a1)
        add("a1_K", "upper", up_char0)
    else:  # any field
        add("l_K", "lower", low)
        add("a_K", "lower", low)
        add("a1_K", "lower", low_a1)
    add("class2", "lower", low)
    add("class2", "upper", class2_up)
    return BoundReport(n, fc, entries)


@dataclass(frozen=True)
class SimpleTypeEntry:
    """One row of the simple-algebra table: dimension and max abelian dimension."""

    type: str
    rank: int | None
    dim: int
    max_abelian: int

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "rank": self.rank,
            "dim": self.dim,
            "max_abelian": self.max_abelian,
        }


_EXCEPTIONAL = {
    "E6": (78, 16),
    "E7": (133, 27),
    "E8": (248, 36),
    "F4": (52, 9),
    "G2": (14, 3),
}
_CLASSICAL_MIN_RANK = {"A": 1, "B": 3, "C": 2, "D": 4}


def simple_lie_data(type_: str, rank: int | None = None) -> SimpleTypeEntry:
    """Exact dimension and maximal abelian subalgebra dimension per type."""
    if type_ in _EXCEPTIONAL:
        if rank is not None:
            raise ValueError(f"type {type_} takes no rank")
        dim, mab = _EXCEPTIONAL[type_]
        return SimpleTypeEntry(type_, None, dim, mab)
    if type_ not in _CLASSICAL_MIN_RANK:
        raise ValueError(f"unknown simple type {type_!r}")
    if rank is None:
        raise ValueError(f"type {type_} requires a rank")
    lo = _CLASSICAL_MIN_RANK[type_]
    if rank < lo:
        raise ValueError(f"type {type_} requires rank >= {lo}, got {rank}")
    l = rank
    if type_ == "A":
        dim, mab = l * l + 2 * l, (l + 1) ** 2 // 4
    elif type_ == "B":
        dim, mab = 2 * l * l + l, l * (l - 1) // 2 + 1
    elif type_ == "C":
        dim, mab = 2 * l * l + l, l * (l + 1) // 2
    else:  # D
        dim, mab = 2 * l * l - l, l * (l - 1) // 2
    return SimpleTypeEntry(type_, l, dim, mab)


def exceptional_entries() -> list[SimpleTypeEntry]:
    return [simple_lie_data(t) for t in ("E6", "E7", "E8", "F4", "G2")]


@dataclass
class SevenNVerdict:
    ok: bool
    per_entry: list[dict]
    total_dim: int
    total_abelian: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "per_entry": self.per_entry,
            "total_dim": self.total_dim,
            "total_abelian": self.total_abelian,
        }


def seven_n_check(entries: list[SimpleTypeEntry]) -> SevenNVerdict:
    """dim <= 7 * max_abelian per entry and for the direct sum."""
    per = []
    ok = True
    for e in entries:
        good = e.dim <= 7 * e.max_abelian
        ok = ok and good
        per.append({"type": e.type, "rank": e.rank, "dim": e.dim,
                    "bound": 7 * e.max_abelian, "ok": good})
    total_dim = sum(e.dim for e in entries)
    total_ab = sum(e.max_abelian for e in entries)
    ok = ok and total_dim <= 7 * total_ab
    return SevenNVerdict(ok, per, total_dim, total_ab)


STRUCTURES = ("nilpotent", "class2", "nilpotent-assoc")


@dataclass
class BoundVerdict:
    structure: str
    n: int
    dim: int
    bound: Fraction
    ok: bool

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "n": self.n,
            "dim": self.dim,
            "bound": str(self.bound),
            "ok": self.ok,
        }


def check_structural_bound(
    a: StructureConstantAlgebra, n: int, structure: str
) -> BoundVerdict:
    """Assert the structural inequality matching the algebra's shape.

    nilpotent (Lie) and nilpotent-assoc: dim <= n(n+1)/2; class2 (class at
    most 2): dim <= floor(n^2/4) + n, where n is the exact maximal abelian
    dimension found by search.
    """
    if structure not in STRUCTURES:
        raise ValueError(f"unknown structure {structure!r}")
    cls = nilpotency_class(a)
    if cls is None:
        raise ValueError(f"algebra is not nilpotent; structure {structure!r} does not apply")
    if structure == "nilpotent":
        if a.kind != "lie":
            raise ValueError("structure 'nilpotent' expects a Lie algebra")
        bound = Fraction(n * (n + 1), 2)
    elif structure == "nilpotent-assoc":
        if a.kind != "assoc":
            raise ValueError("structure 'nilpotent-assoc' expects an associative algebra")
        bound = Fraction(n * (n + 1), 2)
    else:
        if cls > 2:
            raise ValueError(f"algebra has class {cls}, not class <= 2")
        bound = Fraction(n * n // 4 + n)
    return BoundVerdict(structure, n, a.dim, bound, Fraction(a.dim) <= bound)
