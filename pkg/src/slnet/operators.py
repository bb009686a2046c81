"""Finite binary operations and the semilattice axioms.

Elements of the ground set are plain indices 0..M-1 and an operation is a
dense M x M table, so every check in this module can be exhaustive (and
therefore definitive). The command line caps M at 64, which keeps the
O(M^3) associativity scan instant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .errors import SchemaError

MAX_CLI_ELEMENTS = 64

BUILTIN_KINDS = ("and", "or", "min", "max")


class MalformedOperatorError(ValueError):
    """The table is structurally broken (wrong shape or entry out of range)."""


class NotSemilatticeError(ValueError):
    """An operation that must satisfy the semilattice axioms does not."""


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the exhaustive axiom scan.

    ``witnesses`` holds one counterexample tuple per failed axiom, keyed by
    axiom name; an axiom has a witness exactly when its flag is False.
    """

    commutative: bool
    associative: bool
    idempotent: bool
    witnesses: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return self.commutative and self.associative and self.idempotent

    def failed(self) -> tuple[str, ...]:
        return tuple(sorted(self.witnesses))


@dataclass(frozen=True)
class OperatorTable:
    """A total binary operation on {0, ..., size-1}."""

    size: int
    table: tuple[tuple[int, ...], ...]
    name: Optional[str] = None
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 1:
            raise MalformedOperatorError("operator needs at least one element")
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", rows)
        if len(rows) != self.size:
            raise MalformedOperatorError(
                f"expected {self.size} rows, got {len(rows)}")
        for x, row in enumerate(rows):
            if len(row) != self.size:
                raise MalformedOperatorError(
                    f"row {x} has {len(row)} entries, expected {self.size}")
            for y, v in enumerate(row):
                if not 0 <= v < self.size:
                    raise MalformedOperatorError(
                        f"entry ({x}, {y}) = {v} is outside [0, {self.size})")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise MalformedOperatorError(
                    f"expected {self.size} labels, got {len(labels)}")

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def axioms(self) -> AxiomReport:
        return validate_operator(self)

    @property
    def is_semilattice(self) -> bool:
        return self.axioms.all_hold

    def require_semilattice(self) -> None:
        report = self.axioms
        if not report.all_hold:
            label = self.name or "operator"
            raise NotSemilatticeError(
                f"{label} violates: {', '.join(report.failed())} "
                f"(witnesses {dict(report.witnesses)})")


def validate_operator(op: OperatorTable) -> AxiomReport:
    """Exhaustively check commutativity, associativity and idempotence.

    Witnesses are the first counterexamples in lexicographic index order,
    so reports are deterministic.
    """
    t = op.table
    m = op.size
    rng = range(m)
    comm = next(((x, y) for x in rng for y in rng if t[x][y] != t[y][x]), None)
    assoc = next(
        ((x, y, z) for x in rng for y in rng for z in rng
         if t[x][t[y][z]] != t[t[x][y]][z]),
        None)
    idem = next(((x,) for x in rng if t[x][x] != x), None)
    witnesses = {}
    if comm is not None:
        witnesses["commutative"] = comm
    if assoc is not None:
        witnesses["associative"] = assoc
    if idem is not None:
        witnesses["idempotent"] = idem
    return AxiomReport(
        commutative=comm is None,
        associative=assoc is None,
        idempotent=idem is None,
        witnesses=witnesses,
    )


def fold(op: OperatorTable, values: Sequence[int]) -> int:
    """Reduce a nonempty sequence right to left: v1 op (v2 op (... op vk)).

    For a genuine semilattice operation the result is independent of order
    and multiplicity; for anything else the nesting above is the contract.
    """
    vals = list(values)
    if not vals:
        raise ValueError("fold needs at least one value")
    for v in vals:
        if not 0 <= v < op.size:
            raise ValueError(f"value {v} outside [0, {op.size})")
    acc = vals[-1]
    for v in vals[-2::-1]:
        acc = op.table[v][acc]
    return acc


def find_neutral(op: OperatorTable) -> Optional[int]:
    """Element e with e op x == x for every x, or None if there is none.

    At most one such element can exist under commutativity, so scanning
    ascending and returning the first hit is canonical.
    """
    for e in range(op.size):
        if all(op.table[e][x] == x for x in range(op.size)):
            return e
    return None


def find_absorbent(op: OperatorTable) -> int:
    """Fold of the whole ground set, verified to absorb every element.

    The verification doubles as a semilattice detector: if some x op theta
    differs from theta the operation cannot be commutative, associative and
    idempotent all at once.
    """
    theta = fold(op, range(op.size))
    bad = next((x for x in range(op.size) if op.table[x][theta] != theta), None)
    if bad is not None:
        raise NotSemilatticeError(
            f"candidate absorbent {theta} is not absorbed by {bad}; "
            "the operation is not a semilattice operator")
    return theta


def extend_with_neutral(op: OperatorTable) -> OperatorTable:
    """Adjoin a fresh element (index size) acting neutrally on everything."""
    m = op.size
    rows = [tuple(row) + (x,) for x, row in enumerate(op.table)]
    rows.append(tuple(range(m)) + (m,))
    name = f"{op.name}+neutral" if op.name else None
    return OperatorTable(m + 1, tuple(rows), name=name)


def semilattice_to_lattice(op: OperatorTable) -> tuple[OperatorTable, OperatorTable]:
    """Meet/join pair on size+1 elements completing the operation to a lattice.

    meet is the neutral extension of ``op``; the join of x and y is the meet
    of their common upper bounds {z : z meet x == x and z meet y == y}, a set
    that always contains the new top element. Both absorption laws are
    verified exhaustively before returning.
    """
    op.require_semilattice()
    meet = extend_with_neutral(op)
    k = meet.size
    jrows = []
    for x in range(k):
        row = []
        for y in range(k):
            upper = [z for z in range(k)
                     if meet.table[z][x] == x and meet.table[z][y] == y]
            row.append(fold(meet, upper))
        jrows.append(tuple(row))
    name = f"{op.name}+join" if op.name else None
    join = OperatorTable(k, tuple(jrows), name=name)
    for x in range(k):
        for y in range(k):
            if meet.table[x][join.table[x][y]] != x:
                raise RuntimeError(
                    f"absorption law x meet (x join y) failed at ({x}, {y})")
            if join.table[x][meet.table[x][y]] != x:
                raise RuntimeError(
                    f"absorption law x join (x meet y) failed at ({x}, {y})")
    return meet, join


def and_operator() -> OperatorTable:
    return OperatorTable(2, ((0, 0), (0, 1)), name="AND")


def or_operator() -> OperatorTable:
    return OperatorTable(2, ((0, 1), (1, 1)), name="OR")


def min_operator(size: int) -> OperatorTable:
    rows = tuple(tuple(min(x, y) for y in range(size)) for x in range(size))
    return OperatorTable(size, rows, name=f"MIN{size}")


def max_operator(size: int) -> OperatorTable:
    rows = tuple(tuple(max(x, y) for y in range(size)) for x in range(size))
    return OperatorTable(size, rows, name=f"MAX{size}")


def builtin_operator(kind: str, size: int = 2) -> OperatorTable:
    if kind == "and" or kind == "or":
        if size != 2:
            raise SchemaError(f"kind {kind!r} is defined on 2 elements, not {size}")
        return and_operator() if kind == "and" else or_operator()
    if kind == "min":
        return min_operator(size)
    if kind == "max":
        return max_operator(size)
    raise SchemaError(f"unknown operator kind {kind!r}")


def operator_from_json(obj) -> OperatorTable:
    """Parse ``{"M": int, "kind": ..., "table": ...?, "labels": ...?}``.

    ``table`` is required for kind "table" and forbidden otherwise.
    """
    if not isinstance(obj, dict):
        raise SchemaError("operator must be a JSON object")
    unknown = set(obj) - {"M", "kind", "table", "labels"}
    if unknown:
        raise SchemaError(f"unknown operator keys: {sorted(unknown)}")
    try:
        m = int(obj["M"])
    except KeyError:
        raise SchemaError("operator.M is required") from None
    except (TypeError, ValueError):
        raise SchemaError("operator.M must be an integer") from None
    if m < 1:
        raise SchemaError("operator.M must be positive")
    if m > MAX_CLI_ELEMENTS:
        raise SchemaError(f"operator.M is capped at {MAX_CLI_ELEMENTS}")
    kind = obj.get("kind")
    if kind not in BUILTIN_KINDS + ("table",):
        raise SchemaError(f"operator.kind must be one of "
                          f"{BUILTIN_KINDS + ('table',)}, got {kind!r}")
    labels = obj.get("labels")
    if labels is not None:
        if (not isinstance(labels, list)
                or not all(isinstance(s, str) for s in labels)):
            raise SchemaError("operator.labels must be a list of strings")
        if len(labels) != m:
            raise SchemaError(f"expected {m} labels, got {len(labels)}")
        labels = tuple(labels)

    if kind == "table":
        if "table" not in obj:
            raise SchemaError("operator.table is required for kind 'table'")
        raw = obj["table"]
        if (not isinstance(raw, list)
                or not all(isinstance(row, list) for row in raw)
                or not all(isinstance(v, int) for row in raw for v in row)):
            raise SchemaError("operator.table must be a list of lists of integers")
        try:
            return OperatorTable(m, tuple(tuple(row) for row in raw),
                                 name="table", labels=labels)
        except MalformedOperatorError as exc:
            raise SchemaError(f"bad operator table: {exc}") from None
    if "table" in obj:
        raise SchemaError(f"operator.table is forbidden for kind {kind!r}")
    op = builtin_operator(kind, m)
    if labels is not None:
        op = OperatorTable(op.size, op.table, name=op.name, labels=labels)
    return op
