# File: blackwhite/oracle.py
"""Reference model and randomized equivalence runs for the black-white array."""
from __future__ import annotations

import enum
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from sortedcontainers import SortedList

from .core import BlackWhiteArray, BlackWhiteArrayError, Bound, Extreme, GrowthPolicy

logger = logging.getLogger(__name__)


class OpKind(str, enum.Enum):
    INSERT = 'insert'
    SEARCH = 'search'
    DELETE = 'delete'
    EXTRACT_MIN = 'extract_min'
    EXTRACT_MAX = 'extract_max'
    BOUND = 'bound'
    INTERVAL = 'interval'


MUTATING_OPS = frozenset({OpKind.INSERT, OpKind.DELETE, OpKind.EXTRACT_MIN, OpKind.EXTRACT_MAX})

DEFAULT_MIX: Dict[OpKind, float] = {
    OpKind.INSERT: 50,
    OpKind.SEARCH: 25,
    OpKind.DELETE: 25,
}


@dataclass(frozen=True)
class OpRecord:
    kind: OpKind
    value: Any = None
    high: Any = None
    side: Optional[Bound] = None

    def __post_init__(self):
        if self.kind is OpKind.INTERVAL and self.high < self.value:
            raise ValueError(f"interval record with lo {self.value!r} > hi {self.high!r}")

    def __str__(self):
        if self.kind is OpKind.INTERVAL:
            return f"interval {self.value} {self.high}"
        if self.kind is OpKind.BOUND:
            return f"bound {self.value} {self.side.value}"
        if self.value is None:
            return self.kind.value
        return f"{self.kind.value} {self.value}"


class ReferenceModel:
    """Plain sorted multiset giving the answers a correct structure must give."""

    def __init__(self):
        self.items = SortedList()

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def apply(self, op: OpRecord) -> Any:
        items = self.items
        if op.kind is OpKind.INSERT:
            items.add(op.value)
            return None
        if op.kind is OpKind.SEARCH:
            return op.value in items
        if op.kind is OpKind.DELETE:
            if op.value in items:
                items.remove(op.value)
                return True
            return False
        if op.kind is OpKind.EXTRACT_MIN:
            return items.pop(0) if items else None
        if op.kind is OpKind.EXTRACT_MAX:
            return items.pop() if items else None
        if op.kind is OpKind.BOUND:
            if op.side is Bound.LOWER:
                i = items.bisect_right(op.value)
                return items[i] if i < len(items) else None
            i = items.bisect_left(op.value)
            return items[i - 1] if i else None
        if op.kind is OpKind.INTERVAL:
            return list(items.irange(op.value, op.high))
        raise ValueError(f"unknown operation {op.kind!r}")


def apply_op(bwa: BlackWhiteArray, op: OpRecord) -> Any:
    """Run ``op`` on ``bwa``, reporting what the reference model reports.

    Search and delete are compared on hit or miss only; white-array indices
    have no counterpart in the model.
    """
    if op.kind is OpKind.INSERT:
        bwa.insert(op.value)
        return None
    if op.kind is OpKind.SEARCH:
        return bwa.search(op.value) is not None
    if op.kind is OpKind.DELETE:
        return bwa.delete(op.value) is not None
    if op.kind is OpKind.EXTRACT_MIN:
        return bwa.extract(Extreme.MIN)
    if op.kind is OpKind.EXTRACT_MAX:
        return bwa.extract(Extreme.MAX)
    if op.kind is OpKind.BOUND:
        return bwa.bound(op.value, op.side)
    if op.kind is OpKind.INTERVAL:
        return bwa.interval(op.value, op.high)
    raise ValueError(f"unknown operation {op.kind!r}")


def _normalize_mix(mix: Mapping[Any, float]) -> Dict[OpKind, float]:
    try:
        weights = {OpKind(kind): float(weight) for kind, weight in mix.items()}
    except ValueError as exc:
        raise ValueError(f"invalid operation mix {dict(mix)!r}: {exc}") from exc
    if any(weight < 0 for weight in weights.values()):
        raise ValueError(f"operation weights must be non-negative, got {dict(mix)!r}")
    if not any(weights.values()):
        raise ValueError("at least one operation weight must be positive")
    return weights


def generate_ops(seed: int, n: int, mix: Mapping[Any, float] = DEFAULT_MIX,
                 hit_ratio: float = 0.5, value_bits: int = 30) -> List[OpRecord]:
    """Deterministic random operation sequence.

    Inserted values are even. A search, delete or bound operand is one of the
    values the sequence currently holds with probability ``hit_ratio`` and a
    fresh odd value otherwise, so a miss is a guaranteed miss.
    """
    if not 0.0 <= hit_ratio <= 1.0:
        raise ValueError(f"hit_ratio must lie in [0, 1], got {hit_ratio}")
    if n < 0:
        raise ValueError(f"operation count must be non-negative, got {n}")
    weights = _normalize_mix(mix)
    kinds = list(weights)

    rng = random.Random(seed)
    live = SortedList()
    span = 1 << value_bits

    def operand():
        if live and rng.random() < hit_ratio:
            return live[rng.randrange(len(live))]
        return rng.randrange(span) * 2 + 1

    ops = []
    for kind in rng.choices(kinds, [weights[k] for k in kinds], k=n):
        if kind is OpKind.INSERT:
            value = rng.randrange(span) * 2
            live.add(value)
            ops.append(OpRecord(kind, value))
        elif kind in (OpKind.SEARCH, OpKind.DELETE):
            value = operand()
            if kind is OpKind.DELETE and value in live:
                live.remove(value)
            ops.append(OpRecord(kind, value))
        elif kind is OpKind.EXTRACT_MIN:
            if live:
                live.pop(0)
            ops.append(OpRecord(kind))
        elif kind is OpKind.EXTRACT_MAX:
            if live:
                live.pop()
            ops.append(OpRecord(kind))
        elif kind is OpKind.BOUND:
            ops.append(OpRecord(kind, operand(), side=rng.choice((Bound.LOWER, Bound.UPPER))))
        else:
            lo, hi = sorted((operand(), operand()))
            ops.append(OpRecord(kind, lo, hi))
    return ops


@dataclass(frozen=True)
class Divergence:
    step: int
    op: Optional[OpRecord]
    expected: Any
    actual: Any

    def __str__(self):
        return (f"divergence at step {self.step} ({self.op or 'final drain'}): "
                f"expected {self.expected!r}, got {self.actual!r}")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    steps: int
    divergence: Optional[Divergence] = None
    violations: List[str] = field(default_factory=list)


def _content_mismatch(bwa: BlackWhiteArray, model: ReferenceModel) -> Optional[Tuple[str, str]]:
    """Describe how the stored multiset differs from the model's, or None if it doesn't."""
    held = list(bwa.iter_sorted())
    if held == list(model.items):
        return None
    held_counts, model_counts = Counter(held), Counter(model.items)
    missing = sorted((model_counts - held_counts).elements())
    extra = sorted((held_counts - model_counts).elements())
    return f"contents also holding {missing}", f"contents also holding {extra}"


def run_equivalence(seed: int, n: int, mix: Mapping[Any, float] = DEFAULT_MIX,
                    hit_ratio: float = 0.5, cap_exp: int = 16, *,
                    policy: GrowthPolicy = GrowthPolicy.GROW,
                    factory: Optional[Callable[..., BlackWhiteArray]] = None,
                    check_every: int = 1) -> Verdict:
    """Replay a generated sequence on a black-white array and the reference model.

    Every result and length is compared. On every ``check_every``-th step
    ``validate()`` runs, and after an insert, delete or extract the stored
    multiset is compared with the model's too. The first mismatch or
    invariant violation is returned as the divergence.
    """
    ops = generate_ops(seed, n, mix, hit_ratio)
    bwa = (factory or BlackWhiteArray)(cap_exp, policy)
    model = ReferenceModel()

    for step, op in enumerate(ops):
        expected = model.apply(op)
        try:
            actual = apply_op(bwa, op)
        except BlackWhiteArrayError as exc:
            actual = exc
        if actual != expected:
            return Verdict(False, step + 1, Divergence(step, op, expected, actual))
        if len(bwa) != len(model):
            return Verdict(False, step + 1, Divergence(step, op, f"len {len(model)}", f"len {len(bwa)}"))
        if check_every and step % check_every == 0:
            violations = bwa.validate()
            if violations:
                return Verdict(False, step + 1, Divergence(step, op, [], violations), violations)
            if op.kind in MUTATING_OPS:
                mismatch = _content_mismatch(bwa, model)
                if mismatch:
                    return Verdict(False, step + 1, Divergence(step, op, *mismatch))

    drained = list(bwa.iter_sorted())
    if drained != list(model):
        return Verdict(False, len(ops), Divergence(len(ops), None, list(model), drained))
    logger.info("equivalence run seed=%s n=%d ok", seed, n)
    return Verdict(True, len(ops))
