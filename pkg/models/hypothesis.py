"""Set-function hypotheses and finite hypothesis classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple

from models.errors import ModelViolationError
from models.label_set import LabelSet
from models.types import HypothesisKind

Rule = Callable[[int], LabelSet]


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A set function mapping input ids to label sets.

    Extensional hypotheses carry an explicit table (inputs missing from the table
    map to the empty set); intensional hypotheses carry a pure rule.

    Attributes:
        id: Identifier, unique within a class
        kind: 'extensional' or 'intensional'
        table: Input id -> LabelSet, for extensional hypotheses
        rule: Pure function input id -> LabelSet, for intensional hypotheses
    """
    id: str
    kind: HypothesisKind
    table: Optional[Mapping[int, LabelSet]] = None
    rule: Optional[Rule] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.kind == 'extensional':
            if self.table is None:
                raise ModelViolationError(f"Extensional hypothesis {self.id!r} needs a table")
            object.__setattr__(self, 'table', MappingProxyType(dict(self.table)))
        elif self.kind == 'intensional':
            if self.rule is None:
                raise ModelViolationError(f"Intensional hypothesis {self.id!r} needs a rule")
        else:
            raise ModelViolationError(f"Unknown hypothesis kind {self.kind!r}")

    @classmethod
    def from_table(cls, hypothesis_id: str, table: Mapping[int, LabelSet]) -> 'Hypothesis':
        return cls(id=hypothesis_id, kind='extensional', table=table)

    @classmethod
    def from_rule(cls, hypothesis_id: str, rule: Rule) -> 'Hypothesis':
        return cls(id=hypothesis_id, kind='intensional', rule=rule)

    def eval(self, x: int) -> LabelSet:
        if self.table is not None:
            return self.table.get(x, LabelSet.empty())
        return self.rule(x)  # type: ignore[misc]

    __call__ = eval

    def output_size(self, x: int) -> int:
        """n_g(x)."""
        return self.eval(x).size()

    def __repr__(self) -> str:
        return f"Hypothesis(id={self.id!r}, kind={self.kind!r})"


class HypothesisClass:
    """Ordered, finite, non-empty collection of hypotheses with unique ids.

    Iteration order is fixed at construction and decides every argmin/argmax tie
    (the first member wins).
    """

    def __init__(self, members: Sequence[Hypothesis]) -> None:
        if not members:
            raise ModelViolationError("A hypothesis class needs at least one member")
        self._members: Tuple[Hypothesis, ...] = tuple(members)
        self._index: Dict[str, int] = {}
        for position, member in enumerate(self._members):
            if member.id in self._index:
                raise ModelViolationError(f"Duplicate hypothesis id {member.id!r}")
            self._index[member.id] = position

    @property
    def members(self) -> Tuple[Hypothesis, ...]:
        return self._members

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(member.id for member in self._members)

    def __iter__(self) -> Iterator[Hypothesis]:
        return iter(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, hypothesis_id: object) -> bool:
        return hypothesis_id in self._index

    def __getitem__(self, hypothesis_id: str) -> Hypothesis:
        try:
            return self._members[self._index[hypothesis_id]]
        except KeyError:
            raise KeyError(f"No hypothesis {hypothesis_id!r} in class") from None

    def position(self, hypothesis_id: str) -> int:
        return self._index[hypothesis_id]

    def subset(self, hypothesis_ids: Sequence[str]) -> 'HypothesisClass':
        """New class with the given members, in the given order."""
        return HypothesisClass([self[h] for h in hypothesis_ids])

    def __repr__(self) -> str:
        return f"HypothesisClass({list(self.ids)})"
