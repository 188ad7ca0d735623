"""Ordered word-pair features over generalized token streams.

The feature of a stream is the set of keys ``"a-b"`` for every token pair at
positions i < j, duplicates collapsed.  Streams are capped at
``MAX_PAIR_TOKENS`` tokens to bound the quadratic pair count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

PAIR_SEPARATOR = "-"
MAX_PAIR_TOKENS = 120


class FrozenIndexError(Exception):
    pass


def iter_pair_keys(tokens: Sequence[str]) -> Iterator[str]:
    """Pair keys in positional order (i ascending, then j), duplicates kept."""
    capped = list(tokens)[:MAX_PAIR_TOKENS]
    for i, left in enumerate(capped):
        prefix = left + PAIR_SEPARATOR
        for j in range(i + 1, len(capped)):
            yield prefix + capped[j]


def ordered_pairs(tokens: Sequence[str]) -> set[str]:
    return set(iter_pair_keys(tokens))


class FeatureIndex:
    """Dense pair-key -> id mapping; ids are assigned in first-seen order."""

    def __init__(self) -> None:
        self._pair_to_id: dict[str, int] = {}
        self.frozen = False

    def __len__(self) -> int:
        return len(self._pair_to_id)

    def __contains__(self, key: str) -> bool:
        return key in self._pair_to_id

    def id_of(self, key: str) -> int | None:
        return self._pair_to_id.get(key)

    def add(self, key: str) -> int:
        existing = self._pair_to_id.get(key)
        if existing is not None:
            return existing
        if self.frozen:
            raise FrozenIndexError("cannot add keys to a frozen index")
        fresh = len(self._pair_to_id)
        self._pair_to_id[key] = fresh
        return fresh

    def freeze(self) -> "FeatureIndex":
        self.frozen = True
        return self

    def keys_in_order(self) -> list[str]:
        # insertion order == id order by construction
        return list(self._pair_to_id)

    @classmethod
    def from_keys(cls, keys: Iterable[str], frozen: bool = True) -> "FeatureIndex":
        index = cls()
        for key in keys:
            index.add(key)
        if frozen:
            index.freeze()
        return index


@dataclass(frozen=True)
class FeatureVector:
    active_ids: tuple[int, ...]
    dimension: int


def vectorize(pairs: Iterable[str], index: FeatureIndex) -> FeatureVector:
    """Binary vector of the given pair keys against ``index``.

    A frozen index silently drops unseen keys; an unfrozen one grows.  Plain
    set inputs are sorted first so id assignment never depends on set
    iteration order.
    """
    keys = sorted(pairs) if isinstance(pairs, (set, frozenset)) else pairs
    active: set[int] = set()
    for key in keys:
        feature_id = index.id_of(key)
        if feature_id is None:
            if index.frozen:
                continue
            feature_id = index.add(key)
        active.add(feature_id)
    return FeatureVector(active_ids=tuple(sorted(active)), dimension=len(index))


def build_index(corpus: Iterable[Sequence[str]]) -> FeatureIndex:
    """Frozen index over the union of pair keys of all streams, ids in
    first-seen order."""
    index = FeatureIndex()
    for stream in corpus:
        for key in iter_pair_keys(stream):
            index.add(key)
    return index.freeze()


def stream_vector(tokens: Sequence[str], index: FeatureIndex) -> FeatureVector:
    """Vectorize a token stream directly (pairing + lookup in one step)."""
    return vectorize(iter_pair_keys(tokens), index)
