"""Quantum sets: finite-rank elements of the Q-valued universe.

A :class:`QSet` maps lower-rank quantum sets to projections. Nodes are
hash-consed, so structurally identical sets are one object and the
evaluator can memoize on identity.
"""

from __future__ import annotations

import itertools
import random
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from . import linalg, logic
from .logic import LogicContext, Projection

MAX_GEN_DIM = 8
MAX_GEN_RANK = 3
MAX_GEN_BRANCH = 3

HFSet = frozenset


class QSet:
    """An interned node ``{<key, value>, ...}`` of V^(Q).

    Use :func:`make_qset`; direct construction bypasses interning.
    """

    __slots__ = ("dim", "entries", "rank", "id", "_index", "_support", "__weakref__")

    def __init__(self, dim: int, entries: tuple[tuple[QSet, Projection], ...], node_id: int):
        self.dim = dim
        self.entries = entries
        self.rank = 1 + max((k.rank for k, _ in entries), default=-1)
        self.id = node_id
        self._index = dict(entries)
        self._support: frozenset[Projection] | None = None

    @property
    def dom(self) -> tuple[QSet, ...]:
        return tuple(k for k, _ in self.entries)

    def __getitem__(self, key: QSet) -> Projection:
        return self._index[key]

    def __contains__(self, key: QSet) -> bool:
        return key in self._index

    def __iter__(self) -> Iterator[QSet]:
        return iter(self.dom)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"QSet#{self.id}(rank={self.rank}, entries={len(self.entries)})"


_table: dict[tuple, QSet] = {}
_table_lock = threading.Lock()
_ids = itertools.count()


def make_qset(entries: Iterable[tuple[QSet, Projection]], dim: int | None = None) -> QSet:
    """Intern the quantum set with the given (key, value) pairs.

    ``dim`` is required only for the empty set. Zero-valued entries are kept.
    """
    pairs = list(entries)
    dims = {dim} if dim is not None else set()
    seen: set[int] = set()
    for key, value in pairs:
        if not isinstance(key, QSet) or not isinstance(value, Projection):
            raise TypeError("entries must be (QSet, Projection) pairs")
        if key.id in seen:
            raise ValueError(f"duplicate key {key!r}")
        seen.add(key.id)
        dims.update((key.dim, value.dim))
    if not dims:
        raise ValueError("dimension required for the empty quantum set")
    if len(dims) > 1:
        raise logic.DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    d = dims.pop()
    pairs.sort(key=lambda kv: kv[0].id)
    frozen = tuple(pairs)
    sig = (d, tuple((k.id, id(v)) for k, v in frozen))
    node = _table.get(sig)
    if node is None:
        with _table_lock:
            node = _table.get(sig)
            if node is None:
                node = QSet(d, frozen, next(_ids))
                _table[sig] = node
    return node


def empty(dim: int) -> QSet:
    return make_qset((), dim)


# -- hereditarily finite sets --------------------------------------------------

def ordinal(n: int) -> HFSet:
    """The von Neumann ordinal n as a hereditarily finite set."""
    out: HFSet = frozenset()
    for _ in range(n):
        out = out | {out}
    return out


def hf_rank(v: HFSet) -> int:
    return 1 + max((hf_rank(x) for x in v), default=-1)


def hf_universe(rank_cap: int) -> list[HFSet]:
    """All HF sets of rank < ``rank_cap`` (that is, V_rank_cap)."""
    level: list[HFSet] = []
    for _ in range(rank_cap):
        level = [frozenset(c) for r in range(len(level) + 1)
                 for c in itertools.combinations(level, r)]
    return sorted(level, key=lambda s: (hf_rank(s), len(s), hf_repr(s)))


def hf_repr(v: HFSet) -> str:
    return "{" + ",".join(sorted(hf_repr(x) for x in v)) + "}"


@lru_cache(maxsize=None)
def check_embed(v: HFSet, dim: int) -> QSet:
    """v̌ = {ǔ | u ∈ v} × {1}."""
    one = logic.one(dim)
    return make_qset(((check_embed(x, dim), one) for x in v), dim)


def check_ordinal(n: int, dim: int) -> QSet:
    return check_embed(ordinal(n), dim)


# -- support, commutator, restriction -----------------------------------------

def support(u: QSet) -> frozenset[Projection]:
    """L(u): every value appearing hereditarily in u, plus 0."""
    if u._support is None:
        acc = {logic.zero(u.dim)}
        for key, value in u.entries:
            acc.add(value)
            acc |= support(key)
        u._support = frozenset(acc)
    return u._support


def support_many(us: Iterable[QSet]) -> frozenset[Projection]:
    acc: set[Projection] = set()
    for u in us:
        acc |= support(u)
    return frozenset(acc)


def qset_commutator(us: Iterable[QSet]) -> Projection:
    """The commutator of the joint support of the given quantum sets."""
    us = list(us)
    if not us:
        raise ValueError("qset_commutator needs at least one quantum set")
    return logic.commutator_finite(support_many(us), us[0].dim)


@lru_cache(maxsize=None)
def restrict(u: QSet, p: Projection) -> QSet:
    """u|_p = {<x|_p, u(x) ∧ p> | x ∈ dom(u)} ∪ {<u, 0>}."""
    if u.dim != p.dim:
        raise logic.DimensionMismatch(f"quantum set in dimension {u.dim}, projection in {p.dim}")
    out: dict[QSet, Projection] = {}
    for key, value in u.entries:
        rk = restrict(key, p)
        v = logic.meet(value, p)
        # distinct keys can restrict to the same node only in degenerate
        # cases; join keeps u|_p a function
        out[rk] = logic.join(out[rk], v) if rk in out else v
    zero = logic.zero(u.dim)
    out[u] = logic.join(out[u], zero) if u in out else zero
    return make_qset(out.items(), u.dim)


# -- random generation ---------------------------------------------------------

STYLES = ("generic", "block", "boolean")


def _orthogonal_basis(rng: random.Random, dim: int) -> list[tuple]:
    """A random rational orthogonal basis (unnormalized Gram-Schmidt)."""
    while True:
        raw = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
        if linalg.rank(raw) == dim:
            break
    basis: list[tuple] = []
    for v in raw:
        w = list(v)
        for b in basis:
            c = linalg.dot(v, b) / linalg.dot(b, b)
            w = [x - c * y for x, y in zip(w, b)]
        basis.append(tuple(w))
    return basis


def projection_pool(rng: random.Random, dim: int, size: int, style: str) -> list[Projection]:
    """Random projections for one universe.

    ``generic``: spans of random small-integer vectors.
    ``boolean``: spans of subsets of one orthogonal basis (pairwise commuting).
    ``block``: coordinate subspaces on a leading block direct-summed with
    random subspaces of the trailing block, so the family commutes on the
    leading block and (usually) not on the trailing one.
    """
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    pool = []
    if style == "generic":
        for _ in range(size):
            pool.append(logic.random_projection(rng, dim, rank=rng.randint(1, max(1, dim - 1))))
    elif style == "boolean":
        basis = _orthogonal_basis(rng, dim)
        for _ in range(size):
            pool.append(logic.span([b for b in basis if rng.random() < 0.5], dim))
    else:
        split = rng.randint(1, dim - 1) if dim > 1 else 1
        tail = dim - split
        for _ in range(size):
            vs = []
            for i in range(split):
                if rng.random() < 0.5:
                    vs.append([1 if j == i else 0 for j in range(dim)])
            for _ in range(rng.randint(0, tail)):
                vs.append([0] * split + [rng.randint(-2, 2) for _ in range(tail)])
            pool.append(logic.span(vs, dim))
    return pool


def universe_generate(seed, dim: int, max_rank: int, max_branch: int, *, count: int = 3,
                      style: str = "generic", pool_size: int = 3,
                      zero_weight: float = 0.1) -> list[QSet]:
    """Deterministic pseudo-random quantum sets of rank at most ``max_rank``.

    Values are drawn from a small projection pool plus 0 and 1 so that joint
    supports stay within the commutator size cap.
    """
    if not 1 <= dim <= MAX_GEN_DIM:
        raise ValueError(f"dim must be in 1..{MAX_GEN_DIM}")
    if not 0 <= max_rank <= MAX_GEN_RANK:
        raise ValueError(f"max_rank must be in 0..{MAX_GEN_RANK}")
    if not 0 <= max_branch <= MAX_GEN_BRANCH:
        raise ValueError(f"max_branch must be in 0..{MAX_GEN_BRANCH}")
    rng = random.Random(seed)
    pool = projection_pool(rng, dim, pool_size, style)
    values = pool + [logic.one(dim)]
    ctx = LogicContext.of(dim)

    def pick_value() -> Projection:
        return ctx.zero if rng.random() < zero_weight else rng.choice(values)

    levels: list[list[QSet]] = [[empty(dim)]]
    for r in range(1, max_rank + 1 if max_branch else 1):
        below = list(dict.fromkeys(x for lv in levels for x in lv))
        layer = []
        for _ in range(max(2, count)):
            n = rng.randint(1, max(1, max_branch))
            keys = {rng.choice(levels[r - 1])}
            while len(keys) < n and len(keys) < len(below):
                keys.add(rng.choice(below))
            layer.append(make_qset([(k, pick_value()) for k in sorted(keys, key=lambda q: q.id)]))
        levels.append(layer)
    everything = [x for lv in levels for x in lv]
    return [rng.choice(everything) if rng.random() < 0.3 else rng.choice(levels[-1])
            for _ in range(count)]
