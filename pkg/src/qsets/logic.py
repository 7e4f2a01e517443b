"""The projection lattice of Q^n as an orthomodular logic.

A :class:`Projection` is a subspace stored by its canonical RREF basis and
interned, so equal subspaces are the same object and ``is``/``==`` agree.
The lattice operations are available both as functions and as operators::

    p & q    meet          p | q    join
    ~p       ortho         p <= q   range inclusion
"""

from __future__ import annotations

import itertools
import random
import threading
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .linalg import Matrix

MAX_DIM = 8
MAX_COMMUTATOR_FAMILY = 12


class DimensionMismatch(ValueError):
    pass


class SizeCapExceeded(ValueError):
    pass


class Projection:
    """A closed subspace of Q^n, equivalently its orthogonal projection.

    Build instances through :meth:`LogicContext.span` (or :func:`span`);
    the constructor is private to the interning table.
    """

    __slots__ = ("dim", "basis", "_matrix", "__weakref__")

    def __init__(self, dim: int, basis: Matrix):
        self.dim = dim
        self.basis = basis
        self._matrix: Matrix | None = None

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_one(self) -> bool:
        return len(self.basis) == self.dim

    @property
    def matrix(self) -> Matrix:
        if self._matrix is None:
            self._matrix = linalg.projector(self.basis, self.dim)
        return self._matrix

    def sort_key(self) -> tuple:
        return (self.dim, self.rank, self.basis)

    def __and__(self, other: Projection) -> Projection:
        return meet(self, other)

    def __or__(self, other: Projection) -> Projection:
        return join(self, other)

    def __invert__(self) -> Projection:
        return ortho(self)

    def __le__(self, other: Projection) -> bool:
        return leq(self, other)

    def __ge__(self, other: Projection) -> bool:
        return leq(other, self)

    def __lt__(self, other: Projection) -> bool:
        return self is not other and leq(self, other)

    def __gt__(self, other: Projection) -> bool:
        return self is not other and leq(other, self)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Projection(0, dim={self.dim})"
        if self.is_one:
            return f"Projection(1, dim={self.dim})"
        rows = ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis)
        return f"Projection(span{{{rows}}})"

    def __reduce__(self):
        return (span, ([list(r) for r in self.basis], self.dim))


class LogicContext:
    """Interning table for the projections of one ambient dimension."""

    _contexts: dict[int, LogicContext] = {}
    _contexts_lock = threading.Lock()

    def __init__(self, dim: int):
        if not 0 < dim <= MAX_DIM:
            raise ValueError(f"ambient dimension must be in 1..{MAX_DIM}, got {dim}")
        self.dim = dim
        self._table: dict[Matrix, Projection] = {}
        self._lock = threading.Lock()
        self.zero = self._intern(())
        self.one = self._intern(linalg.identity(dim))

    @classmethod
    def of(cls, dim: int) -> LogicContext:
        ctx = cls._contexts.get(dim)
        if ctx is None:
            with cls._contexts_lock:
                ctx = cls._contexts.setdefault(dim, cls(dim))
        return ctx

    def _intern(self, basis: Matrix) -> Projection:
        p = self._table.get(basis)
        if p is None:
            with self._lock:
                p = self._table.setdefault(basis, Projection(self.dim, basis))
        return p

    def span(self, vectors: Iterable[Sequence]) -> Projection:
        vs = [linalg.as_vector(v) for v in vectors]
        for v in vs:
            if len(v) != self.dim:
                raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        return self._intern(linalg.row_space(vs))

    def __len__(self) -> int:
        return len(self._table)


def span(vectors: Iterable[Sequence], dim: int) -> Projection:
    return LogicContext.of(dim).span(vectors)


def zero(dim: int) -> Projection:
    return LogicContext.of(dim).zero


def one(dim: int) -> Projection:
    return LogicContext.of(dim).one


def _same_dim(*ps: Projection) -> int:
    dims = {p.dim for p in ps}
    if len(dims) != 1:
        raise DimensionMismatch(f"projections from dimensions {sorted(dims)}")
    return dims.pop()


# -- lattice primitives ------------------------------------------------------

@lru_cache(maxsize=None)
def ortho(p: Projection) -> Projection:
    ctx = LogicContext.of(p.dim)
    if p.is_zero:
        return ctx.one
    if p.is_one:
        return ctx.zero
    return ctx.span(linalg.orthogonal_complement(p.basis, p.dim))


@lru_cache(maxsize=None)
def _meet(p: Projection, q: Projection) -> Projection:
    if p is q or q.is_one:
        return p
    if p.is_one:
        return q
    if p.is_zero or q.is_zero:
        return LogicContext.of(p.dim).zero
    return LogicContext.of(p.dim).span(linalg.intersect_spans(p.basis, q.basis, p.dim))


def meet(p: Projection, q: Projection) -> Projection:
    _same_dim(p, q)
    # canonical argument order doubles cache hits
    if id(q) < id(p):
        p, q = q, p
    return _meet(p, q)


def join(p: Projection, q: Projection) -> Projection:
    return ortho(meet(ortho(p), ortho(q)))


@lru_cache(maxsize=None)
def _leq(p: Projection, q: Projection) -> bool:
    if p.is_zero or q.is_one or p is q:
        return True
    if p.rank > q.rank:
        return False
    return linalg.rank(q.basis + p.basis) == q.rank


def leq(p: Projection, q: Projection) -> bool:
    _same_dim(p, q)
    return _leq(p, q)


def meet_all(ps: Iterable[Projection], dim: int) -> Projection:
    acc = one(dim)
    for p in ps:
        acc = meet(acc, p)
        if acc.is_zero:
            break
    return acc


def join_all(ps: Iterable[Projection], dim: int) -> Projection:
    acc = zero(dim)
    for p in ps:
        acc = join(acc, p)
        if acc.is_one:
            break
    return acc


@lru_cache(maxsize=None)
def _commutes(p: Projection, q: Projection) -> bool:
    if p is q or p.is_zero or p.is_one or q.is_zero or q.is_one:
        return True
    a, b = p.matrix, q.matrix
    return linalg.matmul(a, b) == linalg.matmul(b, a)


def commutes(p: Projection, q: Projection) -> bool:
    """``[P, Q] = 0`` tested on the projection matrices."""
    _same_dim(p, q)
    if id(q) < id(p):
        p, q = q, p
    return _commutes(p, q)


def commutes_lattice(p: Projection, q: Projection) -> bool:
    """The lattice definition ``P = (P∧Q) ∨ (P∧Q⊥)``."""
    return join(meet(p, q), meet(p, ortho(q))) is p


# -- conditionals --------------------------------------------------------------

def sasaki_arrow(p: Projection, q: Projection) -> Projection:
    return join(ortho(p), meet(p, q))


def sasaki_star(p: Projection, q: Projection) -> Projection:
    return ortho(sasaki_arrow(p, ortho(q)))


def contrapositive_conditional(p: Projection, q: Projection) -> Projection:
    return join(ortho(join(p, q)), q)


def relevance_conditional(p: Projection, q: Projection) -> Projection:
    np_ = ortho(p)
    return join(join(meet(p, q), meet(np_, q)), meet(np_, ortho(q)))


def equivalence(p: Projection, q: Projection) -> Projection:
    return meet(sasaki_arrow(p, q), sasaki_arrow(q, p))


CONDITIONALS = {
    "sasaki": sasaki_arrow,
    "contrapositive": contrapositive_conditional,
    "relevance": relevance_conditional,
}


# -- commutators ----------------------------------------------------------------

def commutator_pair(p: Projection, q: Projection) -> Projection:
    np_, nq = ortho(p), ortho(q)
    return join_all([meet(p, q), meet(p, nq), meet(np_, q), meet(np_, nq)], _same_dim(p, q))


def _family(family: Iterable[Projection]) -> tuple[list[Projection], int | None]:
    items = sorted(set(family), key=Projection.sort_key)
    if not items:
        return items, None
    return items, _same_dim(*items)


def commutator_finite(family: Iterable[Projection], dim: int | None = None) -> Projection:
    """Join over all sign patterns θ of the meets ⋀ P^θ(P).

    Sign patterns are walked depth first; a branch is dropped as soon as its
    partial meet is already below the running join, since every completion
    of the branch lies below that partial meet.
    """
    items, d = _family(family)
    d = d or dim
    if d is None:
        raise ValueError("dimension required for an empty family")
    if len(items) > MAX_COMMUTATOR_FAMILY:
        raise SizeCapExceeded(
            f"commutator of {len(items)} projections exceeds cap {MAX_COMMUTATOR_FAMILY}")
    ctx = LogicContext.of(d)
    result = ctx.zero

    def walk(i: int, acc: Projection) -> None:
        nonlocal result
        if leq(acc, result):
            return
        if i == len(items):
            result = join(result, acc)
            return
        walk(i + 1, meet(acc, items[i]))
        walk(i + 1, meet(acc, ortho(items[i])))

    walk(0, ctx.one)
    return result


def _kernel_projection(blocks: Iterable[Matrix], dim: int) -> Projection:
    rows = [row for m in blocks for row in m]
    rows = list(linalg.row_space(rows))
    return span(linalg.kernel_basis(rows, dim), dim)


def commutator_kernel(family: Iterable[Projection]) -> Projection:
    """Projection onto ⋂ ker([P1, P2] P3) over ordered triples of the family."""
    items, d = _family(family)
    if d is None:
        raise ValueError("commutator_kernel needs a nonempty family")
    mats = [p.matrix for p in items]
    blocks = []
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            c = linalg.matsub(linalg.matmul(a, b), linalg.matmul(b, a))
            if linalg.is_zero(c):
                continue
            # [P2,P1] = -[P1,P2] has the same kernel after composition
            blocks.extend(linalg.matmul(c, m) for m in mats)
    return _kernel_projection(blocks, d)


def generated_algebra(family: Iterable[Projection], dim: int | None = None) -> list[Matrix]:
    """Basis of the unital *-algebra generated by the family.

    Iterates span closure under products (and transposes) until the
    dimension stops growing. In finite dimension this is the bicommutant.
    """
    items, d = _family(family)
    d = d or dim
    if d is None:
        raise ValueError("dimension required for an empty family")
    vecs = [linalg.flatten(linalg.identity(d))] + [linalg.flatten(p.matrix) for p in items]
    basis = linalg.row_space(vecs)
    while True:
        mats = [linalg.unflatten(v, d) for v in basis]
        new = list(basis)
        for a in mats:
            new.append(linalg.flatten(linalg.transpose(a)))
            for b in mats:
                new.append(linalg.flatten(linalg.matmul(a, b)))
        grown = linalg.row_space(new)
        if len(grown) == len(basis):
            return [linalg.unflatten(v, d) for v in basis]
        basis = grown


def commutator_algebra(family: Iterable[Projection]) -> Projection:
    """Projection onto ⋂ ker([A, B]) over a basis of the generated algebra."""
    items, d = _family(family)
    if d is None:
        raise ValueError("commutator_algebra needs a nonempty family")
    basis = generated_algebra(items, d)
    blocks = []
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            c = linalg.matsub(linalg.matmul(a, b), linalg.matmul(b, a))
            if not linalg.is_zero(c):
                blocks.append(c)
    return _kernel_projection(blocks, d)


def in_generated_logic(x: Projection, family: Iterable[Projection]) -> bool:
    items = list(family)
    algebra = generated_algebra(items, x.dim)
    basis = [linalg.flatten(m) for m in algebra]
    return linalg.span_contains(basis, linalg.flatten(x.matrix))


def commutant_basis(family: Iterable[Projection], dim: int | None = None) -> list[Matrix]:
    """A linear basis of {X : XP = PX for every P in the family}."""
    items, d = _family(family)
    d = d if d is not None else dim
    if d is None:
        raise ValueError("dimension needed for an empty family")
    n = d * d
    rows = []
    for p in items:
        m = p.matrix
        # (XP - PX)[i][j] = sum_k X[i][k] P[k][j] - P[i][k] X[k][j]
        for i in range(d):
            for j in range(d):
                row = [linalg.ZERO] * n
                for k in range(d):
                    row[i * d + k] += m[k][j]
                    row[k * d + j] -= m[i][k]
                rows.append(row)
    rows = [r for r in linalg.row_space(rows)]
    return [linalg.unflatten(v, d) for v in linalg.kernel_basis(rows, n)]


def _range_and_kernel(m: Matrix, d: int) -> list[Projection]:
    ctx = LogicContext.of(d)
    return [ctx.span(linalg.row_space(linalg.transpose(m))),
            ctx.span(linalg.kernel_basis(m, d))]


def commutant_sample(family: Iterable[Projection], seed: int = 0, *, max_size: int = 48,
                     max_subsets: int = 32) -> list[Projection]:
    """Some projections commuting with every member of the family.

    Candidates are range and kernel projections of self-adjoint elements
    of the commutant algebra, plus commutators of subfamilies that commute
    with the whole family (always including the commutator of the family
    itself). They are closed under meet, join and ortho, which keeps them
    inside the commutant. Every returned element is checked against the
    definition.
    """
    items, d = _family(family)
    if d is None:
        raise ValueError("commutant_sample needs a nonempty family")
    rng = random.Random(seed)
    if len(items) <= 5:
        subsets = [c for r in range(len(items) + 1) for c in itertools.combinations(items, r)]
    else:
        subsets = [tuple(items)]
        for _ in range(max_subsets):
            subsets.append(tuple(p for p in items if rng.random() < 0.5))
    ctx = LogicContext.of(d)
    found = {ctx.zero, ctx.one}
    for sub in subsets:
        c = commutator_finite(sub, d)
        if all(commutes(c, q) for q in items):
            found.add(c)
    basis = commutant_basis(items, d)
    selfadj = [linalg.matadd(x, linalg.transpose(x)) for x in basis]
    for _ in range(4):
        combo = linalg.zeros(d, d)
        for x in selfadj:
            combo = linalg.matadd(combo, linalg.matscale(x, rng.randint(-2, 2)))
        selfadj.append(combo)
    for x in selfadj:
        if len(found) >= max_size:
            break
        found.update(_range_and_kernel(x, d))
    frontier = list(found)
    while frontier and len(found) < max_size:
        fresh = []
        current = sorted(found, key=Projection.sort_key)
        for a in frontier:
            for r in [ortho(a)] + [op(a, b) for b in current for op in (meet, join)]:
                if r not in found and len(found) < max_size:
                    found.add(r)
                    fresh.append(r)
        frontier = fresh
    out = [p for p in sorted(found, key=Projection.sort_key)
           if all(commutes(p, q) for q in items)]
    if len(out) != len(found):
        raise AssertionError("commutant sample escaped the commutant")
    return out


def random_projection(rng: random.Random, dim: int, *, rank: int | None = None,
                      entries: Sequence[int] = (-2, -1, 0, 1, 2)) -> Projection:
    """A projection onto the span of random small-integer vectors."""
    if rank is None:
        rank = rng.randint(0, dim)
    vs = [[rng.choice(entries) for _ in range(dim)] for _ in range(rank)]
    return span(vs, dim)
