"""Finite monoids, their finite acts, equivariant maps, and congruences.

Everything is a dense table of 0-based indices: a monoid is its
multiplication table, an act is its action table, a map is its value
array.  Values are frozen dataclasses, hashable and safe to share.

Shape problems (wrong table dimensions, out-of-range indices) raise
`StructureError` at construction time; algebraic laws are checked by
`validate`, which returns a report of violations with concrete
witnesses instead of raising, so that broken candidate structures can
still be built and inspected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

Side = Literal["right", "left"]

CANONICAL_SIZE_LIMIT = 8


class StructureError(ValueError):
    """Table shapes or index ranges are inconsistent."""


_EMPTY_ACTS_ALLOWED = False


def set_empty_acts_allowed(value: bool) -> None:
    """Session policy switch: permit acts with an empty carrier.

    Off by default; when off, constructing a 0-element act raises and
    `pullback` reports nonexistence for empty fibers.
    """
    global _EMPTY_ACTS_ALLOWED
    _EMPTY_ACTS_ALLOWED = bool(value)


def empty_acts_allowed() -> bool:
    return _EMPTY_ACTS_ALLOWED


def _as_table(rows, what: str) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(tuple(int(x) for x in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"{what}: not a table of integers") from exc


@dataclass(frozen=True)
class FiniteMonoid:
    """A finite monoid given by its multiplication table.

    `mul[a][b]` is the product a*b.  `zero` optionally names a
    two-sided zero element.
    """

    size: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    zero: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "mul", _as_table(self.mul, "mul"))
        if self.size < 1:
            raise StructureError("monoid must have at least one element")
        if len(self.mul) != self.size:
            raise StructureError(f"mul: expected {self.size} rows, got {len(self.mul)}")
        for i, row in enumerate(self.mul):
            if len(row) != self.size:
                raise StructureError(f"mul[{i}]: expected {self.size} entries")
            for j, v in enumerate(row):
                if not 0 <= v < self.size:
                    raise StructureError(f"mul[{i}][{j}]={v} out of range")
        if not 0 <= self.identity < self.size:
            raise StructureError(f"identity={self.identity} out of range")
        if self.zero is not None and not 0 <= self.zero < self.size:
            raise StructureError(f"zero={self.zero} out of range")

    @property
    def elements(self) -> range:
        return range(self.size)

    def left_zeros(self) -> tuple[int, ...]:
        """Elements z with z*s = z for every s."""
        return tuple(
            z for z in self.elements if all(self.mul[z][s] == z for s in self.elements)
        )

    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in self.elements if self.mul[e][e] == e)


@dataclass(frozen=True)
class Act:
    """A finite right or left act over a finite monoid.

    Right acts store `action[a][s] = a*s`; left acts store
    `action[s][x] = s*x`.  The `centred` flag records the intent that
    the act has exactly one fixed point (checked by `validate`).
    """

    monoid: FiniteMonoid
    side: Side
    size: int
    action: tuple[tuple[int, ...], ...]
    centred: bool = False

    def __post_init__(self):
        object.__setattr__(self, "action", _as_table(self.action, "action"))
        if self.side not in ("right", "left"):
            raise StructureError(f"side must be 'right' or 'left', got {self.side!r}")
        if self.size < 0:
            raise StructureError("negative carrier size")
        if self.size == 0 and not empty_acts_allowed():
            raise StructureError("empty act rejected by current emptiness policy")
        m = self.monoid.size
        rows, cols = (self.size, m) if self.side == "right" else (m, self.size)
        if len(self.action) != rows:
            raise StructureError(f"action: expected {rows} rows, got {len(self.action)}")
        for i, row in enumerate(self.action):
            if len(row) != cols:
                raise StructureError(f"action[{i}]: expected {cols} entries")
            for j, v in enumerate(row):
                if not 0 <= v < self.size:
                    raise StructureError(f"action[{i}][{j}]={v} out of range")

    @property
    def elements(self) -> range:
        return range(self.size)

    def act(self, x: int, s: int) -> int:
        """Apply monoid element s to carrier element x (side-aware)."""
        if self.side == "right":
            return self.action[x][s]
        return self.action[s][x]


@dataclass(frozen=True)
class ActMap:
    """An equivariant map between two acts over the same monoid and side."""

    source: Act
    target: Act
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.source.monoid != self.target.monoid:
            raise StructureError("map endpoints live over different monoids")
        if self.source.side != self.target.side:
            raise StructureError("map endpoints have different sides")
        if len(self.values) != self.source.size:
            raise StructureError(
                f"values: expected {self.source.size} entries, got {len(self.values)}"
            )
        for i, v in enumerate(self.values):
            if not 0 <= v < self.target.size:
                raise StructureError(f"values[{i}]={v} out of range")

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.target.size

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))


def identity_map(act: Act) -> ActMap:
    return ActMap(act, act, tuple(act.elements))


def compose(outer: ActMap, inner: ActMap) -> ActMap:
    """outer after inner."""
    if inner.target != outer.source:
        raise StructureError("composition mismatch: inner.target != outer.source")
    return ActMap(inner.source, outer.target, tuple(outer.values[v] for v in inner.values))


@dataclass(frozen=True)
class Congruence:
    """An action-compatible partition of an act's carrier.

    Stored as `reps[i]` = least element of i's block; normalisation is
    a structural requirement, compatibility with the action is a law
    checked by `validate`.
    """

    act: Act
    reps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "reps", tuple(int(r) for r in self.reps))
        if len(self.reps) != self.act.size:
            raise StructureError("reps: wrong length")
        for i, r in enumerate(self.reps):
            if not 0 <= r < self.act.size:
                raise StructureError(f"reps[{i}]={r} out of range")
            if r > i:
                raise StructureError(f"reps[{i}]={r} is not the least block element")
            if self.reps[r] != r:
                raise StructureError(f"reps[{i}]={r} is not itself a representative")

    @classmethod
    def discrete(cls, act: Act) -> Congruence:
        return cls(act, tuple(act.elements))

    @classmethod
    def from_partition(cls, act: Act, blocks: Iterable[Iterable[int]]) -> Congruence:
        reps = [-1] * act.size
        for block in blocks:
            members = sorted(set(block))
            for x in members:
                if not 0 <= x < act.size:
                    raise StructureError(f"block element {x} out of range")
                if reps[x] != -1:
                    raise StructureError(f"element {x} appears in two blocks")
                reps[x] = members[0]
        if any(r == -1 for r in reps):
            raise StructureError("blocks do not cover the carrier")
        return cls(act, tuple(reps))

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.reps):
            out.setdefault(r, []).append(i)
        return tuple(tuple(out[r]) for r in sorted(out))

    def same(self, a: int, b: int) -> bool:
        return self.reps[a] == self.reps[b]


class UnionFind:
    """Union-find with least-element representatives on a fixed carrier."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def reps(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


# ---------------------------------------------------------------------------
# law validation


def validate(obj) -> list[str]:
    """Return every violated law of obj, with a concrete witness each.

    Empty list means all laws hold.  Accepts monoids, acts, maps and
    congruences.
    """
    if isinstance(obj, FiniteMonoid):
        return _validate_monoid(obj)
    if isinstance(obj, Act):
        return _validate_act(obj)
    if isinstance(obj, ActMap):
        return _validate_map(obj)
    if isinstance(obj, Congruence):
        return _validate_congruence(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")


def _validate_monoid(m: FiniteMonoid) -> list[str]:
    report = []
    for a in m.elements:
        if m.mul[m.identity][a] != a:
            report.append(f"identity law violated: e*{a} = {m.mul[m.identity][a]}")
        if m.mul[a][m.identity] != a:
            report.append(f"identity law violated: {a}*e = {m.mul[a][m.identity]}")
    for a in m.elements:
        for b in m.elements:
            for c in m.elements:
                lhs = m.mul[m.mul[a][b]][c]
                rhs = m.mul[a][m.mul[b][c]]
                if lhs != rhs:
                    report.append(
                        f"associativity violated at (a,b,c)=({a},{b},{c}): "
                        f"({a}*{b})*{c}={lhs} but {a}*({b}*{c})={rhs}"
                    )
    if m.zero is not None:
        z = m.zero
        for a in m.elements:
            if m.mul[z][a] != z or m.mul[a][z] != z:
                report.append(f"zero law violated at a={a}")
    return report


def _validate_act(a: Act) -> list[str]:
    report = []
    if a.size == 0 and not empty_acts_allowed():
        report.append("empty act not permitted by current emptiness policy")
    m = a.monoid
    e = m.identity
    for x in a.elements:
        if a.act(x, e) != x:
            report.append(f"unit law violated: {x}*e = {a.act(x, e)}")
    for x in a.elements:
        for s in m.elements:
            for t in m.elements:
                if a.side == "right":
                    lhs, rhs = a.act(x, m.mul[s][t]), a.act(a.act(x, s), t)
                else:
                    lhs, rhs = a.act(x, m.mul[s][t]), a.act(a.act(x, t), s)
                if lhs != rhs:
                    report.append(
                        f"action associativity violated at (x,s,t)=({x},{s},{t}): "
                        f"{lhs} != {rhs}"
                    )
    if a.centred:
        fixed = fixed_points(a)
        if len(fixed) != 1:
            report.append(f"centred act must have exactly one fixed point, found {fixed}")
    return report


def _validate_map(f: ActMap) -> list[str]:
    report = []
    src, tgt = f.source, f.target
    for x in src.elements:
        for s in src.monoid.elements:
            if f.values[src.act(x, s)] != tgt.act(f.values[x], s):
                report.append(
                    f"equivariance violated at (x,s)=({x},{s}): "
                    f"f(x*s)={f.values[src.act(x, s)]} but f(x)*s={tgt.act(f.values[x], s)}"
                )
    return report


def _validate_congruence(c: Congruence) -> list[str]:
    report = []
    a = c.act
    for x in a.elements:
        r = c.reps[x]
        if r == x:
            continue
        for s in a.monoid.elements:
            if c.reps[a.act(x, s)] != c.reps[a.act(r, s)]:
                report.append(
                    f"action compatibility violated: {x}~{r} but "
                    f"{x}*{s}={a.act(x, s)} and {r}*{s}={a.act(r, s)} are apart"
                )
    return report


# ---------------------------------------------------------------------------
# basic operations


def fixed_points(act: Act) -> tuple[int, ...]:
    """Carrier elements fixed by every monoid element."""
    return tuple(
        x for x in act.elements if all(act.act(x, s) == x for s in act.monoid.elements)
    )


def indecomposable_components(act: Act) -> tuple[tuple[int, ...], ...]:
    """The finest coproduct decomposition of the carrier.

    Components are the connected blocks of the symmetric closure of
    x ~ x*s; each block is a subact, sorted, and blocks come out in
    order of their least element.
    """
    uf = UnionFind(act.size)
    for x in act.elements:
        for s in act.monoid.elements:
            uf.union(x, act.act(x, s))
    blocks: dict[int, list[int]] = {}
    for x in act.elements:
        blocks.setdefault(uf.find(x), []).append(x)
    return tuple(tuple(blocks[r]) for r in sorted(blocks))


def congruence_closure(act: Act, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least action-compatible partition containing the given pairs.

    Union-find with a worklist: merging a pair enqueues its translates
    under every monoid element until a fixpoint.
    """
    uf = UnionFind(act.size)
    work = []
    for a, b in pairs:
        if not (0 <= a < act.size and 0 <= b < act.size):
            raise StructureError(f"pair ({a},{b}) out of range")
        work.append((a, b))
    while work:
        a, b = work.pop()
        if uf.union(a, b):
            for s in act.monoid.elements:
                work.append((act.act(a, s), act.act(b, s)))
    return Congruence(act, uf.reps())


# ---------------------------------------------------------------------------
# subacts and standard acts


def is_closed_subset(act: Act, subset: Iterable[int]) -> bool:
    members = set(subset)
    return all(act.act(x, s) in members for x in members for s in act.monoid.elements)


def subact(act: Act, subset: Iterable[int]) -> tuple[Act, ActMap]:
    """Reindexed subact on a closed subset, with its inclusion map."""
    members = sorted(set(subset))
    if not is_closed_subset(act, members):
        raise StructureError(f"subset {members} is not closed under the action")
    index = {x: i for i, x in enumerate(members)}
    n = len(members)
    m = act.monoid.size
    if act.side == "right":
        table = tuple(tuple(index[act.act(x, s)] for s in range(m)) for x in members)
    else:
        table = tuple(tuple(index[act.act(x, s)] for x in members) for s in range(m))
    sub = Act(act.monoid, act.side, n, table)
    return sub, ActMap(sub, act, tuple(members))


def point_act(monoid: FiniteMonoid, side: Side = "right", centred: bool = False) -> Act:
    """The one-element act (terminal object)."""
    if side == "right":
        table = ((0,) * monoid.size,)
    else:
        table = tuple((0,) for _ in range(monoid.size))
    return Act(monoid, side, 1, table, centred=centred)


def regular_act(monoid: FiniteMonoid, side: Side = "right") -> Act:
    """The monoid acting on itself by multiplication."""
    return Act(monoid, side, monoid.size, monoid.mul)


def empty_act(monoid: FiniteMonoid, side: Side = "right") -> Act:
    if side == "right":
        table = ()
    else:
        table = tuple(() for _ in range(monoid.size))
    return Act(monoid, side, 0, table)


def fixed_point_inclusion(act: Act, point: int) -> ActMap:
    """Inclusion of the one-element subact on a fixed point."""
    if point not in fixed_points(act):
        raise StructureError(f"element {point} is not a fixed point")
    sub, inc = subact(act, [point])
    return inc


# ---------------------------------------------------------------------------
# canonical forms (exhaustive relabeling; exact for small carriers)


def _relabeled_table(act: Act, perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    m = act.monoid.size
    n = act.size
    if act.side == "right":
        rows: list[tuple[int, ...] | None] = [None] * n
        for x in act.elements:
            rows[perm[x]] = tuple(perm[act.action[x][s]] for s in range(m))
        return tuple(rows)  # type: ignore[arg-type]
    new = [[0] * n for _ in range(m)]
    for s in range(m):
        for x in act.elements:
            new[s][perm[x]] = perm[act.action[s][x]]
    return tuple(tuple(row) for row in new)


def canonical_key(act: Act) -> tuple:
    """Isomorphism-invariant key: the least action table over all relabelings."""
    if act.size > CANONICAL_SIZE_LIMIT:
        raise ValueError(f"carrier too large for exhaustive canonical form: {act.size}")
    best = None
    for perm in itertools.permutations(range(act.size)):
        table = _relabeled_table(act, perm)
        if best is None or table < best:
            best = table
    return (act.side, act.size, best)


def canonical_form(act: Act) -> Act:
    side, size, table = canonical_key(act)
    return Act(act.monoid, side, size, table, centred=act.centred)
