"""Search for equivariant maps subject to composition constraints.

One backtracking engine drives everything: assign the least unassigned
carrier element, immediately propagate equivariance consequences to its
orbit, and backtrack on conflict.  Candidates for each element are
tried in increasing order, so witnesses are produced in lexicographic
order of their value arrays and "least witness" just means "first
found".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .core import Act, ActMap, StructureError, compose, identity_map


@dataclass(frozen=True)
class Square:
    """A commutative square: f the left edge, g the right edge.

    u: source(f) -> source(g) on top, v: target(f) -> target(g) on the
    bottom, with g∘u = v∘f.  Non-commuting data is rejected outright.
    """

    f: ActMap
    g: ActMap
    u: ActMap
    v: ActMap

    def __post_init__(self):
        if self.u.source != self.f.source or self.u.target != self.g.source:
            raise StructureError("top edge endpoints do not match")
        if self.v.source != self.f.target or self.v.target != self.g.target:
            raise StructureError("bottom edge endpoints do not match")
        if compose(self.g, self.u) != compose(self.v, self.f):
            raise ValueError("square does not commute")


@dataclass(frozen=True)
class MapRetractWitness:
    """Maps alpha: C->B, beta: B->C exhibiting g: A->C as a retract of f: A->B."""

    alpha: ActMap
    beta: ActMap

    def verify(self, f: ActMap, g: ActMap) -> bool:
        return (
            compose(self.beta, self.alpha) == identity_map(g.target)
            and compose(self.alpha, g) == f
            and compose(self.beta, f) == g
        )


def _search(
    source: Act,
    target: Act,
    pinned: dict[int, int] | None = None,
    allowed: Callable[[int, int], bool] | None = None,
    distinct: bool = False,
) -> Iterator[tuple[int, ...]]:
    """Yield all equivariant value arrays source -> target, lexicographically.

    `pinned` pre-assigns values (inconsistent pins yield nothing),
    `allowed(x, v)` filters candidate values everywhere, and `distinct`
    restricts the search to injective maps.
    """
    n, m = source.size, source.monoid.size
    values = [-1] * n
    used = [False] * target.size

    def assign(x: int, v: int, trail: list[int]) -> bool:
        # Sets values[x] = v and closes under the action; False on conflict.
        if allowed is not None and not allowed(x, v):
            return False
        if distinct and used[v]:
            return False
        values[x] = v
        used[v] = True
        trail.append(x)
        queue = [x]
        while queue:
            y = queue.pop()
            for s in range(m):
                ys = source.act(y, s)
                w = target.act(values[y], s)
                cur = values[ys]
                if cur == -1:
                    if allowed is not None and not allowed(ys, w):
                        return False
                    if distinct and used[w]:
                        return False
                    values[ys] = w
                    used[w] = True
                    trail.append(ys)
                    queue.append(ys)
                elif cur != w:
                    return False
        return True

    def undo(trail: list[int]) -> None:
        for y in trail:
            used[values[y]] = False
            values[y] = -1

    trail0: list[int] = []
    if pinned:
        for x, v in sorted(pinned.items()):
            if values[x] != -1:
                if values[x] != v:
                    return
                continue
            if not assign(x, v, trail0):
                return

    def extend() -> Iterator[tuple[int, ...]]:
        x = -1
        for i in range(n):
            if values[i] == -1:
                x = i
                break
        if x == -1:
            yield tuple(values)
            return
        for v in range(target.size):
            trail: list[int] = []
            if assign(x, v, trail):
                yield from extend()
            undo(trail)

    yield from extend()


def iter_maps(source: Act, target: Act) -> Iterator[ActMap]:
    """All equivariant maps, lexicographic by value array, lazily."""
    if source.monoid != target.monoid or source.side != target.side:
        raise StructureError("hom search across different monoids or sides")
    for vals in _search(source, target):
        yield ActMap(source, target, vals)


@lru_cache(maxsize=None)
def _maps_cached(source: Act, target: Act) -> tuple[ActMap, ...]:
    return tuple(iter_maps(source, target))


def enumerate_maps(source: Act, target: Act) -> tuple[ActMap, ...]:
    """The complete hom-set, in lexicographic order of value arrays."""
    return _maps_cached(source, target)


def find_filler(square: Square) -> ActMap | None:
    """Least diagonal h: target(f) -> source(g) with h∘f = u and g∘h = v."""
    f, g, u, v = square.f, square.g, square.u, square.v
    pinned: dict[int, int] = {}
    for x in f.source.elements:
        b = f.values[x]
        want = u.values[x]
        if pinned.get(b, want) != want:
            return None
        pinned[b] = want
    gv = g.values
    vv = v.values

    def ok(b: int, c: int) -> bool:
        return gv[c] == vv[b]

    for vals in _search(f.target, g.source, pinned, ok):
        return ActMap(f.target, g.source, vals)
    return None


def find_section(g: ActMap) -> ActMap | None:
    """Least s: target(g) -> source(g) with g∘s = identity, if any."""
    gv = g.values

    def ok(d: int, c: int) -> bool:
        return gv[c] == d

    for vals in _search(g.target, g.source, None, ok):
        return ActMap(g.target, g.source, vals)
    return None


def find_retraction(f: ActMap) -> ActMap | None:
    """Least r: target(f) -> source(f) with r∘f = identity, if any."""
    pinned: dict[int, int] = {}
    for x in f.source.elements:
        b = f.values[x]
        if pinned.get(b, x) != x:
            return None
        pinned[b] = x
    for vals in _search(f.target, f.source, pinned):
        return ActMap(f.target, f.source, vals)
    return None


def find_isomorphism(a: Act, b: Act) -> ActMap | None:
    """Least bijective equivariant map a -> b, if any."""
    if a.monoid != b.monoid or a.side != b.side or a.size != b.size:
        return None
    for vals in _search(a, b, distinct=True):
        return ActMap(a, b, vals)
    return None


def find_map_retract(f: ActMap, g: ActMap) -> MapRetractWitness | None:
    """Least (alpha, beta) exhibiting g as a retract of f.

    f and g must share their source; the witness satisfies
    beta∘alpha = 1, alpha∘g = f and beta∘f = g.
    """
    if f.source != g.source:
        raise StructureError("map retract requires a shared source")
    b_act, c_act = f.target, g.target
    alpha_pins: dict[int, int] = {}
    for a in f.source.elements:
        c, b = g.values[a], f.values[a]
        if alpha_pins.get(c, b) != b:
            return None
        alpha_pins[c] = b
    beta_base: dict[int, int] = {}
    for a in f.source.elements:
        b, c = f.values[a], g.values[a]
        if beta_base.get(b, c) != c:
            return None
        beta_base[b] = c
    for alpha_vals in _search(c_act, b_act, alpha_pins):
        beta_pins = dict(beta_base)
        ok = True
        for c, b in enumerate(alpha_vals):
            if beta_pins.get(b, c) != c:
                ok = False
                break
            beta_pins[b] = c
        if not ok:
            continue
        for beta_vals in _search(b_act, c_act, beta_pins):
            return MapRetractWitness(
                ActMap(c_act, b_act, alpha_vals), ActMap(b_act, c_act, beta_vals)
            )
    return None
