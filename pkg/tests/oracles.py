"""Brute-force recomputations used as independent oracles.

Everything here quantifies by direct enumeration: hom-sets are all
functions filtered by the equivariance equations, tensor classes come
from a naive merge sweep, and monoids/partitions are enumerated
outright.  No propagation, no union-find, no sharing with the engine's
search paths.
"""

from __future__ import annotations

import itertools

from finact import Act, ActMap, FiniteMonoid
from finact.classes import enumerate_acts, subact_inclusions


# ---------------------------------------------------------------------------
# function-level law checks


def monoid_laws_hold(m: FiniteMonoid) -> bool:
    e = m.identity
    for a in m.elements:
        if m.mul[e][a] != a or m.mul[a][e] != a:
            return False
    for a in m.elements:
        for b in m.elements:
            for c in m.elements:
                if m.mul[m.mul[a][b]][c] != m.mul[a][m.mul[b][c]]:
                    return False
    if m.zero is not None:
        z = m.zero
        if any(m.mul[z][a] != z or m.mul[a][z] != z for a in m.elements):
            return False
    return True


def act_laws_hold(a: Act) -> bool:
    m = a.monoid
    for x in a.elements:
        if a.act(x, m.identity) != x:
            return False
        for s in m.elements:
            for t in m.elements:
                if a.side == "right":
                    if a.act(x, m.mul[s][t]) != a.act(a.act(x, s), t):
                        return False
                else:
                    if a.act(x, m.mul[t][s]) != a.act(a.act(x, s), t):
                        return False
    if a.centred:
        fixed = [x for x in a.elements if all(a.act(x, s) == x for s in m.elements)]
        if len(fixed) != 1:
            return False
    return True


def map_is_equivariant(f: ActMap) -> bool:
    for x in f.source.elements:
        for s in f.source.monoid.elements:
            if f.values[f.source.act(x, s)] != f.target.act(f.values[x], s):
                return False
    return True


# ---------------------------------------------------------------------------
# brute hom-sets and searches


def brute_maps(source: Act, target: Act) -> list[ActMap]:
    """Every function filtered by equivariance, in lexicographic order."""
    out = []
    for vals in itertools.product(range(target.size), repeat=source.size):
        f = ActMap(source, target, vals)
        if map_is_equivariant(f):
            out.append(f)
    return out


def brute_filler_exists(square) -> bool:
    f, g, u, v = square.f, square.g, square.u, square.v
    for h in brute_maps(f.target, g.source):
        if all(h.values[f.values[x]] == u.values[x] for x in f.source.elements) and all(
            g.values[h.values[b]] == v.values[b] for b in f.target.elements
        ):
            return True
    return False


def brute_section_exists(g: ActMap) -> bool:
    return any(
        all(g.values[s.values[d]] == d for d in g.target.elements)
        for s in brute_maps(g.target, g.source)
    )


def brute_projective_wrt(p: Act, f: ActMap) -> bool:
    for g in brute_maps(p, f.target):
        if not any(
            all(f.values[h.values[x]] == g.values[x] for x in p.elements)
            for h in brute_maps(p, f.source)
        ):
            return False
    return True


def brute_pure(f: ActMap, bound: int) -> bool:
    if not f.is_surjective:
        return False
    for m_act in enumerate_acts(f.source.monoid, f.source.side, bound):
        if not brute_projective_wrt(m_act, f):
            return False
    return True


# ---------------------------------------------------------------------------
# brute tensor classes, flatness, stability


def brute_tensor_classes(right: Act, left: Act) -> list[list[int]]:
    """Class table for the tensor product by repeated merge sweeps."""
    nx = left.size
    cls = list(range(right.size * nx))

    def merge(i: int, j: int) -> bool:
        a, b = cls[i], cls[j]
        if a == b:
            return False
        lo, hi = min(a, b), max(a, b)
        for k in range(len(cls)):
            if cls[k] == hi:
                cls[k] = lo
        return True

    changed = True
    while changed:
        changed = False
        for a in right.elements:
            for s in right.monoid.elements:
                for x in left.elements:
                    i = right.act(a, s) * nx + x
                    j = a * nx + left.act(x, s)
                    if merge(i, j):
                        changed = True
    renum: dict[int, int] = {}
    table = []
    for a in right.elements:
        row = []
        for x in left.elements:
            c = cls[a * nx + x]
            if c not in renum:
                renum[c] = len(renum)
            row.append(renum[c])
        table.append(row)
    return table


def brute_flat(act: Act, bound: int) -> bool:
    for y in enumerate_acts(act.monoid, "left", bound):
        big = brute_tensor_classes(act, y)
        for inc in subact_inclusions(y):
            small = brute_tensor_classes(act, inc.source)
            seen: dict[int, int] = {}
            for a in act.elements:
                for x in inc.source.elements:
                    c_small = small[a][x]
                    c_big = big[a][inc.values[x]]
                    if c_small in seen:
                        if seen[c_small] != c_big:
                            raise AssertionError("induced map ill-defined")
                    else:
                        seen[c_small] = c_big
            if len(set(seen.values())) != len(seen):
                return False
    return True


def brute_stable(f: ActMap, bound: int) -> bool:
    b_act = f.target
    lefts = enumerate_acts(b_act.monoid, "left", bound)
    for x_act in lefts:
        for y_act in lefts:
            for g in brute_maps(x_act, y_act):
                table = brute_tensor_classes(b_act, y_act)
                image_classes = {
                    table[f.values[a]][y]
                    for a in f.source.elements
                    for y in y_act.elements
                }
                good = {
                    table[f.values[a]][g.values[x]]
                    for a in f.source.elements
                    for x in x_act.elements
                }
                for b in b_act.elements:
                    for x in x_act.elements:
                        c = table[b][g.values[x]]
                        if c in image_classes and c not in good:
                            return False
    return True


# ---------------------------------------------------------------------------
# partitions and congruence closure


def set_partitions(n: int):
    """All partitions of range(n) as tuples of sorted tuples."""
    if n == 0:
        yield ()
        return

    def rec(i: int, blocks: list[list[int]]):
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [[0]])


def brute_congruence_blocks(act: Act, pairs) -> tuple[tuple[int, ...], ...]:
    """Meet of all action-compatible partitions containing the pairs."""
    pairs = list(pairs)
    good = []
    for blocks in set_partitions(act.size):
        rep = {}
        for block in blocks:
            for x in block:
                rep[x] = block[0]
        if any(rep[a] != rep[b] for a, b in pairs):
            continue
        compatible = True
        for block in blocks:
            for x in block:
                for s in act.monoid.elements:
                    if rep[act.act(x, s)] != rep[act.act(block[0], s)]:
                        compatible = False
                        break
                if not compatible:
                    break
            if not compatible:
                break
        if compatible:
            good.append(rep)
    assert good, "the full partition is always compatible"
    blocks: dict[tuple, list[int]] = {}
    for x in act.elements:
        key = tuple(r[x] for r in good)
        blocks.setdefault(key, []).append(x)
    out = sorted((tuple(sorted(b)) for b in blocks.values()), key=lambda b: b[0])
    return tuple(out)


# ---------------------------------------------------------------------------
# monoid enumeration (for "over every monoid of size <= n" quantifiers)


def enumerate_monoids(max_size: int) -> list[FiniteMonoid]:
    out = []
    for size in range(1, max_size + 1):
        seen = set()
        others = [i for i in range(size) if i != 0]
        for choice in itertools.product(range(size), repeat=len(others) ** 2):
            table = [[0] * size for _ in range(size)]
            for a in range(size):
                table[0][a] = a
                table[a][0] = a
            k = 0
            for a in others:
                for b in others:
                    table[a][b] = choice[k]
                    k += 1
            m = FiniteMonoid(size, tuple(tuple(r) for r in table), 0)
            if not monoid_laws_hold(m):
                continue
            key = _monoid_canonical_key(m)
            if key not in seen:
                seen.add(key)
                out.append(m)
    return out


def _monoid_canonical_key(m: FiniteMonoid):
    best = None
    for perm in itertools.permutations(range(m.size)):
        if perm[m.identity] != 0:
            continue
        table = tuple(
            tuple(perm[m.mul[a][b]] for b in _inv(perm)) for a in _inv(perm)
        )
        if best is None or table < best:
            best = table
    return best


def _inv(perm):
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return out
