"""Membership in map classes and act classes, over declared bounds.

The source material quantifies several of these classes over proper
classes ("all left act monomorphisms", "all finitely presented acts").
Here every such quantifier is replaced by an explicit bound carried in
the descriptor, and every verdict that depends on a bound says so in
its Decision.  Counterexamples, by contrast, are exact refutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Literal

from .core import (
    Act,
    ActMap,
    FiniteMonoid,
    Side,
    StructureError,
    canonical_key,
    compose,
    fixed_points,
    indecomposable_components,
    is_closed_subset,
    point_act,
    regular_act,
    subact,
)
from .constructions import tensor, tensor_induced, rees_quotient
from .homsearch import Square, enumerate_maps, find_filler, find_retraction, find_section


@dataclass(frozen=True)
class Decision:
    """Outcome of a membership or property check.

    `bounded` marks verdicts that only searched up to `bound`; a False
    verdict's counterexample is exact regardless.
    """

    holds: bool
    law: str
    witness: Any = None
    counterexample: Any = None
    bounded: bool = False
    bound: int | None = None


@dataclass(frozen=True)
class MapFlags:
    mono: bool
    epi: bool
    split_mono: bool
    split_epi: bool
    unitary: bool
    iso: bool


def classify_map(f: ActMap) -> MapFlags:
    mono = f.is_injective
    epi = f.is_surjective
    return MapFlags(
        mono=mono,
        epi=epi,
        split_mono=find_retraction(f) is not None,
        split_epi=find_section(f) is not None,
        unitary=is_unitary(f),
        iso=mono and epi,
    )


def is_unitary(f: ActMap, centred: bool = False) -> bool:
    """Mono whose image has no incoming action from outside.

    Equivalently the complement of the image is a subact, so the image
    is a direct summand of the target.  In centred mode the complement
    may fall into the base point (the target's unique fixed point).
    """
    if not f.is_injective:
        return False
    img = set(f.values)
    tgt = f.target
    base = None
    if centred:
        fixed = fixed_points(tgt)
        if len(fixed) != 1:
            return False
        base = fixed[0]
    for y in tgt.elements:
        if y in img:
            continue
        for s in tgt.monoid.elements:
            ys = tgt.act(y, s)
            if ys in img and ys != base:
                return False
    return True


def unitary_complement(f: ActMap, centred: bool = False) -> tuple[Act, ActMap] | None:
    """The complement subact of a unitary mono's image, or None.

    Ordinary mode: carrier target minus image.  Centred mode: that set
    plus the base point, as a centred act.  An empty complement (f is
    onto) is reported as None by the caller's convention; here it
    returns None as well since there is nothing to build.
    """
    if not is_unitary(f, centred=centred):
        return None
    rest = [y for y in f.target.elements if y not in set(f.values)]
    if not rest:
        return None
    if centred:
        base = fixed_points(f.target)[0]
        sub, inc = subact(f.target, rest + [base])
        sub = Act(sub.monoid, sub.side, sub.size, sub.action, centred=True)
        return sub, ActMap(sub, f.target, inc.values)
    return subact(f.target, rest)


# ---------------------------------------------------------------------------
# act enumeration and universes


@lru_cache(maxsize=None)
def _acts_of_size(monoid: FiniteMonoid, side: Side, size: int) -> tuple[Act, ...]:
    """All valid acts of exactly this size, up to isomorphism, sorted."""
    m = monoid.size
    e = monoid.identity
    others = [s for s in range(m) if s != e]
    seen: set[tuple] = set()
    out: list[Act] = []
    if side == "right":
        for choice in itertools.product(range(size), repeat=size * len(others)):
            table = []
            k = 0
            for x in range(size):
                row = [0] * m
                row[e] = x
                for s in others:
                    row[s] = choice[k]
                    k += 1
                table.append(tuple(row))
            act = Act(monoid, side, size, tuple(table))
            if _act_is_lawful(act):
                key = canonical_key(act)
                if key not in seen:
                    seen.add(key)
                    out.append(Act(monoid, side, size, key[2]))
    else:
        for choice in itertools.product(range(size), repeat=size * len(others)):
            table = [[0] * size for _ in range(m)]
            table[e] = list(range(size))
            k = 0
            for s in others:
                for x in range(size):
                    table[s][x] = choice[k]
                    k += 1
            act = Act(monoid, side, size, tuple(tuple(r) for r in table))
            if _act_is_lawful(act):
                key = canonical_key(act)
                if key not in seen:
                    seen.add(key)
                    out.append(Act(monoid, side, size, key[2]))
    out.sort(key=lambda a: a.action)
    return tuple(out)


def _act_is_lawful(act: Act) -> bool:
    m = act.monoid
    for x in act.elements:
        for s in m.elements:
            xs = act.act(x, s)
            for t in m.elements:
                if act.side == "right":
                    if act.act(x, m.mul[s][t]) != act.act(xs, t):
                        return False
                else:
                    if act.act(x, m.mul[t][s]) != act.act(xs, t):
                        return False
    return True


def enumerate_acts(monoid: FiniteMonoid, side: Side, max_size: int) -> tuple[Act, ...]:
    """All acts of size 1..max_size up to isomorphism, in canonical order."""
    out: list[Act] = []
    for size in range(1, max_size + 1):
        out.extend(_acts_of_size(monoid, side, size))
    return tuple(out)


@dataclass(frozen=True)
class Universe:
    """All acts up to iso of size <= max_act_size, and all maps between them.

    Stands in for the proper-class quantifications: box operators and
    verification suites run relative to a universe.
    """

    monoid: FiniteMonoid
    side: Side
    max_act_size: int
    acts: tuple[Act, ...]
    maps: tuple[ActMap, ...]


@lru_cache(maxsize=None)
def universe(monoid: FiniteMonoid, max_act_size: int, side: Side = "right") -> Universe:
    acts = enumerate_acts(monoid, side, max_act_size)
    maps: list[ActMap] = []
    for a in acts:
        for b in acts:
            maps.extend(enumerate_maps(a, b))
    return Universe(monoid, side, max_act_size, acts, tuple(maps))


def default_bound(*objects) -> int:
    """One more than the largest relevant size in sight."""
    best = 1
    for obj in objects:
        if isinstance(obj, FiniteMonoid):
            best = max(best, obj.size)
        elif isinstance(obj, Act):
            best = max(best, obj.size, obj.monoid.size)
        elif isinstance(obj, ActMap):
            best = max(
                best, obj.source.size, obj.target.size, obj.source.monoid.size
            )
    return best + 1


# ---------------------------------------------------------------------------
# act classes


@dataclass(frozen=True)
class ActClass:
    """A class of acts: an explicit list or a bounded predicate.

    kinds: "explicit" (members, deduplicated up to iso),
    "flat_bounded" (flat up to `bound`), "projective_bounded"
    (projective against every epi of `universe`), "fp_bounded" (size at
    most `bound`).  Closure flags extend explicit membership tests.
    """

    kind: Literal["explicit", "flat_bounded", "projective_bounded", "fp_bounded"]
    members: tuple[Act, ...] = ()
    bound: int | None = None
    universe: Universe | None = None
    closed_coproducts: bool = True
    closed_summands: bool = True
    closed_retracts: bool = True
    use_idempotent_criterion: bool = False

    def __post_init__(self):
        if self.kind == "explicit" and not self.members:
            raise StructureError("explicit act class needs members")
        if self.kind in ("flat_bounded", "fp_bounded") and (
            self.bound is None or self.bound < 1
        ):
            raise StructureError(f"{self.kind} needs a bound >= 1")
        if self.kind == "projective_bounded" and self.universe is None:
            raise StructureError("projective_bounded needs a universe")

    def contains(self, act: Act, centred: bool = False) -> Decision:
        return act_class_contains(self, act, centred=centred)


def explicit_act_class(
    members,
    closed_coproducts: bool = True,
    closed_summands: bool = True,
    closed_retracts: bool = True,
) -> ActClass:
    """Explicit class with members deduplicated up to isomorphism."""
    seen: set[tuple] = set()
    dedup = []
    for act in members:
        key = canonical_key(act)
        if key not in seen:
            seen.add(key)
            dedup.append(act)
    return ActClass(
        "explicit",
        members=tuple(dedup),
        closed_coproducts=closed_coproducts,
        closed_summands=closed_summands,
        closed_retracts=closed_retracts,
    )


def _component_multiset(act: Act) -> tuple[tuple, ...]:
    keys = []
    for block in indecomposable_components(act):
        sub, _ = subact(act, block)
        keys.append(canonical_key(sub))
    return tuple(sorted(keys))


def _multiset_decomposes(target: dict, parts: list[dict]) -> bool:
    # Can `target` be written as a nonnegative integer combination of `parts`?
    if not any(target.values()):
        return True
    for part in parts:
        if all(target.get(k, 0) >= v for k, v in part.items()):
            rest = dict(target)
            for k, v in part.items():
                rest[k] -= v
            if _multiset_decomposes(rest, parts):
                return True
    return False


def _counts(keys: tuple) -> dict:
    out: dict = {}
    for k in keys:
        out[k] = out.get(k, 0) + 1
    return out


def act_class_contains(cls: ActClass, act: Act, centred: bool = False) -> Decision:
    if cls.kind == "flat_bounded":
        dec = is_flat_bounded(act, cls.bound)
        return Decision(
            dec.holds, "class-flat-bounded", dec.witness, dec.counterexample,
            bounded=True, bound=cls.bound,
        )
    if cls.kind == "fp_bounded":
        if cls.closed_coproducts:
            ok = all(len(b) <= cls.bound for b in indecomposable_components(act))
        else:
            ok = act.size <= cls.bound
        return Decision(ok, "class-size-bounded", bounded=True, bound=cls.bound)
    if cls.kind == "projective_bounded":
        assert cls.universe is not None
        if cls.use_idempotent_criterion:
            ok = _projective_by_idempotents(act)
            return Decision(ok, "class-projective-idempotent-criterion")
        for g in cls.universe.maps:
            if not g.is_surjective:
                continue
            dec = is_projective_wrt(act, g)
            if not dec.holds:
                return Decision(
                    False, "class-projective-bounded", counterexample=dec.counterexample,
                    bounded=True, bound=cls.universe.max_act_size,
                )
        return Decision(
            True, "class-projective-bounded", bounded=True,
            bound=cls.universe.max_act_size,
        )
    return _explicit_contains(cls, act, centred)


def _explicit_contains(cls: ActClass, act: Act, centred: bool) -> Decision:
    from .homsearch import iter_maps

    key = canonical_key(act)
    for member in cls.members:
        if canonical_key(member) == key:
            return Decision(True, "class-member", witness=member)
    if centred:
        if cls.closed_coproducts and _wedge_decomposes(cls, act):
            return Decision(True, "class-centred-coproduct", bounded=True)
        return Decision(False, "class-membership", bounded=True)
    act_counts = _counts(_component_multiset(act))
    member_counts = [_counts(_component_multiset(m)) for m in cls.members]
    if cls.closed_coproducts and cls.closed_summands:
        component_keys = set().union(*(set(c) for c in member_counts))
        if set(act_counts) <= component_keys:
            return Decision(True, "class-coproduct-summand", bounded=True)
    if cls.closed_coproducts and _multiset_decomposes(act_counts, member_counts):
        return Decision(True, "class-coproduct", bounded=True)
    if cls.closed_summands:
        for m, counts in zip(cls.members, member_counts):
            if all(counts.get(k, 0) >= v for k, v in act_counts.items()):
                return Decision(True, "class-summand", witness=m, bounded=True)
    if cls.closed_retracts:
        for m in cls.members:
            for alpha in iter_maps(act, m):
                for beta in iter_maps(m, act):
                    if all(beta.values[alpha.values[x]] == x for x in act.elements):
                        return Decision(
                            True, "class-retract", witness=(m, alpha, beta), bounded=True
                        )
    return Decision(False, "class-membership", bounded=True)


def _wedge_decomposes(cls: ActClass, act: Act, _memo=None) -> bool:
    # Centred closure under coproducts: split off member copies at the
    # base point until the zero act remains.
    from .homsearch import _search

    if _memo is None:
        _memo = {}
    key = canonical_key(act)
    if key in _memo:
        return _memo[key]
    _memo[key] = False
    if act.size == 1:
        _memo[key] = True
        return True
    fixed = fixed_points(act)
    if len(fixed) != 1:
        return False
    base = fixed[0]
    for member in cls.members:
        if member.size > act.size or member.size == 1:
            continue
        mem_fixed = fixed_points(member)
        if len(mem_fixed) != 1:
            continue
        for vals in _search(member, act, {mem_fixed[0]: base}, distinct=True):
            img = set(vals)
            rest = [y for y in act.elements if y not in img or y == base]
            if not is_closed_subset(act, rest):
                continue
            sub, _ = subact(act, rest)
            sub = Act(sub.monoid, sub.side, sub.size, sub.action, centred=True)
            if _wedge_decomposes(cls, sub, _memo):
                _memo[key] = True
                return True
    return _memo[key]


def _projective_by_idempotents(act: Act) -> bool:
    # Standard criterion: projective iff a coproduct of acts e*S for
    # idempotent e.  Imported from the general literature, kept behind
    # a flag; the bounded test above is the primary route.
    from .homsearch import find_isomorphism

    mono = act.monoid
    reg = regular_act(mono, act.side)
    cyclics = []
    for e in mono.idempotents():
        orbit = sorted({mono.mul[e][s] if act.side == "right" else mono.mul[s][e] for s in mono.elements})
        sub, _ = subact(reg, orbit)
        cyclics.append(sub)
    for block in indecomposable_components(act):
        piece, _ = subact(act, block)
        if not any(find_isomorphism(piece, c) is not None for c in cyclics):
            return False
    return True


# ---------------------------------------------------------------------------
# map class descriptors


_KINDS = {
    "mono",
    "epi",
    "split_epi",
    "split_mono",
    "unitary",
    "unitary_complement_in",
    "pure_epi",
    "flat_rees_mono",
    "explicit",
    "rlp_against",
    "llp_against",
    "projective_for",
}


@dataclass(frozen=True)
class ClassDescriptor:
    """A finitely-described class of act maps.

    Kind-specific payload: `act_class` for unitary_complement_in and
    projective_for, `bound` for pure_epi and flat_rees_mono, `maps`
    for explicit / rlp_against / llp_against.
    """

    kind: str
    act_class: ActClass | None = None
    bound: int | None = None
    maps: tuple[ActMap, ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise StructureError(f"unknown map class kind {self.kind!r}")
        if self.kind in ("unitary_complement_in", "projective_for") and self.act_class is None:
            raise StructureError(f"{self.kind} needs an act class")
        if self.kind in ("pure_epi", "flat_rees_mono") and (
            self.bound is None or self.bound < 1
        ):
            raise StructureError(f"{self.kind} needs a bound >= 1")
        if self.kind in ("explicit", "rlp_against", "llp_against") and not self.maps:
            raise StructureError(f"{self.kind} needs maps")


MONO = ClassDescriptor("mono")
EPI = ClassDescriptor("epi")
SPLIT_EPI = ClassDescriptor("split_epi")
SPLIT_MONO = ClassDescriptor("split_mono")
UNITARY = ClassDescriptor("unitary")


def unitary_with_complement_in(act_class: ActClass) -> ClassDescriptor:
    return ClassDescriptor("unitary_complement_in", act_class=act_class)


def pure_epi(bound: int) -> ClassDescriptor:
    return ClassDescriptor("pure_epi", bound=bound)


def flat_rees_mono(bound: int) -> ClassDescriptor:
    return ClassDescriptor("flat_rees_mono", bound=bound)


def explicit_maps(maps) -> ClassDescriptor:
    return ClassDescriptor("explicit", maps=tuple(maps))


def rlp_against(maps) -> ClassDescriptor:
    return ClassDescriptor("rlp_against", maps=tuple(maps))


def llp_against(maps) -> ClassDescriptor:
    return ClassDescriptor("llp_against", maps=tuple(maps))


def projective_for(act_class: ActClass) -> ClassDescriptor:
    return ClassDescriptor("projective_for", act_class=act_class)


def in_class(f: ActMap, descriptor: ClassDescriptor, centred: bool = False) -> Decision:
    """Decide membership of f in the described class, with evidence."""
    kind = descriptor.kind
    if kind == "mono":
        return Decision(f.is_injective, "mono")
    if kind == "epi":
        return Decision(f.is_surjective, "epi")
    if kind == "split_epi":
        section = find_section(f)
        return Decision(section is not None, "split-epi", witness=section)
    if kind == "split_mono":
        retraction = find_retraction(f)
        return Decision(retraction is not None, "split-mono", witness=retraction)
    if kind == "unitary":
        return Decision(is_unitary(f, centred=centred), "unitary")
    if kind == "unitary_complement_in":
        if not is_unitary(f, centred=centred):
            return Decision(False, "unitary-complement", counterexample="not unitary")
        pair = unitary_complement(f, centred=centred)
        if pair is None:
            # image is everything: complement is empty, trivially in the class
            return Decision(True, "unitary-complement", witness=None)
        comp, _ = pair
        sub = descriptor.act_class.contains(comp, centred=centred)
        return Decision(
            sub.holds, "unitary-complement", witness=(comp, sub),
            counterexample=None if sub.holds else comp,
            bounded=sub.bounded, bound=sub.bound,
        )
    if kind == "pure_epi":
        return _pure_epi(f, descriptor.bound)
    if kind == "flat_rees_mono":
        if not f.is_injective:
            return Decision(False, "flat-rees-mono", counterexample="not mono")
        quot = rees_quotient(f)
        dec = is_flat_bounded(quot.object, descriptor.bound)
        return Decision(
            dec.holds, "flat-rees-mono", witness=(quot.object, dec),
            counterexample=dec.counterexample, bounded=True, bound=descriptor.bound,
        )
    if kind == "explicit":
        return Decision(f in descriptor.maps, "explicit-list")
    if kind == "rlp_against":
        return has_lifting("right", f, descriptor.maps)
    if kind == "llp_against":
        return has_lifting("left", f, descriptor.maps)
    if kind == "projective_for":
        cls = descriptor.act_class
        if cls.kind != "explicit":
            raise StructureError("projective_for needs an explicit act class")
        tables = []
        for member in cls.members:
            dec = is_projective_wrt(member, f)
            if not dec.holds:
                return Decision(
                    False, "projective-for-class",
                    counterexample=(member, dec.counterexample), bounded=True,
                )
            tables.append((member, dec.witness))
        return Decision(True, "projective-for-class", witness=tuple(tables), bounded=True)
    raise AssertionError(kind)


def _pure_epi(f: ActMap, bound: int) -> Decision:
    if not f.is_surjective:
        return Decision(False, "pure-epi", counterexample="not epi", bounded=True, bound=bound)
    for m_act in enumerate_acts(f.source.monoid, f.source.side, bound):
        for g in enumerate_maps(m_act, f.target):
            lift = _lift_through(m_act, f, g)
            if lift is None:
                return Decision(
                    False, "pure-epi", counterexample=(m_act, g), bounded=True, bound=bound
                )
    return Decision(True, "pure-epi", bounded=True, bound=bound)


def _lift_through(p: Act, f: ActMap, g: ActMap) -> ActMap | None:
    # least h: p -> source(f) with f∘h = g
    from .homsearch import _search

    fv, gv = f.values, g.values

    def ok(x: int, c: int) -> bool:
        return fv[c] == gv[x]

    for vals in _search(p, f.source, None, ok):
        return ActMap(p, f.source, vals)
    return None


def is_projective_wrt(p: Act, f: ActMap) -> Decision:
    """Does every map p -> target(f) lift through f?"""
    lifts = []
    for g in enumerate_maps(p, f.target):
        h = _lift_through(p, f, g)
        if h is None:
            return Decision(False, "projective-wrt", counterexample=g)
        lifts.append((g, h))
    return Decision(True, "projective-wrt", witness=tuple(lifts))


def triangle(act: Act, maps, side: Literal["left", "right"]) -> Decision:
    """Projectivity (left) or injectivity (right) of an act against maps.

    Left: the act is projective with respect to each map.  Right: the
    unique map to the one-element act has the right lifting property
    against each map.
    """
    maps = tuple(maps)
    if side == "left":
        for c in maps:
            dec = is_projective_wrt(act, c)
            if not dec.holds:
                return Decision(False, "triangle-left", counterexample=(c, dec.counterexample))
        return Decision(True, "triangle-left")
    terminal = point_act(act.monoid, act.side)
    bang = ActMap(act, terminal, (0,) * act.size)
    return has_lifting("right", bang, maps)


def has_lifting(side: Literal["left", "right"], f: ActMap, maps) -> Decision:
    """Complete lifting check of f against a finite list of maps.

    Right: every commuting square with a listed map on the left and f
    on the right has a filler; left mirrored.  The witness is the full
    filler table, the counterexample a square with no filler.
    """
    maps = tuple(maps)
    fillers = []
    for idx, c in enumerate(maps):
        if side == "right":
            lefts, rights = c, f
        else:
            lefts, rights = f, c
        for u in enumerate_maps(lefts.source, rights.source):
            comp = compose(rights, u)
            for v in enumerate_maps(lefts.target, rights.target):
                if compose(v, lefts) != comp:
                    continue
                square = Square(lefts, rights, u, v)
                h = find_filler(square)
                if h is None:
                    return Decision(
                        False,
                        "right-lifting" if side == "right" else "left-lifting",
                        counterexample=square,
                    )
                fillers.append(((idx, u.values, v.values), h.values))
    return Decision(
        True,
        "right-lifting" if side == "right" else "left-lifting",
        witness=tuple(fillers),
    )


def relative_box(maps, uni: Universe, side: Literal["left", "right"]) -> tuple[ActMap, ...]:
    """All maps of the universe with the lifting property against `maps`.

    side="right" computes the relative right box, side="left" the left
    box; output order follows the universe's map order.
    """
    maps = tuple(maps)
    return tuple(g for g in uni.maps if has_lifting(side, g, maps).holds)


# ---------------------------------------------------------------------------
# flatness, stability, fixed-point fibers


def subact_inclusions(y: Act) -> tuple[ActMap, ...]:
    """Inclusions of all nonempty closed subsets of y, smallest first."""
    out = []
    for r in range(1, y.size + 1):
        for subset in itertools.combinations(y.elements, r):
            if is_closed_subset(y, subset):
                _, inc = subact(y, subset)
                out.append(inc)
    return tuple(out)


def is_flat_bounded(act: Act, bound: int | None = None) -> Decision:
    """Flatness of a right act tested against left acts of size <= bound.

    Checks injectivity of the induced tensor map along every subact
    inclusion of every left act up to the bound; monos factor through
    inclusions up to iso, so inclusions suffice.  A pass means "flat up
    to bound", a failing inclusion refutes flatness outright.
    """
    if act.side != "right":
        raise StructureError("flatness is defined for right acts here")
    if bound is None:
        bound = default_bound(act)
    if bound < 1:
        raise StructureError("bound must be >= 1")
    table = []
    for y in enumerate_acts(act.monoid, "left", bound):
        for inc in subact_inclusions(y):
            t = tensor(act, inc.source)
            induced = tensor_induced(t, inc)
            ok = induced.is_injective
            table.append((inc, ok))
            if not ok:
                collided = _collision(induced)
                return Decision(
                    False, "flat-up-to-bound", counterexample=(inc, collided),
                    bounded=True, bound=bound,
                )
    return Decision(True, "flat-up-to-bound", witness=tuple(table), bounded=True, bound=bound)


def _collision(tm) -> tuple[int, int, int]:
    seen: dict[int, int] = {}
    for cls, img in enumerate(tm.values):
        if img in seen:
            return (seen[img], cls, img)
        seen[img] = cls
    raise AssertionError("no collision in a non-injective map")


def is_stable_bounded(f: ActMap, bound: int | None = None) -> Decision:
    """Stability of a right-act mono, tested against left maps up to a bound.

    For every left act map g: X -> Y with |X|,|Y| <= bound, whenever a
    tensor class of target(f) x Y contains both a pair (b, g(x)) and a
    pair (f(a), y), it must also contain a pair (f(a'), g(x')).
    """
    if not f.is_injective:
        raise StructureError("stability is defined for monomorphisms")
    if bound is None:
        bound = default_bound(f)
    mono_img = set(f.values)
    b_act = f.target
    left_acts = enumerate_acts(b_act.monoid, "left", bound)
    for x_act in left_acts:
        for y_act in left_acts:
            for g in enumerate_maps(x_act, y_act):
                t = tensor(b_act, y_act)
                image_classes = {
                    t.class_of(f.values[a], y)
                    for a in f.source.elements
                    for y in y_act.elements
                }
                good = {
                    t.class_of(f.values[a], g.values[x])
                    for a in f.source.elements
                    for x in x_act.elements
                }
                for b in b_act.elements:
                    for x in x_act.elements:
                        cls = t.class_of(b, g.values[x])
                        if cls in image_classes and cls not in good:
                            return Decision(
                                False, "stable-up-to-bound",
                                counterexample=(g, b, x), bounded=True, bound=bound,
                            )
    return Decision(True, "stable-up-to-bound", bounded=True, bound=bound)


def fix_fibers(g: ActMap) -> dict[int, tuple[int, ...]]:
    """Fibers of g over the fixed points of its target.

    Requires the monoid to have a left zero (which forces every act to
    have fixed points); each nonempty fiber is a subact.
    """
    monoid = g.source.monoid
    if not monoid.left_zeros():
        raise ValueError("monoid has no left zero; fixed-point fibers undefined")
    out: dict[int, tuple[int, ...]] = {}
    for d in fixed_points(g.target):
        fiber = tuple(c for c in g.source.elements if g.values[c] == d)
        if fiber and not is_closed_subset(g.source, fiber):
            raise AssertionError("nonempty fiber over a fixed point must be a subact")
        out[d] = fiber
    return out
