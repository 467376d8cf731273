"""Colimit-style constructions on finite acts.

Coproducts, quotients, Rees quotients, pushouts, pullbacks, finite
chain colimits, and tensor products with their induced maps.  Every
construction returns its object together with named legs and a
provenance tuple sufficient to replay it.

Carriers are always re-indexed densely: quotient classes are ordered
by their least member, coproducts by summand then element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    Act,
    ActMap,
    Congruence,
    StructureError,
    UnionFind,
    compose,
    congruence_closure,
    empty_act,
    empty_acts_allowed,
    fixed_points,
    validate,
)


@dataclass(frozen=True)
class Nonexistence:
    """Report that a construction has no result under the current policy."""

    reason: str


@dataclass(frozen=True)
class ConstructionResult:
    object: Act
    legs: tuple[tuple[str, ActMap], ...]
    provenance: tuple

    def leg(self, name: str) -> ActMap:
        for key, value in self.legs:
            if key == name:
                return value
        raise KeyError(name)


# ---------------------------------------------------------------------------
# coproducts


def coproduct(parts: Sequence[Act], centred: bool = False) -> ConstructionResult:
    """Disjoint union with blockwise action; injections as legs.

    With `centred=True` all parts must be centred acts and their base
    points are identified, giving the coproduct of centred acts.
    """
    if not parts:
        raise StructureError("coproduct of an empty family")
    first = parts[0]
    for p in parts[1:]:
        if p.monoid != first.monoid or p.side != first.side:
            raise StructureError("coproduct parts over mixed monoids or sides")
    if centred:
        return _centred_coproduct(parts)
    m = first.monoid.size
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.size
    if first.side == "right":
        table = tuple(
            tuple(offsets[i] + p.act(x, s) for s in range(m))
            for i, p in enumerate(parts)
            for x in p.elements
        )
    else:
        table = tuple(
            tuple(
                offsets[i] + p.act(x, s)
                for i, p in enumerate(parts)
                for x in p.elements
            )
            for s in range(m)
        )
    obj = Act(first.monoid, first.side, total, table)
    legs = tuple(
        (f"inj{i}", ActMap(p, obj, tuple(offsets[i] + x for x in p.elements)))
        for i, p in enumerate(parts)
    )
    return ConstructionResult(obj, legs, ("coproduct", tuple(parts)))


def _centred_coproduct(parts: Sequence[Act]) -> ConstructionResult:
    for p in parts:
        if not p.centred:
            raise StructureError("centred coproduct requires centred parts")
        if len(fixed_points(p)) != 1:
            raise StructureError("centred part does not have a unique fixed point")
    plain = coproduct(parts)
    bases = [
        plain.leg(f"inj{i}").values[fixed_points(p)[0]] for i, p in enumerate(parts)
    ]
    cong = congruence_closure(plain.object, [(bases[0], b) for b in bases[1:]])
    quot = quotient(plain.object, cong)
    obj = quot.object
    if len(fixed_points(obj)) != 1:
        raise StructureError("centred coproduct lost unique fixed point")
    obj = Act(obj.monoid, obj.side, obj.size, obj.action, centred=True)
    proj = ActMap(quot.leg("projection").source, obj, quot.leg("projection").values)
    legs = tuple(
        (f"inj{i}", compose(proj, plain.leg(f"inj{i}"))) for i in range(len(parts))
    )
    return ConstructionResult(obj, legs, ("centred-coproduct", tuple(parts)))


# ---------------------------------------------------------------------------
# quotients


def quotient(act: Act, cong: Congruence) -> ConstructionResult:
    """Quotient act on the blocks of an action-compatible partition."""
    if cong.act != act:
        raise StructureError("congruence belongs to a different act")
    bad = validate(cong)
    if bad:
        raise ValueError(f"not a congruence: {bad[0]}")
    reps = sorted(set(cong.reps))
    index = {r: i for i, r in enumerate(reps)}
    m = act.monoid.size
    if act.side == "right":
        table = tuple(
            tuple(index[cong.reps[act.act(r, s)]] for s in range(m)) for r in reps
        )
    else:
        table = tuple(
            tuple(index[cong.reps[act.act(r, s)]] for r in reps) for s in range(m)
        )
    obj = Act(act.monoid, act.side, len(reps), table)
    proj = ActMap(act, obj, tuple(index[cong.reps[x]] for x in act.elements))
    return ConstructionResult(obj, (("projection", proj),), ("quotient", act, cong))


def rees_quotient(f: ActMap, require_mono: bool = True) -> ConstructionResult:
    """Collapse the image of f to a single point of its target.

    The classical setting has f a monomorphism, enforced by default;
    |target/source| = |target| - |image| + 1.
    """
    if require_mono and not f.is_injective:
        raise ValueError("rees quotient requires a monomorphism")
    target = f.target
    img = f.image()
    pairs = [(img[0], y) for y in img[1:]]
    cong = congruence_closure(target, pairs)
    # collapsing a subact never propagates: the closure is exactly im x im.
    quot = quotient(target, cong)
    return ConstructionResult(
        quot.object, quot.legs, ("rees-quotient", f, require_mono)
    )


def quotient_induced(
    outer: ActMap, src_quot: ConstructionResult, dst_quot: ConstructionResult
) -> ActMap:
    """Map between two quotient objects induced by outer on carriers.

    src_quot and dst_quot must be quotient-style results whose
    projection legs have outer.source and outer.target as sources; the
    induced assignment class(x) -> class(outer(x)) must be well
    defined, otherwise ValueError.
    """
    src_proj = src_quot.leg("projection")
    dst_proj = dst_quot.leg("projection")
    if src_proj.source != outer.source or dst_proj.source != outer.target:
        raise StructureError("quotients do not match the carrier map")
    values = [-1] * src_quot.object.size
    for x in outer.source.elements:
        cls = src_proj.values[x]
        want = dst_proj.values[outer.values[x]]
        if values[cls] == -1:
            values[cls] = want
        elif values[cls] != want:
            raise ValueError(
                f"induced map ill-defined: class {cls} maps to both "
                f"{values[cls]} and {want}"
            )
    return ActMap(src_quot.object, dst_quot.object, tuple(values))


# ---------------------------------------------------------------------------
# pushouts and pullbacks


def pushout(f: ActMap, u: ActMap) -> ConstructionResult:
    """Pushout of f: A->B along u: A->C.

    Built literally as (B ⊔ C) / closure{(f(a), u(a))}; the legs
    `target_of_f`: B->P and `target_of_u`: C->P satisfy
    target_of_f ∘ f = target_of_u ∘ u.
    """
    if f.source != u.source:
        raise StructureError("pushout requires a shared source")
    cop = coproduct([f.target, u.target])
    inj_b, inj_c = cop.leg("inj0"), cop.leg("inj1")
    pairs = [
        (inj_b.values[f.values[a]], inj_c.values[u.values[a]])
        for a in f.source.elements
    ]
    cong = congruence_closure(cop.object, pairs)
    quot = quotient(cop.object, cong)
    proj = quot.leg("projection")
    leg_b = compose(proj, inj_b)
    leg_c = compose(proj, inj_c)
    if compose(leg_b, f) != compose(leg_c, u):
        raise AssertionError("pushout square does not commute")
    legs = (("target_of_f", leg_b), ("target_of_u", leg_c))
    return ConstructionResult(quot.object, legs, ("pushout", f, u))


def pushout_mediating(result: ConstructionResult, p: ActMap, q: ActMap) -> ActMap:
    """The unique map out of a pushout determined by a commuting cocone.

    p: B->Q and q: C->Q must satisfy p∘f = q∘u for the pushout's span;
    raises ValueError when the cocone is inconsistent with the gluing.
    """
    leg_b = result.leg("target_of_f")
    leg_c = result.leg("target_of_u")
    if p.source != leg_b.source or q.source != leg_c.source or p.target != q.target:
        raise StructureError("cocone does not match the pushout span")
    values = [-1] * result.object.size
    for b in leg_b.source.elements:
        cls, want = leg_b.values[b], p.values[b]
        if values[cls] == -1:
            values[cls] = want
        elif values[cls] != want:
            raise ValueError("cocone does not respect the pushout gluing")
    for c in leg_c.source.elements:
        cls, want = leg_c.values[c], q.values[c]
        if values[cls] == -1:
            values[cls] = want
        elif values[cls] != want:
            raise ValueError("cocone does not respect the pushout gluing")
    mediating = ActMap(result.object, p.target, tuple(values))
    if validate(mediating):
        raise ValueError("cocone induces a non-equivariant mediating map")
    return mediating


def pullback(f: ActMap, g: ActMap) -> ConstructionResult | Nonexistence:
    """Pullback of f: B->D and g: C->D, when it exists.

    The carrier is {(b, c) : f(b) = g(c)} with the componentwise
    action; an empty carrier is a Nonexistence report unless the
    emptiness policy permits empty acts.
    """
    if f.target != g.target:
        raise StructureError("pullback requires a shared target")
    pairs = [
        (b, c)
        for b in f.source.elements
        for c in g.source.elements
        if f.values[b] == g.values[c]
    ]
    if not pairs and not empty_acts_allowed():
        return Nonexistence("empty pullback carrier under current emptiness policy")
    index = {bc: i for i, bc in enumerate(pairs)}
    m = f.source.monoid.size
    if not pairs:
        obj = empty_act(f.source.monoid, f.source.side)
        legs = (
            ("proj0", ActMap(obj, f.source, ())),
            ("proj1", ActMap(obj, g.source, ())),
        )
        return ConstructionResult(obj, legs, ("pullback", f, g))
    b_act, c_act = f.source, g.source
    if b_act.side == "right":
        table = tuple(
            tuple(index[(b_act.act(b, s), c_act.act(c, s))] for s in range(m))
            for (b, c) in pairs
        )
    else:
        table = tuple(
            tuple(index[(b_act.act(b, s), c_act.act(c, s))] for (b, c) in pairs)
            for s in range(m)
        )
    obj = Act(b_act.monoid, b_act.side, len(pairs), table)
    legs = (
        ("proj0", ActMap(obj, b_act, tuple(b for b, _ in pairs))),
        ("proj1", ActMap(obj, c_act, tuple(c for _, c in pairs))),
    )
    return ConstructionResult(obj, legs, ("pullback", f, g))


# ---------------------------------------------------------------------------
# finite chains


@dataclass(frozen=True)
class ChainDiagram:
    """A finite chain A_0 -> A_1 -> ... -> A_n of acts and maps."""

    acts: tuple[Act, ...]
    maps: tuple[ActMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "acts", tuple(self.acts))
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.acts:
            raise StructureError("empty chain")
        if len(self.maps) != len(self.acts) - 1:
            raise StructureError("chain needs exactly one map per consecutive pair")
        for i, f in enumerate(self.maps):
            if f.source != self.acts[i] or f.target != self.acts[i + 1]:
                raise StructureError(f"chain map {i} endpoints do not match")


@dataclass(frozen=True)
class ChainColimitResult(ConstructionResult):
    """Chain colimit: the last act, cocone legs, and first-hit stages.

    `first_hit[p]` is the least stage whose cocone leg reaches element
    p of the colimit object.
    """

    first_hit: tuple[int, ...]


def chain_colimit(chain: ChainDiagram) -> ChainColimitResult:
    last = chain.acts[-1]
    n = len(chain.acts) - 1
    cocones: list[ActMap] = [ActMap(last, last, tuple(last.elements))]
    for i in range(n - 1, -1, -1):
        cocones.insert(0, compose(cocones[0], chain.maps[i]))
    first_hit = []
    for p in last.elements:
        stage = n
        for i in range(n + 1):
            if p in cocones[i].values:
                stage = i
                break
        first_hit.append(stage)
    legs = tuple((f"stage{i}", cocones[i]) for i in range(n + 1))
    return ChainColimitResult(last, legs, ("chain-colimit", chain), tuple(first_hit))


# ---------------------------------------------------------------------------
# tensor products


@dataclass(frozen=True)
class TensorResult:
    """Tensor product of a right act with a left act over one monoid.

    The carrier of right.size x left.size pairs is partitioned by the
    least equivalence identifying (a*s, x) with (a, s*x); classes are
    numbered by first appearance in row-major order.
    """

    right: Act
    left: Act
    class_count: int
    class_table: tuple[tuple[int, ...], ...]

    def class_of(self, a: int, x: int) -> int:
        return self.class_table[a][x]

    def classes(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.class_count)]
        for a in self.right.elements:
            for x in self.left.elements:
                out[self.class_table[a][x]].append((a, x))
        return tuple(tuple(block) for block in out)


def tensor(right: Act, left: Act) -> TensorResult:
    if right.side != "right" or left.side != "left":
        raise StructureError("tensor wants a right act and a left act")
    if right.monoid != left.monoid:
        raise StructureError("tensor factors over different monoids")
    nx = left.size
    uf = UnionFind(right.size * nx)
    for a in right.elements:
        for s in right.monoid.elements:
            a_s = right.act(a, s)
            for x in left.elements:
                uf.union(a_s * nx + x, a * nx + left.act(x, s))
    reps = uf.reps()
    renum: dict[int, int] = {}
    table = []
    for a in right.elements:
        row = []
        for x in left.elements:
            r = reps[a * nx + x]
            if r not in renum:
                renum[r] = len(renum)
            row.append(renum[r])
        table.append(tuple(row))
    return TensorResult(right, left, len(renum), tuple(table))


@dataclass(frozen=True)
class TensorMap:
    """Induced function on tensor classes along a left act map."""

    source: TensorResult
    target: TensorResult
    along: ActMap
    values: tuple[int, ...]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)


def tensor_induced(source: TensorResult, along: ActMap) -> TensorMap:
    """Map A⊗X -> A⊗Y induced by a left act map X -> Y.

    Sends the class of (a, x) to the class of (a, along(x)); well
    definedness is checked and always holds for equivariant maps.
    """
    if along.source != source.left:
        raise StructureError("induced map must start at the tensor's left act")
    target = tensor(source.right, along.target)
    values = [-1] * source.class_count
    for a in source.right.elements:
        for x in source.left.elements:
            cls = source.class_of(a, x)
            want = target.class_of(a, along.values[x])
            if values[cls] == -1:
                values[cls] = want
            elif values[cls] != want:
                raise AssertionError("induced tensor map ill-defined")
    return TensorMap(source, target, along, tuple(values))
