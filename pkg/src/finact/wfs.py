"""Factorizations, precovers, weak factorization system verification,
and the bounded small object argument.

The small object argument here is the finite-scale version: pushout
steps along all commuting squares from the generators, run under step
and size caps, stopping as soon as no obligations remain or the right
piece acquires the right lifting property.  Results carry enough data
to replay every step, so certificates can be checked independently of
the run that produced them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

from .core import (
    Act,
    ActMap,
    FiniteMonoid,
    Side,
    StructureError,
    compose,
    fixed_points,
    identity_map,
    point_act,
)
from .constructions import (
    Nonexistence,
    coproduct,
    pushout,
    pushout_mediating,
)
from .classes import (
    ActClass,
    ClassDescriptor,
    Decision,
    SPLIT_EPI,
    UNITARY,
    has_lifting,
    in_class,
    projective_for,
    unitary_with_complement_in,
    Universe,
)
from .homsearch import (
    MapRetractWitness,
    Square,
    enumerate_maps,
    find_filler,
    find_map_retract,
)


@dataclass(frozen=True)
class Factorization:
    """h = right ∘ left, with class certificates for both pieces."""

    original: ActMap
    left: ActMap
    right: ActMap
    left_class: ClassDescriptor
    right_class: ClassDescriptor
    certificates: tuple[tuple[str, Decision], ...]

    def __post_init__(self):
        if compose(self.right, self.left) != self.original:
            raise StructureError("factorization does not compose to the original map")

    def certificate(self, name: str) -> Decision:
        for key, value in self.certificates:
            if key == name:
                return value
        raise KeyError(name)


def factor_unitary_split(f: ActMap) -> Factorization:
    """Factor through the coproduct of source and target.

    Left piece: the injection into source ⊔ target (unitary).  Right
    piece: act as f on the source summand, identically on the target
    summand (split by the target injection).
    """
    cop = coproduct([f.source, f.target])
    inj_src, inj_tgt = cop.leg("inj0"), cop.leg("inj1")
    fold = [0] * cop.object.size
    for x in f.source.elements:
        fold[inj_src.values[x]] = f.values[x]
    for y in f.target.elements:
        fold[inj_tgt.values[y]] = y
    right = ActMap(cop.object, f.target, tuple(fold))
    certs = (
        ("left", in_class(inj_src, UNITARY)),
        ("right", in_class(right, SPLIT_EPI)),
    )
    return Factorization(f, inj_src, right, UNITARY, SPLIT_EPI, certs)


# ---------------------------------------------------------------------------
# precovers


def _class_members(members) -> tuple[Act, ...]:
    if isinstance(members, ActClass):
        if members.kind != "explicit":
            raise StructureError("precover machinery needs an explicit act class")
        return members.members
    return tuple(members)


def precover(act: Act, members) -> ActMap | Nonexistence:
    """The canonical precover: one summand per map from each member.

    Every map from a member factors through its own summand, so the
    induced map is a precover whenever some hom-set is nonempty; when
    all are empty the nonexistence is reported instead.
    """
    members = _class_members(members)
    summands: list[Act] = []
    maps: list[ActMap] = []
    for member in members:
        for h in enumerate_maps(member, act):
            summands.append(member)
            maps.append(h)
    if not summands:
        return Nonexistence("no member of the class admits a map to the target act")
    cop = coproduct(summands)
    values = [0] * cop.object.size
    for i, h in enumerate(maps):
        inj = cop.leg(f"inj{i}")
        for x in h.source.elements:
            values[inj.values[x]] = h.values[x]
    return ActMap(cop.object, act, tuple(values))


def check_precover(
    g: ActMap, members, mode: Literal["precover", "cover"] = "precover"
) -> Decision:
    """Is g a precover (and, in cover mode, a cover) for the class?

    Precover: every map from every member into the target factors
    through g.  Cover: additionally every endomap e of the domain with
    g∘e = g is an isomorphism.
    """
    members = _class_members(members)
    factorings = []
    for member in members:
        for h in enumerate_maps(member, g.target):
            k = _factor_through(h, g)
            if k is None:
                return Decision(False, "precover", counterexample=(member, h))
            factorings.append((h, k))
    if mode == "cover":
        for e in enumerate_maps(g.source, g.source):
            if compose(g, e) == g and not (e.is_injective and e.is_surjective):
                return Decision(False, "cover", counterexample=e)
    return Decision(True, mode, witness=tuple(factorings))


def _factor_through(h: ActMap, g: ActMap) -> ActMap | None:
    # least k with g∘k = h
    from .homsearch import _search

    gv, hv = g.values, h.values

    def ok(x: int, p: int) -> bool:
        return gv[p] == hv[x]

    for vals in _search(h.source, g.source, None, ok):
        return ActMap(h.source, g.source, vals)
    return None


def factor_via_precover(f: ActMap, members) -> Factorization | Nonexistence:
    """Factor f through source ⊔ (precover of the target).

    Left piece: unitary injection whose complement is the precover
    object (certified against the class with its closure flags).
    Right piece: f on the source, the precover map on the complement;
    certified by projectivity of each class member against it.
    """
    act_class = members if isinstance(members, ActClass) else None
    member_list = _class_members(members)
    pre = precover(f.target, member_list)
    if isinstance(pre, Nonexistence):
        return pre
    cop = coproduct([f.source, pre.source])
    inj_src, inj_pre = cop.leg("inj0"), cop.leg("inj1")
    values = [0] * cop.object.size
    for x in f.source.elements:
        values[inj_src.values[x]] = f.values[x]
    for p in pre.source.elements:
        values[inj_pre.values[p]] = pre.values[p]
    right = ActMap(cop.object, f.target, tuple(values))
    if act_class is None:
        act_class = ActClass("explicit", members=member_list)
    left_class = unitary_with_complement_in(act_class)
    right_class = projective_for(act_class)
    certs = (
        ("left", in_class(inj_src, left_class)),
        ("right", in_class(right, right_class)),
    )
    return Factorization(f, inj_src, right, left_class, right_class, certs)


# ---------------------------------------------------------------------------
# weak factorization system verification


@dataclass(frozen=True)
class WfsReport:
    """Outcome of checking the three axioms on a universe.

    (1) every map factors with certified pieces, (2) every left/right
    pair of universe members lifts, (3) map-retracts preserve
    membership on both sides.
    """

    passed: bool
    factorization_failures: tuple
    lifting_failures: tuple
    retract_failures: tuple
    maps_checked: int
    left_members: int
    right_members: int
    squares_checked: int


def wfs_verify(
    left: ClassDescriptor,
    right: ClassDescriptor,
    uni: Universe,
    factorizer: Callable[[ActMap], Factorization],
) -> WfsReport:
    fact_failures = []
    for h in uni.maps:
        fact = factorizer(h)
        left_dec = in_class(fact.left, left)
        right_dec = in_class(fact.right, right)
        if not (left_dec.holds and right_dec.holds):
            fact_failures.append((h, left_dec, right_dec))
    in_left = [f for f in uni.maps if in_class(f, left).holds]
    in_right = [g for g in uni.maps if in_class(g, right).holds]
    lift_failures = []
    squares = 0
    for f in in_left:
        for g in in_right:
            for u in enumerate_maps(f.source, g.source):
                gu = compose(g, u)
                for v in enumerate_maps(f.target, g.target):
                    if compose(v, f) != gu:
                        continue
                    squares += 1
                    square = Square(f, g, u, v)
                    if find_filler(square) is None:
                        lift_failures.append(square)
    retract_failures = []
    by_source: dict[Act, list[ActMap]] = {}
    for f in uni.maps:
        by_source.setdefault(f.source, []).append(f)
    for maps_here in by_source.values():
        for f in maps_here:
            f_left = in_class(f, left).holds
            f_right = in_class(f, right).holds
            if not (f_left or f_right):
                continue
            for g in maps_here:
                witness = find_map_retract(f, g)
                if witness is None:
                    continue
                if f_left and not in_class(g, left).holds:
                    retract_failures.append(("left", f, g, witness))
                if f_right and not in_class(g, right).holds:
                    retract_failures.append(("right", f, g, witness))
    return WfsReport(
        passed=not (fact_failures or lift_failures or retract_failures),
        factorization_failures=tuple(fact_failures),
        lifting_failures=tuple(lift_failures),
        retract_failures=tuple(retract_failures),
        maps_checked=len(uni.maps),
        left_members=len(in_left),
        right_members=len(in_right),
        squares_checked=squares,
    )


# ---------------------------------------------------------------------------
# bounded small object argument


@dataclass(frozen=True)
class SOASquare:
    """One commuting square from a generator into the current right piece."""

    gen_index: int
    u: ActMap
    v: ActMap


@dataclass(frozen=True)
class SOAStage:
    """One pushout step: the new middle object and its data."""

    act: Act
    step: ActMap
    phi: ActMap
    squares: tuple[SOASquare, ...]


@dataclass(frozen=True)
class SOAResult:
    original: ActMap
    stages: tuple[SOAStage, ...]
    theta: ActMap
    phi: ActMap
    status: Literal["completed", "cap-reached"]
    rlp_certificate: Decision | None


def _soa_squares(gens: Sequence[ActMap], phi: ActMap) -> list[SOASquare]:
    squares = []
    for gi, c in enumerate(gens):
        for u in enumerate_maps(c.source, phi.source):
            pu = compose(phi, u)
            for v in enumerate_maps(c.target, phi.target):
                if compose(v, c) == pu:
                    squares.append(SOASquare(gi, u, v))
    return squares


def _soa_step(
    gens: Sequence[ActMap], phi: ActMap, squares: Sequence[SOASquare]
) -> tuple[Act, ActMap, ActMap]:
    """Push out the coproduct of all square left edges; return
    (new middle, step map, new right piece)."""
    sources = [gens[sq.gen_index].source for sq in squares]
    targets = [gens[sq.gen_index].target for sq in squares]
    cop_src = coproduct(sources)
    cop_tgt = coproduct(targets)
    gen_block = [0] * cop_src.object.size
    into_middle = [0] * cop_src.object.size
    bottom = [0] * cop_tgt.object.size
    for i, sq in enumerate(squares):
        gen = gens[sq.gen_index]
        inj_s = cop_src.leg(f"inj{i}")
        inj_t = cop_tgt.leg(f"inj{i}")
        for x in gen.source.elements:
            gen_block[inj_s.values[x]] = inj_t.values[gen.values[x]]
            into_middle[inj_s.values[x]] = sq.u.values[x]
        for y in gen.target.elements:
            bottom[inj_t.values[y]] = sq.v.values[y]
    gen_map = ActMap(cop_src.object, cop_tgt.object, tuple(gen_block))
    attach = ActMap(cop_src.object, phi.source, tuple(into_middle))
    po = pushout(gen_map, attach)
    step = po.leg("target_of_u")
    v_bar = ActMap(cop_tgt.object, phi.target, tuple(bottom))
    new_phi = pushout_mediating(po, v_bar, phi)
    return po.object, step, new_phi


def small_object_factorize(
    g: ActMap,
    gens: Sequence[ActMap],
    max_steps: int = 8,
    max_size: int = 512,
) -> SOAResult:
    """Iterated pushout factorization of g against generator maps.

    Exits immediately when no commuting squares from the generators
    remain (the degenerate branch), otherwise pushes out and re-checks
    the right lifting property after each step.  Caps on step count and
    middle object size turn runaway growth into a cap-reached status;
    the partial factorization is still valid and replayable.
    """
    gens = tuple(gens)
    if max_steps < 1 or max_size < 1:
        raise StructureError("caps must be >= 1")
    theta = identity_map(g.source)
    phi = g
    stages: list[SOAStage] = []
    status: Literal["completed", "cap-reached"]
    rlp: Decision | None = None
    while True:
        squares = _soa_squares(gens, phi)
        if not squares:
            status = "completed"
            rlp = has_lifting("right", phi, gens)
            break
        if len(stages) >= max_steps:
            status = "cap-reached"
            break
        middle, step, new_phi = _soa_step(gens, phi, squares)
        if middle.size > max_size:
            status = "cap-reached"
            break
        theta = compose(step, theta)
        phi = new_phi
        stages.append(SOAStage(middle, step, phi, tuple(squares)))
        lift = has_lifting("right", phi, gens)
        if lift.holds:
            status = "completed"
            rlp = lift
            break
    result = SOAResult(g, tuple(stages), theta, phi, status, rlp)
    if compose(result.phi, result.theta) != g:
        raise AssertionError("small object factorization does not compose")
    return result


def replay_soa_theta(original: ActMap, stages: Sequence[SOAStage], gens: Sequence[ActMap]) -> ActMap:
    """Rebuild the left piece from stored stages; raises on mismatch."""
    gens = tuple(gens)
    theta = identity_map(original.source)
    phi = original
    for stage in stages:
        middle, step, new_phi = _soa_step(gens, phi, stage.squares)
        if middle != stage.act or step != stage.step or new_phi != stage.phi:
            raise ValueError("stage replay diverged from the stored stage")
        theta = compose(step, theta)
        phi = new_phi
    return theta


def verify_soa(result: SOAResult, gens: Sequence[ActMap]) -> bool:
    """Recheck composition, replay, and (when completed) the RLP."""
    if compose(result.phi, result.theta) != result.original:
        return False
    if replay_soa_theta(result.original, result.stages, gens) != result.theta:
        return False
    if result.status == "completed":
        if not has_lifting("right", result.phi, gens).holds:
            return False
    return True


# ---------------------------------------------------------------------------
# composition-of-pushouts certificates


@dataclass(frozen=True)
class CofCertificate:
    """A finite composition of pushouts of generators, plus an optional
    retract witness exhibiting some other map as a retract of it."""

    steps: tuple[SOAStage, ...]
    composite: ActMap
    retract: MapRetractWitness | None


def soa_theta_certificate(result: SOAResult) -> CofCertificate:
    """The left piece of a factorization, as its own certificate."""
    return CofCertificate(result.stages, result.theta, None)


def cof_certificate(
    f: ActMap,
    gens: Sequence[ActMap],
    max_len: int = 8,
    max_size: int = 512,
) -> CofCertificate | None:
    """Search for a retract-of-composition-of-pushouts witness for f.

    Runs the bounded small object argument on f and looks for a
    diagonal exhibiting f as a retract of the left piece.  Sound (the
    certificate verifies) but bounded: None means nothing was found
    within the caps, not a refutation.
    """
    gens = tuple(gens)
    soa = small_object_factorize(f, gens, max_steps=max_len, max_size=max_size)
    try:
        square = Square(f, soa.phi, soa.theta, identity_map(f.target))
    except ValueError:
        return None
    h = find_filler(square)
    if h is None:
        return None
    witness = MapRetractWitness(alpha=h, beta=soa.phi)
    cert = CofCertificate(soa.stages, soa.theta, witness)
    return cert if verify_cof_certificate(cert, f, gens) else None


def verify_cof_certificate(cert: CofCertificate, f: ActMap, gens: Sequence[ActMap]) -> bool:
    """Replay the steps and check the retract equations against f."""
    theta = identity_map(f.source)
    phi_like = f
    try:
        for stage in cert.steps:
            middle, step, new_phi = _soa_step(tuple(gens), phi_like, stage.squares)
            if middle != stage.act or step != stage.step or new_phi != stage.phi:
                return False
            theta = compose(step, theta)
            phi_like = new_phi
    except (StructureError, ValueError):
        return False
    if theta != cert.composite:
        return False
    if cert.retract is None:
        return theta == f
    return cert.retract.verify(cert.composite, f)


# ---------------------------------------------------------------------------
# centred acts


@dataclass(frozen=True)
class CentredPrecoverEvidence:
    """Precover of a centred act derived from a factorization of 0 -> A."""

    middle: Act
    factorization: Factorization
    probe: Act
    fillers: tuple[tuple[ActMap, ActMap], ...]
    degenerate: bool


def zero_act(monoid: FiniteMonoid, side: Side = "right") -> Act:
    """The one-element centred act (requires a monoid with zero)."""
    if monoid.zero is None:
        raise StructureError("centred world needs a monoid with zero")
    return point_act(monoid, side, centred=True)


def centred_precover(act: Act, members) -> ActMap:
    """Canonical centred precover: base-point coproduct over all maps.

    Over a monoid with zero every centred act receives the collapse
    map from any member, so the hom-sets are never empty and the
    precover always exists.
    """
    if not act.centred:
        raise StructureError("centred precover wants a centred act")
    members = _class_members(members)
    summands: list[Act] = []
    maps: list[ActMap] = []
    for member in members:
        if not member.centred:
            raise StructureError("class members must be centred acts")
        for h in enumerate_maps(member, act):
            summands.append(member)
            maps.append(h)
    if not summands:
        raise StructureError("centred precover with no maps; is the class empty?")
    cop = coproduct(summands, centred=True)
    values = [0] * cop.object.size
    for i, h in enumerate(maps):
        inj = cop.leg(f"inj{i}")
        for x in h.source.elements:
            values[inj.values[x]] = h.values[x]
    return ActMap(cop.object, act, tuple(values))


def centred_factor_via_precover(f: ActMap, members) -> Factorization:
    """Centred analogue of factor_via_precover, gluing at base points."""
    member_list = _class_members(members)
    pre = centred_precover(f.target, member_list)
    if f.source.size == 1:
        # factoring 0 -> A: the middle is just the precover object
        left = ActMap(f.source, pre.source, (fixed_points(pre.source)[0],))
        right = pre
        if compose(right, left) != f:
            raise AssertionError("centred factorization does not compose")
    else:
        if not f.source.centred:
            raise StructureError("centred factorization wants centred acts")
        cop = coproduct([f.source, pre.source], centred=True)
        left = cop.leg("inj0")
        inj_pre = cop.leg("inj1")
        values = [0] * cop.object.size
        for x in f.source.elements:
            values[left.values[x]] = f.values[x]
        for p in pre.source.elements:
            values[inj_pre.values[p]] = pre.values[p]
        right = ActMap(cop.object, f.target, tuple(values))
    act_class = members if isinstance(members, ActClass) else ActClass(
        "explicit", members=member_list
    )
    left_class = unitary_with_complement_in(act_class)
    right_class = projective_for(act_class)
    certs = (
        ("left", in_class(left, left_class, centred=True)),
        ("right", in_class(right, right_class, centred=True)),
    )
    return Factorization(f, left, right, left_class, right_class, certs)


def centred_wfs_precover(
    act: Act,
    left: ClassDescriptor,
    right: ClassDescriptor,
    factorizer: Callable[[ActMap], Factorization],
    probe: Act,
) -> CentredPrecoverEvidence:
    """Derive precover evidence for a centred act from a factorization.

    Factors the unique map 0 -> act as 0 -> middle -> act, certifies
    the pieces against the given class descriptors, then produces the
    diagonal filler through the right piece for every map probe -> act.
    """
    monoid = act.monoid
    if monoid.zero is None:
        raise StructureError("centred machinery requires a monoid with zero")
    if not act.centred or len(fixed_points(act)) != 1:
        raise StructureError("act must be centred with a unique fixed point")
    zero = zero_act(monoid, act.side)
    base = fixed_points(act)[0]
    bang = ActMap(zero, act, (base,))
    fact = factorizer(bang)
    left_dec = in_class(fact.left, left, centred=True)
    right_dec = in_class(fact.right, right, centred=True)
    certs = tuple(fact.certificates) + (
        ("left-requested", left_dec),
        ("right-requested", right_dec),
    )
    fact = Factorization(fact.original, fact.left, fact.right, left, right, certs)
    fillers = []
    for u in enumerate_maps(probe, act):
        square = Square(
            ActMap(zero, probe, (fixed_points(probe)[0],)),
            fact.right,
            fact.left,
            u,
        )
        h = find_filler(square)
        if h is None:
            raise ValueError(
                "right piece fails to lift a probe map; the supplied classes "
                "do not form a weak factorization system on these inputs"
            )
        fillers.append((u, h))
    return CentredPrecoverEvidence(
        middle=fact.left.target,
        factorization=fact,
        probe=probe,
        fillers=tuple(fillers),
        degenerate=not fillers,
    )
