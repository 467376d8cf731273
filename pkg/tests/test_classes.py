import pytest

from finact import (
    Act,
    ActMap,
    StructureError,
    compose,
    coproduct,
    enumerate_maps,
    find_isomorphism,
    find_section,
    fixed_points,
    identity_map,
    point_act,
    regular_act,
    rees_quotient,
    subact,
)
from finact.classes import (
    ActClass,
    EPI,
    MONO,
    SPLIT_EPI,
    UNITARY,
    Universe,
    classify_map,
    default_bound,
    enumerate_acts,
    explicit_act_class,
    explicit_maps,
    fix_fibers,
    flat_rees_mono,
    has_lifting,
    in_class,
    is_flat_bounded,
    is_projective_wrt,
    is_stable_bounded,
    is_unitary,
    pure_epi,
    relative_box,
    triangle,
    unitary_complement,
    unitary_with_complement_in,
    universe,
)

from oracles import brute_flat, brute_projective_wrt, brute_pure, brute_stable


class TestClassify:
    def test_coproduct_injection_is_unitary(self, reg_z, pair_z):
        cop = coproduct([reg_z, pair_z])
        flags = classify_map(cop.leg("inj0"))
        assert flags.mono and flags.unitary and not flags.epi

    def test_fixed_point_inclusion_not_unitary(self, incl_z):
        flags = classify_map(incl_z)
        assert flags.mono and not flags.unitary

    def test_identity_has_all_flags(self, reg_z):
        flags = classify_map(identity_map(reg_z))
        assert all(
            (flags.mono, flags.epi, flags.split_mono, flags.split_epi, flags.unitary,
             flags.iso)
        )

    def test_unitary_iff_image_is_direct_summand(self, zmon, c2):
        for monoid in (zmon, c2):
            acts = enumerate_acts(monoid, "right", 3)
            for a in acts:
                for b in acts:
                    for f in enumerate_maps(a, b):
                        if not f.is_injective:
                            continue
                        expected = is_unitary(f)
                        pair = unitary_complement(f)
                        if pair is None:
                            # either not unitary, or the image is everything
                            if expected:
                                assert f.is_surjective
                            continue
                        comp, _ = pair
                        image_act, _ = subact(b, f.image())
                        rebuilt = coproduct([image_act, comp]).object
                        assert expected
                        assert find_isomorphism(rebuilt, b) is not None


class TestUniverse:
    def test_known_counts(self, triv, zmon, c2):
        assert len(enumerate_acts(triv, "right", 3)) == 3
        assert len(enumerate_acts(zmon, "right", 3)) == 6
        assert len(enumerate_acts(c2, "right", 3)) == 5

    def test_every_lawful_table_has_representative(self, zmon):
        import itertools

        from finact import canonical_key, validate

        reps = {canonical_key(a) for a in enumerate_acts(zmon, "right", 3)}
        for size in (1, 2, 3):
            for column in itertools.product(range(size), repeat=size):
                table = tuple((x, column[x]) for x in range(size))
                act = Act(zmon, "right", size, table)
                if validate(act) == []:
                    assert canonical_key(act) in reps

    def test_universe_maps_are_complete_per_pair(self, zmon):
        uni = universe(zmon, 2)
        for a in uni.acts:
            for b in uni.acts:
                expected = enumerate_maps(a, b)
                got = [m for m in uni.maps if m.source == a and m.target == b]
                assert tuple(got) == expected


class TestInClass:
    def test_pure_epi_of_collapse_over_zero_monoid(self, reg_z, pt_z):
        g = ActMap(reg_z, pt_z, (0, 0))
        assert in_class(g, pure_epi(3)).holds

    def test_pure_epi_fails_for_group_collapse(self, reg_c2, pt_c2):
        g = ActMap(reg_c2, pt_c2, (0, 0))
        dec = in_class(g, pure_epi(1))
        assert not dec.holds
        m_act, _ = dec.counterexample
        assert m_act.size == 1

    def test_fixed_point_inclusion_is_flat_rees_mono(self, incl_z):
        dec = in_class(incl_z, flat_rees_mono(2))
        assert dec.holds and dec.bounded and dec.bound == 2

    def test_unitary_complement_membership(self, reg_z, pair_z):
        cop = coproduct([reg_z, pair_z])
        inc = cop.leg("inj0")
        cls = explicit_act_class([pair_z])
        assert in_class(inc, unitary_with_complement_in(cls)).holds

    def test_explicit_list_membership(self, reg_z):
        one = identity_map(reg_z)
        assert in_class(one, explicit_maps([one])).holds
        other = ActMap(reg_z, reg_z, (1, 1))
        assert not in_class(other, explicit_maps([one])).holds

    def test_mono_epi_flags(self, incl_z, reg_z, pt_z):
        assert in_class(incl_z, MONO).holds
        assert not in_class(incl_z, EPI).holds
        g = ActMap(reg_z, pt_z, (0, 0))
        assert in_class(g, EPI).holds and in_class(g, SPLIT_EPI).holds


class TestProjectivity:
    def test_regular_act_projective_against_all_epis(self, zmon, c2):
        # free acts are projective
        for monoid in (zmon, c2):
            reg = regular_act(monoid)
            acts = enumerate_acts(monoid, "right", 3)
            for a in acts:
                for b in acts:
                    for f in enumerate_maps(a, b):
                        if f.is_surjective:
                            assert is_projective_wrt(reg, f).holds

    def test_point_not_projective_against_group_collapse(self, reg_c2, pt_c2):
        g = ActMap(reg_c2, pt_c2, (0, 0))
        assert not is_projective_wrt(pt_c2, g).holds

    def test_anything_projective_against_iso(self, zmon):
        for act in enumerate_acts(zmon, "right", 3):
            for other in enumerate_acts(zmon, "right", 3):
                assert is_projective_wrt(act, identity_map(other)).holds

    def test_lift_certificates_verify(self, zmon, reg_z, pair_z, pt_z):
        g = ActMap(pair_z, pt_z, (0, 0))
        dec = is_projective_wrt(reg_z, g)
        assert dec.holds
        for target_map, lift in dec.witness:
            assert compose(g, lift) == target_map


class TestTriangle:
    def test_regular_act_left_triangle_against_epis(self, zmon):
        uni = universe(zmon, 2)
        epis = [f for f in uni.maps if f.is_surjective]
        assert triangle(regular_act(zmon), epis, "left").holds

    def test_point_right_triangle_against_fixed_inclusion(self, pt_z, incl_z):
        assert triangle(pt_z, [incl_z], "right").holds

    def test_point_right_triangle_against_group_inclusion(self, c2, reg_c2, pt_c2):
        cop = coproduct([reg_c2, pt_c2])
        inc = cop.leg("inj0")
        assert triangle(pt_c2, [inc], "right").holds

    def test_triangle_split_criterion(self, zmon, c2):
        # the splitting criterion needs the epi class closed under the
        # pullbacks that exist, so close one round before comparing
        from finact import Nonexistence, pullback

        for monoid in (zmon, c2):
            uni = universe(monoid, 3)
            cls = [f for f in uni.maps if f.is_surjective]
            seen = {(f.source, f.target, f.values) for f in cls}
            for g in list(cls):
                for d in uni.acts:
                    for v in enumerate_maps(d, g.target):
                        pb = pullback(g, v)
                        if isinstance(pb, Nonexistence):
                            continue
                        proj = pb.leg("proj1")
                        key = (proj.source, proj.target, proj.values)
                        if key not in seen and proj.is_surjective:
                            seen.add(key)
                            cls.append(proj)
            for act in uni.acts:
                lhs = triangle(act, cls, "left").holds
                onto = [g for g in cls if g.target == act]
                rhs = all(find_section(g) is not None for g in onto)
                assert lhs == rhs


class TestFlatness:
    def test_regular_act_is_flat(self, reg_z, reg_c2):
        assert is_flat_bounded(reg_z, 3).holds
        assert is_flat_bounded(reg_c2, 3).holds

    def test_pair_act_flat_at_bound_two(self, pair_z):
        dec = is_flat_bounded(pair_z, 2)
        assert dec.holds and dec.bounded and dec.bound == 2
        assert len(dec.witness) > 0  # per-inclusion table

    def test_point_act_flat_over_group(self, pt_c2):
        assert is_flat_bounded(pt_c2, 4).holds

    def test_default_bound_rule(self, reg_z):
        assert default_bound(reg_z) == 3  # max(|S|, |A|) + 1

    def test_not_flat_example_over_zero_monoid(self, zmon, twofix_z):
        # two fixed points collapse in the tensor against the inclusion
        # {z} ⊆ SZ exactly when the act is not flat at bound 2
        dec = is_flat_bounded(twofix_z, 2)
        assert dec.holds == brute_flat(twofix_z, 2)

    def test_agreement_with_brute_force(self, zmon, c2):
        for monoid in (zmon, c2):
            for act in enumerate_acts(monoid, "right", 3):
                assert is_flat_bounded(act, 2).holds == brute_flat(act, 2)


class TestStability:
    def test_identity_is_stable(self, reg_z):
        assert is_stable_bounded(identity_map(reg_z), 2).holds

    def test_fixed_point_inclusion_stable(self, incl_z):
        assert is_stable_bounded(incl_z, 2).holds

    def test_flat_rees_quotient_implies_stable(self, zmon, c2):
        # cross-check of the two independently computed sides
        for monoid in (zmon, c2):
            acts = enumerate_acts(monoid, "right", 2)
            for x in acts:
                for y in acts:
                    for f in enumerate_maps(x, y):
                        if not f.is_injective:
                            continue
                        quot = rees_quotient(f).object
                        if is_flat_bounded(quot, 2).holds:
                            assert is_stable_bounded(f, 2).holds

    def test_non_mono_rejected(self, reg_z, pt_z):
        with pytest.raises(StructureError):
            is_stable_bounded(ActMap(reg_z, pt_z, (0, 0)), 2)

    def test_agreement_with_brute_force(self, zmon):
        acts = enumerate_acts(zmon, "right", 2)
        for x in acts:
            for y in acts:
                for f in enumerate_maps(x, y):
                    if f.is_injective:
                        assert is_stable_bounded(f, 2).holds == brute_stable(f, 2)


class TestInducedReesStability:
    def test_stable_mono_structure_descends_to_quotients(self, zmon):
        # f: A -> B mono, g: B -> C stable mono: the induced map on
        # collapsed quotients is a stable mono again
        from finact import quotient_induced

        acts = enumerate_acts(zmon, "right", 3)
        for a in acts:
            for b in acts:
                for f in enumerate_maps(a, b):
                    if not f.is_injective:
                        continue
                    for c in acts:
                        for g in enumerate_maps(b, c):
                            if not g.is_injective:
                                continue
                            if not is_stable_bounded(g, 2).holds:
                                continue
                            b_over_a = rees_quotient(f)
                            c_over_a = rees_quotient(compose(g, f))
                            induced = quotient_induced(g, b_over_a, c_over_a)
                            assert induced.is_injective
                            assert is_stable_bounded(induced, 2).holds


class TestLifting:
    def test_iso_lifts_against_anything(self, reg_z, incl_z):
        assert has_lifting("right", identity_map(reg_z), [incl_z]).holds
        assert has_lifting("left", identity_map(reg_z), [incl_z]).holds

    def test_group_collapse_fails_against_group_inclusion(self, reg_c2, pt_c2):
        cop = coproduct([reg_c2, pt_c2])
        inc = cop.leg("inj0")
        g = ActMap(reg_c2, pt_c2, (0, 0))
        dec = has_lifting("right", g, [inc])
        assert not dec.holds
        assert dec.counterexample is not None

    def test_split_epis_lift_against_unitary_monos(self, zmon):
        uni = universe(zmon, 2)
        unitaries = [f for f in uni.maps if in_class(f, UNITARY).holds]
        for g in uni.maps:
            if in_class(g, SPLIT_EPI).holds:
                assert has_lifting("right", g, unitaries).holds


class TestRelativeBox:
    def test_empty_class_gives_all_maps(self, zmon):
        uni = universe(zmon, 2)
        assert relative_box([], uni, "right") == uni.maps

    def test_full_class_keeps_isomorphisms(self, zmon):
        uni = universe(zmon, 2)
        box = relative_box(uni.maps, uni, "right")
        for f in uni.maps:
            if f.is_injective and f.is_surjective:
                assert f in box

    def test_double_application_contains_sample(self, zmon):
        uni = universe(zmon, 2)
        sample = [uni.maps[0], uni.maps[7]]
        left_box = relative_box(sample, uni, "left")
        double = relative_box(left_box, uni, "right")
        for f in sample:
            assert f in double


class TestFixFibers:
    def test_fiber_over_fixed_point(self, pair_z, reg_z):
        g = ActMap(pair_z, reg_z, (0, 1))
        fibers = fix_fibers(g)
        assert fibers == {1: (1,)}

    def test_collapse_has_whole_carrier_fiber(self, reg_z, pt_z):
        g = ActMap(reg_z, pt_z, (0, 0))
        assert fix_fibers(g) == {0: (0, 1)}

    def test_unreached_fixed_point_has_empty_fiber(self, zmon, pt_z, twofix_z):
        g = ActMap(pt_z, twofix_z, (0,))
        fibers = fix_fibers(g)
        assert fibers[0] == (0,) and fibers[1] == ()

    def test_no_left_zero_is_an_error(self, reg_c2, pt_c2):
        g = ActMap(reg_c2, pt_c2, (0, 0))
        with pytest.raises(ValueError):
            fix_fibers(g)


class TestActClass:
    def test_members_deduplicated_up_to_iso(self, reg_z, pair_z):
        cls = explicit_act_class([reg_z, pair_z])
        assert len(cls.members) == 1

    def test_coproduct_closure(self, reg_z):
        cls = explicit_act_class([reg_z])
        double = coproduct([reg_z, reg_z]).object
        assert cls.contains(double).holds

    def test_summand_closure(self, reg_z, pt_z):
        big = coproduct([reg_z, pt_z]).object
        cls = explicit_act_class([big])
        assert cls.contains(reg_z).holds

    def test_closure_flags_off(self, reg_z):
        cls = explicit_act_class(
            [reg_z], closed_coproducts=False, closed_summands=False,
            closed_retracts=False,
        )
        double = coproduct([reg_z, reg_z]).object
        assert not cls.contains(double).holds

    def test_retract_closure(self, reg_z, pt_z):
        cls = explicit_act_class(
            [coproduct([reg_z, pt_z]).object],
            closed_coproducts=False, closed_summands=False, closed_retracts=True,
        )
        assert cls.contains(pt_z).holds

    def test_fp_bounded_uses_components(self, zmon, reg_z):
        cls = ActClass("fp_bounded", bound=2)
        triple = coproduct([reg_z, reg_z, reg_z]).object
        assert cls.contains(triple).holds
        from finact.classes import _acts_of_size

        big_indecomposable = next(
            a for a in _acts_of_size(zmon, "right", 3)
            if len(__import__("finact").indecomposable_components(a)) == 1
        )
        assert not cls.contains(big_indecomposable).holds

    def test_exact_projectivity_implies_bounded(self, zmon, c2):
        # the bounded check is an over-approximation: exact projectives
        # always pass it, but not conversely (see below)
        for monoid in (zmon, c2):
            uni = universe(monoid, 3)
            bounded = ActClass("projective_bounded", universe=uni)
            exact = ActClass(
                "projective_bounded", universe=uni, use_idempotent_criterion=True
            )
            for act in uni.acts:
                if exact.contains(act).holds:
                    assert bounded.contains(act).holds

    def test_bounded_projectivity_is_strictly_weaker(self, zmon):
        # two generators glued at their fixed point: passes every epi of
        # the size-3 universe but is refuted by a size-4 epi
        vee = Act(zmon, "right", 3, ((0, 0), (1, 0), (2, 0)))
        uni = universe(zmon, 3)
        assert ActClass("projective_bounded", universe=uni).contains(vee).holds
        assert not ActClass(
            "projective_bounded", universe=uni, use_idempotent_criterion=True
        ).contains(vee).holds
        unglued = Act(zmon, "right", 4, ((0, 2), (1, 3), (2, 2), (3, 3)))
        witness = ActMap(unglued, vee, (1, 2, 0, 0))
        assert witness.is_surjective
        assert not is_projective_wrt(vee, witness).holds
