from collections import Counter

import pytest

from hatilt.cluster import (
    ShiftedModule,
    compose_nonzero,
    generation_certificate,
    hom_dim,
    nakayama,
    nakayama_inverse,
    nakayama_pow,
    nu_orbit_decomposition,
    projective_summands,
    rigidity_check,
    tau_d,
    tilting_summands,
)
from hatilt.pathcomb import (
    GridPoint,
    rotate_pow,
    OrderedSeq,
    append_horizontal,
    coords,
    enumerate_all,
    enumerate_dyck,
    path_from_entries,
    prepend_horizontal,
)


def obj(d, n, entries, shift=0):
    return ShiftedModule(path_from_entries(d + 1, n, entries), shift)


class TestTau:
    def test_decrement(self):
        x = OrderedSeq(3, 3, (2, 3, 5))
        assert tau_d(x).entries == (1, 2, 4)

    def test_projective_label_excluded(self):
        assert tau_d(OrderedSeq(3, 3, (1, 2, 4))) is None

    def test_iteration_count(self):
        x = OrderedSeq(4, 3, (4, 5, 6))
        steps = 0
        while x is not None:
            x = tau_d(x)
            steps += 1
        assert steps == 4  # applicable exactly x_1 - 1 = 3 times, then None


class TestHomDim:
    def test_identity(self):
        u = obj(3, 4, (1, 2, 4, 6))
        assert hom_dim(u, u) == 1

    def test_equal_shift_interleaving(self):
        assert hom_dim(obj(3, 4, (1, 2, 4, 6)), obj(3, 4, (1, 3, 5, 7))) == 1
        assert hom_dim(obj(3, 4, (1, 3, 5, 7)), obj(3, 4, (1, 2, 4, 6))) == 0

    def test_shift_one_rule(self):
        for i in (-2, 0, 5):
            assert hom_dim(obj(3, 4, (2, 3, 5, 7), i), obj(3, 4, (1, 2, 4, 6), i + 1)) == 1

    def test_other_shifts_vanish(self):
        u = obj(3, 4, (1, 2, 4, 6))
        for k in (-3, -1, 2, 3):
            assert hom_dim(u, obj(3, 4, (1, 2, 4, 6), k)) == 0

    def test_mismatched_models_rejected(self):
        with pytest.raises(ValueError):
            hom_dim(obj(3, 4, (1, 2, 4, 6)), obj(2, 3, (1, 2, 4)))


class TestCompose:
    def test_identity_leg(self):
        u = obj(2, 4, (1, 2, 5))
        v = obj(2, 4, (1, 4, 6))
        assert compose_nonzero(u, u, v)
        assert compose_nonzero(u, v, v)

    def test_figure_triple_composes_to_zero(self):
        a = obj(2, 4, (1, 2, 5))
        b = obj(2, 4, (1, 4, 6))
        c = obj(2, 4, (3, 5, 7))
        assert not compose_nonzero(a, b, c)

    def test_interval_chain_matches_outer_interleaving(self):
        from hatilt.pathcomb import preceq

        a = obj(3, 4, (1, 2, 3, 4))
        b = obj(3, 4, (1, 2, 3, 5))
        c = obj(3, 4, (1, 2, 4, 6))
        assert hom_dim(a, b) == 1 and hom_dim(b, c) == 1
        # composite is nonzero exactly when the outer pair interleaves; here
        # it does not (the chain needs 4 < 4), so the composite vanishes
        assert not preceq(coords(a.path), coords(c.path))
        assert not compose_nonzero(a, b, c)

    def test_mixed_shifts_rejected(self):
        u = obj(3, 4, (2, 3, 5, 7), 0)
        v = obj(3, 4, (1, 2, 4, 6), 1)
        with pytest.raises(ValueError):
            compose_nonzero(u, u, v)


class TestNakayama:
    def test_projective_to_injective(self):
        for p in enumerate_dyck(3, 4):
            u = ShiftedModule(prepend_horizontal(p), 0)
            assert nakayama(u) == ShiftedModule(append_horizontal(p), 0)

    def test_vertical_first_step_bumps_shift(self):
        u = obj(3, 4, (2, 3, 5, 7))
        assert nakayama(u) == obj(3, 4, (1, 2, 4, 6), 1)

    def test_inverse(self):
        u = obj(3, 4, (2, 4, 5, 7), 3)
        assert nakayama_inverse(nakayama(u)) == u
        assert nakayama_pow(nakayama_pow(u, 5), -5) == u

    def test_period(self):
        for d, n in [(3, 4), (2, 3), (3, 2)]:
            for p in enumerate_all(d + 1, n):
                u = ShiftedModule(p, 0)
                assert nakayama_pow(u, n + d + 1) == ShiftedModule(p, n)


class TestTiltingSummands:
    def test_sizes_3_4(self):
        assert len(projective_summands(3, 4)) == 5
        assert len(tilting_summands(3, 4)) == 35

    def test_sizes_2_3(self):
        assert len(projective_summands(2, 3)) == 2
        assert len(tilting_summands(2, 3)) == 10

    def test_first_twist_is_injectives_at_zero(self):
        base = projective_summands(3, 4)
        twisted = [nakayama(u) for u in base]
        assert all(u.is_injective_at_zero() for u in twisted)

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            tilting_summands(2, 4)


class TestOrbitDecomposition:
    def test_slice_one_block(self):
        blocks = nu_orbit_decomposition(3, 4, 1)
        assert set(blocks) == {GridPoint(1, 0)}
        expected = {ShiftedModule(append_horizontal(p), 0) for p in enumerate_dyck(3, 4)}
        assert set(blocks[GridPoint(1, 0)]) == expected

    def test_summand_count_preserved(self):
        for i in range(1, 8):
            blocks = nu_orbit_decomposition(3, 4, i)
            assert sum(len(v) for v in blocks.values()) == 5

    def test_matches_direct_iteration(self):
        for d, n in [(3, 4), (2, 3), (3, 2)]:
            base = projective_summands(d, n)
            for i in range(1, n + d + 1):
                direct = Counter(nakayama_pow(u, i) for u in base)
                blocks = nu_orbit_decomposition(d, n, i)
                assert Counter(x for b in blocks.values() for x in b) == direct

    def test_index_range(self):
        with pytest.raises(ValueError):
            nu_orbit_decomposition(3, 4, 0)
        with pytest.raises(ValueError):
            nu_orbit_decomposition(3, 4, 8)


class TestRigidity:
    def test_3_2(self):
        report = rigidity_check(3, 2)
        assert report.passed
        assert report.end_dim == 27

    def test_3_4(self):
        report = rigidity_check(3, 4)
        assert report.passed
        assert report.end_dim == 156

    def test_more_models(self):
        for d, n in [(2, 3), (4, 3), (5, 2)]:
            assert rigidity_check(d, n).passed

    def test_end_dim_nonzero(self):
        assert rigidity_check(2, 3).end_dim > 0

    def test_block_dimension_formula(self):
        # End(T) has 2(n+d) - 1 diagonal-band blocks, each of dim End(P)
        for d, n in [(3, 2), (2, 3), (3, 4)]:
            base = projective_summands(d, n)
            end_p = sum(hom_dim(u, v) for u in base for v in base)
            assert rigidity_check(d, n).end_dim == (2 * (n + d) - 1) * end_p


class TestSerreSymmetry:
    def test_hom_matches_dual_hom_of_twist(self):
        for d, n in [(3, 2), (2, 3)]:
            summands = tilting_summands(d, n)
            for u in summands:
                for v in summands:
                    assert hom_dim(u, v) == hom_dim(v, nakayama(u))

    def test_twist_preserves_hom(self):
        for d, n in [(3, 2), (2, 3)]:
            summands = tilting_summands(d, n)
            for u in summands:
                for v in summands:
                    assert hom_dim(u, v) == hom_dim(nakayama(u), nakayama(v))


class TestGenerationCertificate:
    def test_3_4_covers_positive_height(self):
        cert = generation_certificate(3, 4)
        from hatilt.pathcomb import anchor_data

        expected = {p for p in enumerate_all(4, 4) if anchor_data(p).h >= 1}
        assert {e.path for e in cert.entries} == expected

    def test_appended_dyck_entries_are_base_cases(self):
        cert = generation_certificate(3, 4)
        for p in enumerate_dyck(3, 4):
            entry = cert.entry_for(append_horizontal(p))
            assert entry.status == "in-T"
            assert entry.h == 4 and entry.mu == 0

    def test_injective_labels_tracked(self):
        cert = generation_certificate(3, 4)
        assert len(cert.injective_labels) == 35  # paths of L_{4,4} ending in H
        covered = {e.path for e in cert.entries}
        assert set(cert.injective_labels) <= covered

    def test_width_one_model(self):
        # d = 1 still has paths with h >= 1 and mu > 0 (e.g. VHVVHV in the
        # widened 2x4 grid has anchor (0,1) and mu = 4), so the certificate
        # carries resolved entries there too; statuses must match the scan
        from hatilt.pathcomb import anchor_data

        cert = generation_certificate(1, 4)
        for e in cert.entries:
            data = anchor_data(e.path)
            assert e.status == ("in-T" if data.mu == 0 else "resolved")
        assert any(e.status == "resolved" for e in cert.entries)

    def test_resolved_entries_have_decreasing_keys(self):
        for d, n in [(3, 4), (4, 3), (3, 2), (2, 5)]:
            cert = generation_certificate(d, n)
            key = {e.path: (-e.h, e.mu) for e in cert.entries}
            for e in cert.entries:
                if e.status == "resolved":
                    assert e.window is not None and e.position is not None
                    assert len(e.dependencies) == d + 1
                    for dep in e.dependencies:
                        assert key[dep] < key[e.path]

    def test_projectivity_transport(self):
        for u in projective_summands(3, 4):
            assert u.is_projective_at_zero()
            twisted = nakayama(u)
            assert twisted.is_injective_at_zero()
            assert coords(twisted.path).entries[-1] == 8


class TestRotatedRegionObstruction:
    def test_no_relation_into_higher_twists(self):
        # prepended Dyck paths never sit below the i-th rotation of another
        # prepended Dyck path for 2 <= i <= n+d: the geometric reason the
        # tilting object is rigid
        from hatilt.pathcomb import relation_R

        for d, n in [(3, 2), (2, 3), (3, 4)]:
            widened = [prepend_horizontal(p) for p in enumerate_dyck(d, n)]
            for a in widened:
                for b in widened:
                    for i in range(2, n + d + 1):
                        assert not relation_R(a, rotate_pow(b, i))
