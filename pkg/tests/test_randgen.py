"""Seeded generators: determinism, bounds, and family guarantees."""

import random

from tauhh.algebra import build_algebra, normalized_relations
from tauhh.cohomology import bar_space_dims
from tauhh.dsl import Presentation
from tauhh.linalg import GF, QQ, field_name
from tauhh.quiver import classify_shape, paths_of_length
from tauhh.randgen import (
    admissible_corpus,
    check_presentation,
    crown_presentation,
    example_presentations,
    hereditary_corpus,
    mixed_presentation,
    rad_square_zero_corpus,
    random_connected_quiver,
    selfcheck,
    triangular_corpus,
)


def fingerprint(pres: Presentation) -> tuple:
    q = pres.quiver
    rels = tuple(
        tuple((str(c), p.arrows) for c, p in r.terms) for r in pres.relations
    )
    return (
        tuple(q.vertices),
        tuple((a.name, a.source, a.target) for a in q.arrows),
        rels,
        field_name(pres.field),
    )


class TestDeterminism:
    def test_corpora_reproduce(self):
        for maker in (hereditary_corpus, rad_square_zero_corpus, triangular_corpus):
            first = [fingerprint(p) for p in maker(11, count=6)]
            second = [fingerprint(p) for p in maker(11, count=6)]
            assert first == second
        a = [fingerprint(p) for p in admissible_corpus(11, count=8)]
        b = [fingerprint(p) for p in admissible_corpus(11, count=8)]
        assert a == b

    def test_different_seeds_differ(self):
        a = [fingerprint(p) for p in hereditary_corpus(1, count=6)]
        b = [fingerprint(p) for p in hereditary_corpus(2, count=6)]
        assert a != b

    def test_selfcheck_reruns_byte_identical(self):
        ok1, text1 = selfcheck(seed=5, count=4)
        ok2, text2 = selfcheck(seed=5, count=4)
        assert ok1 and ok2
        assert text1 == text2

    def test_selfcheck_covers_crowns_and_examples(self):
        _, text = selfcheck(seed=0, count=0)
        for c in range(1, 6):
            assert f"crown:{c}:Q" in text
            assert f"crown:{c}:F2" in text
        assert "example:parallel-then-one" in text
        assert "example:square-long-way" in text
        assert "example:square-shortcut" in text


class TestQuiverGenerator:
    def test_connected_and_bounded(self):
        rng = random.Random(3)
        for _ in range(40):
            q = random_connected_quiver(rng, 6, 8)
            assert 1 <= q.n_vertices <= 6
            assert q.n_arrows <= 8
            assert classify_shape(q).connected

    def test_acyclic_mode(self):
        rng = random.Random(4)
        for _ in range(40):
            q = random_connected_quiver(rng, 6, 8, acyclic=True)
            assert classify_shape(q).acyclic
            assert classify_shape(q).connected

    def test_acyclic_orientations_vary(self):
        # the hidden vertex ordering should not always orient tree edges
        # from lower index to higher
        rng = random.Random(0)
        seen_backward = False
        for _ in range(30):
            q = random_connected_quiver(rng, 5, 6, acyclic=True)
            for a in q.arrows:
                if a.source > a.target:
                    seen_backward = True
        assert seen_backward


class TestCorpora:
    def test_hereditary_corpus_shape(self):
        corpus = hereditary_corpus(9, count=10, max_vertices=6, max_arrows=8)
        assert len(corpus) == 10
        fields = set()
        for pres in corpus:
            fields.add(field_name(pres.field))
            q = pres.quiver
            assert q.n_vertices <= 6 and q.n_arrows <= 8
            assert not pres.relations
            shape = classify_shape(q)
            assert shape.connected and shape.acyclic
        assert fields == {"Q", "F2", "F3"}

    def test_rad_square_zero_corpus_shape(self):
        corpus = rad_square_zero_corpus(9, count=10, max_vertices=5, max_arrows=7)
        for pres in corpus:
            q = pres.quiver
            assert q.n_vertices <= 5 and q.n_arrows <= 7
            assert classify_shape(q).connected
            assert classify_shape(q).crown_order is None
            assert len(pres.relations) == len(paths_of_length(q, 2))
            alg = build_algebra(pres)
            assert alg.nilpotency == 2

    def test_triangular_corpus_shape(self):
        corpus = triangular_corpus(9, count=10)
        for pres in corpus:
            shape = classify_shape(pres.quiver)
            assert shape.connected and shape.acyclic
            for r in normalized_relations(pres):
                assert r.is_monomial

    def test_admissible_corpus_builds(self):
        corpus = admissible_corpus(9, count=12)
        assert len(corpus) == 12
        for pres in corpus:
            alg = build_algebra(pres)
            assert alg.dim <= 120
            assert bar_space_dims(alg)[3] <= 200_000

    def test_mixed_respects_size_limits(self):
        rng = random.Random(12)
        for _ in range(6):
            pres = mixed_presentation(rng, GF(2), bar_limit=500, dim_limit=30)
            alg = build_algebra(pres)
            assert alg.dim <= 30
            assert bar_space_dims(alg)[3] <= 500


class TestBattery:
    def test_examples_pass(self):
        for name, pres in example_presentations():
            chk = check_presentation(name, pres)
            assert chk.ok, chk.notes
            assert name in chk.summary
            assert "ok=True" in chk.summary

    def test_example_values_match_known_rows(self):
        rows = {name: pres for name, pres in example_presentations()}
        chk = check_presentation("x", rows["parallel-then-one"])
        assert "tau=3 hh1=2" in chk.summary and "e=1" in chk.summary
        chk = check_presentation("x", rows["square-long-way"])
        assert "tau=2 hh1=2" in chk.summary and "e=0" in chk.summary
        chk = check_presentation("x", rows["square-shortcut"])
        assert "tau=2 hh1=1" in chk.summary and "e=1" in chk.summary

    def test_crown_presentation_builds(self):
        alg = build_algebra(crown_presentation(3))
        assert alg.dim == 6
        assert alg.nilpotency == 2
        assert classify_shape(alg.quiver).crown_order == 3

    def test_crown_presentation_mod_p(self):
        alg = build_algebra(crown_presentation(2, GF(2)))
        assert alg.dim == 4

    def test_battery_reports_build_errors(self):
        from tauhh.quiver import Quiver
        from tauhh.dsl import make_presentation

        loop = Quiver(["v"], [("x", "v", "v")])
        pres = make_presentation(loop, QQ, [])
        chk = check_presentation("bad", pres, length_cap=8)
        assert not chk.ok
        assert "build-error" in chk.summary

    def test_battery_summary_deterministic(self):
        pres = crown_presentation(2)
        one = check_presentation("crown", pres)
        two = check_presentation("crown", pres)
        assert one.summary == two.summary
