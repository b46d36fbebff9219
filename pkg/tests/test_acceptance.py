"""Acceptance gate: the nine headline checks, one verdict line each.

Every criterion prints ``ACCEPTANCE <n>: PASS|FAIL - <summary>`` directly to
the terminal (bypassing capture) so a plain pytest run shows the tally.
All arithmetic is exact; the only tolerances are wall-clock budgets.
"""

import time

import pytest

from tauhh.algebra import build_algebra, center
from tauhh.closed_forms import (
    crown_dims,
    hereditary_hh1,
    monomial_classification,
    monomial_dims,
    rad_square_zero_dims,
    tree_criterion_predicates,
)
from tauhh.cohomology import (
    build_bar_complex,
    derivation_space_dim,
    has_hh2_cancellation,
    hh1_dim,
    hh1_kq_dim,
    hom_relations_dim,
    tau_hh1_dim_coker,
    tau_hh1_dim_formula,
)
from tauhh.linalg import GF, QQ, Matrix, rank
from tauhh.quiver import classify_shape, parallel_pairs, paths_of_length
from tauhh.randgen import (
    admissible_corpus,
    crown_presentation,
    example_presentations,
    hereditary_corpus,
    rad_square_zero_corpus,
    triangular_corpus,
)

BAR_CAP = 200_000


def verdict(capsys, number: int, summary: str):
    """Print the criterion verdict on the live terminal."""

    class _Verdict:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            word = "PASS" if exc_type is None else "FAIL"
            with capsys.disabled():
                print(f"ACCEPTANCE {number}: {word} - {summary}")
            return False

    return _Verdict()


@pytest.fixture(scope="module")
def warmed_up():
    """Compile the numeric kernels once so timed criteria measure the
    mathematics, not the JIT."""
    rank(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    alg = build_algebra(example_presentations()[0][1])
    tau_hh1_dim_coker(alg)
    return True


@pytest.fixture(scope="module")
def shared_corpus():
    """The 200-instance mixed corpus shared by criteria 5, 6, 7 and 9."""
    return admissible_corpus(2024, count=200)


# t, h1, e, nu labels for the three worked presentations
WORKED_ROWS = {
    "parallel-then-one": (1, 2, 3, [("a", "b")]),
    "square-long-way": (0, 2, 2, []),
    "square-shortcut": (1, 1, 2, [("d", "c*b")]),
}

RIGIDITY_WITNESSES = []


def note_rigidity(alg):
    """Collect (tau, hh1, hh2, hom) from every generated input so criterion
    9 quantifies over everything the suite touched."""
    tau = tau_hh1_dim_formula(alg)
    h1 = hh1_dim(alg)
    hom = hom_relations_dim(alg)
    h2 = hom - hh1_kq_dim(alg) + h1
    RIGIDITY_WITNESSES.append((tau, h1, h2, hom))


def test_criterion_1_worked_rows(warmed_up, capsys):
    with verdict(capsys, 1, "three worked presentations: (e, HH1, tauHH1) rows and non-uniform pair sets"):
        for name, pres in example_presentations():
            t0 = time.perf_counter()
            alg = build_algebra(pres)
            tau = tau_hh1_dim_formula(alg)
            h1 = hh1_dim(alg)
            e = tau - h1
            cls = monomial_classification(pres)
            labels = cls.non_uniform_labels(pres.quiver)
            elapsed = time.perf_counter() - t0
            want_e, want_h1, want_tau, want_nu = WORKED_ROWS[name]
            assert (e, h1, tau) == (want_e, want_h1, want_tau), name
            assert sorted(labels) == sorted(want_nu), name
            assert elapsed < 1.0, f"{name} took {elapsed:.3f}s"
            note_rigidity(alg)


def test_criterion_2_crowns(warmed_up, capsys):
    with verdict(capsys, 2, "crown family c=1..5 over Q and F2: closed form = machinery"):
        for c in range(1, 6):
            for field in (QQ, GF(2)):
                pres = crown_presentation(c, field)
                alg = build_algebra(pres)
                tau = tau_hh1_dim_formula(alg)
                h1 = hh1_dim(alg)
                e = tau - h1
                want_tau, want_h1, want_e = crown_dims(c, field.characteristic)
                assert (tau, h1, e) == (want_tau, want_h1, want_e), (c, field)
                assert tau == (2 if c == 1 else 1)
                if c == 1 and field.characteristic == 2:
                    assert h1 == 2
                else:
                    assert h1 == 1
                assert (e == 1) == (c == 1 and field.characteristic != 2)
                note_rigidity(alg)


def test_criterion_3_hereditary(warmed_up, capsys):
    with verdict(capsys, 3, "100 seeded hereditary: e=0, cancellation, closed form, <30s"):
        t0 = time.perf_counter()
        corpus = hereditary_corpus(2024, count=100, max_vertices=6, max_arrows=8)
        assert len(corpus) == 100
        for pres in corpus:
            q = pres.quiver
            assert q.n_vertices <= 6 and q.n_arrows <= 8
            shape = classify_shape(q)
            assert shape.connected and shape.acyclic
            alg = build_algebra(pres)
            tau = tau_hh1_dim_formula(alg)
            h1 = hh1_dim(alg)
            assert tau - h1 == 0
            assert has_hh2_cancellation(alg, cap=BAR_CAP)
            # closed form against the built basis: one parallel basis path
            # per arrow block
            blockcount = sum(
                alg.block_dim(a.target, a.source) for a in q.arrows
            )
            expected = 1 - q.n_vertices + blockcount
            assert hereditary_hh1(q) == expected == h1
            note_rigidity(alg)
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0, f"hereditary sweep took {elapsed:.1f}s"


def test_criterion_4_rad_square_zero(warmed_up, capsys):
    with verdict(capsys, 4, "100 seeded radical-square-zero: four closed formulas + cancellation criterion"):
        corpus = rad_square_zero_corpus(2024, count=100, max_vertices=5, max_arrows=7)
        assert len(corpus) == 100
        for pres in corpus:
            q = pres.quiver
            assert q.n_vertices <= 5 and q.n_arrows <= 7
            shape = classify_shape(q)
            assert shape.connected and shape.crown_order is None
            alg = build_algebra(pres)
            assert alg.nilpotency == 2

            loops = sum(1 for a in q.arrows if a.source == a.target)
            arrow_paths = [q.arrow_path(i) for i in range(q.n_arrows)]
            q1_q1 = len(parallel_pairs(arrow_paths, arrow_paths))
            q2_q1 = len(parallel_pairs(paths_of_length(q, 2), arrow_paths))

            tau = tau_hh1_dim_formula(alg)
            h1 = hh1_dim(alg)
            h2 = hom_relations_dim(alg) - hh1_kq_dim(alg) + h1
            e = tau - h1

            assert e == loops
            assert h1 == 1 - q.n_vertices + q1_q1
            assert h2 == q2_q1 - loops
            want = rad_square_zero_dims(q)
            assert (tau, h1, h2, e) == want

            cancel = has_hh2_cancellation(alg, cap=BAR_CAP)
            assert cancel == (q2_q1 == 0)
            note_rigidity(alg)


def test_criterion_5_three_route_tau(warmed_up, shared_corpus, capsys):
    with verdict(capsys, 5, "200 seeded admissible: three tau routes agree"):
        for pres in shared_corpus:
            alg = build_algebra(pres)
            z = center(alg).dim
            a = tau_hh1_dim_formula(alg, center_dim=z)
            b = tau_hh1_dim_coker(alg)
            c = hh1_kq_dim(alg)
            assert a == b == c, (a, b, c)


def test_criterion_6_exact_sequence_and_excess(warmed_up, shared_corpus, capsys):
    with verdict(capsys, 6, "200 seeded admissible: four-term alternating sum zero, excess routes agree, e>=0"):
        for pres in shared_corpus:
            alg = build_algebra(pres)
            tau = tau_hh1_dim_formula(alg)
            kq = hh1_kq_dim(alg)
            h1 = hh1_dim(alg)
            hom = hom_relations_dim(alg)
            h2 = hom - kq + h1
            assert h1 - kq + hom - h2 == 0
            e1 = tau - h1
            e2 = hom - h2
            assert e1 == e2
            assert e1 >= 0
            note_rigidity(alg)


def test_criterion_7_bar_oracle(warmed_up, shared_corpus, capsys):
    with verdict(capsys, 7, "bar complex under cap: delta*delta=0, HH0/HH1/HH2 match the direct routes"):
        checked = 0
        for pres in shared_corpus:
            alg = build_algebra(pres)
            cx = build_bar_complex(alg, max_degree=2, cap=BAR_CAP)
            assert cx.composition_is_zero()
            dims = cx.cohomology_dims(2)
            z = center(alg).dim
            h1 = hh1_dim(alg, center_dim=z)
            h2 = hom_relations_dim(alg) - hh1_kq_dim(alg) + h1
            assert dims[0] == z
            assert dims[1] == h1
            assert dims[2] == h2
            checked += 1
        assert checked == 200


def test_criterion_8_tree_criterion(warmed_up, capsys):
    with verdict(capsys, 8, "50 seeded triangular monomial: tree <=> HH1=0 <=> tauHH1=0"):
        corpus = triangular_corpus(2024, count=50)
        assert len(corpus) == 50
        trees = 0
        for pres in corpus:
            q = pres.quiver
            shape = classify_shape(q)
            assert shape.connected and shape.acyclic
            alg = build_algebra(pres)
            tau = tau_hh1_dim_formula(alg)
            h1 = hh1_dim(alg)
            predicates = (h1 == 0, shape.tree, tau == 0)
            assert len(set(predicates)) == 1, predicates
            if shape.tree:
                assert all(predicates)
                trees += 1
            # the closed-form route must see the same three predicates
            assert tree_criterion_predicates(pres) == (
                shape.tree,
                h1 == 0,
                tau == 0,
            )
            assert monomial_dims(pres)[:2] == (tau, h1)
            note_rigidity(alg)
        assert trees >= 1


def test_criterion_9_rigidity_equivalence(warmed_up, capsys):
    with verdict(capsys, 9, "all generated inputs: tauHH1=0 <=> (HH1=0 and HH2=Hom)"):
        assert len(RIGIDITY_WITNESSES) >= 350
        rigid_seen = 0
        for tau, h1, h2, hom in RIGIDITY_WITNESSES:
            assert (tau == 0) == (h1 == 0 and h2 == hom), (tau, h1, h2, hom)
            if tau == 0:
                rigid_seen += 1
        assert rigid_seen >= 1
