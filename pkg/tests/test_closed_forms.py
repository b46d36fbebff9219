"""Closed forms for the special families, including the pair classification
for triangular monomial algebras and the cross-validation report."""

import pytest

from tauhh.algebra import build_algebra
from tauhh.closed_forms import (
    IsCrownError,
    NotAcyclicError,
    NotConnectedError,
    NotMonomialError,
    cross_validate,
    crown_dims,
    hereditary_hh1,
    monomial_classification,
    monomial_dims,
    rad_square_zero_dims,
    tree_criterion_predicates,
)
from tauhh.dsl import parse_presentation
from tauhh.linalg import GF
from tauhh.quiver import Quiver, crown_quiver

from conftest import (
    KRONECKER,
    SQUARE_WITH_SHORTCUT,
    TWO_PARALLEL_THEN_ONE,
    presentation_with_relations,
)
from test_cohomology import A3_RAD_SQUARE, crown_presentation


class TestHereditary:
    def test_values(self, kronecker):
        assert hereditary_hh1(kronecker.quiver) == 3
        square = parse_presentation(SQUARE_WITH_SHORTCUT)
        # 12 paths, 5 arrow-parallel (arrow, path) pairs: the four identical
        # ones plus (d, c*b)
        assert hereditary_hh1(square.quiver) == 1 - 4 + 5

    def test_line_quiver_is_rigid(self):
        q = Quiver(["x", "y", "z"], [("a", "x", "y"), ("b", "y", "z")])
        assert hereditary_hh1(q) == 0

    def test_rejects_bad_shapes(self):
        loop = Quiver(["v"], [("x", "v", "v")])
        with pytest.raises(NotAcyclicError):
            hereditary_hh1(loop)
        two = Quiver(["u", "v"], [])
        with pytest.raises(NotConnectedError):
            hereditary_hh1(two)


class TestRadSquareZero:
    def test_kronecker(self, kronecker):
        assert rad_square_zero_dims(kronecker.quiver) == (3, 3, 0, 0)

    def test_line(self):
        q = Quiver(["x", "y", "z"], [("a", "x", "y"), ("b", "y", "z")])
        assert rad_square_zero_dims(q) == (0, 0, 0, 0)

    def test_two_loops_on_one_vertex(self):
        q = Quiver(["v"], [("x", "v", "v"), ("y", "v", "v")])
        tau, h1, h2, e = rad_square_zero_dims(q)
        assert e == 2
        assert tau - h1 == 2
        # four length-two paths, each parallel to both loops
        assert h2 == 8 - 2

    def test_crown_rejected(self):
        with pytest.raises(IsCrownError):
            rad_square_zero_dims(crown_quiver(3))


class TestCrowns:
    def test_table(self):
        assert crown_dims(1, 0) == (2, 1, 1)
        assert crown_dims(1, 2) == (2, 2, 0)
        assert crown_dims(1, 3) == (2, 1, 1)
        for c in (2, 3, 5):
            assert crown_dims(c, 0) == (1, 1, 0)
            assert crown_dims(c, 2) == (1, 1, 0)


class TestMonomial:
    def test_classification_rows(self, q_with_ca, square_with_ba, square_with_da):
        rows = [
            # (presentation, tau, hh1, excess, non-uniform pair names)
            (q_with_ca, 3, 2, 1, [("a", "b")]),
            (square_with_ba, 2, 2, 0, []),
            (square_with_da, 2, 1, 1, [("d", "c*b")]),
        ]
        for pres, tau, h1, e, nu in rows:
            assert monomial_dims(pres) == (tau, h1, e)
            cls = monomial_classification(pres)
            assert cls.non_uniform_labels(pres.quiver) == nu

    def test_identity_pairs_are_uniform(self, q_with_ca):
        cls = monomial_classification(q_with_ca)
        for a_idx in range(q_with_ca.quiver.n_arrows):
            ap = q_with_ca.quiver.arrow_path(a_idx)
            assert (a_idx, ap) in cls.uniform

    def test_hereditary_counts_as_monomial(self, kronecker):
        assert monomial_dims(kronecker) == (3, 3, 0)

    def test_rejects_non_monomial_and_cycles(self, dual_numbers):
        pres = presentation_with_relations(SQUARE_WITH_SHORTCUT, "c*b*a - d*a")
        with pytest.raises(NotMonomialError):
            monomial_dims(pres)
        with pytest.raises(NotAcyclicError):
            monomial_dims(dual_numbers)

    def test_tree_criterion(self):
        tree = parse_presentation(A3_RAD_SQUARE)
        assert tree_criterion_predicates(tree) == (True, True, True)
        nontree = presentation_with_relations(TWO_PARALLEL_THEN_ONE, "c*a")
        assert tree_criterion_predicates(nontree) == (False, False, False)


class TestCrossValidate:
    def test_families_detected(self, q_with_ca, kronecker, dual_numbers):
        rep = cross_validate(build_algebra(q_with_ca))
        assert rep.families == ["triangular_monomial"]
        assert rep.all_agree

        rep = cross_validate(build_algebra(kronecker))
        assert set(rep.families) == {
            "hereditary",
            "radical_square_zero",
            "triangular_monomial",
        }
        assert rep.all_agree

        rep = cross_validate(build_algebra(dual_numbers))
        assert rep.families == ["crown"]
        assert rep.all_agree

    def test_crowns_cross_validate(self):
        for c in (1, 2, 3, 4):
            for field in (None, GF(2)):
                alg = build_algebra(crown_presentation(c, field))
                rep = cross_validate(alg)
                assert rep.families == ["crown"]
                assert rep.all_agree, rep.mismatches()

    def test_rad_square_zero_cross_validates(self):
        alg = build_algebra(parse_presentation(A3_RAD_SQUARE))
        rep = cross_validate(alg)
        assert "radical_square_zero" in rep.families
        assert "triangular_monomial" in rep.families
        assert rep.all_agree

    def test_two_loop_rad_square_zero(self):
        pres = parse_presentation(
            "field Q\nvertices 1\n"
            "arrow x v1 v1\narrow y v1 v1\n"
            "relations\nx*x\nx*y\ny*x\ny*y\n"
        )
        rep = cross_validate(build_algebra(pres))
        assert rep.families == ["radical_square_zero"]
        assert rep.all_agree, rep.mismatches()

    def test_square_with_both_relations(self):
        pres = presentation_with_relations(SQUARE_WITH_SHORTCUT, "b*a", "d*a")
        rep = cross_validate(build_algebra(pres))
        assert rep.families == ["triangular_monomial"]
        assert rep.all_agree, rep.mismatches()
