from __future__ import annotations

import pytest

from tauhh.dsl import parse_presentation
from tauhh.linalg import QQ, GF


TWO_PARALLEL_THEN_ONE = """
field Q
vertices 3
arrow a v1 v2
arrow b v1 v2
arrow c v2 v3
"""

# commutative-square-like quiver on 4 vertices with a shortcut arrow d
SQUARE_WITH_SHORTCUT = """
field Q
vertices 4
arrow a v1 v2
arrow b v2 v3
arrow c v3 v4
arrow d v2 v4
"""

DUAL_NUMBERS = """
field Q
vertices 1
arrow x v1 v1
relations
x*x
"""

KRONECKER = """
field Q
vertices 2
arrow a v1 v2
arrow b v1 v2
"""


def presentation_with_relations(base: str, *relation_lines: str):
    text = base.rstrip() + "\nrelations\n" + "\n".join(relation_lines) + "\n"
    return parse_presentation(text)


@pytest.fixture
def q_with_ca():
    """Two parallel arrows followed by one, bound by the composite c*a."""
    return presentation_with_relations(TWO_PARALLEL_THEN_ONE, "c*a")


@pytest.fixture
def square_with_ba():
    return presentation_with_relations(SQUARE_WITH_SHORTCUT, "b*a")


@pytest.fixture
def square_with_da():
    return presentation_with_relations(SQUARE_WITH_SHORTCUT, "d*a")


@pytest.fixture
def dual_numbers():
    return parse_presentation(DUAL_NUMBERS)


@pytest.fixture
def kronecker():
    return parse_presentation(KRONECKER)
