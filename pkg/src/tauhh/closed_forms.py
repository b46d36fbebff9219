"""Closed-form invariants for special families, and their cross-validation
against the general machinery.

Families covered:

* hereditary algebras (no relations) on connected acyclic quivers;
* radical-square-zero algebras on connected non-crown quivers, where
  everything counts parallel pairs of arrows and short paths;
* crowns (oriented cycles modulo all length-two paths), where the answers
  depend only on the order and the characteristic;
* triangular monomial algebras, where the pair classification by the
  single-occurrence replacement test splits the parallel (arrow, basis
  path) pairs into a uniform and a non-uniform part.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import Algebra, center, normalized_relations
from .cohomology import hh1_dim, hh2_dim, tau_hh1_dim_formula
from .dsl import Presentation
from .quiver import (
    Path,
    Quiver,
    classify_shape,
    connected_component_count,
    enumerate_paths,
    parallel_pairs,
    paths_of_length,
)


class NotAcyclicError(ValueError):
    pass


class NotConnectedError(ValueError):
    pass


class IsCrownError(ValueError):
    pass


class NotMonomialError(ValueError):
    pass


class NotTriangularError(NotAcyclicError):
    pass


# ---------------------------------------------------------------------------
# hereditary


def hereditary_hh1(q: Quiver) -> int:
    """First cohomology of a path algebra on a connected acyclic quiver:
    1 - #vertices + sum over arrows of the number of parallel paths."""
    shape = classify_shape(q)
    if not shape.acyclic:
        raise NotAcyclicError("hereditary closed form wants an acyclic quiver")
    if not shape.connected:
        raise NotConnectedError("hereditary closed form wants a connected quiver")
    paths = enumerate_paths(q, q.n_vertices)
    arrows = [q.arrow_path(i) for i in range(q.n_arrows)]
    return 1 - q.n_vertices + len(parallel_pairs(arrows, paths))


# ---------------------------------------------------------------------------
# radical square zero


def rad_square_zero_dims(q: Quiver) -> tuple[int, int, int, int]:
    """(tau-HH1, HH1, HH2, excess) for kQ modulo all length-two paths,
    on a connected quiver that is not a crown.

    Everything is counted by parallel pairs: loops (arrows parallel to a
    vertex), ordered pairs of parallel arrows, and length-two paths parallel
    to an arrow.  The excess equals the number of loops.
    """
    shape = classify_shape(q)
    if not shape.connected:
        raise NotConnectedError("radical-square-zero closed form wants a connected quiver")
    if shape.crown_order is not None:
        raise IsCrownError("crowns follow their own closed form")
    arrows = [q.arrow_path(i) for i in range(q.n_arrows)]
    trivials = [q.trivial_path(v) for v in range(q.n_vertices)]
    loops = len(parallel_pairs(arrows, trivials))
    arrow_pairs = len(parallel_pairs(arrows, arrows))
    two_over_one = len(parallel_pairs(paths_of_length(q, 2), arrows))
    tau = 1 - q.n_vertices + loops + arrow_pairs
    h1 = 1 - q.n_vertices + arrow_pairs
    h2 = two_over_one - loops
    return tau, h1, h2, loops


# ---------------------------------------------------------------------------
# crowns


def crown_dims(c: int, characteristic: int) -> tuple[int, int, int]:
    """(tau-HH1, HH1, excess) of the order-c crown with all length-two
    paths killed.  Only the loop case feels the characteristic."""
    if c < 1:
        raise ValueError("crown order must be positive")
    if c == 1:
        if characteristic == 2:
            return 2, 2, 0
        return 2, 1, 1
    return 1, 1, 0


# ---------------------------------------------------------------------------
# triangular monomial


@dataclass(frozen=True)
class MonomialClassification:
    """Parallel (arrow, basis path) pairs split by the replacement test.

    A pair is uniform when replacing any single occurrence of the arrow in
    any relation path by the parallel path always yields a path that again
    vanishes (contains a relation path as a factor); otherwise some
    replacement survives in the basis and the pair is non-uniform.
    """

    forbidden: tuple[tuple[int, ...], ...]
    pairs: tuple[tuple[int, Path], ...]
    uniform: tuple[tuple[int, Path], ...]
    non_uniform: tuple[tuple[int, Path], ...]

    def non_uniform_labels(self, q: Quiver) -> list[tuple[str, str]]:
        return [(q.arrows[a].name, q.path_str(g)) for a, g in self.non_uniform]


def _monomial_data(pres: Presentation):
    q = pres.quiver
    shape = classify_shape(q)
    if not shape.acyclic:
        raise NotTriangularError("monomial closed form wants an acyclic quiver")
    rels = normalized_relations(pres)
    if any(not r.is_monomial for r in rels):
        raise NotMonomialError("monomial closed form wants monomial relations")
    forbidden = tuple(r.terms[0][1].arrows for r in rels)

    def survives(arrows: tuple[int, ...]) -> bool:
        for f in forbidden:
            for k in range(len(arrows) - len(f) + 1):
                if arrows[k : k + len(f)] == f:
                    return False
        return True

    basis = [p for p in enumerate_paths(q, q.n_vertices) if survives(p.arrows)]
    return shape, forbidden, survives, basis


def monomial_classification(pres: Presentation) -> MonomialClassification:
    q = pres.quiver
    shape, forbidden, survives, basis = _monomial_data(pres)
    pairs = []
    for a_idx in range(q.n_arrows):
        ap = q.arrow_path(a_idx)
        for _, g in parallel_pairs([ap], basis):
            pairs.append((a_idx, g))
    uniform = []
    non_uniform = []
    for a_idx, g in pairs:
        ok = True
        for f in forbidden:
            for k, alpha in enumerate(f):
                if alpha != a_idx:
                    continue
                replaced = f[:k] + g.arrows + f[k + 1 :]
                if survives(replaced):
                    ok = False
                    break
            if not ok:
                break
        (uniform if ok else non_uniform).append((a_idx, g))
    return MonomialClassification(
        forbidden=forbidden,
        pairs=tuple(pairs),
        uniform=tuple(uniform),
        non_uniform=tuple(non_uniform),
    )


def monomial_dims(pres: Presentation) -> tuple[int, int, int]:
    """(tau-HH1, HH1, excess) of a triangular monomial algebra.

    The center of a triangular algebra has one dimension per connected
    component; the uniform pairs count HH1 and all pairs count the tau
    variant, so the non-uniform pairs count the excess exactly.
    """
    cls = monomial_classification(pres)
    q = pres.quiver
    zdim = connected_component_count(q)
    tau = zdim - q.n_vertices + len(cls.pairs)
    h1 = zdim - q.n_vertices + len(cls.uniform)
    return tau, h1, len(cls.non_uniform)


def tree_criterion_predicates(pres: Presentation) -> tuple[bool, bool, bool]:
    """(quiver is a tree, HH1 vanishes, tau-HH1 vanishes) for a connected
    triangular monomial algebra; the three are equivalent."""
    q = pres.quiver
    shape = classify_shape(q)
    if not shape.connected:
        raise NotConnectedError("tree criterion wants a connected quiver")
    tau, h1, _ = monomial_dims(pres)
    return shape.tree, h1 == 0, tau == 0


# ---------------------------------------------------------------------------
# cross-validation against the general machinery


@dataclass(frozen=True)
class ClosedFormRow:
    family: str
    quantity: str
    closed_value: object
    machine_value: object

    @property
    def agree(self) -> bool:
        return self.closed_value == self.machine_value


@dataclass
class ClosedFormReport:
    families: list[str] = dc_field(default_factory=list)
    rows: list[ClosedFormRow] = dc_field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return all(r.agree for r in self.rows)

    def mismatches(self) -> list[ClosedFormRow]:
        return [r for r in self.rows if not r.agree]


def cross_validate(alg: Algebra) -> ClosedFormReport:
    """Evaluate every applicable closed form and compare it with the
    machinery.  Disagreements are reported, not raised."""
    report = ClosedFormReport()
    q = alg.quiver
    shape = classify_shape(q)
    rels = normalized_relations(alg.presentation)

    machine: dict[str, int] = {}

    def machine_value(name: str) -> int:
        if name not in machine:
            zdim = center(alg).dim
            machine["tau_hh1"] = tau_hh1_dim_formula(alg, center_dim=zdim)
            machine["hh1"] = hh1_dim(alg, center_dim=zdim)
            machine["hh2"] = hh2_dim(alg)
            machine["excess"] = machine["tau_hh1"] - machine["hh1"]
        return machine[name]

    def compare(family: str, quantity: str, closed_value) -> None:
        report.rows.append(
            ClosedFormRow(family, quantity, closed_value, machine_value(quantity))
        )

    if not rels and shape.connected and shape.acyclic:
        report.families.append("hereditary")
        h1 = hereditary_hh1(q)
        compare("hereditary", "hh1", h1)
        compare("hereditary", "tau_hh1", h1)
        compare("hereditary", "excess", 0)
        compare("hereditary", "hh2", 0)

    # nilpotency two already pins the ideal down to all length-two paths,
    # whatever generating set the presentation used
    if alg.nilpotency == 2 and shape.connected and shape.crown_order is None:
        report.families.append("radical_square_zero")
        tau, h1, h2, e = rad_square_zero_dims(q)
        compare("radical_square_zero", "tau_hh1", tau)
        compare("radical_square_zero", "hh1", h1)
        compare("radical_square_zero", "hh2", h2)
        compare("radical_square_zero", "excess", e)

    if shape.crown_order is not None and alg.nilpotency == 2:
        report.families.append("crown")
        tau, h1, e = crown_dims(shape.crown_order, alg.field.characteristic)
        compare("crown", "tau_hh1", tau)
        compare("crown", "hh1", h1)
        compare("crown", "excess", e)

    if shape.acyclic and all(r.is_monomial for r in rels):
        report.families.append("triangular_monomial")
        tau, h1, e = monomial_dims(alg.presentation)
        compare("triangular_monomial", "tau_hh1", tau)
        compare("triangular_monomial", "hh1", h1)
        compare("triangular_monomial", "excess", e)

    return report
