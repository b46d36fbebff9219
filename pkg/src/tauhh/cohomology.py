"""Cohomological invariants of bound quiver algebras.

Everything here reduces to exact linear algebra over the coefficient field:

* the tau-variant of the first Hochschild cohomology, computed three ways
  (graded-dimension formula, cokernel of the commutator map, first
  cohomology of the path algebra with coefficients in the quotient);
* the first cohomology via derivations modulo inner derivations;
* the bimodule hom space out of the relation bimodule;
* the second cohomology via the connecting four-term exact sequence;
* an independent oracle: the reduced bar complex relative to the vertex
  subalgebra, whose cochain spaces are spanned by composable tuples of
  radical basis paths paired with coefficient-module basis elements;
* the excess (two routes) and the derived rigidity/cancellation flags.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .algebra import (
    Algebra,
    QuotientBimodule,
    SubBimodule,
    bimodule_hom_dim,
    center,
    commutant_rows,
    normalized_relations,
    radical_power,
    relation_bimodule,
)
from .linalg import Matrix, rank_from_entries, rank_of_rows
from .quiver import Path


class RouteMismatchError(Exception):
    """Two supposedly equal computation routes disagreed (an internal bug)."""


class ComplexTooLargeError(Exception):
    """The bar complex exceeded the configured basis or memory cap."""


# ---------------------------------------------------------------------------
# commutator map and the three tau routes


@dataclass(frozen=True)
class CommutatorMap:
    """Matrix of lambda -> lambda*C - C*lambda on the diagonal part.

    Domain basis: diagonal algebra basis indices.  Codomain basis: pairs
    (arrow index, algebra basis index in the arrow's block).  The kernel is
    the center.
    """

    matrix: Matrix
    domain: tuple[int, ...]
    codomain: tuple[tuple[int, int], ...]


def commutator_map(alg: Algebra) -> CommutatorMap:
    rows, domain, codomain = commutant_rows(alg)
    if rows:
        m = Matrix.from_rows(alg.field, rows)
    else:
        m = Matrix(alg.field, ())
    return CommutatorMap(matrix=m, domain=tuple(domain), codomain=tuple(codomain))


def tau_hh1_dim_formula(alg: Algebra, center_dim: Optional[int] = None) -> int:
    """dim(center) - sum over vertices of dim xLx + sum over arrows of
    dim t(a)Ls(a), evaluated from the graded dimensions."""
    if center_dim is None:
        center_dim = center(alg).dim
    q = alg.quiver
    diag = sum(alg.block_dim(x, x) for x in range(q.n_vertices))
    arrow_blocks = sum(alg.block_dim(a.target, a.source) for a in q.arrows)
    return center_dim - diag + arrow_blocks


def tau_hh1_dim_coker(alg: Algebra) -> int:
    """Cokernel dimension of the commutator map."""
    cm = commutator_map(alg)
    n_cod = len(cm.codomain)
    if n_cod == 0:
        return 0
    rows = [list(r) for r in cm.matrix.entries]
    return n_cod - rank_of_rows(alg.field, rows)


def hh1_kq_dim(alg: Algebra) -> int:
    """First cohomology of the path algebra with coefficients in Lambda:
    cokernel of lambda -> (a . lambda_s(a) - lambda_t(a) . a) per arrow.

    Assembled independently of the commutator map (it differs by a sign in
    each arrow block); the value must agree with both tau routes.
    """
    field = alg.field
    q = alg.quiver
    domain = [i for i, p in enumerate(alg.basis) if p.source == p.target]
    cod_offset: dict[int, int] = {}
    n_cod = 0
    for a_idx, a in enumerate(q.arrows):
        cod_offset[a_idx] = n_cod
        n_cod += alg.block_dim(a.target, a.source)
    if n_cod == 0:
        return 0
    block_pos = {
        (a_idx, b): k
        for a_idx, a in enumerate(q.arrows)
        for k, b in enumerate(alg.block_indices(a.target, a.source))
    }
    entries = []
    for col, i in enumerate(domain):
        vx = alg.basis[i].source
        lam = {i: field.one}
        for a_idx, a in enumerate(q.arrows):
            acc: dict[int, object] = {}
            if a.source == vx:
                acc = alg.multiply(alg.arrow_class(a_idx), lam)
            if a.target == vx:
                for m, c in alg.multiply(lam, alg.arrow_class(a_idx)).items():
                    cur = field.sub(acc.get(m, field.zero), c)
                    if cur == field.zero:
                        acc.pop(m, None)
                    else:
                        acc[m] = cur
            for m, c in acc.items():
                entries.append((cod_offset[a_idx] + block_pos[(a_idx, m)], col, c))
    r = rank_from_entries(field, n_cod, len(domain), entries)
    return n_cod - r


# ---------------------------------------------------------------------------
# derivations and the first cohomology of Lambda


@dataclass(frozen=True)
class Derivation:
    """Arrow values d_a in t(a)Ls(a); extends by single-arrow replacement."""

    values: tuple  # per arrow: sparse element dict

    def value(self, arrow_idx: int) -> dict:
        return self.values[arrow_idx]


def _derivation_constraint_columns(alg: Algebra):
    """Unknowns (arrow, block basis element); columns of the constraint
    system expressing that the induced replacement map kills every relation
    generator in the algebra."""
    field = alg.field
    q = alg.quiver
    rels = normalized_relations(alg.presentation)
    unknowns: list[tuple[int, int]] = []
    for a_idx, a in enumerate(q.arrows):
        for b in alg.block_indices(a.target, a.source):
            unknowns.append((a_idx, b))
    columns = []
    for a_idx, g in unknowns:
        col: dict[tuple[int, int], object] = {}
        for r_idx, rel in enumerate(rels):
            acc: dict[int, object] = {}
            for coeff, term in rel.terms:
                arrows = term.arrows
                for k, alpha in enumerate(arrows):
                    if alpha != a_idx:
                        continue
                    prefix = arrows[:k]
                    suffix = arrows[k + 1 :]
                    pre_src = q.arrows[alpha].target
                    pre = alg.path_class(Path(pre_src, term.target, prefix))
                    suf_tgt = q.arrows[alpha].source
                    suf = alg.path_class(Path(term.source, suf_tgt, suffix))
                    piece = alg.multiply(alg.multiply(pre, {g: coeff}), suf)
                    for m, c in piece.items():
                        cur = field.add(acc.get(m, field.zero), c)
                        if cur == field.zero:
                            acc.pop(m, None)
                        else:
                            acc[m] = cur
            for m, c in acc.items():
                col[(r_idx, m)] = c
        columns.append(col)
    return unknowns, columns


def derivation_space_dim(alg: Algebra) -> int:
    """Dimension of the space of arrow-value tuples whose replacement
    extension vanishes on every relation generator."""
    unknowns, columns = _derivation_constraint_columns(alg)
    row_index: dict[tuple[int, int], int] = {}
    entries = []
    for col, colmap in enumerate(columns):
        for key, c in colmap.items():
            r = row_index.setdefault(key, len(row_index))
            entries.append((r, col, c))
    n_unknowns = len(unknowns)
    if n_unknowns == 0:
        return 0
    r = rank_from_entries(alg.field, len(row_index), n_unknowns, entries)
    return n_unknowns - r


def sample_derivations(alg: Algebra, limit: int = 4) -> list[Derivation]:
    """A few explicit solutions of the derivation constraints (for tests)."""
    unknowns, columns = _derivation_constraint_columns(alg)
    if not unknowns:
        return []
    row_index: dict[tuple[int, int], int] = {}
    for colmap in columns:
        for key in colmap:
            row_index.setdefault(key, len(row_index))
    rows = [[alg.field.zero] * len(unknowns) for _ in range(max(len(row_index), 1))]
    for col, colmap in enumerate(columns):
        for key, c in colmap.items():
            rows[row_index[key]][col] = c
    from .linalg import Matrix, kernel_basis

    m = Matrix.from_rows(alg.field, rows)
    out = []
    for vec in kernel_basis(m)[:limit]:
        values: list[dict] = [dict() for _ in alg.quiver.arrows]
        for (a_idx, g), c in zip(unknowns, vec):
            if c != alg.field.zero:
                values[a_idx][g] = c
        out.append(Derivation(values=tuple(values)))
    return out


def derivation_kills_relations(alg: Algebra, d: Derivation) -> bool:
    field = alg.field
    for rel in normalized_relations(alg.presentation):
        acc: dict[int, object] = {}
        for coeff, term in rel.terms:
            arrows = term.arrows
            for k, alpha in enumerate(arrows):
                da = d.value(alpha)
                if not da:
                    continue
                pre = alg.path_class(Path(alg.quiver.arrows[alpha].target, term.target, arrows[:k]))
                suf = alg.path_class(Path(term.source, alg.quiver.arrows[alpha].source, arrows[k + 1 :]))
                piece = alg.multiply(alg.multiply(pre, {m: field.mul(coeff, c) for m, c in da.items()}), suf)
                for m, c in piece.items():
                    cur = field.add(acc.get(m, field.zero), c)
                    if cur == field.zero:
                        acc.pop(m, None)
                    else:
                        acc[m] = cur
        if acc:
            return False
    return True


def hh1_dim(alg: Algebra, center_dim: Optional[int] = None) -> int:
    """dim of derivations minus inner derivations.

    Inner derivations have dimension (sum of diagonal block dims) - dim
    center, because the commutator map's kernel is exactly the center.
    """
    if center_dim is None:
        center_dim = center(alg).dim
    diag = sum(alg.block_dim(x, x) for x in range(alg.quiver.n_vertices))
    return derivation_space_dim(alg) - (diag - center_dim)


# ---------------------------------------------------------------------------
# the exact-sequence bookkeeping


def hom_relations_dim(alg: Algebra, rel_bimodule: Optional[QuotientBimodule] = None) -> int:
    """dim of bimodule maps from I/I^2 into the algebra."""
    if rel_bimodule is None:
        rel_bimodule = relation_bimodule(alg)
    return bimodule_hom_dim(alg, rel_bimodule, SubBimodule.full(alg))


def hh2_dim(alg: Algebra) -> int:
    """Second cohomology via the four-term exact sequence."""
    return hom_relations_dim(alg) - hh1_kq_dim(alg) + hh1_dim(alg)


def excess(alg: Algebra) -> int:
    """The gap between the tau-variant and the plain first cohomology,
    computed both as tau - HH1 and as Hom(I/I^2, Lambda) - HH2."""
    zdim = center(alg).dim
    h1 = hh1_dim(alg, center_dim=zdim)
    e1 = tau_hh1_dim_formula(alg, center_dim=zdim) - h1
    e2 = hom_relations_dim(alg) - hh2_dim(alg)
    if e1 != e2:
        raise RouteMismatchError(f"excess routes disagree: {e1} vs {e2}")
    if e1 < 0:
        raise RouteMismatchError(f"negative excess {e1}")
    return e1


# ---------------------------------------------------------------------------
# the relative reduced bar complex


@dataclass
class CochainComplex:
    """Cochain spaces C^0..C^J and differentials as sparse column maps.

    ``deltas[j]`` maps a C^j column index to a list of (C^{j+1} row, scalar).
    """

    field: object
    dims: tuple[int, ...]
    deltas: list[dict[int, list[tuple[int, object]]]]

    def delta_rank(self, j: int) -> int:
        if j < 0 or j >= len(self.deltas):
            return 0
        nrows = self.dims[j + 1]
        ncols = self.dims[j]
        if nrows == 0 or ncols == 0:
            return 0
        entries = [
            (r, c, v) for c, items in self.deltas[j].items() for r, v in items
        ]
        return rank_from_entries(self.field, nrows, ncols, entries)

    def cohomology_dims(self, max_degree: int) -> list[int]:
        out = []
        prev_rank = 0
        for j in range(max_degree + 1):
            rj = self.delta_rank(j)
            out.append(self.dims[j] - rj - prev_rank)
            prev_rank = rj
        return out

    def composition_is_zero(self) -> bool:
        field = self.field
        for j in range(len(self.deltas) - 1):
            nxt = self.deltas[j + 1]
            for col, items in self.deltas[j].items():
                acc: dict[int, object] = {}
                for mid, v in items:
                    for r, w in nxt.get(mid, ()):
                        cur = field.add(acc.get(r, field.zero), field.mul(v, w))
                        if cur == field.zero:
                            acc.pop(r, None)
                        else:
                            acc[r] = cur
                if acc:
                    return False
        return True


_DENSE_GUARD = 40_000_000


def _weighted_cochain_dims(alg: Algebra, m_dims: dict, depth: int) -> list[int]:
    """Dimensions of C^0..C^depth from the composable-tuple counting
    recursion, without materializing any tuples."""
    nv = alg.quiver.n_vertices
    counts = [[0] * nv for _ in range(nv)]
    for p in alg.basis:
        if p.length >= 1:
            counts[p.target][p.source] += 1
    level = counts
    out = [sum(m_dims.get((x, x), 0) for x in range(nv))]
    for j in range(1, depth + 1):
        if j > 1:
            nxt = [[0] * nv for _ in range(nv)]
            for y in range(nv):
                for z in range(nv):
                    c1 = counts[y][z]
                    if c1:
                        for x in range(nv):
                            nxt[y][x] += c1 * level[z][x]
            level = nxt
        out.append(
            sum(
                level[y][x] * m_dims.get((y, x), 0)
                for y in range(nv)
                for x in range(nv)
            )
        )
    return out


def bar_space_dims(
    alg: Algebra, coefficients: Optional[SubBimodule] = None, max_degree: int = 2
) -> list[int]:
    """Cochain space dimensions C^0..C^(max_degree+1); cheap, suitable for
    sizing checks before committing to a full bar computation."""
    m_mod = coefficients if coefficients is not None else SubBimodule.full(alg)
    return _weighted_cochain_dims(alg, m_mod.piece_dims(), max_degree + 1)


def build_bar_complex(
    alg: Algebra,
    coefficients: Optional[SubBimodule] = None,
    max_degree: int = 2,
    cap: int = 200_000,
) -> CochainComplex:
    """The reduced bar complex relative to the vertex span, through degree
    max_degree + 1 in the cochain direction.

    C^j is spanned by pairs (composable j-tuple of radical basis paths u,
    coefficient-module basis element compatible with the endpoints of u); the
    differential is the standard alternating sum, with the middle face using
    the multiplication table of the radical.
    """
    field = alg.field
    q = alg.quiver
    m_mod = coefficients if coefficients is not None else SubBimodule.full(alg)
    if not m_mod.is_closed_under_action():
        raise ValueError("bar coefficients must be closed under both actions")
    depth = max_degree + 1

    r_basis = [i for i, p in enumerate(alg.basis) if p.length >= 1]
    m_dims = m_mod.piece_dims()
    nv = q.n_vertices

    # weighted size estimate before materializing anything
    weighted = _weighted_cochain_dims(alg, m_dims, depth)
    if weighted[-1] > cap:
        raise ComplexTooLargeError(
            f"top cochain space would have dimension {weighted[-1]} > cap {cap}"
        )
    for j in range(len(weighted) - 1):
        if weighted[j] * weighted[j + 1] > _DENSE_GUARD:
            raise ComplexTooLargeError(
                "differential matrix would exceed the dense memory guard"
            )

    # tuples per level, ordered lexicographically by basis index
    tuples: list[list[tuple[int, ...]]] = [[]]
    tuples.append([(i,) for i in r_basis])
    for j in range(2, depth + 1):
        prev = tuples[j - 1]
        cur = []
        for i in r_basis:
            src = alg.basis[i].source
            for t in prev:
                if alg.basis[t[0]].target == src:
                    cur.append((i,) + t)
        tuples.append(cur)

    def tuple_block(t: tuple[int, ...]) -> tuple[int, int]:
        return (alg.basis[t[0]].target, alg.basis[t[-1]].source)

    # offsets of each (tuple, m-element) family inside C^j
    offsets: list[dict] = []
    dims: list[int] = []
    # degree 0: one family per vertex
    off0: dict[int, int] = {}
    total = 0
    for x in range(nv):
        off0[x] = total
        total += m_dims.get((x, x), 0)
    offsets.append(off0)
    dims.append(total)
    for j in range(1, depth + 1):
        offj: dict[tuple[int, ...], int] = {}
        total = 0
        for t in tuples[j]:
            offj[t] = total
            total += m_dims.get(tuple_block(t), 0)
        offsets.append(offj)
        dims.append(total)

    # multiplication table of the radical basis, for the middle faces:
    # for each radical basis element m, the pairs (y, z, coeff) with
    # coefficient of m in y*z nonzero
    comult: dict[int, list[tuple[int, int, object]]] = {}
    for y in r_basis:
        sy = alg.basis[y].source
        for z in r_basis:
            if alg.basis[z].target != sy:
                continue
            for m, c in alg.mul_basis(y, z).items():
                comult.setdefault(m, []).append((y, z, c))

    m_basis_vecs: dict[tuple[int, int], list[dict]] = {}

    def m_basis(block):
        got = m_basis_vecs.get(block)
        if got is None:
            got = []
            for v in m_mod.piece_basis(*block):
                got.append({i: c for i, c in enumerate(v) if c != field.zero})
            m_basis_vecs[block] = got
        return got

    deltas: list[dict[int, list[tuple[int, object]]]] = []

    # delta^0: m |-> (u -> u.m - m.u)
    d0: dict[int, list[tuple[int, object]]] = {}
    for x in range(nv):
        for w_idx, w in enumerate(m_basis((x, x)) if (x, x) in m_dims else []):
            col = offsets[0][x] + w_idx
            items: list[tuple[int, object]] = []
            for u in r_basis:
                pu = alg.basis[u]
                block_u = (pu.target, pu.source)
                if m_dims.get(block_u, 0) == 0:
                    continue
                acc: dict[int, object] = {}
                if pu.source == x:
                    acc = alg.multiply({u: field.one}, w)
                if pu.target == x:
                    for m, c in alg.multiply(w, {u: field.one}).items():
                        cur = field.sub(acc.get(m, field.zero), c)
                        if cur == field.zero:
                            acc.pop(m, None)
                        else:
                            acc[m] = cur
                if not acc:
                    continue
                coords = m_mod.express_in_piece(*block_u, acc)
                base = offsets[1][(u,)]
                for ci, c in enumerate(coords):
                    if c != field.zero:
                        items.append((base + ci, c))
            if items:
                d0[col] = items
    deltas.append(d0)

    # delta^j for j >= 1
    for j in range(1, depth):
        dj: dict[int, list[tuple[int, object]]] = {}
        sign_last = field.one if (j + 1) % 2 == 0 else field.neg(field.one)
        for t in tuples[j]:
            block_t = tuple_block(t)
            dmt = m_dims.get(block_t, 0)
            if dmt == 0:
                continue
            base_col = offsets[j][t]
            first = alg.basis[t[0]]
            last = alg.basis[t[-1]]
            for w_idx, w in enumerate(m_basis(block_t)):
                col = base_col + w_idx
                items: list[tuple[int, object]] = []
                # front face: extend on the left, multiply the value
                for y in r_basis:
                    py = alg.basis[y]
                    if py.source != first.target:
                        continue
                    s = (y,) + t
                    block_s = (py.target, block_t[1])
                    if m_dims.get(block_s, 0) == 0:
                        continue
                    img = alg.multiply({y: field.one}, w)
                    if not img:
                        continue
                    coords = m_mod.express_in_piece(*block_s, img)
                    base = offsets[j + 1][s]
                    for ci, c in enumerate(coords):
                        if c != field.zero:
                            items.append((base + ci, c))
                # back face: extend on the right
                for z in r_basis:
                    pz = alg.basis[z]
                    if pz.target != last.source:
                        continue
                    s = t + (z,)
                    block_s = (block_t[0], pz.source)
                    if m_dims.get(block_s, 0) == 0:
                        continue
                    img = alg.multiply(w, {z: field.one})
                    if not img:
                        continue
                    coords = m_mod.express_in_piece(*block_s, img)
                    base = offsets[j + 1][s]
                    for ci, c in enumerate(coords):
                        if c != field.zero:
                            items.append((base + ci, sign_last if c == field.one else field.mul(sign_last, c)))
                # middle faces: split position pos into a composable pair
                for pos in range(j):
                    mergers = comult.get(t[pos])
                    if not mergers:
                        continue
                    sign = field.one if (pos + 1) % 2 == 0 else field.neg(field.one)
                    for y, z, c in mergers:
                        s = t[:pos] + (y, z) + t[pos + 1 :]
                        base = offsets[j + 1].get(s)
                        if base is None:
                            continue
                        items.append((base + w_idx, field.mul(sign, c)))
                if items:
                    # combine duplicate rows
                    merged: dict[int, object] = {}
                    for r, c in items:
                        cur = field.add(merged.get(r, field.zero), c)
                        if cur == field.zero:
                            merged.pop(r, None)
                        else:
                            merged[r] = cur
                    if merged:
                        dj[col] = sorted(merged.items())
        deltas.append(dj)

    return CochainComplex(field=field, dims=tuple(dims), deltas=deltas)


def bar_cohomology_dims(
    alg: Algebra,
    coefficients: Optional[SubBimodule] = None,
    max_degree: int = 2,
    cap: int = 200_000,
) -> list[int]:
    """Cohomology dimensions of the relative bar complex in degrees
    0..max_degree."""
    cx = build_bar_complex(alg, coefficients, max_degree=max_degree, cap=cap)
    return cx.cohomology_dims(max_degree)


def has_hh2_cancellation(alg: Algebra, cap: int = 200_000) -> bool:
    """True when bar HH^2 vanishes with coefficients in the algebra and in
    every nonzero radical power."""
    if bar_cohomology_dims(alg, max_degree=2, cap=cap)[2] != 0:
        return False
    for i in range(1, alg.nilpotency):
        ri = radical_power(alg, i)
        if ri.dim == 0:
            continue
        if bar_cohomology_dims(alg, ri, max_degree=2, cap=cap)[2] != 0:
            return False
    return True


def is_tau_rigid(alg: Algebra) -> bool:
    """True iff the tau-variant of the first cohomology vanishes; also checks
    the equivalent characterization through HH1, HH2, and the relation homs."""
    zdim = center(alg).dim
    tau = tau_hh1_dim_formula(alg, center_dim=zdim)
    flag = tau == 0
    h1 = hh1_dim(alg, center_dim=zdim)
    hom = hom_relations_dim(alg)
    h2 = hh2_dim(alg)
    other = h1 == 0 and h2 == hom
    if flag != other:
        raise RouteMismatchError(
            f"rigidity characterization failed: tau={tau}, hh1={h1},"
            f" hh2={h2}, hom={hom}"
        )
    return flag


# ---------------------------------------------------------------------------
# the full report


@dataclass
class InvariantRow:
    name: str
    value: object
    routes: list[tuple[str, object]]
    agree: bool


@dataclass
class InvariantReport:
    rows: list[InvariantRow] = dc_field(default_factory=list)
    exact_sequence_ok: bool = True
    bar_skipped: Optional[str] = None

    @property
    def all_agree(self) -> bool:
        return self.exact_sequence_ok and all(r.agree for r in self.rows)

    def row(self, name: str) -> InvariantRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


def compute_invariants(
    alg: Algebra, with_bar: bool = True, bar_cap: int = 200_000
) -> InvariantReport:
    """All invariants with their multi-route agreement flags.

    The bar routes are skipped (and noted) when the complex exceeds the cap;
    all other routes always run.
    """
    report = InvariantReport()
    zdim = center(alg).dim
    tau_formula = tau_hh1_dim_formula(alg, center_dim=zdim)
    tau_coker = tau_hh1_dim_coker(alg)
    tau_kq = hh1_kq_dim(alg)
    h1 = hh1_dim(alg, center_dim=zdim)
    hom = hom_relations_dim(alg)
    h2 = hom - tau_kq + h1

    bar: Optional[list[int]] = None
    if with_bar:
        try:
            bar = bar_cohomology_dims(alg, max_degree=2, cap=bar_cap)
        except ComplexTooLargeError as exc:
            report.bar_skipped = str(exc)

    zc_routes = [("commutant_kernel", zdim)]
    if bar is not None:
        zc_routes.append(("bar_h0", bar[0]))
    report.rows.append(
        InvariantRow(
            "dim_center",
            zdim,
            zc_routes,
            all(v == zdim for _, v in zc_routes),
        )
    )

    tau_routes = [
        ("graded_formula", tau_formula),
        ("commutator_cokernel", tau_coker),
        ("path_algebra_h1", tau_kq),
    ]
    report.rows.append(
        InvariantRow(
            "tau_hh1",
            tau_formula,
            tau_routes,
            tau_formula == tau_coker == tau_kq,
        )
    )

    h1_routes = [("derivations", h1)]
    if bar is not None:
        h1_routes.append(("bar_complex", bar[1]))
    report.rows.append(
        InvariantRow("hh1", h1, h1_routes, all(v == h1 for _, v in h1_routes))
    )

    report.rows.append(
        InvariantRow("hom_relations", hom, [("truncated_span", hom)], True)
    )

    h2_routes = [("connecting_sequence", h2)]
    if bar is not None:
        h2_routes.append(("bar_complex", bar[2]))
    report.rows.append(
        InvariantRow("hh2", h2, h2_routes, all(v == h2 for _, v in h2_routes))
    )

    e1 = tau_formula - h1
    e2 = hom - h2
    report.rows.append(
        InvariantRow(
            "excess",
            e1,
            [("tau_minus_h1", e1), ("hom_minus_h2", e2)],
            e1 == e2 and e1 >= 0,
        )
    )

    rigid = tau_formula == 0
    rigid_other = h1 == 0 and h2 == hom
    report.rows.append(
        InvariantRow(
            "tau_rigid",
            rigid,
            [("tau_vanishes", rigid), ("characterization", rigid_other)],
            rigid == rigid_other,
        )
    )

    if with_bar and report.bar_skipped is None:
        cancel = None
        try:
            cancel = has_hh2_cancellation(alg, cap=bar_cap)
        except ComplexTooLargeError as exc:
            report.bar_skipped = str(exc)
        if cancel is not None:
            report.rows.append(
                InvariantRow("hh2_cancellation", cancel, [("bar_complex", cancel)], True)
            )

    # four-term exact sequence bookkeeping (h2 is defined by it, so check
    # against the bar value when available)
    report.exact_sequence_ok = (h1 - tau_kq + hom - h2) == 0
    return report
