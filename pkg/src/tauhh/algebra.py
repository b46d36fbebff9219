"""Bound quiver algebras over an exact field.

Given a presentation (quiver, field, uniform relations with paths of length
at least two), :func:`build_algebra` finds the least n with F^n contained in
the relation ideal I, where F is the arrow ideal, and constructs the quotient
algebra with a normal-form path basis.  Ideal membership is decided by exact
echelon reduction over finite truncations of the path space: admissibility
guarantees a finite truncation degree is enough, so no Groebner machinery is
needed.

The nilpotency search accepts L as soon as every path of length L reduces to
zero modulo the ideal span truncated below L + (max relation length).  That
certificate is exact for admissible ideals: a spurious acceptance would need
the ideal plus arbitrarily long tails to stabilize without the ideal itself
containing a power of F, which cannot happen once some F^m lies in I.  Inputs
whose ideal is genuinely not admissible either exhaust the length cap (and
raise) or, for ideals like (x*x - x*x*x) whose tails stabilize early, are
reported as the admissible quotient at the first stabilizing bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dsl import Presentation, Relation
from .linalg import Field, RowReducer
from .quiver import Path, Quiver, enumerate_paths, path_sort_key


class NotAdmissibleError(Exception):
    """No nilpotency degree within the length cap."""


class EmptyQuiverError(ValueError):
    """The presentation has no vertices."""


class SpanTooLargeError(RuntimeError):
    """A truncated path span exceeded the defensive size guard."""


_PATH_GUARD = 200_000


@dataclass(frozen=True)
class NormalizedRelation:
    """Relation with coefficients mapped into the field.

    Zero terms are dropped, single-path relations are scaled to coefficient
    one, and monomial generators containing another monomial generator as a
    contiguous subpath are deleted (they are redundant as ideal generators).
    """

    source: int
    target: int
    terms: tuple  # ((scalar, Path), ...)

    @property
    def min_length(self) -> int:
        return min(p.length for _, p in self.terms)

    @property
    def max_length(self) -> int:
        return max(p.length for _, p in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1


def _contains_subpath(big: tuple, small: tuple) -> bool:
    m = len(small)
    return any(big[i : i + m] == small for i in range(len(big) - m + 1))


def normalized_relations(pres: Presentation) -> tuple[NormalizedRelation, ...]:
    field = pres.field
    mapped: list[NormalizedRelation] = []
    for rel in pres.relations:
        terms = []
        for coeff, path in rel.terms:
            c = field.of(coeff)
            if c != field.zero:
                terms.append((c, path))
        if not terms:
            continue
        if len(terms) == 1:
            terms = [(field.one, terms[0][1])]
        mapped.append(
            NormalizedRelation(source=rel.source, target=rel.target, terms=tuple(terms))
        )
    # minimality of the monomial part: drop monomial generators containing
    # another monomial generator as a subpath
    mono_paths = [r.terms[0][1].arrows for r in mapped if r.is_monomial]
    out = []
    for r in mapped:
        if r.is_monomial:
            arrows = r.terms[0][1].arrows
            if any(
                other != arrows and _contains_subpath(arrows, other)
                for other in mono_paths
            ):
                continue
        out.append(r)
    return tuple(out)


def _bucket_paths(paths: Iterable[Path]):
    by_source: dict[int, list[Path]] = {}
    by_target: dict[int, list[Path]] = {}
    for p in paths:
        by_source.setdefault(p.source, []).append(p)
        by_target.setdefault(p.target, []).append(p)
    return by_source, by_target


def _truncated_ideal_reducer(
    field: Field,
    rels: Sequence[NormalizedRelation],
    bound: int,
    paths: Sequence[Path],
) -> tuple[RowReducer, list[Path], dict[Path, int]]:
    """Echelonize the span of all p*r*q truncated below ``bound``.

    Columns are the paths of length 2..bound-1 ordered longest first, so the
    eliminated (pivot) path of each ideal element is its (length, lex)-largest
    path and normal forms prefer short paths.
    """
    cols = sorted(
        (p for p in paths if p.length >= 2), key=path_sort_key, reverse=True
    )
    col_index = {p: i for i, p in enumerate(cols)}
    red = RowReducer(field, len(cols))
    by_source, by_target = _bucket_paths(paths)
    zero = field.zero
    for rel in rels:
        minlen = rel.min_length
        for p in by_source.get(rel.target, ()):
            room = bound - 1 - minlen - p.length
            if room < 0:
                continue
            for q in by_target.get(rel.source, ()):
                if q.length > room:
                    continue
                vec = [zero] * len(cols)
                nonzero = False
                for coeff, term in rel.terms:
                    if p.length + term.length + q.length >= bound:
                        continue
                    full = Path(q.source, p.target, p.arrows + term.arrows + q.arrows)
                    c = col_index[full]
                    vec[c] = field.add(vec[c], coeff)
                    nonzero = True
                if nonzero:
                    red.add(vec)
    return red, cols, col_index


def _enumerate_guarded(q: Quiver, max_length: int, what: str) -> list[Path]:
    paths = enumerate_paths(q, max_length)
    if len(paths) > _PATH_GUARD:
        raise SpanTooLargeError(
            f"{what}: {len(paths)} paths of length <= {max_length} exceed the"
            f" {_PATH_GUARD} guard; the input is outside desk scale"
        )
    return paths


class Algebra:
    """The quotient kQ/I with a normal-form path basis.

    Immutable after construction; elements are sparse dicts mapping basis
    indices to field scalars.
    """

    def __init__(
        self,
        presentation: Presentation,
        nilpotency: int,
        basis: Sequence[Path],
        rewrite: dict[Path, dict[int, object]],
    ):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.field = presentation.field
        self.nilpotency = nilpotency
        self.basis = tuple(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self._rewrite = rewrite
        self._mul_cache: dict[tuple[int, int], dict[int, object]] = {}
        self.blocks: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(self.basis):
            self.blocks.setdefault((p.target, p.source), []).append(i)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def block_indices(self, target: int, source: int) -> list[int]:
        return self.blocks.get((target, source), [])

    def block_dim(self, target: int, source: int) -> int:
        return len(self.blocks.get((target, source), ()))

    def reduce_path(self, p: Path) -> dict[int, object]:
        """Normal form of a path class as a sparse element."""
        if p.length >= self.nilpotency:
            return {}
        i = self.index.get(p)
        if i is not None:
            return {i: self.field.one}
        return self._rewrite[p]

    def mul_basis(self, i: int, j: int) -> dict[int, object]:
        """Product of basis element i with basis element j (i after j)."""
        key = (i, j)
        got = self._mul_cache.get(key)
        if got is None:
            u, v = self.basis[i], self.basis[j]
            if u.source != v.target:
                got = {}
            else:
                arrows = u.arrows + v.arrows
                if len(arrows) >= self.nilpotency:
                    got = {}
                else:
                    got = self.reduce_path(Path(v.source, u.target, arrows))
            self._mul_cache[key] = got
        return got

    def multiply(self, x: dict[int, object], y: dict[int, object]) -> dict[int, object]:
        field = self.field
        zero = field.zero
        out: dict[int, object] = {}
        for i, ci in x.items():
            for j, cj in y.items():
                c = field.mul(ci, cj)
                if c == zero:
                    continue
                for m, cm in self.mul_basis(i, j).items():
                    acc = field.add(out.get(m, zero), field.mul(c, cm))
                    if acc == zero:
                        out.pop(m, None)
                    else:
                        out[m] = acc
        return out

    def path_class(self, p: Path) -> dict[int, object]:
        return dict(self.reduce_path(p))

    def arrow_class(self, arrow_idx: int) -> dict[int, object]:
        a = self.quiver.arrows[arrow_idx]
        return self.path_class(Path(a.source, a.target, (arrow_idx,)))

    def vertex_class(self, v: int) -> dict[int, object]:
        return {self.index[Path(v, v, ())]: self.field.one}

    def one(self) -> dict[int, object]:
        return {
            self.index[Path(v, v, ())]: self.field.one
            for v in range(self.quiver.n_vertices)
        }

    def element_str(self, x: dict[int, object]) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = x[i]
            name = self.quiver.path_str(self.basis[i])
            parts.append(name if c == self.field.one else f"{c}*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return (
            f"Algebra(dim {self.dim}, nilpotency {self.nilpotency},"
            f" {self.field!r})"
        )


def build_algebra(pres: Presentation, length_cap: int = 64) -> Algebra:
    """Construct kQ/I, finding the least n <= length_cap with F^n in I."""
    if pres.quiver.n_vertices == 0:
        raise EmptyQuiverError("the quiver has no vertices")
    if length_cap < 2:
        raise ValueError("length_cap must be at least 2")
    q = pres.quiver
    field = pres.field
    rels = normalized_relations(pres)
    maxrel = max((r.max_length for r in rels), default=0)
    n = None
    for length in range(2, length_cap + 1):
        bound = length + (maxrel if rels else 1)
        paths = _enumerate_guarded(q, bound - 1, "nilpotency search")
        level = [p for p in paths if p.length == length]
        if not level:
            n = length
            break
        if not rels:
            continue
        red, cols, col_index = _truncated_ideal_reducer(field, rels, bound, paths)
        unit = [field.zero] * len(cols)
        ok = True
        for rho in level:
            vec = unit[:]
            vec[col_index[rho]] = field.one
            if not red.contains(vec):
                ok = False
                break
        if ok:
            n = length
            break
    if n is None:
        raise NotAdmissibleError(
            f"no F^n lies in the relation ideal for n <= {length_cap};"
            " the ideal is not admissible within the cap"
            " (raise length_cap if the algebra is genuinely deeper)"
        )
    paths = enumerate_paths(q, n - 1)
    red, cols, col_index = _truncated_ideal_reducer(field, rels, n, paths)
    pivot_paths = {cols[c] for c in red.pivots}
    basis = [p for p in paths if p not in pivot_paths]
    index = {p: i for i, p in enumerate(basis)}
    rewrite: dict[Path, dict[int, object]] = {}
    for row, pivcol in zip(red.rows, red.pivots):
        expr: dict[int, object] = {}
        for c, val in enumerate(row):
            if c != pivcol and val != field.zero:
                expr[index[cols[c]]] = field.neg(val)
        rewrite[cols[pivcol]] = expr
    return Algebra(pres, n, basis, rewrite)


# ---------------------------------------------------------------------------
# graded subspaces and sub-bimodules


def _as_full(alg: Algebra, vec) -> list:
    if isinstance(vec, dict):
        out = [alg.field.zero] * alg.dim
        for i, c in vec.items():
            out[i] = c
        return out
    return list(vec)


def _as_dict(alg: Algebra, vec: Sequence) -> dict[int, object]:
    zero = alg.field.zero
    return {i: c for i, c in enumerate(vec) if c != zero}


class SubBimodule:
    """A graded subspace of the algebra with per-endpoint piece data.

    Piece data (one echelon basis per (target, source) block) is only
    meaningful when the subspace is closed under both generator actions; the
    bimodules used downstream (the whole algebra, radical powers) are.  Use
    :meth:`is_closed_under_action` to verify before trusting the pieces.
    """

    def __init__(self, alg: Algebra, vectors: Iterable):
        self.alg = alg
        full = [_as_full(alg, v) for v in vectors]
        self._span = RowReducer(alg.field, alg.dim)
        for v in full:
            self._span.add(v)
        self._pieces: dict[tuple[int, int], RowReducer] = {}
        zero = alg.field.zero
        for row in self._span.rows:
            support_blocks = {
                (alg.basis[i].target, alg.basis[i].source)
                for i, c in enumerate(row)
                if c != zero
            }
            for block in support_blocks:
                idxs = set(alg.block_indices(*block))
                proj = [c if i in idxs else zero for i, c in enumerate(row)]
                red = self._pieces.get(block)
                if red is None:
                    red = self._pieces[block] = RowReducer(alg.field, alg.dim)
                red.add(proj)

    @classmethod
    def full(cls, alg: Algebra) -> "SubBimodule":
        one = alg.field.one
        vecs = []
        for i in range(alg.dim):
            v = [alg.field.zero] * alg.dim
            v[i] = one
            vecs.append(v)
        return cls(alg, vecs)

    @classmethod
    def from_basis_indices(cls, alg: Algebra, idxs: Iterable[int]) -> "SubBimodule":
        vecs = []
        for i in idxs:
            v = [alg.field.zero] * alg.dim
            v[i] = alg.field.one
            vecs.append(v)
        return cls(alg, vecs)

    @property
    def dim(self) -> int:
        return self._span.dim

    def vectors(self) -> list[list]:
        return [list(r) for r in self._span.rows]

    def contains(self, vec) -> bool:
        return self._span.contains(_as_full(self.alg, vec))

    def piece_dims(self) -> dict[tuple[int, int], int]:
        return {b: r.dim for b, r in self._pieces.items() if r.dim}

    def piece_dim(self, target: int, source: int) -> int:
        red = self._pieces.get((target, source))
        return red.dim if red else 0

    def piece_basis(self, target: int, source: int) -> list[list]:
        red = self._pieces.get((target, source))
        return [list(r) for r in red.rows] if red else []

    def express_in_piece(self, target: int, source: int, vec) -> list:
        """Coordinates of a (full-width) vector over the piece basis."""
        red = self._pieces.get((target, source))
        full = _as_full(self.alg, vec)
        if red is None:
            if any(c != self.alg.field.zero for c in full):
                raise ValueError("vector outside the (empty) piece")
            return []
        coords = red.coordinates(full)
        if coords is None:
            raise ValueError("vector outside the piece span")
        return coords

    def is_closed_under_action(self) -> bool:
        alg = self.alg
        for row in self._span.rows:
            d = _as_dict(alg, row)
            for a in range(alg.quiver.n_arrows):
                ac = alg.arrow_class(a)
                if not self._span.contains(_as_full(alg, alg.multiply(ac, d))):
                    return False
                if not self._span.contains(_as_full(alg, alg.multiply(d, ac))):
                    return False
        return True

    # generator action data, blockwise: images of the piece basis vectors

    def left_images(self, arrow_idx: int, block: tuple[int, int]) -> list[list]:
        """For each basis vector of ``block`` = (u, w): coordinates of
        (arrow . vector) over the basis of block (target(arrow), w)."""
        alg = self.alg
        a = alg.quiver.arrows[arrow_idx]
        u, w = block
        if a.source != u:
            raise ValueError("arrow does not act on this block from the left")
        ac = alg.arrow_class(arrow_idx)
        out = []
        for v in self.piece_basis(u, w):
            img = alg.multiply(ac, _as_dict(alg, v))
            out.append(self.express_in_piece(a.target, w, img))
        return out

    def right_images(self, arrow_idx: int, block: tuple[int, int]) -> list[list]:
        """For each basis vector of ``block`` = (w, v): coordinates of
        (vector . arrow) over the basis of block (w, source(arrow))."""
        alg = self.alg
        a = alg.quiver.arrows[arrow_idx]
        w, v = block
        if a.target != v:
            raise ValueError("arrow does not act on this block from the right")
        ac = alg.arrow_class(arrow_idx)
        out = []
        for vecu in self.piece_basis(w, v):
            img = alg.multiply(_as_dict(alg, vecu), ac)
            out.append(self.express_in_piece(w, a.source, img))
        return out


def commutant_rows(alg: Algebra):
    """Matrix rows of the map from the diagonal part to the per-arrow blocks
    sending lambda to lambda*C - C*lambda with C the sum of the arrows.

    Returns (rows, domain_labels, codomain_labels): domain labels are the
    diagonal basis indices, codomain labels are (arrow index, basis index)
    pairs.  The kernel is the center.
    """
    field = alg.field
    q = alg.quiver
    domain = [i for i, p in enumerate(alg.basis) if p.source == p.target]
    codomain: list[tuple[int, int]] = []
    cod_index: dict[tuple[int, int], int] = {}
    for a_idx, a in enumerate(q.arrows):
        for b in alg.block_indices(a.target, a.source):
            cod_index[(a_idx, b)] = len(codomain)
            codomain.append((a_idx, b))
    rows = [[field.zero] * len(domain) for _ in codomain]
    for col, i in enumerate(domain):
        x = alg.basis[i].source
        d = {i: field.one}
        for a_idx, a in enumerate(q.arrows):
            val: dict[int, object] = {}
            if a.target == x:
                val = alg.multiply(d, alg.arrow_class(a_idx))
            if a.source == x:
                left = alg.multiply(alg.arrow_class(a_idx), d)
                for m, c in left.items():
                    acc = field.sub(val.get(m, field.zero), c)
                    if acc == field.zero:
                        val.pop(m, None)
                    else:
                        val[m] = acc
            for m, c in val.items():
                rows[cod_index[(a_idx, m)]][col] = c
    return rows, domain, codomain


def center(alg: Algebra) -> SubBimodule:
    """The center: kernel of the commutator map with C the sum of arrows.

    Commuting with the vertex idempotents already forces an element into the
    diagonal blocks, so the kernel is computed there.
    """
    from .linalg import Matrix, kernel_basis

    rows, domain, _ = commutant_rows(alg)
    if not domain:
        return SubBimodule(alg, [])
    if not rows:
        # no arrows: everything diagonal is central
        vecs = []
        for i in domain:
            v = [alg.field.zero] * alg.dim
            v[i] = alg.field.one
            vecs.append(v)
        return SubBimodule(alg, vecs)
    m = Matrix.from_rows(alg.field, rows)
    vecs = []
    for coeffs in kernel_basis(m):
        v = [alg.field.zero] * alg.dim
        for c, i in zip(coeffs, domain):
            v[i] = c
        vecs.append(v)
    return SubBimodule(alg, vecs)


def radical_power(alg: Algebra, i: int) -> SubBimodule:
    """r^i as the span of basis classes of paths of length >= i."""
    if i < 1:
        raise ValueError("radical power wants i >= 1")
    return SubBimodule.from_basis_indices(
        alg, [k for k, p in enumerate(alg.basis) if p.length >= i]
    )


# ---------------------------------------------------------------------------
# the relation bimodule I/I^2


class _QuotientBlock:
    def __init__(self, field: Field, ambient: list[Path]):
        self.ambient = ambient
        self.ambient_index = {p: i for i, p in enumerate(ambient)}
        self.sq = RowReducer(field, len(ambient))  # span of I^2, truncated
        self.quo = RowReducer(field, len(ambient))  # representatives of I/I^2

    def express(self, vec: list) -> list:
        coords = self.quo.coordinates(self.sq.reduce(vec))
        if coords is None:
            raise ValueError("vector not in the relation bimodule block")
        return coords


class QuotientBimodule:
    """I/I^2 realized inside the span of paths of length < 2n.

    F^n inside I gives F^(2n) = F^n F^n inside I^2, so components of length
    at least 2n can be dropped without changing the quotient; every block
    keeps an echelonized copy of (truncated) I^2 and of chosen
    representatives for I/I^2.
    """

    def __init__(self, alg: Algebra, bound: int, blocks: dict[tuple[int, int], _QuotientBlock]):
        self.alg = alg
        self.bound = bound
        self._blocks = blocks

    @property
    def dim(self) -> int:
        return sum(b.quo.dim for b in self._blocks.values())

    def piece_dims(self) -> dict[tuple[int, int], int]:
        return {k: b.quo.dim for k, b in self._blocks.items() if b.quo.dim}

    def piece_dim(self, target: int, source: int) -> int:
        b = self._blocks.get((target, source))
        return b.quo.dim if b else 0

    def basis_labels(self, target: int, source: int) -> list[str]:
        """Human-readable leading representative of each basis class."""
        b = self._blocks.get((target, source))
        if not b:
            return []
        out = []
        for row in b.quo.rows:
            lead = next(i for i, c in enumerate(row) if c != self.alg.field.zero)
            out.append("[" + self.alg.quiver.path_str(b.ambient[lead]) + "]")
        return out

    def _image_block(self, arrow_idx: int, block: tuple[int, int], left: bool):
        a = self.alg.quiver.arrows[arrow_idx]
        y, x = block
        src_block = self._blocks.get(block)
        target_key = (a.target, x) if left else (y, a.source)
        tgt_block = self._blocks.get(target_key)
        out = []
        field = self.alg.field
        for row in (src_block.quo.rows if src_block else ()):
            if tgt_block is None:
                img: list = []
                # the image must vanish; build it and check
                acc: dict[Path, object] = {}
                for i, c in enumerate(row):
                    if c == field.zero:
                        continue
                    p = src_block.ambient[i]
                    arrows = ((arrow_idx,) + p.arrows) if left else (p.arrows + (arrow_idx,))
                    if len(arrows) >= self.bound:
                        continue
                    acc[arrows] = field.add(acc.get(arrows, field.zero), c)
                if any(c != field.zero for c in acc.values()):
                    raise ValueError("action image fell outside the recorded blocks")
                out.append(img)
                continue
            vec = [field.zero] * len(tgt_block.ambient)
            for i, c in enumerate(row):
                if c == field.zero:
                    continue
                p = src_block.ambient[i]
                if left:
                    newp = Path(p.source, a.target, (arrow_idx,) + p.arrows)
                else:
                    newp = Path(a.source, p.target, p.arrows + (arrow_idx,))
                if newp.length >= self.bound:
                    continue
                j = tgt_block.ambient_index[newp]
                vec[j] = field.add(vec[j], c)
            out.append(tgt_block.express(vec))
        return out

    def left_images(self, arrow_idx: int, block: tuple[int, int]) -> list[list]:
        a = self.alg.quiver.arrows[arrow_idx]
        if a.source != block[0]:
            raise ValueError("arrow does not act on this block from the left")
        return self._image_block(arrow_idx, block, left=True)

    def right_images(self, arrow_idx: int, block: tuple[int, int]) -> list[list]:
        a = self.alg.quiver.arrows[arrow_idx]
        if a.target != block[1]:
            raise ValueError("arrow does not act on this block from the right")
        return self._image_block(arrow_idx, block, left=False)

    def act_path_left(self, path: Path, block: tuple[int, int], coords: list) -> tuple[tuple[int, int], list]:
        """Left action of a whole path on a quotient element (for tests)."""
        y, x = block
        cur_block = block
        cur = coords
        for a_idx in reversed(path.arrows):
            if not cur:
                a = self.alg.quiver.arrows[a_idx]
                cur_block = (a.target, cur_block[1])
                cur = [self.alg.field.zero] * self.piece_dim(*cur_block)
                continue
            imgs = self.left_images(a_idx, cur_block)
            a = self.alg.quiver.arrows[a_idx]
            cur_block = (a.target, cur_block[1])
            dim_t = self.piece_dim(*cur_block)
            nxt = [self.alg.field.zero] * dim_t
            for c, img in zip(cur, imgs):
                for t, v in enumerate(img):
                    nxt[t] = self.alg.field.add(nxt[t], self.alg.field.mul(c, v))
            cur = nxt
        return cur_block, cur


def relation_bimodule(alg: Algebra) -> QuotientBimodule:
    """I/I^2 by truncated spans at bound 2n (see QuotientBimodule)."""
    q = alg.quiver
    field = alg.field
    rels = normalized_relations(alg.presentation)
    bound = 2 * alg.nilpotency
    paths = _enumerate_guarded(q, bound - 1, "relation bimodule")
    by_source, by_target = _bucket_paths(paths)

    blocks: dict[tuple[int, int], _QuotientBlock] = {}
    for p in paths:
        if p.length >= 2:
            key = (p.target, p.source)
            if key not in blocks:
                blocks[key] = _QuotientBlock(field, [])
            blocks[key].ambient.append(p)
    for b in blocks.values():
        b.ambient_index = {p: i for i, p in enumerate(b.ambient)}
        b.sq = RowReducer(field, len(b.ambient))
        b.quo = RowReducer(field, len(b.ambient))

    def vector_for(terms_with_prefix_suffix, block_key):
        b = blocks[block_key]
        vec = [field.zero] * len(b.ambient)
        nonzero = False
        for coeff, path in terms_with_prefix_suffix:
            if path.length >= bound:
                continue
            i = b.ambient_index[path]
            vec[i] = field.add(vec[i], coeff)
            nonzero = True
        return vec if nonzero else None

    # I^2 first: p * r * w * r2 * q, truncated
    for r1 in rels:
        for r2 in rels:
            min12 = r1.min_length + r2.min_length
            for w in by_source.get(r2.target, ()):
                if w.target != r1.source:
                    continue
                if w.length + min12 >= bound:
                    continue
                middle_terms = []
                for c1, t1 in r1.terms:
                    for c2, t2 in r2.terms:
                        middle_terms.append(
                            (
                                field.mul(c1, c2),
                                Path(t2.source, t1.target, t1.arrows + w.arrows + t2.arrows),
                            )
                        )
                minmid = min(p.length for _, p in middle_terms)
                for p in by_source.get(r1.target, ()):
                    if p.length + minmid >= bound:
                        continue
                    for qq in by_target.get(r2.source, ()):
                        if p.length + minmid + qq.length >= bound:
                            continue
                        terms = [
                            (c, Path(qq.source, p.target, p.arrows + t.arrows + qq.arrows))
                            for c, t in middle_terms
                        ]
                        vec = vector_for(terms, (p.target, qq.source))
                        if vec is not None:
                            blocks[(p.target, qq.source)].sq.add(vec)

    # then I, reduced modulo I^2
    for rel in rels:
        minlen = rel.min_length
        for p in by_source.get(rel.target, ()):
            if p.length + minlen >= bound:
                continue
            for qq in by_target.get(rel.source, ()):
                if p.length + minlen + qq.length >= bound:
                    continue
                terms = [
                    (c, Path(qq.source, p.target, p.arrows + t.arrows + qq.arrows))
                    for c, t in rel.terms
                ]
                key = (p.target, qq.source)
                vec = vector_for(terms, key)
                if vec is not None:
                    b = blocks[key]
                    b.quo.add(b.sq.reduce(vec))

    return QuotientBimodule(alg, bound, blocks)


# ---------------------------------------------------------------------------
# bimodule homomorphisms


def bimodule_hom_dim(alg: Algebra, x_mod, y_mod) -> int:
    """Dimension of the space of maps X -> Y commuting with both generator
    actions (equivalently bimodule maps, since vertices and arrows generate).

    X and Y expose piece_dims(), left_images(arrow, block), and
    right_images(arrow, block); blocks are (target vertex, source vertex).
    """
    from .linalg import rank_from_entries

    field = alg.field
    q = alg.quiver
    dx = x_mod.piece_dims()
    dy = y_mod.piece_dims()
    unknown_offsets: dict[tuple[int, int], int] = {}
    total = 0
    for block in sorted(set(dx) & set(dy)):
        unknown_offsets[block] = total
        total += dx[block] * dy[block]

    def var(block, y_coord, x_coord):
        return unknown_offsets[block] + y_coord * dx[block] + x_coord

    entries: list[tuple[int, int, object]] = []
    n_eq = 0

    def add_equations(a_idx: int, from_block, to_block, x_images, y_images):
        # x_images: per X-basis vector of from_block, coords in X to_block
        # y_images: per Y-basis vector of from_block, coords in Y to_block
        nonlocal n_eq
        dxf = dx.get(from_block, 0)
        dyt = dy.get(to_block, 0)
        if dxf == 0 or dyt == 0:
            return
        dxt = dx.get(to_block, 0)
        dyf = dy.get(from_block, 0)
        for j in range(dxf):
            for t in range(dyt):
                row = n_eq
                wrote = False
                if dxt and to_block in unknown_offsets:
                    for i, c in enumerate(x_images[j]):
                        if c != field.zero:
                            entries.append((row, var(to_block, t, i), c))
                            wrote = True
                if dyf and from_block in unknown_offsets:
                    for k in range(dyf):
                        c = y_images[k][t]
                        if c != field.zero:
                            entries.append((row, var(from_block, k, j), field.neg(c)))
                            wrote = True
                if wrote:
                    n_eq += 1

    for a_idx, a in enumerate(q.arrows):
        for w in range(q.n_vertices):
            # left action: block (source(a), w) -> (target(a), w)
            fb, tb = (a.source, w), (a.target, w)
            if dx.get(fb, 0):
                xi = x_mod.left_images(a_idx, fb) if dx.get(fb, 0) else []
                yi = y_mod.left_images(a_idx, fb) if dy.get(fb, 0) else []
                add_equations(a_idx, fb, tb, xi, yi)
            # right action: block (w, target(a)) -> (w, source(a))
            fb, tb = (w, a.target), (w, a.source)
            if dx.get(fb, 0):
                xi = x_mod.right_images(a_idx, fb) if dx.get(fb, 0) else []
                yi = y_mod.right_images(a_idx, fb) if dy.get(fb, 0) else []
                add_equations(a_idx, fb, tb, xi, yi)

    if total == 0:
        return 0
    r = rank_from_entries(field, n_eq, total, entries)
    return total - r
