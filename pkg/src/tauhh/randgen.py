"""Seeded random presentations and the shared consistency battery.

Generators draw connected quivers (optionally acyclic) from a
``random.Random`` instance and dress them with relations of one of four
flavors: none (hereditary), all length-two paths (radical square zero),
random monomial paths on an acyclic quiver (triangular monomial), or a
mixed bag of monomial and two-term relations capped by a full power of the
arrow ideal.  Every generator resamples until the resulting algebra is
small enough for the downstream bar-complex oracle.

The battery runs every computation route on one presentation and reports a
deterministic one-line summary, so identical seeds produce byte-identical
transcripts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import NotAdmissibleError, build_algebra
from .closed_forms import cross_validate
from .cohomology import bar_space_dims, compute_invariants
from .dsl import Presentation, make_presentation
from .linalg import GF, QQ, Field, field_name
from .quiver import (
    Path,
    Quiver,
    classify_shape,
    crown_quiver,
    paths_of_length,
)

DEFAULT_FIELDS: tuple[Field, ...] = (QQ, GF(2), GF(3))


# ---------------------------------------------------------------------------
# quiver and presentation generators


def random_connected_quiver(
    rng: random.Random,
    max_vertices: int,
    max_arrows: int,
    acyclic: bool = False,
    allow_loops: bool = True,
) -> Quiver:
    """A connected quiver with at most the given numbers of vertices and
    arrows; a random spanning tree guarantees connectivity.

    In acyclic mode every arrow points forward along one hidden random
    ordering of the vertices, which both orients the tree randomly and
    keeps extra arrows (parallel ones included) from closing cycles.
    """
    nv = rng.randint(1, max(1, min(max_vertices, max_arrows + 1)))
    names = [f"v{i + 1}" for i in range(nv)]
    order = list(range(nv))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}

    def forward(u: int, w: int) -> tuple[int, int]:
        return (u, w) if rank[u] < rank[w] else (w, u)

    edges: list[tuple[int, int]] = []
    for v in range(1, nv):
        u = rng.randrange(v)
        if acyclic:
            edges.append(forward(u, v))
        else:
            edges.append((u, v) if rng.random() < 0.5 else (v, u))
    n_extra = rng.randint(0, max_arrows - len(edges))
    for _ in range(n_extra):
        u = rng.randrange(nv)
        w = rng.randrange(nv)
        if acyclic:
            if u == w:
                continue
            edges.append(forward(u, w))
        else:
            if u == w and not allow_loops:
                continue
            edges.append((u, w))
    arrows = [(f"a{i + 1}", names[s], names[t]) for i, (s, t) in enumerate(edges)]
    return Quiver(names, arrows)


def hereditary_presentation(
    rng: random.Random,
    field: Field = QQ,
    max_vertices: int = 6,
    max_arrows: int = 8,
    bar_limit: int = 4000,
) -> Presentation:
    """A connected acyclic quiver with no relations, sized so the bar oracle
    stays cheap."""
    while True:
        q = random_connected_quiver(rng, max_vertices, max_arrows, acyclic=True)
        pres = make_presentation(q, field, [])
        alg = build_algebra(pres)
        if bar_space_dims(alg)[3] <= bar_limit:
            return pres


def rad_square_zero_presentation(
    rng: random.Random,
    field: Field = QQ,
    max_vertices: int = 5,
    max_arrows: int = 7,
    crown_allowed: bool = False,
) -> Presentation:
    """All length-two paths killed, on a connected non-crown quiver."""
    while True:
        q = random_connected_quiver(rng, max_vertices, max_arrows, acyclic=False)
        if not crown_allowed and classify_shape(q).crown_order is not None:
            continue
        rels = [[(1, p)] for p in paths_of_length(q, 2)]
        return make_presentation(q, field, rels)


def triangular_monomial_presentation(
    rng: random.Random,
    field: Field = QQ,
    max_vertices: int = 5,
    max_arrows: int = 7,
    max_relations: int = 4,
) -> Presentation:
    """Random monomial relations on a connected acyclic quiver."""
    q = random_connected_quiver(rng, max_vertices, max_arrows, acyclic=True)
    candidates: list[Path] = []
    length = 2
    while True:
        level = paths_of_length(q, length)
        if not level:
            break
        candidates.extend(level)
        length += 1
    k = rng.randint(0, min(max_relations, len(candidates)))
    chosen = rng.sample(candidates, k) if k else []
    return make_presentation(q, field, [[(1, p)] for p in chosen])


def _path_budget_ok(q: Quiver, max_length: int, budget: int) -> bool:
    """True when the number of paths of length <= max_length stays under
    budget; bails out of the level walk as soon as the budget is blown, so
    dense cyclic quivers are rejected before any expensive algebra build."""
    level = [q.trivial_path(v) for v in range(q.n_vertices)]
    total = len(level)
    for _ in range(max_length):
        nxt = []
        for p in level:
            for i, a in enumerate(q.arrows):
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, (i,) + p.arrows))
        total += len(nxt)
        if total > budget:
            return False
        if not nxt:
            break
        level = nxt
    return True


def mixed_presentation(
    rng: random.Random,
    field: Field = QQ,
    max_vertices: int = 4,
    max_arrows: int = 6,
    bar_limit: int = 2000,
    dim_limit: int = 60,
) -> Presentation:
    """Monomial and two-term relations underneath a full power of the arrow
    ideal, so the quotient is guaranteed finite dimensional.

    Cyclic quivers are allowed; the generating set always contains every
    path of the chosen top length, plus a few shorter monomial paths and a
    few two-term combinations of parallel paths with small integer
    coefficients.
    """
    while True:
        q = random_connected_quiver(
            rng, max_vertices, max_arrows, acyclic=rng.random() < 0.4
        )
        top = rng.choice((2, 3, 3, 4))
        # the admissibility search reduces spans of paths out to roughly
        # twice the top length; keep that enumeration small up front
        if not _path_budget_ok(q, 2 * top, 1500):
            continue
        shell = paths_of_length(q, top)
        if len(shell) > 120:
            continue
        rel_terms: list[list[tuple[int, Path]]] = [[(1, p)] for p in shell]
        mids: list[Path] = []
        for length in range(2, top):
            mids.extend(paths_of_length(q, length))
        if mids:
            k = rng.randint(0, min(3, len(mids)))
            for p in rng.sample(mids, k):
                rel_terms.append([(1, p)])
        pairs = [
            (p, r)
            for i, p in enumerate(mids)
            for r in mids[i + 1 :]
            if p.source == r.source and p.target == r.target
        ]
        if pairs:
            k = rng.randint(0, min(2, len(pairs)))
            for p, r in rng.sample(pairs, k):
                rel_terms.append([(1, p), (rng.choice((1, -1, 2, -2, 3)), r)])
        pres = make_presentation(q, field, rel_terms)
        try:
            alg = build_algebra(pres)
        except NotAdmissibleError:
            continue
        if alg.dim > dim_limit:
            continue
        if bar_space_dims(alg)[3] > bar_limit:
            continue
        return pres


def crown_presentation(c: int, field: Field = QQ) -> Presentation:
    """The order-c crown: oriented cycle modulo all length-two paths."""
    q = crown_quiver(c)
    rels = []
    for i in range(c):
        p = q.compose(q.arrow_path((i + 1) % c), q.arrow_path(i))
        assert p is not None
        rels.append([(1, p)])
    return make_presentation(q, field, rels)


def example_presentations() -> list[tuple[str, Presentation]]:
    """The worked examples: two parallel arrows feeding a third with one
    composite killed, and the commuting square with a shortcut, with either
    the long way or the shortcut composite killed."""
    q1 = Quiver(
        ["v1", "v2", "v3"],
        [("a", "v1", "v2"), ("b", "v1", "v2"), ("c", "v2", "v3")],
    )
    ca = q1.path_from_arrow_names(["c", "a"])
    sq = Quiver(
        ["v1", "v2", "v3", "v4"],
        [
            ("a", "v1", "v2"),
            ("b", "v2", "v3"),
            ("c", "v3", "v4"),
            ("d", "v2", "v4"),
        ],
    )
    ba = sq.path_from_arrow_names(["b", "a"])
    da = sq.path_from_arrow_names(["d", "a"])
    return [
        ("parallel-then-one", make_presentation(q1, QQ, [[(1, ca)]])),
        ("square-long-way", make_presentation(sq, QQ, [[(1, ba)]])),
        ("square-shortcut", make_presentation(sq, QQ, [[(1, da)]])),
    ]


# ---------------------------------------------------------------------------
# corpora for the consistency batteries


def _rotate(seq: Sequence, k: int):
    return seq[k % len(seq)]


def hereditary_corpus(
    seed: int, count: int = 100, max_vertices: int = 6, max_arrows: int = 8
) -> list[Presentation]:
    rng = random.Random(seed)
    return [
        hereditary_presentation(
            rng, _rotate(DEFAULT_FIELDS, k), max_vertices, max_arrows
        )
        for k in range(count)
    ]


def rad_square_zero_corpus(
    seed: int, count: int = 100, max_vertices: int = 5, max_arrows: int = 7
) -> list[Presentation]:
    rng = random.Random(seed)
    return [
        rad_square_zero_presentation(
            rng, _rotate(DEFAULT_FIELDS, k), max_vertices, max_arrows
        )
        for k in range(count)
    ]


def triangular_corpus(
    seed: int, count: int = 50, max_vertices: int = 5, max_arrows: int = 7
) -> list[Presentation]:
    rng = random.Random(seed)
    return [
        triangular_monomial_presentation(
            rng, _rotate(DEFAULT_FIELDS, k), max_vertices, max_arrows
        )
        for k in range(count)
    ]


def admissible_corpus(
    seed: int, count: int = 200, max_vertices: int = 4, max_arrows: int = 6
) -> list[Presentation]:
    """Mixed corpus: monomial and non-monomial admissible presentations over
    the rational and small prime fields."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        field = _rotate(DEFAULT_FIELDS, k)
        kind = k % 4
        if kind == 3:
            pres = triangular_monomial_presentation(
                rng, field, max_vertices + 1, max_arrows + 1
            )
        else:
            pres = mixed_presentation(rng, field, max_vertices, max_arrows)
        out.append(pres)
    return out


# ---------------------------------------------------------------------------
# the shared battery


@dataclass
class InstanceCheck:
    label: str
    ok: bool
    summary: str
    notes: tuple[str, ...] = ()


def describe_presentation(pres: Presentation) -> str:
    q = pres.quiver
    return (
        f"{q.n_vertices}v/{q.n_arrows}a/{len(pres.relations)}r"
        f" field={field_name(pres.field)}"
    )


def check_presentation(
    label: str,
    pres: Presentation,
    bar_cap: int = 200_000,
    with_bar: bool = True,
    length_cap: int = 64,
) -> InstanceCheck:
    """Build the algebra, run every route, and compare everything that must
    agree.  The summary line is deterministic for a fixed input."""
    notes: list[str] = []
    try:
        alg = build_algebra(pres, length_cap=length_cap)
    except (NotAdmissibleError, ValueError) as exc:
        return InstanceCheck(
            label=label,
            ok=False,
            summary=f"{label} {describe_presentation(pres)} build-error: {exc}",
            notes=(f"build: {exc}",),
        )
    rep = compute_invariants(alg, with_bar=with_bar, bar_cap=bar_cap)
    closed = cross_validate(alg)
    for row in rep.rows:
        if not row.agree:
            notes.append(
                f"route mismatch {row.name}: "
                + " ".join(f"{n}={v}" for n, v in row.routes)
            )
    if not rep.exact_sequence_ok:
        notes.append("four-term alternating sum is nonzero")
    for row in closed.mismatches():
        notes.append(
            f"closed form mismatch {row.family}.{row.quantity}:"
            f" closed={row.closed_value} machine={row.machine_value}"
        )
    values = {r.name: r.value for r in rep.rows}
    fam = ",".join(closed.families) or "-"
    bar_note = " bar=skipped" if rep.bar_skipped else ""
    ok = not notes
    summary = (
        f"{label} {describe_presentation(pres)} dim={alg.dim} n={alg.nilpotency}"
        f" z={values['dim_center']} tau={values['tau_hh1']} hh1={values['hh1']}"
        f" hh2={values['hh2']} hom={values['hom_relations']}"
        f" e={values['excess']} rigid={values['tau_rigid']}"
        f" families={fam}{bar_note} ok={ok}"
    )
    return InstanceCheck(label=label, ok=ok, summary=summary, notes=tuple(notes))


def selfcheck(
    seed: int = 0,
    count: int = 24,
    max_vertices: int = 4,
    max_arrows: int = 6,
    bar_cap: int = 200_000,
) -> tuple[bool, str]:
    """Fixed examples, crown sweep, and a seeded random corpus, every route
    compared.  Returns (all ok, deterministic transcript)."""
    checks: list[InstanceCheck] = []
    for name, pres in example_presentations():
        checks.append(check_presentation(f"example:{name}", pres, bar_cap=bar_cap))
    for c in range(1, 6):
        for field in (QQ, GF(2)):
            pres = crown_presentation(c, field)
            checks.append(
                check_presentation(
                    f"crown:{c}:{field_name(field)}", pres, bar_cap=bar_cap
                )
            )
    rng = random.Random(seed)
    families = (
        ("hereditary", lambda f: hereditary_presentation(rng, f, max_vertices, max_arrows)),
        ("rad2", lambda f: rad_square_zero_presentation(rng, f, max_vertices, max_arrows)),
        ("monomial", lambda f: triangular_monomial_presentation(rng, f, max_vertices, max_arrows)),
        ("mixed", lambda f: mixed_presentation(rng, f, max_vertices, max_arrows)),
    )
    for k in range(count):
        fam_name, gen = families[k % len(families)]
        field = _rotate(DEFAULT_FIELDS, k)
        pres = gen(field)
        checks.append(check_presentation(f"seeded:{k}:{fam_name}", pres, bar_cap=bar_cap))
    lines = [c.summary for c in checks]
    for c in checks:
        for note in c.notes:
            lines.append(f"  !! {note}")
    failures = sum(1 for c in checks if not c.ok)
    lines.append(f"selfcheck: {len(checks)} instances, {failures} failures")
    return failures == 0, "\n".join(lines)
