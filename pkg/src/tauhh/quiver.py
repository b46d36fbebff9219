"""Finite quivers, paths, and shape classification.

Paths compose function-style: ``compose(u, v)`` is "u after v", and the arrow
tuple of a path is stored in that same order, so the first arrow traversed
sits last in the tuple.  Rendering a path therefore lists arrow names
left-to-right exactly as they appear in relation syntax ("c*a" is the path
that traverses a and then c).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Path:
    """A path in a quiver: endpoints plus arrow indices in composition order.

    ``arrows == ()`` is the trivial path at ``source == target``.
    """

    source: int
    target: int
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def is_trivial(self) -> bool:
        return not self.arrows


def path_sort_key(p: Path):
    """Global path order: by length, then lexicographically on the arrow
    tuple; trivial paths are ordered by their vertex."""
    return (len(p.arrows), p.arrows, p.source)


class Quiver:
    """A finite quiver: named vertices and named arrows between them."""

    def __init__(
        self,
        vertices: Sequence[str],
        arrows: Iterable[tuple[str, str, str]] = (),
    ):
        if not vertices:
            raise QuiverError("a quiver needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise QuiverError("duplicate vertex names")
        self.vertices = tuple(vertices)
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        built = []
        names = set()
        for name, src, tgt in arrows:
            if name in names:
                raise QuiverError(f"duplicate arrow name {name!r}")
            if src not in self.vertex_index:
                raise QuiverError(f"arrow {name!r}: unknown source vertex {src!r}")
            if tgt not in self.vertex_index:
                raise QuiverError(f"arrow {name!r}: unknown target vertex {tgt!r}")
            names.add(name)
            built.append(Arrow(name, self.vertex_index[src], self.vertex_index[tgt]))
        self.arrows = tuple(built)
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.out_arrows: list[list[int]] = [[] for _ in self.vertices]
        self.in_arrows: list[list[int]] = [[] for _ in self.vertices]
        for i, a in enumerate(self.arrows):
            self.out_arrows[a.source].append(i)
            self.in_arrows[a.target].append(i)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def trivial_path(self, v: int) -> Path:
        return Path(v, v, ())

    def arrow_path(self, i: int) -> Path:
        a = self.arrows[i]
        return Path(a.source, a.target, (i,))

    def path_from_arrow_names(self, names: Sequence[str]) -> Path:
        """Path from arrow names listed in composition order (first traversed
        last), matching relation syntax."""
        idxs = tuple(self.arrow_index[n] for n in names)
        return self.path_from_arrows(idxs)

    def path_from_arrows(self, idxs: Sequence[int]) -> Path:
        if not idxs:
            raise QuiverError("empty arrow list; use trivial_path for idempotents")
        for later, earlier in zip(idxs, idxs[1:]):
            if self.arrows[later].source != self.arrows[earlier].target:
                raise QuiverError(
                    f"arrows {self.arrows[earlier].name!r} then "
                    f"{self.arrows[later].name!r} do not compose"
                )
        return Path(self.arrows[idxs[-1]].source, self.arrows[idxs[0]].target, tuple(idxs))

    def compose(self, u: Path, v: Path) -> Path | None:
        """u after v, or None when the endpoints do not match."""
        if u.source != v.target:
            return None
        return Path(v.source, u.target, u.arrows + v.arrows)

    def path_str(self, p: Path) -> str:
        if p.is_trivial():
            return f"e_{self.vertices[p.source]}"
        return "*".join(self.arrows[i].name for i in p.arrows)

    def __repr__(self):
        return f"Quiver({self.n_vertices} vertices, {self.n_arrows} arrows)"


def enumerate_paths(q: Quiver, max_length: int) -> list[Path]:
    """All paths of length <= max_length in the global path order."""
    out = [q.trivial_path(v) for v in range(q.n_vertices)]
    level = out[:]
    for _ in range(max_length):
        nxt = []
        for a in range(q.n_arrows):
            src = q.arrows[a].source
            for p in level:
                if p.target == src:
                    nxt.append(Path(p.source, q.arrows[a].target, (a,) + p.arrows))
        if not nxt:
            break
        out.extend(nxt)
        level = nxt
    return out


def paths_of_length(q: Quiver, length: int) -> list[Path]:
    return [p for p in enumerate_paths(q, length) if p.length == length]


def parallel_pairs(first: Iterable[Path], second: Iterable[Path]) -> list[tuple[Path, Path]]:
    """All (p, p') with matching source and target, in input order."""
    second = list(second)
    return [
        (p, p2)
        for p in first
        for p2 in second
        if p.source == p2.source and p.target == p2.target
    ]


@dataclass(frozen=True)
class ShapeReport:
    connected: bool
    acyclic: bool
    tree: bool
    crown_order: Optional[int]
    euler_characteristic: int
    has_loops: bool


def _is_connected(q: Quiver) -> bool:
    seen = {0}
    stack = [0]
    neighbors: list[set[int]] = [set() for _ in q.vertices]
    for a in q.arrows:
        neighbors[a.source].add(a.target)
        neighbors[a.target].add(a.source)
    while stack:
        v = stack.pop()
        for w in neighbors[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == q.n_vertices


def _is_acyclic(q: Quiver) -> bool:
    indeg = [len(q.in_arrows[v]) for v in range(q.n_vertices)]
    queue = [v for v in range(q.n_vertices) if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for a in q.out_arrows[v]:
            w = q.arrows[a].target
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed == q.n_vertices


def connected_component_count(q: Quiver) -> int:
    parent = list(range(q.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in q.arrows:
        ra, rb = find(a.source), find(a.target)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in range(q.n_vertices)})


def classify_shape(q: Quiver) -> ShapeReport:
    """Connectivity, acyclicity, tree and crown detection, Euler data.

    A crown of order c is a single oriented cycle on c vertices (the loop
    for c = 1); equivalently the quiver is connected and every vertex has
    in-degree and out-degree one.  Tree means the underlying undirected
    multigraph is a tree.
    """
    connected = _is_connected(q)
    acyclic = _is_acyclic(q)
    tree = connected and q.n_arrows == q.n_vertices - 1
    crown: Optional[int] = None
    if connected and all(
        len(q.out_arrows[v]) == 1 and len(q.in_arrows[v]) == 1
        for v in range(q.n_vertices)
    ):
        crown = q.n_vertices
    return ShapeReport(
        connected=connected,
        acyclic=acyclic,
        tree=tree,
        crown_order=crown,
        euler_characteristic=q.n_vertices - q.n_arrows,
        has_loops=any(a.source == a.target for a in q.arrows),
    )


def crown_quiver(c: int) -> Quiver:
    """The oriented cycle on c vertices (a loop when c = 1)."""
    if c < 1:
        raise QuiverError("crown order must be positive")
    vs = [f"v{i+1}" for i in range(c)]
    arrows = [(f"a{i+1}", vs[i], vs[(i + 1) % c]) for i in range(c)]
    return Quiver(vs, arrows)
