"""Characteristic vectors, vertex adjacency, 1-skeletons and clique numbers.

Adjacency of two polytope vertices x, y is decided exactly: they are
NOT adjacent iff some convex combination of x and y equals a convex
combination of the other vertices, i.e. iff the system

    alpha*x + beta*y - sum_z gamma_z*z = 0
    alpha + beta = 1,  sum_z gamma_z = 1,  alpha, beta, gamma >= 0

is feasible. That system is handed to :mod:`stskel.lp`.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import ResourceLimitError
from .graph import SpanningTree, edge_index, edge_table, enumerate_spanning_trees, num_edges

CharVector = tuple[int, ...]

DEFAULT_PAIR_BUDGET = 1_000_000
HULL_MAX_N = 5


def char_vector(t: SpanningTree, n: int | None = None) -> CharVector:
    n = t.n if n is None else n
    x = [0] * num_edges(n)
    for e in t.edges:
        x[e] = 1
    return tuple(x)


@dataclass(frozen=True)
class VertexSet:
    """Ordered, duplicate-free list of 0/1 vertices of a polytope.

    ``family`` is a provenance tag such as ``"MST"``, ``"LCMST(k=2)"`` or
    ``"HP(u=0,w=1,V'=[0,1,2])"``. ``labels`` name the vertices in exports.
    """

    vectors: tuple[CharVector, ...]
    family: str = ""
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        vecs = tuple(tuple(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if len(set(vecs)) != len(vecs):
            raise ValueError("vertex set contains duplicate vectors")
        if vecs and len({len(v) for v in vecs}) != 1:
            raise ValueError("vertex vectors have different lengths")
        if self.labels is not None and len(self.labels) != len(vecs):
            raise ValueError("one label per vertex required")

    def __len__(self):
        return len(self.vectors)

    @classmethod
    def from_trees(cls, trees: Sequence[SpanningTree], family: str) -> VertexSet:
        return cls(tuple(char_vector(t) for t in trees), family,
                   tuple(t.label() for t in trees))

    def index_of(self, vec: Sequence[int]) -> int:
        return self._index()[tuple(vec)]

    def _index(self) -> dict[CharVector, int]:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {v: i for i, v in enumerate(self.vectors)}
            object.__setattr__(self, "_idx", cache)
        return cache


def mst_vertex_set(n: int, max_n: int = 8) -> VertexSet:
    return VertexSet.from_trees(enumerate_spanning_trees(n, max_n=max_n), "MST")


# ---------------------------------------------------------------------------
# H-representation of the spanning tree polytope
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def subtour_sets(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """(S, edges inside S) for every S with 2 <= |S| <= n-1.

    S = V would repeat the cardinality equation and |S| <= 1 is vacuous.
    """
    out = []
    for size in range(2, n):
        for s in itertools.combinations(range(n), size):
            inside = tuple(edge_index(i, j, n) for i, j in itertools.combinations(s, 2))
            out.append((s, inside))
    return tuple(out)


@dataclass(frozen=True)
class HrepViolation:
    kind: str  # "cardinality" | "subset" | "nonnegativity"
    subset: Optional[tuple[int, ...]] = None
    edge: Optional[int] = None

    def __str__(self):
        if self.kind == "subset":
            return f"subset constraint for S={set(self.subset)}"
        if self.kind == "nonnegativity":
            return f"nonnegativity of edge {self.edge}"
        return "sum of all coordinates equals n-1"


def mst_hrep_satisfied(x: Sequence, n: int) -> tuple[bool, Optional[HrepViolation]]:
    """Check x against the complete description of the spanning tree polytope.

    Constraints are tested in the order: total sum = n-1, subset sums
    x(E(S)) <= |S|-1, nonnegativity. The first failure is returned.
    """
    if len(x) != num_edges(n):
        raise ValueError(f"vector of length {len(x)} for K_{n}")
    xs = [Fraction(v) for v in x]
    if sum(xs) != n - 1:
        return False, HrepViolation("cardinality")
    for s, inside in subtour_sets(n):
        if sum(xs[e] for e in inside) > len(s) - 1:
            return False, HrepViolation("subset", subset=s)
    for e, v in enumerate(xs):
        if v < 0:
            return False, HrepViolation("nonnegativity", edge=e)
    return True, None


@dataclass(frozen=True)
class HullScan:
    n: int
    candidates: int
    selected: int
    trees: int
    ok: bool


def integral_hull_scan(n: int, max_n: int = HULL_MAX_N) -> HullScan:
    """Compare the 0/1 points of the H-description with the tree vectors.

    Every 0/1 vector with n-1 ones is tested; any 0/1 vector with a
    different popcount already fails the cardinality equation.
    """
    if n > max_n:
        raise ResourceLimitError(f"integral hull scan is capped at n={max_n}, got n={n}")
    if n < 2:
        raise ValueError("need n >= 2")
    d = num_edges(n)
    selected = set()
    candidates = 0
    for ones in itertools.combinations(range(d), n - 1):
        candidates += 1
        x = [0] * d
        for e in ones:
            x[e] = 1
        if mst_hrep_satisfied(x, n)[0]:
            selected.add(tuple(x))
    trees = {char_vector(t) for t in enumerate_spanning_trees(n)}
    return HullScan(n, candidates, len(selected), len(trees), selected == trees)


def integral_hull_check(n: int, max_n: int = HULL_MAX_N) -> bool:
    return integral_hull_scan(n, max_n).ok


# ---------------------------------------------------------------------------
# adjacency
# ---------------------------------------------------------------------------

def separation_problem(x: CharVector, y: CharVector, others: Sequence[CharVector]) -> lp.LPProblem:
    """The convex-combination system for the pair (x, y); variables alpha, beta, gamma..."""
    nv = 2 + len(others)
    eqs = []
    for e in range(len(x)):
        eqs.append(([x[e], y[e]] + [-z[e] for z in others], 0))
    eqs.append(([1, 1] + [0] * len(others), 1))
    eqs.append(([0, 0] + [1] * len(others), 1))
    return lp.LPProblem(nv, equalities=eqs, lower_bounds=[0] * nv)


def adjacent(i: int, j: int, vs: VertexSet) -> bool:
    """Exact adjacency of vertices i and j of conv(vs)."""
    if i == j:
        raise ValueError("adjacency of a vertex with itself is undefined")
    m = len(vs)
    if not (0 <= i < m and 0 <= j < m):
        raise IndexError(f"vertex index out of range for {m} vertices")
    if m == 2:
        return True
    others = [v for k, v in enumerate(vs.vectors) if k != i and k != j]
    res = lp.feasible(separation_problem(vs.vectors[i], vs.vectors[j], others))
    return isinstance(res, lp.Infeasible)


def exchange_adjacent(a: SpanningTree | CharVector, b: SpanningTree | CharVector) -> bool:
    """Single edge swap test: the two trees share all but one edge."""
    if isinstance(a, SpanningTree):
        return bin(a.mask ^ b.mask).count("1") == 2
    return sum(1 for p, q in zip(a, b) if p != q) == 2


@dataclass(frozen=True)
class SkeletonGraph:
    """Undirected graph on vertex indices 0..num_vertices-1.

    ``neighbors[v]`` is a bitmask of the vertices adjacent to v. ``oracle``
    records how adjacency was decided ("lp" or "exchange").
    """

    num_vertices: int
    neighbors: tuple[int, ...]
    oracle: str = "lp"
    family: str = ""

    def __post_init__(self):
        if len(self.neighbors) != self.num_vertices:
            raise ValueError("one neighbor mask per vertex required")
        for v, mask in enumerate(self.neighbors):
            if mask >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            m = mask
            while m:
                low = m & -m
                u = low.bit_length() - 1
                if not self.neighbors[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                m ^= low

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]], oracle="lp", family="") -> SkeletonGraph:
        nb = [0] * m
        for a, b in edges:
            nb[a] |= 1 << b
            nb[b] |= 1 << a
        return cls(m, tuple(nb), oracle, family)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.neighbors[a] >> b & 1)

    def adjacency_matrix(self) -> list[list[bool]]:
        return [[bool(self.neighbors[a] >> b & 1) for b in range(self.num_vertices)]
                for a in range(self.num_vertices)]

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.num_vertices)
                for b in range(a + 1, self.num_vertices) if self.neighbors[a] >> b & 1]

    def degree(self, v: int) -> int:
        return bin(self.neighbors[v]).count("1")

    @property
    def num_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.num_vertices)) // 2

    def stats(self) -> dict:
        degs = [self.degree(v) for v in range(self.num_vertices)]
        return {"vertices": self.num_vertices, "edges": sum(degs) // 2,
                "min_degree": min(degs, default=0), "max_degree": max(degs, default=0)}


_WORKER_VS: Optional[VertexSet] = None


def _init_worker(vs):
    global _WORKER_VS
    _WORKER_VS = vs


def _lp_chunk(pairs):
    return [adjacent(i, j, _WORKER_VS) for i, j in pairs]


def build_skeleton(vs: VertexSet, oracle: str = "lp", trees: Sequence[SpanningTree] | None = None,
                   max_pairs: int = DEFAULT_PAIR_BUDGET, workers: int = 1) -> SkeletonGraph:
    """Skeleton of conv(vs).

    ``oracle="exchange"`` replaces the LP by the single edge swap test and is
    only accepted for the unconstrained spanning-tree family, where the two
    agree (the test suite checks this against the LP for n <= 5).
    """
    m = len(vs)
    if m < 1:
        raise ValueError("empty vertex set")
    pairs_total = m * (m - 1) // 2
    if oracle == "lp":
        if pairs_total > max_pairs:
            raise ResourceLimitError(
                f"{pairs_total} vertex pairs exceed the pair budget {max_pairs}")
        pairs = list(itertools.combinations(range(m), 2))
        if workers > 1 and len(pairs) > 1:
            chunk = max(1, len(pairs) // (workers * 8))
            chunks = [pairs[k:k + chunk] for k in range(0, len(pairs), chunk)]
            with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(vs,)) as ex:
                flags = [f for part in ex.map(_lp_chunk, chunks) for f in part]
        else:
            flags = [adjacent(i, j, vs) for i, j in pairs]
        edges = [p for p, f in zip(pairs, flags) if f]
    elif oracle == "exchange":
        if not vs.family.startswith("MST"):
            raise ValueError("the exchange oracle is only valid for the MST family")
        masks = []
        for v in vs.vectors:
            mask = 0
            for e, bit in enumerate(v):
                if bit:
                    mask |= 1 << e
            masks.append(mask)
        edges = [(a, b) for a in range(m) for b in range(a + 1, m)
                 if bin(masks[a] ^ masks[b]).count("1") == 2]
    else:
        raise ValueError(f"unknown oracle {oracle!r}")
    return SkeletonGraph.from_edges(m, edges, oracle=oracle, family=vs.family)


# ---------------------------------------------------------------------------
# maximum clique
# ---------------------------------------------------------------------------

def _color_bound(p: int, nb: Sequence[int]) -> int:
    """Number of colors in a greedy coloring of the vertices in mask p."""
    colors = 0
    while p:
        colors += 1
        q = p
        while q:
            low = q & -q
            p ^= low
            q &= ~low & ~nb[low.bit_length() - 1]
    return colors


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def clique_number(s: SkeletonGraph) -> tuple[int, tuple[int, ...]]:
    """Maximum clique size and the lexicographically smallest maximum clique.

    Size: Bron-Kerbosch with pivoting, pruned by a greedy coloring bound.
    Witness: a second depth-first pass in increasing vertex order that
    stops at the first clique of that size.
    """
    m = s.num_vertices
    if m == 0:
        return 0, ()
    nb = s.neighbors
    best = 1

    def expand(size: int, p: int, x: int) -> None:
        nonlocal best
        if not p:
            if size > best:
                best = size
            return
        if size + _color_bound(p, nb) <= best:
            return
        px = p | x
        pivot = max(_bits(px), key=lambda u: bin(p & nb[u]).count("1"))
        for v in _bits(p & ~nb[pivot]):
            bit = 1 << v
            expand(size + 1, p & nb[v], x & nb[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << m) - 1, 0)

    def first(chosen: list[int], cand: int) -> Optional[tuple[int, ...]]:
        if len(chosen) == best:
            return tuple(chosen)
        if len(chosen) + _color_bound(cand, nb) < best:
            return None
        for v in _bits(cand):
            rest = cand & nb[v] & ~((1 << (v + 1)) - 1)
            if len(chosen) + 1 + bin(rest).count("1") < best:
                continue
            chosen.append(v)
            found = first(chosen, rest)
            chosen.pop()
            if found is not None:
                return found
        return None

    witness = first([], (1 << m) - 1)
    assert witness is not None
    return best, witness


def is_clique(s: SkeletonGraph, members: Iterable[int]) -> bool:
    members = list(members)
    return all(s.has_edge(a, b) for a, b in itertools.combinations(members, 2))


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def _labels(s: SkeletonGraph, vs: Optional[VertexSet]) -> list[str]:
    if vs is not None and vs.labels is not None:
        return list(vs.labels)
    if vs is not None:
        n = _n_from_d(len(vs.vectors[0])) if vs.vectors else 0
        table = edge_table(n)
        return [",".join(f"{table[e][0]}{table[e][1]}" for e, b in enumerate(v) if b)
                for v in vs.vectors]
    return [str(v) for v in range(s.num_vertices)]


def _n_from_d(d: int) -> int:
    n = 1
    while num_edges(n) < d:
        n += 1
    return n


def skeleton_to_dot(s: SkeletonGraph, vs: Optional[VertexSet] = None, header: str = "") -> str:
    labels = _labels(s, vs)
    lines = []
    if header:
        lines.extend(f"// {h}" for h in header.splitlines())
    lines.append("graph skeleton {")
    lines.append(f'  label="{s.family} ({s.oracle})";')
    for v, lab in enumerate(labels):
        lines.append(f'  {v} [label="{lab}"];')
    for a, b in s.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def skeleton_to_json(s: SkeletonGraph, vs: Optional[VertexSet] = None, provenance: dict | None = None) -> str:
    labels = _labels(s, vs)
    doc = {
        "family": s.family,
        "oracle": s.oracle,
        "num_vertices": s.num_vertices,
        "labels": labels,
        "adjacency": [list(_bits(s.neighbors[v])) for v in range(s.num_vertices)],
        "stats": s.stats(),
    }
    if provenance is not None:
        doc["provenance"] = provenance
    return json.dumps(doc, indent=1)


CLIQUE_CSV_COLUMNS = ("family", "n", "k", "num_vertices", "num_edges", "clique_number", "witness")


def clique_csv_row(family: str, n: int, k: Optional[int], s: SkeletonGraph,
                   omega: int, witness: Sequence[int]) -> dict:
    return {
        "family": family,
        "n": n,
        "k": "" if k is None else k,
        "num_vertices": s.num_vertices,
        "num_edges": s.num_edges,
        "clique_number": omega,
        "witness": " ".join(map(str, witness)),
    }
