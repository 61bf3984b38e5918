"""Special tree families built around a Hamiltonian path, and their checks.

Leaf family: two anchors u and w carry fixed pendant leaves (k of them in
total) and every other vertex lies on a u-w path. Removing the pendant
leaves leaves exactly that Hamiltonian path, so family members and u-w
Hamiltonian paths on the remaining vertices are in bijection.

Degree family: vertices are split into groups of k-1 around spine
representatives v_1..v_s, s = floor((n-2)/(k-1)), plus two end groups V_0
and V_{s+1} hanging off v_1 and v_s. The spine is a Hamiltonian path from
v_1 to v_s; every vertex ends up with degree at most k.

Both families feed the adjacency-transfer verifiers: adjacency inside the
constrained polytope (tested against ALL its vertices) must match adjacency
of the projected paths inside the Hamiltonian-path polytope.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence

from .errors import ContractViolation
from .graph import (
    DegreeMax,
    LeafMax,
    SpanningTree,
    edge_index,
    enumerate_spanning_trees,
    filter_family,
    num_edges,
)
from .skeleton import (
    SkeletonGraph,
    VertexSet,
    adjacent,
    build_skeleton,
    char_vector,
    clique_number,
)


# ---------------------------------------------------------------------------
# Hamiltonian paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HamiltonianPath:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 2 or len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"{self.vertices} is not a path of distinct vertices")

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def pairs(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for a, b in zip(self.vertices, self.vertices[1:])]

    def edge_indices(self, n: int) -> list[int]:
        return sorted(edge_index(a, b, n) for a, b in self.pairs())

    def char_vector(self, n: int) -> tuple[int, ...]:
        x = [0] * num_edges(n)
        for e in self.edge_indices(n):
            x[e] = 1
        return tuple(x)

    def oriented(self, start: int) -> HamiltonianPath:
        if self.vertices[0] == start:
            return self
        if self.vertices[-1] == start:
            return HamiltonianPath(self.vertices[::-1])
        raise ValueError(f"{start} is not an endpoint of {self.vertices}")

    def label(self) -> str:
        return "-".join(map(str, self.vertices))


def hamiltonian_paths(ground: Iterable[int], u: int, w: int) -> list[HamiltonianPath]:
    """All paths through ``ground`` from u to w, interior orderings in lex order."""
    ground = sorted(set(ground))
    if u == w or u not in ground or w not in ground:
        raise ValueError(f"endpoints {u}, {w} must be distinct members of {ground}")
    inner = [v for v in ground if v not in (u, w)]
    return [HamiltonianPath((u, *perm, w)) for perm in itertools.permutations(inner)]


def hp_vertex_set(ground: Iterable[int], u: int, w: int, n: int) -> VertexSet:
    """Characteristic vectors in the edge space of K_n of all u-w Hamiltonian paths."""
    ground = sorted(set(ground))
    if len(ground) < 2:
        raise ValueError("ground set needs at least 2 vertices")
    paths = hamiltonian_paths(ground, u, w)
    return VertexSet(tuple(p.char_vector(n) for p in paths),
                     f"HP(u={u},w={w},V'={ground})",
                     tuple(p.label() for p in paths))


def _path_from_edges(pairs: Sequence[tuple[int, int]], ground: frozenset[int],
                     start: int, end: int) -> Optional[HamiltonianPath]:
    """The start-end Hamiltonian path on ``ground`` formed by ``pairs``, if it is one."""
    if len(pairs) != len(ground) - 1:
        return None
    adj: dict[int, list[int]] = {v: [] for v in ground}
    for a, b in pairs:
        if a not in adj or b not in adj:
            return None
        adj[a].append(b)
        adj[b].append(a)
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    if len(ground) == 1:
        return None
    if len(adj[start]) != 1 or len(adj[end]) != 1:
        return None
    seq = [start]
    prev = None
    while seq[-1] != end:
        nxt = [v for v in adj[seq[-1]] if v != prev]
        if not nxt:
            return None
        prev = seq[-1]
        seq.append(nxt[0])
        if len(seq) > len(ground):
            return None
    if len(seq) != len(ground):
        return None
    return HamiltonianPath(tuple(seq))


# ---------------------------------------------------------------------------
# leaf-constrained family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeafFamilySpec:
    n: int
    k: int
    u: int
    w: int
    v_u: tuple[int, ...]
    v_w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "v_u", tuple(self.v_u))
        object.__setattr__(self, "v_w", tuple(self.v_w))
        n, k = self.n, self.k
        used = [self.u, self.w, *self.v_u, *self.v_w]
        if any(not 0 <= v < n for v in used):
            raise ValueError(f"vertices must lie in 0..{n - 1}")
        if len(set(used)) != len(used):
            raise ValueError("u, w and the two leaf sets must be pairwise disjoint")
        if len(self.v_u) + len(self.v_w) != k:
            raise ValueError(f"|v_u| + |v_w| must equal k={k}")
        if not self.v_u or not self.v_w:
            # an anchor without pendant leaves would itself be a leaf
            raise ValueError("both anchors need at least one pendant leaf")
        if not k < n or n - k < 2:
            raise ValueError(f"need k < n and n - k >= 2, got n={n}, k={k}")

    @classmethod
    def canonical(cls, n: int, k: int, split: int = 1) -> LeafFamilySpec:
        """u=0, w=1, leaves on u are 2..split+1, leaves on w follow."""
        return cls(n, k, 0, 1, tuple(range(2, 2 + split)), tuple(range(2 + split, 2 + k)))

    @property
    def leaf_set(self) -> frozenset[int]:
        return frozenset(self.v_u) | frozenset(self.v_w)

    @property
    def path_ground(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.leaf_set

    @property
    def inner(self) -> tuple[int, ...]:
        return tuple(sorted(self.path_ground - {self.u, self.w}))

    def pendant_pairs(self) -> list[tuple[int, int]]:
        return ([(min(v, self.u), max(v, self.u)) for v in self.v_u]
                + [(min(v, self.w), max(v, self.w)) for v in self.v_w])

    def params(self) -> dict:
        return {"n": self.n, "k": self.k, "u": self.u, "w": self.w,
                "v_u": list(self.v_u), "v_w": list(self.v_w)}


def lc_lift(p: HamiltonianPath, spec: LeafFamilySpec) -> SpanningTree:
    if p.ground != spec.path_ground or set(p.endpoints) != {spec.u, spec.w}:
        raise ValueError(f"path {p.label()} is not a {spec.u}-{spec.w} Hamiltonian path "
                         f"on {sorted(spec.path_ground)}")
    return SpanningTree.from_pairs(p.pairs() + spec.pendant_pairs(), spec.n)


def lc_project(t: SpanningTree, spec: LeafFamilySpec) -> HamiltonianPath:
    """Drop the pendant leaves; what remains must be the u-w Hamiltonian path."""
    pairs = set(t.pairs)
    pendant = set(spec.pendant_pairs())
    if t.n != spec.n or not pendant <= pairs:
        raise ContractViolation("tree does not carry the fixed pendant edges")
    leaves = spec.leaf_set
    rest = [e for e in pairs - pendant]
    if any(a in leaves or b in leaves for a, b in rest):
        raise ContractViolation("a designated leaf has extra edges")
    path = _path_from_edges(rest, spec.path_ground, spec.u, spec.w)
    if path is None:
        raise ContractViolation("remaining edges do not form a u-w Hamiltonian path")
    return path


def lc_paths(spec: LeafFamilySpec) -> list[HamiltonianPath]:
    return hamiltonian_paths(spec.path_ground, spec.u, spec.w)


def lc_family_trees(spec: LeafFamilySpec) -> list[SpanningTree]:
    return [lc_lift(p, spec) for p in lc_paths(spec)]


def lc_family(spec: LeafFamilySpec) -> VertexSet:
    trees = lc_family_trees(spec)
    return VertexSet.from_trees(trees, f"LCMST-family(n={spec.n},k={spec.k})")


# ---------------------------------------------------------------------------
# degree-constrained family
# ---------------------------------------------------------------------------

def spine_length(n: int, k: int) -> int:
    if n <= 2 or k <= 1:
        raise ValueError(f"need n > 2 and k > 1, got n={n}, k={k}")
    return (n - 2) // (k - 1)


@dataclass(frozen=True)
class DegreeFamilySpec:
    """``groups[0]`` is V_0, ``groups[1..s]`` the spine groups, ``groups[s+1]`` is V_{s+1}.

    The first vertex of every group is its representative.
    """

    n: int
    k: int
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        n, k = self.n, self.k
        s = spine_length(n, k)
        if s < 2:
            raise ValueError(f"n={n}, k={k} gives a spine of length {s} < 2")
        if len(groups) != s + 2:
            raise ValueError(f"expected {s + 2} groups, got {len(groups)}")
        flat = [v for g in groups for v in g]
        if sorted(flat) != list(range(n)):
            raise ValueError("groups must partition the vertex set")
        if any(len(g) != k - 1 for g in groups[1:-1]):
            raise ValueError(f"spine groups must have k-1={k - 1} vertices")
        end0, end1 = len(groups[0]), len(groups[-1])
        if end0 < 1 or end1 < 1 or not 2 <= end0 + end1 <= k + 1:
            raise ValueError("end groups need 1+ vertices each and 2..k+1 together")
        if end0 > k or end1 > k:
            raise ValueError("an end representative would exceed degree k")

    @classmethod
    def canonical(cls, n: int, k: int, order: Sequence[int] | None = None) -> DegreeFamilySpec:
        """Fill V_0, V_1, ..., V_{s+1} consecutively from ``order`` (default 0..n-1)."""
        s = spine_length(n, k)
        order = list(range(n)) if order is None else list(order)
        rest = n - s * (k - 1)
        size0 = (rest + 1) // 2
        groups = [tuple(order[:size0])]
        pos = size0
        for _ in range(s):
            groups.append(tuple(order[pos:pos + k - 1]))
            pos += k - 1
        groups.append(tuple(order[pos:]))
        return cls(n, k, tuple(groups))

    @property
    def s(self) -> int:
        return len(self.groups) - 2

    @property
    def spine(self) -> tuple[int, ...]:
        return tuple(g[0] for g in self.groups[1:-1])

    def fixed_pairs(self) -> list[tuple[int, int]]:
        out = []
        for g in self.groups:
            rep = g[0]
            out.extend((min(rep, v), max(rep, v)) for v in g[1:])
        v0, v1 = self.groups[0][0], self.spine[0]
        vs, vlast = self.spine[-1], self.groups[-1][0]
        out.append((min(v0, v1), max(v0, v1)))
        out.append((min(vs, vlast), max(vs, vlast)))
        return out

    def params(self) -> dict:
        return {"n": self.n, "k": self.k, "s": self.s, "groups": [list(g) for g in self.groups]}


def dc_paths(spec: DegreeFamilySpec) -> list[HamiltonianPath]:
    spine = spec.spine
    return hamiltonian_paths(spine, spine[0], spine[-1])


def dc_lift(p: HamiltonianPath, spec: DegreeFamilySpec) -> SpanningTree:
    spine = spec.spine
    if p.ground != frozenset(spine) or set(p.endpoints) != {spine[0], spine[-1]}:
        raise ValueError(f"path {p.label()} is not a spine path from {spine[0]} to {spine[-1]}")
    return SpanningTree.from_pairs(p.pairs() + spec.fixed_pairs(), spec.n)


def dc_project(t: SpanningTree, spec: DegreeFamilySpec) -> HamiltonianPath:
    pairs = set(t.pairs)
    fixed = set(spec.fixed_pairs())
    if t.n != spec.n or not fixed <= pairs:
        raise ContractViolation("tree does not carry the fixed group edges")
    spine = frozenset(spec.spine)
    rest = list(pairs - fixed)
    if any(a not in spine or b not in spine for a, b in rest):
        raise ContractViolation("a non-spine vertex has extra edges")
    path = _path_from_edges(rest, spine, spec.spine[0], spec.spine[-1])
    if path is None:
        raise ContractViolation("spine edges do not form a v_1-v_s Hamiltonian path")
    return path


def dc_family_trees(spec: DegreeFamilySpec) -> list[SpanningTree]:
    return [dc_lift(p, spec) for p in dc_paths(spec)]


def dc_family(spec: DegreeFamilySpec) -> VertexSet:
    return VertexSet.from_trees(dc_family_trees(spec), f"DCMST-family(n={spec.n},k={spec.k})")


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

@dataclass
class Report:
    lemma: str
    params: dict
    pairs_checked: int = 0
    counterexamples: list = field(default_factory=list)
    wall_time_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=str)


def verify_adjacency_transfer(family: VertexSet, projected: VertexSet,
                              ambient: VertexSet, hp_ambient: VertexSet,
                              lemma: str = "adjacency-transfer", params: dict | None = None) -> Report:
    """Compare adjacency of family pairs in two polytopes.

    ``family[i]`` corresponds to ``projected[i]``; both are looked up in their
    ambient vertex sets, and adjacency is decided against all ambient vertices.
    """
    if len(family) != len(projected):
        raise ValueError("family and projection differ in size")
    t0 = time.perf_counter()
    rep = Report(lemma, dict(params or {}))
    fam_idx = [ambient.index_of(v) for v in family.vectors]
    hp_idx = [hp_ambient.index_of(v) for v in projected.vectors]
    for a, b in itertools.combinations(range(len(family)), 2):
        in_poly = adjacent(fam_idx[a], fam_idx[b], ambient)
        in_hp = adjacent(hp_idx[a], hp_idx[b], hp_ambient)
        rep.pairs_checked += 1
        if in_poly != in_hp:
            rep.counterexamples.append({"pair": [a, b], "polytope_adjacent": in_poly,
                                        "hp_adjacent": in_hp})
    rep.details = {"family_size": len(family), "ambient_size": len(ambient),
                   "hp_size": len(hp_ambient)}
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep


def _ambient(n: int, constraint, family_tag: str, max_n: int) -> VertexSet:
    trees = filter_family(enumerate_spanning_trees(n, max_n=max_n), constraint, n=n)
    return VertexSet.from_trees(trees, family_tag)


def lc_transfer_report(spec: LeafFamilySpec, max_n: int = 8) -> Report:
    fam = lc_family(spec)
    paths = lc_paths(spec)
    projected = VertexSet(tuple(p.char_vector(spec.n) for p in paths), "HP-projection")
    params = spec.params()
    if len(fam) < 2:
        return Report("leaf-adjacency-transfer", params, details={"family_size": len(fam)})
    ambient = _ambient(spec.n, LeafMax(spec.k), f"LCMST(k={spec.k})", max_n)
    hp = hp_vertex_set(spec.path_ground, spec.u, spec.w, spec.n)
    return verify_adjacency_transfer(fam, projected, ambient, hp, "leaf-adjacency-transfer", params)


def dc_transfer_report(spec: DegreeFamilySpec, max_n: int = 8) -> Report:
    fam = dc_family(spec)
    paths = dc_paths(spec)
    projected = VertexSet(tuple(p.char_vector(spec.n) for p in paths), "HP-projection")
    params = spec.params()
    if len(fam) < 2:
        return Report("degree-adjacency-transfer", params, details={"family_size": len(fam)})
    ambient = _ambient(spec.n, DegreeMax(spec.k), f"DCMST(k={spec.k})", max_n)
    spine = spec.spine
    hp = hp_vertex_set(spine, spine[0], spine[-1], spec.n)
    return verify_adjacency_transfer(fam, projected, ambient, hp, "degree-adjacency-transfer", params)


def lc_projection_report(spec: LeafFamilySpec) -> Report:
    """Project every family member, check the path, and round-trip it."""
    t0 = time.perf_counter()
    rep = Report("leaf-projection", spec.params())
    for t in lc_family_trees(spec):
        rep.pairs_checked += 1
        try:
            p = lc_project(t, spec)
        except ContractViolation as exc:
            rep.counterexamples.append({"tree": t.label(), "error": str(exc)})
            continue
        if p.endpoints != (spec.u, spec.w) or p.ground != spec.path_ground:
            rep.counterexamples.append({"tree": t.label(), "error": "wrong path"})
        elif lc_lift(p, spec) != t:
            rep.counterexamples.append({"tree": t.label(), "error": "lift(project(t)) != t"})
        elif sorted(t.leaves()) != sorted(spec.leaf_set):
            rep.counterexamples.append({"tree": t.label(), "error": "leaf set differs"})
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep


def dc_projection_report(spec: DegreeFamilySpec) -> Report:
    t0 = time.perf_counter()
    rep = Report("degree-projection", spec.params())
    spine = spec.spine
    for t in dc_family_trees(spec):
        rep.pairs_checked += 1
        try:
            p = dc_project(t, spec)
        except ContractViolation as exc:
            rep.counterexamples.append({"tree": t.label(), "error": str(exc)})
            continue
        if p.endpoints != (spine[0], spine[-1]) or p.ground != frozenset(spine):
            rep.counterexamples.append({"tree": t.label(), "error": "wrong path"})
        elif dc_lift(p, spec) != t:
            rep.counterexamples.append({"tree": t.label(), "error": "lift(project(t)) != t"})
        elif max(t.degrees) > spec.k:
            rep.counterexamples.append({"tree": t.label(), "error": "degree above k"})
        elif min(t.degrees[spine[0]], t.degrees[spine[-1]]) < spec.k - 1:
            rep.counterexamples.append({"tree": t.label(), "error": "spine end degree below k-1"})
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep


# ---------------------------------------------------------------------------
# Hamiltonian paths versus tours
# ---------------------------------------------------------------------------

def tour_vector(order: Sequence[int], n: int) -> tuple[int, ...]:
    x = [0] * num_edges(n)
    for a, b in zip(order, list(order[1:]) + [order[0]]):
        x[edge_index(a, b, n)] = 1
    return tuple(x)


def tsp_vertex_set(vertices: Sequence[int], n: int) -> VertexSet:
    """All Hamiltonian cycles on ``vertices`` (at least 3) in the edge space of K_n."""
    vertices = sorted(vertices)
    if len(vertices) < 3:
        raise ValueError("a tour needs at least 3 vertices")
    first, rest = vertices[0], vertices[1:]
    vecs: dict[tuple[int, ...], str] = {}
    for perm in itertools.permutations(rest):
        if perm[0] > perm[-1]:
            continue
        order = (first, *perm)
        vecs.setdefault(tour_vector(order, n), "-".join(map(str, order)))
    return VertexSet(tuple(vecs), f"TSP({vertices})", tuple(vecs.values()))


def verify_hp_tsp_merge(ground: Iterable[int], u: int, w: int, n: int | None = None) -> Report:
    """Compare path adjacency with adjacency of tours derived from the paths.

    Two derivations are examined. "closure" adds the edge uw, a bijection
    onto the tours through uw; any disagreement there is a counterexample.
    "merge" identifies w with u, turning a u-w path into a tour on
    |ground|-1 vertices. That map is two-to-one (a path and its interior
    reversal give the same tour): pairs landing on one tour are listed in
    ``details["collapsed"]``, the remaining pairs are compared and their
    disagreements recorded in ``details["merge_disagreements"]`` as data.
    """
    ground = sorted(set(ground))
    n = max(ground) + 1 if n is None else n
    t0 = time.perf_counter()
    rep = Report("hp-tsp-merge", {"ground": ground, "u": u, "w": w, "n": n})
    paths = hamiltonian_paths(ground, u, w)
    hp = VertexSet(tuple(p.char_vector(n) for p in paths), "HP", tuple(p.label() for p in paths))
    merged_ground = [v for v in ground if v != w]
    collapsed = []
    merge_disagree: list[dict] = []
    merge_agree = closure_agree = 0
    if len(paths) < 2:
        rep.details = {"paths": len(paths), "note": "fewer than two paths: nothing to compare"}
        rep.wall_time_ms = (time.perf_counter() - t0) * 1000
        return rep
    merged_tsp = tsp_vertex_set(merged_ground, n) if len(merged_ground) >= 3 else None
    closed_tsp = tsp_vertex_set(ground, n)
    merged_of = []
    for p in paths:
        # identify w with u: the path u..w closes into a tour through u
        merged_of.append(None if merged_tsp is None else
                         merged_tsp.index_of(tour_vector(p.vertices[:-1], n)))
    closed_of = [closed_tsp.index_of(tour_vector(p.vertices, n)) for p in paths]
    for a, b in itertools.combinations(range(len(paths)), 2):
        rep.pairs_checked += 1
        in_hp = adjacent(a, b, hp)
        ca, cb = closed_of[a], closed_of[b]
        in_closed = adjacent(ca, cb, closed_tsp)
        if in_closed == in_hp:
            closure_agree += 1
        else:
            rep.counterexamples.append({"pair": [paths[a].label(), paths[b].label()],
                                        "map": "closure", "hp_adjacent": in_hp,
                                        "tsp_adjacent": in_closed})
        ma, mb = merged_of[a], merged_of[b]
        if ma is None or ma == mb:
            collapsed.append([paths[a].label(), paths[b].label()])
            continue
        in_merged = adjacent(ma, mb, merged_tsp)
        if in_merged == in_hp:
            merge_agree += 1
        else:
            merge_disagree.append({"pair": [paths[a].label(), paths[b].label()],
                                   "hp_adjacent": in_hp, "tsp_adjacent": in_merged})
    rep.details = {
        "paths": len(paths),
        "merged_tours": 0 if merged_tsp is None else len(merged_tsp),
        "closed_tours": len(closed_tsp),
        "merge_agreements": merge_agree,
        "merge_disagreements": merge_disagree,
        "closure_agreements": closure_agree,
        "collapsed": collapsed,
    }
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep


# ---------------------------------------------------------------------------
# clique lower bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CliqueBound:
    """Value of 2^((sqrt(floor(m/2)) - 9) / 2) for the argument m of a theorem."""

    theorem: str
    m: int
    half: int
    exponent: str
    value: Decimal

    @property
    def vacuous(self) -> bool:
        return self.value < 1

    def expression(self) -> str:
        return f"2^({self.exponent})"

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "m": self.m, "floor_m_over_2": self.half,
                "exponent": self.exponent, "expression": self.expression(),
                "value": str(self.value), "vacuous": self.vacuous}


BOUND_THEOREMS = ("lcmst", "rlsmst", "svmst", "dcmst", "tsp")


def bound_argument(theorem: str, n: int | None = None, k: int | None = None,
                   u_size: int | None = None, s: int | None = None) -> int:
    """The argument m fed into the bound formula for each theorem."""
    theorem = theorem.lower()

    def need(**vals):
        missing = [name for name, v in vals.items() if v is None]
        if missing:
            raise ValueError(f"{theorem} bound needs {', '.join(missing)}")

    if theorem == "tsp":
        need(n=n)
        if n < 3:
            raise ValueError("tsp bound needs n >= 3")
        return n
    if theorem == "lcmst":
        need(n=n, k=k)
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
        m = n - k - 1
    elif theorem == "rlsmst":
        need(u_size=u_size, k=k)
        if n is not None and u_size > n:
            raise ValueError("|U| cannot exceed n")
        if not 1 <= k < u_size:
            raise ValueError(f"need 1 <= k < |U|, got |U|={u_size}, k={k}")
        m = u_size - k - 1
    elif theorem == "svmst":
        need(n=n, u_size=u_size)
        if not 0 <= u_size < n:
            raise ValueError(f"need |U| < n, got |U|={u_size}, n={n}")
        m = n - u_size - 1
    elif theorem == "dcmst":
        if s is None:
            need(n=n, k=k)
            if not 1 < k < n:
                raise ValueError(f"need 1 < k < n, got n={n}, k={k}")
            s = spine_length(n, k)
        if s < 1:
            raise ValueError(f"spine length {s} < 1")
        m = s - 1
    else:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {BOUND_THEOREMS}")
    if m < 0:
        raise ValueError(f"bound argument {m} is negative")
    return m


def clique_bound(theorem: str, n: int | None = None, k: int | None = None,
                 u_size: int | None = None, s: int | None = None, digits: int = 30) -> CliqueBound:
    m = bound_argument(theorem, n=n, k=k, u_size=u_size, s=s)
    half = m // 2
    root = isqrt(half)
    with localcontext() as ctx:
        ctx.prec = digits
        if root * root == half:
            exp = Fraction(root - 9, 2)
            text = str(exp) if exp.denominator == 1 else f"{exp.numerator}/{exp.denominator}"
            value = Decimal(2) ** (Decimal(exp.numerator) / Decimal(exp.denominator))
        else:
            text = f"(sqrt({half}) - 9)/2"
            value = Decimal(2) ** ((Decimal(half).sqrt() - 9) / 2)
        value = +value
    return CliqueBound(theorem.lower(), m, half, text, value)


# ---------------------------------------------------------------------------
# lifting cliques
# ---------------------------------------------------------------------------

def lifted_clique_check(spec: LeafFamilySpec | DegreeFamilySpec, max_n: int = 8) -> Report:
    """Lift a maximum clique of the path skeleton into the constrained skeleton.

    The path skeleton is computed with the LP oracle, its lexicographically
    first maximum clique is lifted member by member, and every lifted pair
    is certified adjacent against all vertices of the constrained polytope.
    """
    t0 = time.perf_counter()
    if isinstance(spec, LeafFamilySpec):
        paths = lc_paths(spec)
        lift = lc_lift
        hp = hp_vertex_set(spec.path_ground, spec.u, spec.w, spec.n)
        constraint, tag, theorem = LeafMax(spec.k), f"LCMST(k={spec.k})", "lcmst"
        bound = clique_bound("lcmst", n=spec.n, k=spec.k)
    else:
        paths = dc_paths(spec)
        lift = dc_lift
        spine = spec.spine
        hp = hp_vertex_set(spine, spine[0], spine[-1], spec.n)
        constraint, tag, theorem = DegreeMax(spec.k), f"DCMST(k={spec.k})", "dcmst"
        bound = clique_bound("dcmst", s=spec.s)
    rep = Report("clique-lift", {"family": theorem, **spec.params()})
    hp_skel = build_skeleton(hp)
    omega, witness = clique_number(hp_skel)
    lifted = [lift(paths[i], spec) for i in witness]
    certified = True
    if len(lifted) >= 2:
        ambient = _ambient(spec.n, constraint, tag, max_n)
        idx = [ambient.index_of(char_vector(t)) for t in lifted]
        for a, b in itertools.combinations(range(len(idx)), 2):
            rep.pairs_checked += 1
            if not adjacent(idx[a], idx[b], ambient):
                certified = False
                rep.counterexamples.append({"pair": [lifted[a].label(), lifted[b].label()]})
    if Decimal(len(lifted)) < bound.value:
        rep.counterexamples.append({"bound": bound.to_dict(), "clique": len(lifted)})
    rep.details = {
        "hp_vertices": len(hp),
        "hp_clique_number": omega,
        "hp_witness": [paths[i].label() for i in witness],
        "lifted_clique": [t.label() for t in lifted],
        "certified": certified,
        "bound": bound.to_dict(),
    }
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep


def hp_skeleton(ground: Iterable[int], u: int, w: int, n: int) -> SkeletonGraph:
    return build_skeleton(hp_vertex_set(ground, u, w, n))
