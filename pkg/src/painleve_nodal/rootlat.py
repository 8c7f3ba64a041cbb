"""Root-lattice and Dynkin-diagram combinatorics inside E8.

Everything here is exact integer arithmetic.  Root lattices are handled in
the positive-definite convention; the geometric (negative-definite)
convention only appears as a flag on Gram matrices.

E8 vectors are stored in doubled coordinates so that the half-integral
roots stay integral: the inner product of two stored vectors ``u, v`` is
``dot(u, v) / 4``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cache
from typing import Iterable, Sequence

import numpy as np


class LatticeError(ValueError):
    """Base class for errors raised by this module."""


class NotSimplyLaced(LatticeError):
    pass


class NotADE(LatticeError):
    pass


class NotEmbeddable(LatticeError):
    pass


class UnsupportedType(LatticeError):
    pass


class MalformedConfig(LatticeError):
    pass


class OutOfRange(LatticeError):
    pass


# ---------------------------------------------------------------------------
# Types

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}


@dataclass(frozen=True)
class SimpleType:
    """A connected ADE type such as ``A3`` or ``E7``.

    ``D3`` is folded into ``A3`` on construction.  ``D2`` is not connected and
    has to go through :meth:`RootSystemType.from_components`.
    """

    family: str
    rank: int

    def __post_init__(self):
        fam, rank = self.family, self.rank
        if fam not in _FAMILY_ORDER:
            raise LatticeError(f"unknown family {fam!r}")
        if fam == "D" and rank == 3:
            object.__setattr__(self, "family", "A")
            fam = "A"
        ok = {
            "A": rank >= 1,
            "D": rank >= 4,
            "E": rank in (6, 7, 8),
        }[fam]
        if not ok:
            raise LatticeError(f"no simple type {fam}{rank}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def sort_key(self):
        return (-self.rank, _FAMILY_ORDER[self.family])

    def __str__(self):
        return self.name


def _split_simple(family: str, rank: int) -> list[SimpleType]:
    """Normalize low-rank aliases; may return zero, one or two components."""
    if family == "D" and rank == 2:
        return [SimpleType("A", 1), SimpleType("A", 1)]
    if family == "D" and rank == 1:
        # D1 has no roots
        return []
    return [SimpleType(family, rank)]


@dataclass(frozen=True)
class RootSystemType:
    """Formal direct sum of simple ADE types, kept in canonical order."""

    components: tuple[SimpleType, ...] = ()

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=SimpleType.sort_key))
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_components(cls, parts: Iterable[tuple[str, int] | SimpleType]) -> "RootSystemType":
        comps: list[SimpleType] = []
        for p in parts:
            if isinstance(p, SimpleType):
                comps.append(p)
            else:
                comps.extend(_split_simple(*p))
        return cls(tuple(comps))

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        """Parse ``"D4+A1^4"``, ``"D4+A1+A1+A1+A1"`` or ``"0"``."""
        text = text.strip().replace(" ", "").replace("⊕", "+")
        if text in ("", "0"):
            return cls(())
        parts = []
        for term in text.split("+"):
            base, _, exp = term.partition("^")
            if len(base) < 2 or base[0].upper() not in _FAMILY_ORDER or not base[1:].isdigit():
                raise LatticeError(f"cannot parse root system term {term!r}")
            count = int(exp) if exp else 1
            if count < 1:
                raise LatticeError(f"bad exponent in {term!r}")
            parts.extend([(base[0].upper(), int(base[1:]))] * count)
        return cls.from_components(parts)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def __add__(self, other: "RootSystemType") -> "RootSystemType":
        return RootSystemType(self.components + other.components)

    def __str__(self):
        if not self.components:
            return "0"
        return "+".join(c.name for c in self.components)

    def exponent_form(self) -> str:
        if not self.components:
            return "0"
        out = []
        for comp, grp in itertools.groupby(self.components):
            n = len(list(grp))
            out.append(comp.name if n == 1 else f"{comp.name}^{n}")
        return "+".join(out)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.components)

    def sub_sums(self) -> set["RootSystemType"]:
        """Nonempty sums obtained by dropping whole components."""
        out = set()
        n = len(self.components)
        for mask in range(1, 2 ** n):
            out.add(RootSystemType(tuple(c for i, c in enumerate(self.components) if mask >> i & 1)))
        return out


def as_type(t: "RootSystemType | SimpleType | str") -> RootSystemType:
    if isinstance(t, RootSystemType):
        return t
    if isinstance(t, SimpleType):
        return RootSystemType((t,))
    return RootSystemType.parse(t)


@dataclass(frozen=True)
class AffineType:
    """Affine extension of a finite simple type; ``r = rank + 1`` nodes."""

    base: SimpleType

    @classmethod
    def parse(cls, text: str) -> "AffineType":
        s = text.strip().replace("̃", "")
        for mark in ("~",):
            s = s.replace(mark, "")
        if s.endswith("t") or s.endswith("T"):
            s = s[:-1]
        fam, rank = s[:1].upper(), s[1:]
        if fam not in _FAMILY_ORDER or not rank.isdigit():
            raise UnsupportedType(f"cannot parse affine type {text!r}")
        try:
            return cls(SimpleType(fam, int(rank)))
        except LatticeError as exc:
            raise UnsupportedType(str(exc)) from None

    @property
    def node_count(self) -> int:
        return self.base.rank + 1

    def classical_part(self) -> RootSystemType:
        return RootSystemType((self.base,))

    @property
    def tag(self) -> str:
        return f"{self.base.name}t"

    def __str__(self):
        return f"~{self.base.name}"


# Types of Okamoto-Painleve pairs that carry a Painleve equation.
PAINLEVE_AFFINE: dict[str, str] = {
    "E8": "P_I",
    "E7": "P_II",
    "D8": "P_III(D8)",
    "D7": "P_III(D7)",
    "D6": "P_III(D6)",
    "E6": "P_IV",
    "D5": "P_V",
    "D4": "P_VI",
}


def painleve_affine_types() -> list[AffineType]:
    return [AffineType.parse(k) for k in PAINLEVE_AFFINE]


def _check_painleve(r: "AffineType | str") -> AffineType:
    if not isinstance(r, AffineType):
        r = AffineType.parse(r)
    if r.base.name not in PAINLEVE_AFFINE:
        raise UnsupportedType(f"{r} does not correspond to a Painleve equation")
    return r


# ---------------------------------------------------------------------------
# Dynkin diagrams


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: frozenset
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = set()
        for e in self.edges:
            e = frozenset(e)
            if len(e) != 2:
                raise LatticeError("self-loop in Dynkin diagram")
            if not e <= self.nodes:
                raise LatticeError("edge references unknown node")
            edges.add(e)
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(edges))

    def neighbours(self, v) -> set:
        return {w for e in self.edges if v in e for w in e if w != v}

    def delete(self, v) -> "DynkinDiagram":
        return DynkinDiagram(self.nodes - {v}, frozenset(e for e in self.edges if v not in e))

    def components(self) -> list["DynkinDiagram"]:
        adj = {v: set() for v in self.nodes}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        seen, out = set(), []
        for start in sorted(self.nodes, key=repr):
            if start in seen:
                continue
            comp, stack = set(), [start]
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(adj[v] - comp)
            seen |= comp
            out.append(DynkinDiagram(frozenset(comp), frozenset(e for e in self.edges if e <= comp)))
        return out

    def classify(self) -> list["SimpleType | AffineType"]:
        """Label every connected component as finite or affine ADE."""
        return [_classify_connected(c) for c in self.components()]


def _arm_lengths(adj: dict, centre) -> list[int]:
    arms = []
    for first in adj[centre]:
        length, prev, cur = 1, centre, first
        while len(adj[cur]) == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    return sorted(arms)


def _classify_connected(d: DynkinDiagram) -> "SimpleType | AffineType":
    n, m = len(d.nodes), len(d.edges)
    adj = {v: set() for v in d.nodes}
    for e in d.edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    deg = {v: len(adj[v]) for v in d.nodes}
    if m == n:
        if n >= 3 and all(k == 2 for k in deg.values()):
            return AffineType(SimpleType("A", n - 1))
        raise NotADE(f"cyclic diagram on {n} nodes is not ADE")
    if m != n - 1:
        raise NotADE("diagram has more than one cycle")
    branch = [v for v in d.nodes if deg[v] >= 3]
    if not branch:
        return SimpleType("A", n)
    if len(branch) == 1:
        c = branch[0]
        if deg[c] == 4:
            if n == 5:
                return AffineType(SimpleType("D", 4))
            raise NotADE("degree-4 node outside ~D4")
        if deg[c] > 4:
            raise NotADE("node of degree > 4")
        arms = tuple(_arm_lengths(adj, c))
        if arms[0] == 1 and arms[1] == 1:
            return SimpleType("D", n)
        finite = {(1, 2, 2): 6, (1, 2, 3): 7, (1, 2, 4): 8}
        affine = {(2, 2, 2): 6, (1, 3, 3): 7, (1, 2, 5): 8}
        if arms in finite:
            return SimpleType("E", finite[arms])
        if arms in affine:
            return AffineType(SimpleType("E", affine[arms]))
        raise NotADE(f"tree with arms {arms} is not ADE")
    if len(branch) == 2 and all(deg[b] == 3 for b in branch):
        leaves = [sum(1 for w in adj[b] if deg[w] == 1) for b in branch]
        if leaves == [2, 2]:
            return AffineType(SimpleType("D", n - 1))
    raise NotADE("tree is not of ADE shape")


def dynkin_diagram(s: SimpleType) -> DynkinDiagram:
    """Standard diagram on nodes ``0..rank-1``."""
    n = s.rank
    if s.family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif s.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    return DynkinDiagram(frozenset(range(n)), frozenset(frozenset(e) for e in edges))


def affine_diagram(s: SimpleType) -> DynkinDiagram:
    """Extended diagram; the extra node is ``rank``."""
    n = s.rank
    d = dynkin_diagram(s)
    if s.family == "A":
        if n == 1:
            raise NotSimplyLaced("~A1 has a double edge")
        extra = [(n, 0), (n, n - 1)]
    elif s.family == "D":
        extra = [(n, 1)]
    else:
        extra = [(n, {6: n - 1, 7: 0, 8: n - 2}[n])]
    return DynkinDiagram(d.nodes | {n}, d.edges | frozenset(frozenset(e) for e in extra))


def _finite_labels(d: DynkinDiagram) -> list[SimpleType]:
    out = []
    for lab in d.classify():
        if isinstance(lab, AffineType):
            raise NotADE(f"affine component {lab}")
        out.append(lab)
    return out


# ---------------------------------------------------------------------------
# Gram matrices


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]
    negative: bool = False

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def positive(self) -> "GramMatrix":
        if not self.negative:
            return self
        return GramMatrix(tuple(tuple(-v for v in r) for r in self.entries), False)


def classify_gram(g: "GramMatrix | Sequence[Sequence[int]]", negative: bool | None = None) -> RootSystemType:
    """ADE type of a Gram matrix of simple roots.

    With ``negative=None`` the sign convention is read off the diagonal
    (all ``-2`` means the geometric, negative-definite convention).
    """
    if not isinstance(g, GramMatrix):
        rows = tuple(map(tuple, g))
        if negative is None:
            negative = bool(rows) and all(rows[i][i] == -2 for i in range(len(rows)))
        g = GramMatrix(rows, bool(negative))
    elif negative is not None and negative != g.negative:
        g = GramMatrix(g.entries, negative)
    m = g.positive().entries
    n = len(m)
    edges = []
    for i in range(n):
        if m[i][i] != 2:
            raise NotSimplyLaced(f"diagonal entry {m[i][i]} (expected {'-2' if g.negative else '2'})")
        for j in range(i + 1, n):
            if m[i][j] == -1:
                edges.append(frozenset((i, j)))
            elif m[i][j] != 0:
                raise NotSimplyLaced(f"off-diagonal entry {m[i][j]} at ({i},{j})")
    diag = DynkinDiagram(frozenset(range(n)), frozenset(edges))
    return RootSystemType(tuple(_finite_labels(diag)))


def cartan_matrix(t: "RootSystemType | str") -> list[list[int]]:
    """Block-diagonal Cartan matrix of ``t`` (positive convention)."""
    t = as_type(t)
    n = t.rank
    m = [[0] * n for _ in range(n)]
    off = 0
    for comp in t.components:
        d = dynkin_diagram(comp)
        for i in range(comp.rank):
            m[off + i][off + i] = 2
        for e in d.edges:
            a, b = tuple(e)
            m[off + a][off + b] = m[off + b][off + a] = -1
        off += comp.rank
    return m


def int_det(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# E8


def inner(u: Sequence[int], v: Sequence[int]) -> int:
    """Inner product of two doubled-coordinate E8 vectors."""
    s = sum(a * b for a, b in zip(u, v))
    assert s % 4 == 0
    return s // 4


@cache
def e8_roots() -> tuple[tuple[int, ...], ...]:
    """The 240 roots in doubled coordinates, sorted lexicographically."""
    roots = []
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in itertools.product((2, -2), repeat=2):
            v = [0] * 8
            v[i], v[j] = si, sj
            roots.append(tuple(v))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    return tuple(sorted(roots))


@cache
def _root_tables():
    roots = e8_roots()
    arr = np.array(roots, dtype=np.int64)
    ip = (arr @ arr.T) // 4
    n = len(roots)
    mask0, maskm1 = [], []
    for i in range(n):
        m0 = mm = 0
        for j in range(n):
            if ip[i, j] == 0:
                m0 |= 1 << j
            elif ip[i, j] == -1:
                mm |= 1 << j
        mask0.append(m0)
        maskm1.append(mm)
    positive = 0
    for i, r in enumerate(roots):
        if next(c for c in r if c) > 0:
            positive |= 1 << i
    return roots, ip, mask0, maskm1, positive


# ---------------------------------------------------------------------------
# Subsystem enumeration


def _moves(t: RootSystemType) -> Iterable[RootSystemType]:
    for i, comp in enumerate(t.components):
        rest = t.components[:i] + t.components[i + 1:]
        diagrams = [dynkin_diagram(comp)]
        if comp.family != "A":
            # for A_n the extended cycle minus a node is A_n again
            diagrams.append(affine_diagram(comp))
        for d in diagrams:
            for v in d.nodes:
                yield RootSystemType(rest + tuple(_finite_labels(d.delete(v))))


@cache
def _closure_all() -> frozenset[RootSystemType]:
    e8 = RootSystemType.parse("E8")
    seen = {e8}
    frontier = [e8]
    while frontier:
        nxt = []
        for t in frontier:
            for u in _moves(t):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(seen)


def subsystem_closure() -> frozenset[RootSystemType]:
    """All types of root subsystems of E8 other than ``0`` and ``E8``.

    Fixpoint of {E8} under two moves on a single component: delete a node
    of its diagram, or delete a node of its extended diagram
    (Borel-de Siebenthal).
    """
    e8 = RootSystemType.parse("E8")
    return frozenset(t for t in _closure_all() if t.components and t != e8)


def closure_by_rank() -> dict[int, list[RootSystemType]]:
    out: dict[int, list[RootSystemType]] = {r: [] for r in range(8, 0, -1)}
    for t in subsystem_closure():
        out[t.rank].append(t)
    for r in out:
        out[r].sort(key=RootSystemType.sort_key)
    return out


def is_e8_subsystem(t: "RootSystemType | str") -> bool:
    t = as_type(t)
    return t in _closure_all() and bool(t.components)


# ---------------------------------------------------------------------------
# Embedding certificates


@dataclass(frozen=True)
class RootEmbedding:
    type: RootSystemType
    vectors: tuple[tuple[int, ...], ...]

    def gram(self) -> list[list[int]]:
        return [[inner(u, v) for v in self.vectors] for u in self.vectors]

    def validate(self) -> None:
        """Raise ``LatticeError`` unless this is a valid certificate."""
        roots = set(e8_roots())
        for v in self.vectors:
            if len(v) != 8 or v not in roots:
                raise LatticeError(f"{v} is not an E8 root")
        g = self.gram()
        n = len(g)
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] not in (0, -1):
                    raise LatticeError(f"inner product {g[i][j]} between simple roots {i},{j}")
        if classify_gram(g) != self.type:
            raise LatticeError("Gram matrix does not classify to the claimed type")
        if n and int_det(g) == 0:
            raise LatticeError("vectors are linearly dependent")

    def to_dict(self) -> dict:
        return {"type": str(self.type), "vectors": [list(v) for v in self.vectors]}


def _node_plan(t: RootSystemType):
    """Per node: (component index, earlier neighbours, starts component)."""
    plan = []
    offset = 0
    for ci, comp in enumerate(t.components):
        d = dynkin_diagram(comp)
        order, seen = [], set()
        queue = [0]
        while queue:
            v = queue.pop(0)
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            queue.extend(sorted(d.neighbours(v) - seen))
        pos = {v: offset + k for k, v in enumerate(order)}
        for k, v in enumerate(order):
            nbrs = {pos[w] for w in d.neighbours(v) if pos[w] < offset + k}
            plan.append((ci, nbrs, k == 0))
        offset += comp.rank
    return plan


def find_embedding(t: "RootSystemType | str") -> RootEmbedding:
    """Backtracking search for simple roots of type ``t`` among the E8 roots.

    W(E8) is transitive on roots, and the stabilizer of a root is transitive
    on the roots at any fixed inner product with it, so the first two nodes
    are pinned to the first admissible roots.  Later components start at a
    positive root, and repeated components start at increasing indices.
    """
    t = as_type(t)
    if not t.components:
        return RootEmbedding(t, ())
    if t.rank > 8:
        raise NotEmbeddable(f"{t} has rank {t.rank} > 8")
    roots, _, mask0, maskm1, positive = _root_tables()
    plan = _node_plan(t)
    n = len(plan)
    full = (1 << len(roots)) - 1
    comp_start = {}
    for k, (ci, _, starts) in enumerate(plan):
        if starts:
            comp_start[ci] = k
    chosen: list[int] = []

    def candidates(k: int) -> int:
        ci, nbrs, starts = plan[k]
        cand = full
        for j, r in enumerate(chosen):
            cand &= maskm1[r] if j in nbrs else mask0[r]
        if starts and k >= 2:
            cand &= positive
            if ci > 0 and t.components[ci - 1] == t.components[ci] and comp_start[ci - 1] >= 2:
                prev = chosen[comp_start[ci - 1]]
                cand &= ~((1 << (prev + 1)) - 1)
        if k < 2:
            cand &= cand & -cand  # lowest admissible root only
        return cand

    def search(k: int) -> bool:
        if k == n:
            return True
        cand = candidates(k)
        while cand:
            low = cand & -cand
            chosen.append(low.bit_length() - 1)
            if search(k + 1):
                return True
            chosen.pop()
            cand ^= low
        return False

    if not search(0):
        raise NotEmbeddable(f"{t} does not embed in E8")
    # chosen is in plan order, which matches the block order of cartan_matrix
    vecs = tuple(roots[i] for i in chosen)
    return RootEmbedding(t, vecs)


# ---------------------------------------------------------------------------
# Okamoto-Painleve classification


def complement_types(r: "AffineType | str") -> frozenset[RootSystemType]:
    """Types ``L`` with ``classical_part(r) + L`` a root subsystem of E8."""
    r = _check_painleve(r)
    base = r.classical_part()
    closure = _closure_all()
    out = set()
    for t in closure:
        rest = list(t.components)
        if base.components[0] in rest:
            rest.remove(base.components[0])
            if rest:
                out.add(RootSystemType(tuple(rest)))
    return frozenset(out)


# Kodaira fibres: name -> (lattice T_v, Euler number)
KODAIRA_FIBERS: dict[str, tuple[str, int]] = {
    "II*": ("E8", 10),
    "III*": ("E7", 9),
    "IV*": ("E6", 8),
    "IV": ("A2", 4),
    "III": ("A1", 3),
}


def kodaira_fibers(s: "SimpleType | str") -> list[tuple[str, int]]:
    """Reducible Kodaira fibres whose lattice is ``s``, with Euler numbers."""
    if isinstance(s, str):
        (s,) = RootSystemType.parse(s).components
    out = []
    if s.family == "A":
        out.append((f"I{s.rank + 1}", s.rank + 1))
    elif s.family == "D":
        out.append((f"I{s.rank - 4}*", s.rank + 2))
    for name, (lat, e) in KODAIRA_FIBERS.items():
        if lat == s.name:
            out.append((name, e))
    return out


def euler_min(t: "RootSystemType | str") -> int:
    """Minimal total Euler number of reducible fibres realizing ``t``."""
    return sum(min(e for _, e in kodaira_fibers(c)) for c in as_type(t).components)


def euler_min_affine_fiber(r: "AffineType | str") -> int:
    r = _check_painleve(r) if not isinstance(r, AffineType) else r
    return r.base.rank + 2


def fibered_configs(r: "AffineType | str") -> frozenset[RootSystemType]:
    r = _check_painleve(r)
    e_inf = euler_min_affine_fiber(r)
    return frozenset(l for l in complement_types(r) if e_inf + euler_min(l) <= 12)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    euler_min: int
    reason: str


def oguiso_shioda_feasible(t: "RootSystemType | str") -> Feasibility:
    """Whether ``t`` can be the reducible-fibre lattice of a rational elliptic surface."""
    t = as_type(t)
    e = euler_min(t)
    if not is_e8_subsystem(t) or t == RootSystemType.parse("E8"):
        if t == RootSystemType.parse("E8"):
            return Feasibility(True, e, "E8 (fibre II*)")
        return Feasibility(False, e, "not a root sublattice of E8")
    if e > 12:
        return Feasibility(False, e, f"Euler number {e} exceeds 12")
    return Feasibility(True, e, "ok")


def moduli_dim(r: int, s: int) -> int:
    if r < 0 or s < 0 or r + s > 10:
        raise OutOfRange(f"need 0 <= r+s <= 10, got r={r}, s={s}")
    return 10 - (r + s)


# ---------------------------------------------------------------------------
# Integer lattices inside Z^{1,9}


def integer_row_basis(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the Z-span of ``vectors`` (echelon form by Euclid steps)."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        zero = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (rest if r[col] != 0 else zero).append(r)
            nz = [piv] + rest
        if nz:
            basis.append(nz[0])
        rows = [r for r in zero if any(r)]
        col += 1
    return basis


def short_vectors(gram: Sequence[Sequence[int]], norm: int) -> list[tuple[int, ...]]:
    """All coefficient vectors ``c`` with ``c^T G c == norm`` for positive-definite ``G``.

    Fincke-Pohst enumeration on a float Cholesky factor; candidates are
    confirmed with exact integer arithmetic.
    """
    G = np.array(gram, dtype=float)
    n = len(G)
    L = np.linalg.cholesky(G)  # G = L L^T
    # q(c) = sum_i (sum_{j>=i} L[j,i] c_j)^2
    bound = norm + 1e-6
    out = []
    c = [0] * n

    def rec(i: int, remaining: float):
        partial = sum(L[j, i] * c[j] for j in range(i + 1, n))
        diag = L[i, i]
        r = math.sqrt(max(remaining, 0.0)) / diag
        centre = -partial / diag
        for ci in range(math.ceil(centre - r - 1e-9), math.floor(centre + r + 1e-9) + 1):
            c[i] = ci
            val = (diag * ci + partial) ** 2
            if val > remaining + 1e-9:
                continue
            if i == 0:
                exact = sum(gram[a][b] * c[a] * c[b] for a in range(n) for b in range(n))
                if exact == norm:
                    out.append(tuple(c))
            else:
                rec(i - 1, remaining - val)
        c[i] = 0

    rec(n - 1, bound)
    return out


def root_system_of_lattice(gram: Sequence[Sequence[int]], negative: bool = False) -> RootSystemType:
    """Type of the root system of a definite even lattice given by a Gram matrix."""
    G = [[-v for v in r] for r in gram] if negative else [list(r) for r in gram]
    roots = short_vectors(G, 2)
    if not roots:
        return RootSystemType(())
    n = len(G)
    weights = [math.sqrt(p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)[:n]]
    pos = [r for r in roots if sum(w * x for w, x in zip(weights, r)) > 0]
    pos_set = set(pos)
    simple = []
    for r in pos:
        if not any(tuple(a - b for a, b in zip(r, s)) in pos_set for s in pos if s != r):
            simple.append(r)
    sg = [[sum(G[a][b] * u[a] * v[b] for a in range(n) for b in range(n)) for v in simple] for u in simple]
    return classify_gram(sg)


MINKOWSKI = tuple([1] + [-1] * 9)


def form(u: Sequence[int], v: Sequence[int]) -> int:
    """Intersection form diag(1, -1, ..., -1) on Z^10."""
    return sum(s * a * b for s, a, b in zip(MINKOWSKI, u, v))


@dataclass(frozen=True)
class PicardConfig:
    """Classes in Pic(S) = Z^10 (basis h, e1..e9) describing a pair (S, Y)."""

    Y: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    O: tuple[int, ...] | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "PicardConfig":
        try:
            comps = tuple(tuple(int(v) for v in c) for c in d.get("components", [d["Y"]]))
            mult = tuple(int(m) for m in d.get("multiplicities", [1] * len(comps)))
            O = tuple(int(v) for v in d["O"]) if d.get("O") is not None else None
            return cls(tuple(int(v) for v in d["Y"]), comps, mult, O)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise MalformedConfig(f"bad Picard configuration: {exc!r}") from None

    def to_dict(self) -> dict:
        d = {"Y": list(self.Y), "components": [list(c) for c in self.components],
             "multiplicities": list(self.multiplicities)}
        if self.O is not None:
            d["O"] = list(self.O)
        return d


def op_pair_lattice_check(p: PicardConfig) -> dict:
    """Check the Okamoto-Painleve lattice conditions for a Picard configuration."""
    vecs = [p.Y, *p.components] + ([p.O] if p.O is not None else [])
    if any(len(v) != 10 for v in vecs):
        raise MalformedConfig("classes must have 10 coordinates")
    if len(p.multiplicities) != len(p.components):
        raise MalformedConfig("one multiplicity per component required")
    total = [sum(m * c[k] for m, c in zip(p.multiplicities, p.components)) for k in range(10)]
    if tuple(total) != tuple(p.Y):
        raise MalformedConfig(f"Y != sum m_i Y_i ({list(p.Y)} vs {total})")

    y_dot = [form(p.Y, c) for c in p.components]
    y2 = form(p.Y, p.Y)
    report: dict = {
        "Y_dot_components": y_dot,
        "Y_squared": y2,
        "is_op_pair": all(v == 0 for v in y_dot) and y2 == 0,
    }
    comp_gram = [[form(a, b) for b in p.components] for a in p.components]
    report["component_gram"] = comp_gram
    try:
        labels = DynkinDiagram(
            frozenset(range(len(p.components))),
            frozenset(frozenset((i, j)) for i in range(len(comp_gram)) for j in range(i)
                      if comp_gram[i][j] == 1),
        ).classify()
        if all(comp_gram[i][i] == -2 for i in range(len(comp_gram))) and all(
            comp_gram[i][j] in (0, 1) for i in range(len(comp_gram)) for j in range(i)
        ):
            report["component_type"] = "+".join(str(l) for l in labels)
    except NotADE:
        pass

    if p.O is not None:
        yo = form(p.Y, p.O)
        report["Y_dot_O"] = yo
        if yo == 1 and y2 == 0:
            o2 = form(p.O, p.O)
            images = []
            for k in range(10):
                e = [0] * 10
                e[k] = 1
                b = form(p.Y, e)
                a = form(p.O, e) - b * o2
                images.append([e[i] - a * p.Y[i] - b * p.O[i] for i in range(10)])
            basis = integer_row_basis(images)
            gram = [[form(u, v) for v in basis] for u in basis]
            det = int_det(gram)
            even = all(gram[i][i] % 2 == 0 for i in range(len(gram)))
            report["complement"] = {
                "rank": len(basis),
                "basis": basis,
                "gram": gram,
                "determinant": det,
                "unimodular": abs(det) == 1,
                "even": even,
                "type": str(root_system_of_lattice(gram, negative=True)),
                "convention": "negative",
            }
    return report
