"""Bound quiver algebras over the rationals, and their representations.

An algebra is presented by a quiver and an admissible ideal generated by
homogeneous relations (rational combinations of parallel equal-length
paths).  The basis is built degree by degree: the degree-m piece reachable
from a source vertex is spanned by arrows applied to the degree-(m-1)
piece, modulo relations applied at the top.  Pivoting during the reduction
always eliminates the lexicographically-largest candidate path, so every
basis element carries a deterministic representative path and golden files
stay stable.

Modules are right modules, stored as one fiber per vertex with one matrix
per arrow mapping the target fiber to the source fiber (the right action).
Projectives, injectives and the interval modules M(x) of the type-A model
are produced here, along with exact intertwiner-space solving.

Paths compose diagrammatically: ``path = (a1, a2, ...)`` traverses a1
first, and ``mul(p, q)`` is "p after q".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmat import ExactMatrix, ZERO, ONE, span_basis
from .pathcomb import OrderedSeq, preceq

DEFAULT_MAX_DIM = 40_000
DEFAULT_MAX_DEGREE = 64


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str


@dataclass(frozen=True)
class Arrow:
    id: int
    src: int
    tgt: int
    label: str


class Quiver:
    def __init__(self, vertices: list[Vertex], arrows: list[Arrow]):
        self.vertices = list(vertices)
        self.arrows = list(arrows)
        ids = {v.id for v in self.vertices}
        if len(ids) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for a in self.arrows:
            if a.src not in ids or a.tgt not in ids:
                raise ValueError(f"arrow {a} has an endpoint outside the vertex set")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow ids")
        self.vertex_by_id = {v.id: v for v in self.vertices}
        self.arrow_by_id = {a.id: a for a in self.arrows}
        self.arrows_into: dict[int, list[Arrow]] = {v.id: [] for v in self.vertices}
        self.arrows_out: dict[int, list[Arrow]] = {v.id: [] for v in self.vertices}
        for a in self.arrows:
            self.arrows_into[a.tgt].append(a)
            self.arrows_out[a.src].append(a)

    def reversed(self) -> "Quiver":
        return Quiver(
            self.vertices,
            [Arrow(a.id, a.tgt, a.src, a.label) for a in self.arrows],
        )

    def path_endpoints(self, path: tuple[int, ...]) -> tuple[int, int]:
        if not path:
            raise ValueError("empty path has no endpoints")
        first = self.arrow_by_id[path[0]]
        src, cur = first.src, first.tgt
        for aid in path[1:]:
            a = self.arrow_by_id[aid]
            if a.src != cur:
                raise ValueError(f"path {path} is not composable")
            cur = a.tgt
        return src, cur


@dataclass(frozen=True)
class Relation:
    """Rational combination of parallel, equal-length paths (arrow-id tuples)."""

    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty relation")
        if all(c == 0 for c, _ in self.terms):
            raise ValueError("relation with all-zero coefficients")

    def validate(self, quiver: Quiver) -> tuple[int, int, int]:
        """Common (src, tgt, degree); raises if terms disagree."""
        sig = None
        for coeff, path in self.terms:
            src, tgt = quiver.path_endpoints(path)
            this = (src, tgt, len(path))
            if sig is None:
                sig = this
            elif sig != this:
                raise ValueError(f"relation terms not parallel/homogeneous: {self.terms}")
        if sig[2] < 2:
            raise ValueError("relations must have degree at least 2")
        return sig


def relation(*terms) -> Relation:
    return Relation(tuple((Fraction(c), tuple(p)) for c, p in terms))


@dataclass(frozen=True)
class BasisElement:
    id: int
    src: int
    tgt: int
    degree: int
    path: tuple[int, ...]


class BoundQuiverAlgebra:
    """kQ/I with a path basis, exact multiplication table and nilpotency bound."""

    def __init__(self, quiver, relations, basis, mult, nilpotency, vertex_data=None):
        self.quiver = quiver
        self.relations = list(relations)
        self.basis: list[BasisElement] = basis
        self.mult: dict[tuple[int, int], dict[int, Fraction]] = mult
        self.nilpotency = nilpotency
        self.vertex_data = vertex_data or {}
        self.blocks: dict[tuple[int, int], list[int]] = {}
        for b in self.basis:
            self.blocks.setdefault((b.src, b.tgt), []).append(b.id)
        self.idempotent_of: dict[int, int] = {
            b.src: b.id for b in self.basis if b.degree == 0
        }
        self.arrow_elem: dict[int, int] = {
            b.path[0]: b.id for b in self.basis if b.degree == 1
        }
        self._block_index = {
            (src, tgt): {bid: k for k, bid in enumerate(ids)}
            for (src, tgt), ids in self.blocks.items()
        }
        self._op = None
        self._proj_cache: dict[int, QuiverRep] = {}
        self._inj_cache: dict[int, QuiverRep] = {}

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_quiver_data(
        quiver: Quiver,
        relations,
        vertex_data=None,
        max_dim: int = DEFAULT_MAX_DIM,
        max_degree: int = DEFAULT_MAX_DEGREE,
    ) -> "BoundQuiverAlgebra":
        relations = list(relations)
        rel_info = [(r, r.validate(quiver)) for r in relations]
        towers = {}
        total_dim = 0
        for s in quiver.vertices:
            tower = _Tower.build(quiver, rel_info, s.id, max_degree)
            towers[s.id] = tower
            total_dim += tower.dimension()
            if total_dim > max_dim:
                raise BudgetError(f"algebra dimension exceeds budget {max_dim}")

        basis = []
        for s in sorted(towers):
            tower = towers[s]
            for m in range(len(tower.layers)):
                for t in sorted(tower.layers[m]):
                    for rec in tower.layers[m][t]:
                        rec.global_id = len(basis)
                        basis.append(BasisElement(rec.global_id, s, t, m, rec.path))

        mult = {}
        for b2 in basis:  # right factor: s -> u
            tower = towers[b2.src]
            for b1 in basis:  # left factor: u -> t
                if b1.src != b2.tgt:
                    continue
                coeffs = tower.apply_path(b1.path, b2.degree, b2.tgt, b2.path)
                mult[(b1.id, b2.id)] = {
                    rec.global_id: c for rec, c in coeffs if c != 0
                }
        nilpotency = max((b.degree for b in basis), default=0) + 1
        return BoundQuiverAlgebra(quiver, relations, basis, mult, nilpotency, vertex_data)

    def opposite(self) -> "BoundQuiverAlgebra":
        """Same basis ids with reversed paths, swapped blocks, transposed table."""
        if self._op is None:
            op_quiver = self.quiver.reversed()
            op_relations = [
                Relation(tuple((c, tuple(reversed(p))) for c, p in r.terms))
                for r in self.relations
            ]
            op_basis = [
                BasisElement(b.id, b.tgt, b.src, b.degree, tuple(reversed(b.path)))
                for b in self.basis
            ]
            op_mult = {(j, i): dict(v) for (i, j), v in self.mult.items()}
            op = BoundQuiverAlgebra(
                op_quiver, op_relations, op_basis, op_mult, self.nilpotency, self.vertex_data
            )
            op._op = self
            self._op = op
        return self._op

    # -- element arithmetic (elements are dicts basis_id -> Fraction) ------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vertex_ids(self) -> list[int]:
        return [v.id for v in self.quiver.vertices]

    def elem_mul(self, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        for i, ci in x.items():
            if ci == 0:
                continue
            for j, cj in y.items():
                if cj == 0:
                    continue
                table = self.mult.get((i, j))
                if not table:
                    continue
                c = ci * cj
                for k, ck in table.items():
                    out[k] = out.get(k, ZERO) + c * ck
        return {k: v for k, v in out.items() if v != 0}

    def elem_add(self, x: dict, y: dict) -> dict:
        out = dict(x)
        for k, v in y.items():
            out[k] = out.get(k, ZERO) + v
        return {k: v for k, v in out.items() if v != 0}

    def elem_scale(self, c, x: dict) -> dict:
        c = Fraction(c)
        if c == 0:
            return {}
        return {k: c * v for k, v in x.items()}

    def elem_sub(self, x: dict, y: dict) -> dict:
        return self.elem_add(x, self.elem_scale(-1, y))

    def basis_elem(self, bid: int) -> dict:
        return {bid: ONE}

    def block_coords(self, elem: dict, src: int, tgt: int) -> list[Fraction]:
        ids = self.blocks.get((src, tgt), [])
        index = self._block_index.get((src, tgt), {})
        vec = [ZERO] * len(ids)
        for k, v in elem.items():
            if v == 0:
                continue
            if k not in index:
                raise ValueError(f"element not supported on block ({src}, {tgt})")
            vec[index[k]] = v
        return vec

    def elem_from_block_coords(self, coords, src: int, tgt: int) -> dict:
        ids = self.blocks.get((src, tgt), [])
        return {bid: Fraction(c) for bid, c in zip(ids, coords) if c != 0}

    def is_radical(self, elem: dict) -> bool:
        return all(self.basis[k].degree >= 1 for k, v in elem.items() if v != 0)

    def cartan_matrix(self) -> list[list[int]]:
        """dim e_i A e_j, rows indexed by target vertex, columns by source."""
        vids = self.vertex_ids()
        return [[len(self.blocks.get((j, i), [])) for j in vids] for i in vids]

    # -- distinguished modules ---------------------------------------------

    def projective(self, v: int) -> "QuiverRep":
        if v not in self._proj_cache:
            dims = {}
            for u in self.vertex_ids():
                dims[u] = len(self.blocks.get((u, v), []))
            maps = {}
            for a in self.quiver.arrows:
                src_ids = self.blocks.get((a.src, v), [])
                tgt_ids = self.blocks.get((a.tgt, v), [])
                arrow = self.basis_elem(self.arrow_elem[a.id])
                cols = []
                for bid in tgt_ids:
                    prod = self.elem_mul(self.basis_elem(bid), arrow)
                    cols.append(self.block_coords(prod, a.src, v))
                maps[a.id] = ExactMatrix(
                    len(src_ids),
                    len(tgt_ids),
                    [[cols[j][i] for j in range(len(tgt_ids))] for i in range(len(src_ids))],
                )
            self._proj_cache[v] = QuiverRep(self, dims, maps, check=False)
        return self._proj_cache[v]

    def injective(self, v: int) -> "QuiverRep":
        """Dual of the opposite projective: fiber at y is the dual of paths v -> y."""
        if v not in self._inj_cache:
            dims = {u: len(self.blocks.get((v, u), [])) for u in self.vertex_ids()}
            maps = {}
            for a in self.quiver.arrows:
                # right action sends the fiber at tgt to the fiber at src by
                # precomposing with left multiplication by the arrow
                src_ids = self.blocks.get((v, a.src), [])
                tgt_ids = self.blocks.get((v, a.tgt), [])
                arrow = self.basis_elem(self.arrow_elem[a.id])
                lmult = ExactMatrix(len(tgt_ids), len(src_ids))
                for j, bid in enumerate(src_ids):
                    prod = self.elem_mul(arrow, self.basis_elem(bid))
                    col = self.block_coords(prod, v, a.tgt)
                    for i in range(len(tgt_ids)):
                        lmult.data[i][j] = col[i]
                maps[a.id] = lmult.transpose()
            self._inj_cache[v] = QuiverRep(self, dims, maps, check=False)
        return self._inj_cache[v]

    def simple(self, v: int) -> "QuiverRep":
        dims = {u: (1 if u == v else 0) for u in self.vertex_ids()}
        maps = {
            a.id: ExactMatrix(dims[a.src], dims[a.tgt]) for a in self.quiver.arrows
        }
        return QuiverRep(self, dims, maps, check=False)

    def proj_map_element(self, phi: dict[int, ExactMatrix], u: int, v: int) -> dict:
        """Element of e_v A e_u representing a module map P_u -> P_v.

        The map is determined by the image of the degree-zero generator.
        """
        gen_index = self.blocks[(u, u)].index(self.idempotent_of[u])
        col = [phi[u].data[i][gen_index] for i in range(phi[u].rows)]
        return self.elem_from_block_coords(col, u, v)

    def proj_map_from_element(self, elem: dict, u: int, v: int) -> dict[int, ExactMatrix]:
        """Per-vertex matrices of left multiplication e_u A -> e_v A."""
        maps = {}
        for y in self.vertex_ids():
            src_ids = self.blocks.get((y, u), [])
            tgt_ids = self.blocks.get((y, v), [])
            m = ExactMatrix(len(tgt_ids), len(src_ids))
            for j, bid in enumerate(src_ids):
                prod = self.elem_mul(elem, self.basis_elem(bid))
                col = self.block_coords(prod, y, v)
                for i in range(len(tgt_ids)):
                    m.data[i][j] = col[i]
            maps[y] = m
        return maps


class BudgetError(RuntimeError):
    """A configured size or depth budget was exhausted."""


class _TowerRecord:
    __slots__ = ("path", "local_index", "global_id")

    def __init__(self, path, local_index):
        self.path = path
        self.local_index = local_index
        self.global_id = None


class _Tower:
    """Degreewise basis of the paths out of one source vertex, mod relations."""

    def __init__(self, quiver, source):
        self.quiver = quiver
        self.source = source
        self.layers: list[dict[int, list[_TowerRecord]]] = []
        # arrow application in coordinates: (degree, arrow id) -> ExactMatrix
        self.apply_maps: dict[tuple[int, int], ExactMatrix] = {}

    @staticmethod
    def build(quiver, rel_info, source, max_degree):
        tower = _Tower(quiver, source)
        tower.layers.append({source: [_TowerRecord((), 0)]})
        for m in range(1, max_degree + 1):
            layer = tower._extend(rel_info, m)
            if not layer:
                break
            tower.layers.append(layer)
        else:
            raise BudgetError(f"algebra not nilpotent within degree {max_degree}")
        return tower

    def dimension(self):
        return sum(len(recs) for layer in self.layers for recs in layer.values())

    def _extend(self, rel_info, m):
        prev = self.layers[m - 1]
        # formal candidates per target vertex: (arrow, previous record)
        candidates: dict[int, list[tuple[Arrow, _TowerRecord]]] = {}
        for u, recs in prev.items():
            for a in self.quiver.arrows_out[u]:
                for rec in recs:
                    candidates.setdefault(a.tgt, []).append((a, rec))
        for t in candidates:
            candidates[t].sort(key=lambda ab: ab[1].path + (ab[0].id,))

        layer: dict[int, list[_TowerRecord]] = {}
        projections: dict[int, tuple[dict, list[int]]] = {}
        for t, cands in candidates.items():
            pos = {(a.id, rec.local_index, a.src): k for k, (a, rec) in enumerate(cands)}
            rel_rows = []
            for r, (rsrc, rtgt, rdeg) in rel_info:
                if rtgt != t or m < rdeg:
                    continue
                lower = self.layers[m - rdeg].get(rsrc, [])
                for w in lower:
                    row = [ZERO] * len(cands)
                    for coeff, path in r.terms:
                        cur = {(rsrc, w.local_index): ONE}
                        degree = m - rdeg
                        for aid in path[:-1]:
                            cur = self._apply_arrow_coords(cur, aid, degree)
                            degree += 1
                        last = self.quiver.arrow_by_id[path[-1]]
                        for (u, idx), c in cur.items():
                            if u != last.src or c == 0:
                                continue
                            row[pos[(last.id, idx, u)]] += coeff * c
                    if any(x != 0 for x in row):
                        rel_rows.append(row)
            if rel_rows:
                red, pivots = ExactMatrix.from_rows(rel_rows).rref()
            else:
                red, pivots = None, []
            pivot_set = set(pivots)
            free = [k for k in range(len(cands)) if k not in pivot_set]
            if free:
                recs = []
                for local, k in enumerate(free):
                    a, prev_rec = cands[k]
                    recs.append(_TowerRecord(prev_rec.path + (a.id,), local))
                layer[t] = recs
            projections[t] = (
                {pc: red.data[rix] for rix, pc in enumerate(pivots)} if red else {},
                free,
            )

        # store arrow-application matrices from layer m-1 into layer m
        for t, cands in candidates.items():
            pivot_rows, free = projections[t]
            free_pos = {k: i for i, k in enumerate(free)}
            by_arrow: dict[int, ExactMatrix] = {}
            for k, (a, rec) in enumerate(cands):
                m_arrow = by_arrow.get(a.id)
                if m_arrow is None:
                    m_arrow = ExactMatrix(len(free), len(prev[a.src]))
                    by_arrow[a.id] = m_arrow
                if k in free_pos:
                    m_arrow.data[free_pos[k]][rec.local_index] += ONE
                else:
                    row = pivot_rows[k]
                    for fk, i in free_pos.items():
                        if row[fk] != 0:
                            m_arrow.data[i][rec.local_index] -= row[fk]
            for aid, mat in by_arrow.items():
                self.apply_maps[(m, aid)] = mat
        return layer

    def _apply_arrow_coords(self, vec: dict, arrow_id: int, degree: int) -> dict:
        """Apply one arrow to a degree-homogeneous vector {(vertex, idx): coeff}."""
        arrow = self.quiver.arrow_by_id[arrow_id]
        out: dict[tuple[int, int], Fraction] = {}
        mat = self.apply_maps.get((degree + 1, arrow_id))
        if mat is None:
            return out
        for (u, idx), c in vec.items():
            if c == 0 or u != arrow.src:
                continue
            for i in range(mat.rows):
                x = mat.data[i][idx]
                if x != 0:
                    key = (arrow.tgt, i)
                    out[key] = out.get(key, ZERO) + c * x
        return {k: v for k, v in out.items() if v != 0}

    def apply_path(self, path, start_degree, start_vertex, _start_path):
        """Apply a path to a degree-``start_degree`` basis record; returns
        [(record, coeff)] in the resulting layer."""
        layer = self.layers[start_degree][start_vertex]
        rec = next(r for r in layer if r.path == _start_path)
        vec = {(start_vertex, rec.local_index): ONE}
        degree = start_degree
        for aid in path:
            nxt: dict[tuple[int, int], Fraction] = {}
            arrow = self.quiver.arrow_by_id[aid]
            mat = self.apply_maps.get((degree + 1, aid))
            for (u, idx), c in vec.items():
                if c == 0 or u != arrow.src or mat is None:
                    continue
                for i in range(mat.rows):
                    x = mat.data[i][idx]
                    if x != 0:
                        key = (arrow.tgt, i)
                        nxt[key] = nxt.get(key, ZERO) + c * x
            vec = nxt
            degree += 1
            if not vec:
                return []
        out = []
        for (u, idx), c in vec.items():
            if c != 0:
                out.append((self.layers[degree][u][idx], c))
        return out


class QuiverRep:
    """Right module: fibers per vertex, right arrow action target -> source."""

    def __init__(self, algebra: BoundQuiverAlgebra, dims: dict, maps: dict, check=True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertex_ids()}
        self.maps = {}
        for a in algebra.quiver.arrows:
            m = maps.get(a.id)
            if m is None:
                m = ExactMatrix(self.dims[a.src], self.dims[a.tgt])
            if (m.rows, m.cols) != (self.dims[a.src], self.dims[a.tgt]):
                raise ValueError(f"map for arrow {a.id} has wrong shape")
            self.maps[a.id] = m
        if check:
            self.check_relations()

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> dict:
        return dict(self.dims)

    def path_action(self, path: tuple[int, ...]) -> ExactMatrix:
        """Matrix of the right action of a path, target fiber to source fiber."""
        quiver = self.algebra.quiver
        src, tgt = quiver.path_endpoints(path)
        m = ExactMatrix.identity(self.dims[tgt])
        for aid in reversed(path):
            m = self.maps[aid].matmul(m)
        assert m.rows == self.dims[src]
        return m

    def element_action(self, elem: dict, src: int, tgt: int) -> ExactMatrix:
        """Right action of an algebra element supported on e_tgt A e_src.

        Maps the fiber at tgt to the fiber at src.
        """
        out = ExactMatrix(self.dims[src], self.dims[tgt])
        for bid, c in elem.items():
            if c == 0:
                continue
            b = self.algebra.basis[bid]
            if (b.src, b.tgt) != (src, tgt):
                raise ValueError("element not supported on the requested block")
            if b.degree == 0:
                out = out.add(ExactMatrix.identity(self.dims[src]).scale(c))
            else:
                out = out.add(self.path_action(b.path).scale(c))
        return out

    def check_relations(self):
        for r in self.algebra.relations:
            src, tgt, _ = r.validate(self.algebra.quiver)
            acc = ExactMatrix(self.dims[src], self.dims[tgt])
            for coeff, path in r.terms:
                acc = acc.add(self.path_action(path).scale(coeff))
            if not acc.is_zero():
                raise ValueError(f"relation {r} does not vanish on the representation")

    def radical_fibers(self) -> dict[int, list[list[Fraction]]]:
        """Spanning vectors of (M rad)_v = sum of images of outgoing arrows."""
        rad = {v: [] for v in self.dims}
        for a in self.algebra.quiver.arrows:
            mat = self.maps[a.id]
            for j in range(mat.cols):
                col = [mat.data[i][j] for i in range(mat.rows)]
                if any(x != 0 for x in col):
                    rad[a.src].append(col)
        return {v: span_basis(vs) for v, vs in rad.items()}


def build_auslander_algebra(
    n: int, d: int, max_dim: int = DEFAULT_MAX_DIM
) -> BoundQuiverAlgebra:
    """The bound quiver algebra on os_n^d with commuting square relations.

    Vertices are the ordered sequences, arrows increment one entry, and for
    each pair of increments the two reroutes agree when both exist and are
    zero when exactly one does.
    """
    if n < 2 or d < 1:
        raise ValueError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    from .pathcomb import enumerate_os

    seqs = [x.entries for x in enumerate_os(n, d)]
    index = {x: i for i, x in enumerate(seqs)}
    vertices = [Vertex(i, "".join(map(str, x)) if n + d - 1 <= 9 else str(x)) for i, x in enumerate(seqs)]

    def bump(x, i):
        y = list(x)
        y[i] += 1
        y = tuple(y)
        return y if y in index else None

    arrows = []
    arrow_id: dict[tuple[int, int], int] = {}
    for x in seqs:
        for i in range(d):
            y = bump(x, i)
            if y is not None:
                aid = len(arrows)
                arrows.append(Arrow(aid, index[x], index[y], f"a{i + 1}({vertices[index[x]].label})"))
                arrow_id[(index[x], i)] = aid

    quiver = Quiver(vertices, arrows)
    relations = []
    for x in seqs:
        for i in range(d):
            for j in range(i + 1, d):
                xi, xj = bump(x, i), bump(x, j)
                via_i = via_j = None  # the two reroutes to x + e_i + e_j
                if xi is not None and bump(xi, j) is not None:
                    via_i = (arrow_id[(index[x], i)], arrow_id[(index[xi], j)])
                if xj is not None and bump(xj, i) is not None:
                    via_j = (arrow_id[(index[x], j)], arrow_id[(index[xj], i)])
                if via_i and via_j:
                    relations.append(relation((1, via_i), (-1, via_j)))
                elif via_i:
                    relations.append(relation((1, via_i)))
                elif via_j:
                    relations.append(relation((1, via_j)))

    vertex_data = {i: x for i, x in enumerate(seqs)}
    alg = BoundQuiverAlgebra.from_quiver_data(
        quiver, relations, vertex_data=vertex_data, max_dim=max_dim
    )
    alg.os_params = (n, d)
    return alg


def vertex_of_entries(alg: BoundQuiverAlgebra, entries) -> int:
    entries = tuple(entries)
    for v, data in alg.vertex_data.items():
        if data == entries:
            return v
    raise KeyError(f"no vertex labelled {entries}")


def module_M(alg: BoundQuiverAlgebra, x: OrderedSeq) -> QuiverRep:
    """Interval module: one-dimensional on the coordinate band of x.

    x has d+1 entries for an algebra on os_n^d; the support consists of the
    vertices z with (x_1..x_d) interleaving below z and z interleaving below
    (x_2-1..x_{d+1}-1), with identity maps on all supported arrows.
    """
    n, d = getattr(alg, "os_params", (None, None))
    if n is None:
        raise ValueError("module_M needs an algebra built by build_auslander_algebra")
    if (x.n, x.d) != (n, d + 1):
        raise ValueError(f"label must lie in os_{n}^{d + 1}, got os_{x.n}^{x.d}")
    lo = OrderedSeq(n, d, x.entries[:d])
    hi = OrderedSeq(n, d, tuple(e - 1 for e in x.entries[1:]))
    dims = {}
    for v, entries in alg.vertex_data.items():
        z = OrderedSeq(n, d, entries)
        dims[v] = 1 if preceq(lo, z) and preceq(z, hi) else 0
    maps = {}
    for a in alg.quiver.arrows:
        if dims[a.src] and dims[a.tgt]:
            maps[a.id] = ExactMatrix(1, 1, [[ONE]])
    return QuiverRep(alg, dims, maps)


# -- morphisms of representations -----------------------------------------


def hom_space(M: QuiverRep, N: QuiverRep) -> tuple[int, list[dict[int, ExactMatrix]]]:
    """Dimension and basis of the intertwiner space Hom(M, N), exactly."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    alg = M.algebra
    offsets = {}
    total = 0
    for v in alg.vertex_ids():
        offsets[v] = total
        total += N.dims[v] * M.dims[v]
    rows = []
    for a in alg.quiver.arrows:
        u, w = a.src, a.tgt
        RM, RN = M.maps[a.id], N.maps[a.id]
        # phi_u RM - RN phi_w = 0, an (N_u x M_w)-matrix of equations
        for i in range(N.dims[u]):
            for j in range(M.dims[w]):
                row = [ZERO] * total
                for k in range(M.dims[u]):
                    if RM.data[k][j] != 0:
                        row[offsets[u] + i * M.dims[u] + k] += RM.data[k][j]
                for k in range(N.dims[w]):
                    if RN.data[i][k] != 0:
                        row[offsets[w] + k * M.dims[w] + j] -= RN.data[i][k]
                if any(x != 0 for x in row):
                    rows.append(row)
    if rows:
        kernel = ExactMatrix.from_rows(rows).nullspace()
    else:
        kernel = ExactMatrix.identity(total).data if total else []
    basis = []
    for vec in kernel:
        phi = {}
        for v in alg.vertex_ids():
            m = ExactMatrix(N.dims[v], M.dims[v])
            for i in range(N.dims[v]):
                for j in range(M.dims[v]):
                    m.data[i][j] = vec[offsets[v] + i * M.dims[v] + j]
            phi[v] = m
        basis.append(phi)
    return len(basis), basis


def identity_morphism(M: QuiverRep) -> dict[int, ExactMatrix]:
    return {v: ExactMatrix.identity(M.dims[v]) for v in M.algebra.vertex_ids()}


def compose_morphisms(g, f, alg) -> dict[int, ExactMatrix]:
    """g after f, per vertex."""
    return {v: g[v].matmul(f[v]) for v in alg.vertex_ids()}


def morphism_is_zero(phi) -> bool:
    return all(m.is_zero() for m in phi.values())


def direct_sum(reps: list[QuiverRep]) -> tuple[QuiverRep, list[dict]]:
    """Direct sum and the per-summand inclusion maps."""
    if not reps:
        raise ValueError("empty direct sum")
    alg = reps[0].algebra
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertex_ids()}
    maps = {}
    for a in alg.quiver.arrows:
        m = ExactMatrix(dims[a.src], dims[a.tgt])
        ro = co = 0
        for r in reps:
            block = r.maps[a.id]
            for i in range(block.rows):
                for j in range(block.cols):
                    m.data[ro + i][co + j] = block.data[i][j]
            ro += r.dims[a.src]
            co += r.dims[a.tgt]
        maps[a.id] = m
    total = QuiverRep(alg, dims, maps, check=False)
    inclusions = []
    offset = {v: 0 for v in alg.vertex_ids()}
    for r in reps:
        inc = {}
        for v in alg.vertex_ids():
            m = ExactMatrix(dims[v], r.dims[v])
            for j in range(r.dims[v]):
                m.data[offset[v] + j][j] = ONE
            inc[v] = m
        inclusions.append(inc)
        for v in alg.vertex_ids():
            offset[v] += r.dims[v]
    return total, inclusions


def kernel_of_morphism(phi, M: QuiverRep, N: QuiverRep) -> tuple[QuiverRep, dict]:
    """Kernel submodule with its inclusion into M."""
    alg = M.algebra
    kb = {}
    for v in alg.vertex_ids():
        if M.dims[v] == 0:
            kb[v] = []
            continue
        kb[v] = phi[v].nullspace() if phi[v].rows else ExactMatrix.identity(M.dims[v]).data
    dims = {v: len(kb[v]) for v in alg.vertex_ids()}
    incl = {
        v: ExactMatrix(
            M.dims[v], dims[v], [[kb[v][j][i] for j in range(dims[v])] for i in range(M.dims[v])]
        )
        for v in alg.vertex_ids()
    }
    maps = {}
    for a in alg.quiver.arrows:
        u, w = a.src, a.tgt
        if dims[w] == 0 or M.dims[u] == 0:
            maps[a.id] = ExactMatrix(dims[u], dims[w])
            continue
        image = M.maps[a.id].matmul(incl[w])  # fibers: K_w -> M_u
        cols = []
        for j in range(dims[w]):
            target = [image.data[i][j] for i in range(M.dims[u])]
            sol = incl[u].solve(target)
            if sol is None:
                raise AssertionError("kernel not arrow-stable; morphism was not a morphism")
            cols.append(sol)
        maps[a.id] = ExactMatrix(
            dims[u], dims[w], [[cols[j][i] for j in range(dims[w])] for i in range(dims[u])]
        )
    return QuiverRep(alg, dims, maps, check=False), incl


def dual_module(M: QuiverRep) -> QuiverRep:
    """The linear dual as a module over the opposite algebra."""
    op = M.algebra.opposite()
    dims = dict(M.dims)
    maps = {a.id: M.maps[a.id].transpose() for a in M.algebra.quiver.arrows}
    return QuiverRep(op, dims, maps, check=True)
