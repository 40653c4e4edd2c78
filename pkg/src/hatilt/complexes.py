"""Bounded complexes of projectives and the homological verification suite.

Complexes are cochain complexes: the differential raises degree and squares
to zero exactly.  Entries of differentials are algebra elements (an entry
from a summand at vertex u to one at vertex v lies in e_v A e_u), so chain
maps, homotopies and Hom-space dimensions are all solved in the small
algebra-block coordinates rather than on realized fibers.

The Serre twist is implemented structurally: a complex of projectives is
reinterpreted termwise as a complex of injectives carrying the same entry
data, then traded back for a quasi-isomorphic complex of projectives by an
exact cone-by-cone replacement (resolve the lowest term, lift the attaching
map through the already-replaced truncation, take the cone).  Minimisation
strips contractible two-term blocks by Gaussian elimination with entries
inverted through the radical filtration.

On top of this live the verification routines: minimal resolutions, Ext
dimensions, global and dominant dimension, object-level fractional
Calabi-Yau checks, the two-step homogeneity criterion, the graded
preprojective comparison, and a bounded thick-subcategory saturation
search.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .exactmat import ExactMatrix, ONE, ZERO, in_span
from .quiveralg import BoundQuiverAlgebra, BudgetError, QuiverRep, dual_module
from .fdalg import FDAlgebra


# -- complexes ---------------------------------------------------------------


class ProjComplex:
    """Bounded complex of indecomposable projectives (or injectives).

    ``terms[m]`` lists the vertex labels of the degree-m summands and
    ``diffs[m][t][s]`` is the algebra element (sparse dict) of the component
    from summand s of degree m to summand t of degree m+1.
    """

    def __init__(self, algebra, terms, diffs, kind="proj", check=True):
        self.algebra = algebra
        self.terms = {m: tuple(v) for m, v in terms.items() if v}
        self.diffs = {}
        for m, rows in diffs.items():
            if m in self.terms and (m + 1) in self.terms:
                self.diffs[m] = [[dict(e) for e in row] for row in rows]
        self.kind = kind
        if check:
            self._check()

    def _check(self):
        alg = self.algebra
        for m, rows in self.diffs.items():
            src = self.terms[m]
            tgt = self.terms[m + 1]
            if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
                raise ValueError(f"differential shape mismatch in degree {m}")
            for t, row in enumerate(rows):
                for s, elem in enumerate(row):
                    for bid in elem:
                        b = alg.basis[bid]
                        if (b.src, b.tgt) != (src[s], tgt[t]):
                            raise ValueError(
                                f"entry at degree {m} ({t},{s}) outside block"
                            )
        for m in self.diffs:
            if (m + 1) in self.diffs:
                prod = _entry_matmul(alg, self.diffs[m + 1], self.diffs[m])
                if any(e for row in prod for e in row):
                    raise ValueError(f"d*d != 0 between degrees {m} and {m + 2}")

    def degrees(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def size(self):
        return sum(len(v) for v in self.terms.values())

    def shift(self, k):
        """The complex X[k]: degree m holds what X held in degree m+k."""
        sign = -1 if k % 2 else 1
        terms = {m - k: v for m, v in self.terms.items()}
        diffs = {
            m - k: [[self.algebra.elem_scale(sign, e) for e in row] for row in rows]
            for m, rows in self.diffs.items()
        }
        return ProjComplex(self.algebra, terms, diffs, self.kind, check=False)

    def summand_count(self):
        return Counter((m, v) for m, vs in self.terms.items() for v in vs)

    def label_signature(self):
        return {m: tuple(sorted(v)) for m, v in self.terms.items()}

    def normalized_shift(self):
        """Shift so the lowest nonzero degree is zero; returns (complex, k)."""
        if self.is_zero():
            return self, 0
        low = min(self.terms)
        return self.shift(low), low

    def is_minimal(self):
        alg = self.algebra
        for rows in self.diffs.values():
            for row in rows:
                for elem in row:
                    if not alg.is_radical(elem):
                        return False
        return True


def _entry_matmul(alg, rows_a, rows_b):
    """Multiply matrices of algebra elements: (a . b)[i][j] = sum a[i][k] b[k][j]."""
    out = []
    for row_a in rows_a:
        out_row = []
        for j in range(len(rows_b[0]) if rows_b else 0):
            acc: dict = {}
            for k, e_ak in enumerate(row_a):
                if not e_ak:
                    continue
                e_bkj = rows_b[k][j]
                if e_bkj:
                    acc = alg.elem_add(acc, alg.elem_mul(e_ak, e_bkj))
            out_row.append(acc)
        out.append(out_row)
    return out


def stalk_complex(alg, vertex, degree=0, kind="proj"):
    return ProjComplex(alg, {degree: (vertex,)}, {}, kind, check=False)


def direct_sum_complexes(complexes):
    complexes = [c for c in complexes if not c.is_zero()]
    if not complexes:
        raise ValueError("empty direct sum of complexes")
    alg = complexes[0].algebra
    degrees = sorted({m for c in complexes for m in c.terms})
    terms = {}
    for m in degrees:
        terms[m] = tuple(v for c in complexes for v in c.terms.get(m, ()))
    diffs = {}
    for m in degrees:
        if (m + 1) not in terms:
            continue
        rows = []
        for c in complexes:
            nt = len(c.terms.get(m + 1, ()))
            ns_all = sum(len(cc.terms.get(m, ())) for cc in complexes)
            for t in range(nt):
                rows.append([{} for _ in range(ns_all)])
        if not rows:
            continue
        row_off = 0
        col_off = 0
        for c in complexes:
            nt = len(c.terms.get(m + 1, ()))
            ns = len(c.terms.get(m, ()))
            block = c.diffs.get(m)
            if block is not None:
                for t in range(nt):
                    for s in range(ns):
                        rows[row_off + t][col_off + s] = block[t][s]
            row_off += nt
            col_off += ns
        diffs[m] = rows
    return ProjComplex(alg, terms, diffs, complexes[0].kind, check=False)


# -- chain maps up to homotopy ----------------------------------------------


def _hom_slots(X, Y, j):
    """Coordinates of Hom^j(X, Y): one block per summand pair (m, t, s)."""
    alg = X.algebra
    slots = []
    offset = 0
    for m in X.degrees():
        if (m + j) not in Y.terms:
            continue
        for t, v in enumerate(Y.terms[m + j]):
            for s, u in enumerate(X.terms[m]):
                ids = alg.blocks.get((u, v), [])
                if ids:
                    slots.append((m, t, s, ids, offset))
                    offset += len(ids)
    return slots, offset


def _delta_matrix(X, Y, j):
    """Matrix of f -> d_Y f - (-1)^j f d_X from Hom^j to Hom^{j+1}."""
    alg = X.algebra
    slots_j, dim_j = _hom_slots(X, Y, j)
    slots_j1, dim_j1 = _hom_slots(X, Y, j + 1)
    out_index = {}
    for m, t, s, ids, off in slots_j1:
        for k, bid in enumerate(ids):
            out_index[(m, t, s, bid)] = off + k
    rows = [[ZERO] * dim_j for _ in range(dim_j1)]
    sign = -1 if j % 2 else 1
    for m, t, s, ids, off in slots_j:
        for k, bid in enumerate(ids):
            col = off + k
            basis_elem = alg.basis_elem(bid)
            # d_Y component: post-compose with dY^{m+j}
            dY = Y.diffs.get(m + j)
            if dY is not None and m in X.terms:
                for t2 in range(len(Y.terms[m + j + 1])):
                    prod = alg.elem_mul(dY[t2][t], basis_elem)
                    for bid2, c in prod.items():
                        r = out_index.get((m, t2, s, bid2))
                        if r is not None:
                            rows[r][col] += c
            # f d_X component: pre-compose with dX^{m-1}
            dX = X.diffs.get(m - 1)
            if dX is not None:
                for s2 in range(len(X.terms[m - 1])):
                    prod = alg.elem_mul(basis_elem, dX[s][s2])
                    for bid2, c in prod.items():
                        r = out_index.get((m - 1, t, s2, bid2))
                        if r is not None:
                            rows[r][col] -= sign * c
    return ExactMatrix(dim_j1, dim_j, rows), slots_j, dim_j


def hom_complex_dim(X, Y, k=0):
    """dim of chain maps X -> Y[k] modulo homotopy, by exact elimination."""
    if X.is_zero() or Y.is_zero():
        return 0
    delta_k, _, dim_k = _delta_matrix(X, Y, k)
    delta_km1, _, _ = _delta_matrix(X, Y, k - 1)
    return dim_k - delta_k.rank() - delta_km1.rank()


def chain_maps_mod_homotopy(X, Y, k=0):
    """Basis of Hom_{K}(X, Y[k]) as entry matrices, plus boundary vectors."""
    delta_k, slots, dim_k = _delta_matrix(X, Y, k)
    delta_km1, _, _ = _delta_matrix(X, Y, k - 1)
    cycles = delta_k.nullspace() if dim_k else []
    boundaries = []
    for j in range(delta_km1.cols):
        vec = [delta_km1.data[i][j] for i in range(delta_km1.rows)]
        if any(x != 0 for x in vec):
            boundaries.append(vec)
    chosen = []
    span = [list(b) for b in boundaries]
    for vec in cycles:
        if in_span(span, vec):
            continue
        span.append(list(vec))
        chosen.append(vec)
    reps = [_vector_to_chain_map(X, Y, k, vec, slots) for vec in chosen]
    return reps, chosen, boundaries, slots, dim_k


def _vector_to_chain_map(X, Y, k, vec, slots):
    comps = {}
    for m, t, s, ids, off in slots:
        elem = {bid: vec[off + idx] for idx, bid in enumerate(ids) if vec[off + idx] != 0}
        if elem:
            comps.setdefault(m, {})[(t, s)] = elem
    return comps


def _chain_map_to_vector(X, Y, k, comps, slots, dim):
    vec = [ZERO] * dim
    for m, t, s, ids, off in slots:
        elem = comps.get(m, {}).get((t, s))
        if elem:
            for idx, bid in enumerate(ids):
                if bid in elem:
                    vec[off + idx] = elem[bid]
    return vec


def compose_chain_maps(X, Y, Z, f, g):
    """g after f for chain maps f: X -> Y, g: Y -> Z (degree zero)."""
    alg = X.algebra
    comps = {}
    for m in X.degrees():
        if m not in Y.terms or m not in Z.terms:
            continue
        fm = f.get(m, {})
        gm = g.get(m, {})
        for (t1, s), e1 in fm.items():
            for (t2, s2), e2 in gm.items():
                if s2 != t1:
                    continue
                prod = alg.elem_mul(e2, e1)
                if prod:
                    cur = comps.setdefault(m, {}).get((t2, s), {})
                    comps[m][(t2, s)] = alg.elem_add(cur, prod)
    return comps


def identity_chain_map(X):
    comps = {}
    for m, vs in X.terms.items():
        for s, u in enumerate(vs):
            comps.setdefault(m, {})[(s, s)] = X.algebra.basis_elem(
                X.algebra.idempotent_of[u]
            )
    return comps


# -- minimisation ------------------------------------------------------------


def _scalar_part(alg, elem, u):
    return elem.get(alg.idempotent_of[u], ZERO)


def _invert_local(alg, elem, u):
    """Inverse of an element of e_u A e_u with nonzero scalar part."""
    lam = _scalar_part(alg, elem, u)
    if lam == 0:
        raise ValueError("element not invertible")
    e = alg.basis_elem(alg.idempotent_of[u])
    r = alg.elem_sub(elem, alg.elem_scale(lam, e))  # radical part
    inv = alg.elem_scale(1 / lam, e)
    power = e
    for _ in range(alg.nilpotency):
        power = alg.elem_scale(-1 / lam, alg.elem_mul(r, power))
        if not power:
            break
        inv = alg.elem_add(inv, alg.elem_scale(1 / lam, power))
    return inv


def minimize_complex(X):
    """Strip contractible two-term identity blocks until minimal."""
    alg = X.algebra
    terms = {m: list(v) for m, v in X.terms.items()}
    diffs = {m: [[dict(e) for e in row] for row in rows] for m, rows in X.diffs.items()}

    def find_pivot():
        for m in sorted(diffs):
            rows = diffs[m]
            for t, row in enumerate(rows):
                for s, elem in enumerate(row):
                    if terms[m][s] == terms[m + 1][t]:
                        if _scalar_part(alg, elem, terms[m][s]) != 0:
                            return m, t, s
        return None

    while True:
        pivot = find_pivot()
        if pivot is None:
            break
        m, t, s = pivot
        u = terms[m][s]
        rows = diffs[m]
        ainv = _invert_local(alg, rows[t][s], u)
        n_src, n_tgt = len(terms[m]), len(terms[m + 1])
        b_row = [rows[t][s2] for s2 in range(n_src)]
        c_col = [rows[t2][s] for t2 in range(n_tgt)]
        new_rows = []
        for t2 in range(n_tgt):
            if t2 == t:
                continue
            new_row = []
            for s2 in range(n_src):
                if s2 == s:
                    continue
                corr = alg.elem_mul(c_col[t2], alg.elem_mul(ainv, b_row[s2]))
                new_row.append(alg.elem_sub(rows[t2][s2], corr))
            new_rows.append(new_row)
        # entries into degree m lose the s-row; entries out of m+1 lose t
        if (m - 1) in diffs:
            diffs[m - 1] = [row for r_idx, row in enumerate(diffs[m - 1]) if r_idx != s]
        if (m + 1) in diffs:
            diffs[m + 1] = [
                [e for c_idx, e in enumerate(row) if c_idx != t] for row in diffs[m + 1]
            ]
        terms[m].pop(s)
        terms[m + 1].pop(t)
        diffs[m] = new_rows
        for key in (m - 1, m, m + 1):
            if key in diffs and (not terms.get(key) or not terms.get(key + 1)):
                diffs.pop(key)
        for key in (m, m + 1):
            if key in terms and not terms[key]:
                terms.pop(key)

    out = ProjComplex(alg, {m: tuple(v) for m, v in terms.items()}, diffs, X.kind, check=True)
    if not out.is_minimal():
        raise AssertionError("minimisation left a non-radical entry")
    return out


def complexes_isomorphic(X, Y, tries=60):
    """Isomorphism test for complexes: minimise, match labels, solve.

    A degreewise-invertible chain map is sought among rational combinations
    of a cycle basis; invertibility only depends on the scalar parts, which
    are checked per degree and vertex by exact determinants.
    """
    Xm = minimize_complex(X)
    Ym = minimize_complex(Y)
    if Xm.is_zero() and Ym.is_zero():
        return True
    if Xm.label_signature() != Ym.label_signature():
        return False
    delta0, slots, dim0 = _delta_matrix(Xm, Ym, 0)
    cycles = delta0.nullspace() if dim0 else []
    if not cycles:
        return Xm.size() == 0

    def scalar_blocks(vec):
        comps = _vector_to_chain_map(Xm, Ym, 0, vec, slots)
        blocks = []
        for m, vs in Xm.terms.items():
            by_vertex = {}
            for idx, u in enumerate(vs):
                by_vertex.setdefault(u, []).append(idx)
            for u, idxs in by_vertex.items():
                mat = ExactMatrix(len(idxs), len(idxs))
                for i, t in enumerate(idxs):
                    for j, s in enumerate(idxs):
                        elem = comps.get(m, {}).get((t, s), {})
                        mat.data[i][j] = _scalar_part(Xm.algebra, elem, u)
                blocks.append(mat)
        return blocks

    def invertible(vec):
        return all(b.rank() == b.rows for b in scalar_blocks(vec))

    for vec in cycles:
        if invertible(vec):
            return True
    seeds = [(i + 2) for i in range(tries)]
    for t in seeds:
        vec = [ZERO] * dim0
        w = 1
        for cyc in cycles:
            for i, x in enumerate(cyc):
                vec[i] += w * x
            w = (w * t) % 1000003
        if invertible(vec):
            return True
    return False


# -- module complexes and projective replacement ----------------------------


@dataclass
class ModuleComplex:
    """Bounded cochain complex of quiver representations."""

    algebra: BoundQuiverAlgebra
    terms: dict  # degree -> QuiverRep
    maps: dict  # degree m -> {vertex: ExactMatrix} for term^m -> term^{m+1}

    def degrees(self):
        return sorted(self.terms)

    def check(self):
        for m, phi in self.maps.items():
            src, tgt = self.terms[m], self.terms[m + 1]
            for v in self.algebra.vertex_ids():
                if (phi[v].rows, phi[v].cols) != (tgt.dims[v], src.dims[v]):
                    raise ValueError(f"module complex map shape mismatch at {m}")
        for m in self.maps:
            if (m + 1) in self.maps:
                for v in self.algebra.vertex_ids():
                    if not self.maps[m + 1][v].matmul(self.maps[m][v]).is_zero():
                        raise ValueError("module complex differential does not square to zero")


def zero_morphism(alg, M, N):
    return {v: ExactMatrix(N.dims[v], M.dims[v]) for v in alg.vertex_ids()}


def realize_term(alg, vertex, kind):
    return alg.projective(vertex) if kind == "proj" else alg.injective(vertex)


def _realize_entry(alg, elem, u, v, kind):
    """Per-vertex matrices of the morphism P_u -> P_v (or I_u -> I_v) at elem."""
    if kind == "proj":
        return alg.proj_map_from_element(elem, u, v)
    maps = {}
    for y in alg.vertex_ids():
        dual_u = alg.blocks.get((u, y), [])  # e_y A e_u, the dual fiber of I_u
        dual_v = alg.blocks.get((v, y), [])
        # right multiplication e_y A e_v -> e_y A e_u, then dualise
        rmult = ExactMatrix(len(dual_u), len(dual_v))
        for j, bid in enumerate(dual_v):
            prod = alg.elem_mul(alg.basis_elem(bid), elem)
            col = alg.block_coords(prod, u, y)
            for i in range(len(dual_u)):
                rmult.data[i][j] = col[i]
        maps[y] = rmult.transpose()
    return maps


def realize_complex(X: ProjComplex) -> ModuleComplex:
    alg = X.algebra
    from .quiveralg import direct_sum

    terms = {}
    for m, vs in X.terms.items():
        reps = [realize_term(alg, v, X.kind) for v in vs]
        terms[m] = direct_sum(reps)[0] if reps else None
    maps = {}
    for m, rows in X.diffs.items():
        src_vs, tgt_vs = X.terms[m], X.terms[m + 1]
        phi = {}
        for y in alg.vertex_ids():
            blocks = []
            for t, vt in enumerate(tgt_vs):
                row_blocks = []
                for s, us in enumerate(src_vs):
                    row_blocks.append(_realize_entry(alg, rows[t][s], us, vt, X.kind)[y])
                blocks.append(row_blocks)
            phi[y] = _assemble_blocks(blocks)
        maps[m] = phi
    mc = ModuleComplex(alg, terms, maps)
    mc.check()
    return mc


def _assemble_blocks(blocks):
    if not blocks or not blocks[0]:
        return ExactMatrix(0, 0)
    row_sizes = [blocks[t][0].rows for t in range(len(blocks))]
    col_sizes = [blocks[0][s].cols for s in range(len(blocks[0]))]
    out = ExactMatrix(sum(row_sizes), sum(col_sizes))
    r0 = 0
    for t, rs in enumerate(row_sizes):
        c0 = 0
        for s, cs in enumerate(col_sizes):
            block = blocks[t][s]
            for i in range(rs):
                for j in range(cs):
                    out.data[r0 + i][c0 + j] = block.data[i][j]
            c0 += cs
        r0 += rs
    return out


@dataclass
class ResolutionReport:
    label: str
    length: int
    terms: dict  # degree -> Counter of vertex ids


def minimal_proj_resolution(alg, M: QuiverRep, max_len=64, label="M"):
    """Minimal projective resolution as a complex ending in degree zero.

    Returns (report, complex, augmentation) where the augmentation lists,
    per degree-zero summand, the image of its generator in M.
    """
    report_terms = {}
    layers = []  # (labels, generators as fiber vectors of the covered module)
    current = M
    inclusions = []  # inclusion of current into the previous projective term
    degree = 0
    while current.total_dim > 0:
        if degree > max_len:
            raise BudgetError(f"resolution of {label} exceeds max length {max_len}")
        rad = current.radical_fibers()
        labels = []
        gens = []
        for v in alg.vertex_ids():
            if current.dims[v] == 0:
                continue
            rad_rows = rad[v]
            pivots = set(ExactMatrix.from_rows(rad_rows).rref()[1]) if rad_rows else set()
            for c in range(current.dims[v]):
                if c not in pivots:
                    vec = [ZERO] * current.dims[v]
                    vec[c] = ONE
                    labels.append(v)
                    gens.append((v, vec))
        layers.append((labels, gens, current))
        report_terms[-degree] = Counter(labels)
        cover, phi = _projective_cover_map(alg, labels, gens, current)
        kernel, incl = _kernel_with_inclusion(alg, phi, cover, current)
        inclusions.append(incl)
        current = kernel
        degree += 1

    diffs = {}
    for j in range(1, len(layers)):
        labels_j, gens_j, module_j = layers[j]
        labels_prev, gens_prev, module_prev = layers[j - 1]
        cover_j, phi_j = _projective_cover_map(alg, labels_j, gens_j, module_j)
        # composite P_j -> K_{j-1} -> P_{j-1}
        comp = {
            v: inclusions[j - 1][v].matmul(phi_j[v]) for v in alg.vertex_ids()
        }
        diffs[-j] = _extract_entries(alg, comp, labels_j, labels_prev)

    labels0, gens0, _ = layers[0]
    cplx = ProjComplex(
        alg, {-j: tuple(layers[j][0]) for j in range(len(layers))}, diffs, "proj"
    )
    if not cplx.is_minimal():
        raise AssertionError("resolution differential has a non-radical entry")
    report = ResolutionReport(label, len(layers) - 1, report_terms)
    augmentation = [vec for _, vec in gens0]
    return report, cplx, augmentation


def _projective_cover_map(alg, labels, gens, M):
    from .quiveralg import direct_sum

    reps = [alg.projective(v) for v in labels]
    cover, _ = direct_sum(reps) if reps else (None, None)
    phi = {}
    for y in alg.vertex_ids():
        cols = []
        for (v, gen) in gens:
            for bid in alg.blocks.get((y, v), []):
                mat = _module_action(alg, M, bid, y, v)
                cols.append(mat.apply(gen))
        m = ExactMatrix(M.dims[y], len(cols))
        for j, col in enumerate(cols):
            for i in range(M.dims[y]):
                m.data[i][j] = col[i]
        phi[y] = m
    return cover, phi


def _module_action(alg, M, bid, y, v):
    """Right action of a basis element of e_v A e_y on M: fiber v -> fiber y."""
    b = alg.basis[bid]
    if b.degree == 0:
        return ExactMatrix.identity(M.dims[v])
    return M.path_action(b.path)


def _kernel_with_inclusion(alg, phi, cover, M):
    from .quiveralg import kernel_of_morphism

    return kernel_of_morphism(phi, cover, M)


def _extract_entries(alg, comp, labels_src, labels_tgt):
    """Differential entries of a map between sums of projectives."""
    rows = []
    for t, vt in enumerate(labels_tgt):
        row = []
        for s, us in enumerate(labels_src):
            # image of the generator of the s-th summand, read in the block
            # coordinates of the t-th summand
            gen_col = _summand_gen_column(alg, labels_src, s)
            y = us
            col = [comp[y].data[i][gen_col] for i in range(comp[y].rows)]
            offset = 0
            elem = {}
            for t2, vt2 in enumerate(labels_tgt):
                ids = alg.blocks.get((y, vt2), [])
                if t2 == t:
                    elem = alg.elem_from_block_coords(
                        col[offset : offset + len(ids)], y, vt2
                    )
                offset += len(ids)
            row.append(elem)
        rows.append(row)
    return rows


def _summand_gen_column(alg, labels, s):
    """Column of the generator of summand s inside the cover fiber at its vertex."""
    y = labels[s]
    offset = 0
    for s2, v in enumerate(labels):
        ids = alg.blocks.get((y, v), [])
        if s2 == s:
            return offset + ids.index(alg.idempotent_of[y])
        offset += len(ids)
    raise AssertionError


def module_stalk(alg, M, degree=0):
    return ModuleComplex(alg, {degree: M}, {})


def proj_replace(C: ModuleComplex, max_len=64):
    """A minimal complex of projectives quasi-isomorphic to C."""
    Q, _ = _proj_replace_with_qis(C, max_len)
    return Q


def _proj_replace_with_qis(C: ModuleComplex, max_len=64):
    alg = C.algebra
    degs = [m for m in C.degrees() if C.terms[m].total_dim > 0]
    if not degs:
        return ProjComplex(alg, {}, {}, "proj", check=False), {}
    m0 = degs[0]
    M = C.terms[m0]
    report, R, aug = minimal_proj_resolution(alg, M, max_len, label=f"deg{m0}")
    if len(degs) == 1:
        R0 = R.shift(-m0)
        psi = _pad_qis(alg, R0, C, {m0: aug})
        _assert_qis_chain_map(alg, R0, C, psi)
        return R0, psi

    Cprime = ModuleComplex(
        alg,
        {m: C.terms[m] for m in degs[1:]},
        {m: C.maps[m] for m in C.maps if m >= degs[1]},
    )
    Qprime, psi_prime = _proj_replace_with_qis(Cprime, max_len)

    # resolution of M placed so its degree-zero term sits at m0 + 1
    Rp = R.shift(-(m0 + 1))
    # attaching map into C': the augmentation composed with d_C at m0,
    # one fiber vector per degree-(m0+1) summand of the resolution
    dC = C.maps.get(m0)
    target = {}
    if dC is not None:
        target[m0 + 1] = [
            dC[v].apply(vec) for v, vec in zip(Rp.terms.get(m0 + 1, ()), aug)
        ]
    g, H = _lift_through_qis(alg, Rp, Qprime, psi_prime, Cprime, target)

    terms = {}
    diffs = {}
    degrees = sorted(set(list(Rp.terms) + [m - 1 for m in Rp.terms] + list(Qprime.terms)))
    for m in degrees:
        part_r = Rp.terms.get(m + 1, ())
        part_q = Qprime.terms.get(m, ())
        if part_r or part_q:
            terms[m] = tuple(part_r) + tuple(part_q)
    for m in sorted(terms):
        if (m + 1) not in terms:
            continue
        nr_s, nq_s = len(Rp.terms.get(m + 1, ())), len(Qprime.terms.get(m, ()))
        nr_t, nq_t = len(Rp.terms.get(m + 2, ())), len(Qprime.terms.get(m + 1, ()))
        rows = [[{} for _ in range(nr_s + nq_s)] for _ in range(nr_t + nq_t)]
        dR = Rp.diffs.get(m + 1)
        if dR is not None:
            for t in range(nr_t):
                for s in range(nr_s):
                    rows[t][s] = alg.elem_scale(-1, dR[t][s])
        gm = g.get(m + 1, {})
        for (t, s), elem in gm.items():
            rows[nr_t + t][s] = elem
        dQ = Qprime.diffs.get(m)
        if dQ is not None:
            for t in range(nq_t):
                for s in range(nq_s):
                    rows[nr_t + t][nr_s + s] = dQ[t][s]
        diffs[m] = rows
    cone = ProjComplex(alg, terms, diffs, "proj", check=True)

    # quasi-isomorphism to C: alpha on the M-slot, psi' + H elsewhere
    psi = {}
    for m in cone.degrees():
        vecs = []
        nr = len(Rp.terms.get(m + 1, ()))
        for idx in range(nr):
            if m == m0:
                vec = list(aug[idx])
            elif m in C.terms:
                vec = [ZERO] * C.terms[m].dims[cone.terms[m][idx]]
            else:
                vec = []
            hvec = H.get(m + 1, {}).get(idx)
            if hvec is not None:
                vec = [a + b for a, b in zip(vec, hvec)] if vec else list(hvec)
            vecs.append(vec)
        for q_idx, u in enumerate(Qprime.terms.get(m, ())):
            if m == m0:
                # C^{m0} is the resolved module; the truncated part maps to 0
                vecs.append([ZERO] * M.dims[u])
            else:
                vecs.append(list(psi_prime.get(m, [])[q_idx]))
        psi[m] = vecs
    _assert_qis_chain_map(alg, cone, C, psi)
    reduced, psi = _minimize_with_qis(alg, cone, C, psi)
    return reduced, psi


def _pad_qis(alg, Q, C, partial):
    psi = {}
    for m in Q.degrees():
        fibers = []
        for idx, u in enumerate(Q.terms[m]):
            if m in partial and idx < len(partial[m]):
                fibers.append(list(partial[m][idx]))
            else:
                dim = C.terms[m].dims[u] if m in C.terms else 0
                fibers.append([ZERO] * dim)
        psi[m] = fibers
    return psi


def _fiber_action(alg, N: QuiverRep, elem, u_from, v_to, vec):
    """Act with elem in e_{v_to} A e_{u_from} on vec in the fiber at v_to."""
    mat = N.element_action(elem, u_from, v_to)
    return mat.apply(vec)


def _assert_qis_chain_map(alg, Q: ProjComplex, C: ModuleComplex, psi):
    for m in Q.degrees():
        dQ = Q.diffs.get(m)
        psi_m = psi.get(m, [])
        # d_C psi = psi d_Q degreewise
        for s, u in enumerate(Q.terms[m]):
            lhs = None
            if m in C.maps and m in C.terms:
                lhs = C.maps[m][u].apply(psi_m[s])
            rhs = None
            if dQ is not None and (m + 1) in psi:
                acc = [ZERO] * (C.terms[m + 1].dims[u] if (m + 1) in C.terms else 0)
                for t, v in enumerate(Q.terms[m + 1]):
                    elem = dQ[t][s]
                    if elem and any(x != 0 for x in psi[m + 1][t]):
                        contrib = _fiber_action(alg, C.terms[m + 1], elem, u, v, psi[m + 1][t])
                        acc = [a + b for a, b in zip(acc, contrib)]
                rhs = acc
            lhs = lhs or []
            rhs = rhs or []
            width = max(len(lhs), len(rhs))
            lhs = lhs + [ZERO] * (width - len(lhs))
            rhs = rhs + [ZERO] * (width - len(rhs))
            if lhs != rhs:
                raise AssertionError("quasi-isomorphism witness is not a chain map")


def _lift_through_qis(alg, Rp, Q, psi, C, target):
    """Solve for g: Rp -> Q (chain map) and homotopy H with
    psi g - target = d_C H + H d_Rp, in block coordinates."""
    slots_g = []
    offset = 0
    for m in Rp.degrees():
        if m not in Q.terms:
            continue
        for t, v in enumerate(Q.terms[m]):
            for s, u in enumerate(Rp.terms[m]):
                ids = alg.blocks.get((u, v), [])
                if ids:
                    slots_g.append((m, t, s, ids, offset))
                    offset += len(ids)
    g_dim = offset
    slots_h = []
    for m in Rp.degrees():
        if (m - 1) not in C.terms:
            continue
        for s, u in enumerate(Rp.terms[m]):
            dim = C.terms[m - 1].dims[u]
            if dim:
                slots_h.append((m, s, u, dim, offset))
                offset += dim
    total = offset

    rows = []
    rhs = []

    # chain-map condition: d_Q g - g d_Rp = 0, in block coordinates
    slots_g_by_key = {}
    for m, t, s, ids, off in slots_g:
        slots_g_by_key[(m, t, s)] = (ids, off)
    for m in Rp.degrees():
        if (m + 1) not in Q.terms:
            continue
        dR = Rp.diffs.get(m)
        dQ = Q.diffs.get(m)
        for t in range(len(Q.terms[m + 1])):
            for s in range(len(Rp.terms[m])):
                row_blocks: dict[int, dict[int, Fraction]] = {}
                if dQ is not None and m in Q.terms:
                    for t1 in range(len(Q.terms[m])):
                        entry = dQ[t][t1]
                        slot = slots_g_by_key.get((m, t1, s))
                        if not entry or slot is None:
                            continue
                        ids, off = slot
                        for k, bid in enumerate(ids):
                            prod = alg.elem_mul(entry, alg.basis_elem(bid))
                            for bid2, c in prod.items():
                                block = row_blocks.setdefault(bid2, {})
                                block[off + k] = block.get(off + k, ZERO) + c
                if dR is not None and (m + 1) in Rp.terms:
                    for s1 in range(len(Rp.terms[m + 1])):
                        entry = dR[s1][s]
                        slot = slots_g_by_key.get((m + 1, t, s1))
                        if not entry or slot is None:
                            continue
                        ids, off = slot
                        for k, bid in enumerate(ids):
                            prod = alg.elem_mul(alg.basis_elem(bid), entry)
                            for bid2, c in prod.items():
                                block = row_blocks.setdefault(bid2, {})
                                block[off + k] = block.get(off + k, ZERO) - c
                for bid2, cols in row_blocks.items():
                    row = [ZERO] * total
                    for col, c in cols.items():
                        row[col] = c
                    rows.append(row)
                    rhs.append(ZERO)

    # lifting condition per degree, summand and fiber coordinate
    for m in Rp.degrees():
        if m not in C.terms:
            continue
        for s, u in enumerate(Rp.terms[m]):
            fdim = C.terms[m].dims[u]
            if fdim == 0:
                continue
            # assemble linear expressions: psi g - dC H - H dR = target
            exprs = [
                {"const": ZERO, "cols": {}} for _ in range(fdim)
            ]
            # psi g part
            if m in Q.terms:
                for t, v in enumerate(Q.terms[m]):
                    psi_vec = psi.get(m, [])[t] if psi.get(m) else None
                    if psi_vec is None or all(x == 0 for x in psi_vec):
                        continue
                    for (m2, t2, s2, ids, off) in slots_g:
                        if m2 != m or t2 != t or s2 != s:
                            continue
                        for k, bid in enumerate(ids):
                            contrib = _fiber_action(
                                alg, C.terms[m], alg.basis_elem(bid), u, v, psi_vec
                            )
                            for i, val in enumerate(contrib):
                                if val != 0:
                                    exprs[i]["cols"][off + k] = (
                                        exprs[i]["cols"].get(off + k, ZERO) + val
                                    )
            # - d_C H part (H at degree m maps into C^{m-1})
            for (m2, s2, u2, dim, off) in slots_h:
                if m2 != m or s2 != s:
                    continue
                dC = C.maps.get(m - 1)
                if dC is None:
                    continue
                mat = dC[u2]
                for i in range(mat.rows):
                    for j in range(dim):
                        if mat.data[i][j] != 0:
                            exprs[i]["cols"][off + j] = (
                                exprs[i]["cols"].get(off + j, ZERO) - mat.data[i][j]
                            )
            # - H d_R part (d_R out of degree m-1 ... into m) acts on H at m+1
            dR = Rp.diffs.get(m)
            if dR is not None and (m + 1) in Rp.terms:
                for s1, u1 in enumerate(Rp.terms[m + 1]):
                    entry = dR[s1][s]
                    if not entry:
                        continue
                    for (m2, s2, u2, dim, off) in slots_h:
                        if m2 != m + 1 or s2 != s1:
                            continue
                        act = C.terms[m].element_action(entry, u, u1)
                        for i in range(act.rows):
                            for j in range(dim):
                                if act.data[i][j] != 0:
                                    exprs[i]["cols"][off + j] = (
                                        exprs[i]["cols"].get(off + j, ZERO)
                                        - act.data[i][j]
                                    )
            tvec = target.get(m, None)
            for i in range(fdim):
                row = [ZERO] * total
                for col, c in exprs[i]["cols"].items():
                    row[col] = c
                rows.append(row)
                val = ZERO
                if tvec is not None and tvec[s] is not None:
                    val = tvec[s][i]
                rhs.append(val)

    matrix = ExactMatrix(len(rows), total, rows) if rows else ExactMatrix(0, total)
    sol = matrix.solve(rhs) if rows else [ZERO] * total
    if sol is None:
        raise AssertionError("lifting system inconsistent; qis witness broken")
    g = {}
    for m, t, s, ids, off in slots_g:
        elem = {bid: sol[off + k] for k, bid in enumerate(ids) if sol[off + k] != 0}
        if elem:
            g.setdefault(m, {})[(t, s)] = elem
    H = {}
    for m, s, u, dim, off in slots_h:
        vec = [sol[off + j] for j in range(dim)]
        if any(x != 0 for x in vec):
            H.setdefault(m, {})[s] = vec
    return g, H


def _minimize_with_qis(alg, X: ProjComplex, C: ModuleComplex, psi):
    """Minimise X while transporting the quasi-isomorphism witness psi."""
    terms = {m: list(v) for m, v in X.terms.items()}
    diffs = {m: [[dict(e) for e in row] for row in rows] for m, rows in X.diffs.items()}
    wit = {m: [list(v) for v in vecs] for m, vecs in psi.items()}

    def find_pivot():
        for m in sorted(diffs):
            rows = diffs[m]
            for t, row in enumerate(rows):
                for s, elem in enumerate(row):
                    if terms[m][s] == terms[m + 1][t] and _scalar_part(
                        alg, elem, terms[m][s]
                    ) != 0:
                        return m, t, s
        return None

    while True:
        pivot = find_pivot()
        if pivot is None:
            break
        m, t, s = pivot
        u = terms[m][s]
        rows = diffs[m]
        a = rows[t][s]
        ainv = _invert_local(alg, a, u)
        n_src, n_tgt = len(terms[m]), len(terms[m + 1])
        b_row = [rows[t][s2] for s2 in range(n_src)]
        c_col = [rows[t2][s] for t2 in range(n_tgt)]

        # witness transport at degree m: s2 picks up -psi[s] . (ainv b_{s2})
        if m in wit:
            if m in C.terms:
                base = wit[m][s]
                for s2 in range(n_src):
                    if s2 == s:
                        continue
                    corr_elem = alg.elem_mul(ainv, b_row[s2])
                    if corr_elem and any(x != 0 for x in base):
                        u2 = terms[m][s2]
                        corr = _fiber_action(alg, C.terms[m], corr_elem, u2, u, base)
                        wit[m][s2] = [x - y for x, y in zip(wit[m][s2], corr)]
            wit[m] = [v for idx, v in enumerate(wit[m]) if idx != s]
        if (m + 1) in wit:
            wit[m + 1] = [v for idx, v in enumerate(wit[m + 1]) if idx != t]

        new_rows = []
        for t2 in range(n_tgt):
            if t2 == t:
                continue
            new_row = []
            for s2 in range(n_src):
                if s2 == s:
                    continue
                corr = alg.elem_mul(c_col[t2], alg.elem_mul(ainv, b_row[s2]))
                new_row.append(alg.elem_sub(rows[t2][s2], corr))
            new_rows.append(new_row)
        if (m - 1) in diffs:
            diffs[m - 1] = [row for r, row in enumerate(diffs[m - 1]) if r != s]
        if (m + 1) in diffs:
            diffs[m + 1] = [
                [e for c, e in enumerate(row) if c != t] for row in diffs[m + 1]
            ]
        terms[m].pop(s)
        terms[m + 1].pop(t)
        diffs[m] = new_rows
        for key in (m - 1, m, m + 1):
            if key in diffs and (not terms.get(key) or not terms.get(key + 1)):
                diffs.pop(key)
        for key in (m, m + 1):
            if key in terms and not terms[key]:
                terms.pop(key)
                wit.pop(key, None)

    out = ProjComplex(
        alg, {m: tuple(v) for m, v in terms.items()}, diffs, X.kind, check=True
    )
    if not out.is_minimal():
        raise AssertionError("minimisation left a non-radical entry")
    psi_out = {m: wit.get(m, []) for m in out.terms}
    _assert_qis_chain_map(alg, out, C, psi_out)
    return out, psi_out


# -- the derived Nakayama functor -------------------------------------------


def as_injective_complex(X: ProjComplex) -> ProjComplex:
    """Termwise Serre twist: P_v becomes I_v, entries carry over verbatim."""
    if X.kind != "proj":
        raise ValueError("expected a complex of projectives")
    return ProjComplex(X.algebra, X.terms, X.diffs, "inj", check=False)


def as_projective_complex(X: ProjComplex) -> ProjComplex:
    if X.kind != "inj":
        raise ValueError("expected a complex of injectives")
    return ProjComplex(X.algebra, X.terms, X.diffs, "proj", check=False)


def derived_nakayama(X: ProjComplex, max_len=64) -> ProjComplex:
    """nu(X): twist termwise, then re-express by projectives and minimise."""
    if X.is_zero():
        return X
    J = as_injective_complex(minimize_complex(X))
    C = realize_complex(J)
    return minimize_complex(proj_replace(C, max_len))


def derived_nakayama_inverse(X: ProjComplex, max_len=64) -> ProjComplex:
    """nu^{-1}(X): dualise, resolve over the opposite algebra, dualise back."""
    if X.is_zero():
        return X
    alg = X.algebra
    op = alg.opposite()
    C = realize_complex(minimize_complex(X))
    # dual complex over the opposite algebra, with degrees negated
    terms = {-m: dual_module(C.terms[m]) for m in C.degrees()}
    maps = {}
    for m, phi in C.maps.items():
        maps[-m - 1] = {v: phi[v].transpose() for v in alg.vertex_ids()}
    Cd = ModuleComplex(op, terms, maps)
    Cd.check()
    Qop = minimize_complex(proj_replace(Cd, max_len))
    # dualise back: P^op_w in degree j becomes I_w in degree -j
    terms_back = {-m: tuple(v) for m, v in Qop.terms.items()}
    diffs_back = {}
    for m, rows in Qop.diffs.items():
        # the dual of d: Qop^m -> Qop^{m+1} runs from degree -m-1 to -m
        n_src, n_tgt = len(Qop.terms[m]), len(Qop.terms[m + 1])
        diffs_back[-m - 1] = [
            [rows[t][s] for t in range(n_tgt)] for s in range(n_src)
        ]
    J = ProjComplex(alg, terms_back, diffs_back, "inj", check=True)
    return minimize_complex(as_projective_complex(J))


def shifted_module_complex(alg, module: QuiverRep, shift_by=0, max_len=64, label="M"):
    """Minimal projective complex of a module placed in degree -shift_by."""
    _, cplx, _ = minimal_proj_resolution(alg, module, max_len, label=label)
    return cplx.shift(shift_by)


# -- homological dimensions ---------------------------------------------------


def ext_dim(alg, M: QuiverRep, N: QuiverRep, i: int, max_len=64) -> int:
    """dim Ext^i(M, N) from a minimal resolution of M."""
    if i < 0:
        raise ValueError("negative Ext degree")
    _, R, _ = minimal_proj_resolution(alg, M, max_len=max(max_len, i + 1))
    return _ext_from_resolution(alg, R, N, i)


def _ext_from_resolution(alg, R: ProjComplex, N: QuiverRep, i: int) -> int:
    def hom_dim_at(j):
        return sum(N.dims[u] for u in R.terms.get(-j, ()))

    def delta(j):
        """Hom(R^{-j}, N) -> Hom(R^{-j-1}, N), precomposition with d."""
        src_labels = R.terms.get(-j, ())
        tgt_labels = R.terms.get(-j - 1, ())
        rows_out = sum(N.dims[u] for u in tgt_labels)
        cols_in = sum(N.dims[u] for u in src_labels)
        m = ExactMatrix(rows_out, cols_in)
        d = R.diffs.get(-j - 1)
        if d is None:
            return m
        col_off = 0
        col_offsets = []
        for u in src_labels:
            col_offsets.append(col_off)
            col_off += N.dims[u]
        row_off = 0
        for s2, u2 in enumerate(tgt_labels):
            for t, u in enumerate(src_labels):
                elem = d[t][s2]
                if elem:
                    act = N.element_action(elem, u2, u)
                    for a in range(act.rows):
                        for b in range(act.cols):
                            m.data[row_off + a][col_offsets[t] + b] = act.data[a][b]
            row_off += N.dims[u2]
        return m

    dim_i = hom_dim_at(i)
    if dim_i == 0:
        return 0
    rank_out = delta(i).rank()
    rank_in = delta(i - 1).rank() if i >= 1 else 0
    return dim_i - rank_out - rank_in


def gldim(alg, max_len=64) -> int:
    """Global dimension: the longest minimal resolution of a simple."""
    best = 0
    for v in alg.vertex_ids():
        report, _, _ = minimal_proj_resolution(alg, alg.simple(v), max_len, label=f"S{v}")
        best = max(best, report.length)
    return best


def projective_injective_vertices(alg) -> set:
    """Vertices whose injective envelope of the simple is also projective."""
    out = set()
    for v in alg.vertex_ids():
        if _is_projective_module(alg, alg.injective(v)):
            out.add(v)
    return out


def _is_projective_module(alg, M: QuiverRep) -> bool:
    # the projective cover surjects; it is an isomorphism iff dims agree
    rad = M.radical_fibers()
    cover_dim = 0
    for v in alg.vertex_ids():
        top = M.dims[v] - len(rad[v])
        cover_dim += top * alg.projective(v).total_dim
    return cover_dim == M.total_dim


def domdim(alg, max_len=64):
    """Dominant dimension via the dual resolution over the opposite algebra.

    Returns math.inf when every term of the minimal injective coresolution
    of the algebra is projective.
    """
    op = alg.opposite()
    proj_inj = projective_injective_vertices(alg)
    best = None
    for z in alg.vertex_ids():
        dual = dual_module(alg.projective(z))
        report, R, _ = minimal_proj_resolution(op, dual, max_len, label=f"DP{z}")
        count = 0
        exhausted = True
        for j in range(0, report.length + 1):
            labels = R.terms.get(-j, ())
            if all(w in proj_inj for w in labels):
                count += 1
            else:
                exhausted = False
                break
        value = math.inf if exhausted else count
        best = value if best is None else min(best, value)
    return best if best is not None else math.inf


# -- verification reports -----------------------------------------------------


@dataclass
class TwoStepReport:
    d_check: int
    gldim: int
    gldim_equals_d: bool
    passed: bool
    nu_images: dict
    rigidity_ok: bool


def two_subhomogeneous_check(alg, d_check: int, max_len=64) -> TwoStepReport:
    """Every twisted injective lands in add(A), plus the rigidity window.

    For each indecomposable injective non-projective I, the shifted twist
    nu(I)[-d] must minimise to a stalk of projectives in degree zero, and
    Ext^i between the projective-injective generators must vanish for
    0 < i < d_check.
    """
    g = gldim(alg, max_len)
    if g > d_check:
        raise ValueError(f"gldim {g} exceeds d = {d_check}")
    nu_images = {}
    passed = True
    proj_inj = projective_injective_vertices(alg)
    for z in alg.vertex_ids():
        if z in proj_inj:
            continue
        I = alg.injective(z)
        R = shifted_module_complex(alg, I, 0, max_len, label=f"I{z}")
        twisted = derived_nakayama(R, max_len).shift(-d_check)
        ok = list(twisted.terms) == [0]
        nu_images[z] = (ok, dict(twisted.terms))
        passed = passed and ok

    rigidity_ok = True
    injectives = {z: alg.injective(z) for z in alg.vertex_ids() if z not in proj_inj}
    targets = [alg.projective(z) for z in alg.vertex_ids()] + [
        alg.injective(z) for z in alg.vertex_ids()
    ]
    for z, I in injectives.items():
        _, R, _ = minimal_proj_resolution(alg, I, max_len, label=f"I{z}")
        for N in targets:
            for i in range(1, d_check):
                if _ext_from_resolution(alg, R, N, i) != 0:
                    rigidity_ok = False
    return TwoStepReport(
        d_check, g, g == d_check, passed and rigidity_ok, nu_images, rigidity_ok
    )


@dataclass
class FCYReport:
    shift: int
    power: int
    results: dict
    passed: bool


def fcy_object_check(alg, shift: int, power: int, max_len=64) -> FCYReport:
    """Object-level fractional Calabi-Yau test on every projective stalk."""
    results = {}
    passed = True
    for z in alg.vertex_ids():
        X = stalk_complex(alg, z, 0)
        Y = X
        for _ in range(power):
            Y = derived_nakayama(Y, max_len)
        ok = complexes_isomorphic(Y, X.shift(shift))
        results[z] = ok
        passed = passed and ok
    return FCYReport(shift, power, results, passed)


def nu_orbit_complexes(alg, X: ProjComplex, a: int, max_len=64):
    """[X, nu X, ..., nu^{a-1} X], each minimised."""
    out = [minimize_complex(X)]
    for _ in range(a - 1):
        out.append(derived_nakayama(out[-1], max_len))
    return out


def build_tilting_complex_from_nu_orbit(alg, X: ProjComplex, a: int, max_len=64):
    """The direct sum of the first a Serre-twist iterates of X."""
    return direct_sum_complexes(nu_orbit_complexes(alg, X, a, max_len))


def endo_algebra_of_complexes(complexes) -> FDAlgebra:
    """End of a list of complexes, composed modulo homotopy."""
    if not complexes:
        raise ValueError("need at least one complex")
    alg = complexes[0].algebra
    data = {}
    for i, Xi in enumerate(complexes):
        for j, Xj in enumerate(complexes):
            reps, vectors, boundaries, slots, dim = chain_maps_mod_homotopy(Xj, Xi, 0)
            if i == j:
                ident = identity_chain_map(Xi)
                ident_vec = _chain_map_to_vector(Xj, Xi, 0, ident, slots, dim)
                pool = [ident_vec] + vectors
                chosen_vecs, chosen_reps = [], []
                span = [list(b) for b in boundaries]
                for vec, rep in zip(pool, [ident] + reps):
                    if in_span(span, vec):
                        continue
                    span.append(list(vec))
                    chosen_vecs.append(vec)
                    chosen_reps.append(rep)
                reps, vectors = chosen_reps, chosen_vecs
            data[(i, j)] = (reps, vectors, boundaries, slots, dim)

    blocks = []
    index = {}
    idem_ids = []
    for (i, j), (reps, _, _, _, _) in sorted(data.items()):
        for k in range(len(reps)):
            index[(i, j, k)] = len(blocks)
            blocks.append((i, j))
        if i == j:
            idem_ids.append(index[(i, i, 0)])

    mult = {}
    for (i, j), (reps_left, _, _, _, _) in data.items():
        for (jj, k), (reps_right, _, _, _, _) in data.items():
            if jj != j:
                continue
            target = data[(i, k)]
            t_reps, t_vecs, t_bound, t_slots, t_dim = target
            if not t_reps and not t_bound:
                continue
            solver_cols = [list(v) for v in t_vecs] + [list(b) for b in t_bound]
            solver = (
                ExactMatrix.from_rows(solver_cols).transpose() if solver_cols else None
            )
            for a, f in enumerate(reps_left):
                for b, g in enumerate(reps_right):
                    comp = compose_chain_maps(
                        complexes[k], complexes[j], complexes[i], g, f
                    )
                    vec = _chain_map_to_vector(
                        complexes[k], complexes[i], 0, comp, t_slots, t_dim
                    )
                    if solver is None:
                        if any(x != 0 for x in vec):
                            raise AssertionError("composite misses the Hom space")
                        continue
                    sol = solver.solve(vec)
                    if sol is None:
                        raise AssertionError("composite not a cycle")
                    entry = {
                        index[(i, k, t)]: c
                        for t, c in enumerate(sol[: len(t_reps)])
                        if c != 0
                    }
                    if entry:
                        mult[(index[(i, j, a)], index[(j, k, b)])] = entry
    return FDAlgebra(len(complexes), blocks, mult, idem_ids)


@dataclass
class PreprojectiveReport:
    hom_dim_value: int
    base_end_dim: int
    hom_dim_matches: bool
    self_injective: bool
    nakayama_permutation: dict
    degree_zero_iso: bool
    passed: bool


def preprojective_graded_check(d, n, B=None, max_len=64) -> PreprojectiveReport:
    """Graded comparison of the extension algebra with the twisted End data.

    Verifies dim Hom(P, nu P) = dim End(P) (the Serre-duality count), that
    the (n+d)-fold trivial extension of End(P) is self-injective with an
    honest projective-injective matching, and that its degree-zero part is
    isomorphic to B (by default the replicated model; pass a computed B to
    compare against the complex-level endomorphism algebra).
    """
    from .pathcomb import coords, enumerate_dyck
    from .quiveralg import build_auslander_algebra, hom_space, vertex_of_entries
    from .fdalg import (
        degree_zero_part,
        endo_algebra,
        iso_test,
        presentation,
        replicate,
        trivial_ext_r,
    )

    A = build_auslander_algebra(n + 1, d)
    dyck = enumerate_dyck(d, n)
    vertices = [vertex_of_entries(A, coords(p).entries) for p in dyck]
    projs = [A.projective(v) for v in vertices]
    injs = [A.injective(v) for v in vertices]
    hom_pnup = sum(hom_space(p, i)[0] for p in projs for i in injs)
    B0 = endo_algebra(projs)
    hom_matches = hom_pnup == B0.dim

    Pi = trivial_ext_r(B0, n + d)
    piq = presentation(Pi)
    self_inj = projective_injective_vertices(piq) == set(piq.vertex_ids())
    perm = {}
    perm_ok = self_inj
    for z in piq.vertex_ids():
        I = piq.injective(z)
        rad = I.radical_fibers()
        tops = [
            (v, I.dims[v] - len(rad[v]))
            for v in piq.vertex_ids()
            if I.dims[v] - len(rad[v]) > 0
        ]
        if len(tops) == 1 and tops[0][1] == 1 and _is_projective_module(piq, I):
            perm[z] = tops[0][0]
        else:
            perm_ok = False
    perm_ok = perm_ok and sorted(perm.values()) == sorted(piq.vertex_ids())

    if B is None:
        B = replicate(B0, n + d)
    deg0 = degree_zero_part(Pi)
    iso = iso_test(deg0, B) is not None
    return PreprojectiveReport(
        hom_pnup,
        B0.dim,
        hom_matches,
        self_inj and perm_ok,
        perm,
        iso,
        hom_matches and self_inj and perm_ok and iso,
    )


@dataclass
class GenerationSearchResult:
    reached: dict  # target index -> cone recipe that produced the match
    inconclusive: list


def complex_end_is_local(X: ProjComplex) -> bool:
    """Whether End(X) modulo homotopy is local, i.e. X is indecomposable.

    Chain maps with all-radical entries form a nilpotent ideal on a minimal
    complex, so locality is decided on the algebra of scalar parts; its
    radical is the radical of the regular trace form (characteristic zero).
    """
    reps, _, _, _, _ = chain_maps_mod_homotopy(X, X, 0)
    dims = []
    layout = []
    for m, vs in sorted(X.terms.items()):
        by_v: dict = {}
        for i, u in enumerate(vs):
            by_v.setdefault(u, []).append(i)
        for u, idxs in sorted(by_v.items()):
            layout.append((m, u, idxs))
            dims.append(len(idxs))

    def scalar_blocks(f):
        out = []
        for m, u, idxs in layout:
            out.append(
                [
                    [
                        _scalar_part(X.algebra, f.get(m, {}).get((t, s), {}), u)
                        for s in idxs
                    ]
                    for t in idxs
                ]
            )
        return out

    def mul(a, b):
        out = []
        for ma, mb, k in zip(a, b, dims):
            out.append(
                [
                    [sum(ma[i][t] * mb[t][j] for t in range(k)) for j in range(k)]
                    for i in range(k)
                ]
            )
        return out

    def flat(mats):
        return [x for mat in mats for row in mat for x in row]

    from .exactmat import span_basis

    def unflat(v):
        out = []
        pos = 0
        for k in dims:
            out.append([[v[pos + i * k + j] for j in range(k)] for i in range(k)])
            pos += k * k
        return out

    span = span_basis([flat(scalar_blocks(f)) for f in reps])
    # close the scalar image under multiplication
    while True:
        mats = [unflat(v) for v in span]
        extra = []
        for a in mats:
            for b in mats:
                fv = flat(mul(a, b))
                if not in_span(span + extra, fv):
                    extra.append(fv)
        if not extra:
            break
        span = span_basis(span + extra)
    mats = [unflat(v) for v in span]

    def trace(a):
        return sum(a[bi][i][i] for bi in range(len(dims)) for i in range(dims[bi]))

    nalg = len(mats)
    gram = ExactMatrix(nalg, nalg, [[trace(mul(x, y)) for y in mats] for x in mats])
    # the semisimple quotient has dimension rank(gram); local means it is k
    return gram.rank() == 1


def component_summands(X: ProjComplex):
    """Split a complex along its connected block structure (no base change)."""
    nodes = [(m, i) for m, vs in X.terms.items() for i in range(len(vs))]
    parent = {nd: nd for nd in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for m, rows in X.diffs.items():
        for t, row in enumerate(rows):
            for s, elem in enumerate(row):
                if elem:
                    union((m, s), (m + 1, t))
    groups: dict = {}
    for nd in nodes:
        groups.setdefault(find(nd), []).append(nd)
    if len(groups) == 1:
        return [X]
    out = []
    for members in groups.values():
        member_set = set(members)
        terms = {}
        index_map = {}
        for m, vs in X.terms.items():
            kept = [i for i in range(len(vs)) if (m, i) in member_set]
            if kept:
                terms[m] = tuple(vs[i] for i in kept)
                index_map[m] = kept
        diffs = {}
        for m, rows in X.diffs.items():
            if m in index_map and (m + 1) in index_map:
                diffs[m] = [
                    [rows[t][s] for s in index_map[m]] for t in index_map[m + 1]
                ]
        out.append(ProjComplex(X.algebra, terms, diffs, X.kind, check=False))
    return out


def thick_generation_search(
    alg, summands, targets, depth=4, max_objects=400, max_width=16, max_len=64
):
    """Bounded saturation under shifts and cones of basis morphisms.

    ``summands`` may be a single complex or a list of summand complexes.
    Minimised cones are split along their block structure so the pool
    carries summands rather than ever-growing direct sums; cones wider than
    ``max_width`` summands are discarded.  Never claims non-generation:
    unreached targets are reported as inconclusive.
    """
    if isinstance(summands, ProjComplex):
        summands = [summands]
    pool = []

    def normalize(c):
        return c.normalized_shift()[0]

    def known(c):
        for other, _ in pool:
            if other.label_signature() == c.label_signature() and complexes_isomorphic(
                other, c
            ):
                return True
        return False

    def add(c, recipe, new):
        for piece in component_summands(c):
            if piece.size() > max_width:
                continue
            piece = normalize(piece)
            if piece.is_zero() or known(piece):
                continue
            if any(
                piece.label_signature() == other.label_signature()
                and complexes_isomorphic(piece, other)
                for other, _ in new
            ):
                continue
            if piece.size() > 1 and not complex_end_is_local(piece):
                # decomposable but not block-split: drop it (sound, since
                # the search never claims non-generation)
                continue
            new.append((piece, recipe))
            if len(pool) + len(new) > max_objects:
                raise BudgetError("thick search object budget exceeded")

    initial = []
    for idx, s in enumerate(summands):
        add(normalize(minimize_complex(s)), ("summand", idx), initial)
    pool.extend(initial)

    frontier = range(0, len(pool))
    for round_no in range(depth):
        new = []
        size = len(pool)
        frontier_set = set(frontier)
        for a in range(size):
            for b in range(size):
                # only pairs touching the frontier can produce new cones
                if a not in frontier_set and b not in frontier_set:
                    continue
                X, Y = pool[a][0], pool[b][0]
                lo = min(Y.terms) - max(X.terms)
                hi = max(Y.terms) - min(X.terms)
                for k in range(lo, hi + 1):
                    reps, _, _, _, _ = chain_maps_mod_homotopy(X, Y, k)
                    Yk = Y.shift(k)
                    for f in reps:
                        cone = minimize_complex(_cone_of_chain_map(alg, X, Yk, f))
                        add(cone, ("cone", a, b, k), new)
        if not new:
            break
        frontier = range(size, size + len(new))
        pool.extend(new)

    reached = {}
    inconclusive = []
    for t_idx, target in enumerate(targets):
        tgt = normalize(minimize_complex(target))
        hit = None
        for c, recipe in pool:
            if c.label_signature() == tgt.label_signature() and complexes_isomorphic(
                c, tgt
            ):
                hit = recipe
                break
        if hit is None:
            inconclusive.append(t_idx)
        else:
            reached[t_idx] = hit
    return GenerationSearchResult(reached, inconclusive)


def _cone_of_chain_map(alg, X, Y, f):
    """cone(f: X -> Y): degree m holds X^{m+1} + Y^m."""
    terms = {}
    degrees = sorted(set([m - 1 for m in X.terms] + list(Y.terms)))
    for m in degrees:
        part = tuple(X.terms.get(m + 1, ())) + tuple(Y.terms.get(m, ()))
        if part:
            terms[m] = part
    diffs = {}
    for m in degrees:
        if (m + 1) not in terms:
            continue
        nx_s, ny_s = len(X.terms.get(m + 1, ())), len(Y.terms.get(m, ()))
        nx_t, ny_t = len(X.terms.get(m + 2, ())), len(Y.terms.get(m + 1, ()))
        rows = [[{} for _ in range(nx_s + ny_s)] for _ in range(nx_t + ny_t)]
        dX = X.diffs.get(m + 1)
        if dX is not None:
            for t in range(nx_t):
                for s in range(nx_s):
                    rows[t][s] = alg.elem_scale(-1, dX[t][s])
        fm = f.get(m + 1, {})
        for (t, s), elem in fm.items():
            rows[nx_t + t][s] = elem
        dY = Y.diffs.get(m)
        if dY is not None:
            for t in range(ny_t):
                for s in range(ny_s):
                    rows[nx_t + t][nx_s + s] = dY[t][s]
        diffs[m] = rows
    return ProjComplex(alg, terms, diffs, "proj", check=True)
