"""Finite-dimensional algebras by structure constants, and algebra surgery.

An ``FDAlgebra`` is a rational algebra with a distinguished complete set of
orthogonal idempotents; every basis element is sandwiched between a single
pair of them, so Cartan data, radical filtration and idempotent surgery
(corner subalgebras, quotients by complements, replicated and r-fold
trivial extension algebras) are all blockwise linear algebra.

``presentation`` recovers a bound quiver presentation from structure
constants: arrows lift a basis of rad/rad^2, the kernel of the induced
path-algebra surjection is computed degree by degree, and minimal
generators are chosen greedily in lexicographic path order.  The returned
algebra is rebuilt from that presentation and must reproduce the original
dimension, failing loudly otherwise.

``iso_test`` certifies isomorphisms: it searches vertex bijections
compatible with Cartan data and arrow multiplicities, matches arrows, and
solves for per-arrow scalars making every relation of one side evaluate to
zero in the other.  Success hands back an explicit generator map that is
verified by evaluation; failure means the search space was exhausted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactmat import ExactMatrix, ONE, ZERO, span_basis
from .quiveralg import (
    Arrow,
    BoundQuiverAlgebra,
    BudgetError,
    Quiver,
    QuiverRep,
    Relation,
    Vertex,
    compose_morphisms,
    hom_space,
    identity_morphism,
)


class FDAlgebra:
    """Structure-constant algebra with block-homogeneous basis.

    ``blocks[b] = (i, j)`` means e_i * b * e_j = b for the distinguished
    idempotents; multiplication is ``mult[(a, b)]`` = sparse coefficients of
    "a after b".
    """

    def __init__(self, nidem, blocks, mult, idem_ids, labels=None, grading=None):
        self.nidem = nidem
        self.blocks = list(blocks)
        self.mult = mult
        self.idem_ids = list(idem_ids)
        self.labels = labels or [f"b{k}" for k in range(len(self.blocks))]
        self.grading = list(grading) if grading is not None else None
        if len(self.idem_ids) != nidem:
            raise ValueError("need one distinguished idempotent per index")
        for i, bid in enumerate(self.idem_ids):
            if self.blocks[bid] != (i, i):
                raise ValueError("idempotent basis element in wrong block")
        self.block_basis: dict[tuple[int, int], list[int]] = {}
        for bid, blk in enumerate(self.blocks):
            self.block_basis.setdefault(blk, []).append(bid)
        self._block_pos = {
            blk: {bid: k for k, bid in enumerate(ids)} for blk, ids in self.block_basis.items()
        }

    @property
    def dim(self):
        return len(self.blocks)

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
        return {} if c == 0 else {k: c * v for k, v in x.items()}

    def basis_elem(self, bid: int) -> dict:
        return {bid: ONE}

    def unit(self) -> dict:
        return {bid: ONE for bid in self.idem_ids}

    def cartan(self) -> list[list[int]]:
        return [
            [len(self.block_basis.get((i, j), [])) for j in range(self.nidem)]
            for i in range(self.nidem)
        ]

    def radical_ids(self) -> list[int]:
        idem = set(self.idem_ids)
        return [bid for bid in range(self.dim) if bid not in idem]

    def is_basic_split(self) -> bool:
        return all(
            len(self.block_basis.get((i, i), [])) == 1 for i in range(self.nidem)
        )

    def radical_powers(self, max_power=None) -> list[list[dict]]:
        """Spanning sets of rad^1, rad^2, ... down to the vanishing power."""
        rad = _reduce_elems(self, [self.basis_elem(b) for b in self.radical_ids()])
        powers = [rad]
        limit = max_power or (self.dim + 1)
        for _ in range(limit):
            prev = powers[-1]
            nxt = []
            for x in prev:
                for b in self.radical_ids():
                    p = self.elem_mul(x, self.basis_elem(b))
                    if p:
                        nxt.append(p)
            nxt = _reduce_elems(self, nxt)
            if not nxt:
                powers.append([])
                break
            if _same_span(self, nxt, prev):
                raise ValueError("radical not nilpotent")
            powers.append(nxt)
        else:
            raise ValueError("radical not nilpotent")
        return powers

    def check_associative(self):
        """Exhaustive check over composable basis triples."""
        for (i, j), left_ids in self.block_basis.items():
            for (j2, k), mid_ids in self.block_basis.items():
                if j2 != j:
                    continue
                for (k2, l), right_ids in self.block_basis.items():
                    if k2 != k:
                        continue
                    for a in left_ids:
                        for b in mid_ids:
                            for c in right_ids:
                                ab_c = self.elem_mul(
                                    self.mult.get((a, b), {}), self.basis_elem(c)
                                )
                                a_bc = self.elem_mul(
                                    self.basis_elem(a), self.mult.get((b, c), {})
                                )
                                if ab_c != a_bc:
                                    raise AssertionError(
                                        f"associativity fails on ({a}, {b}, {c})"
                                    )


def _elem_vector(fd, elem):
    vec = [ZERO] * fd.dim
    for k, v in elem.items():
        vec[k] = v
    return vec


def _reduce_elems(fd, elems):
    vecs = span_basis([_elem_vector(fd, e) for e in elems])
    return [{k: v for k, v in enumerate(vec) if v != 0} for vec in vecs]


def _same_span(fd, xs, ys):
    from .exactmat import in_span

    xv = [_elem_vector(fd, e) for e in xs]
    yv = [_elem_vector(fd, e) for e in ys]
    return all(in_span(xv, v) for v in yv) and all(in_span(yv, v) for v in xv)


def fd_from_bqa(alg: BoundQuiverAlgebra) -> FDAlgebra:
    """Forget the path structure, keeping blocks, table and degree grading."""
    vpos = {v.id: k for k, v in enumerate(alg.quiver.vertices)}
    blocks = [(vpos[b.tgt], vpos[b.src]) for b in alg.basis]
    idem_ids = [alg.idempotent_of[v.id] for v in alg.quiver.vertices]
    labels = [
        alg.quiver.vertex_by_id[b.src].label
        if b.degree == 0
        else "*".join(alg.quiver.arrow_by_id[a].label for a in reversed(b.path))
        for b in alg.basis
    ]
    return FDAlgebra(
        len(alg.quiver.vertices),
        blocks,
        {k: dict(v) for k, v in alg.mult.items()},
        idem_ids,
        labels,
        grading=[b.degree for b in alg.basis],
    )


# -- endomorphism algebras --------------------------------------------------


def _flatten_morphism(alg, phi):
    out = []
    for v in alg.vertex_ids():
        for row in phi[v].data:
            out.extend(row)
    return out


def endo_algebra(reps: list[QuiverRep]) -> FDAlgebra:
    """End(M_1 + ... + M_k) with the identity maps as idempotents."""
    if not reps:
        raise ValueError("need at least one module")
    alg = reps[0].algebra
    hom_bases: dict[tuple[int, int], list] = {}
    for i, Mi in enumerate(reps):
        for j, Mj in enumerate(reps):
            _, basis = hom_space(Mj, Mi)
            if i == j:
                # rebuild the basis greedily so the identity comes first
                chosen = [identity_morphism(Mi)]
                chosen_vecs = [_flatten_morphism(alg, chosen[0])]
                for f in basis:
                    vec = _flatten_morphism(alg, f)
                    if _independent(chosen_vecs, vec):
                        chosen.append(f)
                        chosen_vecs.append(vec)
                if len(chosen) != len(basis):
                    raise AssertionError("identity missing from End basis")
                basis = chosen
            hom_bases[(i, j)] = basis

    index = {}
    blocks = []
    idem_ids = []
    labels = []
    for (i, j), basis in sorted(hom_bases.items()):
        for k, f in enumerate(basis):
            bid = len(blocks)
            index[(i, j, k)] = bid
            blocks.append((i, j))
            labels.append(f"f{i}<{j}[{k}]")
        if i == j:
            idem_ids.append(index[(i, i, 0)])

    solvers = {}
    for (i, j), basis in hom_bases.items():
        vecs = [_flatten_morphism(alg, f) for f in basis]
        solvers[(i, j)] = ExactMatrix.from_rows(vecs).transpose() if vecs else None

    mult = {}
    for (i, j), left in hom_bases.items():
        for (j2, k), right in hom_bases.items():
            if j2 != j:
                continue
            for a, f in enumerate(left):
                for b, g in enumerate(right):
                    comp = compose_morphisms(f, g, alg)
                    solver = solvers[(i, k)]
                    if solver is None:
                        if any(not m.is_zero() for m in comp.values()):
                            raise AssertionError("nonzero composite into an empty Hom space")
                        continue
                    coords = solver.solve(_flatten_morphism(alg, comp))
                    if coords is None:
                        raise AssertionError("composition left the Hom space")
                    entry = {
                        index[(i, k, t)]: c for t, c in enumerate(coords) if c != 0
                    }
                    if entry:
                        mult[(index[(i, j, a)], index[(j, k, b)])] = entry
    return FDAlgebra(len(reps), blocks, mult, idem_ids, labels)


def _independent(vecs, vec):
    from .exactmat import in_span

    return not in_span(vecs, vec)


# -- Gabriel quiver and presentation ----------------------------------------


@dataclass
class PresentationData:
    quiver: Quiver
    relations: list[Relation]
    arrow_elems: list[dict]  # image of each arrow inside the FD algebra
    algebra: BoundQuiverAlgebra


def gabriel_quiver(fd: FDAlgebra) -> tuple[Quiver, list[dict]]:
    """Quiver on the idempotents with one arrow per rad/rad^2 basis element."""
    if not fd.is_basic_split():
        raise ValueError("not basic-split: some e_i A e_i has dimension > 1")
    powers = fd.radical_powers()
    rad2 = powers[1] if len(powers) > 1 else []
    rad2_vecs = [_elem_vector(fd, e) for e in rad2]
    vertices = [Vertex(i, f"v{i}") for i in range(fd.nidem)]
    arrows = []
    arrow_elems = []
    from .exactmat import in_span

    for (i, j), ids in sorted(fd.block_basis.items()):
        if i == j:
            continue
        kept_vecs = [v for v in rad2_vecs if _supported_on_block(fd, v, (i, j))]
        for bid in ids:
            vec = _elem_vector(fd, fd.basis_elem(bid))
            if in_span(kept_vecs, vec):
                continue
            kept_vecs.append(vec)
            aid = len(arrows)
            # the element lives in e_i A e_j, so the arrow runs j -> i
            arrows.append(Arrow(aid, j, i, f"x{aid}"))
            arrow_elems.append(fd.basis_elem(bid))
    return Quiver(vertices, arrows), arrow_elems


def _supported_on_block(fd, vec, blk):
    return all(c == 0 or fd.blocks[k] == blk for k, c in enumerate(vec))


def _paths_of_length(quiver: Quiver, m: int):
    """All composable arrow-id tuples of length m, grouped by (src, tgt)."""
    by_block: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    frontier = [((a.id,), a.src, a.tgt) for a in quiver.arrows]
    for _ in range(m - 1):
        nxt = []
        for path, src, tgt in frontier:
            for a in quiver.arrows_out[tgt]:
                nxt.append((path + (a.id,), src, a.tgt))
        frontier = nxt
    for path, src, tgt in frontier:
        by_block.setdefault((src, tgt), []).append(path)
    for paths in by_block.values():
        paths.sort()
    return by_block


DEFAULT_PRESENTATION_DEGREE = 64


def presentation_data(fd: FDAlgebra, max_degree: int = DEFAULT_PRESENTATION_DEGREE) -> PresentationData:
    quiver, arrow_elems = gabriel_quiver(fd)

    def eval_path(path):
        elem = arrow_elems[path[0]]
        for aid in path[1:]:
            elem = fd.elem_mul(arrow_elems[aid], elem)
        return elem

    relations: list[Relation] = []
    # ideal vectors per block at the previous degree, each a {path: coeff}
    ideal_prev: dict[tuple[int, int], list[dict]] = {}
    m = 1
    while m < max_degree:
        m += 1
        by_block = _paths_of_length(quiver, m)
        if not by_block:
            break
        all_killed = True
        ideal_now: dict[tuple[int, int], list[dict]] = {}
        for blk, paths in sorted(by_block.items()):
            pos = {p: k for k, p in enumerate(paths)}
            # grow the ideal: arrow * (previous ideal vectors) * arrow
            grown: list[list[Fraction]] = []
            for prev_blk, vectors in ideal_prev.items():
                for vec in vectors:
                    for a in quiver.arrows:
                        if a.src == prev_blk[1] and (blk == (prev_blk[0], a.tgt)):
                            row = [ZERO] * len(paths)
                            for p, c in vec.items():
                                row[pos[p + (a.id,)]] += c
                            grown.append(row)
                        if a.tgt == prev_blk[0] and (blk == (a.src, prev_blk[1])):
                            row = [ZERO] * len(paths)
                            for p, c in vec.items():
                                row[pos[(a.id,) + p]] += c
                            grown.append(row)
            grown = [r for r in span_basis(grown)] if grown else []

            # kernel of evaluation on degree-m paths
            eval_cols = [_elem_vector(fd, eval_path(p)) for p in paths]
            eval_matrix = ExactMatrix(
                fd.dim, len(paths), [[eval_cols[j][i] for j in range(len(paths))] for i in range(fd.dim)]
            )
            kernel = eval_matrix.nullspace()
            if len(kernel) < len(paths):
                all_killed = False

            span = [list(r) for r in grown]
            new_vectors = list(grown)
            from .exactmat import in_span

            for vec in kernel:
                if in_span(span, vec):
                    continue
                span.append(vec)
                new_vectors.append(vec)
                relations.append(
                    Relation(
                        tuple(
                            (c, paths[k]) for k, c in enumerate(vec) if c != 0
                        )
                    )
                )
            ideal_now[blk] = [
                {paths[k]: c for k, c in enumerate(vec) if c != 0} for vec in span
            ]
        ideal_prev = ideal_now
        if all_killed:
            break
    else:
        raise BudgetError("presentation did not stabilise within the degree budget")

    algebra = BoundQuiverAlgebra.from_quiver_data(quiver, relations)
    if algebra.dim != fd.dim:
        raise ValueError(
            f"presentation mismatch: rebuilt dimension {algebra.dim} != {fd.dim}; "
            "the algebra does not admit a length grading for the chosen arrows"
        )
    return PresentationData(quiver, relations, arrow_elems, algebra)


def presentation(fd: FDAlgebra) -> BoundQuiverAlgebra:
    return presentation_data(fd).algebra


# -- replicated and trivial extension algebras ------------------------------


def trivial_ext_r(fd: FDAlgebra, r: int, wrap: bool = True) -> FDAlgebra:
    """r x r matrix algebra with fd on the diagonal and its dual on the
    superdiagonal; ``wrap`` adds the corner dual block (degree one)."""
    if r < 1:
        raise ValueError("need r >= 1")
    k = fd.nidem
    blocks = []
    labels = []
    grading = []
    layer_base = {}
    bond_base = {}
    for t in range(r):
        layer_base[t] = len(blocks)
        for bid in range(fd.dim):
            (i, j) = fd.blocks[bid]
            blocks.append((t * k + i, t * k + j))
            labels.append(f"L{t}:{fd.labels[bid]}")
            grading.append(0)
    bonds = list(range(r - 1)) + ([r - 1] if wrap else [])
    for t in bonds:
        bond_base[t] = len(blocks)
        t1 = (t + 1) % r
        for bid in range(fd.dim):
            (p, q) = fd.blocks[bid]
            # the dual of e_p A e_q sits in e_q (DA) e_p, between layers t, t+1
            blocks.append((t * k + q, t1 * k + p))
            labels.append(f"D{t}:{fd.labels[bid]}*")
            grading.append(1 if (wrap and t == r - 1) else 0)

    mult: dict[tuple[int, int], dict[int, Fraction]] = {}

    def add_entry(a, b, out):
        if out:
            mult[(a, b)] = out

    # layer * layer
    for t in range(r):
        base = layer_base[t]
        for (a, b), table in fd.mult.items():
            add_entry(base + a, base + b, {base + c: v for c, v in table.items()})

    # layer t left-multiplies bond t; layer t+1 right-multiplies bond t
    for t in bonds:
        t1 = (t + 1) % r
        lbase, bbase, rbase = layer_base[t], bond_base[t], layer_base[t1]
        for a in range(fd.dim):
            (i, j) = fd.blocks[a]
            for bs in range(fd.dim):
                (p, q) = fd.blocks[bs]
                # a * dual(bs): nonzero needs j == q
                if j == q:
                    out = {}
                    for c in fd.block_basis.get((p, i), []):
                        coeff = fd.mult.get((c, a), {}).get(bs, ZERO)
                        if coeff != 0:
                            out[bbase + c] = coeff
                    add_entry(lbase + a, bbase + bs, out)
                # dual(bs) * a: nonzero needs p == i
                if p == i:
                    out = {}
                    for c in fd.block_basis.get((j, q), []):
                        coeff = fd.mult.get((a, c), {}).get(bs, ZERO)
                        if coeff != 0:
                            out[bbase + c] = coeff
                    add_entry(bbase + bs, rbase + a, out)

    idem_ids = [layer_base[t] + fd.idem_ids[i] for t in range(r) for i in range(k)]
    return FDAlgebra(r * k, blocks, mult, idem_ids, labels, grading)


def replicate(fd: FDAlgebra, r: int) -> FDAlgebra:
    """Upper-bidiagonal replicated algebra: r diagonal copies, r-1 dual bonds."""
    out = trivial_ext_r(fd, r, wrap=False)
    out.grading = None
    return out


def degree_zero_part(fd: FDAlgebra) -> FDAlgebra:
    """Subalgebra on the degree-zero basis elements of a graded algebra."""
    if fd.grading is None:
        raise ValueError("algebra carries no grading")
    keep = [bid for bid in range(fd.dim) if fd.grading[bid] == 0]
    return _sub_on_basis(fd, keep, fd.nidem, list(range(fd.nidem)))


def _sub_on_basis(fd, keep, nidem, idem_order, idem_remap=None):
    remap = {bid: t for t, bid in enumerate(keep)}
    blocks = []
    for bid in keep:
        (i, j) = fd.blocks[bid]
        if idem_remap:
            i, j = idem_remap[i], idem_remap[j]
        blocks.append((i, j))
    mult = {}
    for a in keep:
        for b in keep:
            table = fd.mult.get((a, b))
            if not table:
                continue
            if any(c not in remap for c in table):
                raise ValueError("basis subset not multiplicatively closed")
            mult[(remap[a], remap[b])] = {remap[c]: v for c, v in table.items()}
    idem_ids = [remap[fd.idem_ids[i]] for i in idem_order]
    labels = [fd.labels[bid] for bid in keep]
    grading = [fd.grading[bid] for bid in keep] if fd.grading is not None else None
    return FDAlgebra(nidem, blocks, mult, idem_ids, labels, grading)


def idempotent_subalgebra(fd: FDAlgebra, idem_indices) -> FDAlgebra:
    """Corner algebra e A e for e the sum of the chosen idempotents."""
    chosen = sorted(set(idem_indices))
    if not chosen:
        raise ValueError("empty idempotent set")
    inside = set(chosen)
    keep = [
        bid
        for bid in range(fd.dim)
        if fd.blocks[bid][0] in inside and fd.blocks[bid][1] in inside
    ]
    idem_remap = {old: new for new, old in enumerate(chosen)}
    return _sub_on_basis(fd, keep, len(chosen), chosen, idem_remap)


def corner_vanishes(fd: FDAlgebra, idem_indices) -> bool:
    """True iff e A (1 - e) = 0 for e the sum of the chosen idempotents."""
    inside = set(idem_indices)
    return not any(
        blk[0] in inside and blk[1] not in inside for blk in fd.block_basis
    )


def quotient_by_complement(fd: FDAlgebra, idem_indices) -> FDAlgebra:
    """A / <1 - e>, with basis the surviving block representatives."""
    chosen = sorted(set(idem_indices))
    inside = set(chosen)
    from .exactmat import in_span

    # the ideal meets block (i, j) in the span of products through outside
    # idempotents; basis elements with an outside endpoint die entirely
    ideal_vectors: dict[tuple[int, int], list] = {}
    for (i, j), ids in fd.block_basis.items():
        if i not in inside or j not in inside:
            continue
        vecs = []
        for f in range(fd.nidem):
            if f in inside:
                continue
            for b1 in fd.block_basis.get((i, f), []):
                for b2 in fd.block_basis.get((f, j), []):
                    prod = fd.mult.get((b1, b2))
                    if prod:
                        vecs.append(_elem_vector(fd, prod))
        ideal_vectors[(i, j)] = span_basis(vecs)

    keep = []
    for (i, j), ids in sorted(fd.block_basis.items()):
        if i not in inside or j not in inside:
            continue
        span = [list(v) for v in ideal_vectors[(i, j)]]
        for bid in ids:
            vec = _elem_vector(fd, fd.basis_elem(bid))
            if in_span(span, vec):
                continue
            span.append(vec)
            keep.append(bid)

    remap_idem = {old: new for new, old in enumerate(chosen)}
    remap = {bid: t for t, bid in enumerate(keep)}

    def project(elem):
        """Rewrite an element modulo the ideal in terms of kept basis ids."""
        out = {}
        by_block: dict[tuple[int, int], dict] = {}
        for k, v in elem.items():
            by_block.setdefault(fd.blocks[k], {})[k] = v
        for blk, part in by_block.items():
            if blk[0] not in inside or blk[1] not in inside:
                continue
            ideal = ideal_vectors.get(blk, [])
            kept = [bid for bid in keep if fd.blocks[bid] == blk]
            cols = [list(v) for v in ideal] + [
                _elem_vector(fd, fd.basis_elem(bid)) for bid in kept
            ]
            m = ExactMatrix.from_rows(cols).transpose() if cols else None
            target = _elem_vector(fd, part)
            sol = m.solve(target) if m else None
            if sol is None:
                raise AssertionError("projection failed; ideal span incomplete")
            for t, bid in enumerate(kept):
                c = sol[len(ideal) + t]
                if c != 0:
                    out[remap[bid]] = out.get(remap[bid], ZERO) + c
        return out

    blocks = [
        (remap_idem[fd.blocks[bid][0]], remap_idem[fd.blocks[bid][1]]) for bid in keep
    ]
    mult = {}
    for a in keep:
        for b in keep:
            prod = fd.mult.get((a, b))
            if prod is None:
                continue
            entry = project(prod)
            if entry:
                mult[(remap[a], remap[b])] = entry
    idem_ids = [remap[fd.idem_ids[i]] for i in chosen]
    labels = [fd.labels[bid] for bid in keep]
    return FDAlgebra(len(chosen), blocks, mult, idem_ids, labels)


# -- isomorphism testing -----------------------------------------------------


@dataclass
class IsoResult:
    vertex_map: dict[int, int]
    arrow_map: dict[int, int]
    scalars: dict[int, Fraction]


class IsoInconclusive(RuntimeError):
    """Search budget exceeded before a verdict was reached."""


def iso_test(a1, a2, budget: int = 2_000_000):
    """Certified isomorphism search between two basic split algebras.

    Accepts ``FDAlgebra`` or ``BoundQuiverAlgebra`` inputs.  Returns an
    ``IsoResult`` carrying a verified generator-level isomorphism, or None
    after exhausting all vertex bijections compatible with the Cartan data.
    """
    fd1 = fd_from_bqa(a1) if isinstance(a1, BoundQuiverAlgebra) else a1
    fd2 = fd_from_bqa(a2) if isinstance(a2, BoundQuiverAlgebra) else a2
    if fd1.dim != fd2.dim or fd1.nidem != fd2.nidem:
        return None
    p1 = presentation_data(fd1)
    p2 = presentation_data(fd2)
    c1, c2 = fd1.cartan(), fd2.cartan()
    arrows1 = _arrow_count_matrix(p1.quiver, fd1.nidem)
    arrows2 = _arrow_count_matrix(p2.quiver, fd2.nidem)

    classes1, classes2 = _refine_classes_pair((c1, arrows1), (c2, arrows2))
    if sorted(classes1.values()) != sorted(classes2.values()):
        return None

    n = fd1.nidem
    order = sorted(range(n), key=lambda v: (classes1[v], v))
    candidates = {
        v: [w for w in range(n) if classes2[w] == classes1[v]] for v in range(n)
    }

    steps = 0

    def backtrack(pos, sigma, used):
        nonlocal steps
        if pos == len(order):
            yield dict(sigma)
            return
        v = order[pos]
        for w in candidates[v]:
            if w in used:
                continue
            steps += 1
            if steps > budget:
                raise IsoInconclusive("vertex bijection search budget exceeded")
            ok = all(
                c1[v][u] == c2[w][sigma[u]]
                and c1[u][v] == c2[sigma[u]][w]
                and arrows1[v][u] == arrows2[w][sigma[u]]
                and arrows1[u][v] == arrows2[sigma[u]][w]
                for u in sigma
            )
            if not ok or c1[v][v] != c2[w][w]:
                continue
            sigma[v] = w
            used.add(w)
            yield from backtrack(pos + 1, sigma, used)
            del sigma[v]
            used.discard(w)

    for sigma in backtrack(0, {}, set()):
        result = _match_arrows_and_scalars(fd2, p1, p2, sigma)
        if result is not None:
            arrow_map, scalars = result
            return IsoResult(sigma, arrow_map, scalars)
    if _has_parallel_arrows(p1.quiver) or _has_parallel_arrows(p2.quiver):
        # per-arrow scalars cannot mix parallel arrows, so an exhausted
        # search is not a certificate of non-isomorphism here
        raise IsoInconclusive("parallel arrows require base mixing beyond the search")
    return None


def _has_parallel_arrows(quiver) -> bool:
    seen = set()
    for a in quiver.arrows:
        key = (a.src, a.tgt)
        if key in seen:
            return True
        seen.add(key)
    return False


def _arrow_count_matrix(quiver, n):
    counts = [[0] * n for _ in range(n)]
    for a in quiver.arrows:
        counts[a.tgt][a.src] += 1
    return counts


def _refine_classes_pair(side1, side2):
    """Simultaneous partition refinement so class labels align across sides."""
    sides = [side1, side2]
    classes = [{v: 0 for v in range(len(c))} for c, _ in sides]
    size = max(len(side1[0]), len(side2[0]))
    for _ in range(size + 1):
        signatures = []
        for (cartan, arrows), cls in zip(sides, classes):
            n = len(cartan)
            sig = {
                v: (
                    cls[v],
                    cartan[v][v],
                    tuple(
                        sorted(
                            (cls[u], cartan[v][u], cartan[u][v], arrows[v][u], arrows[u][v])
                            for u in range(n)
                        )
                    ),
                )
                for v in range(n)
            }
            signatures.append(sig)
        relabel: dict = {}
        for sig in signatures:
            for key in sorted(map(repr, sig.values())):
                relabel.setdefault(key, len(relabel))
        new_classes = [
            {v: relabel[repr(sig[v])] for v in sig} for sig in signatures
        ]
        if new_classes == classes:
            break
        classes = new_classes
    return classes[0], classes[1]


def _match_arrows_and_scalars(fd2, p1, p2, sigma):
    by_block1: dict[tuple[int, int], list[int]] = {}
    for a in p1.quiver.arrows:
        by_block1.setdefault((a.src, a.tgt), []).append(a.id)
    by_block2: dict[tuple[int, int], list[int]] = {}
    for a in p2.quiver.arrows:
        by_block2.setdefault((a.src, a.tgt), []).append(a.id)

    block_choices = []
    for blk, ids1 in sorted(by_block1.items()):
        ids2 = by_block2.get((sigma[blk[0]], sigma[blk[1]]), [])
        if len(ids1) != len(ids2):
            return None
        block_choices.append((ids1, ids2))

    for perm_combo in itertools.product(
        *[itertools.permutations(ids2) for _, ids2 in block_choices]
    ):
        arrow_map = {}
        for (ids1, _), perm in zip(block_choices, perm_combo):
            for a1_id, a2_id in zip(ids1, perm):
                arrow_map[a1_id] = a2_id
        scalars = _solve_scalars(fd2, p1, p2, arrow_map)
        if scalars is not None:
            return arrow_map, scalars
    return None


def _solve_scalars(fd2, p1, p2, arrow_map):
    def eval_mapped(path):
        elem = p2.arrow_elems[arrow_map[path[0]]]
        for aid in path[1:]:
            elem = fd2.elem_mul(p2.arrow_elems[arrow_map[aid]], elem)
        return elem

    constraints = []  # (exponent dict, required value)
    for rel in p1.relations:
        terms = [(c, path, eval_mapped(path)) for c, path in rel.terms]
        nonzero = [(c, path, v) for c, path, v in terms if v]
        if not nonzero:
            continue
        if len(nonzero) == 1:
            return None  # a single surviving monomial cannot vanish
        if len(nonzero) != 2:
            raise IsoInconclusive("relation with 3+ surviving terms; scalar solve unsupported")
        (c1_, path1, v1), (c2_, path2, v2) = nonzero
        # need c1 m1 v1 + c2 m2 v2 = 0 with m monomials in arrow scalars
        ratio = _parallel_ratio(v1, v2)
        if ratio is None:
            return None
        # m1 / m2 = -c2 ratio / c1 where v2 = ratio... careful: v1 = ratio * v2
        exps: dict[int, int] = {}
        for aid in path1:
            exps[aid] = exps.get(aid, 0) + 1
        for aid in path2:
            exps[aid] = exps.get(aid, 0) - 1
        value = -Fraction(c2_, 1) / (Fraction(c1_, 1) * ratio)
        constraints.append(({a: e for a, e in exps.items() if e}, value))

    scalars = {aid: None for aid in {a.id for a in p1.quiver.arrows}}
    pending = list(constraints)
    while pending:
        progress = False
        remaining = []
        for exps, value in pending:
            unknown = [a for a in exps if scalars[a] is None]
            acc = value
            for a, e in exps.items():
                if scalars[a] is not None:
                    acc /= scalars[a] ** e
            if not unknown:
                if acc != 1:
                    return None
                progress = True
                continue
            if len(unknown) == 1 and abs(exps[unknown[0]]) == 1:
                a = unknown[0]
                scalars[a] = acc if exps[a] == 1 else 1 / acc
                if scalars[a] == 0:
                    return None
                progress = True
                continue
            remaining.append((exps, value))
        pending = remaining
        if pending and not progress:
            # gauge freedom: pin all but one unknown of the first stuck
            # constraint; the final evaluation check below stays authoritative
            exps, _ = pending[0]
            unknown = [a for a in exps if scalars[a] is None]
            for a in unknown[1:] if abs(exps[unknown[0]]) == 1 else unknown:
                scalars[a] = ONE
    for a in scalars:
        if scalars[a] is None:
            scalars[a] = ONE

    # authoritative check: every relation evaluates to zero with the scalars
    for rel in p1.relations:
        total: dict = {}
        for c, path in rel.terms:
            m = ONE
            for aid in path:
                m *= scalars[aid]
            total = fd2.elem_add(total, fd2.elem_scale(c * m, eval_mapped(path)))
        if total:
            return None
    return scalars


def _parallel_ratio(v1: dict, v2: dict):
    """rho with v1 = rho * v2, if the two sparse vectors are parallel."""
    if set(v1) != set(v2):
        return None
    rho = None
    for k in v1:
        r = v1[k] / v2[k]
        if rho is None:
            rho = r
        elif rho != r:
            return None
    return rho
