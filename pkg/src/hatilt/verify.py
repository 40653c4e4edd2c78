"""Named verification claims and the orchestration pipeline.

Each claim is a pure function of (d, n) and a budget configuration; it
returns a measured value and a pass verdict.  The pipeline runs claims in
declared order, times them, and assembles a deterministic report (apart
from the wall-clock ``ms`` fields).  Budget exhaustion marks a claim as
skipped rather than failed.

Resolutions and presentations are cached under ``HA_CACHE_DIR`` when that
variable is set, keyed by (n, d, algebra, version); the cache is a pure
optimisation and never changes results.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass

from . import __version__
from .cluster import (
    ShiftedModule,
    generation_certificate,
    hom_dim,
    nakayama,
    nakayama_pow,
    nu_orbit_decomposition,
    projective_summands,
    rigidity_check,
    tilting_summands,
)
from .complexes import (
    domdim,
    fcy_object_check,
    gldim,
    hom_complex_dim,
    preprojective_graded_check,
    shifted_module_complex,
    two_subhomogeneous_check,
    endo_algebra_of_complexes,
)
from .fdalg import (
    corner_vanishes,
    endo_algebra,
    fd_from_bqa,
    idempotent_subalgebra,
    iso_test,
    presentation,
    presentation_data,
    replicate,
)
from .pathcomb import coords, enumerate_all, enumerate_dyck, preceq, relation_R
from .quiveralg import (
    BudgetError,
    build_auslander_algebra,
    module_M,
    vertex_of_entries,
)


@dataclass(frozen=True)
class VerifyConfig:
    max_resolution_length: int | None = None  # defaults to n d + 2 per model
    max_complex_width: int | None = None  # defaults to 4 (d + 1)
    max_algebra_dim: int = 40_000
    iso_budget: int = 2_000_000

    def resolution_length(self, d, n):
        return self.max_resolution_length or (n * d + 2)

    def complex_width(self, d, n):
        return self.max_complex_width or (4 * (d + 1))

    def echo(self, d, n):
        return {
            "max_resolution_length": self.resolution_length(d, n),
            "max_complex_width": self.complex_width(d, n),
            "max_algebra_dim": self.max_algebra_dim,
            "iso_budget": self.iso_budget,
        }


class _Cache:
    def __init__(self):
        self.root = os.environ.get("HA_CACHE_DIR")

    def get(self, key):
        if not self.root:
            return None
        path = os.path.join(self.root, key + ".json")
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return None

    def put(self, key, value):
        if not self.root:
            return
        os.makedirs(self.root, exist_ok=True)
        path = os.path.join(self.root, key + ".json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(value, fh, sort_keys=True)


def _cache_key(name, n, d):
    return f"{name}-n{n}-d{d}-v{__version__}"


class ModelData:
    """Shared constructions for one coprime (d, n), built lazily."""

    def __init__(self, d, n, config: VerifyConfig):
        if math.gcd(n, d) != 1:
            raise ValueError(f"gcd(n, d) must be 1, got n={n}, d={d}")
        self.d = d
        self.n = n
        self.config = config
        self._cache = {}

    def _memo(self, key, builder):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    def algebra(self):
        return self._memo(
            "algebra",
            lambda: build_auslander_algebra(
                self.n + 1, self.d, max_dim=self.config.max_algebra_dim
            ),
        )

    def dyck(self):
        return self._memo("dyck", lambda: enumerate_dyck(self.d, self.n))

    def projectives(self):
        alg = self.algebra()
        return self._memo(
            "projectives",
            lambda: [
                alg.projective(vertex_of_entries(alg, coords(p).entries))
                for p in self.dyck()
            ],
        )

    def b0(self):
        return self._memo("b0", lambda: endo_algebra(self.projectives()))

    def b_replicated(self):
        return self._memo("b", lambda: replicate(self.b0(), self.n + self.d))

    def tilting_complexes(self):
        def build():
            alg = self.algebra()
            out = []
            for u in tilting_summands(self.d, self.n):
                m = module_M(alg, coords(u.path))
                out.append(
                    shifted_module_complex(
                        alg,
                        m,
                        self.d * u.shift,
                        max_len=self.config.resolution_length(self.d, self.n),
                    )
                )
            return out

        return self._memo("tilting_complexes", build)

    def end_t(self):
        return self._memo(
            "end_t", lambda: endo_algebra_of_complexes(self.tilting_complexes())
        )


# -- claims -------------------------------------------------------------------


def claim_dyck_count(model: ModelData):
    d, n = model.d, model.n
    count = len(model.dyck())
    expected = math.comb(d + n, d) // (d + n)
    return count == expected, {"count": count, "expected": expected}


def claim_orbit_normal_form(model: ModelData):
    d, n = model.d, model.n
    from .pathcomb import is_dyck, rotate_pow

    ok = True
    for p in enumerate_all(d, n):
        hits = sum(is_dyck(rotate_pow(p, k)) for k in range(d + n))
        if hits != 1:
            ok = False
            break
    return ok, {"paths": math.comb(d + n, d)}


def claim_interleaving_agreement(model: ModelData):
    d, n = model.d, model.n
    paths = enumerate_all(d, n)
    pairs = 0
    for p1 in paths:
        c1 = coords(p1)
        for p2 in paths:
            pairs += 1
            if relation_R(p1, p2) != preceq(c1, coords(p2)):
                return False, {"pairs": pairs}
    return True, {"pairs": pairs}


def claim_rigidity(model: ModelData):
    report = rigidity_check(model.d, model.n)
    return report.passed, {"end_dim": report.end_dim, "violations": len(report.violations)}


def claim_generation(model: ModelData):
    cert = generation_certificate(model.d, model.n)
    resolved = sum(1 for e in cert.entries if e.status == "resolved")
    return True, {
        "entries": len(cert.entries),
        "resolved": resolved,
        "injective_labels": len(cert.injective_labels),
    }


def claim_nu_orbit_blocks(model: ModelData):
    from collections import Counter

    d, n = model.d, model.n
    base = projective_summands(d, n)
    for i in range(1, n + d + 1):
        blocks = nu_orbit_decomposition(d, n, i)
        direct = Counter(nakayama_pow(u, i) for u in base)
        if Counter(x for b in blocks.values() for x in b) != direct:
            return False, {"i": i}
    return True, {"slices": n + d}


def claim_serre_symmetry(model: ModelData):
    summands = tilting_summands(model.d, model.n)
    for u in summands:
        for v in summands:
            if hom_dim(u, v) != hom_dim(v, nakayama(u)):
                return False, {}
    return True, {"pairs": len(summands) ** 2}


def claim_fcy_combinatorial(model: ModelData):
    d, n = model.d, model.n
    for p in enumerate_all(d + 1, n):
        u = ShiftedModule(p, 0)
        if nakayama_pow(u, n + d + 1) != ShiftedModule(p, n):
            return False, {"path": p.steps}
    return True, {"objects": math.comb(d + n + 1, d + 1)}


def claim_hom_agreement(model: ModelData):
    d, n = model.d, model.n
    summands = tilting_summands(d, n)
    complexes = model.tilting_complexes()
    window = 2 * (d + 1)
    checked = 0
    for u, X in zip(summands, complexes):
        for v, Y in zip(summands, complexes):
            for k in range(-window, window + 1):
                comb = (
                    hom_dim(u, ShiftedModule(v.path, v.shift + k // d))
                    if k % d == 0
                    else 0
                )
                if hom_complex_dim(X, Y, k) != comb:
                    return False, {"pair": (u.path.steps, v.path.steps, k)}
                checked += 1
    return True, {"checked": checked}


def claim_endo_replicate(model: ModelData):
    B = model.end_t()
    target = model.b_replicated()
    result = iso_test(B, target, budget=model.config.iso_budget)
    return result is not None, {"dim": B.dim, "vertices": B.nidem}


def claim_b0_presentation(model: ModelData):
    data = presentation_data(model.b0())
    return True, {
        "vertices": len(data.quiver.vertices),
        "arrows": len(data.quiver.arrows),
        "relations": len(data.relations),
        "dimension": model.b0().dim,
    }


def claim_idempotent_corner(model: ModelData):
    d, n = model.d, model.n
    s = math.ceil(d / n)
    if d == s:  # the smaller Auslander algebra degenerates
        return True, {"skipped_degenerate": True}
    aprime = build_auslander_algebra(n + 1, d - s, max_dim=model.config.max_algebra_dim)
    fd = fd_from_bqa(aprime)
    vpos = {v.id: k for k, v in enumerate(aprime.quiver.vertices)}
    beta = [tuple(e - s for e in coords(p).entries[s:]) for p in model.dyck()]
    e_indices = [vpos[vertex_of_entries(aprime, b)] for b in beta]
    corner_ok = corner_vanishes(fd, e_indices)
    sub = idempotent_subalgebra(fd, e_indices)
    iso = iso_test(sub, model.b0(), budget=model.config.iso_budget) is not None
    return corner_ok and iso, {"corner_vanishes": corner_ok, "iso": iso, "s": s}


def claim_gldim_a(model: ModelData, cache: _Cache):
    d, n = model.d, model.n
    key = _cache_key("gldim-A", n, d)
    cached = cache.get(key)
    if cached is not None:
        value = cached["gldim"]
    else:
        value = gldim(model.algebra(), max_len=model.config.resolution_length(d, n))
        cache.put(key, {"gldim": value})
    return value == d, {"gldim": value, "expected": d}


def claim_gldim_b(model: ModelData, cache: _Cache):
    d, n = model.d, model.n
    key = _cache_key("gldim-B", n, d)
    cached = cache.get(key)
    if cached is not None:
        value = cached["gldim"]
    else:
        value = gldim(
            presentation(model.b_replicated()),
            max_len=model.config.resolution_length(d, n),
        )
        cache.put(key, {"gldim": value})
    return value == n * d, {"gldim": value, "expected": n * d}


def claim_gldim_b0(model: ModelData, cache: _Cache):
    d, n = model.d, model.n
    s = math.ceil(d / n)
    key = _cache_key("gldim-B0", n, d)
    cached = cache.get(key)
    if cached is not None:
        value = cached["gldim"]
    else:
        value = gldim(
            presentation(model.b0()), max_len=model.config.resolution_length(d, n)
        )
        cache.put(key, {"gldim": value})
    return value == d - s, {"gldim": value, "expected": d - s}


def claim_higher_auslander(model: ModelData):
    d, n = model.d, model.n
    lam = presentation(replicate(model.b0(), n + d + 1))
    max_len = model.config.resolution_length(d, n)
    g = gldim(lam, max_len=max_len)
    dd = domdim(lam, max_len=max_len)
    ok = g <= n * d + 1 and (dd == math.inf or n * d + 1 <= dd)
    return ok, {"gldim": g, "domdim": "inf" if dd == math.inf else dd, "bound": n * d + 1}


def claim_two_subhomogeneous(model: ModelData):
    d, n = model.d, model.n
    B = presentation(model.b_replicated())
    report = two_subhomogeneous_check(
        B, n * d, max_len=model.config.resolution_length(d, n)
    )
    return report.passed, {
        "gldim": report.gldim,
        "gldim_equals_d": report.gldim_equals_d,
        "rigidity": report.rigidity_ok,
    }


def claim_preprojective(model: ModelData):
    d, n = model.d, model.n
    report = preprojective_graded_check(
        d, n, B=model.end_t(), max_len=model.config.resolution_length(d, n)
    )
    return report.passed, {
        "hom_dim": report.hom_dim_value,
        "end_p_dim": report.base_end_dim,
        "self_injective": report.self_injective,
        "degree_zero_iso": report.degree_zero_iso,
    }


def claim_fcy_a(model: ModelData):
    d, n = model.d, model.n
    report = fcy_object_check(
        model.algebra(), n * d, n + d + 1, max_len=model.config.resolution_length(d, n)
    )
    return report.passed, {"shift": n * d, "power": n + d + 1}


CLAIMS = [
    ("dyck_count", claim_dyck_count),
    ("orbit_normal_form", claim_orbit_normal_form),
    ("interleaving_agreement", claim_interleaving_agreement),
    ("rigidity", claim_rigidity),
    ("generation", claim_generation),
    ("nu_orbit_blocks", claim_nu_orbit_blocks),
    ("serre_symmetry", claim_serre_symmetry),
    ("fcy_combinatorial", claim_fcy_combinatorial),
    ("hom_agreement", claim_hom_agreement),
    ("endo_replicate", claim_endo_replicate),
    ("b0_presentation", claim_b0_presentation),
    ("idempotent_corner", claim_idempotent_corner),
    ("gldim_A", claim_gldim_a),
    ("gldim_B", claim_gldim_b),
    ("gldim_B0", claim_gldim_b0),
    ("higher_auslander", claim_higher_auslander),
    ("two_subhomogeneous", claim_two_subhomogeneous),
    ("preprojective", claim_preprojective),
    ("fcy_A", claim_fcy_a),
]

CLAIM_NAMES = [name for name, _ in CLAIMS]

COMBINATORIAL_CLAIMS = [
    "dyck_count",
    "orbit_normal_form",
    "interleaving_agreement",
    "rigidity",
    "generation",
    "nu_orbit_blocks",
    "serre_symmetry",
    "fcy_combinatorial",
]


def run_claims(d, n, names, config: VerifyConfig | None = None):
    """Run the selected claims in declared order; returns (claims, any_failed,
    any_skipped)."""
    config = config or VerifyConfig()
    model = ModelData(d, n, config)
    cache = _Cache()
    results = []
    failed = skipped = False
    selected = set(names)
    for name, fn in CLAIMS:
        if name not in selected:
            continue
        start = time.monotonic()
        try:
            if fn in (claim_gldim_a, claim_gldim_b, claim_gldim_b0):
                ok, value = fn(model, cache)
            else:
                ok, value = fn(model)
            status = "pass" if ok else "fail"
        except BudgetError as exc:
            status = "skipped"
            value = {"reason": str(exc)}
        ms = int((time.monotonic() - start) * 1000)
        results.append({"name": name, "status": status, "value": value, "ms": ms})
        failed = failed or status == "fail"
        skipped = skipped or status == "skipped"
    return results, failed, skipped
