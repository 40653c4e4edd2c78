import json

from hatilt.cluster import generation_certificate
from hatilt.complexes import shifted_module_complex
from hatilt.pathcomb import LatticePath, OrderedSeq
from hatilt.quiveralg import build_auslander_algebra, module_M
from hatilt.serialize import (
    algebra_from_doc,
    algebra_to_doc,
    certificate_to_doc,
    complex_to_doc,
    dumps,
    path_from_doc,
    path_to_doc,
    quiver_from_doc,
    quiver_to_doc,
    quiver_to_dot,
    quiver_to_tex,
    rep_from_doc,
    rep_to_doc,
)


class TestJsonRoundTrips:
    def test_path(self):
        p = LatticePath(3, 4, "HVVHVHV")
        doc = path_to_doc(p)
        assert doc["schema"] == 1
        assert path_from_doc(json.loads(dumps(doc))) == p

    def test_quiver_and_relations(self):
        alg = build_auslander_algebra(4, 2)
        doc = quiver_to_doc(alg.quiver, alg.relations)
        quiver, relations = quiver_from_doc(json.loads(dumps(doc)))
        assert len(quiver.vertices) == len(alg.quiver.vertices)
        assert len(relations) == len(alg.relations)

    def test_algebra_rebuild(self):
        alg = build_auslander_algebra(3, 2)
        rebuilt = algebra_from_doc(json.loads(dumps(algebra_to_doc(alg))))
        assert rebuilt.dim == alg.dim
        assert rebuilt.nilpotency == alg.nilpotency

    def test_representation(self):
        alg = build_auslander_algebra(3, 2)
        m = module_M(alg, OrderedSeq(3, 3, (1, 3, 5)))
        doc = rep_to_doc(m)
        back = rep_from_doc(alg, json.loads(dumps(doc)))
        assert back.dim_vector() == m.dim_vector()

    def test_complex_document(self):
        alg = build_auslander_algebra(3, 2)
        m = module_M(alg, OrderedSeq(3, 3, (2, 3, 5)))
        cplx = shifted_module_complex(alg, m, 0)
        doc = complex_to_doc(cplx)
        assert doc["kind"] == "proj"
        assert doc["window"][0] <= doc["window"][1]
        assert set(doc["terms"]) == {str(m) for m in cplx.terms}

    def test_certificate_document(self):
        cert = generation_certificate(2, 3)
        doc = certificate_to_doc(cert)
        assert len(doc["entries"]) == len(cert.entries)
        statuses = {e["status"] for e in doc["entries"]}
        assert statuses <= {"in-T", "resolved"}

    def test_dumps_deterministic(self):
        alg = build_auslander_algebra(3, 2)
        assert dumps(algebra_to_doc(alg)) == dumps(algebra_to_doc(alg))


class TestDotAndTex:
    def test_dot_parses_shape(self):
        alg = build_auslander_algebra(4, 2)
        dot = quiver_to_dot(alg.quiver, alg.relations)
        assert dot.startswith("digraph")
        assert dot.rstrip().endswith("}")
        # one node line per vertex, one edge line per arrow
        node_lines = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
        edge_lines = [l for l in dot.splitlines() if "->" in l]
        assert len(node_lines) == len(alg.quiver.vertices)
        assert len(edge_lines) == len(alg.quiver.arrows)
        assert "// relation" in dot

    def test_tex_tabular(self):
        alg = build_auslander_algebra(3, 2)
        tex = quiver_to_tex(alg.quiver, alg.relations)
        assert tex.startswith("\\begin{tabular}")
        assert tex.rstrip().endswith("\\end{tabular}")


class TestReportDocs:
    def test_resolution_report(self):
        from hatilt.complexes import minimal_proj_resolution
        from hatilt.serialize import resolution_report_to_doc

        alg = build_auslander_algebra(3, 2)
        report, _, _ = minimal_proj_resolution(alg, alg.simple(0), label="S0")
        doc = resolution_report_to_doc(report)
        assert doc["label"] == "S0"
        assert doc["length"] == report.length
        json.loads(dumps(doc))

    def test_check_report(self):
        from hatilt.complexes import fcy_object_check
        from hatilt.serialize import check_report_to_doc
        from hatilt.quiveralg import Quiver, Vertex, Arrow, BoundQuiverAlgebra

        q = Quiver([Vertex(0, "1"), Vertex(1, "2")], [Arrow(0, 0, 1, "a")])
        alg = BoundQuiverAlgebra.from_quiver_data(q, [])
        doc = check_report_to_doc(fcy_object_check(alg, 1, 3))
        assert doc["kind"] == "FCYReport"
        assert doc["passed"] is True
        json.loads(dumps(doc))
