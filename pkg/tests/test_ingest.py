import json
import math

import pytest
from hypothesis import given

from hhindex import (
    DuplicateId,
    InvalidDistributionParams,
    InvalidGeneratorParams,
    NegativeCitations,
    ParseError,
    UnknownParent,
    Uniform,
    Zipf,
    build_hierarchy,
    dump_nodes_table,
    dump_tree_document,
    generate_synthetic,
    input_digest,
    max_h_antichain,
    parse_hierarchy,
    parse_nodes_table,
    parse_tree_document,
    write_report,
)
from hierarchies import E3_ROWS, e1, e3, hierarchies

HEADER = "id\tparent\tcitations\tlabel\n"

E3_TSV = HEADER + "".join(
    f"{n}\t{p or '-'}\t{c}\t{lab or ''}\n" for n, p, c, lab in E3_ROWS
)

E3_JSON = json.dumps({
    "id": "R", "citations": 0, "children": [
        {"id": "X", "citations": 0, "label": "class", "children": [
            {"id": "a", "citations": 3, "children": []},
            {"id": "b", "citations": 5, "children": []},
            {"id": "c", "citations": 1, "children": []},
        ]},
        {"id": "Y", "citations": 2, "label": "class", "children": [
            {"id": "d", "citations": 4, "children": []},
            {"id": "e", "citations": 4, "children": []},
        ]},
    ],
})


class TestNodesTable:
    def test_singleton(self):
        h = parse_nodes_table((HEADER + "R\t-\t7\t\n").encode())
        assert h.ranks == {"R": 7}

    def test_e3(self):
        h = parse_nodes_table(E3_TSV.encode())
        assert h.rank("R") == 19
        assert h == e3()

    def test_negative_reports_line(self):
        data = HEADER + "R\t-\t7\t\na\tR\t-3\t\n"
        with pytest.raises(NegativeCitations) as err:
            parse_nodes_table(data.encode())
        assert err.value.line == 3

    @pytest.mark.parametrize("body, exc, line", [
        ("R\t-\tseven\t\n", ParseError, 2),
        ("R\t-\n", ParseError, 2),
        ("R\t-\t1\t\nR\t-\t2\t\n", DuplicateId, 3),
        ("R\t-\t1\t\na\tQ\t2\t\n", UnknownParent, 3),
        ("R\t-\t99999999999999999999\t\n", ParseError, 2),
    ])
    def test_errors_carry_line(self, body, exc, line):
        with pytest.raises(exc) as err:
            parse_nodes_table((HEADER + body).encode())
        assert err.value.line == line
        assert f"line {line}" in str(err.value)

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_nodes_table(b"node\tparent\tcount\n")

    def test_three_columns_and_crlf(self):
        h = parse_nodes_table(b"id\tparent\tcitations\r\nR\t\t3\r\na\tR\t4\r\n")
        assert h.ranks == {"R": 7, "a": 4}

    def test_64_bit_counts(self):
        big = 3_200_000_000
        h = parse_nodes_table((HEADER + f"R\t-\t{big}\t\n").encode())
        assert h.rank("R") == big


class TestTreeDocument:
    def test_singleton(self):
        h = parse_tree_document(b'{"id":"R","citations":7,"children":[]}')
        assert h.ranks == {"R": 7}

    def test_e3_matches_table(self):
        assert parse_tree_document(E3_JSON.encode()) == parse_nodes_table(E3_TSV.encode())

    def test_duplicate_across_branches(self):
        doc = {"id": "R", "citations": 0, "children": [
            {"id": "a", "citations": 1, "children": [{"id": "z", "citations": 1}]},
            {"id": "b", "citations": 1, "children": [{"id": "z", "citations": 1}]},
        ]}
        with pytest.raises(DuplicateId):
            parse_tree_document(json.dumps(doc).encode())

    @pytest.mark.parametrize("doc", [
        b"{not json",
        b'{"id": "R"}',
        b'{"id": "", "citations": 1}',
        b'{"id": "R", "citations": true}',
        b'{"id": "R", "citations": 1, "children": {}}',
        b'{"id": "R", "citations": 1, "extra": 1}',
        b'[1]',
    ])
    def test_malformed(self, doc):
        with pytest.raises(ParseError):
            parse_tree_document(doc)

    def test_negative(self):
        with pytest.raises(NegativeCitations):
            parse_tree_document(b'{"id": "R", "citations": -1}')

    def test_forest(self):
        h = parse_tree_document(b'[{"id": "a", "citations": 1}, {"id": "b", "citations": 2}]')
        assert h.roots == ("a", "b")

    def test_sniffing(self):
        assert parse_hierarchy(E3_JSON.encode()) == parse_hierarchy(E3_TSV.encode()) == e3()


@given(hierarchies(max_nodes=20))
def test_round_trips(h):
    assert parse_nodes_table(dump_nodes_table(h)) == h
    assert parse_tree_document(dump_tree_document(h)) == h


def test_round_trip_keeps_labels():
    assert parse_tree_document(dump_tree_document(e3())) == e3()
    assert parse_nodes_table(dump_nodes_table(e3())) == e3()


class TestGenerator:
    def test_single(self):
        h = generate_synthetic(1, 1)
        assert len(h) == 1

    def test_deterministic(self):
        a = generate_synthetic(5, 300, 3, Uniform(0, 20), internal_citations=True, roots=4)
        b = generate_synthetic(5, 300, 3, Uniform(0, 20), internal_citations=True, roots=4)
        assert dump_nodes_table(a) == dump_nodes_table(b)
        assert dump_nodes_table(a) != dump_nodes_table(generate_synthetic(6, 300, 3, Uniform(0, 20)))

    def test_pinned_stream(self):
        # golden output; guards against drift in the seeded stream
        h = generate_synthetic(3, 6, 2, Uniform(0, 9))
        assert dump_nodes_table(h).decode() == (
            "id\tparent\tcitations\tlabel\n"
            "n0\t-\t0\t\n"
            "n1\tn0\t0\t\n"
            "n2\tn1\t0\t\n"
            "n3\tn1\t0\t\n"
            "n4\tn2\t2\t\n"
            "n5\tn3\t9\t\n"
        )

    def test_shape(self):
        h = generate_synthetic(2, 500, 3, Zipf(1.1, 100), roots=5)
        assert len(h) == 500 and len(h.roots) == 5
        assert max(len(h.children(n)) for n in h) <= 3
        assert all(1 <= h.direct_citations(n) <= 100 for n in h.leaves())
        assert all(h.direct_citations(n) == 0 for n in h if not h.is_leaf(n))

    def test_internal_citations(self):
        h = generate_synthetic(2, 500, 3, Uniform(1, 5), internal_citations=True)
        assert all(h.direct_citations(n) >= 1 for n in h)

    def test_chain_when_one_child(self):
        h = generate_synthetic(0, 50, 1, Uniform(0, 3))
        assert len(h.leaves()) == 1

    @pytest.mark.parametrize("kwargs", [
        dict(n=0), dict(n=5, max_children=0), dict(n=5, roots=6),
    ])
    def test_bad_params(self, kwargs):
        with pytest.raises(InvalidGeneratorParams):
            generate_synthetic(0, **kwargs)

    @pytest.mark.parametrize("dist", [Uniform(5, 2), Uniform(-1, 3), Zipf(0, 10), Zipf(1.1, 0)])
    def test_bad_distributions(self, dist):
        with pytest.raises(InvalidDistributionParams):
            generate_synthetic(0, 10, 2, dist)


class TestReport:
    def test_e3_full(self):
        r = max_h_antichain(e3())
        doc = json.loads(write_report(r, "full", input_digest(E3_TSV.encode())))
        assert list(doc) == ["schema_version", "input_digest", "mode", "h", "antichain", "median_rank",
                             "max_rank", "nodes", "visited", "digested", "total_citations", "sqrt_ratio"]
        assert doc["h"] == 3 and doc["total_citations"] == 19
        assert doc["sqrt_ratio"] == pytest.approx(3 / math.sqrt(19))
        assert round(doc["sqrt_ratio"], 3) == 0.688
        assert doc["antichain"] == ["b", "d", "e"]

    def test_zero(self):
        r = max_h_antichain(build_hierarchy([("a", None, 0)]))
        doc = json.loads(write_report(r, "full", "x"))
        assert doc["h"] == 0 and doc["sqrt_ratio"] == 0

    def test_e1_nodes(self):
        doc = json.loads(write_report(max_h_antichain(e1()), "full", "x"))
        assert (doc["h"], doc["nodes"]) == (3, 13)

    def test_even_median_is_exact(self):
        h = build_hierarchy([("a", None, 2**60 + 1), ("b", None, 2**60 + 2)])
        out = write_report(max_h_antichain(h), "flat", "x").decode()
        assert f'"median_rank": {2**60 + 1}.5' in out

    def test_trace_included(self):
        doc = json.loads(write_report(max_h_antichain(e3(), trace=True), "full", "x"))
        assert doc["trace"][0] == [19, 1, 1]

    def test_bytes_stable(self):
        r = max_h_antichain(e3(), trace=True)
        assert write_report(r, "full", "d") == write_report(r, "full", "d")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            write_report(max_h_antichain(e3()), "sideways", "d")

    def test_cross_format_reports(self):
        a = max_h_antichain(parse_hierarchy(E3_TSV.encode()), trace=True)
        b = max_h_antichain(parse_hierarchy(E3_JSON.encode()), trace=True)
        assert write_report(a, "full", "-") == write_report(b, "full", "-")

    def test_digest_canonicalizes_line_endings(self):
        assert input_digest(b"a\r\nb\n") == input_digest(b"a\nb\n")
        assert input_digest(b"a") != input_digest(b"b")
