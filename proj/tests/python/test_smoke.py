import os
import subprocess

import pytest

import hwcl

EXAMPLE = [
    (1, 4), (1, 5), (1, 9), (1, 11), (1, 13), (2, 5), (2, 7), (2, 12), (2, 14), (3, 5),
    (3, 8), (4, 6), (4, 11), (5, 7), (5, 9), (5, 12), (5, 14), (6, 13), (7, 9), (10, 11),
]


def bfs(edges, source):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def test_worked_example():
    g = hwcl.Graph.from_edges(EXAMPLE)
    assert g.num_vertices == 14
    assert hwcl.select_landmarks(g, 3) == [5, 1, 2]
    index = hwcl.build(g, 3)
    assert index.stats()["k"] == 3


def test_distances_match_bfs():
    g = hwcl.Graph.from_edges(EXAMPLE)
    index = hwcl.build(g, 4, threads=2)
    ids = g.original_ids()
    for s in ids:
        truth = bfs(EXAMPLE, s)
        for t in ids:
            assert index.distance(s, t) == truth[t]
            if s != t:
                assert index.upper_bound(s, t) >= truth[t]


def test_unreachable_and_errors():
    g = hwcl.Graph.from_edges([(0, 1), (1, 2), (7, 8)])
    index = hwcl.build(g, 1)
    assert index.distance(0, 8) is None
    assert index.distances([(0, 2), (7, 8), (0, 7)]) == [2, 1, None]
    with pytest.raises(hwcl.DomainError):
        index.distance(0, 99)
    with pytest.raises(hwcl.DomainError):
        hwcl.build(g, 0)


def test_save_load_round_trip(tmp_path):
    g = hwcl.Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4)])
    index = hwcl.build(g, 2)
    assert index.landmarks() == [1, 2]
    assert index.label(0) == [(1, 1)]
    path = tmp_path / "p.hl"
    assert index.save(str(path)) == path.stat().st_size
    again = hwcl.load(str(path), g)
    assert again.stats() == index.stats()
    assert again.distance(0, 4) == 4
    path.write_bytes(b"nope")
    with pytest.raises(hwcl.LoadError):
        hwcl.load(str(path), g)


def test_read_edge_list(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# c\n0 1\n1 2\n")
    g = hwcl.Graph.read(str(path))
    assert (g.num_vertices, g.num_edges) == (3, 2)
    path.write_text("0 x\n")
    with pytest.raises(hwcl.ParseError):
        hwcl.Graph.read(str(path))


@pytest.mark.skipif(not os.environ.get("HWCL_BIN"), reason="CLI binary not provided")
def test_cli_query(tmp_path):
    graph = tmp_path / "fig.txt"
    graph.write_text("".join(f"{a} {b}\n" for a, b in EXAMPLE))
    index = tmp_path / "fig.hl"
    binary = os.environ["HWCL_BIN"]
    subprocess.run([binary, "build", "--input", str(graph), "--landmarks", "3",
                    "--output", str(index)], check=True, capture_output=True)
    out = subprocess.run([binary, "query", "--index", str(index), "--graph", str(graph)],
                         input="2 11\n", text=True, check=True, capture_output=True)
    assert out.stdout == "3\n"
