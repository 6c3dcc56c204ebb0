"""Smoke test for the Python extension.

Build it first with

    cargo build --release -p cuttree-python --features extension-module

then run `python3 python/smoke_test.py`. The script loads the compiled
library straight from target/ (or from $CUTTREE_PY_LIB), so no install step
is needed. With maturin, `maturin develop -m crates/python/Cargo.toml
--features extension-module` works too.
"""

import importlib.util
import itertools
import math
import os
import sys
import tempfile
from pathlib import Path

import networkx as nx

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    try:
        import cuttree_py

        return cuttree_py
    except ImportError:
        pass
    candidates = [os.environ.get("CUTTREE_PY_LIB")] + [
        str(ROOT / "target" / profile / "libcuttree_py.so") for profile in ("release", "debug")
    ]
    for path in filter(None, candidates):
        if os.path.exists(path):
            spec = importlib.util.spec_from_file_location("cuttree_py", path)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("cuttree_py not found; build crates/python first")


def main():
    ct = load_module()

    # triangle with a pendant vertex
    g = ct.Graph([(10, 20), (20, 30), (30, 10), (30, 40)])
    tree = ct.build(g)
    assert len(tree) == 4
    assert tree.query(10, 20) == 2
    assert tree.query(10, 40) == 1
    assert tree.query(10, 10) == math.inf
    assert sorted(w for _, _, w in tree.edges()) == [1, 2, 2]
    assert tree.distribution() == [(2, 3), (1, 3)]
    assert len(tree.dendrogram()) == 3
    assert tree.stats()["flow_invocations"] >= 0
    try:
        tree.query(10, 99)
    except KeyError:
        pass
    else:
        raise AssertionError("unknown label accepted")

    # text and file round trips
    again = ct.CutTree.from_text(tree.to_text())
    assert again.edges() == tree.edges()
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "t.tree")
        tree.save(path)
        assert ct.CutTree.load(path).to_text() == tree.to_text()
        gpath = os.path.join(d, "g.txt")
        Path(gpath).write_text(g.to_text())
        assert ct.Graph.read(gpath).edges() == g.edges()

    # every variant against networkx on a capacitated graph
    pa = ct.Graph.generate("pa", 40, m=2, seed=7)
    weighted = ct.Graph([(u, v, 1 + (u * v) % 3) for u, v, _ in pa.edges()])
    nxg = nx.Graph()
    nxg.add_weighted_edges_from(weighted.edges(), weight="capacity")
    for variant in ["A0", "A1", "A2", "A3", "A4", "A5"]:
        t = ct.build(weighted, variant=variant)
        for s, u in itertools.combinations(sorted(nxg.nodes)[:15], 2):
            want = nx.maximum_flow_value(nxg, s, u, capacity="capacity")
            assert t.query(s, u) == want, (variant, s, u)

    print("python smoke test passed")


if __name__ == "__main__":
    main()
