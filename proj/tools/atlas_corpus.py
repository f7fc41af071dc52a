"""Connected planar graphs on 1..7 vertices (graph atlas), with a plane rotation system.

Writes records in the instance format, graphs separated by '%%' lines.
"""
import sys

import networkx as nx


def emit(g, out):
    ok, emb = nx.check_planarity(g)
    assert ok
    eid = {}
    lines = [f"v {v}" for v in sorted(g.nodes)]
    for i, (u, v) in enumerate(sorted(tuple(sorted(e)) for e in g.edges)):
        eid[(u, v)] = eid[(v, u)] = i
        lines.append(f"e {i} {u} {v}")
    for v in sorted(g.nodes):
        nb = list(emb.neighbors_cw_order(v))
        if nb:
            nb.reverse()  # counterclockwise
            lines.append("rot {} {}".format(v, " ".join(str(eid[(v, w)]) for w in nb)))
    out.write("\n".join(lines) + "\n%%\n")


def main():
    out = open(sys.argv[1], "w") if len(sys.argv) > 1 else sys.stdout
    count = 0
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() < 1 or not nx.is_connected(g):
            continue
        if not nx.check_planarity(g)[0]:
            continue
        emit(g, out)
        count += 1
    print(count, file=sys.stderr)


if __name__ == "__main__":
    main()
