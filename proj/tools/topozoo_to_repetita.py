#!/usr/bin/env python3
"""Convert a topohub (Topology Zoo) JSON topology to the Repetita GRAPH format.

Every undirected edge becomes two directed edges with IGP weight 1 and the
given bandwidth. Delay is the great-circle length in km over 200 km/ms.
"""

import argparse
import json
import re
import sys
import zipfile


def load(source, name):
    if source.endswith(".whl") or source.endswith(".zip"):
        with zipfile.ZipFile(source) as wheel:
            return json.loads(wheel.read(f"topohub/data/topozoo/{name}.json"))
    with open(source, encoding="utf-8") as fh:
        return json.load(fh)


def node_labels(nodes):
    labels, seen = [], set()
    for node in nodes:
        label = re.sub(r"\s+", "_", str(node.get("name") or f"n{node['id']}"))
        if label in seen:
            label = f"{label}_{node['id']}"
        seen.add(label)
        labels.append(label)
    return labels


def convert(topo, bandwidth):
    nodes = topo["nodes"]
    index = {str(node["id"]): i for i, node in enumerate(nodes)}
    labels = node_labels(nodes)
    lines = [f"NODES {len(nodes)}", "label x y"]
    for label, node in zip(labels, nodes):
        x, y = node.get("pos", [0, 0])
        lines.append(f"{label} {x} {y}")
    edges = []
    for e in topo["edges"]:
        u, v = index[str(e["source"])], index[str(e["target"])]
        if u == v:
            continue
        delay = round(float(e.get("dist", 0)) / 200.0, 4)
        edges.append((u, v, delay))
        edges.append((v, u, delay))
    lines.append(f"EDGES {len(edges)}")
    lines.append("label src dest weight bw delay")
    for i, (u, v, delay) in enumerate(edges):
        lines.append(f"edge_{i} {u} {v} 1 {bandwidth:g} {delay}")
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("source", help="topohub wheel or a topology JSON file")
    parser.add_argument("--name", help="topology name inside the wheel")
    parser.add_argument("--bandwidth", type=float, default=400)
    parser.add_argument("--out", help="output file (default: stdout)")
    args = parser.parse_args()
    text = convert(load(args.source, args.name), args.bandwidth)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
