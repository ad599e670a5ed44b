#!/usr/bin/env python3
"""Convert a Planetoid ind.<name>.* dataset (pickled x/tx/allx/y/ty/ally/graph
plus test.index) into an lscgnn bundle directory.

Test indices missing from the graph file (CiteSeer has 15) become featureless,
unlabeled nodes so node ids stay aligned with the original index space.
"""

import argparse
import json
import pickle
import sys
import warnings
from pathlib import Path

import numpy as np
import scipy.sparse as sp


def load_pickle(path):
    warnings.filterwarnings("ignore", category=DeprecationWarning)
    with open(path, "rb") as f:
        return pickle.load(f, encoding="latin1")


def load_ind(root, name):
    parts = {}
    for key in ("x", "y", "tx", "ty", "allx", "ally", "graph"):
        parts[key] = load_pickle(root / f"ind.{name}.{key}")
    test_index = [int(line) for line in (root / f"ind.{name}.test.index").read_text().split()]
    return parts, test_index


def build(parts, test_index):
    allx = sp.csr_matrix(parts["allx"])
    tx = sp.csr_matrix(parts["tx"])
    ally = np.asarray(parts["ally"])
    ty = np.asarray(parts["ty"])

    lo, hi = min(test_index), max(test_index)
    span = hi - lo + 1
    tx_full = sp.lil_matrix((span, tx.shape[1]))
    ty_full = np.zeros((span, ty.shape[1]))
    ordered = sorted(test_index)
    tx_full[np.array(ordered) - lo, :] = tx
    ty_full[np.array(ordered) - lo, :] = ty

    features = sp.vstack([allx, tx_full.tocsr()]).tocsr()
    onehot = np.vstack([ally, ty_full])
    # Undo the shuffled order of the test block.
    perm = np.arange(features.shape[0])
    perm[ordered] = perm[test_index]
    features = features[perm]
    onehot = onehot[perm]

    n = features.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    has_label = onehot.sum(axis=1) > 0
    labels[has_label] = onehot[has_label].argmax(axis=1)

    edges = set()
    for u, nbrs in parts["graph"].items():
        for v in nbrs:
            if u != v and u < n and v < n:
                edges.add((min(u, v), max(u, v)))
    return features, labels, sorted(edges), onehot.shape[1]


def write_bundle(out, features, labels, edges, num_classes):
    out.mkdir(parents=True, exist_ok=True)
    n, f = features.shape
    (out / "meta.json").write_text(json.dumps({"num_nodes": int(n), "num_features": int(f),
                                               "num_classes": int(num_classes)}) + "\n")
    with open(out / "edges.tsv", "w", newline="\n") as fh:
        fh.writelines(f"{u}\t{v}\n" for u, v in edges)
    coo = features.tocoo()
    order = np.lexsort((coo.col, coo.row))
    with open(out / "features.tsv", "w", newline="\n") as fh:
        for k in order:
            value = float(coo.data[k])
            if value != 0.0:
                fh.write(f"{coo.row[k]}\t{coo.col[k]}\t{value:.17g}\n")
    with open(out / "labels.tsv", "w", newline="\n") as fh:
        fh.writelines(f"{i}\t{c}\n" for i, c in enumerate(labels) if c >= 0)


def main(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="src", required=True, type=Path, help="directory with ind.<name>.* files")
    parser.add_argument("--name", required=True, help="dataset name, e.g. citeseer")
    parser.add_argument("--out", required=True, type=Path, help="bundle directory to write")
    args = parser.parse_args(argv)

    parts, test_index = load_ind(args.src, args.name)
    features, labels, edges, num_classes = build(parts, test_index)
    write_bundle(args.out, features, labels, edges, num_classes)
    print(f"{args.name}: {features.shape[0]} nodes, {len(edges)} edges, {features.shape[1]} features, "
          f"{num_classes} classes, {int((labels >= 0).sum())} labeled")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
