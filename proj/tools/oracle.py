#!/usr/bin/env python3
"""Independent cross-checks for the C++ pipeline.

Reads .1pl drawings with a separate parser, recomputes counts by face
traversal and checks `pgf partition` output with networkx.

  oracle.py counts FILE...            faces, edges, crossings, gadget sizes
  oracle.py splitmix SEED [K]         first K SplitMix64 outputs
  oracle.py chordsets FILE            brute-force valid chord choices (kite skeleton)
  oracle.py sweep PGF N... [--seeds S] generate, partition and check with networkx
"""
import itertools
import subprocess
import sys

import networkx as nx

MASK = (1 << 64) - 1


def splitmix(seed, k):
    s = seed
    out = []
    for _ in range(k):
        s = (s + 0x9E3779B97F4A7C15) & MASK
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        out.append(z ^ (z >> 31))
    return out


class Drawing:
    def __init__(self, text):
        self.n = None
        self.crossing = set()
        self.rot = {}
        for raw in text.splitlines():
            line = raw.split("#")[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "n":
                self.n = int(rest)
            elif head == "crossings":
                self.crossing.update(int(t) for t in rest.split())
            elif head == "rot":
                v, _, toks = rest.partition(":")
                self.rot[int(v)] = [self._tok(t) for t in toks.split()]
        # dart = (v, index in rot[v]); twin found by matching (u, tag) occurrences
        where = {}
        for v, lst in self.rot.items():
            for i, (u, t) in enumerate(lst):
                where[(v, u, t)] = i
        self.twin = {}
        for v, lst in self.rot.items():
            for i, (u, t) in enumerate(lst):
                self.twin[(v, i)] = (u, where[(u, v, t)])

    @staticmethod
    def _tok(t):
        if "." in t:
            a, b = t.split(".")
            return int(a), int(b)
        return int(t), 0

    def head(self, d):
        return self.rot[d[0]][d[1]][0]

    def face_next(self, d):
        u, j = self.twin[d]
        return (u, (j + 1) % len(self.rot[u]))

    def faces(self):
        seen = set()
        out = []
        for v, lst in self.rot.items():
            for i in range(len(lst)):
                if (v, i) in seen:
                    continue
                f = []
                d = (v, i)
                while d not in seen:
                    seen.add(d)
                    f.append(d)
                    d = self.face_next(d)
                out.append(f)
        return out

    def edge_count(self):
        return sum(len(l) for l in self.rot.values()) // 2

    def original_edges(self):
        edges = []
        for v, lst in self.rot.items():
            if v in self.crossing:
                continue
            for u, t in lst:
                if u not in self.crossing and v < u:
                    edges.append((v, u))
        pairs = []
        for c in sorted(self.crossing):
            z = [u for u, _ in self.rot[c]]
            a, b = tuple(sorted((z[0], z[2]))), tuple(sorted((z[1], z[3])))
            edges += [a, b]
            pairs.append((c, z, a, b))
        return edges, pairs


def counts(path):
    d = Drawing(open(path).read())
    f = d.faces()
    edges, pairs = d.original_edges()
    real = d.n - len(d.crossing)
    print(f"{path}: nodes={d.n} pedges={d.edge_count()} faces={len(f)} "
          f"degrees={sorted(len(x) for x in f)} real={real} original={len(edges)} crossings={len(pairs)} "
          f"gadget_vertices_over_H={5 * len(pairs)} gadget_edges_over_H={(4 + 12) * len(pairs)}")


def kite_skeleton(d):
    edges, pairs = d.original_edges()
    crossed = set()
    for _, _, a, b in pairs:
        crossed |= {a, b}
    sk = {e for e in edges if e not in crossed}
    for _, z, _, _ in pairs:
        for i in range(4):
            sk.add(tuple(sorted((z[i], z[(i + 1) % 4]))))
    return sk, pairs


def chordsets(path):
    d = Drawing(open(path).read())
    sk, pairs = kite_skeleton(d)
    found = []
    for choice in itertools.product((2, 3), repeat=len(pairs)):
        chords = [p[k] for p, k in zip(pairs, choice)]
        f = nx.MultiGraph()
        f.add_edges_from(chords)
        if any(u == v for u, v in chords) or not nx.is_forest(f):
            continue
        comp = {}
        for i, cc in enumerate(nx.connected_components(f)):
            for v in cc:
                comp[v] = i
        if any(a in comp and b in comp and comp[a] == comp[b] for a, b in sk):
            continue
        found.append(sorted(chords))
    print(f"{path}: quads={len(pairs)} valid_sets={len(found)} {found}")


def check_partition(d, out):
    forest, planar = [], []
    for line in out.splitlines():
        parts = line.split()
        if parts and parts[0] in ("forest", "planar"):
            (forest if parts[0] == "forest" else planar).append((int(parts[1]), int(parts[2])))
    edges, pairs = d.original_edges()
    if sorted(forest + planar) != sorted(edges):
        return "edge multiset mismatch"
    fs = set(forest)
    for _, _, a, b in pairs:
        if (a in fs) + (b in fs) != 1:
            return f"crossing {a}x{b} not split"
    f = nx.Graph()
    f.add_edges_from(forest)
    if forest and (len(forest) != f.number_of_edges() or not nx.is_forest(f)):
        return "forest has a cycle"
    comp = {v: i for i, cc in enumerate(nx.connected_components(f)) for v in cc}
    sk, _ = kite_skeleton(d)
    for a, b in sk:
        if a in comp and b in comp and comp[a] == comp[b]:
            return f"forest joins skeleton edge {a}-{b}"
    g = nx.Graph()
    g.add_edges_from(planar)
    if not nx.check_planarity(g)[0]:
        return "planar part is not planar"
    real = d.n - len(d.crossing)
    if real >= 3 and len(edges) > 4 * real - 8:
        return "edge bound"
    if len(forest) != len(pairs):
        return "forest size != crossings"
    return None


def sweep(pgf, sizes, seeds):
    bad = 0
    total = 0
    for n in sizes:
        for cross in ("0", "0.1", "0.3", "1"):
            for seed in range(1, seeds + 1):
                text = subprocess.run([pgf, "gen", "--n", str(n), "--cross", cross, "--seed", str(seed)],
                                      capture_output=True, text=True, check=True).stdout
                with open("/tmp/oracle_in.1pl", "w") as fh:
                    fh.write(text)
                out = subprocess.run([pgf, "partition", "/tmp/oracle_in.1pl"], capture_output=True, text=True,
                                     check=True).stdout
                why = check_partition(Drawing(text), out)
                total += 1
                if why:
                    bad += 1
                    print(f"n={n} cross={cross} seed={seed}: {why}")
    print(f"checked={total} bad={bad}")


def main(argv):
    cmd = argv[1]
    if cmd == "counts":
        for p in argv[2:]:
            counts(p)
    elif cmd == "splitmix":
        seed = int(argv[2], 0)
        k = int(argv[3]) if len(argv) > 3 else 3
        for x in splitmix(seed, k):
            print(f"{x} 0x{x:016x}")
    elif cmd == "chordsets":
        for p in argv[2:]:
            chordsets(p)
    elif cmd == "sweep":
        seeds = 5
        args = argv[3:]
        if "--seeds" in args:
            i = args.index("--seeds")
            seeds = int(args[i + 1])
            args = args[:i] + args[i + 2:]
        sweep(argv[2], [int(a) for a in args], seeds)
    else:
        print(__doc__)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
