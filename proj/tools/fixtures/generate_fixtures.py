#!/usr/bin/env python3
# Copyright 2026 The VQE Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the bundled test meshes in data/.

Usage: python3 tools/fixtures/generate_fixtures.py [output_dir]
"""
import math
import pathlib
import sys

import numpy as np


class Builder:
    def __init__(self):
        self.vertices = []
        self.faces = []

    def add(self, vertices, faces):
        offset = len(self.vertices)
        self.vertices.extend(tuple(float(c) for c in v) for v in vertices)
        self.faces.extend(tuple(i + offset for i in f) for f in faces)

    def write(self, path):
        with open(path, "w") as out:
            out.write("OFF\n")
            out.write(f"{len(self.vertices)} {len(self.faces)} 0\n")
            for v in self.vertices:
                out.write(" ".join(repr(c) for c in v) + "\n")
            for f in self.faces:
                out.write(f"{len(f)} " + " ".join(str(i) for i in f) + "\n")


def box(lo, hi, quads=True):
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    v = [[hi[0] if i & 1 else lo[0], hi[1] if i & 2 else lo[1], hi[2] if i & 4 else lo[2]]
         for i in range(8)]
    q = [(0, 2, 3, 1), (4, 5, 7, 6), (0, 1, 5, 4), (2, 6, 7, 3), (0, 4, 6, 2), (1, 3, 7, 5)]
    if quads:
        return v, q
    return v, [t for a, b, c, d in q for t in ((a, b, c), (a, c, d))]


def uv_ellipsoid(center, radii, n_lon, n_lat):
    """Closed triangulated ellipsoid with poles on the x axis."""
    cx, cy, cz = center
    rx, ry, rz = radii
    v = [(cx - rx, cy, cz)]
    for i in range(1, n_lat):
        t = math.pi * i / n_lat
        for j in range(n_lon):
            p = 2 * math.pi * j / n_lon
            v.append((cx - rx * math.cos(t), cy + ry * math.sin(t) * math.cos(p),
                      cz + rz * math.sin(t) * math.sin(p)))
    v.append((cx + rx, cy, cz))
    last = len(v) - 1
    ring = lambda i, j: 1 + (i - 1) * n_lon + (j % n_lon)
    f = []
    for j in range(n_lon):
        f.append((0, ring(1, j + 1), ring(1, j)))
        f.append((last, ring(n_lat - 1, j), ring(n_lat - 1, j + 1)))
    for i in range(1, n_lat - 1):
        for j in range(n_lon):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j + 1), ring(i + 1, j)
            f.append((a, b, c))
            f.append((a, c, d))
    return v, f


def subdivided_box(lo, hi, n):
    """Box whose sides are split into n x n grids of triangles."""
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    v, f = [], []
    for axis in range(3):
        u, w = (axis + 1) % 3, (axis + 2) % 3
        for side, sign in ((lo[axis], -1), (hi[axis], 1)):
            base = len(v)
            for i in range(n + 1):
                for j in range(n + 1):
                    p = np.empty(3)
                    p[axis] = side
                    p[u] = lo[u] + (hi[u] - lo[u]) * i / n
                    p[w] = lo[w] + (hi[w] - lo[w]) * j / n
                    v.append(p)
            for i in range(n):
                for j in range(n):
                    a = base + i * (n + 1) + j
                    b, c, d = a + n + 1, a + n + 2, a + 1
                    f.extend([(a, b, c), (a, c, d)] if sign > 0 else [(a, c, b), (a, d, c)])
    return v, f


def torus(n_major, n_minor, big=1.0, small=0.3):
    v = []
    for i in range(n_major):
        u = 2 * math.pi * i / n_major
        for j in range(n_minor):
            w = 2 * math.pi * j / n_minor
            r = big + small * math.cos(w)
            v.append((r * math.cos(u), r * math.sin(u), small * math.sin(w)))
    idx = lambda i, j: (i % n_major) * n_minor + (j % n_minor)
    f = []
    for i in range(n_major):
        for j in range(n_minor):
            f.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            f.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))
    return v, f


def icosphere(levels):
    t = (1 + 5 ** 0.5) / 2
    v = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0), (0, -1, t), (0, 1, t),
         (0, -1, -t), (0, 1, -t), (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
    v = [np.array(p) / np.linalg.norm(p) for p in v]
    f = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11), (1, 5, 9), (5, 11, 4),
         (11, 10, 2), (10, 7, 6), (7, 1, 8), (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8),
         (3, 8, 9), (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    for _ in range(levels):
        cache = {}

        def mid(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                p = v[a] + v[b]
                v.append(p / np.linalg.norm(p))
                cache[key] = len(v) - 1
            return cache[key]

        nf = []
        for a, b, c in f:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            nf += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        f = nf
    return v, f


def airplane():
    """Fuselage along x, wings along y, fin up along z. The left wing is a
    little longer than the right so that no view has a mirror twin."""
    b = Builder()
    b.add(*uv_ellipsoid((0.0, 0.0, 0.0), (2.0, 0.22, 0.25), 32, 24))
    b.add(*subdivided_box((-0.35, 0.15, -0.04), (0.35, 1.9, 0.04), 8))
    b.add(*subdivided_box((-0.35, -1.75, -0.04), (0.35, -0.15, 0.04), 8))
    b.add(*subdivided_box((-1.95, 0.1, 0.0), (-1.6, 0.7, 0.04), 4))
    b.add(*subdivided_box((-1.95, -0.7, 0.0), (-1.6, -0.1, 0.04), 4))
    b.add(*subdivided_box((-2.0, -0.03, 0.15), (-1.55, 0.03, 0.85), 4))
    b.add(*uv_ellipsoid((0.05, 0.9, -0.16), (0.35, 0.09, 0.09), 12, 8))
    b.add(*uv_ellipsoid((0.05, -0.9, -0.16), (0.35, 0.09, 0.09), 12, 8))
    return b


def chair():
    b = Builder()
    b.add(*box((0.0, 0.0, 0.45), (0.5, 0.5, 0.52)))
    b.add(*box((0.0, 0.44, 0.52), (0.5, 0.5, 1.05)))
    for x, y in ((0.0, 0.0), (0.44, 0.0), (0.0, 0.44), (0.44, 0.44)):
        b.add(*box((x, y, 0.0), (x + 0.06, y + 0.06, 0.45)))
    return b


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)

    cube = Builder()
    cube.add(*box((0, 0, 0), (1, 1, 1)))
    cube.write(out / "cube.off")

    nested = Builder()
    nested.add(*box((0, 0, 0), (1, 1, 1), quads=False))
    nested.add(*box((0.25, 0.25, 0.25), (0.75, 0.75, 0.75), quads=False))
    nested.write(out / "nested_cubes.off")

    ico = Builder()
    ico.add(*icosphere(3))
    ico.write(out / "icosphere.off")

    airplane().write(out / "airplane.off")
    chair().write(out / "chair.off")

    for name, (n, m) in {"torus_1k.off": (25, 20), "torus_10k.off": (100, 50)}.items():
        t = Builder()
        t.add(*torus(n, m))
        t.write(out / name)


if __name__ == "__main__":
    main()
