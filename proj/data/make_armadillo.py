#!/usr/bin/env python3
"""Writes icosphere.obj (level 2, 162 vertices) and armadillo_like.json.

The SDF body is a union of 18 superquadrics arranged as a crouching
creature; the mesh body is the icosphere.
"""
import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def icosphere(level, radius):
    t = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
             (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
             (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
    verts = [tuple(c / math.sqrt(sum(x * x for x in v)) for c in v) for v in verts]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
             (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
             (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
             (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    for _ in range(level):
        cache = {}

        def mid(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                m = [(verts[a][k] + verts[b][k]) / 2 for k in range(3)]
                n = math.sqrt(sum(c * c for c in m))
                verts.append(tuple(c / n for c in m))
                cache[key] = len(verts) - 1
            return cache[key]

        nf = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            nf += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = nf
    return [tuple(radius * c for c in v) for v in verts], faces


def sq(e1, e2, scale, t, q=(1, 0, 0, 0)):
    return {"kind": "superquadric", "eps1": e1, "eps2": e2, "scale": scale,
            "pose": {"translation": t, "rotation": list(q)}}


def rot_y(deg):
    a = math.radians(deg) / 2
    return (math.cos(a), 0.0, math.sin(a), 0.0)


def rot_x(deg):
    a = math.radians(deg) / 2
    return (math.cos(a), math.sin(a), 0.0, 0.0)


def creature():
    parts = [
        sq(0.8, 1.0, [0.45, 0.32, 0.30], [0.0, 0.0, 0.0]),                   # torso
        sq(0.6, 1.0, [0.22, 0.25, 0.22], [0.35, 0.0, 0.22], rot_y(-20)),     # chest
        sq(0.7, 1.0, [0.16, 0.14, 0.14], [0.62, 0.0, 0.42]),                 # head
        sq(0.5, 0.8, [0.10, 0.07, 0.06], [0.78, 0.0, 0.38]),                 # snout
        sq(0.3, 1.0, [0.03, 0.05, 0.14], [0.58, 0.09, 0.60], rot_x(-15)),    # ear
        sq(0.3, 1.0, [0.03, 0.05, 0.14], [0.58, -0.09, 0.60], rot_x(15)),    # ear
        sq(1.0, 1.0, [0.07, 0.07, 0.20], [0.45, 0.22, 0.05], rot_y(25)),     # upper arm
        sq(1.0, 1.0, [0.07, 0.07, 0.20], [0.45, -0.22, 0.05], rot_y(25)),    # upper arm
        sq(1.0, 1.0, [0.06, 0.06, 0.18], [0.58, 0.24, -0.22], rot_y(-20)),   # forearm
        sq(1.0, 1.0, [0.06, 0.06, 0.18], [0.58, -0.24, -0.22], rot_y(-20)),  # forearm
        sq(0.9, 1.0, [0.14, 0.12, 0.24], [-0.25, 0.22, -0.18], rot_y(30)),   # thigh
        sq(0.9, 1.0, [0.14, 0.12, 0.24], [-0.25, -0.22, -0.18], rot_y(30)),  # thigh
        sq(1.0, 1.0, [0.07, 0.07, 0.18], [-0.10, 0.24, -0.42], rot_y(-25)),  # shin
        sq(1.0, 1.0, [0.07, 0.07, 0.18], [-0.10, -0.24, -0.42], rot_y(-25)), # shin
        sq(0.4, 0.9, [0.14, 0.07, 0.04], [0.0, 0.24, -0.58]),                # foot
        sq(0.4, 0.9, [0.14, 0.07, 0.04], [0.0, -0.24, -0.58]),               # foot
        sq(1.0, 1.0, [0.26, 0.06, 0.06], [-0.62, 0.0, -0.08], rot_y(25)),    # tail
        sq(0.2, 0.6, [0.30, 0.20, 0.06], [-0.05, 0.0, 0.30]),                # back plate
    ]
    assert len(parts) == 18
    return {"kind": "union", "children": parts}


def main():
    verts, faces = icosphere(2, 0.35)
    with open(os.path.join(HERE, "icosphere.obj"), "w") as f:
        f.write("# icosphere, subdivision level 2, radius 0.35\n")
        for v in verts:
            f.write("v %.9f %.9f %.9f\n" % v)
        for a, b, c in faces:
            f.write("f %d %d %d\n" % (a + 1, b + 1, c + 1))

    scene = {
        "smoothing": {"tau_cmp": 1e-3, "tau_min": 1e-2, "tau_clip": 1e-3},
        "contact": {"mode": "reduced", "iters": 3, "depth": "smooth_min"},
        "bodies": [
            {"name": "ball", "pose": {"translation": [0.0, 0.0, 0.0]},
             "mesh": {"path": "icosphere.obj"}},
            {"name": "creature", "pose": {"translation": [0.0, 0.0, 0.0]},
             "geometry": creature()},
        ],
        "benchmark": {
            "pair": ["ball", "creature"],
            "batch_sizes": [1, 16, 256, 4096],
            "trials": 5,
            "warmup": 2,
            "complexity": [1, 6, 12, 18],
            "translation_box": {"min": [-0.6, -0.4, -0.5], "max": [0.6, 0.4, 0.5]},
            "seed": 7,
        },
    }
    with open(os.path.join(HERE, "armadillo_like.json"), "w") as f:
        json.dump(scene, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
