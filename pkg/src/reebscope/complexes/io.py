"""Mesh and field file formats.

OFF carries vertices and triangles.  The JSON complex document carries
{"vertices": [[x,y,z], ...], "edges": [[i,j], ...], "triangles": [[i,j,k],
...]}; metric-only complexes omit "vertices" and write edges as [i, j,
length] triples with an explicit "n_vertices".  Fields are one decimal per
line, or a JSON array.  Floats are written with repr, which round-trips
exactly (17 significant digits suffice for binary64).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .simplicial import ScalarField, SimplicialComplex


def load_complex(path) -> SimplicialComplex:
    path = Path(path)
    if path.suffix.lower() == ".off":
        return _read_off(path)
    if path.suffix.lower() == ".json":
        return _read_json(path)
    raise ValueError(f"unknown mesh format {path.suffix!r} (use .off or .json)")


def save_complex(cx: SimplicialComplex, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".off":
        if cx.coords is None:
            raise ValueError("OFF needs coordinates; use the JSON format")
        lines = ["OFF", f"{cx.n_vertices} {cx.n_triangles} 0"]
        for p in cx.coords:
            lines.append(" ".join(repr(float(x)) for x in p))
        for t in cx.triangles.tolist():
            lines.append("3 " + " ".join(str(v) for v in t))
        path.write_text("\n".join(lines) + "\n")
        return
    if path.suffix.lower() != ".json":
        raise ValueError(f"unknown mesh format {path.suffix!r}")
    doc = {"triangles": cx.triangles.tolist()}
    if cx.coords is not None:
        doc["vertices"] = [[float(x) for x in p] for p in cx.coords]
        doc["edges"] = cx.edges.tolist()
    else:
        doc["n_vertices"] = cx.n_vertices
        doc["edges"] = [[int(i), int(j), float(l)] for (i, j), l in
                        zip(cx.edges.tolist(), cx.lengths)]
    path.write_text(json.dumps(doc, sort_keys=True))


def _read_off(path: Path) -> SimplicialComplex:
    tokens = []
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens or tokens[0].upper() != "OFF":
        raise ValueError(f"{path}: not an OFF file")
    pos = 1
    nv, nf = int(tokens[pos]), int(tokens[pos + 1])
    pos += 3
    coords = np.array(tokens[pos:pos + 3 * nv], dtype=float).reshape(nv, 3)
    pos += 3 * nv
    tris = []
    for _ in range(nf):
        cnt = int(tokens[pos])
        if cnt != 3:
            raise ValueError(f"{path}: only triangle faces supported")
        tris.append([int(t) for t in tokens[pos + 1:pos + 4]])
        pos += 1 + cnt
    return SimplicialComplex(triangles=tris, coords=coords, name=path.stem)


def _read_json(path: Path) -> SimplicialComplex:
    doc = json.loads(path.read_text())
    tris = doc.get("triangles") or None
    edges_raw = doc.get("edges") or []
    if "vertices" in doc:
        return SimplicialComplex(
            edges=[e[:2] for e in edges_raw] or None, triangles=tris,
            coords=np.asarray(doc["vertices"], dtype=float), name=path.stem)
    if "n_vertices" not in doc:
        raise ValueError(f"{path}: JSON mesh needs 'vertices' or "
                         f"'n_vertices'")
    if any(len(e) != 3 for e in edges_raw):
        raise ValueError(f"{path}: metric-only edges need [i, j, length]")
    return SimplicialComplex(
        edges=[e[:2] for e in edges_raw],
        lengths=[e[2] for e in edges_raw], triangles=tris,
        n_vertices=int(doc["n_vertices"]), name=path.stem)


def load_field(path, n_vertices=None) -> ScalarField:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        field = ScalarField(np.asarray(json.loads(text), dtype=float))
    else:
        vals = [float(line) for line in text.splitlines() if line.strip()]
        field = ScalarField(np.asarray(vals))
    if n_vertices is not None and len(field) != n_vertices:
        raise ValueError(f"{path}: field has {len(field)} values "
                         f"for a mesh with {n_vertices} vertices")
    return field


def save_field(field: ScalarField, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps([float(v) for v in field.values]))
    else:
        path.write_text("\n".join(repr(float(v)) for v in field.values) + "\n")
