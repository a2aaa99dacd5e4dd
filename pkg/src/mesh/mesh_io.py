"""
Mesh Export
Writes a mesh as two CSV tables for inspection or plotting elsewhere.
"""

from pathlib import Path
from typing import Tuple

import numpy as np
import pandas as pd

from .lshape_mesh import Mesh


def mesh_frames(mesh: Mesh) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Vertex and triangle tables of a mesh."""
    vertices = pd.DataFrame({
        "id": np.arange(mesh.n_vertices),
        "x": mesh.vertices[:, 0],
        "y": mesh.vertices[:, 1],
    })
    triangles = pd.DataFrame({
        "id": np.arange(mesh.n_triangles),
        "v0": mesh.triangles[:, 0],
        "v1": mesh.triangles[:, 1],
        "v2": mesh.triangles[:, 2],
        "tag": mesh.triangle_tags,
    })
    return vertices, triangles


def dump_mesh_csv(mesh: Mesh, directory: Path) -> Tuple[Path, Path]:
    """
    Write vertices.csv (id, x, y) and triangles.csv (id, v0, v1, v2, tag).

    Returns:
        Paths of the two files
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    vertices, triangles = mesh_frames(mesh)
    vertex_path = directory / "vertices.csv"
    triangle_path = directory / "triangles.csv"
    vertices.to_csv(vertex_path, index=False)
    triangles.to_csv(triangle_path, index=False)
    return vertex_path, triangle_path
