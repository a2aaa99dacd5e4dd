import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.mesh import (
    BcSpec,
    DofMap,
    base_lshape_mesh,
    build_lshape_mesh,
    build_mesh_hierarchy,
    classify_dofs,
    dump_mesh_csv,
    refine_uniform,
)
from src.mesh.lshape_mesh import lexicographic_order

SEGMENTS = {"bottom", "left", "top", "right", "reentrant_vertical", "reentrant_horizontal"}


def test_base_mesh():
    mesh = base_lshape_mesh()
    assert mesh.n_vertices == 8
    assert mesh.n_triangles == 6
    assert mesh.level == 0
    assert mesh.is_valid()
    assert sorted(set(mesh.triangle_tags)) == ["nw", "se", "sw"]
    assert_allclose(mesh.signed_areas().sum(), 3.0)


@pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
def test_refined_mesh_counts(level):
    mesh = build_lshape_mesh(level)
    n = 2 ** level
    assert mesh.is_valid()
    assert mesh.n_triangles == 6 * 4 ** level
    assert mesh.n_vertices == (2 * n + 1) ** 2 - n ** 2
    assert len(mesh.boundary_edges) == 8 * n
    assert mesh.h == 1.0 / n
    assert_allclose(mesh.signed_areas(), 0.5 * mesh.h ** 2)


def test_vertices_in_lexicographic_order():
    mesh = build_lshape_mesh(3)
    assert_array_equal(lexicographic_order(mesh.vertices), np.arange(mesh.n_vertices))


def test_boundary_tags_cover_all_segments():
    mesh = build_lshape_mesh(2)
    assert set(mesh.boundary_tags) == SEGMENTS


def test_mesh_arrays_are_read_only():
    mesh = build_lshape_mesh(1)
    with pytest.raises(ValueError):
        mesh.vertices[0, 0] = 5.0


def test_negative_level_rejected():
    with pytest.raises(ValueError):
        build_lshape_mesh(-1)


def test_triangle_tags_follow_base_square():
    mesh = build_lshape_mesh(3)
    centers = mesh.barycenters()
    sw = mesh.triangle_tags == "sw"
    assert np.all(centers[sw, 0] < 0.0) and np.all(centers[sw, 1] < 0.0)
    ne_of_origin = (centers[:, 0] > 0.0) & (centers[:, 1] > 0.0)
    assert not ne_of_origin.any()


def test_prolongation_interpolates_linear_functions():
    coarse = build_lshape_mesh(2)
    fine, transfer = refine_uniform(coarse)
    P = transfer.prolongation()
    assert P.shape == (fine.n_vertices, coarse.n_vertices)
    assert_allclose(P @ np.ones(coarse.n_vertices), 1.0)
    for axis in (0, 1):
        assert_allclose(P @ coarse.vertices[:, axis], fine.vertices[:, axis])


def test_restricted_prolongation_between_free_dofs():
    coarse = build_lshape_mesh(1)
    fine, transfer = refine_uniform(coarse)
    bc = BcSpec()
    coarse_dofs = classify_dofs(coarse, bc)
    fine_dofs = classify_dofs(fine, bc)
    P = transfer.restricted(fine_dofs.free, coarse_dofs.free)
    assert P.shape == (fine_dofs.n_free, coarse_dofs.n_free)
    # every coarse interior vertex reappears as a fine vertex with weight 1
    assert_allclose(P.max(axis=0).toarray().ravel(), 1.0)


def test_mesh_hierarchy_is_nested():
    meshes, transfers = build_mesh_hierarchy(3, 1)
    assert [m.level for m in meshes] == [1, 2, 3]
    assert len(transfers) == 2
    for transfer, coarse, fine in zip(transfers, meshes[:-1], meshes[1:]):
        assert transfer.n_coarse == coarse.n_vertices
        assert transfer.n_fine == fine.n_vertices
    with pytest.raises(ValueError):
        build_mesh_hierarchy(1, 2)


@pytest.mark.parametrize("level", [1, 2, 3])
def test_dof_counts(level):
    mesh = build_lshape_mesh(level)
    n = 2 ** level
    interior = (2 * n - 1) ** 2 - n ** 2
    assert classify_dofs(mesh, BcSpec.from_name("all_dirichlet")).n_free == interior
    assert classify_dofs(mesh, BcSpec.from_name("mixed_corner")).n_free == interior + 2 * (n - 1)


def test_dirichlet_fixes_boundary_only(mesh2):
    dofs = classify_dofs(mesh2, BcSpec())
    assert_array_equal(dofs.fixed, mesh2.boundary_vertices())
    assert dofs.n_free + len(dofs.fixed) == mesh2.n_vertices


def test_mixed_corner_frees_reentrant_edges(mesh2):
    dofs = classify_dofs(mesh2, BcSpec.from_name("mixed_corner"))
    free = mesh2.vertices[dofs.free]
    assert any((free[:, 0] == 0.0) & (free[:, 1] == 0.5))
    assert any((free[:, 1] == 0.0) & (free[:, 0] == 0.25))
    corner = np.flatnonzero((mesh2.vertices[:, 0] == 0.0) & (mesh2.vertices[:, 1] == 0.0))
    assert corner[0] in dofs.fixed
    endpoint = np.flatnonzero((mesh2.vertices[:, 0] == 1.0) & (mesh2.vertices[:, 1] == 0.0))
    assert endpoint[0] in dofs.fixed


def test_dof_map_extend_and_lookup():
    dofs = DofMap(free=np.array([1, 3]), fixed=np.array([0, 2]), n_vertices=4)
    assert_array_equal(dofs.vertex_to_dof(), [-1, 0, -1, 1])
    assert_array_equal(dofs.extend(np.array([5.0, 7.0])), [0.0, 5.0, 0.0, 7.0])


def test_unknown_boundary_condition():
    with pytest.raises(ValueError):
        BcSpec.from_name("periodic")


def test_dump_mesh_csv(tmp_path):
    mesh = build_lshape_mesh(1)
    vertex_path, triangle_path = dump_mesh_csv(mesh, tmp_path / "mesh")
    vertices = pd.read_csv(vertex_path)
    triangles = pd.read_csv(triangle_path)
    assert list(vertices.columns) == ["id", "x", "y"]
    assert list(triangles.columns) == ["id", "v0", "v1", "v2", "tag"]
    assert len(vertices) == mesh.n_vertices
    assert len(triangles) == mesh.n_triangles
    assert set(triangles["tag"]) == {"sw", "se", "nw"}
