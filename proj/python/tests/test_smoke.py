import numpy as np
import pytest

import diswl


def test_point_cloud_roundtrip():
    xyz = np.array([[0.0, 0.0, 0.0], [3.0, 4.0, 0.0]])
    pc = diswl.PointCloud(xyz, [1, 2])
    assert len(pc) == 2
    assert pc.labels == [1, 2]
    np.testing.assert_array_equal(pc.coords, xyz)
    assert diswl.distance_matrix(pc)[0, 1] == pytest.approx(5.0)
    assert diswl.parse_xyz(diswl.write_xyz(pc)) == pc


def test_bad_input_raises():
    with pytest.raises(ValueError):
        diswl.PointCloud(np.zeros((2, 3)), [0])
    with pytest.raises(ValueError):
        diswl.parse_xyz("2\nc\n0 1 2 3\n")


def test_figure2_pair():
    p = diswl.generate("fig2")
    assert not diswl.congruent(p.left, p.right)["congruent"]
    assert not diswl.distinguish(p.left, p.right)["distinguished"]
    v = diswl.distinguish(p.left, p.right, method="kfwl", k=2, rounds=3)
    assert v["distinguished"]
    assert diswl.refine(p.left)["kinds"] == [6]
    assert diswl.verify(p)["pass"]


@pytest.mark.parametrize("family", ["dodec8", "cubeocta", "twocubes", "aug"])
def test_families_verify(family):
    p = diswl.generate(family, base="dodec10a")
    assert diswl.verify(p)["pass"]


def test_forward_invariance_and_equivariance():
    rng = np.random.default_rng(0)
    pc = diswl.PointCloud(rng.uniform(-2, 2, size=(6, 3)))
    out = diswl.forward(pc, variant="e", k=2, rounds=2, hidden_dim=12, rbf_dim=8, label_dim=4)
    moved = diswl.random_image(pc, 5)
    again = diswl.forward(moved, variant="e", k=2, rounds=2, hidden_dim=12, rbf_dim=8, label_dim=4)
    assert again["scalar"] == pytest.approx(out["scalar"], rel=1e-9, abs=1e-12)
    assert out["node_reps"].shape == (12, 6)
    shifted = diswl.PointCloud(pc.coords + np.array([1.0, -2.0, 0.5]))
    np.testing.assert_allclose(
        diswl.forward(shifted, variant="e", k=2, rounds=2, hidden_dim=12, rbf_dim=8, label_dim=4)["equivariant"],
        out["equivariant"],
        atol=1e-9,
    )
