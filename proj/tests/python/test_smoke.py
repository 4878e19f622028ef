import math

import pytest

dpt = pytest.importorskip("dpptransfer", reason="extension not built")
np = pytest.importorskip("numpy")


def test_presets_and_kernel_surface():
    k = dpt.fourier_projection(3)
    assert k.rank == 3
    assert k.trace == pytest.approx(3.0, abs=1e-12)
    assert k.is_projection(1e-12)
    assert not k.is_discrete
    # closed form: 1 + 2 cos(2 pi (x - y))
    want = 1.0 + 2.0 * math.cos(2.0 * math.pi * (0.2 - 0.7))
    assert k(0.2, 0.7) == pytest.approx(want, abs=1e-9)

    d = dpt.diag_kernel([0.25, 0.75])
    assert np.allclose(d, np.diag([0.25, 0.75]))
    sine = dpt.discretized_sine(6)
    assert np.allclose(sine, sine.T)
    assert dpt.matrix_kernel(sine).is_discrete


def test_transfer_and_verification():
    k = dpt.fourier_projection(3)
    t = dpt.transfer(k, 4)
    assert len(t.blocks) == 4
    assert t.dim == sum(size for _, size in t.blocks)
    assert t.leakage < 1e-8
    q = t.q
    assert q.shape == (t.dim, t.dim)
    assert np.allclose(q, q.T, atol=1e-12)

    report = dpt.verify_transference(k, 4)
    assert report["pass"]
    assert report["tv"] < 1e-8

    # cell counts of the transferred kernel agree with the continuous law
    assert dpt.tv_distance(dpt.block_law(t), dpt.joint_law(k, 4)) < 1e-8


def test_joint_law_shape_and_mass():
    law = dpt.joint_law(dpt.fourier_projection(3), 3)
    pmf = law.pmf
    assert pmf.shape == tuple(c + 1 for c in law.caps)
    assert pmf.sum() == pytest.approx(1.0, abs=1e-9)
    assert law.total() == pytest.approx(1.0, abs=1e-9)
    # a projection of rank 3 puts all its mass on total count 3
    totals = law.total_count()
    assert totals.prob([3]) == pytest.approx(1.0, abs=1e-9)
    marg = law.marginal(0)
    assert marg.total() == pytest.approx(1.0, abs=1e-9)


def test_sampling_is_seeded_and_matches_the_law():
    q = dpt.discretized_sine(8)
    a = dpt.sample(q, seed=11, n_samples=64)
    b = dpt.sample(q, seed=11, n_samples=64)
    assert a == b
    c = dpt.sample(q, seed=12, n_samples=64)
    assert a != c

    counts = dpt.sample_counts(dpt.diag_kernel([0.5, 0.5]),
                               [[0], [1]], seed=5, n_samples=20000)
    law = dpt.joint_law_matrix(np.diag([0.5, 0.5]), [[0], [1]])
    result = dpt.chi_square(law, counts)
    assert result["p_value"] > 1e-3


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        dpt.diag_kernel([1.5])
    with pytest.raises(RuntimeError):
        dpt.transfer(dpt.fourier_projection(3), 2, tol=1e-31, max_degree=8)


def test_tv_distance_conventions():
    a = dpt.joint_law_matrix(np.diag([1.0]), [[0]])
    b = dpt.joint_law_matrix(np.diag([0.5]), [[0]])
    assert dpt.tv_distance(a, a) == pytest.approx(0.0, abs=1e-15)
    assert dpt.tv_distance(a, b) == pytest.approx(0.5, abs=1e-12)
