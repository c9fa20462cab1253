import numpy as np
import pytest

from hexdimer import (
    ConstantPhi,
    CosinePhi,
    LinearPhi,
    Sliced,
    TabulatedPhi,
    Uniform,
    phi_from_id,
)


def test_uniform_validation():
    Uniform(1.0)
    Uniform(0.3)
    for bad in (0.0, -0.1, 1.5, float("nan")):
        with pytest.raises(ValueError):
            Uniform(bad)


def test_catalog_parsing():
    assert isinstance(phi_from_id("cosine"), CosinePhi)
    lin = phi_from_id("linear:2,0.5")
    assert float(lin(0.0)) == 2.0 and float(lin(2.0)) == 3.0
    const = phi_from_id("const:1.5")
    assert float(const(123.0)) == 1.5
    with pytest.raises(ValueError):
        phi_from_id("mystery:1")


def test_derivatives_and_antiderivative_consistency():
    for phi in (ConstantPhi(1.3), LinearPhi(1.0, 0.5), CosinePhi()):
        h = 1e-6
        for t in (-0.7, 0.0, 1.9):
            fd1 = (float(phi(t + h)) - float(phi(t - h))) / (2 * h)
            assert abs(fd1 - float(phi.d1(t))) < 1e-8
            fd_int = (float(phi.antiderivative(t + h)) - float(phi.antiderivative(t - h))) / (2 * h)
            assert abs(fd_int - float(phi(t))) < 1e-8
        assert abs(phi.integral(0.0, 2.0) - (float(phi.antiderivative(2.0)) - float(phi.antiderivative(0.0)))) < 1e-15


def test_positivity_check():
    LinearPhi(1.0, 0.5).check_positive(-1.0, 3.0)
    with pytest.raises(ValueError):
        LinearPhi(0.1, -1.0).check_positive(-1.0, 3.0)


def test_tabulated_matches_sampled_function():
    grid = np.linspace(-1.5, 3.5, 400)
    phi = TabulatedPhi(grid, (2 + np.cos(grid)) / 3)
    ref = CosinePhi()
    for t in (-1.0, 0.3, 2.9):
        assert abs(float(phi(t)) - float(ref(t))) < 1e-8
        assert abs(float(phi.d1(t)) - float(ref.d1(t))) < 1e-5
        assert abs(phi.integral(0.0, t) - ref.integral(0.0, t)) < 1e-8


def test_tabulated_validation():
    with pytest.raises(ValueError):
        TabulatedPhi([0, 1], [1, 1])
    with pytest.raises(ValueError):
        TabulatedPhi([0, 1, 1, 2], [1, 1, 1, 1])


def test_sliced_wrapper_holds_phi():
    phi = CosinePhi()
    assert Sliced(phi).phi is phi
