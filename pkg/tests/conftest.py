import pytest

from gmrk import (
    GellMannConfig,
    HalfInt,
    SpaceSpec,
    TensorComponentMap,
    enumerate_basis,
)


@pytest.fixture(scope="session")
def tmap3():
    return TensorComponentMap(3)


@pytest.fixture(scope="session")
def tmap4():
    return TensorComponentMap(4)


@pytest.fixture(scope="session")
def basis_coset1_8():
    return enumerate_basis(SpaceSpec(3, HalfInt.of(8), "coset", 1))


@pytest.fixture(scope="session")
def basis_coset2_8():
    return enumerate_basis(SpaceSpec(3, HalfInt.of(8), "coset", 2))


@pytest.fixture(scope="session")
def basis_full6():
    return enumerate_basis(SpaceSpec(3, HalfInt.of(6), "full"))


@pytest.fixture()
def cfg31(tmap3):
    return GellMannConfig(3, 1, sigma=0.0, tmap=tmap3)


@pytest.fixture()
def cfg32(tmap3):
    return GellMannConfig(3, 2, sigma=0.0, tmap=tmap3)
