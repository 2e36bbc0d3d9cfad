import math

import numpy as np
import pytest

from clamped_elastica import BoundaryProblem, ClosedFormParams, kernels

# Orbitlike elastica with kappa0 = 1, p = 2, t0 = 1/2 on [0, 10] and its end data.
EX1 = ClosedFormParams("orbitlike", 1.0, 2.0, 0.5)
EX2_XB = (3.75605, 2.35942)
EX2_VB = (0.911711, -0.410832)
EX5_XB = (4.38081, 6.00329)
EX5_VB = (-0.0106571, 0.999943)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def straight(length=4.0):
    return BoundaryProblem(0.0, length, (0.0, 0.0), (length, 0.0), (1.0, 0.0), (1.0, 0.0))


def half_circle():
    return BoundaryProblem(0.0, math.pi, (0.0, 0.0), (0.0, 2.0), (1.0, 0.0), (-1.0, 0.0))


@pytest.fixture(scope="session", autouse=True)
def _compiled():
    kernels.warmup()


@pytest.fixture
def ex2():
    return BoundaryProblem(0.0, 10.0, (0.0, 0.0), EX2_XB, (1.0, 0.0), unit(EX2_VB))


@pytest.fixture
def ex5():
    return BoundaryProblem(0.0, 15.0, (0.0, 0.0), EX5_XB, (1.0, 0.0), unit(EX5_VB))
