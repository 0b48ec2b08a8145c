import itertools

import numpy as np
import pytest
from hypothesis import settings

from skewring.action import cyclic_group, symmetric_group_3, trivial_action
from skewring.algcore import Algebra, Module
from skewring.builtins import quiver_algebra
from skewring.construct import SkewGroupAlgebra
from skewring.exactlin import ExactMatrix, FieldSpec

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# pass/fail lines from the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


F2, F3, F7, Q = FieldSpec(2), FieldSpec(3), FieldSpec(7), FieldSpec(None)


def field_algebra(f):
    return Algebra(f, ["1"], [[[1]]], [1])


def group_algebra(f, group):
    sk = SkewGroupAlgebra(trivial_action(group, field_algebra(f)))
    return sk.algebra


def trivial_module(A, value=1):
    """One-dimensional module with every basis element ``1*g`` acting by ``value**[g != e]``."""
    f = A.field
    mats = [ExactMatrix(f, [[1 if g == 0 else value]]) for g in range(A.dim)]
    return Module(A, mats)


def all_matrices(f, rows, cols):
    """Every ``rows x cols`` matrix over a small prime field."""
    for vals in itertools.product(range(f.p), repeat=rows * cols):
        yield ExactMatrix(f, np.array(vals, dtype=np.int64).reshape(rows, cols))


@pytest.fixture
def f2c2():
    return group_algebra(F2, cyclic_group(2))


@pytest.fixture
def f3c2():
    return group_algebra(F3, cyclic_group(2))


@pytest.fixture
def f2s3():
    return group_algebra(F2, symmetric_group_3())


@pytest.fixture
def quiver_f2():
    return quiver_algebra(F2)
