import pytest

from coxcov.covariants import CovariantStack
from coxcov.groups import build_group

_GROUPS = {}
_STACKS = {}


def get_group(code, allow_long=False):
    got = _GROUPS.get(code)
    if got is None:
        got = build_group(code, allow_long=allow_long)
        _GROUPS[code] = got
    return got


def get_stack(code):
    got = _STACKS.get(code)
    if got is None:
        got = CovariantStack(get_group(code))
        _STACKS[code] = got
    return got


@pytest.fixture(scope="session")
def group_of():
    return get_group


@pytest.fixture(scope="session")
def stack_of():
    return get_stack
