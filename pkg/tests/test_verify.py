import pytest

from macdonald_mop.numerics import Params
from macdonald_mop.verify import SUITES, Check, _run, near_diagonal, run_suites, suite_checks
from macdonald_mop.errors import IdentityViolation


def test_near_diagonal():
    assert list(near_diagonal(2)) == [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]


@pytest.mark.parametrize("params", [Params(1, 1), Params(0, 0), Params("1/2", "-1/2")], ids=str)
def test_all_suites_pass(params):
    checks = run_suites(["all"], params, 4)
    assert checks and all(c.ok for c in checks), [c for c in checks if not c.ok]
    assert {c.suite for c in checks} == set(SUITES)


def test_parallel_order_deterministic():
    p = Params(0, 1)
    a = run_suites(["orthogonality", "orders"], p, 3, jobs=1)
    b = run_suites(["orthogonality", "orders"], p, 3, jobs=4)
    assert a == b


def test_failure_is_structured():
    def boom():
        raise IdentityViolation("broken", 5)
    c = _run("s", "x", boom)
    assert not c.ok and "value=5" in c.detail
    assert _run("s", "y", lambda: (False, "why")) == Check("s", "y", False, "why")
    assert c.to_dict()["check"] == "x"


def test_unknown_suite():
    with pytest.raises(ValueError):
        suite_checks("bogus", Params(0, 0), 2)
