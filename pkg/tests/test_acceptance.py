import pytest

from conftest import ACCEPTANCE_LINES
from polynet.acceptance import run_criterion

# The printed L-bridge families sit exactly (L-1) above the network exponent
# (see the lbridge_offset suite); criterion 1 is evaluated literally and fails.
KNOWN_FAILING = {1: "printed L-bridge families omit the chain-count term"}


def _case(n):
    if n in KNOWN_FAILING:
        return pytest.param(n, marks=pytest.mark.xfail(reason=KNOWN_FAILING[n], strict=True))
    return n


@pytest.mark.slow
@pytest.mark.parametrize("number", [_case(n) for n in range(1, 8)])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    ACCEPTANCE_LINES.append(result.line())
    assert result.passed, result.detail
