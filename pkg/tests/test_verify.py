from __future__ import annotations

import pytest

from paintability.verify import SUITE_NAMES, run_suite


@pytest.mark.parametrize("name", ["q-lemmas", "m-theorem", "zhu", "union", "subgraph-monotonicity", "dominance"])
def test_suite_passes(name):
    [res] = run_suite(name)
    assert res.ok, res.mismatches[:3]
    assert res.summary().startswith(f"PASS {name}")


def test_unknown_suite():
    assert "all" in SUITE_NAMES
    with pytest.raises(KeyError):
        run_suite("bogus")
