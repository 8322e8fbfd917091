"""The pure-Python path (numba disabled) must give the same answers."""
import json
import os
import subprocess
import sys

import pytest

SCRIPT = r"""
import json
from polycolor import _jit
from polycolor.colorability import is_poly_colorable, min_heavy_poly
from polycolor.search import paper_hypergraph, p_search, _extension_chunk, _seven_chunk
h = paper_hypergraph()
out = {
    "numba": _jit.NUMBA_ENABLED,
    "poly3": is_poly_colorable(h, 3).colorable,
    "poly2": list(is_poly_colorable(h, 2).witness.colors),
    "m2": min_heavy_poly(h, 2).value,
    "m3": min_heavy_poly(h, 3).value,
    "p22": p_search(2, 2, 4)[0],
    "p33": p_search(3, 3, 3)[0],
    "ext": _extension_chunk(2000, 3),
    "seven": _seven_chunk(3000, 100),
}
print(json.dumps(out, sort_keys=True))
"""


def run(disable):
    env = dict(os.environ)
    env.pop("POLYCOLOR_DISABLE_NUMBA", None)
    if disable:
        env["POLYCOLOR_DISABLE_NUMBA"] = "1"
    r = subprocess.run([sys.executable, "-c", SCRIPT], capture_output=True, text=True, env=env, check=True)
    return json.loads(r.stdout)


@pytest.mark.slow
def test_fallback_matches_numba():
    fast = run(False)
    slow = run(True)
    assert slow.pop("numba") is False
    fast.pop("numba")
    assert fast == slow
    assert slow["poly3"] is False and slow["m3"] == 6
