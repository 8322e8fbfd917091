"""Backend switch for the numeric kernels.

Setting ``POLYCOLOR_DISABLE_NUMBA=1`` runs every kernel as plain Python over
numpy arrays. Results are identical either way; only speed differs.
"""
import os

DISABLE_NUMBA = os.environ.get("POLYCOLOR_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

if DISABLE_NUMBA:
    NUMBA_ENABLED = False
else:
    try:
        import numba
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False
    else:
        NUMBA_ENABLED = True


def jit(func):
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def backend_name():
    return "numba" if NUMBA_ENABLED else "python"
