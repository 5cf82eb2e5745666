from ._gext import (
    __version__,
    aut_pointed,
    automorphism_count,
    classify_equiv,
    classify_ext,
    cohomology,
    cstar_cohomology,
    group_order,
    metric,
    reproduce,
)

__all__ = [
    "__version__",
    "aut_pointed",
    "automorphism_count",
    "classify_equiv",
    "classify_ext",
    "cohomology",
    "cstar_cohomology",
    "group_order",
    "metric",
    "reproduce",
]
