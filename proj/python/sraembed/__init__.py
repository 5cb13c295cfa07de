"""Python bindings for the sraembed C++ library."""

import json
from dataclasses import dataclass, field

import numpy as np

from ._core import (
    MetricSpace,
    SraEmbedError,
    audit,
    doubling_constant,
    find_sra_subspace,
    generate,
    is_sra,
    mcshane_extend,
    run_cli,
    sra_free_parameter,
)
from ._core import _embed

__all__ = [
    "Embedding",
    "MetricSpace",
    "SraEmbedError",
    "audit",
    "doubling_constant",
    "embed",
    "find_sra_subspace",
    "generate",
    "is_sra",
    "mcshane_extend",
    "run_cli",
    "sra_free_parameter",
]


@dataclass
class Embedding:
    coords: np.ndarray
    scale: float
    claimed_distortion: float
    theoretical_bound: float
    constants: dict = field(repr=False)


def embed(space, alpha, k=None):
    """Embed `space`, which must be free of k-point SRA(alpha) subsets.

    When k is omitted the smallest admissible value is used.
    """
    raw = _embed(space, alpha, k)
    return Embedding(
        coords=raw["coords"],
        scale=raw["scale"],
        claimed_distortion=raw["claimed_distortion"],
        theoretical_bound=raw["theoretical_bound"],
        constants=json.loads(raw["constants_json"]),
    )
