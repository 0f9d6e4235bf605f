"""Parallel-tempering MCMC for Bayesian neural networks."""

import json

from ._core import (
    PtbnnError,
    build_ladder,
    forward,
    param_count,
    run_profile,
    softmax,
    takens_embed,
)

__all__ = [
    "PtbnnError",
    "build_ladder",
    "forward",
    "param_count",
    "run",
    "run_profile",
    "softmax",
    "takens_embed",
]


def run(profile, **overrides):
    """Run an experiment profile and return the report as a dict.

    Keyword overrides mirror the CLI flags: method, samples, replicas,
    swap_interval, max_temp, lg_freq, learn_rate, seed, out, parallel.
    """
    as_text = {k: str(v).lower() if isinstance(v, bool) else str(v)
               for k, v in overrides.items()}
    return json.loads(run_profile(str(profile), as_text))
