"""Random admissible parameter sets for randomized checks and benchmarks.

Physical fields are log-uniform on [0.1, 10], eps uniform on [0.05, 0.95];
convective sets are rejection-sampled until h0 > h0_star.
"""

import math

import numpy as np

from mushy_stefan.model import ConvectiveBC, DirichletBC, MaterialParams
from mushy_stefan.transcendental import compute_threshold


def _log_uniform(rng, lo=0.1, hi=10.0):
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def random_material(rng, gamma=None):
    return MaterialParams(
        rho=_log_uniform(rng),
        k1=_log_uniform(rng),
        k2=_log_uniform(rng),
        c1=_log_uniform(rng),
        c2=_log_uniform(rng),
        l=_log_uniform(rng),
        eps=float(rng.uniform(0.05, 0.95)),
        gamma=_log_uniform(rng) if gamma is None else gamma,
    )


def random_convective(rng, max_tries=10_000, gamma=None, theta0=None):
    """(mp, bc) with h0 > h0_star."""
    for _ in range(max_tries):
        mp = random_material(rng, gamma=gamma)
        bc = ConvectiveBC(
            theta0=_log_uniform(rng) if theta0 is None else theta0,
            Dinf=_log_uniform(rng),
            h0=_log_uniform(rng),
        )
        if compute_threshold(mp, bc).solvable:
            return mp, bc
    raise RuntimeError("rejection sampling found no admissible set")


def random_dirichlet(rng, gamma=None, theta0=None):
    mp = random_material(rng, gamma=gamma)
    bc = DirichletBC(
        theta0=_log_uniform(rng) if theta0 is None else theta0,
        D0=_log_uniform(rng),
    )
    return mp, bc


def rng_for(seed):
    return np.random.default_rng(seed)
