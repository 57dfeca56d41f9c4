import numpy as np

from persprox import engine
from persprox.verify import CATALOG, make_entry, random_queries

__all__ = ["CATALOG", "make_entry", "random_queries", "run_prox"]


def run_prox(f, gamma, x, eta, cfg=None):
    return engine.prox_perspective(
        engine.ProxQuery(f, gamma, np.asarray(x, dtype=float), eta), cfg
    )
