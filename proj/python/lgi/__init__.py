"""Integrators on Lie groups: kernels, order theory and experiment drivers."""

from ._lgi import (  # noqa: F401
    LgiError,
    LgiLookupError,
    bracket,
    c_kappa,
    cayley,
    check_order,
    converge,
    dexpinv,
    dim_free_lie,
    drift,
    group_exp,
    integrate,
    method_names,
    problem_names,
    trees,
)


def _stringify(cfg):
    return {str(k): str(v) for k, v in cfg.items()}


def run_converge(**cfg):
    """Convergence rows (h, steps, error, order) for keyword config values."""
    return converge(_stringify(cfg))


def run_drift(**cfg):
    """Maximum invariant drift per invariant name."""
    return drift(_stringify(cfg))
