"""Independent numerical checks: FD eigensolver, quadrature, ODE residuals."""
from .fd import FdConfig, FdResult, fd_bound_count, fd_count_below, fd_eigenvalues, fd_eigenvector, fd_solve
from .grid import GridFunction
from .quadrature import QuadResult, quadrature
from .residual import ode_residual

__all__ = [
    "FdConfig", "FdResult", "GridFunction", "QuadResult",
    "fd_bound_count", "fd_count_below", "fd_eigenvalues", "fd_eigenvector", "fd_solve",
    "ode_residual", "quadrature",
]
