"""First principal component by power iteration."""

import numpy as np
import numpy.typing as npt

from crcsim.exceptions import DegenerateCovarianceError
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)

EIGENVALUE_TOLERANCE = 1e-9
VECTOR_TOLERANCE = 1e-12
MAX_ITERATIONS = 10_000


def standardize(X: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Center every column and scale the ones with nonzero spread to unit variance."""
    X = np.asarray(X, dtype=np.float64)
    Z = X - X.mean(axis=0)
    std = Z.std(axis=0)
    scale = np.where(std > 0, std, 1.0)
    return Z / scale


def standardized_covariance(X: npt.ArrayLike) -> npt.NDArray[np.float64]:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DegenerateCovarianceError()
    Z = standardize(X)
    return Z.T @ Z / (X.shape[0] - 1)


def first_principal_component(X: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Unit leading eigenvector of the standardized covariance of ``X`` (rows are instances).

    The sign is fixed so that the largest-magnitude coordinate is positive.

    Raises:
        DegenerateCovarianceError: Fewer than two instances, or all instances identical
    """
    cov = standardized_covariance(X)
    if not np.any(cov):
        raise DegenerateCovarianceError()

    start = int(np.argmax(np.linalg.norm(cov, axis=0)))
    vector = cov[:, start] / np.linalg.norm(cov[:, start])
    eigenvalue = float(vector @ cov @ vector)

    for iteration in range(1, MAX_ITERATIONS + 1):
        product = cov @ vector
        updated = product / np.linalg.norm(product)
        updated_eigenvalue = float(updated @ cov @ updated)
        eigen_converged = abs(updated_eigenvalue - eigenvalue) <= EIGENVALUE_TOLERANCE * abs(updated_eigenvalue)
        vector_converged = np.linalg.norm(updated - vector) <= VECTOR_TOLERANCE
        vector, eigenvalue = updated, updated_eigenvalue
        if eigen_converged and vector_converged:
            break
    else:
        logger.warning("power_iteration_not_converged", iterations=MAX_ITERATIONS, eigenvalue=eigenvalue)
        iteration = MAX_ITERATIONS

    logger.debug("principal_component_found", iterations=iteration, eigenvalue=eigenvalue)
    if vector[int(np.argmax(np.abs(vector)))] < 0:
        vector = -vector
    return vector


def project_onto_component(X: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Scores of the standardized instances along their first principal component."""
    return standardize(X) @ first_principal_component(X)
