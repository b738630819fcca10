"""Quantized kernel recursive least squares learner."""

from app.qkrls.codebook import Codebook, quantize
from app.qkrls.kernel import KernelParams, gaussian_kernel, gaussian_kernel_matrix
from app.qkrls.model import (
    MODEL_VERSION,
    QkrlsModel,
    assign_state,
    batch_solve,
    predict,
    update,
)

__all__ = [
    "Codebook",
    "KernelParams",
    "MODEL_VERSION",
    "QkrlsModel",
    "assign_state",
    "batch_solve",
    "gaussian_kernel",
    "gaussian_kernel_matrix",
    "predict",
    "quantize",
    "update",
]
