"""Gaussian program-space embeddings: exact products, encoders, training."""

from .encoders import (
    EncoderConfig,
    EncoderParams,
    attention_forward,
    encode_example,
    encode_example_batch,
    encode_program,
    encode_program_batch,
    infonce_backward,
    infonce_forward,
    infonce_loss,
    init_params,
    intersect_attention,
    zero_grads,
)
from .features import (
    KAREL_EXAMPLE_DIM,
    KAREL_PROGRAM_DIM,
    LIST_EXAMPLE_DIM,
    LIST_PROGRAM_DIM,
    MAX_PROGRAM_STATEMENTS,
    TIMEOUT_RESPONSE,
    karel_example_features,
    karel_program_features,
    list_example_features,
    list_program_features,
    world_bits,
)
from .gaussian import (
    LOG_TWO_PI,
    DiagGaussian,
    entropy,
    gaussian_product_exact,
    gaussian_product_fold,
    log_density,
    product_entropy_trace,
    standard_gaussian,
)
from .training import (
    BatchResult,
    TrainingDivergedError,
    TrainingResult,
    clip_grads,
    finite_difference_grad,
    global_grad_norm,
    load_checkpoint,
    recurrent_loss_and_grad,
    save_checkpoint,
    train_recurrent,
)

__all__ = [
    "LOG_TWO_PI",
    "DiagGaussian",
    "standard_gaussian",
    "gaussian_product_exact",
    "gaussian_product_fold",
    "entropy",
    "log_density",
    "product_entropy_trace",
    "EncoderConfig",
    "EncoderParams",
    "init_params",
    "zero_grads",
    "encode_example",
    "encode_example_batch",
    "encode_program",
    "encode_program_batch",
    "attention_forward",
    "intersect_attention",
    "infonce_forward",
    "infonce_backward",
    "infonce_loss",
    "LIST_EXAMPLE_DIM",
    "LIST_PROGRAM_DIM",
    "KAREL_EXAMPLE_DIM",
    "KAREL_PROGRAM_DIM",
    "MAX_PROGRAM_STATEMENTS",
    "TIMEOUT_RESPONSE",
    "list_example_features",
    "list_program_features",
    "karel_example_features",
    "karel_program_features",
    "world_bits",
    "BatchResult",
    "TrainingResult",
    "TrainingDivergedError",
    "recurrent_loss_and_grad",
    "train_recurrent",
    "clip_grads",
    "global_grad_norm",
    "finite_difference_grad",
    "save_checkpoint",
    "load_checkpoint",
]
