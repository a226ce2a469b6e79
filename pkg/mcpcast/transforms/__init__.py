from .scaler import (
    ZScore,
    MinMax,
    Identity,
    build_scaler,
    list_scalers
)
