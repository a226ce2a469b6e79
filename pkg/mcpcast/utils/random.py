__all__ = ["derive_seed", "make_rng"]

import numpy as np

def derive_seed(seed: int, *keys: int) -> int:
    """Derives an independent 32 bit seed from a master seed and integer keys

    Args:
        seed (int): master seed
        *keys (int): stream identifiers, e.g. ensemble member index

    Returns:
        int: derived seed

    >>> derive_seed(42, 0) == derive_seed(42, 0)
    True
    >>> derive_seed(42, 0) != derive_seed(42, 1)
    True
    """
    entropy = [int(seed)] + [int(key) for key in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint32)[0])

def make_rng(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *keys))
