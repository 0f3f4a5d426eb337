import os

# "EJA1" read as a big-endian 32-bit integer.
DEFAULT_SEED = 0x454A4131
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 200


def default_seed() -> int:
    """The default seed, overridable through ``EJALAB_SEED``."""
    raw = os.environ.get("EJALAB_SEED")
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    return int(raw, 0)
