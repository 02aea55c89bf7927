from ._core import (
    DEFAULT_TOLERANCE,
    XyzError,
    CounterexamplePair,
    PointCloud,
    congruent,
    distance_matrix,
    distinguish,
    family_names,
    forward,
    generate,
    parse_xyz,
    random_image,
    refine,
    set_threads,
    threads,
    verify,
    write_xyz,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "XyzError",
    "CounterexamplePair",
    "PointCloud",
    "congruent",
    "distance_matrix",
    "distinguish",
    "family_names",
    "forward",
    "generate",
    "parse_xyz",
    "random_image",
    "refine",
    "set_threads",
    "threads",
    "verify",
    "write_xyz",
]
