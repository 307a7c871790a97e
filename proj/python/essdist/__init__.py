"""Finite-space toolkit for essential distances, e0-metrics, MT(lambda)
gauges and multivalued fixed-point verification.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (  # noqa: F401
    Gauge,
    Instance,
    Kappa,
    MultiMap,
    SelfMap,
    Space,
    __version__,
    check_all_statements,
    check_s1,
    check_s2,
    check_s3,
    check_s4,
    check_s5,
    check_s6,
    check_statement,
    check_tau1,
    check_theorem13,
    check_zero_structure,
    classify,
    coincidence_points,
    dkappa,
    fixed_points,
    generate,
    hausdorff,
    is_mt,
    iterate,
    line_space,
    load,
    mutate,
    parse,
    point_to_set,
    right_limsup,
    save,
    scale_to_unit,
    sequence_oracle_tau3,
    sequence_sampler,
    validate_metric,
    verify,
    xi,
)

__all__ = [name for name in dir() if not name.startswith("_")]
