"""Score-driven tree search with built-in numerical solution engines.

Thin re-export of the compiled extension; see the README for the full CLI.
"""

try:
    from . import _scorch as _ext  # installed wheel layout
except ImportError:  # build-tree layout: extension directly on sys.path
    import _scorch as _ext

__all__ = [
    "QuadResult",
    "SearchNode",
    "SearchTree",
    "SegmentScheme",
    "baseline_quad",
    "builtin_forecast_configs",
    "builtin_task_ids",
    "euler_accelerate",
    "eval_integrals",
    "forecast",
    "forecast_task_score",
    "integral_score",
    "integral_task_score",
    "integrate_oscillatory",
    "mase",
    "mutate_config",
    "run_search",
    "segment_bounds",
    "select_config",
    "synthetic_target",
]

for _name in __all__:
    globals()[_name] = getattr(_ext, _name)
del _name, _ext
