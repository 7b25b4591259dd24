try:
    from .asserts import assert_passed, assert_rel_close
    from .fixtures import PARAMETER_PAIRS, param_pair, random_expansion, results_dir

    __all__ = ["PARAMETER_PAIRS", "assert_passed", "assert_rel_close", "param_pair", "random_expansion", "results_dir"]

except ImportError:
    pass
