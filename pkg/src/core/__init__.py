"""
Core modules for HDX Product Complexes
"""
from .graphs import WeightedGraph, gen_graph, graph_spectrum, tensor_product
from .complex import Complex, SplitClass, PureClass, ZVertex, build_Q, build_Z, link, one_skeleton, verify_balance
from .weights import ClassWeightTable, class_weights, closed_form_ratio, updown_class_step_prob
from .walks import WalkOperator, level_spectrum, stationary_measure, walk_operator, evolve
from .expansion import VerificationReport, expansion_profile, local_sweep, global_expansion, verify_theorems
from .run_config import RunConfig, make_config

__all__ = [
    'WeightedGraph',
    'gen_graph',
    'graph_spectrum',
    'tensor_product',
    'Complex',
    'SplitClass',
    'PureClass',
    'ZVertex',
    'build_Q',
    'build_Z',
    'link',
    'one_skeleton',
    'verify_balance',
    'ClassWeightTable',
    'class_weights',
    'closed_form_ratio',
    'updown_class_step_prob',
    'WalkOperator',
    'level_spectrum',
    'stationary_measure',
    'walk_operator',
    'evolve',
    'VerificationReport',
    'expansion_profile',
    'local_sweep',
    'global_expansion',
    'verify_theorems',
    'RunConfig',
    'make_config'
]
