# flake8: noqa F401

from .rootfold import RootSystem, FoldingDatum, root_system, folding
from .coeffring import RingSpec, Scalar, rationals, finite_field
from .hypermod import Module, build_weyl_module, build_simple_module
from .loopaction import LoopModule, TwistedLoopModule, evaluation_module, loop_tensor, restrict
from .lweights import LWeight, StandardDecomposition, standard_decomposition, extract_drinfeld
from .exception import HyperloopError
