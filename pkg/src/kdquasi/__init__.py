"""Kirkwood-Dirac type quasiprobabilities that certify nonclassical resources."""
from .chain import ProjectorChain, assemble_chain, negative_block, positive_block, verify_chain
from .qcore import Projector, bloch_state, dephase, eig_hermitian, frobenius_distance, sic_qubit, tensor
from .quasiprob import (Event, QuasiDistribution, evaluate_distribution, infocomplete_distribution,
                        marginal, reconstruct_state, total_negativity)
from .resources import ClassicalSetModel, closest_classical, is_classical, sample_classical
from .weakval import WeakValueTerm, conical_decomposition, detect_anomalous, weak_value
from .witness import (ExtendedWitness, Witness, extend_and_scale, geometric_witness,
                      ppt_entanglement_witness)

__version__ = "0.1.0"
