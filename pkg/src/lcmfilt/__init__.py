"""lcm-lattices and lcm-filtrations of monomial ideals."""
from .filtration import IdealFiltration, compare_filtrations, kfold_lcm_ideal, lcm_filtration, stepwise_filtration
from .graphs import Graph, Partition, cut_ideal, enumerate_cuts, partition_ideal
from .lattice import GuardExceeded, LcmLattice, build_lcm_lattice, poset_density
from .monomial import Monomial, MonomialIdeal, lcm, minimalize, polarize
from .persistence import DistanceConventions, PersistenceDiagram, bottleneck, persistence_diagram, wasserstein
from .reliability import SystemSpec, failure_ideal, kfold_signature, signature
from .simplicial import SimplicialComplex, sr_complex, sr_ideal

__version__ = "0.1.0"

__all__ = [
    "DistanceConventions", "Graph", "GuardExceeded", "IdealFiltration", "LcmLattice", "Monomial", "MonomialIdeal",
    "Partition", "PersistenceDiagram", "SimplicialComplex", "SystemSpec", "bottleneck", "build_lcm_lattice",
    "compare_filtrations", "cut_ideal", "enumerate_cuts", "failure_ideal", "kfold_lcm_ideal", "kfold_signature", "lcm",
    "lcm_filtration", "minimalize", "partition_ideal", "persistence_diagram", "polarize", "poset_density",
    "signature", "sr_complex", "sr_ideal", "stepwise_filtration", "wasserstein",
]
