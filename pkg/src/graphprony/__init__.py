"""Recovery of spectrally sparse signals on graphs and simplicial complexes
from samples in small neighbourhoods."""

from .config import DEFAULT, Tolerances
from .errors import (AmbiguityWarning, GraphPronyError, HarmonicComponentWarning, InputError,
                     MissingSamplesError, ModelViolation, NoSupportError, RankDeficiencyError,
                     RootError, SizeGuardError)
from .graph import (Graph, build_graph, circle_graph, distance, erdos_renyi_graph, generate,
                    laplacian, laplacian_dense, neighbourhood, path_graph, umbrella_graph)
from .multisnapshot import (SnapshotPlan, coefficient_matrix_B, rank_certificate, recover_multi,
                            required_samples, stacked_hankel)
from .prony import (MomentSequence, RecoveryResult, hankel, local_components, local_moments,
                    match_support, polynomial_roots, prony_polynomial, recover_one_neighbourhood)
from .sampling import colliding_signals, is_chebotarev, l0_decode, uniqueness_check
from .simplicial import (Chain, SimplicialComplex, betti, boundary_matrix, build_complex,
                         face_neighbourhood, hodge_laplacian, recover_simplicial_multi,
                         recover_simplicial_one, split_recover)
from .spectral import (GraphSignal, SparseSpectralSignal, SpectralBasis, dft_matrix,
                       eigendecompose, synthesize)
