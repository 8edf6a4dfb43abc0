"""Finite state property systems, closure spaces and orthogonality."""

from .closure import (ClosureSpace, StateOrthoRelation, closure_of, is_induced_by_ortho,
                      ortho_closure, perp_set, validate_closure_space)
from .errors import (AxiomPreconditionError, LatticeError, OrderError, OrthoSPSError, ParseError,
                     SizeCapError, TheoremViolation, UnknownElementError, UnknownStateError)
from .kernels import BACKEND
from .order import (CompleteLattice, FinitePoset, build_lattice, join_family, meet_family,
                    validate_complete_lattice)
from .ortho import (AxiomReport, Orthocomplementation, OrthoSPS, PropertyOrthoRelation,
                    TheoremReport, build_orthocomplementation, check_AO1, check_AO2, check_axioms,
                    compute_perp_star, induce_property_ortho, induce_state_ortho,
                    ortho_from_orthocomplementation, orthoproperty_partner,
                    validate_orthocomplementation, validate_property_ortho, verify_double_star,
                    verify_maximality, verify_theorem1)
from .sps import (EigenClosureResult, StatePropertySystem, cartan, eigenclosure, sps_from_closure,
                  sps_isomorphic, validate_sps)

__version__ = "0.1.0"
