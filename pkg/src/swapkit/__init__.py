"""swapkit: finite swap-structure semantics for paraconsistent logics.

Snapshots over finite Boolean algebras assemble into multialgebras whose
matrices decide the mbC family of logics of formal inconsistency; the
package covers the general multialgebra toolkit, the per-logic structure
classes with their axiomatic characterizations, power-of-two-element
representation embeddings, the classical pair construction with its duality,
Hilbert proof checking, and a batch CLI.
"""

from .boolalg import (A2, BaHom, BoolAlg, Cil, DupAlg, atom_embedding,
                      ba_product, duplicate, make_cil, powerset_algebra,
                      universal_extension)
from .formula import (Binary, Formula, ParseError, Signature, Unary, Var,
                      match_schema, parse, subformula_closure, substitute,
                      to_text)
from .hilbert import (AxiomSet, Proof, axioms_of, check_proof,
                      derives_ciw_bottom, parse_proof, serialize_proof)
from .logics import CHAIN, LogicId, parse_logic
from .multialg import (EquivRel, MaMap, MultiAlg, direct_image,
                       epi_mono_factorize, is_epimorphism,
                       is_full_homomorphism, is_homomorphism, is_isomorphism,
                       is_multicongruence, is_submultialgebra, ma_product,
                       ma_terminal, quotient)
from .nmatrix import (Bivaluation, Nmatrix, PartialValuation, Verdict,
                      characteristic_matrix, clause_failures, decide,
                      decide_logic, extend_valuation, extended_closure,
                      induced_valuation, is_bivaluation, is_legal_valuation,
                      nmatrix_of)
from .swap import (KalmanAlgebra, Snapshot, SwapStructure, characterize,
                   duality_star, find_swap_decoding, full_swap, is_swap_for,
                   kalman_classic, kalman_star, mbc_quotient_counterexample,
                   product_iso, random_swap_substructure, represent,
                   universe, validates)
from .tables import render_tables, tables_json

__version__ = "0.1.0"
