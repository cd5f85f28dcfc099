"""Witnesses for the extension property of finite n-partite tournaments.

Build the valuation-function witness of a tournament, extend any partial
automorphism of the embedded copy to a full automorphism, and check the
result independently.
"""

from .core import (
    InvalidTournament,
    NormalizedTournament,
    PartialAutomorphism,
    Tournament,
    Violation,
    is_partial_automorphism,
    is_semigeneric,
    normalize,
    semigeneric_violation,
    validate,
)
from .extend import (
    ExtensionCertificate,
    FlipTable,
    complete_parts,
    complete_vertices,
    compute_flips,
    extend_automorphism,
    induced_maps,
)
from .verify import (
    CampaignConfig,
    VerificationReport,
    enumerate_partial_automorphisms,
    find_extension,
    oracle_extendable,
    run_campaign,
    verify_automorphism,
    verify_extends,
    verify_remark,
)
from .witness import BudgetExceeded, ValuationVertex, Witness, build_witness, embed, witness_size

__version__ = "0.1.0"
