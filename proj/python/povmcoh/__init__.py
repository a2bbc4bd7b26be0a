"""POVM-based coherence toolkit.

Naimark extensions of general quantum measurements, the relative entropy
of POVM-based coherence, the feasibility SDP for POVM-incoherent channels
and maximal conversion fidelities.
"""

from ._core import (
    CoherenceReport,
    ExtensionDiagnostics,
    ExtensionKind,
    MaxCoherenceResult,
    MinCoherenceResult,
    NaimarkExtension,
    PicContext,
    PicVerdict,
    Povm,
    PovmDiagnostics,
    ValidationError,
    block_dephase,
    bloch_to_density,
    c_rel_block,
    c_rel_povm,
    canonical_extension,
    canonical_kraus,
    coherence_landscape,
    conversion_landscape,
    density_to_bloch,
    derive_incoherent_unitaries,
    embed_state,
    fidelity,
    fidelity_sdp,
    fmax,
    is_povm_incoherent,
    max_coherence_pure,
    min_coherence_qubit,
    minimal_extension,
    outcome_probs,
    pic_feasibility,
    rotation_unitary,
    shannon_entropy,
    trine_directions,
    trine_incoherent_unitaries,
    trine_povm,
    validate,
    validate_extension,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "CoherenceReport",
    "ExtensionDiagnostics",
    "ExtensionKind",
    "MaxCoherenceResult",
    "MinCoherenceResult",
    "NaimarkExtension",
    "PicContext",
    "PicVerdict",
    "Povm",
    "PovmDiagnostics",
    "ValidationError",
    "block_dephase",
    "bloch_to_density",
    "c_rel_block",
    "c_rel_povm",
    "canonical_extension",
    "canonical_kraus",
    "coherence_landscape",
    "conversion_landscape",
    "density_to_bloch",
    "derive_incoherent_unitaries",
    "embed_state",
    "fidelity",
    "fidelity_sdp",
    "fmax",
    "is_povm_incoherent",
    "max_coherence_pure",
    "min_coherence_qubit",
    "minimal_extension",
    "outcome_probs",
    "pic_feasibility",
    "rotation_unitary",
    "shannon_entropy",
    "trine_directions",
    "trine_incoherent_unitaries",
    "trine_povm",
    "validate",
    "validate_extension",
    "von_neumann_entropy",
]
