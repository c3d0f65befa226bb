"""Attributed question answering with atomic-fact decomposition,
evidence retrieval, verification/editing, and answer backtracking."""

__version__ = "0.1.0"

from .models import (  # noqa: F401
    AnswerDecomposition,
    AtomicFact,
    AttributionResult,
    EvidenceItem,
    EvidenceSet,
    LongFormAnswer,
    MetricsReport,
    MolecularClause,
    Question,
    RunCounters,
    VerificationStatus,
    VerificationTrail,
)
from .pipeline import Config, build_providers, load_config, run_pipeline  # noqa: F401
