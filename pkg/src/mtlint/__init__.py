"""mtlint: high-precision detectors for long-tail machine translation errors.

Detectors take one (source, translation) pair and answer whether a specific
error class is present, tuned for near-perfect precision so the resulting
counts can be trusted. The same detectors drive corpus filtering, metamorphic
test generation and synthetic parallel-data generation; a FastAPI service
exposes everything to multiple clients and the CLI is a thin client of it.
"""

from .alignment import AlignmentLinks, DiagonalProvider, FileProvider, SidecarProvider, align, parse_pharaoh
from .config import RunConfig, load_config
from .corpus import (
    CorpusStats,
    DETECTOR_NAMES,
    Detection,
    SentencePair,
    TokenSpan,
    read_bitext,
    read_report,
    render_stats,
    write_report,
)
from .generate import (
    MetaCorpusPair,
    MetamorphicInstance,
    Template,
    meta_corpus_generate,
    metamorphic_generate,
)
from .numeric import (
    DE,
    EN,
    LocaleConvention,
    NumericValue,
    allowed_target_forms,
    check_pair_numeric,
    extract_numeric_values,
)
from .pipeline import (
    Runtime,
    detect_pair,
    run_detect,
    run_filter,
    run_stats,
    standard_filter,
)
from .sequence import (
    CoverageConfig,
    HallucinationConfig,
    coverage_check,
    natural_hallucination_scan,
    oscillatory_check,
)
from .tables import TransformationEntry, TransformationTable, builtin_tables, load_table
from .token_detectors import (
    GuardPolicy,
    TriggerMatch,
    check_pair,
    check_web_terms,
    find_triggers,
    numeric_guard,
)

__version__ = "0.1.0"
