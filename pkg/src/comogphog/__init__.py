"""Alignment-free protein structure similarity.

CA distance matrices rendered as grayscale images, brought to a fixed
128x128 working size, and summarized by oriented-gradient statistics: a
16x16 orientation co-occurrence block plus quad-tree orientation
histograms.  Every structure becomes a 1024-entry descriptor, so comparing
two structures is a single Euclidean distance, independent of their sizes.
"""

from .distmat import distance_matrix, to_gray, write_pgm
from .evalstats import (
    ConfusionCounts,
    Polarity,
    ScoredPair,
    auc,
    confusion_at_threshold,
    default_thresholds,
    mcc,
    mcc_curve,
    pvalue_curve,
    read_score_file,
    roc_curve,
    score_pairs,
    sensitivity_specificity,
    write_curve_csv,
)
from .featuredb import (
    FeatureStore,
    export_csv,
    ingest_dir,
    load_store,
    save_store,
)
from .features import (
    FEATURE_LENGTH,
    FeatureVector,
    QuantizedOrientations,
    comograd,
    extract_features,
    phog,
    quantize_orientations,
)
from .imageops import (
    GradientField,
    bicubic_resize,
    gradient_field,
    haar_downsample,
    normalize_size,
)
from .scoring import ScoreResult, score, search
from .structure_io import (
    CaTrace,
    ScopLabel,
    family_match,
    parse_scop_label,
    parse_structure,
    read_label_table,
    superfamily_match,
)

__version__ = "0.1.0"

__all__ = [
    "CaTrace",
    "ConfusionCounts",
    "FEATURE_LENGTH",
    "FeatureStore",
    "FeatureVector",
    "GradientField",
    "Polarity",
    "QuantizedOrientations",
    "ScopLabel",
    "ScoreResult",
    "ScoredPair",
    "auc",
    "bicubic_resize",
    "comograd",
    "confusion_at_threshold",
    "default_thresholds",
    "distance_matrix",
    "export_csv",
    "extract_features",
    "family_match",
    "gradient_field",
    "haar_downsample",
    "ingest_dir",
    "load_store",
    "mcc",
    "mcc_curve",
    "normalize_size",
    "parse_scop_label",
    "parse_structure",
    "phog",
    "pvalue_curve",
    "quantize_orientations",
    "read_label_table",
    "read_score_file",
    "roc_curve",
    "save_store",
    "score",
    "score_pairs",
    "search",
    "sensitivity_specificity",
    "superfamily_match",
    "to_gray",
    "write_curve_csv",
    "write_pgm",
]
