"""Intrusion-detection toolkit: KDD ingestion, preprocessing, SMOTE,
decision tree / random forest / linear SVM, and evaluation.

Thin wrapper over the compiled `_kddx` extension.
"""

try:
    # installed layout: extension lives inside the package
    from ._kddx import *  # noqa: F401,F403
    from ._kddx import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # build-tree layout: extension sits on PYTHONPATH beside the package
    from _kddx import *  # noqa: F401,F403

__all__ = [
    "DataError",
    "RawDataset",
    "Dataset",
    "PreprocessorState",
    "TrainedModel",
    "parse_kdd_file",
    "dedup",
    "map_labels",
    "fit_encoders",
    "encode",
    "fit_scaler",
    "apply_scaler",
    "transform",
    "stratified_split",
    "smote_resample",
    "fit_tree",
    "fit_forest",
    "fit_svm",
    "feature_importances",
    "evaluate",
    "run_experiment",
]
