"""Prompt recommendation via item-item Pearson collaborative filtering."""

import json as _json

from ._promptrec import (
    DataError,
    Dataset,
    Engine,
    InvalidArgument,
    IoError,
    f1,
    generate_dataset,
    load_dataset,
    mae,
    nearest_known_prompt,
    parse_dataset,
    rmse,
)
from ._promptrec import cross_validate_json as _cross_validate_json

__all__ = [
    "DataError",
    "Dataset",
    "Engine",
    "InvalidArgument",
    "IoError",
    "cross_validate",
    "f1",
    "generate_dataset",
    "load_dataset",
    "mae",
    "nearest_known_prompt",
    "parse_dataset",
    "rmse",
]


def cross_validate(dataset, folds=10, top_n=10, threshold=3.0, seed=1, k=40, min_support=2):
    """K-fold evaluation report as a dict with per_fold, aggregate and config."""
    return _json.loads(
        _cross_validate_json(dataset, folds, top_n, threshold, seed, k, min_support)
    )
