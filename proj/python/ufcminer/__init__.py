"""Quantitative transaction mining: HFHUI / HFLUI / LFHUI classification.

The heavy lifting lives in the C++ extension ``_ufcminer``; this wrapper adds
the one convenience the C++ side doesn't: :func:`mine` returns a plain dict.
"""

import json

from _ufcminer import (
    Database,
    DataImportError,
    MiningTimeout,
    ParseError,
    UniverseTooLarge,
    _mine_json,
    generate,
    import_spmf,
    load_native,
    parse_native,
)

__all__ = [
    "Database",
    "DataImportError",
    "MiningTimeout",
    "ParseError",
    "UniverseTooLarge",
    "generate",
    "import_spmf",
    "load_native",
    "mine",
    "parse_native",
]


def mine(db, min_util, min_fre, algo="fast", timeout=0.0, oracle_limit=20):
    """Classify every frequent-or-high-utility itemset of ``db``.

    ``min_util`` and ``min_fre`` accept whatever the CLI accepts: an absolute
    amount ("15", "1.5") or a percentage of the dataset total ("2%"). Returns
    the same report dict the CLI's ``run`` subcommand prints, with ``patterns``
    always included.
    """
    return json.loads(
        _mine_json(db, str(min_util), str(min_fre), algo, timeout, oracle_limit)
    )
