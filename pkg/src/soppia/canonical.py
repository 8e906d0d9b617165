"""Canonical JSON: UTF-8, sorted keys, no insignificant whitespace.

Used wherever byte-identical output matters: the store's on-disk files,
the CLI's machine-readable output, and the HTTP envelope.
"""

from __future__ import annotations

import json


def canonical_json(value: object) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
