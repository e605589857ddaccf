"""Versioned JSON envelopes carrying a reproducibility manifest."""

import json
import sys
from datetime import datetime, timezone

from . import __version__

SCHEMA = "covgamma/1"


def make_manifest(command: str, inputs: dict, budgets: dict, seed=None) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "budgets": budgets,
        "seed": seed,
        "version": __version__,
        "python": sys.version.split()[0],
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def envelope(kind: str, payload: dict, manifest: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, "manifest": manifest, **payload}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def strip_volatile(doc):
    """Drop fields that legitimately differ between identical runs."""
    if isinstance(doc, dict):
        return {k: strip_volatile(v) for k, v in doc.items()
                if k not in ("timestamp", "runtime")}
    if isinstance(doc, list):
        return [strip_volatile(v) for v in doc]
    return doc
