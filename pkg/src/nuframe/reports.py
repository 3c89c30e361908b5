"""Report assembly and schema validation for the CLI.

Reports are plain dicts rendered through ``canonical_dumps`` so identical
inputs and flags produce byte-identical files.  Provenance carries the
library version, the grid and tolerance knobs that shaped the numbers,
and a sha256 of every input file; nothing time- or host-dependent goes
in.  Each report kind has a shipped JSON schema under ``schemas/``.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

import jsonschema

from . import __version__


def file_sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return "sha256:" + digest.hexdigest()


def provenance(inputs: dict[str, str], **knobs) -> dict:
    return {
        "library": "nuframe",
        "version": __version__,
        "inputs": {name: file_sha256(path) for name, path in inputs.items()},
        **knobs,
    }


def load_schema(kind: str) -> dict:
    ref = resources.files("nuframe").joinpath(f"schemas/{kind}.schema.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def validate_report(report: dict, kind: str) -> None:
    """Raise jsonschema.ValidationError when the report drifts from its schema."""
    jsonschema.validate(report, load_schema(kind))


def sig9(x: float) -> str:
    """Human-facing rounding: 9 significant digits."""
    return format(float(x), ".9g")
