"""
Deterministic JSON and CSV output.

JSON reports carry exact cyclotomic coefficients plus a rounded complex value;
CSV rows carry one complex value per embedding. Both start from the same header
block (field, modulus, generator, N) so stored values stay interpretable.
"""

import csv
import dataclasses
import json
import os
from typing import Any, Dict, Iterable, List

from .cyclotomic import CycFrac, CycInt
from .field import FiniteField

SCHEMA_VERSION = 1

CSV_HEADER = ['p', 'e', 'q', 'r', 'chi1', 'chi2', 'i', 're', 'im', 'abs', 'embedding']

_DIGITS = 12


def header_block(field: FiniteField) -> Dict[str, Any]:
    return {
        'schema': SCHEMA_VERSION,
        'p': field.p,
        'e': field.e,
        'q': field.q,
        'modulus': list(field.modulus),
        'generator': field.format_element(field.generator),
        'N': field.cyclotomic_order,
    }


def _complex(z: complex) -> List[float]:
    return [round(z.real, _DIGITS) + 0.0, round(z.imag, _DIGITS) + 0.0]


def to_jsonable(obj: Any) -> Any:
    """Recursively convert exact values, complex numbers and dataclasses into JSON types."""
    if isinstance(obj, CycInt):
        return {'coeffs': [str(c) for c in obj.coeffs], 'complex': _complex(obj.embed_complex())}
    if isinstance(obj, CycFrac):
        return {'num': [str(c) for c in obj.num.coeffs], 'den': [str(c) for c in obj.den.coeffs],
                'complex': _complex(obj.embed_complex())}
    if isinstance(obj, complex):
        return _complex(obj)
    if isinstance(obj, float):
        return round(obj, _DIGITS)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, 'to_json') and not isinstance(obj, type):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, 'item'):
        return obj.item()
    return obj


def dumps(report: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(report), indent=2)


def write_json(path: str, report: Dict[str, Any]) -> str:
    """Write a report as indented JSON; returns the path."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.write(dumps(report))
        f.write('\n')
    return path


def csv_rows(field: FiniteField, r: str, chi1: int, chi2: int, i: int, value: CycInt) -> List[List[Any]]:
    """One row per complex embedding of a value."""
    rows = []
    for sigma in value.ring.embedding_indices():
        z = value.embed_complex(sigma)
        re_, im_ = _complex(z)
        rows.append([field.p, field.e, field.q, r, chi1, chi2, i, re_, im_, round(abs(z), _DIGITS), sigma])
    return rows


def write_csv(path: str, rows: Iterable[List[Any]]) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row)
    return path
