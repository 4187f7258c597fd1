import hashlib
import json
import logging
import os
from typing import Any

from ..algebra.matrix import Matrix
from ..algebra.rings import RingDescriptor
from ..factor.certificate import IdempotentFactorization
from ..utils.errors import MalformedMatrix

__all__ = ['read_json', 'write_json', 'dumps', 'digest', 'list_inputs',
           'matrix_to_json', 'matrix_from_json', 'factorization_to_json',
           'factorization_from_json', 'snapshot_to_json']


def dumps(payload: Any) -> str:
    r"""Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def digest(payload: Any) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(',', ':'), ensure_ascii=False)
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def read_json(path: str) -> Any:
    r"""Load a JSON file.

    Raises:
        MalformedMatrix: the file is not valid JSON.
    """
    with open(path, encoding='utf-8') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedMatrix(f'{path} is not valid JSON: {e}') from None


def write_json(path: str, payload: Any):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(payload))


def list_inputs(directory: str, suffix: str = '.json') -> list[str]:
    r"""Input files of ``directory`` in name order."""
    logger = logging.getLogger(__name__)

    files = sorted(os.path.join(directory, f) for f in os.listdir(directory) if f.endswith(suffix))
    if not files:
        logger.log(logging.WARNING, f'No {suffix} files found in the directory: {directory}')
    return files


def matrix_to_json(matrix: Matrix) -> dict:
    return {'ring': matrix.ring.to_json(), 'n': matrix.n, 'entries': matrix.rows()}


def matrix_from_json(payload: dict, ring: RingDescriptor | None = None) -> Matrix:
    r"""Read matrix JSON.

    ``ring`` replaces the descriptor of the payload, and is required when
    the payload carries none.

    Raises:
        MalformedMatrix: missing fields, or ``n`` disagrees with the entries.
    """
    if not isinstance(payload, dict) or 'entries' not in payload:
        raise MalformedMatrix('matrix JSON needs "entries"')
    if ring is None:
        if 'ring' not in payload:
            raise MalformedMatrix('matrix JSON has no "ring" and none was given')
        ring = RingDescriptor.from_json(payload['ring'])
    entries = payload['entries']
    if not isinstance(entries, list) or not all(isinstance(row, list) for row in entries):
        raise MalformedMatrix('"entries" must be a list of rows')
    matrix = Matrix(ring, entries)
    if 'n' in payload and payload['n'] != matrix.n:
        raise MalformedMatrix(f'"n" is {payload["n"]} but the entries are {matrix.n}×{matrix.n}')
    return matrix


def factorization_to_json(factorization: IdempotentFactorization) -> dict:
    return {
        'target': matrix_to_json(factorization.target),
        'factors': [matrix_to_json(f) for f in factorization.factors],
        'bound': factorization.bound,
        'checks': factorization.certificate.to_json(),
    }


def factorization_from_json(payload: dict) -> tuple[Matrix, list[Matrix], int | None]:
    r"""``(target, factors, bound)`` of a factorization file; checks are not trusted."""
    if not isinstance(payload, dict) or not {'target', 'factors'} <= payload.keys():
        raise MalformedMatrix('factorization JSON needs "target" and "factors"')
    if not isinstance(payload['factors'], list):
        raise MalformedMatrix('"factors" must be a list of matrices')
    target = matrix_from_json(payload['target'])
    factors = [matrix_from_json(f) for f in payload['factors']]
    bound = payload.get('bound')
    if bound is not None and (isinstance(bound, bool) or not isinstance(bound, int)):
        raise MalformedMatrix(f'"bound" must be an integer, got {bound!r}')
    return target, factors, bound


def snapshot_to_json(snapshot) -> dict:
    r"""Cayley-table JSON of a :class:`~IdemFactor.oracle.MonoidSnapshot` plus
    per-element ``rank``, ``idempotent``, ``min_len`` and ``height``."""
    payload = snapshot.monoid.to_json()
    payload['elements'] = [{
        'rank': None if snapshot.ranks is None else int(snapshot.ranks[i]),
        'idempotent': bool(snapshot.idempotent[i]),
        'min_len': int(snapshot.min_lengths[i]),
        'height': int(snapshot.heights[i]),
    } for i in range(snapshot.size)]
    return payload
