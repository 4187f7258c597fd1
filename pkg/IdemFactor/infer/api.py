import logging
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field
from typing import Any, Iterable

from ..algebra.linalg import fix_basis
from ..algebra.matrix import Matrix
from ..algebra.rings import RingDescriptor
from ..core import Factorizer
from ..utils.errors import IdemFactorError, InvalidInput
from ..utils.io_utils import (digest, factorization_from_json, factorization_to_json,
                              matrix_from_json, matrix_to_json, snapshot_to_json)

__all__ = ['RunReport', 'run_factor', 'run_verify', 'run_analyze', 'run_batch', 'random_items']

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    r"""Outcome of one command.

    Attributes:
        command (str): the subcommand.
        digest (str): sha256 of the canonical input JSON.
        outputs (dict): factorization, analysis or batch payload.
        verification (dict | None): oracle verification summary.
        status (int): ``0`` verified, ``1`` a check failed, ``2`` invalid input.
    """
    command: str
    digest: str
    outputs: dict = field(default_factory=dict)
    verification: dict | None = None
    status: int = 0

    def to_json(self) -> dict:
        return {'command': self.command, 'input_digest': self.digest, 'outputs': self.outputs,
                'verification': self.verification, 'status': self.status}


def run_factor(factorizer: Factorizer, payload: dict, ring: RingDescriptor | None = None) -> RunReport:
    r"""Factor the matrix of ``payload`` and re-verify it with the oracle.

    Raises:
        InvalidInput: malformed or non-singular input.
        MathError: the construction failed its own certificate.
    """
    target = matrix_from_json(payload, ring)
    result = factorizer.factor(target)
    check = factorizer.verify(target, result.factors, result.bound)
    return RunReport('factor', digest(matrix_to_json(target)), factorization_to_json(result),
                     check.to_json(), 0 if check.ok else 1)


def run_verify(factorizer: Factorizer, payload: dict) -> RunReport:
    target, factors, bound = factorization_from_json(payload)
    check = factorizer.verify(target, factors, bound)
    if not check.ok:
        logger.log(logging.WARNING, f'verification failed: {"; ".join(check.failures)}')
    return RunReport('verify', digest(payload), {}, check.to_json(), 0 if check.ok else 1)


def run_analyze(factorizer: Factorizer, field_size: int | None = None, size: int | None = None,
                cayley: dict | None = None, degree: int | None = None,
                export: bool = False) -> RunReport:
    r"""Analyze ``M_size(F_field)^#`` or the monoid of a Cayley-table payload.

    With ``export`` the snapshot (table plus per-element annotations) is
    included in the outputs.
    """
    if cayley is not None:
        snapshot = factorizer.snapshot(monoid=factorizer.cayley(cayley))
        source = cayley
    else:
        if field_size is None or size is None:
            raise InvalidInput('analyze needs --field and --size, or --cayley')
        snapshot = factorizer.snapshot(field_size, size)
        source = {'field': field_size, 'size': size}
    report = factorizer.analyze(snapshot, degree)
    if export:
        report['snapshot'] = snapshot_to_json(snapshot)
    return RunReport('analyze', digest(source), report, None,
                     0 if all(report['checks'].values()) else 1)


def _factor_item(name: str, payload: dict, ring_json: dict | None) -> dict:
    item: dict[str, Any] = {'name': name}
    try:
        target = matrix_from_json(payload, None if ring_json is None else RingDescriptor.from_json(ring_json))
        factorizer = Factorizer({'logging': {'level': 'WARNING'}})
        result = factorizer.factor(target)
        check = factorizer.verify(target, result.factors, result.bound)
    except InvalidInput as e:
        item.update(status=2, error=str(e))
        return item
    except IdemFactorError as e:
        item.update(status=1, error=str(e))
        return item
    item.update(n=target.n, d=fix_basis(target).k, length=result.length, bound=result.bound,
                failures=check.failures, status=0 if check.ok else 1)
    return item


def run_batch(factorizer: Factorizer, items: Iterable[tuple[str, dict]],
              ring: RingDescriptor | None = None, jobs: int | None = None,
              metric_logger=None) -> RunReport:
    r"""Factor and verify many matrices; item order is kept for any ``jobs``.

    Args:
        items: ``(name, matrix JSON)`` pairs.
        ring (RingDescriptor | None): overrides the ring of every item.
        jobs (int | None): worker processes. Defaults to ``batch.jobs``.
        metric_logger (utils.logger.MetricLogger | None): progress display;
            receives ``length`` and ``slack`` updates.
    """
    items = list(items)
    jobs = jobs or factorizer.config.batch.jobs
    ring_json = None if ring is None else ring.to_json()
    args = ([name for name, _ in items], [payload for _, payload in items], [ring_json] * len(items))
    steps = range(len(items))
    if metric_logger is not None:
        steps = metric_logger.log_every(steps, header='batch')
    results: list[dict] = []
    with ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else nullcontext() as pool:
        pending = pool.map(_factor_item, *args) if pool is not None else map(_factor_item, *args)
        for _ in steps:
            item = next(pending)
            results.append(item)
            if metric_logger is not None and item['status'] == 0:
                metric_logger.update(length=item['length'], slack=item['bound'] - item['length'])
    failed = [item['name'] for item in results if item['status'] != 0]
    summary = {
        'count': len(results),
        'verified': len(results) - len(failed),
        'failed': failed,
        'max_length': max((item['length'] for item in results if 'length' in item), default=0),
    }
    logger.log(logging.INFO, f'batch of {summary["count"]}: {summary["verified"]} verified')
    status = max((item['status'] for item in results), default=0)
    return RunReport('batch', digest([payload for _, payload in items]),
                     {'items': results}, summary, status)


def random_items(factorizer: Factorizer, ring: RingDescriptor, n: int | None = None,
                 count: int | None = None, seed: int | None = None) -> list[tuple[str, dict]]:
    matrices: list[Matrix] = factorizer.random_batch(ring, n, count, seed)
    return [(f'random-{i:04d}', matrix_to_json(m)) for i, m in enumerate(matrices)]
