import logging
import os
from typing import Sequence

import numpy as np
from omegaconf import DictConfig, OmegaConf

from .algebra.matrix import Matrix
from .algebra.rings import RingDescriptor
from .algebra.linalg import fix_basis
from .factor.certificate import IdempotentFactorization
from .factor.dvd import factor_singular_dvd
from .factor.field import factor_block_diagonal, factor_singular_field
from .monoid.preorder import FiniteMonoid, PreorderView
from .oracle.brute import (MonoidSnapshot, VerificationReport, idempotent_depth,
                           min_lengths_over, singular_monoid, snapshot_of,
                           verify_factorization)
from .utils.errors import HypothesisFailed
from .utils.sampling import random_singular

CONFIG_PATH = os.path.join(os.path.dirname(__file__), 'config', 'default.yaml')


def load_config(config: DictConfig | dict | None = None) -> DictConfig:
    r"""Packaged defaults merged with ``config``."""
    cfg = OmegaConf.load(CONFIG_PATH)
    if config is not None:
        cfg = OmegaConf.merge(cfg, config)
    return cfg


class Factorizer:
    r"""Entry point tying rings, factorizers, preorder engine and oracle together.

    Args:
        config (omegaconf.DictConfig | dict | None): overrides of
            ``config/default.yaml``.
    """

    def __init__(self, config: DictConfig | dict | None = None):
        self.config = load_config(config)
        logging.basicConfig(level=getattr(logging, str(self.config.logging.level).upper(), logging.INFO))
        self.logger = logging.getLogger(__name__)

    def _monoid_kwargs(self) -> dict:
        cfg = self.config.preorder
        return {'exhaustive_limit': cfg.exhaustive_assoc_limit,
                'samples': cfg.assoc_samples, 'seed': cfg.seed}

    def factor(self, a: Matrix) -> IdempotentFactorization:
        r"""Fields go to the field factorizer, Z_(p) to the DVD factorizer."""
        if a.ring.is_field:
            result = factor_singular_field(a)
        else:
            result = factor_singular_dvd(a)
        self.logger.log(logging.DEBUG, f'{a.n}×{a.n} over {a.ring}: {result.length} factors (bound {result.bound})')
        return result

    def factor_blocks(self, blocks: Sequence[Matrix]) -> IdempotentFactorization:
        return factor_block_diagonal(blocks)

    def verify(self, target: Matrix, factors: Sequence[Matrix], bound: int | None = None,
               *, coprimitive: bool = True) -> VerificationReport:
        r"""Independent re-check of a factorization.

        With ``coprimitive`` every factor must have rank ``n - 1``; pass
        ``False`` for block-diagonal results, whose factors keep the other
        blocks intact.
        """
        return verify_factorization(target, factors, target.n - 1 if coprimitive else None, bound)

    def snapshot(self, q: int | None = None, n: int | None = None,
                 monoid: FiniteMonoid | None = None) -> MonoidSnapshot:
        if monoid is not None:
            return snapshot_of(monoid)
        return singular_monoid(q, n, self.config.oracle.max_elements, **self._monoid_kwargs())

    def cayley(self, payload: dict) -> FiniteMonoid:
        return FiniteMonoid.from_json(payload, **self._monoid_kwargs())

    def analyze(self, snapshot: MonoidSnapshot, degree: int | None = None) -> dict:
        r"""Quarks, irreducibles, heights and depth of a monoid, with bound checks.

        Every check is a boolean under ``checks``; failing ones are logged
        at WARNING.
        """
        s = int(degree or self.config.analyze.degree)
        monoid = snapshot.monoid
        view = PreorderView(monoid)
        nonunits = np.flatnonzero(view.nonunits)
        quarks = sorted(view.quarks())
        irreducible = view.irreducible_mask(s)
        depth, generated = idempotent_depth(snapshot)
        coprimitive = ([i for i in range(snapshot.size) if snapshot.idempotent[i] and snapshot.ranks[i] == snapshot.n - 1]
                       if snapshot.ranks is not None else None)
        quark_lengths = min_lengths_over(monoid, view.heights == 1)
        irreducible_lengths = min_lengths_over(monoid, irreducible)

        irreducible_ok, quark_ok = True, True
        for x in nonunits:
            h = int(view.heights[x])
            irreducible_ok &= (len(view.factor_into_irreducibles(int(x), s)) <= s ** (h - 1)
                               and 0 < irreducible_lengths[x] <= s ** (h - 1))
            try:
                factors = view.factor_into_quarks(int(x), s)
            except HypothesisFailed as e:
                self.logger.log(logging.WARNING, f'quark factorization of {monoid.labels[x]} failed: {e}')
                quark_ok = False
                continue
            quark_ok &= (monoid.product(factors) == x and len(factors) <= (s - 1) * h - (s - 2)
                         and 0 < quark_lengths[x] <= (s - 1) * h - (s - 2))
        checks = {
            'heights_agree': bool(np.array_equal(view.heights, snapshot.heights)),
            'irreducible_bound': bool(irreducible_ok),
            'quark_bound': bool(quark_ok),
            'generated': generated,
        }
        if coprimitive is not None:
            checks['quarks_are_coprimitive'] = quarks == coprimitive
            fix_dims = np.array([snapshot.fix_dimension(i) for i in range(snapshot.size)])
            checks['height_is_codim_fix'] = bool(np.array_equal(snapshot.heights, snapshot.n - fix_dims))
            checks['sharp'] = depth == snapshot.n
            checks['factorizer_not_below_oracle'] = self._field_lengths_ok(snapshot)
        for name, ok in checks.items():
            if not ok:
                self.logger.log(logging.WARNING, f'analysis check {name} failed')
        report = {
            'size': snapshot.size,
            'degree': s,
            'depth': depth,
            'max_min_length': int(snapshot.min_lengths.max()),
            'quarks': [monoid.labels[i] for i in quarks],
            'irreducibles': [monoid.labels[i] for i in np.flatnonzero(irreducible)],
            'max_height': int(view.heights.max()),
            'heights': {monoid.labels[i]: int(h) for i, h in enumerate(view.heights)},
            'associativity_sampled': monoid.associativity_sampled,
            'checks': checks,
        }
        self.logger.log(logging.INFO, f'analyzed monoid of size {snapshot.size}: depth {depth}, '
                        f'{len(quarks)} quarks, max height {report["max_height"]}')
        return report

    def _field_lengths_ok(self, snapshot: MonoidSnapshot) -> bool:
        for i in range(1, snapshot.size):
            result = factor_singular_field(snapshot.matrix(i))
            if result.length < snapshot.min_lengths[i] or result.length > snapshot.n - fix_basis(result.target).k:
                return False
        return True

    def random_batch(self, ring: RingDescriptor, n: int | None = None, count: int | None = None,
                     seed: int | None = None) -> list[Matrix]:
        cfg = self.config.batch
        rng = np.random.default_rng(cfg.seed if seed is None else seed)
        return [random_singular(ring, n or cfg.size, rng, cfg.max_valuation, cfg.density)
                for _ in range(cfg.count if count is None else count)]
