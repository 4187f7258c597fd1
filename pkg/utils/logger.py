#!/usr/bin/env python3

import statistics
import time
from collections import deque
from collections.abc import Generator, Iterable, Sized
from dataclasses import dataclass, field
from typing import TypeVar
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing import Any as Self

from tqdm import tqdm as tqdm_class

from .output import ansi, get_ansi_len, prints

__all__ = ['SmoothedValue', 'MetricLogger']

T = TypeVar('T')


@dataclass
class SmoothedValue:
    r"""Running statistics of one per-item batch quantity.

    Attributes:
        name (str): meter name.
        window_size (int | None): how many recent values :attr:`median`
            looks at; unbounded when ``None``.
        fmt (str): pattern of ``str(self)``; may use ``name``, ``count``,
            ``total``, ``median``, ``global_avg``, ``min``, ``max`` and
            ``last_value``.
    """
    name: str = ''
    window_size: int | None = None
    fmt: str = '{global_avg:.3f}'
    count: int = 0
    total: float = 0.0
    min: float = 0.0
    max: float = 0.0
    recent: deque = field(init=False, repr=False)

    def __post_init__(self):
        self.recent = deque(maxlen=self.window_size)

    def update(self, value: float, n: int = 1) -> Self:
        self.min = value if not self.count else min(self.min, value)
        self.max = value if not self.count else max(self.max, value)
        self.recent.append(value)
        self.count += n
        self.total += value * n
        return self

    def reset(self) -> Self:
        self.recent.clear()
        self.count, self.total, self.min, self.max = 0, 0.0, 0.0, 0.0
        return self

    @property
    def median(self) -> float:
        return statistics.median(self.recent) if self.recent else 0.0

    @property
    def global_avg(self) -> float:
        return self.total / self.count if self.count else 0.0

    @property
    def last_value(self) -> float:
        return self.recent[-1] if self.recent else 0.0

    def __str__(self) -> str:
        stats = {key: getattr(self, key) for key in
                 ('name', 'count', 'total', 'median', 'global_avg', 'min', 'max', 'last_value')}
        return self.fmt.format(**stats)

    def __format__(self, format_spec: str) -> str:
        return str(self)


class MetricLogger:
    r"""Named meters shown next to a tqdm bar while a batch runs.

    Args:
        delimiter (str): separator between rendered meters. Defaults to ``''``.
        meter_length (int): visible width of each rendered meter.
            Defaults to ``20``.
        tqdm (bool): show a progress bar. Defaults to ``True``.
        indent (int): indent of the closing summary line. Defaults to ``0``.
        **formats: ``name=fmt`` of the meters to create up front.
    """

    def __init__(self, delimiter: str = '', meter_length: int = 20, tqdm: bool = True,
                 indent: int = 0, **formats: str):
        self.meters: dict[str, SmoothedValue] = {
            name: SmoothedValue(name, fmt=fmt or '{global_avg:.3f}') for name, fmt in formats.items()}
        self.delimiter = delimiter
        self.meter_length = meter_length
        self.tqdm = tqdm
        self.indent = indent

    def update(self, n: int = 1, **values: float) -> Self:
        for name, value in values.items():
            self.meters.setdefault(name, SmoothedValue(name)).update(float(value), n=n)
        return self

    def reset(self) -> Self:
        for meter in self.meters.values():
            meter.reset()
        return self

    def __getattr__(self, name: str) -> SmoothedValue:
        meters = vars(self).get('meters', {})
        if name not in meters:
            raise AttributeError(f"'{type(self).__name__}' object has no attribute '{name}'")
        return meters[name]

    def render(self, strip: bool = True, **items) -> str:
        r"""``name: value`` cells padded to :attr:`meter_length` visible characters."""
        cells = []
        for name, value in items.items():
            cell = '{green}{name}{reset}: {value}'.format(name=name, value=value, **ansi)
            cells.append(cell.ljust(self.meter_length + get_ansi_len(cell)))
        line = self.delimiter.join(cells)
        return line.rstrip() if strip else line

    def __str__(self) -> str:
        return self.render(**self.meters)

    def summary(self) -> dict[str, dict[str, float]]:
        return {name: {'count': m.count, 'mean': m.global_avg, 'min': m.min, 'max': m.max}
                for name, m in self.meters.items()}

    def log_every(self, iterable: Iterable[T], header: str = '') -> Generator[T, None, None]:
        r"""Yield the items of ``iterable``; the caller updates meters in between.

        The bar description tracks the meters, and a final line with the
        meters and the elapsed time is printed to stderr.
        """
        bar = None
        if self.tqdm:
            total = len(iterable) if isinstance(iterable, Sized) else None
            position = '{blue_light}[ {red}{{n_fmt}}{blue_light} / {red}{{total_fmt}}{blue_light} ]{reset}'.format(**ansi)
            bar = tqdm_class(iterable, total=total, leave=False,
                             bar_format=f'{position} {{desc}}{{elapsed}}<{{remaining}}')
        start = time.time()
        for item in bar if bar is not None else iterable:
            yield item
            if bar is not None:
                bar.set_description_str(self.render(strip=False, **self.meters))
        elapsed = tqdm_class.format_interval(time.time() - start)
        if header:
            header = header.ljust(30 + get_ansi_len(header))
        prints(self.delimiter.join([header, self.render(**self.meters, time=elapsed)]), indent=self.indent)
