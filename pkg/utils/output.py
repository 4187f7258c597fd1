#!/usr/bin/env python3

import re
import sys
from collections.abc import Mapping

_CODES = {'red': 31, 'green': 32, 'yellow': 33, 'blue_light': 36, 'reset': 0}
_ESCAPE = re.compile(r'(\x9B|\x1B\[)[0-?]*[ -\/]*[@-~]')


class ANSI(Mapping):
    r"""Escape codes by colour name; empty strings while colour is off.

    Colour starts on when ``--color`` is in ``sys.argv`` and follows
    :meth:`switch` afterwards.
    """

    def __init__(self):
        self.switch('--color' in sys.argv)

    def switch(self, color: bool):
        self._codes = {name: f'\033[{code}m' if color else '' for name, code in _CODES.items()}

    def __getitem__(self, name: str) -> str:
        return self._codes[name]

    def __iter__(self):
        return iter(self._codes)

    def __len__(self) -> int:
        return len(self._codes)


ansi = ANSI()


def remove_ansi(s: str) -> str:
    return _ESCAPE.sub('', s)


def get_ansi_len(s: str) -> int:
    r"""Number of invisible escape characters in ``s``."""
    return len(s) - len(remove_ansi(s))


def status(ok: bool) -> str:
    return '{green}ok{reset}'.format(**ansi) if ok else '{red}FAIL{reset}'.format(**ansi)


def prints(*args: str, indent: int = 0, file=None):
    r"""Print to stderr (or ``file``) with every line indented by ``indent`` spaces."""
    pad = ' ' * indent
    print(*(pad + str(arg).replace('\n', '\n' + pad) for arg in args),
          file=sys.stderr if file is None else file)
