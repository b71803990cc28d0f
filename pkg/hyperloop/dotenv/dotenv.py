from typing import Union, Dict
from pathlib import Path
import logging
import os

logger = logging.getLogger(__name__)

SEED_VARIABLE = 'HYPERLOOP_SEED'


def read(*, filepath: Union[Path, str]) -> Dict[str, str]:
    args: Dict[str, str] = {}

    try:
        with open(filepath, 'r', encoding='UTF-8') as infile:
            for line in infile:
                line = line.strip()

                if line.startswith('#'):
                    continue

                if not line:
                    continue

                key, value = line.split('=', 1)
                key = key.strip()
                value = value.strip().strip('"').strip("'")

                assert key

                args[key] = value
    except FileNotFoundError:
        return {}

    return args


def load(filepath: Union[Path, str] = './.env') -> None:
    args = read(filepath=filepath)

    for key, value in args.items():
        # variables already present in the environment win over the file
        os.environ.setdefault(key, value)

    if args:
        logger.debug('loaded %s from %s', sorted(args), filepath)


def seed(default: int = 0) -> int:
    """The seed for randomized property sampling."""
    raw = os.environ.get(SEED_VARIABLE)

    if raw is None or not raw.strip():
        return default

    try:
        return int(raw)
    except ValueError:
        logger.warning('ignoring non-integer %s=%r', SEED_VARIABLE, raw)
        return default
