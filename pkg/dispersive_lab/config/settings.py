#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import configparser
import logging
import os

from ..error import LabInvalidArgumentError

logger = logging.getLogger(__name__)

DEFAULT_MAX_GRID = 2 ** 22


class LabSettings:
    """Runtime settings shared by the numerical operations (worker threads and grid size cap).

    This class should not be instantiated directly, but the :obj:`dispersive_lab.config.LabSettings.build`
    method must be used. For details on how to provide each value, see that method.

    Attributes:
        threads: maximum number of worker threads used by the parallelized sweeps.
        max_grid: maximum number of samples a single grid or spectrum may hold.
    """

    def __init__(self, threads: int, max_grid: int = DEFAULT_MAX_GRID) -> None:

        if not isinstance(threads, int) or isinstance(threads, bool):
            raise LabInvalidArgumentError('threads must be int')

        if threads < 1:
            raise LabInvalidArgumentError('threads must be >= 1')

        if not isinstance(max_grid, int) or isinstance(max_grid, bool):
            raise LabInvalidArgumentError('max_grid must be int')

        if max_grid < 2:
            raise LabInvalidArgumentError('max_grid must be >= 2')

        self.threads = threads
        self.max_grid = max_grid

    def __eq__(self, other):
        if not isinstance(other, LabSettings):
            return NotImplemented
        return self.threads == other.threads and self.max_grid == other.max_grid

    def __str__(self):
        return f'<LabSettings threads={self.threads} max_grid={self.max_grid}>'

    @classmethod
    def build(cls, threads: int = None, max_grid: int = None) -> 'LabSettings':
        """Instances a :obj:`dispersive_lab.config.LabSettings` with one of the provided methods.

        The priority of settings loading is the following:
            - if the value is provided as a parameter, this one is used.
            - then the value is tried to be extracted from the environment variables ```DISPERSIVE_LAB_THREADS``` and ```DISPERSIVE_LAB_MAX_GRID```.
            - then the value is tried to be extracted from the file ```~/.dispersive_lab.ini``` located in the user's directory.
            - finally the defaults are taken: the number of cpus and 2^22 samples.

        Example:
            [DEFAULT]
            threads=4
            max_grid=1048576

        Args:
            threads: maximum number of worker threads.
            max_grid: maximum number of samples of a single grid.

        Returns:
            An instanced settings object.
        """

        for f in [cls._load_env, cls._load_home_file]:
            if threads is not None and max_grid is not None:
                break
            loaded_threads, loaded_max_grid = f()
            threads = threads if threads is not None else loaded_threads
            max_grid = max_grid if max_grid is not None else loaded_max_grid

        if threads is None:
            threads = os.cpu_count() or 1

        if max_grid is None:
            max_grid = DEFAULT_MAX_GRID

        return LabSettings(threads=cls._to_int(threads, 'threads'), max_grid=cls._to_int(max_grid, 'max_grid'))

    @classmethod
    def _to_int(cls, value, name: str) -> int:
        if isinstance(value, int):
            return value
        try:
            return int(str(value).strip())
        except ValueError:
            raise LabInvalidArgumentError(f'{name} must be an integer, got {value!r}')

    @classmethod
    def _load_env(cls) -> tuple:
        """Loads the settings values from the environment variables ```DISPERSIVE_LAB_THREADS``` and ```DISPERSIVE_LAB_MAX_GRID```.

        Returns:
            The value of both variables, None for the variables not declared in environment.
        """

        return os.environ.get('DISPERSIVE_LAB_THREADS', None), os.environ.get('DISPERSIVE_LAB_MAX_GRID', None)

    @classmethod
    def _load_home_file(cls) -> tuple:
        """Loads the settings values from the file located in the user's home directory.

        The file loaded is the one located in ```~/.dispersive_lab.ini```, and must be a .ini file with the following format:

        Example:
            [DEFAULT]
            threads=4
            max_grid=1048576

        Returns:
            The threads and max_grid values stored in the file, None for the missing ones.
        """

        home_folder = os.path.expanduser("~")
        settings_file = f'{home_folder}/.dispersive_lab.ini'

        if not os.path.isfile(settings_file):
            return None, None

        config = configparser.ConfigParser()
        try:
            config.read(settings_file)
        except configparser.Error as e:
            logger.warning('ignoring malformed settings file %s: %s', settings_file, e)
            return None, None

        return config['DEFAULT'].get('threads', None), config['DEFAULT'].get('max_grid', None)


def resolve_threads(threads: int = None) -> int:
    """Returns the number of worker threads to use, resolving ``None`` through :obj:`dispersive_lab.config.LabSettings.build`.
    """

    return LabSettings.build(threads=threads).threads


def resolve_max_grid(max_grid: int = None) -> int:
    """Returns the grid size cap, resolving ``None`` through :obj:`dispersive_lab.config.LabSettings.build`.
    """

    return LabSettings.build(max_grid=max_grid).max_grid
