"""
A command for managing the fusetree cache
"""

import argparse

import fusetree.cache as cache
import fusetree.command as command

class WhereCommand(command.Command):
    """Gets the cache location on the file system
    """

    def runCommand(self, args: argparse.Namespace) -> int:
        self.stdout.info(cache.getCache().directory)

        return 0

class ListCommand(command.Command):
    """Lists cached items and their values
    """

    def runCommand(self, args: argparse.Namespace) -> int:
        """Runs the command

        :param self:
            Self
        :param args:
            Our arguments

        :return int:
            Our result
        """

        store = cache.getCache(namespace = None)

        if store.backend is None:
            self.stdout.error("Failed to get cache backend")

            return 1

        for key in store.keys():
            self.stdout.info(f"{key}: {store.backend.get(key)}")

        return 0

class ClearCommand(command.Command):
    """Removes every cached item
    """

    def runCommand(self, args: argparse.Namespace) -> int:
        store = cache.getCache(namespace = None)

        if store.backend is None:
            self.stdout.error("Failed to get cache backend")

            return 1

        self.stdout.info(f"Removed {store.clear()} items")

        return 0

class CacheCommand(command.Command):
    """Manages the cache of censoring calibrations
    """

    def __init__(self) -> None:
        super().__init__(
            subCommands = [
                WhereCommand,
                ListCommand,
                ClearCommand
            ]
        )
