"""
Command-line commands
"""

import importlib
import importlib.metadata
import typing

from .command import Command

__all__ = [
    "Command",

    "register",
    "run"
]

__commands__ = [
]
"""Commands that are available for running from the command-line

Packages link first-level sub-commands into the root command through
'entry_points' entries, whose value names the module and command class:

    [options.entry_points]
    fusetree.commands =
        fit = fusetree.model.__cmd__:FitCommand

The commands used should not take any parameters for instantiation.
"""

_BuiltIn = [
    "fusetree.model.__cmd__:FitCommand",
    "fusetree.model.__cmd__:PredictCommand",
    "fusetree.model.__cmd__:SummarizeCommand",
    "fusetree.bench.__cmd__:SimulateCommand",
    "fusetree.cache.__cmd__:CacheCommand",
]
"""Our own commands, for when the package isn't installed"""

def register(command: typing.Union[Command, type]) -> None:
    """Registers a new sub-command

    :param command:
        The command to register

    :return none:
    """

    __commands__.append(command)

def _loadCommand(value: str) -> typing.Optional[type]:
    """Loads a command class from a 'module:Class' string

    :param value:
        The string

    :return None:
        Badly formatted or missing
    :return type:
        The command class
    """

    fields = value.split(":")

    if len(fields) != 2:
        return None

    module = importlib.import_module(fields[0])

    return getattr(module, fields[1], None)

def _discoverCommands(entryPointsName: str) -> None:
    """Discovers registered commands

    :param entryPointsName:
        The entry points to discover sub-commands for

    :return none:
    """

    entryPointsName += ".commands"

    entryPoints = importlib.metadata.entry_points()

    if hasattr(entryPoints, "select"):
        values = [entryPoint.value for entryPoint in entryPoints.select(group = entryPointsName)]
    else:
        values = [entryPoint.value for entryPoint in entryPoints.get(entryPointsName, [])]

    if len(values) < 1:
        values = _BuiltIn

    for value in values:
        command = _loadCommand(value = value)

        if command is None:
            continue

        if any(existing is command for existing in __commands__):
            continue

        register(command = command)

def run(args: typing.List[object] = None, entryPointsName: str = None) -> int:
    """Runs our commands with arguments

    If arguments are not provided, sys.argv will be automatically used.

    :param args:
        The arguments to run with
    :param entryPointsName:
        The entry points namespace to find sub-commands in

    :return int:
        The result of the command
    """

    if entryPointsName is None:
        entryPointsName = "fusetree"

    _discoverCommands(entryPointsName = entryPointsName)

    return Command(
        name = "fusetree",
        help = "Grows, fuses and evaluates survival trees",
        subCommands = list(__commands__)
    ).parseAndRun(args = args)
