"""
A dictionary-like configuration
"""

import functools
import typing

from fusetree.error import ConfigError

from .option import Option
from .yaml import YamlBackend

@functools.total_ordering
class Config:
    """A named collection of options and sub-configurations

    Options are read with config["name"], which gives the option's value, and
    sub-configurations with the same syntax, which gives the sub-config.
    """

    def __init__(self, name: str = "root") -> None:
        """Creates a new configuration

        :param self:
            Self
        :param name:
            The name of the configuration level

        :return none:
        """

        self._name = name

        self._subConfigs = []
        self._options = []

        self._backend = None

    @property
    def name(self) -> str:
        return self._name

    @property
    def subConfigs(self) -> typing.List["Config"]:
        return self._subConfigs

    @property
    def options(self) -> typing.List[Option]:
        return self._options

    def add(self, thing: typing.Union[Option, "Config", YamlBackend]) -> object:
        """Adds something to this configuration

        :param self:
            Self
        :param thing:
            The option, sub-configuration or backend to add

        :raise ValueError:
            Thing cannot be added to configuration

        :return object:
            The added thing
        """

        if hasattr(thing, "name") and (thing.name in self):
            raise ValueError(f"{type(thing).__name__} '{thing.name}' already exists")

        if isinstance(thing, Option):
            self._options.append(thing)

        elif isinstance(thing, Config):
            self._subConfigs.append(thing)

        elif isinstance(thing, YamlBackend):
            self._backend = thing

        else:
            raise ValueError(f"Can't add {type(thing)} to config")

        return thing

    def __lt__(self, other: "Config") -> bool:
        return self._name < other._name

    def __len__(self) -> int:
        """Gets the number of options in our full configuration tree

        :param self:
            Self

        :return int:
            The number of options
        """

        return len(self._options) + sum(len(subConfig) for subConfig in self._subConfigs)

    def __getitem__(self, name: str) -> object:
        """Gets an option's value or a sub-configuration

        :param self:
            Self
        :param name:
            The name of the option or sub-configuration

        :raise KeyError:
            Not found

        :return object:
            The option's value or the sub-configuration
        """

        for option in self._options:
            if option.name == name:
                return option.value

        for subConfig in self._subConfigs:
            if subConfig.name == name:
                return subConfig

        raise KeyError(f"Unable to find \"{name}\" in config {self._name}")

    def __setitem__(self, name: str, newValue: object) -> None:
        """Sets an option

        :param self:
            Self
        :param name:
            The name of the option to set
        :param newValue:
            The value to set the option to

        :raise KeyError:
            Option not found
        :raise ConfigError:
            Invalid value

        :return none:
        """

        for option in self._options:
            if option.name == name:
                option.value = newValue
                return

        raise KeyError(f"Unable to find \"{name}\" in config {self._name}")

    def __contains__(self, item: object) -> bool:
        for thing in self._options + self._subConfigs:
            if (item is thing) or (item == thing.name):
                return True

        return False

    def __iter__(self) -> typing.Iterator[typing.Union[Option, "Config"]]:
        for option in self._options:
            yield option

        for subConfig in self._subConfigs:
            yield subConfig

    def __str__(self) -> str:
        string = f"config {self._name}:"

        for option in self._options:
            string += f"\n    option {option}"

        for subConfig in self._subConfigs:
            for line in f"{subConfig}".split("\n"):
                string += f"\n    {line}"

        return string

    def toDict(self) -> dict:
        """Gets a dictionary of our contents

        :param self:
            Self

        :return dict:
            Option values, and sub-configurations as nested dictionaries
        """

        data = {option.name: option.value for option in self._options}

        for subConfig in self._subConfigs:
            data[subConfig.name] = subConfig.toDict()

        return data

    def loadFromDict(self, data: dict) -> None:
        """Loads values from a dictionary

        :param self:
            Self
        :param data:
            The values, sub-configurations as nested dictionaries

        :raise ConfigError:
            Unknown keys, mismatched nesting or invalid values

        :return none:
        """

        for key, value in data.items():
            if key not in self:
                raise ConfigError(f"Unknown option '{key}' in config {self._name}")

            if isinstance(self[key], Config):
                if not isinstance(value, dict):
                    raise ConfigError(f"Item '{key}' is a section but got a value")

                self[key].loadFromDict(data = value)

            else:
                self[key] = value

    def override(self, overrides: typing.Dict[str, object]) -> None:
        """Sets values by dotted names

        :param self:
            Self
        :param overrides:
            Values keyed by 'section.option' names; None values are skipped

        :raise ConfigError:
            Unknown names or invalid values

        :return none:
        """

        for name, value in overrides.items():
            if value is None:
                continue

            *sections, key = name.split(".")

            config = self

            try:
                for section in sections:
                    config = config[section]

                if isinstance(config[key], Config):
                    raise ConfigError(f"'{name}' is a section")

            except KeyError:
                raise ConfigError(f"Unknown option '{name}'")

            config[key] = value

    def load(self) -> bool:
        """Loads configuration values from our settings file

        :param self:
            Self

        :raise ConfigError:
            Invalid configuration

        :return True:
            Configuration loaded from the settings file
        :return False:
            No settings file added
        """

        if self._backend is None:
            return False

        data = self._backend.getDict()

        if "root" in data:
            self.loadFromDict(data = data["root"])

        return True
