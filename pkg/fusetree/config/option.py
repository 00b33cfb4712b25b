"""
A configuration option
"""

import functools
import typing

from fusetree.error import ConfigError

@functools.total_ordering
class Option:
    """A typed configuration value

    An option may restrict its value to a set of choices or to a closed
    range, and may allow None when it stands for a setting that can be off.
    """

    @staticmethod
    def toBool(value: typing.Union[bool, str]) -> bool:
        """Converts a value to a boolean

        :param value:
            The value to convert

        :raise ConfigError:
            Invalid boolean-like value

        :return bool:
            The boolean
        """

        if isinstance(value, bool):
            return value

        if str(value).lower() in ["yes", "y", "true", "t", "1", "on"]:
            return True

        if str(value).lower() in ["no", "n", "false", "f", "0", "off"]:
            return False

        raise ConfigError(f"Failed to convert '{value}' to a boolean")

    def __init__(
        self,
        name: str,
        value: object = None,
        type: type = None,
        choices: typing.List[object] = None,
        minimum: float = None,
        maximum: float = None,
        exclusive: bool = False,
        nullable: bool = False
    ) -> None:
        """Creates a new configuration option

        :param self:
            Self
        :param name:
            The name of this option
        :param value:
            The default value of this option
        :param type:
            The type of value this contains
        :param choices:
            The available values to choose from
        :param minimum:
            The smallest allowed value
        :param maximum:
            The largest allowed value
        :param exclusive:
            Whether the bounds themselves are disallowed
        :param nullable:
            Whether None is allowed

        :raise ConfigError:
            Invalid default

        :return none:
        """

        self._name = name
        self._type = type
        self._choices = choices
        self._minimum = minimum
        self._maximum = maximum
        self._exclusive = exclusive
        self._nullable = nullable

        self._value = None

        if (value is not None) or not nullable:
            self.value = value

    def __lt__(self, other: "Option") -> bool:
        return self._name < other._name

    @property
    def name(self) -> str:
        return self._name

    @property
    def type(self) -> typing.Optional[type]:
        return self._type

    @property
    def choices(self) -> typing.Optional[typing.List[object]]:
        return self._choices

    @property
    def value(self) -> object:
        return self._value

    def _getValue(self, newValue: object) -> object:
        """Gets a proper value from an incoming value

        :param self:
            Self
        :param newValue:
            The value to use to get a proper value from

        :raise ConfigError:
            Failed to get value

        :return object:
            The value
        """

        if newValue is None:
            if self._nullable:
                return None

            raise ConfigError(f"Option '{self._name}' needs a value")

        if isinstance(newValue, str) and self._nullable and (newValue.lower() in ["none", "null", "off", ""]):
            return None

        if self._type is None:
            return newValue

        if self._type is bool:
            return Option.toBool(value = newValue)

        if isinstance(newValue, self._type):
            return newValue

        # Integers are fine wherever floats are wanted
        if (self._type is float) and isinstance(newValue, int):
            return float(newValue)

        if isinstance(newValue, str):
            try:
                return self._type(newValue)

            except (TypeError, ValueError):
                pass

        raise ConfigError(f"Invalid value {newValue!r} for option '{self._name}' of type {self._type.__name__}")

    @value.setter
    def value(self, newValue: object) -> None:
        """Sets the value of an option

        :param self:
            Self
        :param newValue:
            The value to set the option to

        :raise ConfigError:
            Invalid value

        :return none:
        """

        newValue = self._getValue(newValue = newValue)

        if newValue is not None:
            if (self._choices is not None) and (newValue not in self._choices):
                raise ConfigError(f"Invalid value {newValue!r} for option '{self._name}', choose from {self._choices}")

            if self._minimum is not None:
                if (newValue < self._minimum) or (self._exclusive and (newValue == self._minimum)):
                    raise ConfigError(f"Option '{self._name}' must be {'above' if self._exclusive else 'at least'} {self._minimum}, got {newValue}")

            if self._maximum is not None:
                if (newValue > self._maximum) or (self._exclusive and (newValue == self._maximum)):
                    raise ConfigError(f"Option '{self._name}' must be {'below' if self._exclusive else 'at most'} {self._maximum}, got {newValue}")

        self._value = newValue

    def __str__(self) -> str:
        return f"{self._name}: {self._value}"
