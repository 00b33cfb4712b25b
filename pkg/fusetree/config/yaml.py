"""
A YAML settings file
"""

import yaml

try:
    from yaml import CSafeLoader as Loader

except ImportError:
    from yaml import SafeLoader as Loader

from fusetree.error import ConfigError

class YamlBackend:
    """A YAML settings file layered under command-line overrides

    Documents map section names to key-value mappings. A document wrapped in a
    top-level 'root' mapping reads the same.
    """

    def __init__(self, filename: str = "fusetree.yaml") -> None:
        """Creates a new YAML backend

        :param self:
            Self
        :param filename:
            The YAML file to use

        :return none:
        """

        self._filename = filename

    @property
    def filename(self) -> str:
        return self._filename

    def getDict(self) -> dict:
        """Gets a file's dictionary of data

        :param self:
            Self

        :raise ConfigError:
            Failed to read or parse the file

        :return dict:
            The dictionary of data, under a 'root' key
        """

        try:
            with open(self._filename, "r", encoding = "utf-8") as configFile:
                data = yaml.load(configFile, Loader = Loader)

        except OSError as ex:
            raise ConfigError(f"Failed to load file {self._filename}: {ex}")

        except yaml.YAMLError as ex:
            raise ConfigError(f"Failed to parse file {self._filename}: {ex}")

        if data is None:
            data = {}

        if not isinstance(data, dict):
            raise ConfigError(f"File {self._filename} doesn't hold a mapping")

        if (len(data) == 1) and isinstance(data.get("root"), dict):
            return data

        return {"root": data}

