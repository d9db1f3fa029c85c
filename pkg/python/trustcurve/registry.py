"""Built-in curves shipped as package data (data/<name>.curve)."""
from dataclasses import dataclass

import pkg_resources

from .curvefile import CurveFile
from .errors import InvalidArgument


SUFFIX = '.curve'


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    text: str
    curve_file: CurveFile

    @property
    def provenance(self):
        return self.curve_file.provenance


    @property
    def domain(self):
        return self.curve_file.domain


def list_registry():
    names = [f[:-len(SUFFIX)] for f in pkg_resources.resource_listdir('trustcurve', 'data') if f.endswith(SUFFIX)]
    return sorted(names)


def load_registry_entry(name):
    if name not in list_registry():
        raise InvalidArgument(f'no registry curve named {name!r}; known: {", ".join(list_registry())}')
    text = pkg_resources.resource_string('trustcurve', f'data/{name}{SUFFIX}').decode('ascii')
    return RegistryEntry(name, text, CurveFile.parse(text, fixture=True))
