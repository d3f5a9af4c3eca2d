import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path

from ggdkit.geometry import CostCoefficients
from ggdkit.serialization import to_json

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_UNPROVEN = 3
EXIT_BAD_INPUT = 4


class UsageError(Exception):
    """Flags that parse but cannot be honoured; reported with exit code 2."""


class ExceptionCounterByType:
    """A context manager that counts exceptions by type.

    Exceptions increment the provided counter, whose last label's name
    must match the `type_label` argument.

    In other words:

    c = Counter('ggdkit_cli_errors_total', 'Counter of exceptions',
                ['command', 'type'])
    with ExceptionCounterByType(c, extra_labels={'command': 'ggd'}):
        run_ggd(args)
    """

    def __init__(self, counter, type_label="type", extra_labels=None):
        self._counter = counter
        self._type_label = type_label
        self._labels = dict(extra_labels or {})  # Copy labels since we modify them.

    def __enter__(self):
        pass

    def __exit__(self, typ, value, traceback):
        if typ is not None and not issubclass(typ, SystemExit):
            self._labels.update({self._type_label: typ.__name__})
            self._counter.labels(**self._labels).inc()


def sha256_file(path):
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def coefficients(args):
    try:
        return CostCoefficients(c_v=args.cv, c_e=args.ce)
    except ValueError as e:
        raise UsageError(str(e)) from e


@dataclass
class RunReport:
    """What a command did: its arguments, inputs, numbers and files written."""

    command: list
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    solver: dict = field(default_factory=dict)
    elapsed: float = 0.0
    messages: list = field(default_factory=list)

    def add_input(self, name, path):
        self.inputs[name] = {"path": str(path), "sha256": sha256_file(path)}

    def add_output(self, name, path):
        self.outputs[name] = str(Path(path))

    def to_dict(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "outputs": self.outputs,
            "solver": self.solver,
            "elapsed": self.elapsed,
            "messages": self.messages,
        }

    def to_json(self):
        return to_json(self.to_dict())

    def format(self, messages=True):
        lines = list(self.messages) if messages else []
        for section in ("results", "solver", "outputs"):
            for key, value in _flatten(getattr(self, section)):
                lines.append(f"{key}: {_human(value)}")
        return "\n".join(lines)


def _flatten(mapping, prefix=""):
    for key in sorted(mapping):
        value = mapping[key]
        if isinstance(value, dict):
            yield from _flatten(value, f"{prefix}{key}.")
        else:
            yield f"{prefix}{key}", value


def _human(value):
    if isinstance(value, float) and math.isfinite(value):
        return f"{value:.6g}"
    if value is None:
        return "-"
    return str(value)
