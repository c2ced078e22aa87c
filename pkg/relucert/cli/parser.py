"""
relucert/cli/parser.py - Network and property file formats

Network file (`relunet v1`):
    relunet v1
    n0 n1 ... nk            # layer sizes, n0 = input_dim
    w1 ... w_nin b          # one row per node, layer by layer
Lines starting with '#' are comments.

Property file: one query per line,
    local-label x0=<csv> delta=<f> [norm=<linf|l1>]
    local-conf  x0=<csv> delta=<f> eps=<f> [norm=...]
    global      lo=<csv> hi=<csv> delta=<f> eps=<f> [norm=...] [parts=<n>]
    max-delta   x0=<csv> kind=<label|conf> [eps=<f>] [norm=...] prec=<f> hi=<f>
"""
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple
import logging

import numpy as np

from relucert.config.settings import PropertyParams
from relucert.core.errors import InputError
from relucert.core.network import Activation, Box, Layer, Network
from relucert.core.spec import Norm, PropertyKind, RobustnessSpec

logger = logging.getLogger(__name__)

NETWORK_HEADER = "relunet v1"


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror or exc}", path=path) from None


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


# ─────────────────────────────────────────────────────────────────────
# Networks
# ─────────────────────────────────────────────────────────────────────

def _floats(fields: List[str], path: Optional[str], number: int) -> List[float]:
    try:
        values = [float(f) for f in fields]
    except ValueError:
        raise InputError(f"not a number in {' '.join(fields)!r}", path, number) from None
    if not all(np.isfinite(values)):
        raise InputError("values must be finite", path, number)
    return values


def parse_network_text(text: str, path: Optional[str] = None) -> Network:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != NETWORK_HEADER:
        raise InputError(f"expected header {NETWORK_HEADER!r}", path, lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise InputError("missing layer sizes", path, lines[0][0])

    number, sizes_line = lines[1]
    try:
        sizes = [int(f) for f in sizes_line.split()]
    except ValueError:
        raise InputError(f"layer sizes must be integers: {sizes_line!r}", path, number) from None
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise InputError("need an input size and at least one positive layer size", path, number)

    rows = iter(lines[2:])
    layers = []
    for k in range(1, len(sizes)):
        fan_in, fan_out = sizes[k - 1], sizes[k]
        weights, biases = [], []
        for _ in range(fan_out):
            try:
                number, line = next(rows)
            except StopIteration:
                raise InputError(f"layer {k - 1} has fewer than {fan_out} rows", path,
                                 lines[-1][0]) from None
            values = _floats(line.split(), path, number)
            if len(values) != fan_in + 1:
                raise InputError(f"expected {fan_in} weights and a bias, got {len(values)} values",
                                 path, number)
            weights.append(values[:-1])
            biases.append(values[-1])
        activation = Activation.IDENTITY if k == len(sizes) - 1 else Activation.RELU
        layers.append(Layer(np.array(weights), np.array(biases), activation))

    extra = next(rows, None)
    if extra is not None:
        raise InputError("unexpected row after the last layer", path, extra[0])
    net = Network(tuple(layers), sizes[0])
    logger.debug("parsed network %s: sizes %s", path or "<text>", sizes)
    return net


def parse_network(path: str) -> Network:
    """
    Read a `relunet v1` file.

    Raises:
        InputError: unreadable file, bad header, or a row of the wrong length
            (the message names the line)
    """
    return parse_network_text(_read(path), path)


def serialize_network(net: Network) -> str:
    """Write net in `relunet v1`; floats use repr so parsing restores them exactly."""
    out = [NETWORK_HEADER, " ".join(str(s) for s in (net.input_dim,) + tuple(layer.out_size for layer in net.layers))]
    for layer in net.layers:
        for weights, bias in zip(layer.weights, layer.biases):
            out.append(" ".join(repr(float(v)) for v in list(weights) + [bias]))
    return "\n".join(out) + "\n"


# ─────────────────────────────────────────────────────────────────────
# Property files
# ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class MaxDeltaRequest:
    x0: np.ndarray
    kind: PropertyKind
    epsilon: Optional[float]
    norm: Norm
    precision: float
    delta_hi: float


@dataclass(frozen=True)
class SpecLine:
    """One parsed property line: either a spec or a max-delta request."""

    line: int
    spec: Optional[RobustnessSpec] = None
    max_delta: Optional[MaxDeltaRequest] = None
    parts: int = 1


KEYS = {
    'local-label': ({'x0', 'delta'}, {'norm'}),
    'local-conf': ({'x0', 'delta', 'eps'}, {'norm'}),
    'global': ({'lo', 'hi', 'delta', 'eps'}, {'norm', 'parts'}),
    'max-delta': ({'x0', 'kind', 'prec', 'hi'}, {'norm', 'eps'}),
}


class _Fields:
    def __init__(self, values: Dict[str, str], path: Optional[str], number: int):
        self.values, self.path, self.number = values, path, number

    def error(self, message: str) -> InputError:
        return InputError(message, self.path, self.number)

    def real(self, key: str) -> Optional[float]:
        if key not in self.values:
            return None
        try:
            return float(self.values[key])
        except ValueError:
            raise self.error(f"{key} is not a number: {self.values[key]!r}") from None

    def vector(self, key: str) -> np.ndarray:
        return np.array(_floats(self.values[key].split(","), self.path, self.number))

    def norm(self, default: str) -> Norm:
        try:
            return Norm(self.values.get('norm', default))
        except ValueError:
            raise self.error(f"unknown norm {self.values['norm']!r}") from None


def _parse_spec_line(number: int, line: str, path: Optional[str], default_norm: str) -> SpecLine:
    head, *pairs = line.split()
    if head not in KEYS:
        raise InputError(f"unknown property kind {head!r}", path, number)
    values = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not value:
            raise InputError(f"expected key=value, got {pair!r}", path, number)
        values[key] = value
    required, optional = KEYS[head]
    missing = required - values.keys()
    if missing:
        raise InputError(f"{head} needs {', '.join(sorted(missing))}", path, number)
    unknown = values.keys() - required - optional
    if unknown:
        raise InputError(f"{head} does not take {', '.join(sorted(unknown))}", path, number)

    fields = _Fields(values, path, number)
    norm = fields.norm(default_norm)
    try:
        if head == 'max-delta':
            kind_name = values['kind']
            kinds = {'label': PropertyKind.LOCAL_LABEL, 'conf': PropertyKind.LOCAL_CONFIDENCE}
            if kind_name not in kinds:
                raise fields.error(f"kind must be label or conf, got {kind_name!r}")
            request = MaxDeltaRequest(fields.vector('x0'), kinds[kind_name], fields.real('eps'),
                                      norm, fields.real('prec'), fields.real('hi'))
            if request.kind == PropertyKind.LOCAL_CONFIDENCE and request.epsilon is None:
                raise fields.error("kind=conf needs eps")
            return SpecLine(number, max_delta=request)

        delta, eps = fields.real('delta'), fields.real('eps')
        if head == 'global':
            domain = Box(fields.vector('lo'), fields.vector('hi'))
            spec = RobustnessSpec(PropertyKind.GLOBAL_CONFIDENCE, delta, norm, domain=domain, epsilon=eps)
            parts = values.get('parts', '1')
            if not parts.isdigit() or int(parts) < 1:
                raise fields.error(f"parts must be a positive integer, got {parts!r}")
            return SpecLine(number, spec=spec, parts=int(parts))
        kind = PropertyKind.LOCAL_LABEL if head == 'local-label' else PropertyKind.LOCAL_CONFIDENCE
        return SpecLine(number, spec=RobustnessSpec(kind, delta, norm, x0=fields.vector('x0'), epsilon=eps))
    except InputError as exc:
        if exc.line is not None:
            raise
        raise InputError(str(exc), path, number) from None


def parse_spec_text(text: str, path: Optional[str] = None,
                    default_norm: str = PropertyParams.DEFAULT_NORM) -> List[SpecLine]:
    return [_parse_spec_line(n, line, path, default_norm) for n, line in _content_lines(text)]


def parse_spec_file(path: str, default_norm: str = PropertyParams.DEFAULT_NORM) -> List[SpecLine]:
    """Read a property file; lines without norm= use default_norm."""
    return parse_spec_text(_read(path), path, default_norm)
