"""The shared TOML input document.

Grammar (every section optional; subcommands name the ones they need)::

    [options]
    k_max = 3                 # O_delta generators used by surgery-q
    holonomy_window = 2       # holonomy shifts tried by `equal`
    n_max = 10                # series length for zeta / closed-orbits
    reversal_sign = -1        # color of a reversed edge: sign * p(t^-1)

    [monodromy]
    genus = 1
    matrix = [[2, 1], [1, 1]]
    # or, instead of matrix: ordered transvections, each [i, j, s] meaning I + s*E_ij (1-based)
    # or an explicit elementary matrix
    slides = [[1, 2, 1], [[1, 0], [1, 1]]]

    [fiber]
    points = [["m", 0], ["a", 1], ["b", 1], ["M", 2]]

    [transition]
    A0 = [[1]]
    A1 = [[2, 1], [1, 1]]
    A2 = [[1]]

    [chain_complex]
    model = "torus"           # build from [monodromy]; or give the data below
    dims_a = [1, 2, 1]
    dims_b = [1, 2, 1]
    phi0_a = {1 = [[0, 0]], 2 = [[0], [0]]}
    phi0_b = {...}
    phi1 = {0 = [[0]], 1 = [[-1, -1], [-1, 0]], 2 = [[0]]}

    [diagrams]
    sum = [{coeff = "1", vertices = 2, edges = [[1, 2], [1, 2], [1, 2]],
            cyclic = [[1, 2, 3], [-1, -2, -3]], colors = ["1", "t", "t^-1"]}]
    other = [...]             # second operand of `equal`

    [surgery]
    n = 1
    delta = "t^-1 - 3 + t"    # optional; default from [monodromy]
    Delta = "..."             # optional; default from [monodromy]
    k_max = 3                 # optional; overrides [options]
    [[surgery.y]]             # one table per Y factor
    terms = [{coeff = 1, legs = ["1+y1:1", "1+y2:2", "1+y3:3"]}]
    [[surgery.chords]]        # one table per chord factor
    terms = [{x = "1+y1:1", y = "2-z1:1", matrix = "direct", row = 1, col = 1},
             {x = "2+w1:1", y = "1-x1:1", coeff = "t/(1 - 3*t + t^2)"}]

Leg labels read ``<surgery index><side><point id>:<gradient index>``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from ..alpaths import ALChainComplex, FiberCriticalData, TransitionMatrix, torus_model
from ..diagrams import Conventions, DiagramError, DiagramSum, sum_from_records
from ..monodromy import MonodromyData, MonodromyError, _int_det
from ..ratfun import LaurentPoly, RatFunSyntaxError, parse_ratfun
from ..surgery import ChordSum, Route, SurgeryError, YSum, chord_sum_build, parse_label, y_sum_build

KNOWN_SECTIONS = ("options", "monodromy", "fiber", "transition", "chain_complex", "diagrams", "surgery")


class DocumentError(ValueError):
    """Invalid input; ``where`` names the section and field."""

    def __init__(self, where: str, message: str):
        super().__init__(message)
        self.where = where
        self.message = message

    def __str__(self) -> str:
        return f"[{self.where}] {self.message}"


@dataclass(frozen=True)
class Options:
    k_max: int = 3
    holonomy_window: int = 2
    n_max: int = 10
    reversal_sign: int = -1

    @property
    def conventions(self) -> Conventions:
        return Conventions(self.reversal_sign)


ENV_PREFIX = "FIBERCOUNT_"


def resolve_options(doc_opts: dict, flags: dict[str, int | None], environ=os.environ) -> Options:
    """Precedence: command-line flag, then environment variable, then [options], then default."""
    opts = Options()
    for name in ("k_max", "holonomy_window", "n_max", "reversal_sign"):
        value = doc_opts.get(name)
        env = environ.get(ENV_PREFIX + name.upper())
        if env is not None:
            try:
                value = int(env)
            except ValueError:
                raise DocumentError(f"env.{ENV_PREFIX}{name.upper()}", f"not an integer: {env!r}") from None
        if flags.get(name) is not None:
            value = flags[name]
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            raise DocumentError(f"options.{name}", f"expected an integer, got {value!r}")
        opts = replace(opts, **{name: value})
    if opts.k_max < 1 or opts.n_max < 1 or opts.holonomy_window < 0:
        raise DocumentError("options", "k_max and n_max must be positive, holonomy_window nonnegative")
    if opts.reversal_sign not in (1, -1):
        raise DocumentError("options.reversal_sign", "must be 1 or -1")
    return opts


# -- helpers -----------------------------------------------------------------------

def _int_matrix(x: Any, where: str, square: bool = True) -> list[list[int]]:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise DocumentError(where, "expected a list of rows")
    if any(isinstance(v, bool) or not isinstance(v, int) for r in x for v in r):
        raise DocumentError(where, "entries must be integers")
    if x and len({len(r) for r in x}) != 1:
        raise DocumentError(where, "rows have different lengths")
    if square and any(len(r) != len(x) for r in x):
        raise DocumentError(where, "matrix must be square")
    return [list(r) for r in x]


def _laurent(x: Any, where: str) -> LaurentPoly:
    try:
        f = parse_ratfun(str(x) if not isinstance(x, str) else x)
    except RatFunSyntaxError as exc:
        raise DocumentError(where, str(exc)) from None
    if f.den != LaurentPoly.const(1):
        raise DocumentError(where, f"expected a Laurent polynomial, got {x!r}")
    return f.num


# -- monodromy ---------------------------------------------------------------------

def _elementary(spec: Any, n: int | None, where: str) -> list[list[int]]:
    if isinstance(spec, list) and len(spec) == 3 and all(isinstance(v, int) for v in spec):
        if n is None:
            raise DocumentError(where, "transvection triples need [monodromy].genus to fix the size")
        i, j, s = spec
        if not (1 <= i <= n and 1 <= j <= n) or i == j or s not in (1, -1):
            raise DocumentError(where, f"bad transvection {spec}; need distinct 1-based i, j and s = +-1")
        m = [[int(a == b) for b in range(n)] for a in range(n)]
        m[i - 1][j - 1] = s
        return m
    m = _int_matrix(spec, where)
    size = len(m)
    if n is not None and size != n:
        raise DocumentError(where, f"generator is {size}x{size}, expected {n}x{n}")
    off = [(a, b) for a in range(size) for b in range(size) if m[a][b] != int(a == b)]
    if len(off) > 1 or (off and (off[0][0] == off[0][1] or abs(m[off[0][0]][off[0][1]]) != 1)):
        raise DocumentError(where, "not an elementary transvection matrix")
    return m


def monodromy_from_slides(generators: list, size: int | None = None) -> list[list[int]]:
    """Ordered product of elementary transvections; the empty product is the identity."""
    mats = [_elementary(g, size, f"monodromy.slides[{k}]") for k, g in enumerate(generators)]
    if not mats:
        if size is None:
            raise DocumentError("monodromy.slides", "empty slide list needs [monodromy].genus")
        return [[int(a == b) for b in range(size)] for a in range(size)]
    n = len(mats[0])
    out = [[int(a == b) for b in range(n)] for a in range(n)]
    for m in mats:
        if len(m) != n:
            raise DocumentError("monodromy.slides", "generators have different sizes")
        out = [[sum(out[a][c] * m[c][b] for c in range(n)) for b in range(n)] for a in range(n)]
    if n and _int_det(out) != 1:
        raise DocumentError("monodromy.slides", "product does not have determinant 1")
    return out


def _monodromy(sec: dict) -> MonodromyData:
    genus = sec.get("genus")
    if genus is not None and (isinstance(genus, bool) or not isinstance(genus, int)):
        raise DocumentError("monodromy.genus", "expected an integer")
    if "matrix" in sec and "slides" in sec:
        raise DocumentError("monodromy", "give either 'matrix' or 'slides', not both")
    if "matrix" in sec:
        A = _int_matrix(sec["matrix"], "monodromy.matrix")
    elif "slides" in sec:
        A = monodromy_from_slides(sec["slides"], None if genus is None else 2 * genus)
    else:
        raise DocumentError("monodromy", "missing 'matrix' or 'slides'")
    if genus is None:
        if len(A) % 2:
            raise DocumentError("monodromy.matrix", "size must be even")
        genus = len(A) // 2
    try:
        return MonodromyData(genus, tuple(map(tuple, A)))
    except MonodromyError as exc:
        raise DocumentError("monodromy.matrix", str(exc)) from None


# -- alpaths sections ----------------------------------------------------------------

def _fiber(sec: dict) -> FiberCriticalData:
    pts = sec.get("points")
    if not isinstance(pts, list) or not all(isinstance(p, list) and len(p) == 2 for p in pts):
        raise DocumentError("fiber.points", "expected a list of [id, index] pairs")
    try:
        return FiberCriticalData(tuple((p[0], p[1]) for p in pts))
    except (ValueError, TypeError) as exc:
        raise DocumentError("fiber.points", str(exc)) from None


def _transition(sec: dict) -> TransitionMatrix:
    blocks = []
    for i in range(3):
        key = f"A{i}"
        blocks.append(_int_matrix(sec.get(key, []), f"transition.{key}"))
    return TransitionMatrix(tuple(blocks))


def _maps(x: Any, where: str) -> dict[int, list[list[int]]]:
    if x is None:
        return {}
    if not isinstance(x, dict):
        raise DocumentError(where, "expected a table keyed by degree")
    out = {}
    for k, v in x.items():
        try:
            deg = int(k)
        except ValueError:
            raise DocumentError(where, f"degree key {k!r} is not an integer") from None
        out[deg] = _int_matrix(v, f"{where}.{k}", square=False)
    return out


def _chain_complex(sec: dict, mono: MonodromyData | None) -> ALChainComplex:
    if sec.get("model") is not None:
        if sec["model"] != "torus":
            raise DocumentError("chain_complex.model", f"unknown model {sec['model']!r}; only 'torus'")
        if mono is None:
            raise DocumentError("monodromy", "chain_complex.model = 'torus' needs a [monodromy] section")
        return torus_model(mono.A)
    for key in ("dims_a", "dims_b"):
        d = sec.get(key)
        if not isinstance(d, list) or len(d) != 3 or any(not isinstance(v, int) or v < 0 for v in d):
            raise DocumentError(f"chain_complex.{key}", "expected three nonnegative integers")
    try:
        return ALChainComplex(tuple(sec["dims_a"]), tuple(sec["dims_b"]),
                              _maps(sec.get("phi0_a"), "chain_complex.phi0_a"),
                              _maps(sec.get("phi0_b"), "chain_complex.phi0_b"),
                              _maps(sec.get("phi1"), "chain_complex.phi1"))
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError("chain_complex", str(exc)) from None


# -- diagrams and surgery -------------------------------------------------------------

def _diagram_sum(x: Any, where: str) -> DiagramSum:
    if not isinstance(x, list):
        raise DocumentError(where, "expected a list of term records")
    try:
        return sum_from_records(x)
    except (DiagramError, RatFunSyntaxError, KeyError, TypeError, ValueError) as exc:
        raise DocumentError(where, str(exc)) from None


@dataclass(frozen=True)
class SurgeryData:
    n: int
    ys: tuple[YSum, ...]
    cs: tuple[ChordSum, ...]
    delta: LaurentPoly | None = None
    Delta: LaurentPoly | None = None
    k_max: int | None = None


def _surgery(sec: dict, mono: MonodromyData | None) -> SurgeryData:
    n = sec.get("n", 1)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("surgery.n", "expected a positive integer")
    ys = []
    for a, fac in enumerate(sec.get("y", [])):
        where = f"surgery.y[{a}]"
        try:
            ys.append(y_sum_build((t.get("coeff", 1) if isinstance(t.get("coeff", 1), int) else str(t["coeff"]),
                                   t["legs"]) for t in fac.get("terms", [])))
        except (SurgeryError, KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DocumentError(where, f"bad Y term: {exc}") from None
    cs = []
    A = mono.A if mono is not None else None
    for a, fac in enumerate(sec.get("chords", [])):
        where = f"surgery.chords[{a}]"
        routes = []
        try:
            for t in fac.get("terms", []):
                if "coeff" in t:
                    routes.append(Route(parse_label(t["x"]), parse_label(t["y"]), coeff=str(t["coeff"])))
                else:
                    routes.append(Route(parse_label(t["x"]), parse_label(t["y"]), matrix=t.get("matrix"),
                                        row=int(t.get("row", 0)), col=int(t.get("col", 0))))
            if A is None and any(r.coeff is None for r in routes):
                raise DocumentError("monodromy", f"{where} routes chords through matrices but [monodromy] is missing")
            cs.append(chord_sum_build(A, routes))
        except DocumentError:
            raise
        except (SurgeryError, RatFunSyntaxError, KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DocumentError(where, f"bad chord term: {exc}") from None
    delta = _laurent(sec["delta"], "surgery.delta") if "delta" in sec else None
    Delta = _laurent(sec["Delta"], "surgery.Delta") if "Delta" in sec else None
    k_max = sec.get("k_max")
    if k_max is not None and (isinstance(k_max, bool) or not isinstance(k_max, int) or k_max < 1):
        raise DocumentError("surgery.k_max", "expected a positive integer")
    return SurgeryData(n, tuple(ys), tuple(cs), delta, Delta, k_max)


# -- the document ---------------------------------------------------------------------

@dataclass
class InputDocument:
    raw: dict = field(default_factory=dict)
    monodromy: MonodromyData | None = None
    fiber: FiberCriticalData | None = None
    transition: TransitionMatrix | None = None
    chain_complex: ALChainComplex | None = None
    diagrams: dict[str, DiagramSum] = field(default_factory=dict)
    surgery: SurgeryData | None = None

    def require(self, name: str):
        value = getattr(self, name) if name != "diagrams" else (self.diagrams or None)
        if value is None:
            raise DocumentError(name, f"missing [{name}] section")
        return value


def parse_document(text: str) -> InputDocument:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise DocumentError("document", f"TOML syntax error: {exc}") from None
    unknown = sorted(set(raw) - set(KNOWN_SECTIONS))
    if unknown:
        raise DocumentError(unknown[0], f"unknown section; known sections are {', '.join(KNOWN_SECTIONS)}")
    doc = InputDocument(raw=raw)
    if "monodromy" in raw:
        doc.monodromy = _monodromy(raw["monodromy"])
    if "fiber" in raw:
        doc.fiber = _fiber(raw["fiber"])
    if "transition" in raw:
        doc.transition = _transition(raw["transition"])
    if "chain_complex" in raw:
        doc.chain_complex = _chain_complex(raw["chain_complex"], doc.monodromy)
    if "diagrams" in raw:
        for key in ("sum", "other"):
            if key in raw["diagrams"]:
                doc.diagrams[key] = _diagram_sum(raw["diagrams"][key], f"diagrams.{key}")
    if "surgery" in raw:
        doc.surgery = _surgery(raw["surgery"], doc.monodromy)
    _cross_checks(doc)
    return doc


def _cross_checks(doc: InputDocument) -> None:
    if doc.fiber is not None and doc.transition is not None:
        try:
            doc.transition.check_against(doc.fiber)
        except ValueError as exc:
            raise DocumentError("transition", str(exc)) from None
    if doc.chain_complex is not None and doc.fiber is not None:
        counts = tuple(doc.fiber.count(i) for i in range(3))
        if doc.chain_complex.dims_a != counts and doc.chain_complex.dims_b != counts:
            raise DocumentError("chain_complex", f"neither dims_a nor dims_b matches the [fiber] index counts {counts}")


def load_document(path: str) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError("document", f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)
