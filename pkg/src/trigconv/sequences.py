"""Coefficient sequences, weights, sectors, and the family grammar.

The package works with one-sided sequences ``c_1, c_2, ...`` (explicit
arrays or pure generator functions of the index), two-sided exponential
coefficient collections ``(c_0, {c_n}, {c_-n})``, positive non-decreasing
weight sequences, and closed angular sectors

    K(theta0) = { z : |arg z| <= theta0 },   0 <= theta0 < pi/2,

with the convention that z = 0 belongs to every sector.  All generator
families are pure functions of the index, so a prefix computed twice is
bit-identical; randomized families derive every draw from an explicit
64-bit seed through the SplitMix64 finalizer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "SequenceError",
    "Sector",
    "in_sector",
    "sector_dominance_constant",
    "CoefficientSequence",
    "TwoSidedSequence",
    "WeightSequence",
    "FamilySpec",
    "parse_family_spec",
    "format_family_spec",
    "parse_weight_spec",
    "family_sequence",
    "sequence_from_text",
    "weight_from_spec",
    "unit_noise",
]

# Absolute angle tolerance (radians) for sector membership, and the relative
# tolerance used for monotonicity-style comparisons throughout the package.
# Both absorb generator round-off; see the individual checkers.
ANGLE_TOL = 1e-12
REL_TOL = 1e-12


class SequenceError(ValueError):
    """Malformed sequence input (wrong sign, wrong length, bad spec...)."""


# ---------------------------------------------------------------------------
# seeded noise: SplitMix64
# ---------------------------------------------------------------------------

_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_M1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_M2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(state: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer (Steele, Lea & Flood), vectorized over uint64."""
    z = state + _SM64_GAMMA
    z = (z ^ (z >> np.uint64(30))) * _SM64_M1
    z = (z ^ (z >> np.uint64(27))) * _SM64_M2
    return z ^ (z >> np.uint64(31))


def unit_noise(seed: int, n: np.ndarray) -> np.ndarray:
    """Deterministic noise u_n in [-1, 1), a pure function of (seed, n).

    Index n is folded into the SplitMix64 stream position so that values are
    stable under prefix growth: u_n never depends on how many indices were
    requested.
    """
    idx = np.asarray(n, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _SM64_GAMMA
        bits = _splitmix64(state)
    u01 = (bits >> np.uint64(11)).astype(float) * (2.0 ** -53)
    return 2.0 * u01 - 1.0


# ---------------------------------------------------------------------------
# sectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sector:
    """Closed sector K(theta0) around the positive real axis.

    theta0 is in radians and must satisfy 0 <= theta0 < pi/2; the dominance
    constant 1/cos(theta0) would blow up at pi/2.
    """

    theta0: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta0 < math.pi / 2):
            raise SequenceError(
                f"sector half-angle must lie in [0, pi/2); got {self.theta0!r}")


def in_sector(z: complex, sector: Sector, angle_tol: float = ANGLE_TOL) -> bool:
    """True iff z = 0 or |arg z| <= theta0 (principal-value two-argument
    arctangent), with an absolute angle tolerance for boundary round-off."""
    z = complex(z)
    if z == 0:
        return True
    return abs(math.atan2(z.imag, z.real)) <= sector.theta0 + angle_tol


def sector_dominance_constant(sector: Sector) -> float:
    """Smallest M with |z| <= M * Re z on K(theta0), namely 1/cos(theta0)."""
    return 1.0 / math.cos(sector.theta0)


# ---------------------------------------------------------------------------
# coefficient sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """A one-sided coefficient sequence, explicit or generated.

    kind      -- "explicit" (finite array) or "generator" (pure index map)
    label     -- canonical text form, used in manifests and reports
    n_start   -- index of the first stored value (1 throughout this package)
    is_real   -- real-valued flag; decides the dtype prefix() returns
    """

    label: str
    kind: str
    n_start: int = 1
    is_real: bool = True
    values: Optional[np.ndarray] = None
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- constructors -------------------------------------------------------

    @classmethod
    def explicit(cls, values, label: str = "", n_start: int = 1) -> "CoefficientSequence":
        arr = np.asarray(values)
        if arr.ndim != 1:
            raise SequenceError("explicit sequence must be one-dimensional")
        is_real = not np.iscomplexobj(arr) or bool(np.all(arr.imag == 0.0))
        arr = np.ascontiguousarray(arr.real if is_real else arr,
                                   dtype=float if is_real else complex)
        arr.setflags(write=False)
        if not label:
            label = f"explicit[{arr.shape[0]}]"
        return cls(label=label, kind="explicit", n_start=n_start,
                   is_real=is_real, values=arr)

    @classmethod
    def from_function(cls, label: str, fn: Callable[[np.ndarray], np.ndarray],
                      is_real: bool = True, n_start: int = 1) -> "CoefficientSequence":
        return cls(label=label, kind="generator", n_start=n_start,
                   is_real=is_real, fn=fn)

    # -- access -------------------------------------------------------------

    @property
    def length(self) -> Optional[int]:
        """Available length; None for an unbounded generator."""
        return None if self.kind == "generator" else int(self.values.shape[0])

    def prefix(self, N: int) -> np.ndarray:
        """First N values as a read-only array (float64 when real, else
        complex128); element j is the value at index n_start + j.

        Raises SequenceError("insufficient length ...") when an explicit
        sequence is shorter than N.  Generator prefixes are cached, and two
        computations of the same prefix are bit-identical because generators
        are pure.
        """
        N = int(N)
        if N < 0:
            raise SequenceError("prefix length must be nonnegative")
        if self.kind == "explicit":
            if N > self.values.shape[0]:
                raise SequenceError(
                    f"insufficient length: sequence {self.label!r} has "
                    f"{self.values.shape[0]} values, {N} requested")
            return self.values[:N]
        cached = self._cache.get("arr")
        if cached is None or cached.shape[0] < N:
            n = np.arange(self.n_start, self.n_start + N, dtype=np.int64)
            arr = np.asarray(self.fn(n))
            dtype = float if self.is_real else complex
            arr = np.ascontiguousarray(arr, dtype=dtype)
            if arr.shape != n.shape:
                raise SequenceError(
                    f"generator for {self.label!r} returned a wrong shape")
            if not np.all(np.isfinite(arr.view(float) if arr.dtype == complex else arr)):
                raise SequenceError(
                    f"generator for {self.label!r} produced non-finite values")
            arr.setflags(write=False)
            self._cache["arr"] = arr
            cached = arr
        return cached[:N]


@dataclass(frozen=True, eq=False)
class TwoSidedSequence:
    """Coefficients of an exponential series: c_0 plus {c_n} and {c_-n}."""

    c0: complex
    pos: CoefficientSequence
    neg: CoefficientSequence
    label: str = ""

    def __post_init__(self) -> None:
        lp, ln = self.pos.length, self.neg.length
        if lp is not None and ln is not None and lp != ln:
            raise SequenceError("two-sided halves have different lengths")

    @property
    def is_real(self) -> bool:
        return (self.pos.is_real and self.neg.is_real
                and complex(self.c0).imag == 0.0)

    def pair_sums(self, N: int) -> np.ndarray:
        """c_n + c_-n for n = 1..N (complex128)."""
        return self.pos.prefix(N).astype(complex) + self.neg.prefix(N)

    def pair_diffs(self, N: int) -> np.ndarray:
        """c_n - c_-n for n = 1..N (complex128)."""
        return self.pos.prefix(N).astype(complex) - self.neg.prefix(N)


# ---------------------------------------------------------------------------
# weight sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeightSequence:
    """A positive, non-decreasing weight R(1), R(2), ...

    Construction does not validate; ``validated_prefix`` checks positivity
    and monotonicity on the finite part and reports where (if anywhere) the
    values overflow to infinity, so growth like 2**n can still be examined
    on its finite range.
    """

    label: str
    fn: Callable[[np.ndarray], np.ndarray]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def prefix(self, N: int) -> np.ndarray:
        N = int(N)
        cached = self._cache.get("arr")
        if cached is None or cached.shape[0] < N:
            n = np.arange(1, N + 1, dtype=np.int64)
            arr = np.ascontiguousarray(self.fn(n), dtype=float)
            arr.setflags(write=False)
            self._cache["arr"] = arr
            cached = arr
        return cached[:N]

    def validated_prefix(self, N: int) -> tuple[np.ndarray, int]:
        """Return (values, finite_len) where values[:finite_len] are finite,
        positive, and non-decreasing within tolerance; raise otherwise."""
        with np.errstate(over="ignore"):
            vals = self.prefix(N)
        finite = np.isfinite(vals)
        finite_len = int(np.argmin(finite)) if not finite.all() else N
        head = vals[:finite_len]
        if np.any(head <= 0.0):
            raise SequenceError(f"weight {self.label!r} must be positive")
        if finite_len > 1:
            a, b = head[:-1], head[1:]
            slack = REL_TOL * np.maximum(np.abs(a), np.abs(b))
            if np.any(b < a - slack):
                raise SequenceError(
                    f"weight {self.label!r} must be non-decreasing")
        return vals, finite_len


# ---------------------------------------------------------------------------
# family grammar
# ---------------------------------------------------------------------------
#
# Canonical text form:  family_id(param1,param2,...)[@seed]
# Parameters are numbers or nested specs; "explicit:[v1,v2,...]" embeds a
# short explicit sequence.  Weight specs use the same grammar with their own
# id set (one, const(c), power(beta), log, exp2).

@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    params: tuple = ()
    seed: Optional[int] = None

    def __str__(self) -> str:
        return format_family_spec(self)


_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

_FAMILY_ALIASES = {"logdamped": "log_damped", "rbvblock": "rbv_block"}

_FAMILY_ARITY = {
    "harmonic": 1,
    "log_damped": 0,
    "quasimono": 2,
    "lacunary": 1,
    "rbv_block": 1,
    "orvqm": 2,
    "perturbed": 3,
    "zero": 0,
}

_WEIGHT_IDS = {"one", "const", "power", "log", "exp2"}


def _split_args(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


def _parse_number(token: str):
    try:
        if re.fullmatch(r"[+-]?\d+", token):
            return int(token)
        return float(token)
    except ValueError:
        return None


def _parse_value(token: str):
    num = _parse_number(token)
    if num is not None:
        return num
    return parse_family_spec(token)


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the canonical text form into a FamilySpec (recursively)."""
    text = text.strip()
    if text.startswith("explicit:"):
        body = text[len("explicit:"):].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise SequenceError(f"malformed explicit spec: {text!r}")
        items = _split_args(body[1:-1])
        vals = []
        for it in items:
            try:
                vals.append(complex(it.replace("i", "j")))
            except ValueError as exc:
                raise SequenceError(f"bad explicit value {it!r}") from exc
        return FamilySpec("explicit", tuple(vals))
    seed = None
    if "@" in text:
        head, _, tail = text.rpartition("@")
        try:
            seed = int(tail)
        except ValueError as exc:
            raise SequenceError(f"bad seed in spec {text!r}") from exc
        text = head.strip()
    if "(" in text:
        if not text.endswith(")"):
            raise SequenceError(f"malformed spec: {text!r}")
        head, body = text[:text.index("(")], text[text.index("(") + 1:-1]
        args = tuple(_parse_value(a) for a in _split_args(body))
    else:
        head, args = text, ()
    head = head.strip()
    head = _FAMILY_ALIASES.get(head, head)
    if not _ID_RE.match(head):
        raise SequenceError(f"bad family id {head!r}")
    if head in _FAMILY_ARITY and len(args) != _FAMILY_ARITY[head]:
        raise SequenceError(
            f"family {head!r} takes {_FAMILY_ARITY[head]} parameter(s), "
            f"got {len(args)}")
    if head not in _FAMILY_ARITY and head not in _WEIGHT_IDS:
        raise SequenceError(f"unknown family id {head!r}")
    return FamilySpec(head, args, seed)


def _format_value(v) -> str:
    if isinstance(v, FamilySpec):
        return format_family_spec(v)
    if isinstance(v, complex):
        return repr(v).strip("()")
    return repr(v)


def format_family_spec(spec: FamilySpec) -> str:
    if spec.family_id == "explicit":
        return "explicit:[" + ",".join(_format_value(v) for v in spec.params) + "]"
    out = spec.family_id
    if spec.params:
        out += "(" + ",".join(_format_value(v) for v in spec.params) + ")"
    if spec.seed is not None:
        out += f"@{spec.seed}"
    return out


# -- weight realization -----------------------------------------------------

def parse_weight_spec(text: str) -> WeightSequence:
    return weight_from_spec(parse_family_spec(text))


def weight_from_spec(spec: FamilySpec) -> WeightSequence:
    wid, params = spec.family_id, spec.params
    label = format_family_spec(spec)
    if wid == "one":
        return WeightSequence(label, lambda n: np.ones(n.shape[0]))
    if wid == "const":
        c = float(params[0]) if params else 1.0
        return WeightSequence(label, lambda n: np.full(n.shape[0], c))
    if wid == "power":
        beta = float(params[0])
        return WeightSequence(label, lambda n: n.astype(float) ** beta)
    if wid == "log":
        return WeightSequence(label, lambda n: np.log(n.astype(float) + 2.0))
    if wid == "exp2":
        return WeightSequence(label, lambda n: np.exp2(n.astype(float)))
    raise SequenceError(f"unknown weight id {wid!r}")


# -- family realization -----------------------------------------------------

def _block_exponent(n: np.ndarray) -> np.ndarray:
    """floor(log2 n) computed exactly from the float exponent."""
    return np.frexp(n.astype(float))[1] - 1


def _power_of_two_mask(n: np.ndarray) -> np.ndarray:
    return (n >= 2) & ((n & (n - 1)) == 0)


def family_sequence(spec: FamilySpec) -> CoefficientSequence:
    """Realize a FamilySpec as a CoefficientSequence."""
    fid, params, seed = spec.family_id, spec.params, spec.seed
    label = format_family_spec(spec)

    if fid == "explicit":
        return CoefficientSequence.explicit(np.asarray(params, dtype=complex),
                                            label=label)
    if fid == "zero":
        return CoefficientSequence.from_function(
            label, lambda n: np.zeros(n.shape[0]))
    if fid == "harmonic":
        p = float(params[0])
        return CoefficientSequence.from_function(
            label, lambda n: n.astype(float) ** (-p))
    if fid == "log_damped":
        return CoefficientSequence.from_function(
            label, lambda n: 1.0 / (n.astype(float) * np.log(n.astype(float) + 2.0)))
    if fid == "quasimono":
        # n**alpha times a blockwise-constant decreasing factor: the quotient
        # by n**alpha is non-increasing by construction, while the sequence
        # itself climbs inside each dyadic block when alpha > 0.
        alpha, p = float(params[0]), float(params[1])

        def qm(n):
            return n.astype(float) ** alpha * np.exp2(-p * _block_exponent(n))
        return CoefficientSequence.from_function(label, qm)
    if fid == "lacunary":
        # Supported on the powers of two with exponent k >= 1 (so b_1 = 0):
        # b_n = 2**(-alpha*k) when n = 2**k, else 0.
        alpha = float(params[0])

        def lac(n):
            k = _block_exponent(n)
            out = np.where(_power_of_two_mask(n), np.exp2(-alpha * k), 0.0)
            return out
        return CoefficientSequence.from_function(label, lac)
    if fid == "rbv_block":
        # Blockwise constant 2**(-p*k) on [2**k, 2**(k+1)) with a half-depth
        # notch at the block midpoint: total variation stays comparable to
        # the running value, but the sequence is not monotone and not
        # quasimonotone for any fixed exponent at large indices.
        p = float(params[0])

        def rbv(n):
            k = _block_exponent(n)
            base = np.exp2(-p * k)
            mid = (3 * 2 ** np.maximum(k - 1, 0)).astype(n.dtype)
            return np.where((n == mid) & (k >= 1), 0.5 * base, base)
        return CoefficientSequence.from_function(label, rbv)
    if fid == "orvqm":
        # Product R(n) * g_n with g from the base family; when the base is
        # non-increasing and null, the quotient by R(n) is non-increasing by
        # construction.
        weight = weight_from_spec(params[0])
        base = family_sequence(params[1])

        def prod(n):
            if n.shape[0] and (n[0] != 1 or n[-1] - n[0] + 1 != n.shape[0]):
                raise SequenceError("orvqm generator expects a 1-based prefix")
            N = int(n.shape[0])
            return weight.prefix(N) * base.prefix(N)
        return CoefficientSequence.from_function(label, prod,
                                                 is_real=base.is_real)
    if fid == "perturbed":
        # base * (1 + eps * u_n) with u_n in [-1, 1) drawn from SplitMix64.
        # The seed parameter is overridden by a trailing @seed when present.
        seed_param = int(params[0])
        base = family_sequence(params[1])
        eps = float(params[2])
        eff_seed = seed if seed is not None else seed_param

        def pert(n):
            if n.shape[0] and (n[0] != 1 or n[-1] - n[0] + 1 != n.shape[0]):
                raise SequenceError("perturbed generator expects a 1-based prefix")
            N = int(n.shape[0])
            return base.prefix(N) * (1.0 + eps * unit_noise(eff_seed, n))
        return CoefficientSequence.from_function(label, pert,
                                                 is_real=base.is_real)
    raise SequenceError(f"unknown family id {fid!r}")


def sequence_from_text(text: str) -> CoefficientSequence:
    """Parse a canonical family string and realize it."""
    return family_sequence(parse_family_spec(text))
