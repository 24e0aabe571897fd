"""Partial sums and tail-norm machinery for trigonometric series.

Evaluation targets the two series shapes the checkers care about:

* sine series  sum_{k>=1} b_k sin kx  (b real or complex), evaluated on
  (0, pi] and extended by oddness/periodicity;
* two-sided exponential series  c_0 + sum_{k>=1} (c_k e^{ikx} +
  c_{-k} e^{-ikx}), evaluated on (-pi, pi] directly.

Sup-norms are estimated from below by grid maxima of |S_{N_ref} - S_n|
over an adaptive grid that always contains the critical points
x0 = pi/(8 n_ref) and the geometric ladder x0 * 2^{j/4}; the companion
truncation slack sum_{k>N_ref} |c_k| (+|c_{-k}|) brackets the truncation
error, so the true sup-norm lies in
[estimate, estimate + 2 * slack] whenever the slack has settled.

The explicit bounds (closed-form Dirichlet kernel, the pi/x estimate, the
summation-by-parts tail bound, the dyadic block decomposition, and the
test-point probe at x0) live here so the verification harness can exercise
each inequality separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .sequences import (
    CoefficientSequence,
    Sector,
    SequenceError,
    TwoSidedSequence,
    sector_dominance_constant,
)
from .summation import exact_complex_sum, exact_sum, kahan_step

__all__ = [
    "GridSpec",
    "CurveEntry",
    "TailNormCurve",
    "ProbeResult",
    "parse_grid_spec",
    "dirichlet_sine",
    "partial_sum_sine",
    "partial_sum_two_sided",
    "two_sided_split",
    "tail_sup_norm",
    "truncation_slack",
    "abel_tail_bound",
    "dyadic_variation_bound",
    "testpoint_block_probe",
    "convergence_curve",
]

TWO_PI = 2.0 * math.pi

# Direct per-frequency evaluation when at most this many coefficients are
# nonzero (lacunary supports); otherwise the blocked engine runs.
_SPARSE_LIMIT = 512

# Element budget chunk_k * n_points for one block of the dense engine.
_BLOCK_ELEMS = 1 << 21

SeriesInput = Union[CoefficientSequence, TwoSidedSequence]


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Adaptive evaluation grid on (0, pi] for a frequency scale n_ref.

    Points: a uniform grid of oversample * n_ref points (capped at
    max_uniform), the geometric ladder x0 * 2^{j/4} with x0 = pi/(8 n_ref)
    -- always containing x0 itself exactly -- and any explicit extras.
    """

    n_ref: int
    oversample: int = 8
    extra: tuple = ()
    max_uniform: int = 8192

    def __post_init__(self):
        if self.n_ref < 1 or self.oversample < 1:
            raise SequenceError("grid needs n_ref >= 1 and oversample >= 1")
        for x in self.extra:
            if not (0.0 < x <= math.pi):
                raise SequenceError(f"grid point {x} outside (0, pi]")

    @property
    def x0(self) -> float:
        return math.pi / (8.0 * self.n_ref)

    def points(self) -> np.ndarray:
        count = min(self.oversample * self.n_ref, self.max_uniform)
        uniform = np.linspace(math.pi / count, math.pi, count)
        ladder = []
        j = 0
        while True:
            x = self.x0 * 2.0 ** (j / 4.0)
            if x > math.pi:
                break
            ladder.append(x)
            j += 1
        parts = [uniform, np.asarray(ladder)]
        if self.extra:
            parts.append(np.asarray(self.extra, dtype=float))
        return np.unique(np.concatenate(parts))

    def describe(self) -> str:
        return f"grid({self.n_ref},{self.oversample})"


def parse_grid_spec(text: str) -> GridSpec:
    """Parse the round-trip text form ``grid(n_ref,oversample)``."""
    import re

    m = re.fullmatch(r"\s*grid\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", text)
    if not m:
        raise SequenceError(f"unparseable grid spec: {text!r}")
    return GridSpec(n_ref=int(m.group(1)), oversample=int(m.group(2)))


# ---------------------------------------------------------------------------
# pointwise partial sums
# ---------------------------------------------------------------------------

def _require_x_in_halfperiod(x: float) -> None:
    if not (0.0 < x <= math.pi):
        raise SequenceError(f"x = {x} outside (0, pi]")


def dirichlet_sine(n: int, x: float) -> float:
    """sum_{k=1}^n sin kx via sin(nx/2) sin((n+1)x/2) / sin(x/2).

    Defined on (0, pi], where |result| <= pi/x.
    """
    _require_x_in_halfperiod(x)
    if n <= 0:
        return 0.0
    half = 0.5 * x
    return math.sin(n * half) * math.sin((n + 1) * half) / math.sin(half)


def _reduce_odd(x: float) -> tuple[float, float]:
    """(sign, r) with r in [0, pi] and S(x) = sign * S(r) for sine series."""
    r = math.remainder(x, TWO_PI)
    return (1.0, r) if r >= 0.0 else (-1.0, -r)


def partial_sum_sine(b: CoefficientSequence, n: int, x: float):
    """sum_{k=1}^n b_k sin kx, exactly rounded accumulation.

    x is reduced by periodicity and oddness; x = 0 (mod pi after reduction
    to 0) gives exactly 0.  Returns float for real coefficients, complex
    otherwise.
    """
    if n < 1:
        raise SequenceError("partial_sum_sine needs n >= 1")
    sign, r = _reduce_odd(x)
    if r == 0.0:
        return 0.0 if b.is_real else 0j
    vals = b.prefix(n)
    s = np.sin(np.arange(1, n + 1, dtype=float) * r)
    if b.is_real:
        return sign * exact_sum(np.asarray(vals, dtype=float) * s)
    return sign * exact_complex_sum(np.asarray(vals, dtype=complex) * s)


def partial_sum_two_sided(ts: TwoSidedSequence, n: int, x: float) -> complex:
    """c_0 + sum_{k=1}^n (c_k e^{ikx} + c_{-k} e^{-ikx})."""
    if n < 0:
        raise SequenceError("partial_sum_two_sided needs n >= 0")
    if n == 0:
        return complex(ts.c0)
    pos = np.asarray(ts.pos.prefix(n), dtype=complex)
    neg = np.asarray(ts.neg.prefix(n), dtype=complex)
    e = np.exp(1j * np.arange(1, n + 1, dtype=float) * x)
    return complex(ts.c0) + exact_complex_sum(pos * e + neg * np.conj(e))


def two_sided_split(ts: TwoSidedSequence, n: int, x: float) -> tuple[complex, complex]:
    """The decomposition S_n - c_0 = I1 + 2i*I2 used by the test-point probe:

        I1 = sum_{k=1}^n (c_k + c_{-k}) e^{-ikx},
        I2 = sum_{k=1}^n c_k sin kx.
    """
    if n < 1:
        return 0j, 0j
    pos = np.asarray(ts.pos.prefix(n), dtype=complex)
    k = np.arange(1, n + 1, dtype=float)
    em = np.exp(-1j * k * x)
    i1 = exact_complex_sum(ts.pair_sums(n) * em)
    i2 = exact_complex_sum(pos * np.sin(k * x))
    return i1, i2


# ---------------------------------------------------------------------------
# blocked checkpoint engine
# ---------------------------------------------------------------------------

def _checkpoint_list(checkpoints: Sequence[int]) -> list[int]:
    cps = sorted({int(c) for c in checkpoints})
    if cps and cps[0] < 0:
        raise SequenceError("negative checkpoint")
    return cps


def _sine_rows(vals: np.ndarray, xs: np.ndarray,
               checkpoints: Sequence[int]) -> dict[int, np.ndarray]:
    """S_cp(x) = sum_{k<=cp} vals[k-1] sin(kx) for each checkpoint, one pass.

    A sparse support (at most _SPARSE_LIMIT nonzero coefficients) switches
    to direct per-frequency evaluation; otherwise k runs in blocks sized to
    the element budget with compensated accumulation across blocks.
    """
    cps = _checkpoint_list(checkpoints)
    if cps and cps[-1] > vals.shape[0]:
        raise SequenceError("checkpoint beyond supplied coefficients")
    cdtype = complex if np.iscomplexobj(vals) else float
    acc = np.zeros(xs.shape[0], dtype=cdtype)
    comp = np.zeros_like(acc)
    rows: dict[int, np.ndarray] = {}

    nz = np.flatnonzero(vals)
    if nz.shape[0] <= _SPARSE_LIMIT:
        done = 0
        for cp in cps:
            sel = nz[(nz >= done) & (nz < cp)]
            if sel.shape[0]:
                acc = acc + vals[sel] @ np.sin(np.outer(sel + 1.0, xs))
            rows[cp] = acc.copy()
            done = cp
        return rows

    chunk = max(128, _BLOCK_ELEMS // max(1, xs.shape[0]))
    k0 = 0
    for cp in cps:
        while k0 < cp:
            hi = min(cp, k0 + chunk)
            k = np.arange(k0 + 1, hi + 1, dtype=float)
            contrib = vals[k0:hi] @ np.sin(np.outer(k, xs))
            kahan_step(acc, comp, contrib)
            k0 = hi
        rows[cp] = acc.copy()
    return rows


def _two_sided_rows(ts: TwoSidedSequence, xs: np.ndarray,
                    checkpoints: Sequence[int]) -> dict[int, np.ndarray]:
    """S_cp(x) over the two-sided series at each checkpoint, one pass."""
    cps = _checkpoint_list(checkpoints)
    n_max = cps[-1] if cps else 0
    pos = np.asarray(ts.pos.prefix(n_max), dtype=complex) if n_max else np.empty(0, complex)
    neg = np.asarray(ts.neg.prefix(n_max), dtype=complex) if n_max else np.empty(0, complex)
    acc = np.full(xs.shape[0], complex(ts.c0))
    comp = np.zeros_like(acc)
    rows: dict[int, np.ndarray] = {}

    nz = np.union1d(np.flatnonzero(pos), np.flatnonzero(neg))
    if nz.shape[0] <= _SPARSE_LIMIT:
        done = 0
        for cp in cps:
            sel = nz[(nz >= done) & (nz < cp)]
            if sel.shape[0]:
                e = np.exp(1j * np.outer(sel + 1.0, xs))
                acc = acc + pos[sel] @ e + neg[sel] @ np.conj(e)
            rows[cp] = acc.copy()
            done = cp
        return rows

    chunk = max(128, _BLOCK_ELEMS // (2 * max(1, xs.shape[0])))
    k0 = 0
    for cp in cps:
        while k0 < cp:
            hi = min(cp, k0 + chunk)
            k = np.arange(k0 + 1, hi + 1, dtype=float)
            e = np.exp(1j * np.outer(k, xs))
            contrib = pos[k0:hi] @ e + neg[k0:hi] @ np.conj(e)
            kahan_step(acc, comp, contrib)
            k0 = hi
        rows[cp] = acc.copy()
    return rows


def _two_sided_grid(xs: np.ndarray) -> np.ndarray:
    """Extend a (0, pi] grid to (-pi, pi] with 0 for two-sided evaluation."""
    mirrored = -xs[xs < math.pi]
    return np.unique(np.concatenate([mirrored, [0.0], xs]))


def _rows_for(obj: SeriesInput, xs: np.ndarray,
              checkpoints: Sequence[int]) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    if isinstance(obj, TwoSidedSequence):
        full = _two_sided_grid(xs)
        return full, _two_sided_rows(obj, full, checkpoints)
    n_max = max(checkpoints)
    vals = np.asarray(obj.prefix(n_max))
    return xs, _sine_rows(vals, xs, checkpoints)


# ---------------------------------------------------------------------------
# tail norms and slack
# ---------------------------------------------------------------------------

def _default_nref(n: int) -> int:
    return max(1 << 16, 64 * n)


def tail_sup_norm(obj: SeriesInput, n: int, N_ref: Optional[int] = None,
                  grid: Optional[GridSpec] = None) -> float:
    """max over the grid of |S_{N_ref} - S_n| -- a lower estimate of the
    tail sup-norm, to be read together with truncation_slack(obj, N_ref)."""
    if n < 0:
        raise SequenceError("n >= 0 required")
    N_ref = _default_nref(n) if N_ref is None else int(N_ref)
    if N_ref <= n:
        raise SequenceError(f"reference horizon {N_ref} must exceed n = {n}")
    grid = grid or GridSpec(n_ref=max(1, n))
    xs = grid.points()
    if xs.size == 0:
        raise SequenceError("empty evaluation grid")
    _, rows = _rows_for(obj, xs, [n, N_ref])
    return float(np.abs(rows[N_ref] - rows[n]).max())


def _abs_range_sum(seq: CoefficientSequence, lo: int, hi: int) -> float:
    """sum_{k=lo+1}^{hi} |c_k| without caching huge prefixes."""
    if seq.kind == "explicit":
        hi = min(hi, seq.length)
        if hi <= lo:
            return 0.0
        return exact_sum(np.abs(np.asarray(seq.prefix(seq.length)[lo:hi])))
    parts = []
    step = 1 << 20
    start = lo
    while start < hi:
        stop = min(hi, start + step)
        k = np.arange(start + 1, stop + 1, dtype=np.int64)
        parts.append(exact_sum(np.abs(np.asarray(seq.fn(k)))))
        start = stop
    return math.fsum(parts)


def truncation_slack(obj: SeriesInput, N_ref: int,
                     octaves: int = 4) -> tuple[float, bool]:
    """sum of |c_k| (+ |c_{-k}|) over (N_ref, N_ref * 2^octaves].

    Returns the measured slack and a settled flag: the last octave must
    contribute at most 1e-3 of the measured total (vacuously settled when
    the total is zero, e.g. explicit data ending before N_ref).
    """
    if octaves < 1:
        raise SequenceError("octaves >= 1 required")
    seqs = [obj.pos, obj.neg] if isinstance(obj, TwoSidedSequence) else [obj]
    parts = []
    for j in range(octaves):
        lo, hi = N_ref << j, N_ref << (j + 1)
        parts.append(math.fsum(_abs_range_sum(s, lo, hi) for s in seqs))
    total = math.fsum(parts)
    settled = total == 0.0 or parts[-1] <= 1e-3 * total
    return total, settled


# ---------------------------------------------------------------------------
# explicit bounds
# ---------------------------------------------------------------------------

def abel_tail_bound(c: CoefficientSequence, N: int, x: float,
                    horizon: Optional[int] = None,
                    check_dominance: bool = False) -> float:
    """(pi/x) * (sum_{k=N}^{H} |c_k - c_{k+1}| + |c_N|), the
    summation-by-parts tail estimate at truncation horizon H.

    With check_dominance the actual truncated tail |sum_{k=N}^{H} c_k sin kx|
    is evaluated directly and must not exceed the bound (raises otherwise) --
    intended for test builds, where the dominance property is enforced on
    every call.
    """
    _require_x_in_halfperiod(x)
    if N < 1:
        raise SequenceError("N >= 1 required")
    H = (1 << 16) if horizon is None else int(horizon)
    if H < N:
        raise SequenceError("horizon below N")
    vals = np.asarray(c.prefix(H + 1))
    var = exact_sum(np.abs(vals[N - 1:H] - vals[N:H + 1]))
    bound = (math.pi / x) * (var + abs(complex(vals[N - 1])))
    if check_dominance:
        k = np.arange(N, H + 1, dtype=float)
        tail = vals[N - 1:H] * np.sin(k * x)
        actual = abs(exact_complex_sum(tail.astype(complex)))
        if actual > bound * (1.0 + 1e-9) + 1e-12:
            raise SequenceError(
                f"tail bound violated: actual {actual} > bound {bound}")
    return bound


def dyadic_variation_bound(c: CoefficientSequence, N: int, N0: int = 1,
                           horizon: Optional[int] = None
                           ) -> tuple[float, np.ndarray]:
    """Truncated total variation from N and the per-block comparison maxima.

    Splits [N, H] into dyadic blocks [2^j N, 2^{j+1} N) and returns
    (sum_{k=N}^{H} |c_k - c_{k+1}|,  array of max |c_k| over the leading
    window [2^j N, 2^j N + N0) of each block), so callers can verify
    LHS <= M * sum of the window maxima against a reported constant M.
    """
    if N < 1 or N0 < 1:
        raise SequenceError("N >= 1 and N0 >= 1 required")
    H = (1 << 16) if horizon is None else int(horizon)
    if H < N:
        raise SequenceError("horizon below N")
    vals = np.asarray(c.prefix(H + 1))
    lhs = exact_sum(np.abs(vals[N - 1:H] - vals[N:H + 1]))
    maxima = []
    j = 0
    while (N << j) <= H:
        lo = N << j
        hi = min(lo + N0, H + 1)
        maxima.append(float(np.abs(vals[lo - 1:hi - 1]).max()))
        j += 1
    return lhs, np.asarray(maxima)


@dataclass
class ProbeResult:
    """Outcome of the test-point probe at x0 = pi/(8n)."""

    n: int
    x0: float
    sin_floor_ok: bool
    premises_ok: bool
    lhs: float                 # 2 sum Re c_k sin k x0 over (n, 4n]
    norm_diff: float           # grid max of |S_{4n} - S_n|
    pair_abs_sum: float        # sum |c_k + c_{-k}| over (n, 4n]
    slack: float               # norm_diff + pair_abs_sum - lhs
    lower_reference: float     # (n/N0) |c_{2n}| / (sector dominance constant)
    grid_size: int

    @property
    def inequality_ok(self) -> bool:
        scale = max(1.0, abs(self.lhs), self.norm_diff)
        return self.slack >= -1e-9 * scale


def testpoint_block_probe(ts: TwoSidedSequence, n: int, sector: Sector,
                          N0: int = 1,
                          grid: Optional[GridSpec] = None) -> ProbeResult:
    """Probe the three-term inequality at the test point x0 = pi/(8n):

        2 sum_{k=n+1}^{4n} Re c_k sin k x0
            <= max_grid |S_{4n} - S_n| + sum_{k=n+1}^{4n} |c_k + c_{-k}|.

    Every k in (n, 4n] has k*x0 in (pi/8, pi/2], hence sin k x0 >=
    sin(pi/8); the sector membership of the pair sums/differences is the
    probe's premise and is checked on [1, 4n].  x0 belongs to the grid, so
    the right side genuinely dominates the left up to round-off; the slack
    is recorded.  lower_reference carries the chain value
    (n/N0) |c_{2n}| / M(theta0) for comparison against the norm difference.
    """
    from .conditions import HOLDS, check_pair_sector

    if n < 1:
        raise SequenceError("n >= 1 required")
    x0 = math.pi / (8.0 * n)
    k = np.arange(n + 1, 4 * n + 1, dtype=float)
    sines = np.sin(k * x0)
    sin_floor_ok = bool(np.all(sines >= math.sin(math.pi / 8.0) - 1e-12))

    premises_ok = check_pair_sector(ts, sector, 4 * n).verdict == HOLDS

    pos = np.asarray(ts.pos.prefix(4 * n), dtype=complex)
    lhs = 2.0 * exact_sum(pos[n:].real * sines)
    pair_abs = exact_sum(np.abs(ts.pair_sums(4 * n)[n:]))

    grid = grid or GridSpec(n_ref=n)
    xs = grid.points()
    full, rows = _rows_for(ts, xs, [n, 4 * n])
    norm_diff = float(np.abs(rows[4 * n] - rows[n]).max())

    c2n = abs(complex(pos[2 * n - 1]))
    lower_ref = (n / N0) * c2n / sector_dominance_constant(sector)
    res = ProbeResult(n, x0, sin_floor_ok, premises_ok, lhs, norm_diff,
                      pair_abs, norm_diff + pair_abs - lhs, lower_ref,
                      int(full.shape[0]))
    if premises_ok and not res.inequality_ok:
        raise SequenceError(
            f"test-point inequality violated at n={n}: slack {res.slack}")
    return res


# ---------------------------------------------------------------------------
# convergence curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveEntry:
    n: int
    sup_estimate: float
    truncation_slack: float
    max_k_ck: float


@dataclass
class TailNormCurve:
    """Tail sup-norm estimates against the n*c_n diagnostic, per n."""

    entries: list
    grid: str
    n_ref: int
    slack_settled: bool

    CSV_HEADER = "n,sup_estimate,truncation_slack,max_k_ck"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for e in self.entries:
            lines.append(f"{e.n},{e.sup_estimate!r},"
                         f"{e.truncation_slack!r},{e.max_k_ck!r}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "grid": self.grid,
            "n_ref": self.n_ref,
            "slack_settled": self.slack_settled,
            "entries": [
                {"n": e.n, "sup_estimate": e.sup_estimate,
                 "truncation_slack": e.truncation_slack,
                 "max_k_ck": e.max_k_ck}
                for e in self.entries
            ],
        }


def convergence_curve(obj: SeriesInput, n_list: Sequence[int],
                      N_ref: Optional[int] = None,
                      grid: Optional[GridSpec] = None,
                      slack_octaves: int = 4) -> TailNormCurve:
    """Tail sup-norm estimate and max_{k in [n, 2n)} k|c_k| per n.

    All n share one reference horizon and one grid (built for the largest
    n), so every row is computed in a single blocked pass and the rows are
    comparable across n.
    """
    ns = [int(v) for v in n_list]
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])) or ns[0] < 1:
        raise SequenceError("n_list must be strictly increasing, n >= 1")
    n_max = ns[-1]
    N_ref = _default_nref(n_max) if N_ref is None else int(N_ref)
    if N_ref <= n_max:
        raise SequenceError("reference horizon must exceed max(n_list)")
    grid = grid or GridSpec(n_ref=n_max)
    xs = grid.points()
    _, rows = _rows_for(obj, xs, ns + [N_ref])
    ref = rows[N_ref]

    slack, settled = truncation_slack(obj, N_ref, slack_octaves)

    seqs = [obj.pos, obj.neg] if isinstance(obj, TwoSidedSequence) else [obj]
    k = np.arange(1, 2 * n_max + 1, dtype=float)
    weighted = np.zeros(2 * n_max)
    for s in seqs:
        weighted = np.maximum(weighted, k * np.abs(np.asarray(s.prefix(2 * n_max))))

    entries = []
    for n in ns:
        sup = float(np.abs(ref - rows[n]).max())
        mk = float(weighted[n - 1:2 * n - 1].max())
        entries.append(CurveEntry(n, sup, slack, mk))
    return TailNormCurve(entries, grid.describe(), grid.n_ref, settled)
