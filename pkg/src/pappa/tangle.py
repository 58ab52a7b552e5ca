"""Labelled planar tangles in rectangular slice form, and two evaluators.

A word is a list of slices applied in order: ``cup@P`` adds two strands at
positions ``P, P+1``, ``cap@P`` joins strands ``P, P+1``, ``c^J@P`` puts the
label ``c^J`` on strand ``P``, and ``pos@P`` / ``neg@P`` cross strands ``P``
and ``P+1`` with ``b+`` / ``b-``.

The contraction evaluator works on level spaces ``V_n`` spanned by diagrams
with ``n`` top points and no bottom points.  ``V_n`` is realized inside PF_n
as the left ideal ``PF_n E_1 E_3 ... E_{n-1}`` with basis
``c_1^{i_1} c_3^{i_2} ... E_1 E_3 ...``, so ``dim V_n = N^{n/2}``.  Cups at
the right end append a Jones projection, caps at the right end compress by
``Phi_r^2(E . E)``, and interior cups and caps are moved to the right end by
products of Jones projections.  Every slice is therefore an exact linear map
between level spaces, and ``cap@P`` after ``cup@P`` is ``E_P`` exactly.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .braid import braid_generator
from .operators import DenseOperator, _convolve_reduce, _normalize
from .pf import (
    PFElement,
    conditional_expectation,
    jones_projection,
    jw_rep,
    markov_trace,
    place,
)
from .scalars import CycloScalar, ParameterError, Scalar, ScalarContext, make_context, inv_sqrt_n, reduction_table, sqrt_n

KINDS = ("cup", "cap", "label", "pos", "neg")


class TangleError(ParameterError):
    """Malformed tangle text or word, with an optional source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Slice:
    kind: str
    pos: int
    power: int = 0

    def delta(self) -> int:
        return {"cup": 2, "cap": -2}.get(self.kind, 0)

    def text(self) -> str:
        if self.kind == "label":
            return f"c^{self.power}@{self.pos}"
        return f"{self.kind}@{self.pos}"


@dataclass
class TangleWord:
    ctx: ScalarContext
    in_strands: int
    out_strands: int
    slices: list[Slice] = field(default_factory=list)

    def __post_init__(self):
        self.slices = list(self.slices)
        self.validate()

    @classmethod
    def build(cls, ctx: ScalarContext, slices, in_strands: int = 0) -> "TangleWord":
        """Word with the output count inferred from the slices."""
        slices = [s if isinstance(s, Slice) else Slice(*s) for s in slices]
        n = in_strands
        for s in slices:
            n += s.delta()
        return cls(ctx, in_strands, n, slices)

    def levels(self) -> list[int]:
        """Strand count before each slice, followed by the final count."""
        out = [self.in_strands]
        for s in self.slices:
            out.append(out[-1] + s.delta())
        return out

    def validate(self):
        n = self.in_strands
        if n < 0:
            raise TangleError("negative input strand count")
        for k, s in enumerate(self.slices):
            _check_slice(s, n, k + 1)
            n += s.delta()
        if n != self.out_strands:
            raise TangleError(f"word ends with {n} strands, expected {self.out_strands}")

    @property
    def closed(self) -> bool:
        return self.in_strands == 0 and self.out_strands == 0

    def to_text(self) -> str:
        lines = [f"N={self.ctx.N}", f"in={self.in_strands}"]
        return "\n".join(lines + [s.text() for s in self.slices]) + "\n"

    def __add__(self, other: "TangleWord") -> "TangleWord":
        if other.in_strands != self.out_strands:
            raise TangleError("strand counts do not match for composition")
        return TangleWord(self.ctx, self.in_strands, other.out_strands, self.slices + other.slices)


def _check_slice(s: Slice, n: int, line=None, column=None):
    if s.kind not in KINDS:
        raise TangleError(f"unknown slice {s.kind!r}", line, column)
    hi = {"cup": n + 1, "cap": n - 1, "label": n, "pos": n - 1, "neg": n - 1}[s.kind]
    if s.kind == "cap" and n < 2:
        raise TangleError(f"cap needs two strands, found {n}", line, column)
    if not 1 <= s.pos <= hi:
        raise TangleError(f"position {s.pos} out of bounds 1..{hi} at {n} strands", line, column)


_TOKEN = re.compile(r"^(cup|cap|pos|neg|c\^(-?\d+))@(\d+)$")
_HEADER = re.compile(r"^(N|in|out)\s*=\s*(-?\d+)$")


def parse_tangle(text: str, ctx: ScalarContext | None = None, mode: str | None = None,
                 zeta_sign: int = 1) -> TangleWord:
    """Parse the slice language; ``N=`` in the text overrides nothing when ``ctx`` is given."""
    headers: dict[str, int] = {}
    parsed: list[tuple[Slice, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        h = _HEADER.match(stripped)
        if h:
            if parsed:
                raise TangleError("headers must precede slices", lineno, col)
            headers[h.group(1)] = int(h.group(2))
            continue
        t = _TOKEN.match(stripped)
        if not t:
            raise TangleError(f"unknown token {stripped!r}", lineno, col)
        pos = int(t.group(3))
        if t.group(2) is not None:
            s = Slice("label", pos, int(t.group(2)))
        else:
            s = Slice(t.group(1), pos)
        parsed.append((s, lineno, col + stripped.index("@") + 1))
    if ctx is None:
        if "N" not in headers:
            raise TangleError("missing N= header and no context given")
        if headers["N"] < 2:
            raise TangleError("N must be at least 2")
        ctx = make_context(headers["N"], zeta_sign=zeta_sign, mode=mode or "exact")
    elif "N" in headers and headers["N"] != ctx.N:
        raise TangleError(f"header N={headers['N']} conflicts with context N={ctx.N}")
    n = headers.get("in", 0)
    if n < 0:
        raise TangleError("in= must be non-negative")
    slices = []
    for s, lineno, col in parsed:
        _check_slice(s, n, lineno, col)
        n += s.delta()
        slices.append(Slice(s.kind, s.pos, s.power % ctx.N))
    if "out" in headers and headers["out"] != n:
        raise TangleError(f"word ends with {n} strands but out={headers['out']}")
    return TangleWord(ctx, headers.get("in", 0), n, slices)


# ----------------------------------------------------------------------
# linear maps between level spaces


class _Lin:
    """Rectangular matrix over the context scalars (``rows x cols``)."""

    __slots__ = ("ctx", "num", "den", "array")

    def __init__(self, ctx, *, num=None, den=1, array=None):
        self.ctx = ctx
        if ctx.exact:
            self.num, self.den = _normalize(np.asarray(num), int(den))
            self.array = None
        else:
            self.array = np.asarray(array, dtype=complex)
            self.num, self.den = None, 1

    @property
    def shape(self):
        return self.num.shape[1:] if self.ctx.exact else self.array.shape

    def __matmul__(self, other: "_Lin") -> "_Lin":
        if self.ctx.exact:
            num = _convolve_reduce(self.ctx.L, self.num, other.num, np.matmul)
            return _Lin(self.ctx, num=num, den=self.den * other.den)
        return _Lin(self.ctx, array=self.array @ other.array)

    def scale(self, c) -> "_Lin":
        if self.ctx.exact:
            c = self.ctx.scalar(c)
            cvec = np.array(c.num, dtype=object)
            if np.abs(cvec).max(initial=0) < 2**62:
                cvec = cvec.astype(np.int64)
            num = _convolve_reduce(self.ctx.L, cvec[:, None, None], self.num, np.multiply)
            return _Lin(self.ctx, num=num, den=self.den * c.den)
        return _Lin(self.ctx, array=self.array * self.ctx.to_complex(c))

    def entry(self, i, j) -> Scalar:
        if self.ctx.exact:
            return CycloScalar(self.ctx.L, self.num[:, i, j], self.den)
        return complex(self.array[i, j])

    @classmethod
    def from_columns(cls, ctx, cols: list[list[Scalar]]) -> "_Lin":
        rows = len(cols[0]) if cols else 0
        if not ctx.exact:
            arr = np.array([[complex(v) for v in col] for col in cols], dtype=complex).T.reshape(rows, len(cols))
            return cls(ctx, array=arr)
        den = 1
        for col in cols:
            for v in col:
                den = den * v.den // math.gcd(den, v.den)
        phi = reduction_table(ctx.L).shape[1]
        num = np.zeros((phi, rows, len(cols)), dtype=object)
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                if not v.is_zero():
                    f = den // v.den
                    num[:, i, j] = [x * f for x in v.num]
        return cls(ctx, num=num, den=den)

    @classmethod
    def unit_vector(cls, ctx, dim: int, k: int) -> "_Lin":
        cols = [[ctx.one if i == k else ctx.zero for i in range(dim)]]
        return cls.from_columns(ctx, cols)


class LevelModel:
    """Exact slice maps on the level spaces ``V_n`` (``n`` even), cached per context."""

    def __init__(self, ctx: ScalarContext):
        self.ctx = ctx
        self.N = ctx.N
        self._basis: dict[int, list[PFElement]] = {}
        self._maps: dict[tuple, _Lin] = {}

    @classmethod
    def of(cls, ctx: ScalarContext) -> "LevelModel":
        key = "level_model"
        if key not in ctx._cache:
            ctx._cache[key] = cls(ctx)
        return ctx._cache[key]

    def dim(self, n: int) -> int:
        return self.N ** (n // 2)

    def _indices(self, n: int):
        return list(itertools.product(range(self.N), repeat=n // 2))

    def basis(self, n: int) -> list[PFElement]:
        """``c_1^{i_1} c_3^{i_2} ... E_1 E_3 ...`` in encoding order of ``(i_1, i_2, ...)``."""
        if n % 2:
            raise TangleError("level spaces exist for an even number of strands only")
        if n not in self._basis:
            ctx = self.ctx
            R = PFElement.identity(ctx, n)
            for i in range(1, n, 2):
                R = R * jones_projection(ctx, n, i)
            out = []
            for I in self._indices(n):
                mono = [0] * n
                for k, v in enumerate(I):
                    mono[2 * k] = v
                out.append(PFElement.monomial(ctx, n, mono) * R)
            self._basis[n] = out
        return self._basis[n]

    def coordinates(self, Y: PFElement) -> list[Scalar]:
        """Coordinates of ``Y`` in :meth:`basis`, read from the monomials with idle even strands."""
        n = Y.m
        scale = sqrt_n(self.ctx) ** (n // 2) if n else self.ctx.one
        out = []
        for I in self._indices(n):
            mono = [0] * n
            for k, v in enumerate(I):
                mono[2 * k] = v
            out.append(Y.coeff(tuple(mono)) * scale)
        return out

    def element(self, n: int, vec: _Lin) -> PFElement:
        """Inverse of :meth:`coordinates` for a column vector."""
        out = PFElement.zero(self.ctx, n)
        for k, b in enumerate(self.basis(n)):
            v = vec.entry(k, 0)
            if not self.ctx.is_zero(v):
                out = out + b.scale(v)
        return out

    def _map_from(self, n_in: int, fn) -> _Lin:
        cols = [self.coordinates(fn(b)) for b in self.basis(n_in)]
        return _Lin.from_columns(self.ctx, cols)

    def left_mult(self, n: int, x: PFElement, key) -> _Lin:
        k = ("mult", n, key)
        if k not in self._maps:
            self._maps[k] = self._map_from(n, lambda b: x * b)
        return self._maps[k]

    def jones(self, n: int, i: int) -> _Lin:
        return self.left_mult(n, jones_projection(self.ctx, n, i), ("E", i))

    def cup_right(self, n: int) -> _Lin:
        k = ("cupR", n)
        if k not in self._maps:
            ctx = self.ctx
            self._maps[k] = self._map_from(n, lambda b: place(b, n + 2, 0) * jones_projection(ctx, n + 2, n + 1))
        return self._maps[k]

    def cap_right(self, n: int) -> _Lin:
        k = ("capR", n)
        if k not in self._maps:
            ctx = self.ctx

            def fn(b):
                e = jones_projection(ctx, n, n - 1)
                return conditional_expectation(conditional_expectation(e * b * e))

            self._maps[k] = self._map_from(n, fn)
        return self._maps[k]

    def slice_map(self, n: int, s: Slice) -> _Lin:
        """Map ``V_n -> V_{n + delta}`` of one slice."""
        key = ("slice", n, s)
        if key in self._maps:
            return self._maps[key]
        ctx = self.ctx
        if s.kind == "cup":
            out = self.cup_right(n)
            for i in range(n, s.pos - 1, -1):
                out = self.jones(n + 2, i) @ out
        elif s.kind == "cap":
            out = self.cap_right(n)
            for i in range(n - 2, s.pos - 1, -1):
                out = out @ self.jones(n, i)
        elif s.kind == "label":
            out = self.left_mult(n, PFElement.generator(ctx, n, s.pos, s.power), ("c", s.pos, s.power))
        else:
            sign = 1 if s.kind == "pos" else -1
            out = self.left_mult(n, braid_generator(ctx, n, s.pos, sign), (s.kind, s.pos))
        self._maps[key] = out
        return out

    def run(self, word: TangleWord, vec: _Lin | None = None) -> _Lin:
        if word.in_strands % 2:
            raise TangleError("contraction runs on an even number of strands")
        if vec is None:
            vec = _Lin.unit_vector(self.ctx, self.dim(word.in_strands), 0)
        n = word.in_strands
        for s in word.slices:
            vec = self.slice_map(n, s) @ vec
            n += s.delta()
        return vec


# ----------------------------------------------------------------------
# evaluation


@dataclass
class TangleValue:
    """Scalar for closed words; otherwise the box element and its Jordan-Wigner matrix."""

    ctx: ScalarContext
    scalar: Scalar | None = None
    element: PFElement | None = None
    operator: DenseOperator | None = None

    @property
    def closed(self) -> bool:
        return self.scalar is not None

    def to_json(self):
        if self.closed:
            return {"kind": "scalar", "value": self.ctx.to_json(self.scalar)}
        return {"kind": "operator", "dim": self.operator.dim, "matrix": self.operator.to_json()}

    def equals(self, other: "TangleValue") -> bool:
        if self.closed != other.closed:
            return False
        if self.closed:
            return self.ctx.eq(self.scalar, other.scalar)
        return self.element.m == other.element.m and self.element.equals(other.element)


def evaluate_closed(word: TangleWord) -> Scalar:
    if not word.closed:
        raise TangleError("word is not closed")
    vec = LevelModel.of(word.ctx).run(word)
    return vec.entry(0, 0)


def _bent(word: TangleWord) -> TangleWord:
    """Bend extra top or bottom points to the right so input and output counts agree."""
    a, b = word.in_strands, word.out_strands
    if a == b:
        return word
    d = abs(b - a) // 2
    if a < b:
        caps = [Slice("cap", b - 1 - j) for j in range(d)]
        return TangleWord(word.ctx, a + d, b - d, word.slices + caps)
    cups = [Slice("cup", a - d + 1 + j) for j in range(d)]
    return TangleWord(word.ctx, a - d, b + d, cups + word.slices)


def closure_word(word: TangleWord, labels=()) -> TangleWord:
    """Right trace closure of a square word, with ``labels`` applied on top before closing."""
    n = word.in_strands
    if word.out_strands != n:
        raise TangleError("closure needs equal input and output counts")
    cups = [Slice("cup", k + 1) for k in range(n)]
    caps = [Slice("cap", n - k) for k in range(n)]
    return TangleWord(word.ctx, 0, 0, cups + word.slices + list(labels) + caps)


def evaluate_tangle(word: TangleWord) -> TangleValue:
    """Contract the slice maps; open words are read off through trace closures."""
    ctx = word.ctx
    if (word.in_strands + word.out_strands) % 2:
        raise TangleError("input and output counts must have equal parity")
    if word.closed:
        return TangleValue(ctx, scalar=evaluate_closed(word))
    sq = _bent(word)
    n = sq.in_strands
    inv_norm = inv_sqrt_n(ctx) ** n
    coeffs = {}
    for I in itertools.product(range(ctx.N), repeat=n):
        # tau(C_I^* x) via the closure with C_{-I} labels stacked in normal order
        labels = [Slice("label", p + 1, (-I[p]) % ctx.N) for p in reversed(range(n)) if I[p]]
        val = evaluate_closed(closure_word(sq, labels))
        mono = PFElement.monomial(ctx, n, [(-i) % ctx.N for i in I])
        phase = markov_trace(mono * PFElement.monomial(ctx, n, I))
        # phase is a root of unity
        coeffs[I] = val * inv_norm * ctx.conj(phase)
    x = PFElement(ctx, n, coeffs)
    return TangleValue(ctx, element=x, operator=jw_rep(x))


# ----------------------------------------------------------------------
# loop-reduction oracle


def closed_loop_oracle(ctx: ScalarContext, labels) -> Scalar:
    """Value of one circle carrying ``labels = [(power, winding), ...]``.

    Labels are listed anticlockwise from the top one; ``winding`` counts the
    clockwise full turns a label makes while it is carried to the top label.
    Each label is split into unit labels ``c``.  A clockwise turn of a unit
    costs ``q``; turning a cluster of ``j`` units rigidly also transposes every
    pair twice, ``q`` per transposition (``q^{-1}`` when anticlockwise).  The
    collected ``c^{total}`` is then traced: ``delta`` if ``N`` divides the
    total, else zero.
    """
    N = ctx.N
    total = 0
    exponent = 0
    for power, winding in labels:
        j, k = int(power) % N, int(winding)
        total += j
        exponent += k * j  # one rotation phase per unit
        pairs = j * (j - 1) // 2
        exponent += 2 * k * pairs  # each pair is transposed twice per turn
    if total % N:
        return ctx.zero
    return ctx.q_pow(exponent) * sqrt_n(ctx)


# ----------------------------------------------------------------------
# corpus helpers


def spiral_slices(pos: int, power: int, winding: int) -> list[Slice]:
    """Label ``c^power`` on strand ``pos`` turned by ``winding`` clockwise full turns (-1, 0 or 1)."""
    if winding == 0:
        return [Slice("label", pos, power)]
    if winding == 1:
        return [Slice("cup", pos + 1), Slice("cup", pos + 2), Slice("label", pos + 2, power),
                Slice("cap", pos + 1), Slice("cap", pos)]
    if winding == -1:
        return [Slice("cup", pos), Slice("cup", pos + 1), Slice("label", pos + 2, power),
                Slice("cap", pos + 2), Slice("cap", pos + 1)]
    raise ParameterError("windings are limited to -1, 0, 1")


def circle_word(ctx: ScalarContext, labels) -> TangleWord:
    """One circle with ``labels`` (anticlockwise from the top) on its left strand."""
    slices = [Slice("cup", 1)]
    for power, winding in reversed(list(labels)):
        slices += spiral_slices(1, int(power) % ctx.N, int(winding))
    slices.append(Slice("cap", 1))
    return TangleWord(ctx, 0, 0, slices)


def circle_corpus(ctx: ScalarContext, max_labels: int = 4, windings=(-1, 0, 1)):
    """Every label list with at most ``max_labels`` entries."""
    choices = [(j, k) for j in range(1, ctx.N) for k in windings]
    for size in range(max_labels + 1):
        yield from itertools.product(choices, repeat=size)


def isotopy_pairs(ctx: ScalarContext) -> list[tuple[str, TangleWord, TangleWord]]:
    """Pairs of distinct slice words drawing isotopic diagrams (regular isotopy for crossings)."""
    j = 1 % ctx.N

    def w(slices, n_in=0):
        return TangleWord.build(ctx, [Slice(*s) for s in slices], n_in)

    lab, inv = ("label", 1, j), ("label", 1, -j % ctx.N)
    pairs = [
        ("zigzag_right", w([("cup", 2), ("cap", 1)], 1), w([], 1)),
        ("zigzag_left", w([("cup", 1), ("cap", 2)], 1), w([], 1)),
        ("double_zigzag", w([("cup", 2), ("cup", 3), ("cap", 2), ("cap", 1)], 1), w([], 1)),
        ("label_through_zigzag", w([lab, ("cup", 2), ("cap", 1)], 1), w([("cup", 2), ("cap", 1), lab], 1)),
        ("label_through_left_zigzag", w([lab, ("cup", 1), ("cap", 2)], 1), w([("cup", 1), ("cap", 2), lab], 1)),
        ("label_past_loop", w([lab, ("cup", 2), ("cap", 2)], 1), w([("cup", 2), ("cap", 2), lab], 1)),
        ("label_left_of_cup", w([lab, ("cup", 2)], 1), w([("cup", 2), lab], 1)),
        ("label_right_of_cup", w([lab, ("cup", 1)], 1), w([("cup", 1), ("label", 3, j)], 1)),
        ("label_past_cap", w([("label", 3, j), ("cap", 1)], 3), w([("cap", 1), lab], 3)),
        ("wiggly_circle", w([("cup", 1), ("cup", 2), ("cap", 1), ("cap", 1)]), w([("cup", 1), ("cap", 1)])),
        ("labelled_wiggly_circle",
         w([("cup", 1), lab, ("cup", 2), ("cap", 1), inv, ("cap", 1)]),
         w([("cup", 1), lab, inv, ("cap", 1)])),
        ("separate_loops", w([("cup", 1), ("cup", 3), ("cap", 3), ("cap", 1)]),
         w([("cup", 1), ("cap", 1), ("cup", 1), ("cap", 1)])),
        ("reidemeister_2_pn", w([("pos", 1), ("neg", 1)], 2), w([], 2)),
        ("reidemeister_2_np", w([("neg", 1), ("pos", 1)], 2), w([], 2)),
        ("reidemeister_3_pos", w([("pos", 1), ("pos", 2), ("pos", 1)], 3), w([("pos", 2), ("pos", 1), ("pos", 2)], 3)),
        ("reidemeister_3_neg", w([("neg", 1), ("neg", 2), ("neg", 1)], 3), w([("neg", 2), ("neg", 1), ("neg", 2)], 3)),
        ("reidemeister_3_mixed", w([("neg", 1), ("pos", 2), ("pos", 1)], 3), w([("pos", 2), ("pos", 1), ("neg", 2)], 3)),
        ("label_under_minus", w([("label", 2, j), ("neg", 1)], 2), w([("neg", 1), ("label", 1, j)], 2)),
        ("label_under_plus", w([("label", 1, j), ("pos", 1)], 2), w([("pos", 1), ("label", 2, j)], 2)),
        ("strand_over_cup_pos", w([("cup", 2), ("pos", 1), ("pos", 2)], 1), w([("cup", 1)], 1)),
        ("strand_over_cup_neg", w([("cup", 2), ("neg", 1), ("neg", 2)], 1), w([("cup", 1)], 1)),
        ("crossing_left_of_cup", w([("pos", 1), ("cup", 3)], 2), w([("cup", 3), ("pos", 1)], 2)),
        ("crossing_right_of_cup", w([("pos", 1), ("cup", 1)], 2), w([("cup", 1), ("pos", 3)], 2)),
        ("crossing_past_loop", w([("neg", 1), ("cup", 1), ("cap", 1)], 2), w([("cup", 3), ("cap", 3), ("neg", 1)], 2)),
    ]
    return pairs
