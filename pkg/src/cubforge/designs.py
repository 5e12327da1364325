"""Block designs, regular t-wise balanced designs and two-level orthogonal arrays."""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .datafiles import DataUnavailable, data_file
from .exactnum import FieldElement, as_field


class SearchLimitExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# block designs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDesign:
    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        norm = tuple(tuple(sorted(set(int(p) for p in b))) for b in self.blocks)
        for b in norm:
            if not b:
                raise ValueError("empty block")
            if b[0] < 0 or b[-1] >= self.v:
                raise ValueError(f"block {b} outside 0..{self.v - 1}")
        if len(set(norm)) != len(norm):
            raise ValueError("repeated blocks")
        object.__setattr__(self, "blocks", norm)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for blk in self.blocks:
            out[len(blk)] = out.get(len(blk), 0) + 1
        return dict(sorted(out.items()))

    def incidence(self) -> np.ndarray:
        """b x v zero-one matrix (row per block)."""
        inc = np.zeros((self.b, self.v), dtype=np.uint8)
        for i, blk in enumerate(self.blocks):
            inc[i, list(blk)] = 1
        return inc


@dataclass
class DesignReport:
    t: int
    block_sizes: dict[int, int]
    lambdas: dict[int, int | None]
    balanced: bool  # constant coverage at level t
    regular: bool  # constant coverage at every level <= t
    max_t: int  # largest t' <= t with constant coverage at all levels <= t'
    failures: list[str] = field(default_factory=list)

    @property
    def lam(self) -> int | None:
        return self.lambdas.get(self.t)


def subset_coverage(d: BlockDesign, t: int) -> np.ndarray:
    if t == 0:
        return np.array([d.b], dtype=np.int64)
    subsets = np.array(list(itertools.combinations(range(d.v), t)), dtype=np.int64)
    if subsets.size == 0:
        return np.zeros(0, dtype=np.int64)
    return kernels.coverage(d.incidence(), subsets)


def verify_design(d: BlockDesign, t: int) -> DesignReport:
    if not 1 <= t <= d.v:
        raise ValueError("need 1 <= t <= v")
    lambdas: dict[int, int | None] = {}
    failures = []
    for tp in range(t + 1):
        cov = subset_coverage(d, tp)
        if cov.size and (cov == cov[0]).all():
            lambdas[tp] = int(cov[0])
        else:
            lambdas[tp] = None
            failures.append(f"coverage of {tp}-subsets ranges over {sorted(set(cov.tolist()))[:6]}")
    max_t = 0
    for tp in range(1, t + 1):
        if lambdas[tp] is None:
            break
        max_t = tp
    return DesignReport(
        t=t,
        block_sizes=d.block_sizes(),
        lambdas=lambdas,
        balanced=lambdas[t] is not None,
        regular=all(lambdas[tp] is not None for tp in range(t + 1)),
        max_t=max_t,
        failures=failures,
    )


def design_strength(d: BlockDesign, limit: int | None = None) -> int:
    """Largest t such that d is regular up to t (single-size designs: a t-design)."""
    top = min(limit or d.v, min(d.block_sizes()))
    best = 0
    for t in range(1, top + 1):
        if not verify_design(d, t).regular:
            break
        best = t
    return best


def block_count(v: int, k: int, t: int, lam, tp: int) -> Fraction:
    if not 0 <= tp <= t <= k <= v:
        raise ValueError("need 0 <= t' <= t <= k <= v")
    out = Fraction(lam) * math.comb(v - tp, t - tp) / math.comb(k - tp, t - tp)
    if out.denominator != 1:
        warnings.warn(f"non-integral count {out}: no {t}-({v},{k},{lam}) design exists", stacklevel=2)
    return out


def derive_design(d: BlockDesign, x: int, t: int | None = None) -> BlockDesign:
    sizes = d.block_sizes()
    if len(sizes) != 1:
        raise ValueError("derived design needs a single block size")
    if t is None:
        t = design_strength(d)
    if t < 1 or not verify_design(d, t).balanced:
        raise ValueError(f"input is not a {t}-design")
    relabel = {p: i for i, p in enumerate(p for p in range(d.v) if p != x)}
    blocks = [tuple(relabel[p] for p in blk if p != x) for blk in d.blocks]
    return BlockDesign(d.v - 1, tuple(b for b in blocks if b))


def xiang_bound(v: int, e: int, f: int) -> int:
    if f < 1 or e < f - 1:
        raise ValueError("need f >= 1 and e >= f - 1")
    return sum(math.comb(v, e - i) for i in range(f))


def search_design(v: int, block_sizes: Iterable[int], t: int, lam: int,
                  max_v: int = 10, max_nodes: int = 5_000_000) -> BlockDesign | None:
    """Exhaustive backtracking for a t-(v, K, lam) design; None when none exists."""
    if v > max_v:
        raise SearchLimitExceeded(f"v={v} exceeds search cap {max_v}")
    tsubs = list(itertools.combinations(range(v), t))
    tindex = {s: i for i, s in enumerate(tsubs)}
    cands = [c for k in sorted(set(block_sizes)) if k >= t
             for c in itertools.combinations(range(v), k)]
    covers = [[tindex[s] for s in itertools.combinations(c, t)] for c in cands]
    containing: list[list[int]] = [[] for _ in tsubs]
    for ci, cov in enumerate(covers):
        for s in cov:
            containing[s].append(ci)
    need = [lam] * len(tsubs)
    used = [False] * len(cands)
    chosen: list[int] = []
    nodes = 0

    def options(s):
        return [c for c in containing[s] if not used[c] and all(need[u] > 0 for u in covers[c])]

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise SearchLimitExceeded("node budget exhausted")
        best, best_opts = None, None
        for s, n in enumerate(need):
            if n > 0:
                opts = options(s)
                if len(opts) < n:
                    return False
                if best is None or len(opts) < len(best_opts):
                    best, best_opts = s, opts
                    if len(opts) <= 1:
                        break
        if best is None:
            return True
        for c in best_opts:
            used[c] = True
            chosen.append(c)
            for u in covers[c]:
                need[u] -= 1
            if rec():
                return True
            for u in covers[c]:
                need[u] += 1
            chosen.pop()
            used[c] = False
        return False

    if rec():
        return BlockDesign(v, tuple(cands[c] for c in chosen))
    return None


# ---------------------------------------------------------------------------
# constructions for the shipped catalog
# ---------------------------------------------------------------------------

def fano_plane() -> BlockDesign:
    return BlockDesign(7, tuple(tuple(sorted((i + s) % 7 for s in (0, 1, 3))) for i in range(7)))


def sqs8() -> BlockDesign:
    """Planes of AG(3,2): points are vectors of F_2^3, blocks are {x : a.x = c}."""
    blocks = []
    for a in range(1, 8):
        for c in (0, 1):
            blocks.append(tuple(x for x in range(8) if bin(a & x).count("1") % 2 == c))
    return BlockDesign(8, tuple(blocks))


def inversive_plane_3() -> BlockDesign:
    """3-(10,4,1): images of the subline PG(1,3) in PG(1,9) under PGL(2,9)."""
    # F_9 = F_3[i]/(i^2+1); element a + b i encoded as 3a + b... use pairs
    elems = [(a, b) for a in range(3) for b in range(3)]

    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    def inv(x):
        return next(y for y in elems if mul(x, y) == (1, 0))

    inf = "inf"
    points = elems + [inf]
    label = {p: i for i, p in enumerate(points)}

    def mobius(a, b, c, d, z):
        if z == inf:
            return inf if c == (0, 0) else mul(a, inv(c))
        num = add(mul(a, z), b)
        den = add(mul(c, z), d)
        if den == (0, 0):
            return inf
        return mul(num, inv(den))

    base = [(0, 0), (1, 0), (2, 0), inf]
    blocks = set()
    for a, b, c, d in itertools.product(elems, repeat=4):
        det = add(mul(a, d), mul((2, 0), mul(b, c)))
        if det == (0, 0):
            continue
        blocks.add(tuple(sorted(label[mobius(a, b, c, d, z)] for z in base)))
    return BlockDesign(10, tuple(sorted(blocks)))


def biplane16() -> BlockDesign:
    """Symmetric 2-(16,6,2) from the difference set {(0,j),(j,0)} in Z_4^2."""
    diff = [(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]
    blocks = []
    for gx in range(4):
        for gy in range(4):
            blocks.append(tuple(sorted(((gx + a) % 4) * 4 + (gy + b) % 4 for a, b in diff)))
    return BlockDesign(16, tuple(blocks))


def complete_design(v: int, k: int) -> BlockDesign:
    return BlockDesign(v, tuple(itertools.combinations(range(v), k)))


# ---------------------------------------------------------------------------
# design files and catalog
# ---------------------------------------------------------------------------

def write_design(d: BlockDesign, path: str | Path, t: int, lam) -> None:
    lines = [f"v={d.v} t={t} lambda={Fraction(lam)}"]
    lines += [" ".join(map(str, b)) for b in d.blocks]
    Path(path).write_text("\n".join(lines) + "\n")


def read_design(path: str | Path) -> tuple[BlockDesign, int, Fraction]:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    header = dict(tok.split("=") for tok in lines[0].split())
    v, t, lam = int(header["v"]), int(header["t"]), Fraction(header["lambda"])
    blocks = tuple(tuple(int(p) for p in ln.split()) for ln in lines[1:])
    return BlockDesign(v, blocks), t, lam


# name -> (file, description); entries without a file are placeholders
DESIGN_CATALOG = {
    "fano": ("designs/fano.txt", "2-(7,3,1) Fano plane"),
    "sqs8": ("designs/sqs8.txt", "3-(8,4,1) planes of AG(3,2)"),
    "inversive10": ("designs/inversive10.txt", "3-(10,4,1) inversive plane of order 3"),
    "biplane16": ("designs/biplane16.txt", "symmetric 2-(16,6,2)"),
    "sym25": ("designs/sym25.txt", "symmetric 2-(25,9,3)"),
    "sqs14": ("designs/sqs14.txt", "3-(14,4,1) Steiner quadruple system"),
    "rtbd-3-25": (None, "regular 3-(25,{6,10},4), AGL(1,25)-invariant"),
    "rtbd-4-27": (None, "regular 4-(27,{5,8},5), ASL(3,3)-invariant"),
    "rtbd-5-33-a": (None, "regular 5-(33,{6,7},10), PGammaL(2,32)-invariant"),
    "rtbd-5-33-b": (None, "regular 5-(33,{6,8},20), PGammaL(2,32)-invariant"),
    "rtbd-5-33-c": (None, "regular 5-(33,{6,9},15), PGammaL(2,32)-invariant"),
    "rtbd-5-33-d": (None, "regular 5-(33,{7,10},42), PGammaL(2,32)-invariant"),
    "rtbd-5-55": (None, "regular 5-(55,{5,6},5), C2 x PGammaL(2,27)-invariant"),
}


def catalog_design(name: str, data_dir=None) -> tuple[BlockDesign, int, Fraction]:
    if name not in DESIGN_CATALOG:
        raise KeyError(f"unknown catalog design {name!r}")
    rel, desc = DESIGN_CATALOG[name]
    if rel is None:
        raise DataUnavailable(f"data unavailable: {desc}")
    return read_design(data_file(rel, data_dir))


# ---------------------------------------------------------------------------
# generalized incidence matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedIncidence:
    alpha: FieldElement
    beta: FieldElement
    columns: tuple[tuple[FieldElement, ...], ...]  # one column per block, length v

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.columns[0]) if self.columns else 0, len(self.columns))


def generalized_incidence(d: BlockDesign, alpha, beta) -> GeneralizedIncidence:
    a, b = as_field(alpha), as_field(beta)
    if a == b:
        raise ValueError("alpha must differ from beta")
    cols = []
    for blk in d.blocks:
        s = set(blk)
        cols.append(tuple(a if p in s else b for p in range(d.v)))
    return GeneralizedIncidence(a, b, tuple(cols))


# ---------------------------------------------------------------------------
# orthogonal arrays
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    rows: np.ndarray  # N x l with entries -1/+1

    def __post_init__(self):
        r = np.asarray(self.rows, dtype=np.int8)
        if r.ndim != 2 or not np.isin(r, (-1, 1)).all():
            raise ValueError("orthogonal array entries must be +-1")
        r.setflags(write=False)
        object.__setattr__(self, "rows", r)

    @property
    def N(self) -> int:
        return self.rows.shape[0]

    @property
    def l(self) -> int:
        return self.rows.shape[1]

    def columns(self, cols: Sequence[int]) -> "OrthogonalArray":
        return OrthogonalArray(self.rows[:, list(cols)])

    def __eq__(self, other):
        return isinstance(other, OrthogonalArray) and np.array_equal(
            _sorted_rows(self.rows), _sorted_rows(other.rows))


def _sorted_rows(r: np.ndarray) -> np.ndarray:
    return r[np.lexsort(r.T[::-1])] if r.size else r


@dataclass
class OAReport:
    requested: int
    strength: int  # largest verified strength (>= requested when passed)
    passed: bool
    violation: tuple[int, ...] | None
    centrally_symmetric: bool
    index: Fraction | None  # N / 2^strength


def _strength_ok(bits: np.ndarray, t: int) -> tuple[bool, tuple[int, ...] | None]:
    n, l = bits.shape
    if t == 0:
        return True, None
    if n % (1 << t):
        return False, tuple(range(t))
    target = n >> t
    chunk = 20000
    combos = itertools.combinations(range(l), t)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            return True, None
        counts = kernels.oa_counts(bits, block)
        bad = np.flatnonzero((counts != target).any(axis=1))
        if bad.size:
            return False, tuple(int(c) for c in block[bad[0]])


def is_centrally_symmetric(rows: np.ndarray) -> bool:
    return np.array_equal(_sorted_rows(rows), _sorted_rows(-rows))


def verify_oa(a: OrthogonalArray, t: int, probe: int = 1) -> OAReport:
    """Check strength t; then probe up to ``probe`` further levels for the max strength."""
    if t > a.l:
        raise ValueError("strength exceeds number of columns")
    bits = np.ascontiguousarray((a.rows > 0).astype(np.uint8))
    ok, viol = _strength_ok(bits, t)
    strength = t if ok else 0
    if ok:
        for tt in range(t + 1, min(a.l, t + probe) + 1):
            good, _ = _strength_ok(bits, tt)
            if not good:
                break
            strength = tt
    else:
        for tt in range(1, t):
            good, _ = _strength_ok(bits, tt)
            if not good:
                break
            strength = tt
    return OAReport(
        requested=t,
        strength=strength,
        passed=ok,
        violation=viol,
        centrally_symmetric=is_centrally_symmetric(a.rows),
        index=Fraction(a.N, 1 << strength) if strength else None,
    )


def trivial_oa(l: int) -> OrthogonalArray:
    if l < 1:
        raise ValueError("need l >= 1")
    bits = (np.arange(1 << l)[:, None] >> np.arange(l - 1, -1, -1)[None, :]) & 1
    return OrthogonalArray(2 * bits.astype(np.int8) - 1)


def oa_from_linear_code(generator_rows) -> OrthogonalArray:
    gens = np.asarray(generator_rows, dtype=np.uint8) & 1
    words = np.unique(kernels.gf2_span(np.ascontiguousarray(gens)), axis=0)
    return OrthogonalArray(2 * words.astype(np.int8) - 1)


_OCTACODE = np.array([
    [1, 0, 0, 0, 3, 1, 2, 1],
    [0, 1, 0, 0, 1, 2, 3, 1],
    [0, 0, 1, 0, 3, 3, 3, 2],
    [0, 0, 0, 1, 2, 3, 1, 1],
], dtype=np.int64)
_GRAY = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}


def nordstrom_robinson() -> OrthogonalArray:
    """Gray image of the Z_4 octacode: 256 binary words of length 16."""
    coeffs = np.array(list(itertools.product(range(4), repeat=4)), dtype=np.int64)
    words = (coeffs @ _OCTACODE) % 4
    bits = np.array([[b for s in w for b in _GRAY[int(s)]] for w in words], dtype=np.int8)
    return OrthogonalArray(2 * bits - 1)


class GF32:
    """F_32 as F_2[x]/(x^5 + x^2 + 1); elements are 5-bit integers."""

    MODULUS = 0b100101

    def __init__(self):
        self.exp = [0] * 62
        self.log = [0] * 32
        x = 1
        for i in range(31):
            self.exp[i] = self.exp[i + 31] = x
            self.log[x] = i
            x <<= 1
            if x & 32:
                x ^= self.MODULUS
        if len(set(self.exp[:31])) != 31:
            raise ArithmeticError("modulus is not primitive")

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % 31]

    def trace(self, a: int) -> int:
        t, y = 0, a
        for _ in range(5):
            t ^= y
            y = self.mul(y, y)
        if t not in (0, 1):
            raise ArithmeticError("trace left the prime field")
        return t


def dual_bch_generator() -> np.ndarray:
    """10 x 31 generator: rows tr(2^i x) and tr(2^i x^3) over the nonzero x = alpha^j."""
    f = GF32()
    xs = [f.exp[j] for j in range(31)]
    rows = []
    for i in range(5):
        rows.append([f.trace(f.mul(1 << i, x)) for x in xs])
    for i in range(5):
        rows.append([f.trace(f.mul(1 << i, f.power(x, 3))) for x in xs])
    return np.array(rows, dtype=np.uint8)


def dual_bch_oa(augment: bool = False) -> OrthogonalArray:
    gen = dual_bch_generator()
    if augment:
        gen = np.vstack([gen, np.ones((1, 31), dtype=np.uint8)])
    return oa_from_linear_code(gen)


def write_oa(a: OrthogonalArray, path: str | Path) -> None:
    lines = ["".join("+" if x > 0 else "-" for x in row) for row in a.rows]
    Path(path).write_text("\n".join(lines) + "\n")


def read_oa(path: str | Path) -> OrthogonalArray:
    rows = []
    for ln in Path(path).read_text().splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if set(ln) - {"+", "-"}:
            raise ValueError(f"bad orthogonal array row {ln!r}")
        rows.append([1 if ch == "+" else -1 for ch in ln])
    return OrthogonalArray(np.array(rows, dtype=np.int8))
