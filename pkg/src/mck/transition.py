"""Transition coefficients between the one-column bases.

The coefficients live in Q(a^2, c^2, t) and, for the spectral variable, in
s.  Functions named ``*_coeff`` take the integer ``m`` and put s = t^(m+1)
before anything else is specialized; the generic versions accept any
expression for s.  Specializations of a^2 and c^2 (``SpecField`` objects
built by :func:`named_spec`) are applied afterwards, on the summed and
reduced coefficient, which is the order in which the removable
singularities at special parameter values cancel.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactalg import (
    IDENTITY,
    RationalExpr,
    SpecField,
    parse,
    probably_zero,
    substitute_scalar,
    substitute,
    sum_exprs,
    var,
)
from .qseries import gen_binom, qbinom, qfact, qint, qpoch, qpochs, total

a, c, t, q, s = (var(v) for v in "actqs")
A2, C2 = a ** 2, c ** 2
ONE = RationalExpr(1)

DEFAULT_MAX_SIZE = 16


def max_size() -> int:
    return int(os.environ.get("MCK_MAX_SIZE", DEFAULT_MAX_SIZE))


def tpow(k: int) -> RationalExpr:
    return t ** k


def _s_of(m: int) -> RationalExpr:
    return t ** (m + 1)


# ---------------------------------------------------------------- specs

_NAMED = {
    "generic": {},
    "dn": {"a^2": ONE, "c^2": q},
    "schur-c": {"a^2": t, "c^2": t ** 2},
    "schur-d": {"a^2": ONE, "c^2": t},
    "hl-c": {"a^2": t, "c^2": RationalExpr(0)},
    "hl-d": {"a^2": ONE, "c^2": RationalExpr(0)},
}


def named_spec(name: str) -> SpecField:
    """Parameter specializations of the (a, -a, c, -c) family.

    ``cnb:<b>`` is the (C_n, C_n) point a^2 = b, c^2 = q*b with b an
    expression over the alphabet, e.g. ``cnb:t`` or ``cnb:1/2``.
    """
    if name == "generic":
        return IDENTITY
    if name.startswith("cnb:"):
        b = parse(name[4:])
        return SpecField(name, {"a^2": b, "c^2": q * b})
    if name not in _NAMED:
        raise ValueError(f"unknown spec {name!r}")
    return SpecField(name, dict(_NAMED[name]))


# ---------------------------------------------------------------- f, F

def f_def(s_val) -> RationalExpr:
    s_val = RationalExpr(s_val)
    w = A2 * C2
    num = (1 - 1 / s_val) * (1 - t ** 2 / (s_val * w)) * (1 + t / (s_val * A2)) * (1 + t / (s_val * C2))
    den = (1 - t / (s_val ** 2 * w)) * (1 - t ** 3 / (s_val ** 2 * w))
    return (num / den).reduced()


def F(s_val, l: int) -> RationalExpr:
    return f_def(RationalExpr(s_val) / t ** l)


# ---------------------------------------------------------------- B, B~

def _head_ratio(s_val, j):
    """(s^2/t^2;t^2)_j (1-s^2 t^(4j-2)) / (1-s^2/t^2), with the pole cancelled."""
    if j == 0:
        return ONE
    return qpoch(s_val ** 2, t ** 2, j - 1) * (1 - s_val ** 2 * t ** (4 * j - 2))


def _phi43_terms(upper, lower, j):
    """Terms k = 0..j of a 4phi3 in base t^2 with argument t^2."""
    t2 = t ** 2
    out = []
    term = ONE
    out.append(term)
    for k in range(j):
        num = term * t2
        for u in upper:
            num = num * (1 - u * t2 ** k)
        den = 1 - t2 ** (k + 1)
        for l in lower:
            den = den * (1 - l * t2 ** k)
        term = num / den
        out.append(term)
    return out


def B(s_val, j: int) -> RationalExpr:
    """B(s, j) as a single-sum 4phi3 times its prefactor."""
    s_val = RationalExpr(s_val)
    pre = (-1) ** j / s_val ** j * _head_ratio(s_val, j) / qpoch(t ** 2, t ** 2, j)
    upper = [-s_val * A2, -s_val * C2, s_val ** 2 * t ** (2 * j - 2), t ** (-2 * j)]
    lower = [-s_val, -s_val * t, s_val ** 2 * A2 * C2 / t]
    return (pre * sum_exprs(_phi43_terms(upper, lower, j))).reduced()


def Btilde(s_val, j: int) -> RationalExpr:
    s_val = RationalExpr(s_val)
    pre = (s_val * t ** (j - 1)) ** (-j) * qpoch(t ** (2 * j) * s_val ** 2, t ** 2, j) / qpoch(t ** 2, t ** 2, j)
    w = t ** (-2 * j + 2)
    upper = [-w / (s_val * A2), -w / (s_val * C2), w / s_val ** 2, t ** (-2 * j)]
    lower = [-t ** (-2 * j + 1) / s_val, -w / s_val, t ** (-4 * j + 5) / (s_val ** 2 * A2 * C2)]
    return (pre * sum_exprs(_phi43_terms(upper, lower, j))).reduced()


def B_alt(s_val, j: int) -> RationalExpr:
    """The Sears-transformed form of B(s, j)."""
    s_val = RationalExpr(s_val)
    if j == 0:
        return ONE
    # (s^2/t^2;t^2)_j / (1 - s/t) = (1 + s/t) (s^2;t^2)_{j-1}
    head = (1 + s_val / t) * qpoch(s_val ** 2, t ** 2, j - 1) * (1 - s_val * t ** (2 * j - 1))
    pre = (-1) ** j * t ** j / s_val ** j * head / qpoch(t ** 2, t ** 2, j)
    upper = [-s_val * A2 / t, -s_val * C2 / t, s_val ** 2 * t ** (2 * j - 2), t ** (-2 * j)]
    lower = [-s_val, -s_val / t, s_val ** 2 * A2 * C2 / t]
    return (pre * sum_exprs(_phi43_terms(upper, lower, j))).reduced()


def Btilde_alt(s_val, j: int) -> RationalExpr:
    s_val = RationalExpr(s_val)
    pre = (
        t ** j * (s_val * t ** (j - 1)) ** (-j)
        * qpoch(s_val ** 2 * t ** (2 * j), t ** 2, j) / qpoch(t ** 2, t ** 2, j)
        * (1 + s_val / t) / (1 + s_val * t ** (2 * j - 1))
    )
    w = t ** (-2 * j + 3)
    upper = [-w / (s_val * A2), -w / (s_val * C2), t ** (-2 * j + 2) / s_val ** 2, t ** (-2 * j)]
    lower = [-t ** (-2 * j + 2) / s_val, -w / s_val, t ** (-4 * j + 5) / (s_val ** 2 * A2 * C2)]
    return (pre * sum_exprs(_phi43_terms(upper, lower, j))).reduced()


@lru_cache(maxsize=None)
def B_coeff(m: int, j: int) -> RationalExpr:
    """B(t^(m+1), j); m = -1 gives the value at s = 1."""
    if m < -1 or j < 0:
        raise ValueError("need m >= -1 and j >= 0")
    return B(_s_of(m), j)


@lru_cache(maxsize=None)
def Btilde_coeff(m: int, j: int) -> RationalExpr:
    if m < -1 or j < 0:
        raise ValueError("need m >= -1 and j >= 0")
    return Btilde(_s_of(m), j)


def B_via_bibasic(s_val, i: int) -> RationalExpr:
    """B(s, i) through the bibasic series obtained from Bailey's transformation."""
    from .qseries import bibasic_phi

    s_val = RationalExpr(s_val)
    if i == 0:
        return ONE
    # (s/t;t)_i/(s/t;t)_{2i} = 1/(s t^(i-1);t)_i keeps s = t regular
    pre = (
        qpoch(1 / C2, t, i) / qpoch(t, t, i)
        / qpoch(s_val * C2, t, i)
        * qpoch(s_val, t, 2 * i) / qpoch(s_val * t ** (i - 1), t, i)
        * C2 ** i
    )
    series = bibasic_phi(
        [t * C2 / A2, s_val * C2 * t, s_val ** 2 * C2 ** 2 / t ** 2],
        [s_val * C2 / t, s_val ** 2 * A2 * C2 / t],
        [s_val * t ** (i - 1), t ** (-i)],
        [C2 * t ** (-i + 1), s_val * C2 * t ** i],
        t ** 2, t, A2 * t, i,
    )
    return (pre * series).reduced()


# ---------------------------------------------------------------- C

def C_general(s_val, j: int, m) -> RationalExpr:
    """Sum_i B(s, i) binom(m + 2j, j - i) with s and m independent."""
    return sum_exprs(B(s_val, i) * gen_binom(m + 2 * j, j - i) for i in range(j + 1)).reduced()


@lru_cache(maxsize=None)
def C_coeff(m: int, j: int) -> RationalExpr:
    """C(t^(m+1), j) for integer m >= -1."""
    if m < -1 or j < 0:
        raise ValueError("need m >= -1 and j >= 0")
    return sum_exprs(B_coeff(m, i) * comb_signed(m + 2 * j, j - i) for i in range(j + 1)).reduced()


def C_symbolic(j: int) -> RationalExpr:
    """C(s, j) with both s and m kept as free symbols."""
    return C_general(s, j, var("m"))


def comb_signed(n: int, k: int) -> Fraction:
    """Binomial n(n-1)...(n-k+1)/k! valid for negative n."""
    return Fraction(gen_binom(n, k))


# ---------------------------------------------------------------- paths

@dataclass(frozen=True)
class PathTuple:
    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def enumerate_paths(r: int, i: int) -> list:
    """All (d_1..d_i) with 0 <= d_1 <= r and d_k - 1 <= d_(k+1) <= r.

    Entries after the first may go negative; the step-down rule bounds them
    below by -(i-1).
    """
    if r < 0 or i < 0:
        raise ValueError("need r, i >= 0")
    out = []

    def grow(prefix):
        if len(prefix) == i:
            out.append(PathTuple(tuple(prefix)))
            return
        lo = 0 if not prefix else prefix[-1] - 1
        for d in range(lo, r + 1):
            prefix.append(d)
            grow(prefix)
            prefix.pop()

    grow([])
    return out


def C_via_paths(r: int, i: int, values: dict | None = None):
    """Sum over enumerate_paths(r, i) of prod_k F(t^(r+1), d_k).

    Summed by dynamic programming on the last step: a path may continue
    from d to any d' >= d - 1.  With ``values`` the weights are evaluated
    at that exact point first and a Fraction is returned.
    """
    if r < 0 or i < 0:
        raise ValueError("need r, i >= 0")
    key = None if values is None else tuple(sorted(values.items()))
    return _path_sum(r, i, key)


@lru_cache(maxsize=None)
def _path_sum(r, i, key):
    if i == 0:
        return ONE if key is None else Fraction(1)
    s_val = _s_of(r)
    low = -(i - 1)
    weights = {d: F(s_val, d) for d in range(low, r + 1)}
    if key is not None:
        point = dict(key)
        weights = {d: substitute_scalar(w, point) for d, w in weights.items()}
    totals = {d: weights[d] for d in range(0, r + 1)}
    for _ in range(i - 1):
        nxt = {}
        for d_new in range(low, r + 1):
            reach = [v for d, v in totals.items() if d <= d_new + 1]
            if reach:
                nxt[d_new] = total(reach) * weights[d_new]
        totals = nxt
    out = total(totals.values())
    return out.reduced() if key is None else out


# ---------------------------------------------------------------- e(s, m)

def e_general(s_val, m: int) -> RationalExpr:
    s_val = RationalExpr(s_val)
    pre = (t / (a * s_val)) ** m * qpoch(s_val, t, m) * qpoch(-s_val * A2 * t ** (-m), t ** 2, m) / qpoch(t, t, m)
    upper = [t ** (-m), t ** (-m + 1), -t ** (-m + 1) / s_val, -t ** (-m + 2) / s_val]
    lower = [-t ** (-m + 2) / (A2 * s_val), -t ** (-m) * A2 * s_val, t ** (-2 * m + 4) / s_val ** 2]
    terms = []
    t2 = t ** 2
    term = ONE
    for k in range(m // 2 + 1):
        terms.append(term)
        if k == m // 2:
            break
        num = term * t2
        for u in upper:
            num = num * (1 - u * t2 ** k)
        den = 1 - t2 ** (k + 1)
        for l in lower:
            den = den * (1 - l * t2 ** k)
        term = num / den
    return (pre * sum_exprs(terms)).reduced()


@lru_cache(maxsize=None)
def e_coeff(k: int, m: int) -> RationalExpr:
    """e(t^(k+1), m)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return e_general(_s_of(k), m)


# ---------------------------------------------------------------- matrices

ORIENTATIONS = ("lower-even", "upper-even", "lower")


@dataclass
class TriMatrix:
    """Finite corner of an infinite triangular matrix; absent entries are 0."""

    size: int
    orientation: str
    entries: dict = field(default_factory=dict)
    spec: str = "generic"
    kind: str = ""

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"bad orientation {self.orientation!r}")

    def allowed(self, row: int, col: int) -> bool:
        if not (0 <= row < self.size and 0 <= col < self.size):
            return False
        if self.orientation == "lower":
            return row >= col
        if self.orientation == "lower-even":
            return row >= col and (row - col) % 2 == 0
        return col >= row and (col - row) % 2 == 0

    def __getitem__(self, key):
        return self.entries.get(key, RationalExpr(0))

    def __setitem__(self, key, value):
        if not self.allowed(*key):
            raise IndexError(f"entry {key} outside the {self.orientation} pattern")
        value = RationalExpr(value)
        if value.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def __matmul__(self, other: "TriMatrix") -> "TriMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        orient = self.orientation if self.orientation == other.orientation else "lower"
        out = TriMatrix(self.size, orient, spec=self.spec, kind=f"{self.kind}*{other.kind}")
        by_row = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(k, []).append((i, v))
        acc = {}
        for (k, j), w in other.entries.items():
            for i, v in by_row.get(k, ()):
                acc.setdefault((i, j), []).append(v * w)
        for key, parts in acc.items():
            total = sum_exprs(parts).reduced()
            if not total.is_zero():
                out.entries[key] = total
        return out

    def map(self, fn) -> "TriMatrix":
        out = TriMatrix(self.size, self.orientation, spec=self.spec, kind=self.kind)
        for key, v in self.entries.items():
            out[key] = fn(v)
        return out

    def specialize(self, spec: SpecField) -> "TriMatrix":
        out = self.map(lambda v: substitute(v, spec))
        out.spec = spec.describe()
        return out

    def is_identity(self) -> bool:
        for i in range(self.size):
            if self[(i, i)] != 1:
                return False
        return all(i == j for (i, j) in self.entries)

    def is_numeric(self) -> bool:
        return all(v.constant_value() is not None for v in self.entries.values())

    def to_document(self) -> dict:
        rows = sorted(self.entries)
        return {
            "kind": self.kind,
            "size": self.size,
            "orientation": self.orientation,
            "spec": self.spec,
            "entries": [{"row": r, "col": k, "value": self.entries[(r, k)].text()} for r, k in rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "TriMatrix":
        doc = json.loads(text)
        out = cls(doc["size"], doc["orientation"], spec=doc["spec"], kind=doc["kind"])
        for e in doc["entries"]:
            out[(e["row"], e["col"])] = parse(e["value"])
        return out

    def to_csv(self) -> str:
        if not self.is_numeric():
            raise ValueError("CSV output needs a fully specialized numeric matrix")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for i in range(self.size):
            row = []
            for j in range(self.size):
                v = self[(i, j)].constant_value()
                row.append(str(v) if v is not None else "0")
            writer.writerow(row)
        return buf.getvalue()


def _check_size(size: int):
    bound = max_size()
    if size < 0 or size > bound:
        raise ValueError(f"size {size} exceeds the configured bound {bound} (set MCK_MAX_SIZE)")


def build_matrices(kind: str, size: int, spec: SpecField = IDENTITY, n: int | None = None) -> TriMatrix:
    """The B, Btilde (at s = t^n) or C transition matrix truncated to size rows.

    B and Btilde rows are indexed by r with (r, r-2i) entry B(t^(n-r+1), i);
    n defaults to size - 1 so that every row corresponds to 0 <= r <= n.
    C has entry C(t^(r+1), i) at (r, r+2i) and does not depend on n.
    """
    _check_size(size)
    if kind == "C":
        out = TriMatrix(size, "upper-even", kind="C")
        for r in range(size):
            for i in range((size - 1 - r) // 2 + 1):
                out[(r, r + 2 * i)] = C_coeff(r, i)
    elif kind in ("B", "Btilde"):
        n = size - 1 if n is None else n
        coeff = B_coeff if kind == "B" else Btilde_coeff
        out = TriMatrix(size, "lower-even", kind=kind)
        for r in range(size):
            if n - r < -1:
                raise ValueError(f"row {r} needs n >= {r - 1}")
            for i in range(r // 2 + 1):
                out[(r, r - 2 * i)] = coeff(n - r, i)
    else:
        raise ValueError(f"unknown matrix kind {kind!r}")
    if spec.mapping:
        return out.specialize(spec)
    return out


def identity_matrix(size: int, orientation: str = "lower-even") -> TriMatrix:
    out = TriMatrix(size, orientation, kind="I")
    for i in range(size):
        out[(i, i)] = 1
    return out


def bressoud_M(u, v, x, y, base, size: int) -> TriMatrix:
    """Even lower-triangular matrix with (r, r-2i) entry

    y^i v^i (x/y;q)_i/(q;q)_i * (u q^(r-2i);q)_(2i) / ((u x q^(r-i);q)_i (u y q^(r-2i+1);q)_i).
    The factor y^i (x/y;q)_i is expanded as prod (y - x q^k) so y = 0 is allowed.
    """
    out = TriMatrix(size, "lower-even", kind="M")
    for r in range(size):
        for i in range(r // 2 + 1):
            head = ONE
            for k in range(i):
                head = head * (y - x * base ** k)
            val = (
                head * RationalExpr(v) ** i / qpoch(base, base, i)
                * qpoch(u * base ** (r - 2 * i), base, 2 * i)
                / qpoch(u * x * base ** (r - i), base, i)
                / qpoch(u * y * base ** (r - 2 * i + 1), base, i)
            )
            out[(r, r - 2 * i)] = val
    return out


def bressoud_Mtilde(u_half, v_half, x, y, size: int) -> TriMatrix:
    """Conjugate of M(u, v; x, y; t^2) by d_r, with u = u_half^2, v = v_half^2.

    d_r = (t^2 v^(1/2);t)_r / (u^(1/2);t)_r * (u^(1/4)/v^(3/4))^r.
    """
    u = u_half ** 2
    out = TriMatrix(size, "lower-even", kind="Mtilde")
    t2 = t ** 2
    for r in range(size):
        for i in range(r // 2 + 1):
            head = ONE
            for k in range(i):
                head = head * (y - x * t2 ** k)
            val = (
                head / qpoch(t2, t2, i)
                * qpoch(v_half * t ** (r - 2 * i + 2), t, 2 * i)
                / qpoch(u_half * t ** (r - 2 * i), t, 2 * i)
                * qpoch(u * t ** (2 * r - 4 * i), t2, 2 * i)
                / qpoch(u * x * t ** (2 * r - 2 * i), t2, i)
                / qpoch(u * y * t ** (2 * r - 4 * i + 2), t2, i)
                * (u_half / v_half) ** i
            )
            out[(r, r - 2 * i)] = val
    return out


def bressoud_B(s_val, size: int) -> TriMatrix:
    """B(s) as the product of two Bressoud matrices."""
    s_val = RationalExpr(s_val)
    left = bressoud_Mtilde(t / (s_val * C2), 1 / (s_val * t ** 2), C2 / (t * A2), t ** -2, size)
    right = bressoud_M(1 / s_val, t, 1 / C2, ONE, t, size)
    out = left @ right
    out.kind, out.orientation = "B", "lower-even"
    return out


def bressoud_Btilde(s_val, size: int) -> TriMatrix:
    s_val = RationalExpr(s_val)
    left = bressoud_M(1 / s_val, t, ONE, 1 / C2, t, size)
    right = bressoud_Mtilde(t / (s_val * C2), 1 / (s_val * t ** 2), t ** -2, C2 / (t * A2), size)
    out = left @ right
    out.kind, out.orientation = "Btilde", "lower-even"
    return out


def krattenthaler_N(x, y, base, size: int) -> TriMatrix:
    """Lower-triangular matrix with (i, j) entry

    y^(i-j) (x/y;q)_(i-j)/(q;q)_(i-j) / ((x q^(i+j);q)_(i-j) (y q^(2j+1);q)_(i-j)).
    """
    out = TriMatrix(size, "lower", kind="N")
    for i in range(size):
        for j in range(i + 1):
            d = i - j
            head = ONE
            for k in range(d):
                head = head * (y - x * base ** k)
            val = (
                head / qpoch(base, base, d)
                / qpoch(x * base ** (i + j), base, d)
                / qpoch(y * base ** (2 * j + 1), base, d)
            )
            out[(i, j)] = val
    return out


def krattenthaler_Ntilde(u_vec, v, x, y, size: int) -> TriMatrix:
    """N(x, y v; t) conjugated by g_r = v^(-r) (u1 t^(-r);t)_r (u2;t)_r (u3;t)_r (u4;t)_r."""
    u1, u2, u3, u4 = u_vec
    out = TriMatrix(size, "lower", kind="Ntilde")
    for r in range(size):
        for i in range(r + 1):
            head = ONE
            for k in range(i):
                head = head * (y - x * t ** k / v)
            val = (
                head / qpoch(t, t, i)
                * qpoch(u1 * t ** (-r), t, i)
                * qpochs([u2 * t ** (r - i), u3 * t ** (r - i), u4 * t ** (r - i)], t, i)
                / qpoch(x * t ** (2 * r - i), t, i)
                / qpoch(y * v * t ** (2 * r - 2 * i + 1), t, i)
            )
            out[(r, r - i)] = val
    return out


def interp_parameters(n: int, params) -> dict:
    """Arguments of Ntilde realizing the P <-> E_interp transitions in n variables.

    ``params`` is (a, b, c, d).  Returns keyword sets for the forward
    (P from E_interp) and backward (E_interp from P) matrices.
    """
    pa, pb, pc, pd = params
    w = t ** (-n + 1)
    v = -t ** (1 - 2 * n) / (pa * pa * pb * pc * pd)
    u_vec = (t ** (n + 1), w / (pa * pb), w / (pa * pc), w / (pa * pd))
    x0 = -pa * v
    zero = RationalExpr(0)
    return {
        "forward": dict(u_vec=u_vec, v=v, x=x0, y=zero),
        "backward": dict(u_vec=u_vec, v=v, x=zero, y=-pa),
    }


def interp_coefficient(n: int, r: int, l: int, params, inverse: bool = False) -> RationalExpr:
    """Closed-form transition coefficient between P_(1^r) and E_(r-l)(x;a|t)."""
    pa, pb, pc, pd = params
    s_val = t ** (n - r + 1)
    num = qpochs([s_val, s_val * pa * pb / t, s_val * pa * pc / t, s_val * pa * pd / t], t, l)
    abcd = pa * pb * pc * pd
    if inverse:
        den = (pa * s_val / t) ** l * qpoch(t, t, l) * qpoch(t ** (l - 3) * s_val ** 2 * abcd, t, l)
        return (-1) ** l * num / den
    den = t ** (l * (l - 1) // 2) * (pa * s_val / t) ** l * qpoch(t, t, l) * qpoch(s_val ** 2 * abcd / t ** 2, t, l)
    return num / den


# ---------------------------------------------------------------- Kostka

def kostka(family: str, n: int, r: int, j: int) -> RationalExpr:
    """Kostka polynomial for one-column shapes; both closed forms must agree."""
    if not (0 <= r <= n and 0 <= j <= r // 2):
        raise ValueError("need 0 <= r <= n and 0 <= j <= r/2")
    m = n - r
    t2 = t ** 2
    if family == "C":
        ratio = t ** (2 * j) * qint(m + 1, t2) / qint(m + j + 1, t2) * qbinom(m + 2 * j, j, t2)
        split = qbinom(m + 2 * j, j, t2) - (qbinom(m + 2 * j, j - 1, t2) if j else 0)
    elif family == "D":
        ratio = t ** j * (1 + t ** m) / (1 + t ** (m + 2 * j)) * qbinom(m + 2 * j, j, t2)
        if j == 0:
            split = qbinom(m, 0, t2)
        else:
            split = t ** (m + j) * qbinom(m + 2 * j - 1, j - 1, t2) + t ** j * qbinom(m + 2 * j - 1, j, t2)
    else:
        raise ValueError("family must be 'C' or 'D'")
    ratio, split = ratio.reduced(), RationalExpr(split).reduced()
    if ratio != split:
        raise ArithmeticError(f"closed forms disagree for {family}, n={n}, r={r}, j={j}")
    coeffs = polynomial_coefficients(split)
    if coeffs is None or any(v < 0 or v.denominator != 1 for v in coeffs.values()):
        raise ArithmeticError(f"K^{family} is not a polynomial with nonnegative integer coefficients")
    return split


def polynomial_coefficients(e: RationalExpr, name: str = "t"):
    """{exponent: coefficient} if e is a polynomial in one variable, else None."""
    from .exactalg import ALPHABET

    e = RationalExpr(e)
    den = e.den_poly().terms
    if len(den) != 1 or any(any(k) for k in den):
        return None
    (dc,) = den.values()
    slot = ALPHABET.index(name)
    out = {}
    for exps, coeff in e.num_poly().terms.items():
        if any(x for i, x in enumerate(exps) if i != slot):
            return None
        out[exps[slot]] = coeff / dc
    return out


# ---------------------------------------------------------------- q -> 0 limits

def hl_limit_B(family: str, m: int, j: int, tilde: bool = False) -> RationalExpr:
    """The q -> 0 closed forms of B(t^(m+1), j) and Btilde(t^(m+1), j).

    Family C is a = t^(1/2), c = q^(1/2) t^(1/2); family D is a = 1, c = q^(1/2).
    For B the ratio [m+2j]/[m] times binom[m+j-1, j] is used in the
    cancelled form that stays finite at m = 0.
    """
    t2 = t ** 2
    if tilde:
        if family == "C":
            return qbinom(m + 2 * j, j, t2)
        if family == "D":
            return (t ** j * (1 + t ** m) / (1 + t ** (m + 2 * j)) * qbinom(m + 2 * j, j, t2)).reduced()
        raise ValueError("family must be 'C' or 'D'")
    if j == 0:
        return ONE
    tail = qfact(m + j - 1, t2) / (qfact(j, t2) * qfact(m, t2))
    if family == "C":
        out = (-1) ** j * t ** (j * (j - 1)) * qint(m + 2 * j, t2) * tail
    elif family == "D":
        out = (-1) ** j * t ** (j * j) * qint(m + 2 * j, t) * (1 + t ** m) / (1 + t) * tail
    else:
        raise ValueError("family must be 'C' or 'D'")
    return out.reduced()


# ---------------------------------------------------------------- verification

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _is_zero(e, randomized: bool) -> bool:
    e = RationalExpr(e)
    if e.reduced().is_zero():
        return True
    return randomized and probably_zero(e, trials=20, seed=0)


def verify_recursions(size: int, spec: SpecField = IDENTITY, randomized: bool = False) -> list:
    """Check the deformed Catalan recursion and the B/Btilde four-term relations.

    Returns a list of CheckResult; nothing raises on failure.
    """
    report = []
    spec_fn = (lambda e: substitute(e, spec)) if spec.mapping else (lambda e: e)
    cm = {}
    for r in range(size + 1):
        for i in range((size - r) // 2 + 1):
            cm[(r, r + 2 * i)] = spec_fn(C_coeff(r, i))

    def C_at(i, j):
        if i < 0 or j < i or (j - i) % 2:
            return RationalExpr(0)
        return cm[(i, j)]

    fvals = {i: spec_fn(F(t ** i, -1)) for i in range(size + 2)}
    ok = C_at(0, 0) == 1 and all(C_at(i - 1, i - 1) == C_at(i, i) for i in range(1, size + 1))
    report.append(CheckResult("catalan-diagonal", ok))
    bad = [j for j in range(2, size + 1, 2) if not _is_zero(fvals[0] * C_at(1, j - 1) - C_at(0, j), randomized)]
    report.append(CheckResult("catalan-boundary", not bad, f"failing j={bad}" if bad else ""))
    bad = []
    for j in range(1, size + 1):
        for i in range(1, j):
            if (i + j) % 2:
                continue
            lhs = C_at(i - 1, j - 1) + fvals[i] * C_at(i + 1, j - 1)
            if not _is_zero(lhs - C_at(i, j), randomized):
                bad.append((i, j))
    report.append(CheckResult("catalan-three-term", not bad, f"failing (i,j)={bad}" if bad else ""))

    bad = []
    for m in range(-1, size - 1):
        for j in range(1, (size - m) // 2 + 1):
            lhs = C_coeff(m, j) + F(_s_of(m), -1) * C_coeff(m + 2, j - 1)
            if not _is_zero(lhs - C_coeff(m + 1, j), randomized):
                bad.append((m, j))
    report.append(CheckResult("C-three-term", not bad, f"failing (m,j)={bad}" if bad else ""))

    bad = []
    for m in range(-1, size - 2):
        for i in range(1, (size - m) // 2 + 1):
            lhs = B_coeff(m, i) + F(_s_of(m), -1) * B_coeff(m + 2, i - 1)
            rhs = B_coeff(m + 1, i) + B_coeff(m + 1, i - 1)
            if not _is_zero(spec_fn(lhs - rhs), randomized):
                bad.append((m, i))
    report.append(CheckResult("B-four-term", not bad, f"failing (m,i)={bad}" if bad else ""))

    bad = []
    for m in range(0, size - 1):
        for i in range(1, (size - m) // 2 + 1):
            lhs = Btilde_coeff(m, i) + F(_s_of(m), 2 - 2 * i) * Btilde_coeff(m, i - 1)
            rhs = Btilde_coeff(m - 1, i) + Btilde_coeff(m + 1, i - 1)
            if not _is_zero(spec_fn(lhs - rhs), randomized):
                bad.append((m, i))
    report.append(CheckResult("Btilde-four-term", not bad, f"failing (m,i)={bad}" if bad else ""))
    return report
