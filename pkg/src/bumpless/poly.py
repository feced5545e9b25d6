"""
Exact multivariate polynomials and the Schubert/Grothendieck families.

Two independent routes are provided for both families: sums of BPD weights
over the enumerated diagrams, and divided differences starting from the
longest permutation. The transition coefficients

    a_{w,v} = #{B in BPD(w) : co(B) reduced, co(B) traces v}

give the expansion ``G_w = sum_v (-1)^(len v - len w) a_{w,v} S_v``.
"""

from __future__ import annotations

import csv
import io
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .diagram import co
from .enumeration import bpds_of
from .errors import InternalInconsistency, InvalidInput, NotInSpan, ParseError
from .perm import Permutation, lehmer_code, longest
from .trace import trace

__all__ = [
    "MultiPoly", "ExpansionTable", "schubert", "grothendieck", "schubert_oracle",
    "grothendieck_oracle", "a_table", "verify_g_to_s", "schubert_expand",
    "divided_difference",
]

Exp = tuple[int, ...]


def _order_key(e: Exp) -> tuple:
    # graded, then lex with x1 > x2 > ...
    return (sum(e), tuple(-k for k in e))


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial in x_1..x_nvars with integer coefficients."""

    nvars: int
    terms: Mapping[Exp, int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[Exp, int] = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != self.nvars or any(k < 0 for k in e):
                raise InvalidInput(f"bad exponent vector {e} for {self.nvars} variables")
            if c:
                clean[e] = int(c)
        object.__setattr__(self, "terms", clean)

    # construction
    @classmethod
    def const(cls, nvars: int, c: int = 1) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> MultiPoly:
        if not 1 <= i <= nvars:
            raise InvalidInput(f"x{i} outside x1..x{nvars}")
        return cls(nvars, {tuple(int(k == i - 1) for k in range(nvars)): 1})

    @classmethod
    def monomial(cls, exp: Iterable[int], c: int = 1) -> MultiPoly:
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    # arithmetic
    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise InvalidInput("polynomials in different numbers of variables")
            return other
        if isinstance(other, int):
            return MultiPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        out = Counter(self.terms)
        for e, c in other.terms.items():
            out[e] += c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._lift(other)
        out: Counter = Counter()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # structure
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> MultiPoly:
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Iterable[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def swap(self, i: int) -> MultiPoly:
        """Exchange x_i and x_{i+1}."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return MultiPoly(self.nvars, out)

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    # serialization
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, 1) if a
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else f"{mag}*{mono}" if mono else str(mag)
            sign = "-" if c < 0 else "+"
            parts.append(("-" + body if c < 0 else body) if k == 0 else f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def to_json_obj(self) -> list[dict]:
        return [{"exp": list(e), "coef": c} for e, c in self.sorted_terms()]

    @classmethod
    def from_json_obj(cls, obj, nvars: int | None = None) -> MultiPoly:
        try:
            terms = {tuple(t["exp"]): int(t["coef"]) for t in obj}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial object: {exc}") from None
        if nvars is None:
            lens = {len(e) for e in terms}
            if len(lens) > 1:
                raise ParseError("exponent vectors of different lengths")
            nvars = lens.pop() if lens else 1
        return cls(nvars, terms)

    _TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
    _FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")

    @classmethod
    def parse(cls, text: str, nvars: int) -> MultiPoly:
        """Parse sums of terms like ``3*x1^2*x2 - x3 + 1``."""
        s = text.replace("**", "^").strip()
        if not s:
            raise ParseError("empty polynomial")
        out: Counter = Counter()
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse polynomial near {s[pos:]!r}", 1, pos + 1)
            sign = -1 if m.group(1) == "-" else 1
            coef, exp = sign, [0] * nvars
            for f in m.group(2).strip().split("*"):
                f = f.strip()
                if f.isdigit():
                    coef *= int(f)
                    continue
                fm = cls._FACTOR.match(f)
                if not fm:
                    raise ParseError(f"bad factor {f!r}", 1, m.start(2) + 1)
                i, a = int(fm.group(1)), int(fm.group(2) or 1)
                if not 1 <= i <= nvars:
                    raise ParseError(f"variable x{i} outside x1..x{nvars}", 1, m.start(2) + 1)
                exp[i - 1] += a
            out[tuple(exp)] += coef
            pos = m.end()
        return cls(nvars, out)


def divided_difference(f: MultiPoly, i: int) -> MultiPoly:
    """(f - s_i f) / (x_i - x_{i+1}), by exact long division in x_i."""
    if not 1 <= i < f.nvars:
        raise InvalidInput(f"divided difference index {i} outside 1..{f.nvars - 1}")
    num = Counter((f - f.swap(i)).terms)
    quo: Counter = Counter()
    a = i - 1
    while True:
        live = [(e, c) for e, c in num.items() if c and e[a] > 0]
        if not live:
            break
        e, c = max(live, key=lambda t: (t[0][a], t[0]))
        down = list(e)
        down[a] -= 1
        down = tuple(down)
        quo[down] += c
        # subtract c * x^down * (x_i - x_{i+1})
        num[e] -= c
        shifted = list(down)
        shifted[a + 1] += 1
        num[tuple(shifted)] += c
    if any(num.values()):
        raise InternalInconsistency(f"division by x{i} - x{i + 1} left a remainder")
    return MultiPoly(f.nvars, quo)


def _weight_x(n: int, rows: Iterable[int]) -> MultiPoly:
    exp = [0] * n
    for i in rows:
        exp[i - 1] += 1
    return MultiPoly.monomial(exp)


@lru_cache(maxsize=None)
def _schubert(w: Permutation) -> MultiPoly:
    out: Counter = Counter()
    for d in bpds_of(w).reduced:
        exp = [0] * w.n
        for i in trace(d, check=False).blank_rows:
            exp[i - 1] += 1
        out[tuple(exp)] += 1
    return MultiPoly(w.n, out)


def schubert(w: Permutation | str) -> MultiPoly:
    """Sum of blank-row weights over the reduced BPDs of w."""
    return _schubert(Permutation.parse(w))


@lru_cache(maxsize=None)
def _grothendieck(w: Permutation) -> MultiPoly:
    n, ell = w.n, w.length
    total = MultiPoly(n)
    one = MultiPoly.const(n)
    for d in bpds_of(w).all:
        tr = trace(d, check=False)
        term = _weight_x(n, tr.blank_rows)
        for j in tr.jay_rows:
            term = term * (one - MultiPoly.var(n, j))
        sign = -1 if (len(tr.blank_rows) - ell) % 2 else 1
        total = total + sign * term
    return total


def grothendieck(w: Permutation | str) -> MultiPoly:
    """Signed sum of blank and jay weights over all BPDs of w."""
    return _grothendieck(Permutation.parse(w))


def _descent_path(w: Permutation) -> list[int]:
    """Indices i_1..i_k with w = w0 s_{i_1} ... s_{i_k}, each step lowering length."""
    steps = []
    cur = longest(w.n)
    while cur != w:
        for i in range(1, w.n):
            nxt = cur.swap_positions(i)
            # move towards w: only undo an inversion that w does not have
            if nxt.length < cur.length and _inversions(w) <= _inversions(nxt):
                steps.append(i)
                cur = nxt
                break
        else:  # pragma: no cover
            raise InternalInconsistency(f"no descent path from the longest element to {w}")
    return steps


def _inversions(w: Permutation) -> frozenset[tuple[int, int]]:
    # value pairs (a, b), a < b, with b appearing before a
    e = w.entries
    return frozenset((e[j], e[i]) for i in range(len(e)) for j in range(i + 1, len(e)) if e[i] > e[j])


def _oracle_start(n: int) -> MultiPoly:
    return MultiPoly.monomial([n - k for k in range(1, n + 1)])


@lru_cache(maxsize=None)
def _schubert_oracle(w: Permutation) -> MultiPoly:
    f = _oracle_start(w.n)
    for i in _descent_path(w):
        f = divided_difference(f, i)
    return f


@lru_cache(maxsize=None)
def _grothendieck_oracle(w: Permutation) -> MultiPoly:
    n = w.n
    f = _oracle_start(n)
    one = MultiPoly.const(n)
    for i in _descent_path(w):
        f = divided_difference((one - MultiPoly.var(n, i + 1)) * f, i)
    return f


def schubert_oracle(w: Permutation | str) -> MultiPoly:
    return _schubert_oracle(Permutation.parse(w))


def grothendieck_oracle(w: Permutation | str) -> MultiPoly:
    return _grothendieck_oracle(Permutation.parse(w))


@dataclass(frozen=True)
class ExpansionTable:
    w: Permutation
    entries: dict[Permutation, int]

    def signed(self) -> dict[Permutation, int]:
        ell = self.w.length
        return {v: (-1) ** (v.length - ell) * a for v, a in self.entries.items()}

    def to_json_obj(self) -> dict:
        return {
            "w": self.w.to_json(),
            "entries": [
                {"v": v.to_json(), "a": a, "sign": (-1) ** (v.length - self.w.length)}
                for v, a in sorted(self.entries.items())
            ],
        }

    def csv_rows(self) -> list[tuple[str, str, int]]:
        return [(str(self.w), str(v), a) for v, a in sorted(self.entries.items())]

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        if header:
            wr.writerow(["w", "v", "a"])
        wr.writerows(self.csv_rows())
        return buf.getvalue()


@lru_cache(maxsize=None)
def _a_table(w: Permutation) -> ExpansionTable:
    counts: Counter = Counter()
    for d in bpds_of(w).all:
        tr = trace(co(d), check=False)
        if tr.reduced:
            counts[tr.perm] += 1
    return ExpansionTable(w, dict(sorted(counts.items())))


def a_table(w: Permutation | str) -> ExpansionTable:
    """Count the BPDs of w whose co-BPD is reduced, grouped by the co-BPD's permutation."""
    return _a_table(Permutation.parse(w))


def verify_g_to_s(w: Permutation | str) -> bool:
    """Exact check of the Grothendieck-to-Schubert expansion for w."""
    w = Permutation.parse(w)
    lhs = grothendieck(w)
    rhs = MultiPoly(w.n)
    for v, c in a_table(w).signed().items():
        rhs = rhs + c * schubert(v)
    return lhs == rhs


def _code_perm(code: Exp) -> Permutation | None:
    """Inverse Lehmer code, or None if the vector is not a code in S_n."""
    n = len(code)
    avail = list(range(1, n + 1))
    out = []
    for i, c in enumerate(code):
        if c >= len(avail) or (i == n - 1 and c):
            return None
        out.append(avail.pop(c))
    return Permutation(tuple(out))


def _lead_key(e: Exp) -> tuple[int, ...]:
    # compares the last variable's exponent first
    return tuple(reversed(e))


def schubert_expand(f: MultiPoly, n: int | None = None) -> dict[Permutation, int]:
    """Coefficients c_v with sum c_v S_v = f, peeled from the lowest degree upward."""
    n = f.nvars if n is None else n
    if f.nvars != n:
        raise InvalidInput(f"polynomial has {f.nvars} variables, expected {n}")
    rest = f
    out: dict[Permutation, int] = {}
    while rest:
        layer = rest.homogeneous_part(rest.min_degree())
        lead = max(layer.terms, key=_lead_key)
        v = _code_perm(lead)
        if v is None or lehmer_code(v) != lead:
            raise NotInSpan(f"monomial {MultiPoly.monomial(lead)} is not the leading term of any Schubert polynomial in S_{n}")
        c = layer.terms[lead]
        out[v] = out.get(v, 0) + c
        rest = rest - c * schubert(v)
    out = {v: c for v, c in sorted(out.items()) if c}
    check = MultiPoly(n)
    for v, c in out.items():
        check = check + c * schubert(v)
    if check != f:
        raise InternalInconsistency("Schubert expansion does not re-sum to the input")
    return out
