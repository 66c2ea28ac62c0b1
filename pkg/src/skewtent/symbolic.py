"""Kneading calculus: symbol sequences over {L, C, R}, parity ordering,
maximality, the star product, lower-limit variants and gap decompositions.

Sequences are represented canonically so that structural equality equals
semantic equality.  Finite admissible sequences are a word of L/R symbols
followed by a terminal C; infinite ones are eventually periodic and stored
as preperiod plus primitive period.  Plain words (no C) are passed around
as strings or tuples of single-character symbols.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

L = "L"
C = "C"
R = "R"

_SYMBOL_RANK = {L: 0, C: 1, R: 2}

LESS = -1
EQUAL = 0
GREATER = 1

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


def flip(symbol: str) -> str:
    """L and R swap, C is fixed."""
    if symbol == L:
        return R
    if symbol == R:
        return L
    return C


def word_parity_even(word: Sequence[str]) -> bool:
    """True when the word contains an even number of R's."""
    return sum(1 for s in word if s == R) % 2 == 0


def _check_word(word: Sequence[str], what: str) -> tuple[str, ...]:
    word = tuple(word)
    for s in word:
        if s not in (L, R):
            raise ValueError(f"{what} may only contain L and R, got {s!r}")
    return word


def _primitive(period: tuple[str, ...]) -> tuple[str, ...]:
    n = len(period)
    for d in range(1, n):
        if n % d == 0 and period == period[: d] * (n // d):
            return period[: d]
    return period


@dataclass(frozen=True)
class KneadingSeq:
    """An admissible symbol sequence, either C-terminated or eventually periodic.

    ``period is None`` encodes the finite sequence ``pre + C``; otherwise the
    sequence is ``pre`` followed by ``period`` repeated forever.  Instances
    are canonicalized on construction (primitive period, minimal preperiod),
    so ``==`` is semantic equality.
    """

    pre: tuple[str, ...]
    period: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        pre = _check_word(self.pre, "preperiod")
        period = self.period
        if period is not None:
            period = _check_word(period, "period")
            if not period:
                raise ValueError("period must be nonempty")
            period = _primitive(period)
            pre_l = list(pre)
            per_l = list(period)
            while pre_l and pre_l[-1] == per_l[-1]:
                pre_l.pop()
                per_l = [per_l[-1]] + per_l[:-1]
            pre = tuple(pre_l)
            period = tuple(per_l)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "period", period)

    # -- basic structure -------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.period is None

    @property
    def finite_length(self) -> int:
        """Total symbol count of a C-terminated sequence, C included."""
        if not self.is_finite:
            raise ValueError("infinite sequence has no finite length")
        return len(self.pre) + 1

    def symbol_at(self, i: int) -> str | None:
        """Symbol at index i, or None past the terminal C."""
        if i < len(self.pre):
            return self.pre[i]
        if self.period is not None:
            return self.period[(i - len(self.pre)) % len(self.period)]
        return C if i == len(self.pre) else None

    def prefix(self, n: int) -> list[str]:
        out = []
        for i in range(n):
            s = self.symbol_at(i)
            if s is None:
                break
            out.append(s)
        return out

    def __lt__(self, other: "KneadingSeq") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "KneadingSeq") -> bool:
        return compare(self, other) <= 0

    def __str__(self) -> str:
        return format_seq(self)


RL_INFINITY = KneadingSeq((R,), (L,))

_SEQ_RE = re.compile(r"^([LR]*)(?:(C)|\(([LR]+)\))?$")


def parse_seq(text: str) -> KneadingSeq:
    """Parse ``RLLRC``, ``(RLR)`` or ``RLL(RL)`` into a canonical sequence.

    A bare word such as ``RLL`` denotes the C-terminated sequence RLLC.
    """
    m = _SEQ_RE.match(text.strip())
    if not m or not text.strip():
        raise ValueError(f"cannot parse sequence {text!r}")
    pre, period = m.group(1), m.group(3)
    if period is not None:
        return KneadingSeq(tuple(pre), tuple(period))
    return KneadingSeq(tuple(pre), None)


def format_seq(seq: KneadingSeq) -> str:
    if seq.is_finite:
        return "".join(seq.pre) + C
    return "".join(seq.pre) + "(" + "".join(seq.period) + ")"


def parse_word(text: str) -> tuple[str, ...]:
    """A plain L/R word, optionally with one trailing C that is dropped."""
    text = text.strip()
    if text.endswith(C):
        text = text[:-1]
    return _check_word(tuple(text), "word")


# -- ordering ------------------------------------------------------------


def _walk_compare(a_sym, b_sym, bound: int) -> int:
    """Parity-lexicographic comparison over symbol callbacks."""
    r_count = 0
    for i in range(bound):
        x = a_sym(i)
        y = b_sym(i)
        if x is None and y is None:
            return EQUAL
        if x is None or y is None:
            raise AssertionError("admissible sequences cannot end unequally")
        if x != y:
            d = LESS if _SYMBOL_RANK[x] < _SYMBOL_RANK[y] else GREATER
            return d if r_count % 2 == 0 else -d
        if x == R:
            r_count += 1
        if x == C:
            return EQUAL
    return EQUAL


def compare(a: KneadingSeq, b: KneadingSeq) -> int:
    """Exact order: returns LESS, EQUAL or GREATER.

    At the first differing index the symbol order L < C < R applies, reversed
    when the common prefix holds an odd number of R's.  For two eventually
    periodic sequences a difference, if any, shows up within the preperiods
    plus one lcm of the periods, so the scan below is exact, never a guess.
    """
    if a.is_finite or b.is_finite:
        la = a.finite_length if a.is_finite else 0
        lb = b.finite_length if b.is_finite else 0
        bound = max(la, lb) + 1
    else:
        bound = (
            max(len(a.pre), len(b.pre))
            + math.lcm(len(a.period), len(b.period))
            + max(len(a.period), len(b.period))
            + 1
        )
    return _walk_compare(a.symbol_at, b.symbol_at, bound)


def compare_prefix(symbols: Sequence[str], target: KneadingSeq) -> int:
    """Compare a truncated symbol list against a sequence.

    Returns EQUAL when the two agree through the available length, which a
    caller must interpret as equal-within-depth.
    """
    syms = list(symbols)

    def a_sym(i):
        return syms[i] if i < len(syms) else None

    r_count = 0
    for i in range(len(syms)):
        x = syms[i]
        y = target.symbol_at(i)
        if y is None:
            # target ended with C strictly earlier; mismatch was already seen
            return EQUAL
        if x != y:
            d = LESS if _SYMBOL_RANK[x] < _SYMBOL_RANK[y] else GREATER
            return d if r_count % 2 == 0 else -d
        if x == R:
            r_count += 1
        if x == C:
            return EQUAL
    return EQUAL


# -- shift and maximality --------------------------------------------------


def shift(a: KneadingSeq, k: int) -> KneadingSeq:
    """Drop the first k symbols and re-canonicalize."""
    if k < 0:
        raise ValueError("shift count must be nonnegative")
    if a.is_finite:
        if k > a.finite_length:
            raise ValueError(f"shift {k} exceeds finite length {a.finite_length}")
        # shifting to or past the C leaves the empty C-terminated word
        return KneadingSeq(a.pre[k:], None)
    if k <= len(a.pre):
        return KneadingSeq(a.pre[k:], a.period)
    r = (k - len(a.pre)) % len(a.period)
    return KneadingSeq((), a.period[r:] + a.period[:r])


def is_maximal(a: KneadingSeq) -> bool:
    """True when a dominates every shift of itself in the parity order."""
    if a.is_finite:
        top = a.finite_length
    else:
        top = len(a.pre) + 2 * len(a.period)
    for n in range(1, top + 1):
        if compare(a, shift(a, n)) < 0:
            return False
    return True


# -- star product ----------------------------------------------------------


def star_product(word: Sequence[str] | str, b: KneadingSeq) -> KneadingSeq:
    """A*B interleaving: copies of ``word`` separated by B's symbols,
    flipped when the word has odd R parity."""
    if isinstance(word, str):
        word = parse_word(word)
    word = _check_word(word, "star factor")
    if not word:
        raise ValueError("star factor must be nonempty")
    even = word_parity_even(word)

    def block(sym: str) -> tuple[str, ...]:
        return word + (sym if even else flip(sym),)

    if b.is_finite:
        pre: tuple[str, ...] = ()
        for s in b.pre:
            pre += block(s)
        pre += word  # final copy before the terminal C
        return KneadingSeq(pre, None)
    pre = ()
    for s in b.pre:
        pre += block(s)
    per: tuple[str, ...] = ()
    for s in b.period:
        per += block(s)
    return KneadingSeq(pre, per)


def doubling_limit_prefix(n: int) -> list[str]:
    """First n symbols of the period-doubling limit sequence (the fixed
    point of prefixing with R via the star product)."""
    syms: list[str] = [R]
    while len(syms) < n:
        nxt: list[str] = []
        for s in syms:
            nxt.append(R)
            nxt.append(flip(s))
        syms = nxt
    return syms[:n]


def doubling_word(j: int) -> tuple[str, ...]:
    """The j-fold star power of R as a plain word (length 2**j - 1)."""
    return tuple(doubling_limit_prefix(2 ** j - 1))


# -- minus variant -----------------------------------------------------------


def minus_variant(m: KneadingSeq) -> KneadingSeq:
    """Lower one-sided limit of the itinerary at the critical value.

    Infinite sequences are their own limit.  A finite word uC becomes
    (uL)^inf when u is even and (uR)^inf when odd; the result is maximal.
    """
    if not m.is_finite:
        return m
    filler = L if word_parity_even(m.pre) else R
    return KneadingSeq((), m.pre + (filler,))


# -- gap decomposition --------------------------------------------------------


@dataclass(frozen=True)
class GapSeq:
    """Run lengths of L-blocks between consecutive R's of an infinite
    sequence R L^{m1} R L^{m2} ..., with an eventually periodic tail.

    ``period == (0,)`` encodes a trailing R^inf ("all zero" tail).  Canonical
    form keeps the head minimal and the period primitive.
    """

    head: tuple[int, ...]
    period: tuple[int, ...] = (0,)

    def __post_init__(self) -> None:
        head = tuple(int(g) for g in self.head)
        period = tuple(int(g) for g in self.period)
        if not period:
            raise ValueError("gap period must be nonempty")
        if any(g < 0 for g in head + period):
            raise ValueError("gaps must be nonnegative")
        m1 = head[0] if head else period[0]
        if m1 < 1:
            raise ValueError("first gap must be positive")
        if any(g > m1 for g in head + period):
            raise ValueError("gaps may not exceed the first gap")
        # canonicalize like a symbol sequence
        n = len(period)
        for d in range(1, n):
            if n % d == 0 and period == period[: d] * (n // d):
                period = period[: d]
                break
        head_l = list(head)
        per_l = list(period)
        while head_l and head_l[-1] == per_l[-1]:
            head_l.pop()
            per_l = [per_l[-1]] + per_l[:-1]
        object.__setattr__(self, "head", tuple(head_l))
        object.__setattr__(self, "period", tuple(per_l))

    @property
    def all_zero_tail(self) -> bool:
        return self.period == (0,)

    @property
    def m1(self) -> int:
        return self.head[0] if self.head else self.period[0]

    def gap(self, k: int) -> int:
        """m_k for k >= 1."""
        if k < 1:
            raise ValueError("gap index starts at 1")
        if k <= len(self.head):
            return self.head[k - 1]
        return self.period[(k - len(self.head) - 1) % len(self.period)]

    def cum(self, k: int) -> int:
        """Cumulative sum of the first k gaps."""
        if k < 0:
            raise ValueError("negative stage")
        h = len(self.head)
        if k <= h:
            return sum(self.head[: k])
        j = k - h
        r = len(self.period)
        s = sum(self.period)
        return sum(self.head) + (j // r) * s + sum(self.period[: j % r])

    def symbols(self, n: int) -> list[str]:
        """First n symbols of the encoded sequence."""
        out: list[str] = []
        k = 1
        while len(out) < n:
            out.append(R)
            out.extend([L] * self.gap(k))
            k += 1
        return out[: n]

    def to_kneading(self) -> KneadingSeq:
        pre: tuple[str, ...] = ()
        for g in self.head:
            pre += (R,) + (L,) * g
        per: tuple[str, ...] = ()
        for g in self.period:
            per += (R,) + (L,) * g
        return KneadingSeq(pre, per)

    def to_text(self) -> str:
        head = ",".join(str(g) for g in self.head)
        if self.all_zero_tail:
            return f"gaps={head};tail=R"
        return f"gaps={head};period=" + ",".join(str(g) for g in self.period)

    @classmethod
    def from_text(cls, text: str) -> "GapSeq":
        """Parse ``gaps=6,5,0;tail=R`` or ``gaps=1;period=0,1``."""
        parts = text.strip().split(";")
        if len(parts) != 2 or not parts[0].startswith("gaps="):
            raise ValueError(f"cannot parse gap spec {text!r}")
        head_txt = parts[0][len("gaps="):]
        head = tuple(int(t) for t in head_txt.split(",") if t != "")
        if parts[1] == "tail=R":
            return cls(head, (0,))
        if parts[1].startswith("period="):
            per = tuple(int(t) for t in parts[1][len("period="):].split(",") if t != "")
            if not per:
                raise ValueError("empty gap period")
            return cls(head, per)
        raise ValueError(f"cannot parse gap spec tail {parts[1]!r}")


def gap_decomposition(m: KneadingSeq) -> GapSeq:
    """Gap lengths of an infinite sequence starting with R.

    Rejects RL^inf (the first gap would be infinite) and any sequence whose
    tail is all L.  Round trip: ``gap_decomposition(g.to_kneading()) == g``.
    """
    if m.is_finite:
        raise ValueError("gap decomposition needs an infinite sequence")
    if m.symbol_at(0) != R:
        raise ValueError("sequence must start with R")
    if all(s == L for s in m.period):
        raise ValueError("sequence ends in L^inf, gaps not representable")
    q = len(m.period)
    expanded = list(m.pre) + list(m.period) * 3
    r_pos = [i for i, s in enumerate(expanded) if s == R]
    r_in_period = sum(1 for s in m.period if s == R)
    i0 = sum(1 for i in r_pos if i < len(m.pre))
    need = i0 + r_in_period + 1
    assert len(r_pos) >= need
    gaps = [r_pos[k] - r_pos[k - 1] - 1 for k in range(1, need)]
    head = tuple(gaps[: i0])
    period = tuple(gaps[i0: i0 + r_in_period])
    return GapSeq(head, period)


# -- membership in the kneading class ----------------------------------------


def _try_factor(m: KneadingSeq, a: int) -> bool:
    """Does m decompose as (m|a) * B for some admissible B?

    The leading word repeats literally at stride a+1, single separator
    symbols in between.  Exact for eventually periodic sequences.
    """
    word = m.prefix(a)
    if len(word) < a or C in word:
        return False
    if m.is_finite:
        n = m.finite_length
        if n % (a + 1) != 0 or n // (a + 1) < 2:
            return False
        for k in range(n // (a + 1)):
            base = k * (a + 1)
            for i in range(a):
                if m.symbol_at(base + i) != word[i]:
                    return False
        return True
    q = len(m.period)
    k_max = (len(m.pre) + 2 * math.lcm(a + 1, q)) // (a + 1) + 2
    for k in range(k_max + 1):
        base = k * (a + 1)
        for i in range(a):
            if m.symbol_at(base + i) != word[i]:
                return False
    return True


def in_class_M(m: KneadingSeq, horizon: int = 256) -> str:
    """Membership test for the admissible kneading class.

    Checks maximality, strict domination of the period-doubling limit
    (against its length-``horizon`` prefix), and the absence of a star
    factorization whose leading word is not a star power of R.  Returns
    ``"unknown"`` when only the horizon prevented a verdict.
    """
    if not is_maximal(m):
        return NO

    limit = doubling_limit_prefix(horizon)
    cond2 = None
    r_count = 0
    for i in range(horizon):
        x = m.symbol_at(i)
        y = limit[i]
        if x is None:
            break
        if x != y:
            d = LESS if _SYMBOL_RANK[x] < _SYMBOL_RANK[y] else GREATER
            cond2 = d if r_count % 2 == 0 else -d
            break
        if x == R:
            r_count += 1
    if cond2 is not None and cond2 <= 0:
        return NO

    # factor search bound; the search is complete when every possible
    # leading-word length is covered
    if m.is_finite:
        a_cap = m.finite_length // 2 - 1 if m.finite_length >= 4 else 0
        complete = horizon >= a_cap
    elif all(s == R for s in m.period):
        # R^inf tail: every block eventually sits inside the tail, so the
        # leading word is all R and cannot reach past the first L
        first_l = 0
        while m.symbol_at(first_l) == R:
            first_l += 1
        a_cap = first_l
        complete = horizon >= a_cap
    elif all(s == L for s in m.period):
        # L^inf tail: blocks eventually sit inside the tail, forcing an
        # all-L leading word, yet the word starts with the sequence head;
        # a maximal sequence starts with R, so no factorization exists
        a_cap = 0 if m.symbol_at(0) == R else horizon
        complete = m.symbol_at(0) == R
    else:
        a_cap = horizon
        complete = False

    doubling_words = set()
    j = 1
    while 2 ** j - 1 <= min(a_cap, horizon):
        doubling_words.add(doubling_word(j))
        j += 1

    for a in range(1, min(a_cap, horizon) + 1):
        if _try_factor(m, a):
            if tuple(m.prefix(a)) not in doubling_words:
                return NO

    if cond2 is None or not complete:
        return UNKNOWN
    return YES
