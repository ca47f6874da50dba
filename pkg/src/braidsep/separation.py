"""Trace gaps between braids and their reverses.

Trace is a class function, so ``Tr rho(w) != Tr rho(w')`` certifies that a
braid ``w`` and its reverse ``w'`` are not conjugate in B3.  Nothing beyond
that is claimed: deciding invertibility of the closed knot would also need
the flype analysis, which is not done here.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Decimal
from importlib import resources
from typing import Iterable, NamedTuple, Optional, Sequence

from . import matrix as mx
from .braid import BraidWord, as_word, conjugate, invert, parse, reverse
from .cnum import format_complex, parse_complex
from .exceptions import BraidSepError, CatalogError
from .representation import EXCLUDED_A, Rep, RepParams, evaluate, family_rep

DEFAULT_REL_TOL = 1e-6
EXCLUSION_MARGIN = 0.05

FLYPE_CAVEAT = (
    "note: {name} admits a flype; a nonzero gap shows only that the braid and "
    "its reverse are not conjugate, not that the knot is non-invertible"
)


# -- gaps --------------------------------------------------------------------

def _trace_pair(r: Rep, w: BraidWord) -> tuple[complex, complex]:
    w = as_word(w)
    return mx.trace(evaluate(r, w)), mx.trace(evaluate(r, reverse(w)))


def trace_gap(r: Rep, w: BraidWord) -> complex:
    """``Tr rho(w) - Tr rho(w')`` with ``w'`` the reversed word."""
    t, t_rev = _trace_pair(r, w)
    return t - t_rev


def _gap_scale(t: complex, t_rev: complex) -> float:
    return max(abs(t), abs(t_rev), 1.0)


def separates(r: Rep, w: BraidWord, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    t, t_rev = _trace_pair(r, w)
    return abs(t - t_rev) > rel_tol * _gap_scale(t, t_rev)


@dataclass(frozen=True)
class GapResult:
    knot: str
    params: Optional[RepParams]
    gap: complex
    trace: complex
    trace_reversed: complex
    separated: bool
    tolerance_used: float
    column: Optional[int] = None
    reference: Optional["ReferenceEntry"] = None

    @property
    def matches_reference(self) -> Optional[bool]:
        if self.reference is None:
            return None
        return self.reference.matches(self.gap)


def gap_result(r: Rep, w: BraidWord, knot: str = "", params: Optional[RepParams] = None,
               rel_tol: float = DEFAULT_REL_TOL, column: Optional[int] = None,
               reference: Optional["ReferenceEntry"] = None) -> GapResult:
    t, t_rev = _trace_pair(r, w)
    gap = t - t_rev
    return GapResult(
        knot=knot, params=params, gap=gap, trace=t, trace_reversed=t_rev,
        separated=abs(gap) > rel_tol * _gap_scale(t, t_rev),
        tolerance_used=rel_tol, column=column, reference=reference)


# -- catalog -----------------------------------------------------------------

@dataclass(frozen=True)
class KnotEntry:
    name: str
    word: BraidWord
    crossings: int
    aliases: tuple[BraidWord, ...] = ()
    flype: bool = False


def _load_json_resource(name: str):
    return json.loads(resources.files("braidsep.data").joinpath(name).read_text("utf-8"))


def load_catalog(path=None) -> list[KnotEntry]:
    """Read a catalog file, or the bundled one when ``path`` is None."""
    try:
        if path is None:
            raw = _load_json_resource("catalog.json")
        else:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read catalog {path or '<bundled>'}: {exc}") from exc
    if not isinstance(raw, list):
        raise CatalogError("catalog must be a JSON array")
    entries, seen = [], set()
    for i, item in enumerate(raw):
        try:
            name = str(item["name"])
            entry = KnotEntry(
                name=name,
                word=parse(item["word"]),
                crossings=int(item["crossings"]),
                aliases=tuple(parse(x) for x in item.get("aliases", ())),
                flype=bool(item.get("flype", False)),
            )
        except (KeyError, TypeError, ValueError, BraidSepError) as exc:
            raise CatalogError(f"catalog entry {i} malformed: {exc}") from exc
        if entry.crossings <= 0:
            raise CatalogError(f"catalog entry {name!r}: crossings must be positive")
        if name in seen:
            raise CatalogError(f"duplicate catalog entry {name!r}")
        seen.add(name)
        entries.append(entry)
    return entries


def catalog() -> list[KnotEntry]:
    return load_catalog()


def lookup(name: str, entries: Optional[Sequence[KnotEntry]] = None) -> Optional[KnotEntry]:
    for e in catalog() if entries is None else entries:
        if e.name == name:
            return e
    return None


# -- published reference values ---------------------------------------------

def _quantum(text: str) -> Decimal:
    return Decimal(1).scaleb(Decimal(text).as_tuple().exponent)


@dataclass(frozen=True)
class ReferenceEntry:
    """A printed table value, kept as text so its precision is known."""

    re_text: str
    im_text: str

    @property
    def value(self) -> complex:
        return complex(float(self.re_text), float(self.im_text))

    @property
    def scientific(self) -> bool:
        return "e" in (self.re_text + self.im_text).lower()

    @staticmethod
    def _component_matches(x: float, text: str) -> bool:
        q = _quantum(text)
        rounded = (Decimal(repr(x)) / q).to_integral_value() * q
        return abs(rounded - Decimal(text)) <= q

    def matches(self, z: complex) -> bool:
        """Round to the printed digits; allow one unit in the last place."""
        return (self._component_matches(z.real, self.re_text)
                and self._component_matches(z.imag, self.im_text))

    def __str__(self):
        sign = "" if self.im_text.startswith("-") else "+"
        return f"{self.re_text}{sign}{self.im_text}i"


class PublishedTable(NamedTuple):
    params: list[RepParams]
    rows: dict[str, list[ReferenceEntry]]


def published_table() -> PublishedTable:
    raw = _load_json_resource("published_table.json")
    params = [RepParams(raw["condition"], raw["branch"], parse_complex(c["a"]),
                        parse_complex(c["f"])) for c in raw["columns"]]
    rows = {k: [ReferenceEntry(re_, im_) for re_, im_ in v] for k, v in raw["rows"].items()}
    return PublishedTable(params, rows)


def published_params() -> list[RepParams]:
    return published_table().params


# -- tables ------------------------------------------------------------------

@dataclass
class GapTable:
    params: list[RepParams]
    rows: list[GapResult] = field(default_factory=list)

    def cell(self, knot: str, column: int) -> GapResult:
        for r in self.rows:
            if r.knot == knot and r.column == column:
                return r
        raise KeyError((knot, column))

    @property
    def knots(self) -> list[str]:
        return list(dict.fromkeys(r.knot for r in self.rows))

    @property
    def has_reference(self) -> bool:
        return any(r.reference is not None for r in self.rows)

    def all_match(self) -> bool:
        return all(r.matches_reference for r in self.rows if r.reference is not None)

    def mismatches(self) -> list[GapResult]:
        return [r for r in self.rows if r.matches_reference is False]

    def records(self) -> list[dict]:
        out = []
        for r in self.rows:
            p = r.params
            out.append({
                "knot": r.knot,
                "a": format_complex(p.a) if p else None,
                "f": format_complex(p.f) if p else None,
                "condition": p.condition if p else None,
                "branch": p.branch if p else None,
                "gap_re": r.gap.real,
                "gap_im": r.gap.imag,
                "separated": r.separated,
                "matches_reference": r.matches_reference,
            })
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = ["knot", "a", "f", "condition", "branch", "gap_re", "gap_im",
                  "separated", "matches_reference"]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for rec in self.records():
            rec = dict(rec)
            rec["gap_re"], rec["gap_im"] = repr(rec["gap_re"]), repr(rec["gap_im"])
            if rec["matches_reference"] is None:
                rec["matches_reference"] = ""
            writer.writerow(rec)
        return buf.getvalue()

    def to_json(self) -> str:
        recs = self.records()
        for rec, r in zip(recs, self.rows):
            if r.reference is not None:
                rec["reference"] = str(r.reference)
        return json.dumps({"rows": recs, "all_match": self.all_match()
                           if self.has_reference else None}, indent=2)


def reproduce_table(param_sets: Sequence[RepParams],
                    entries: Optional[Sequence[KnotEntry]] = None,
                    reference: Optional[dict[str, list[ReferenceEntry]]] = None,
                    rel_tol: float = DEFAULT_REL_TOL) -> GapTable:
    """Trace gaps for every catalog knot under every parameter set."""
    entries = catalog() if entries is None else entries
    reps = [family_rep(p) for p in param_sets]
    table = GapTable(list(param_sets))
    for e in entries:
        refs = (reference or {}).get(e.name)
        for j, (p, r) in enumerate(zip(param_sets, reps)):
            ref = refs[j] if refs is not None and j < len(refs) else None
            table.rows.append(gap_result(r, e.word, e.name, p, rel_tol, j, ref))
    return table


def reproduce_published_table(entries: Optional[Sequence[KnotEntry]] = None) -> GapTable:
    pub = published_table()
    return reproduce_table(pub.params, entries, pub.rows)


# -- random search -----------------------------------------------------------

class SplitMix64:
    """SplitMix64 generator; the same seed gives the same stream everywhere."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.next_u64() % (hi - lo + 1)


class Box(NamedTuple):
    """Rectangle ``re_min <= Re z <= re_max``, ``im_min <= Im z <= im_max``."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    @classmethod
    def point(cls, z: complex) -> "Box":
        return cls(z.real, z.real, z.imag, z.imag)

    def sample(self, rng: SplitMix64) -> complex:
        return complex(rng.uniform(self.re_min, self.re_max),
                       rng.uniform(self.im_min, self.im_max))


DEFAULT_BOX = Box(-4.0, 4.0, -4.0, 4.0)


class SearchHit(NamedTuple):
    params: RepParams
    gap: complex
    score: float  # |gap| / max(|Tr w|, |Tr w'|, 1)


def _draw(box: Box, rng: SplitMix64, bad: Iterable[complex], max_tries: int = 10_000) -> complex:
    bad = list(bad)
    for _ in range(max_tries):
        z = box.sample(rng)
        if all(abs(z - b) >= EXCLUSION_MARGIN for b in bad):
            return z
    raise ValueError(f"box {tuple(box)} lies within {EXCLUSION_MARGIN} of excluded values")


def search_separating_params(w: BraidWord, condition: int = 3, branch: int = -1,
                             a_box: Box = DEFAULT_BOX, f_box: Box = DEFAULT_BOX,
                             n: int = 100, seed: int = 0,
                             rel_tol: float = DEFAULT_REL_TOL) -> list[SearchHit]:
    """Random draws of (a, f); keep those whose representation separates ``w``.

    Sorted by relative gap, largest first.  An empty list is a valid outcome.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = SplitMix64(seed)
    hits = []
    for _ in range(n):
        a = _draw(a_box, rng, EXCLUDED_A)
        f = _draw(f_box, rng, (0.0,))
        p = RepParams(condition, branch, a, f)
        r = family_rep(p)
        t, t_rev = _trace_pair(r, w)
        score = abs(t - t_rev) / _gap_scale(t, t_rev)
        if score > rel_tol:
            hits.append(SearchHit(p, t - t_rev, score))
    hits.sort(key=lambda h: -h.score)
    return hits


def random_word(rng: SplitMix64, max_syllables: int = 8, max_exponent: int = 3) -> BraidWord:
    n = rng.randint(0, max_syllables)
    syl = []
    for _ in range(n):
        e = rng.randint(1, max_exponent)
        syl.append((rng.randint(1, 2), e if rng.randint(0, 1) else -e))
    return BraidWord(tuple(syl))


def conjugation_invariance_check(r: Rep, w: BraidWord, trials: int = 200,
                                 seed: int = 0) -> float:
    """Largest relative change of Tr rho(w) under random conjugation g w g^-1.

    The deviation of each trial is scaled by ``max(|Tr|, cond)`` where
    ``cond`` is the product of the max-entry norms of rho(g), rho(w) and
    rho(g^-1), the size of the rounding error the product can carry.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = SplitMix64(seed)
    mw = evaluate(r, w)
    base = mx.trace(mw)
    worst = 0.0
    for _ in range(trials):
        g = random_word(rng)
        t = mx.trace(evaluate(r, conjugate(w, g)))
        mg = evaluate(r, g)
        cond = mx.max_entry(mg) * mx.max_entry(mw) * mx.max_entry(evaluate(r, invert(g)))
        scale = max(abs(base), abs(t), cond, 1.0)
        worst = max(worst, abs(t - base) / scale)
    return worst
