"""Bounded decision procedures over enumerable commutative monoids.

A :class:`MonoidSpec` packages a commutative monoid as executable values: a
carrier with decidable equality, a composition law, a neutral element, an
integer complexity measure with ``complexity(neutral) == 0``, and a leveled
enumerator producing the finite set of elements of complexity at most ``L``.

All predicates here are decided relative to a complexity level.  Verdicts
are honest about the search horizon: the answer is ``"yes"``, ``"no"`` or
``"unknown"`` (read: unknown at this bound), and a definite ``"no"`` from a
found counterexample always carries the witness tuple so the violating
equality can be replayed.  Two per-spec declarations upgrade bounded
verdicts to exact ones:

* ``divisor_complete`` - every factorization ``x = a * b`` has both parts
  within level ``complexity(x)``, so divisor searches exhaust.
* ``strictly_additive`` - ``complexity(a * b) == complexity(a) +
  complexity(b)`` exactly, so nothing of positive complexity has an inverse
  and the unit search is closed at level zero.

The built-in registry (:func:`builtin_specs`) exposes the worked examples:
natural numbers under addition and under multiplication, the sign-collapsed
integer monoid (nonzero integers modulo ``x ~ -x`` for ``|x| >= 2``, a
unique factorisation monoid with a non-cancellable element), the simply
connected 5-manifold monoid, two fragments of the highly connected
even-dimensional story, and the stabilized-wedge monoid in which a sphere
summand fails to cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Sequence

from .errors import DomainError

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


class OutOfBounds(DomainError):
    """An element lies outside the level-bound enumeration."""


@dataclass(frozen=True)
class Factorization:
    """A multiset of irreducible class representatives, kept sorted."""

    items: tuple

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded predicate.

    ``witness`` is an element tuple exhibiting a counterexample (or, for
    existence checks, the found certificate); ``reason`` is a short
    machine-stable explanation of how the answer was reached.
    """

    answer: str
    bound: int
    witness: Optional[tuple] = None
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.answer == YES

    @property
    def is_no(self) -> bool:
        return self.answer == NO


@dataclass(frozen=True)
class MonoidSpec:
    """An abelian monoid given as executable values.

    ``enumerate_level(L)`` must return every element of complexity at most
    ``L`` exactly once, in a canonical deterministic order.  ``divisors``,
    when supplied, maps an element to all pairs ``(d, c)`` with
    ``d * c == x`` (exhaustively, both orders not required); predicates use
    it instead of quadratic enumeration searches.
    """

    name: str
    compose: Callable[[Any, Any], Any]
    neutral: Any
    complexity: Callable[[Any], int]
    enumerate_level: Callable[[int], Sequence[Any]]
    fmt: Callable[[Any], str] = str
    parse: Optional[Callable[[str], Any]] = None
    divisor_complete: bool = False
    strictly_additive: bool = False
    divisors: Optional[Callable[[Any], Iterable[tuple[Any, Any]]]] = None
    description: str = ""

    def sort_key(self, x: Any) -> tuple:
        return (self.complexity(x), self.fmt(x))


# ---------------------------------------------------------------------------
# Element enumeration caches
# ---------------------------------------------------------------------------

_ELEMENT_CACHE: dict[tuple[str, int], tuple] = {}
_UNIT_CACHE: dict[tuple[str, int], tuple] = {}


def _elements(spec: MonoidSpec, bound: int) -> tuple:
    key = (spec.name, bound)
    if key not in _ELEMENT_CACHE:
        els = list(spec.enumerate_level(bound))
        els.sort(key=spec.sort_key)
        _ELEMENT_CACHE[key] = tuple(els)
    return _ELEMENT_CACHE[key]


def _require_within(spec: MonoidSpec, x: Any, bound: int) -> None:
    if spec.complexity(x) > bound or x not in set(_elements(spec, bound)):
        raise OutOfBounds(
            f"element {spec.fmt(x)} lies outside the level-{bound} enumeration of {spec.name}"
        )


def units_within(spec: MonoidSpec, bound: int) -> tuple:
    """All elements with a composition inverse found within the bound.

    For divisor-complete specs every unit has complexity zero (an inverse
    pair is a factorization of the neutral element), so the returned set is
    exactly the unit group.
    """
    key = (spec.name, bound)
    if key in _UNIT_CACHE:
        return _UNIT_CACHE[key]
    if spec.divisor_complete:
        candidates = _elements(spec, 0)
    else:
        candidates = _elements(spec, bound)
    units = []
    for u in candidates:
        if any(spec.compose(u, v) == spec.neutral for v in candidates):
            units.append(u)
    out = tuple(sorted(units, key=spec.sort_key))
    _UNIT_CACHE[key] = out
    return out


def _units_exact(spec: MonoidSpec) -> bool:
    return spec.divisor_complete


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def is_unit(spec: MonoidSpec, x: Any, bound: int) -> Verdict:
    """Does ``x`` have an inverse?

    ``yes`` carries the inverse as witness.  A definite ``no`` arises from
    the strict-additivity shortcut (positive complexity cannot cancel) or
    from exhausting the level-zero divisors of the neutral element in a
    divisor-complete spec; otherwise the verdict is unknown at this bound.
    """
    _require_within(spec, x, bound)
    for y in _elements(spec, bound):
        if spec.compose(x, y) == spec.neutral:
            return Verdict(YES, bound, witness=(y,), reason="inverse found")
    if spec.strictly_additive and spec.complexity(x) > 0:
        return Verdict(NO, bound, reason="strictly additive complexity exceeds zero")
    if spec.divisor_complete:
        return Verdict(NO, bound, reason="level-zero divisor search exhausted")
    return Verdict(UNKNOWN, bound, reason="no inverse within bound")


def are_associated(spec: MonoidSpec, x: Any, y: Any, bound: int) -> Verdict:
    """Is ``x = u * y`` for some unit ``u`` found within the bound?"""
    _require_within(spec, x, bound)
    _require_within(spec, y, bound)
    for u in units_within(spec, bound):
        if spec.compose(u, y) == x:
            return Verdict(YES, bound, witness=(u,), reason="associating unit found")
    if _units_exact(spec):
        return Verdict(NO, bound, reason="unit set exhausted")
    return Verdict(UNKNOWN, bound, reason="no associating unit within bound")


def _divides_search(spec: MonoidSpec, d: Any, x: Any, level: int) -> Optional[Any]:
    if spec.divisors is not None:
        for a, c in spec.divisors(x):
            if a == d:
                return c
            if c == d:
                return a
        return None
    for c in _elements(spec, level):
        if spec.compose(d, c) == x:
            return c
    return None


def divides(spec: MonoidSpec, d: Any, x: Any, bound: int) -> Verdict:
    """Does some ``c`` within the bound satisfy ``d * c == x``?

    For divisor-complete specs any complement lies within level
    ``complexity(x)``, so a failed search is a definite ``no``.
    """
    _require_within(spec, d, bound)
    _require_within(spec, x, bound)
    c = _divides_search(spec, d, x, bound)
    if c is not None:
        return Verdict(YES, bound, witness=(c,), reason="complement found")
    if spec.divisor_complete:
        return Verdict(NO, bound, reason="complement search exhausted")
    return Verdict(UNKNOWN, bound, reason="no complement within bound")


def _divides_exact(spec: MonoidSpec, d: Any, x: Any, bound: int) -> Optional[Any]:
    """Complement of ``d`` in ``x``, searching to whatever level makes the
    answer exact for divisor-complete specs (``complexity(x)`` may exceed the
    user bound when ``x`` is a composition of two bounded elements)."""
    level = max(bound, spec.complexity(x)) if spec.divisor_complete else bound
    return _divides_search(spec, d, x, level)


def _factorization_pairs(spec: MonoidSpec, x: Any, bound: int) -> list[tuple[Any, Any]]:
    """All pairs ``(a, b)`` with ``a * b == x`` within the relevant level."""
    if spec.divisors is not None:
        pairs = list(spec.divisors(x))
    else:
        level = max(bound, spec.complexity(x)) if spec.divisor_complete else bound
        els = _elements(spec, level)
        pairs = []
        for a in els:
            for b in els:
                if spec.sort_key(a) <= spec.sort_key(b) and spec.compose(a, b) == x:
                    pairs.append((a, b))
    canon = set()
    for a, b in pairs:
        if spec.sort_key(a) <= spec.sort_key(b):
            canon.add((a, b))
        else:
            canon.add((b, a))
    return sorted(canon, key=lambda ab: (spec.sort_key(ab[0]), spec.sort_key(ab[1])))


def is_irreducible(spec: MonoidSpec, x: Any, bound: int) -> Verdict:
    """Is ``x`` a non-unit all of whose factorizations involve a unit?

    A found non-trivial factorization is returned as the witness pair.  A
    ``yes`` is exact only when the enumerator is divisor-complete; otherwise
    an exhausted search stays unknown at the bound.
    """
    _require_within(spec, x, bound)
    unit_set = set(units_within(spec, bound))
    if x in unit_set:
        inverse = next(u for u in unit_set if spec.compose(x, u) == spec.neutral)
        return Verdict(NO, bound, witness=(x, inverse), reason="element is a unit")
    for a, b in _factorization_pairs(spec, x, bound):
        if a not in unit_set and b not in unit_set:
            return Verdict(NO, bound, witness=(a, b), reason="non-trivial factorization")
    if spec.divisor_complete:
        return Verdict(YES, bound, reason="all factorizations involve a unit")
    return Verdict(UNKNOWN, bound, reason="no non-trivial factorization within bound")


def is_prime(spec: MonoidSpec, p: Any, bound: int) -> Verdict:
    """Does ``p | a * b`` force ``p | a`` or ``p | b`` over the bounded pairs?

    Quantifies over all pairs within the bound; the inner divisibility
    checks are exact for divisor-complete specs.  A counterexample pair is
    only reported as a definite ``no`` when those inner checks are exact.
    """
    _require_within(spec, p, bound)
    if p in set(units_within(spec, bound)):
        raise DomainError(f"{spec.fmt(p)} is a unit; primality is about non-units")
    els = _elements(spec, bound)
    divides_p: dict[Any, bool] = {}

    def p_divides(y: Any) -> bool:
        if y not in divides_p:
            divides_p[y] = _divides_exact(spec, p, y, bound) is not None
        return divides_p[y]

    for i, a in enumerate(els):
        for b in els[i:]:
            z = spec.compose(a, b)
            if p_divides(z) and not p_divides(a) and not p_divides(b):
                if spec.divisor_complete:
                    return Verdict(NO, bound, witness=(a, b), reason="product escapes both factors")
                return Verdict(UNKNOWN, bound, witness=(a, b), reason="candidate counterexample at bound")
    return Verdict(YES, bound, reason="all bounded pairs respect divisibility")


def is_cancellable(spec: MonoidSpec, a: Any, bound: int) -> Verdict:
    """Is ``a * b == a * c`` with ``b != c`` impossible within the bound?

    A collision is an exact counterexample (the equality is replayable), so
    the ``no`` verdict is definite regardless of completeness flags.
    """
    _require_within(spec, a, bound)
    seen: dict[Any, Any] = {}
    for b in _elements(spec, bound):
        z = spec.compose(a, b)
        if z in seen:
            return Verdict(NO, bound, witness=(seen[z], b), reason="composition collision")
        seen[z] = b
    return Verdict(YES, bound, reason="injective on the bounded level")


# ---------------------------------------------------------------------------
# Unique factorization check
# ---------------------------------------------------------------------------


def _associate_reps(spec: MonoidSpec, bound: int) -> dict[Any, Any]:
    """Map each bounded element to the canonical representative of its
    associate class (associates have equal complexity, so classes are closed
    within the level for divisor-complete specs)."""
    units = units_within(spec, bound)
    rep: dict[Any, Any] = {}
    for x in _elements(spec, bound):
        orbit = {x}
        for u in units:
            orbit.add(spec.compose(u, x))
        rep[x] = min(orbit, key=spec.sort_key)
    return rep


def ufm_check(spec: MonoidSpec, bound: int) -> Verdict:
    """Check unique factorization into irreducibles on the bounded fragment.

    Computes units, associate classes, the irreducible classes, and the full
    set of factorization multisets (up to associates) of every element
    within the bound.  ``yes`` means every element has exactly one; the
    witness on failure is ``(element, factorization, factorization)`` for a
    duplicated element, or ``(element,)`` for an element with none.
    """
    els = _elements(spec, bound)
    unit_set = set(units_within(spec, bound))
    rep = _associate_reps(spec, bound)

    def class_of(x: Any) -> Any:
        return rep.get(x, x)

    irreducible: dict[Any, bool] = {}

    def is_irreducible_class(r: Any) -> bool:
        if r not in irreducible:
            pairs = _factorization_pairs(spec, r, bound)
            irreducible[r] = all(a in unit_set or b in unit_set for a, b in pairs)
        return irreducible[r]

    memo: dict[Any, frozenset] = {}
    in_progress: set = set()

    def factorizations(r: Any) -> frozenset:
        """All multisets (sorted tuples) of irreducible class representatives
        composing to the class ``r``."""
        if r in memo:
            return memo[r]
        if r in in_progress:
            raise DomainError(
                f"cyclic factorization search in {spec.name}; complexity is not descending"
            )
        if r == class_of(spec.neutral):
            memo[r] = frozenset({Factorization(())})
            return memo[r]
        in_progress.add(r)
        found = set()
        for a, b in _factorization_pairs(spec, r, bound):
            for d, c in ((a, b), (b, a)):
                if d in unit_set:
                    continue
                dr = class_of(d)
                if not is_irreducible_class(dr):
                    continue
                for rest in factorizations(class_of(c)):
                    found.add(tuple(sorted((dr,) + rest.items, key=spec.sort_key)))
        in_progress.discard(r)
        memo[r] = frozenset(Factorization(f) for f in found)
        return memo[r]

    for x in els:
        facts = sorted(
            factorizations(class_of(x)), key=lambda f: tuple(map(spec.sort_key, f.items))
        )
        if not facts:
            return Verdict(NO, bound, witness=(x,), reason="element with no factorization")
        if len(facts) > 1:
            return Verdict(
                NO, bound, witness=(x, facts[0], facts[1]), reason="two distinct factorizations"
            )
    return Verdict(YES, bound, reason="every bounded element factors uniquely")


# ---------------------------------------------------------------------------
# Built-in specs
# ---------------------------------------------------------------------------


def nat_add_spec() -> MonoidSpec:
    """Natural numbers under addition; complexity is the value itself."""
    return MonoidSpec(
        name="nat-add",
        compose=lambda a, b: a + b,
        neutral=0,
        complexity=lambda n: n,
        enumerate_level=lambda level: range(level + 1),
        fmt=str,
        parse=lambda s: int(s),
        divisor_complete=True,
        strictly_additive=True,
        divisors=lambda n: [(d, n - d) for d in range(n // 2 + 1)],
        description="(N, +, 0)",
    )


def nat_mult_spec() -> MonoidSpec:
    """Positive naturals under multiplication; 1 is the only unit."""

    def enumerate_level(level: int):
        return [1] + list(range(2, level + 1))

    return MonoidSpec(
        name="nat-mult",
        compose=lambda a, b: a * b,
        neutral=1,
        complexity=lambda n: 0 if n == 1 else n,
        enumerate_level=enumerate_level,
        fmt=str,
        parse=lambda s: int(s),
        divisor_complete=True,
        divisors=lambda n: [(d, n // d) for d in range(1, n + 1) if n % d == 0],
        description="(N>=1, *, 1)",
    )


def sign_collapse_spec() -> MonoidSpec:
    """Nonzero integers under multiplication modulo ``x ~ -x`` for ``|x| >= 2``.

    The carrier is ``{1, -1} | {n : n >= 2}``; composition multiplies and
    takes absolute values once the magnitude reaches 2.  The quotient by the
    unit group ``{1, -1}`` is the positive naturals under multiplication, so
    the monoid factors uniquely, yet ``2 * 1 == 2 * (-1)`` shows 2 is not
    cancellable.
    """

    def compose(a: int, b: int) -> int:
        r = a * b
        return abs(r) if abs(r) >= 2 else r

    def complexity(x: int) -> int:
        return 0 if x in (1, -1) else x

    def enumerate_level(level: int):
        return [-1, 1] + list(range(2, level + 1))

    def divisors(x: int):
        if x in (1, -1):
            return [(1, x), (-1, compose(-1, x))]
        pairs = [(1, x), (-1, x)]
        pairs += [(d, x // d) for d in range(2, x + 1) if x % d == 0]
        return pairs

    return MonoidSpec(
        name="remark4",
        compose=compose,
        neutral=1,
        complexity=complexity,
        enumerate_level=enumerate_level,
        fmt=str,
        parse=lambda s: int(s),
        divisor_complete=True,
        divisors=divisors,
        description="nonzero integers with x ~ -x for |x| >= 2",
    )


def builtin_specs() -> dict[str, MonoidSpec]:
    """Registry of named monoids for the command line and the test suites."""
    from . import barden, mfdexpr, wallhc

    specs = [
        nat_add_spec(),
        nat_mult_spec(),
        sign_collapse_spec(),
        barden.monoid_spec(),
        wallhc.even_rank_signature_spec(),
        wallhc.type_fragment_spec(),
        mfdexpr.stable_wedge_spec(),
    ]
    return {s.name: s for s in specs}


def format_verdict(spec: MonoidSpec, v: Verdict) -> str:
    """Render a verdict in the stable ``answer= bound= witness=`` form."""
    if v.witness is None:
        witness = "none"
    else:
        witness = ";".join(_fmt_witness_part(spec, part) for part in v.witness)
    return f"answer={v.answer} bound={v.bound} witness={witness}"


def _fmt_witness_part(spec: MonoidSpec, part: Any) -> str:
    if isinstance(part, Factorization):
        return "[" + ",".join(spec.fmt(q) for q in part) + "]"
    return spec.fmt(part)
