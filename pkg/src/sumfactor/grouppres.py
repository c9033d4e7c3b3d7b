"""Finite group presentations and their presentation-complex invariants.

A presentation ``<x1, ..., xs | r1, ..., rt>`` determines a 2-complex with
one circle per generator and one 2-cell per relator (its Cayley complex);
the Euler characteristic of that complex is one minus the deficiency
``s - t``.  This module carries the presentations themselves, their
exponent-sum abelianizations, and the two families whose presentation
complexes are homotopy inequivalent yet become simple homotopy equivalent
after a single ``S^2`` wedge:

* Metzler's presentations of ``(Z/p)^s`` for ``p = 1 mod 4`` prime and odd
  ``s >= 3``, distinguished by the quadratic-residue class of ``q/q'``;
* the two deficiency-zero presentations of the quaternion group ``Q28``
  (Mannan-Popiel 2019), whose inequivalence is cited, not recomputed.

Relator grammar: identifiers (resolved greedily against the declared
generator names), ``^`` with integer exponents, ``[a, b]`` commutator sugar
expanding to ``a b a^-1 b^-1``, and equations ``u = v`` stored as
``u v^-1``.  Words are kept freely reduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .abgroup import AbelianGroup, IntMatrix, cokernel
from .errors import DomainError

Word = tuple[tuple[int, int], ...]  # (generator index, non-zero exponent), freely reduced


class PresentationSyntaxError(DomainError):
    """A presentation literal failed to parse; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGenerator(PresentationSyntaxError):
    """A relator used a name outside the declared generator list."""


class ParameterViolation(DomainError):
    """A family constructor was called outside its stated parameter range."""


class StableEquivRefusal(DomainError):
    """The stable-equivalence certificate's hypotheses do not hold."""


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


def free_reduce(pairs) -> Word:
    """Collapse adjacent powers of the same generator and drop zeros."""
    out: list[list[int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def concat_words(*words: Word) -> Word:
    return free_reduce(pair for w in words for pair in w)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator names plus freely reduced relators.

    ``metadata`` is a free-form mapping for family tags and declared facts
    about the presented group (it does not participate in equality).
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    metadata: Optional[Mapping] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise DomainError("duplicate generator names")
        for rel in self.relators:
            for g, e in rel:
                if not 0 <= g < len(self.generators):
                    raise DomainError(f"relator uses generator index {g} out of range")
                if e == 0:
                    raise DomainError("relators must be freely reduced")
            for (g1, _), (g2, _) in zip(rel, rel[1:]):
                if g1 == g2:
                    raise DomainError("adjacent relator letters must use distinct generators")

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for g, e in w:
            name = self.generators[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"<{gens} | {rels}>"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str, start: int, generators: tuple[str, ...]):
        self.text = text
        self.pos = start
        # Longest-match generator lookup lets single-letter names juxtapose
        # (y x y^-1 may be written yxy^-1) without ambiguity for longer names.
        self.generators = sorted(generators, key=len, reverse=True)
        self.index = {name: i for i, name in enumerate(generators)}

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            raise PresentationSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def try_char(self, ch: str) -> bool:
        self.skip_ws()
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            raise PresentationSyntaxError("expected an integer exponent", start)
        return int(self.text[start:self.pos])

    def read_generator(self) -> int:
        self.skip_ws()
        for name in self.generators:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return self.index[name]
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        token = self.text[start:self.pos] or self.peek()
        raise UnknownGenerator(f"unknown generator {token!r}", start)

    def parse_word(self, stop: str) -> Word:
        """A juxtaposed sequence of terms, ending before any char in ``stop``."""
        parts: list[Word] = []
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch == "" or ch in stop:
                break
            parts.append(self.parse_term())
        return concat_words(*parts)

    def parse_term(self) -> Word:
        self.skip_ws()
        if self.try_char("["):
            a = self.parse_word(",")
            self.expect(",")
            b = self.parse_word("]")
            self.expect("]")
            base = concat_words(a, b, invert_word(a), invert_word(b))
        elif self.try_char("1"):
            base = ()
        else:
            g = self.read_generator()
            base = ((g, 1),)
        if self.try_char("^"):
            e = self.read_int()
            base = _word_power(base, e)
        return base


def _word_power(w: Word, e: int) -> Word:
    if e == 0:
        return ()
    if e < 0:
        w, e = invert_word(w), -e
    if len(w) == 1:
        return free_reduce([(w[0][0], w[0][1] * e)])
    return concat_words(*([w] * e))


def parse_presentation(text: str) -> Presentation:
    """Parse ``<g1, ..., gn | rel1, rel2, ...>``; relators may be equations."""
    s = text
    scanner_pos = 0
    while scanner_pos < len(s) and s[scanner_pos].isspace():
        scanner_pos += 1
    if scanner_pos >= len(s) or s[scanner_pos] != "<":
        raise PresentationSyntaxError("presentation must start with '<'", scanner_pos)
    bar = s.find("|", scanner_pos)
    if bar == -1:
        raise PresentationSyntaxError("missing '|' separating generators from relators", len(s))
    close = s.rfind(">")
    if close == -1 or close < bar:
        raise PresentationSyntaxError("presentation must end with '>'", len(s))
    gen_text = s[scanner_pos + 1 : bar]
    generators = tuple(name.strip() for name in gen_text.split(",") if name.strip())
    if not generators:
        raise PresentationSyntaxError("at least one generator is required", scanner_pos + 1)
    for name in generators:
        if not (name[0].isalpha() or name[0] == "_") or not all(c.isalnum() or c == "_" for c in name):
            raise PresentationSyntaxError(f"bad generator name {name!r}", s.find(name))

    relators: list[Word] = []
    sc = _Scanner(s, bar + 1, generators)
    while True:
        sc.skip_ws()
        if sc.peek() in (">", ""):
            break
        start = sc.pos
        left = sc.parse_word("=,>")
        if sc.try_char("="):
            right = sc.parse_word(",>")
            relators.append(concat_words(left, invert_word(right)))
        else:
            if sc.pos == start:
                raise PresentationSyntaxError("empty relator", start)
            # words reducing to the identity still count as relators
            relators.append(left)
        if not sc.try_char(","):
            break
    sc.expect(">")
    return Presentation(generators, tuple(relators))


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------


def deficiency(p: Presentation) -> int:
    """Generators minus relators."""
    return p.generator_count - len(p.relators)


def euler_char(p: Presentation) -> int:
    """Euler characteristic of the presentation complex: 1 - deficiency."""
    return 1 - deficiency(p)


def exponent_matrix(p: Presentation) -> IntMatrix:
    """Relator exponent sums: one row per relator, one column per generator."""
    rows = []
    for rel in p.relators:
        row = [0] * p.generator_count
        for g, e in rel:
            row[g] += e
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=p.generator_count)


def abelianization(p: Presentation) -> AbelianGroup:
    """Cokernel of the relator exponent-sum matrix."""
    return cokernel(exponent_matrix(p))


# ---------------------------------------------------------------------------
# The Metzler family
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def metzler_presentation(p: int, s: int, q: int) -> Presentation:
    """Metzler's presentation of ``(Z/p)^s`` twisted by the unit ``q``.

    Relators, in order: ``xi^p`` for each generator, the twisted commutator
    ``[x1^q, x2]``, then ``[xi, xj]`` for ``1 <= i < j <= s`` skipping
    ``(1, 2)``.  Constraints: ``p`` prime with ``p = 1 mod 4``, ``s >= 3``
    odd, and ``p`` not dividing ``q``.
    """
    if not _is_prime(p):
        raise ParameterViolation(f"p = {p} is not prime")
    if p % 4 != 1:
        raise ParameterViolation(f"p = {p} is {p % 4} mod 4, need 1 mod 4")
    if s < 3:
        raise ParameterViolation(f"s = {s} must be at least 3")
    if s % 2 == 0:
        raise ParameterViolation(f"s = {s} must be odd")
    if q % p == 0:
        raise ParameterViolation(f"q = {q} is divisible by p = {p}")

    generators = tuple(f"x{i}" for i in range(1, s + 1))
    relators: list[Word] = [((i, p),) for i in range(s)]

    def commutator(a_word: Word, b_word: Word) -> Word:
        return concat_words(a_word, b_word, invert_word(a_word), invert_word(b_word))

    relators.append(commutator(((0, q),), ((1, 1),)))
    for i in range(s):
        for j in range(i + 1, s):
            if (i, j) == (0, 1):
                continue
            relators.append(commutator(((i, 1),), ((j, 1),)))
    meta = {
        "family": "metzler",
        "p": p,
        "s": s,
        "q": q,
        "pi1": AbelianGroup.from_orders(0, [p] * s),
        "pi1_finite": True,
    }
    return Presentation(generators, tuple(relators), metadata=meta)


@dataclass(frozen=True)
class QrCertificate:
    """A replayable quadratic-residue computation via Euler's criterion.

    ``ratio`` is ``q * q'^-1 mod p`` and ``inverse_ratio`` its inverse;
    both lie in the same square class, and the criterion is evaluated on the
    smaller of the two so the record is symmetric in ``q`` and ``q'``.
    """

    p: int
    q: int
    q_prime: int
    ratio: int
    inverse_ratio: int
    euler_base: int
    euler_exponent: int
    euler_value: int
    nonresidue: bool

    def replay(self) -> bool:
        """Recompute the exponentiation and the residue verdict."""
        value = pow(self.euler_base, self.euler_exponent, self.p)
        return (
            value == self.euler_value
            and self.euler_base in (self.ratio, self.inverse_ratio)
            and self.ratio * self.inverse_ratio % self.p == 1
            and self.nonresidue == (value == self.p - 1)
        )

    def summary(self) -> str:
        verdict = "non-residue" if self.nonresidue else "residue"
        return (
            f"{self.euler_base}^{self.euler_exponent} = {self.euler_value}"
            f" = {'-1' if self.euler_value == self.p - 1 else self.euler_value}"
            f" (mod {self.p}): {verdict}"
        )


def metzler_distinct(p: int, q: int, q_prime: int) -> tuple[bool, QrCertificate]:
    """Are the ``q`` and ``q'`` presentation complexes homotopy inequivalent?

    True exactly when ``q / q'`` is a quadratic non-residue mod ``p``.  The
    certificate records the ratio, its inverse, and the Euler-criterion
    exponentiation on the smaller representative of the (shared) square
    class.
    """
    if not _is_prime(p) or p == 2:
        raise ParameterViolation(f"p = {p} must be an odd prime")
    if q % p == 0:
        raise ParameterViolation(f"q = {q} is divisible by p = {p}")
    if q_prime % p == 0:
        raise ParameterViolation(f"q' = {q_prime} is divisible by p = {p}")
    ratio = q * pow(q_prime, -1, p) % p
    inverse_ratio = pow(ratio, -1, p)
    base = min(ratio, inverse_ratio)
    exponent = (p - 1) // 2
    value = pow(base, exponent, p)
    cert = QrCertificate(
        p=p,
        q=q % p,
        q_prime=q_prime % p,
        ratio=ratio,
        inverse_ratio=inverse_ratio,
        euler_base=base,
        euler_exponent=exponent,
        euler_value=value,
        nonresidue=(value == p - 1),
    )
    return cert.nonresidue, cert


# ---------------------------------------------------------------------------
# The Q28 pair
# ---------------------------------------------------------------------------

_Q28_CITATION = (
    "Mannan-Popiel, An exotic presentation of Q28, Algebr. Geom. Topol. (2021)"
)


@dataclass(frozen=True)
class Q28Certificate:
    """Checked facts about the Q28 presentation pair plus the cited result.

    Equal deficiency and equal abelianization are recomputed; homotopy
    inequivalence of the two presentation complexes is cited, never
    recomputed (the bias-invariant computation is outside this library).
    """

    deficiencies: tuple[int, int]
    abelianizations: tuple[AbelianGroup, AbelianGroup]
    inequivalence_citation: str

    def replay(self) -> bool:
        return (
            self.deficiencies[0] == self.deficiencies[1]
            and self.abelianizations[0] == self.abelianizations[1]
        )


def q28_presentations() -> tuple[Presentation, Presentation, Q28Certificate]:
    """The two deficiency-zero presentations of ``Q28`` with their certificate."""
    meta = {"family": "q28", "pi1_name": "Q28", "pi1_min_generators": 2, "pi1_finite": True}
    p1 = parse_presentation("<x,y | x^7=y^2, yxy^-1=x^-1>")
    p2 = parse_presentation("<x,y | x^7=y^2, y^-1xyx^2=x^3y^-1x^2y>")
    p1 = Presentation(p1.generators, p1.relators, metadata={**meta, "variant": 1})
    p2 = Presentation(p2.generators, p2.relators, metadata={**meta, "variant": 2})
    cert = Q28Certificate(
        deficiencies=(deficiency(p1), deficiency(p2)),
        abelianizations=(abelianization(p1), abelianization(p2)),
        inequivalence_citation=_Q28_CITATION,
    )
    return p1, p2, cert


# ---------------------------------------------------------------------------
# Stable equivalence after one sphere wedge
# ---------------------------------------------------------------------------

_STABLE_CITATION = (
    "Browning 1979 / Hambleton-Kreck 1993: finite 2-complexes with finite "
    "fundamental group and equal Euler characteristic are simple homotopy "
    "equivalent after wedging one S^2"
)


@dataclass(frozen=True)
class StableEquivCertificate:
    left: Presentation
    right: Presentation
    euler_char: int
    abelianization: AbelianGroup
    citation: str


def stable_equiv_certificate(
    a: Presentation, b: Presentation, finite_pi1_assertion: bool
) -> StableEquivCertificate:
    """Certify ``X_a v S^2`` simple homotopy equivalent to ``X_b v S^2``.

    Checks the computable necessary conditions (equal abelianizations,
    equal Euler characteristics) and requires the caller to assert
    finiteness of the common fundamental group: finiteness is never decided
    here, built-in families carry the assertion.
    """
    if not finite_pi1_assertion:
        raise StableEquivRefusal("finiteness of the fundamental group was not asserted")
    if euler_char(a) != euler_char(b):
        raise StableEquivRefusal(
            f"Euler characteristics differ: {euler_char(a)} vs {euler_char(b)}"
        )
    ab_a, ab_b = abelianization(a), abelianization(b)
    if ab_a != ab_b:
        raise StableEquivRefusal(f"abelianizations differ: {ab_a} vs {ab_b}")
    return StableEquivCertificate(a, b, euler_char(a), ab_a, _STABLE_CITATION)


# ---------------------------------------------------------------------------
# Finite complexes
# ---------------------------------------------------------------------------


class ComplexDescriptor:
    """A finite connected CW-complex known to the thickening machinery.

    Concrete variants expose ``dim``, ``euler_char`` and a ``label``.
    """

    dim: int

    @property
    def euler_char(self) -> int:  # pragma: no cover - overridden
        raise NotImplementedError

    def label(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class CayleyComplex(ComplexDescriptor):
    """The presentation complex: one circle per generator, one 2-cell per relator."""

    presentation: Presentation

    @property
    def dim(self) -> int:
        return 2 if self.presentation.relators else 1

    @property
    def euler_char(self) -> int:
        return euler_char(self.presentation)

    def label(self) -> str:
        meta = self.presentation.metadata or {}
        if meta.get("family") == "metzler":
            return f"X(metzler p={meta['p']} s={meta['s']} q={meta['q']})"
        if meta.get("family") == "q28":
            return f"X(q28 variant={meta['variant']})"
        return f"X{self.presentation}"


@dataclass(frozen=True)
class SphereComplex(ComplexDescriptor):
    """The sphere ``S^n`` with its minimal CW structure."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("sphere dimension must be at least 1")

    @property
    def dim(self) -> int:
        return self.n

    @property
    def euler_char(self) -> int:
        return 2 if self.n % 2 == 0 else 0

    def label(self) -> str:
        return f"S^{self.n}"


@dataclass(frozen=True)
class WedgeComplex(ComplexDescriptor):
    """A wedge of finite complexes at a common point."""

    parts: tuple[ComplexDescriptor, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise DomainError("a wedge needs at least two parts")

    @property
    def dim(self) -> int:
        return max(part.dim for part in self.parts)

    @property
    def euler_char(self) -> int:
        return sum(part.euler_char for part in self.parts) - (len(self.parts) - 1)

    def label(self) -> str:
        return " v ".join(part.label() for part in self.parts)
