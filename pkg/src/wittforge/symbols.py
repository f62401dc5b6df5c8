"""Symbol presentations and machine-checkable rewrite certificates.

A class presentation is a formal integer combination of symbols
``witt (x) b_1 (x) ... (x) b_n`` with coefficients reduced mod p^m and a
canonical term order, so equality of presentations is structural. The
rewrite steps are exactly the defining relations (plus bilinearity of the
tensor slots), each step naming concrete elements so a verifier can replay
it by exact recomputation. Class equality over general fields is *not*
decided here; the engine only checks certificates.
"""

from __future__ import annotations

from .errors import (
    BadLength,
    BadParameters,
    DescriptorMismatch,
    SearchExhausted,
    StepInvalid,
    UnsupportedParameters,
    WrongDescriptor,
)
from .fields import FieldElement, PrimeField
from .witt import WittVector, witt_trace


class PSymbol:
    """A single symbol: a Witt vector tensored with nonzero slot elements."""

    __slots__ = ("witt", "slots")

    def __init__(self, witt, slots):
        slots = tuple(slots)
        for b in slots:
            if not isinstance(b, FieldElement) or b.field != witt.field:
                raise DescriptorMismatch("slots must lie in the Witt vector's field")
            if b.is_zero():
                raise BadParameters("symbol slots must be nonzero")
        self.witt = witt
        self.slots = slots

    @property
    def field(self):
        return self.witt.field

    @property
    def m(self):
        return self.witt.length

    @property
    def n(self):
        return len(self.slots)

    def key(self):
        return (self.witt.sort_key(), tuple(b.sort_key() for b in self.slots))

    def __eq__(self, other):
        return (
            isinstance(other, PSymbol)
            and other.witt == self.witt
            and other.slots == self.slots
        )

    def __hash__(self):
        return hash((self.witt, self.slots))

    def __str__(self):
        return str(self.witt) + "".join(f"(x){b}" for b in self.slots)

    def __repr__(self):
        return f"PSymbol[{self}]"

    def to_json(self):
        return {
            "witt": [str(c) for c in self.witt.components],
            "slots": [str(b) for b in self.slots],
        }

    @classmethod
    def from_json(cls, field, obj):
        witt = WittVector(field, [field.parse(t) for t in obj["witt"]])
        slots = [field.parse(t) for t in obj["slots"]]
        return cls(witt, slots)


class ClassPresentation:
    """Formal sum of symbols with coefficients in [0, p^m), canonically sorted."""

    __slots__ = ("field", "m", "n", "terms")

    def __init__(self, field, m, n, terms=()):
        self.field = field
        self.m = m
        self.n = n
        modulus = field.p ** m
        acc = {}
        for coeff, sym in terms:
            if sym.m != m or sym.n != n or sym.field != field:
                raise DescriptorMismatch("term shape does not match the presentation")
            c = (acc.get(sym, 0) + coeff) % modulus
            if c:
                acc[sym] = c
            elif sym in acc:
                del acc[sym]
        self.terms = tuple(sorted(acc.items(), key=lambda t: t[0].key()))

    @classmethod
    def of_symbol(cls, sym, coeff=1):
        return cls(sym.field, sym.m, sym.n, [(coeff, sym)])

    def is_zero(self):
        return not self.terms

    def length(self):
        """Term count of this presentation (counting coefficients once)."""
        return len(self.terms)

    def with_term(self, coeff, sym):
        return ClassPresentation(
            self.field, self.m, self.n, list(self.term_pairs()) + [(coeff, sym)]
        )

    def term_pairs(self):
        return [(c, s) for s, c in self.terms]

    def __add__(self, other):
        if (
            other.field != self.field
            or other.m != self.m
            or other.n != self.n
        ):
            raise DescriptorMismatch("presentations have different shapes")
        return ClassPresentation(
            self.field, self.m, self.n, self.term_pairs() + other.term_pairs()
        )

    def scaled(self, k):
        return ClassPresentation(
            self.field, self.m, self.n, [(c * k, s) for c, s in self.term_pairs()]
        )

    def __eq__(self, other):
        return (
            isinstance(other, ClassPresentation)
            and other.field == self.field
            and (other.m, other.n) == (self.m, self.n)
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field, self.m, self.n, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            (f"{c}*[{s}]" if c != 1 else f"[{s}]") for s, c in self.terms
        )

    def __repr__(self):
        return f"ClassPresentation({self})"

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "terms": [
                {"coeff": c, "symbol": s.to_json()} for s, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, field, obj):
        terms = [
            (t["coeff"], PSymbol.from_json(field, t["symbol"]))
            for t in obj["terms"]
        ]
        return cls(field, obj["m"], obj["n"], terms)


# -- rewrite steps -------------------------------------------------------------


class RewriteStep:
    """Base class; each step validates itself against the presentation."""

    kind = None

    def apply(self, pres):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    @staticmethod
    def from_json(field, obj):
        kind = obj["type"]
        cls = _STEP_KINDS.get(kind)
        if cls is None:
            raise UnsupportedParameters(f"unknown step type {kind!r}")
        return cls._from_json(field, obj)


def _slots_from_json(field, lst):
    return tuple(field.parse(t) for t in lst)


class R1Step(RewriteStep):
    """Adds coeff * ((u^p - u) (x) slots); the relation makes it zero."""

    kind = "R1"

    def __init__(self, witt, slots, coeff=1):
        self.witt = witt
        self.slots = tuple(slots)
        self.coeff = coeff

    def apply(self, pres):
        sym = PSymbol(self.witt.wp(), self.slots)
        if sym.m != pres.m or sym.n != pres.n:
            raise StepInvalid(-1, "R1 term shape mismatch")
        return pres.with_term(self.coeff, sym)

    def to_json(self):
        return {
            "type": "R1",
            "witt": [str(c) for c in self.witt.components],
            "slots": [str(b) for b in self.slots],
            "coeff": self.coeff,
        }

    @classmethod
    def _from_json(cls, field, obj):
        return cls(
            WittVector(field, [field.parse(t) for t in obj["witt"]]),
            _slots_from_json(field, obj["slots"]),
            obj.get("coeff", 1),
        )


class R2Step(RewriteStep):
    """Adds coeff * (V_j(a) (x) a (x) b_2 ...): `a` in one Witt slot and slot 1."""

    kind = "R2"

    def __init__(self, position, a, slots, m, coeff=1):
        self.position = position  # 1-based Witt slot index
        self.a = a
        self.slots = tuple(slots)
        self.m = m
        self.coeff = coeff

    def apply(self, pres):
        if not 1 <= self.position <= self.m or self.m != pres.m:
            raise StepInvalid(-1, "R2 Witt slot position out of range")
        if self.a.is_zero():
            raise StepInvalid(-1, "R2 element must be nonzero")
        if not self.slots or self.slots[0] != self.a:
            raise StepInvalid(-1, "R2 requires the first tensor slot to equal a")
        field = self.a.field
        comps = [
            self.a if i + 1 == self.position else field.zero() for i in range(self.m)
        ]
        sym = PSymbol(WittVector(field, comps), self.slots)
        if sym.n != pres.n:
            raise StepInvalid(-1, "R2 term shape mismatch")
        return pres.with_term(self.coeff, sym)

    def to_json(self):
        return {
            "type": "R2",
            "position": self.position,
            "a": str(self.a),
            "slots": [str(b) for b in self.slots],
            "m": self.m,
            "coeff": self.coeff,
        }

    @classmethod
    def _from_json(cls, field, obj):
        return cls(
            obj["position"],
            field.parse(obj["a"]),
            _slots_from_json(field, obj["slots"]),
            obj["m"],
            obj.get("coeff", 1),
        )


class R3Step(RewriteStep):
    """Adds coeff * (witt (x) slots) with two equal tensor slots."""

    kind = "R3"

    def __init__(self, witt, slots, coeff=1):
        self.witt = witt
        self.slots = tuple(slots)
        self.coeff = coeff

    def apply(self, pres):
        n = len(self.slots)
        if not any(
            self.slots[i] == self.slots[j]
            for i in range(n)
            for j in range(i + 1, n)
        ):
            raise StepInvalid(-1, "R3 requires two equal tensor slots")
        sym = PSymbol(self.witt, self.slots)
        if sym.m != pres.m or sym.n != pres.n:
            raise StepInvalid(-1, "R3 term shape mismatch")
        return pres.with_term(self.coeff, sym)

    def to_json(self):
        return {
            "type": "R3",
            "witt": [str(c) for c in self.witt.components],
            "slots": [str(b) for b in self.slots],
            "coeff": self.coeff,
        }

    @classmethod
    def _from_json(cls, field, obj):
        return cls(
            WittVector(field, [field.parse(t) for t in obj["witt"]]),
            _slots_from_json(field, obj["slots"]),
            obj.get("coeff", 1),
        )


class WittAddStep(RewriteStep):
    """merge: u(x)b + v(x)b -> (u+v)(x)b; split is the inverse direction."""

    kind = "WittAdd"

    def __init__(self, witt1, witt2, slots, direction="merge"):
        self.witt1 = witt1
        self.witt2 = witt2
        self.slots = tuple(slots)
        self.direction = direction

    def apply(self, pres):
        merged = PSymbol(self.witt1 + self.witt2, self.slots)
        s1 = PSymbol(self.witt1, self.slots)
        s2 = PSymbol(self.witt2, self.slots)
        coeffs = dict(pres.terms)
        if self.direction == "merge":
            need = 2 if s1 == s2 else 1
            if coeffs.get(s1, 0) < need or coeffs.get(s2, 0) < 1:
                raise StepInvalid(-1, "WittAdd merge: operand terms not present")
            extra = [(-1, s1), (-1, s2), (1, merged)]
        elif self.direction == "split":
            if coeffs.get(merged, 0) < 1:
                raise StepInvalid(-1, "WittAdd split: merged term not present")
            extra = [(1, s1), (1, s2), (-1, merged)]
        else:
            raise StepInvalid(-1, f"unknown WittAdd direction {self.direction!r}")
        return ClassPresentation(
            pres.field, pres.m, pres.n, pres.term_pairs() + extra
        )

    def to_json(self):
        return {
            "type": "WittAdd",
            "witt1": [str(c) for c in self.witt1.components],
            "witt2": [str(c) for c in self.witt2.components],
            "slots": [str(b) for b in self.slots],
            "direction": self.direction,
        }

    @classmethod
    def _from_json(cls, field, obj):
        return cls(
            WittVector(field, [field.parse(t) for t in obj["witt1"]]),
            WittVector(field, [field.parse(t) for t in obj["witt2"]]),
            _slots_from_json(field, obj["slots"]),
            obj.get("direction", "merge"),
        )


class SlotMulStep(RewriteStep):
    """split: w(x)..(b*b').. -> w(x)..b.. + w(x)..b'..; merge is the inverse."""

    kind = "SlotMul"

    def __init__(self, witt, position, b, bprime, rest_slots, direction="split"):
        self.witt = witt
        self.position = position  # 0-based tensor slot index
        self.b = b
        self.bprime = bprime
        self.rest_slots = tuple(rest_slots)  # full slot tuple with product at position
        self.direction = direction

    def _symbols(self):
        prod = self.b * self.bprime
        if self.rest_slots[self.position] != prod:
            raise StepInvalid(-1, "SlotMul: slot does not equal the stated product")
        slots_b = list(self.rest_slots)
        slots_b[self.position] = self.b
        slots_bp = list(self.rest_slots)
        slots_bp[self.position] = self.bprime
        return (
            PSymbol(self.witt, self.rest_slots),
            PSymbol(self.witt, slots_b),
            PSymbol(self.witt, slots_bp),
        )

    def apply(self, pres):
        if not 0 <= self.position < pres.n:
            raise StepInvalid(-1, "SlotMul position out of range")
        prod_sym, sym_b, sym_bp = self._symbols()
        coeffs = dict(pres.terms)
        if self.direction == "split":
            if coeffs.get(prod_sym, 0) < 1:
                raise StepInvalid(-1, "SlotMul split: product term not present")
            extra = [(-1, prod_sym), (1, sym_b), (1, sym_bp)]
        elif self.direction == "merge":
            need_b = 2 if sym_b == sym_bp else 1
            if coeffs.get(sym_b, 0) < need_b or coeffs.get(sym_bp, 0) < 1:
                raise StepInvalid(-1, "SlotMul merge: operand terms not present")
            extra = [(1, prod_sym), (-1, sym_b), (-1, sym_bp)]
        else:
            raise StepInvalid(-1, f"unknown SlotMul direction {self.direction!r}")
        return ClassPresentation(
            pres.field, pres.m, pres.n, pres.term_pairs() + extra
        )

    def to_json(self):
        return {
            "type": "SlotMul",
            "witt": [str(c) for c in self.witt.components],
            "position": self.position,
            "b": str(self.b),
            "bprime": str(self.bprime),
            "slots": [str(s) for s in self.rest_slots],
            "direction": self.direction,
        }

    @classmethod
    def _from_json(cls, field, obj):
        return cls(
            WittVector(field, [field.parse(t) for t in obj["witt"]]),
            obj["position"],
            field.parse(obj["b"]),
            field.parse(obj["bprime"]),
            _slots_from_json(field, obj["slots"]),
            obj.get("direction", "split"),
        )


_STEP_KINDS = {
    cls.kind: cls for cls in (R1Step, R2Step, R3Step, WittAddStep, SlotMulStep)
}


class EquivalenceCertificate:
    """An ordered rewrite chain transforming `start` into `end` exactly."""

    def __init__(self, start, end, steps):
        if (start.field, start.m, start.n) != (end.field, end.m, end.n):
            raise DescriptorMismatch("certificate endpoints have different shapes")
        self.start = start
        self.end = end
        self.steps = list(steps)

    @property
    def field(self):
        return self.start.field

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        from .fields import field_from_json

        if field is None:
            field = field_from_json(obj["field"])
        start = ClassPresentation.from_json(field, obj["start"])
        end = ClassPresentation.from_json(field, obj["end"])
        steps = [RewriteStep.from_json(field, s) for s in obj["steps"]]
        return cls(start, end, steps)


def verify_certificate(cert):
    """Replays the chain; returns (ok, first_failing_step_or_None).

    A failing index of len(steps) means every step replayed but the final
    presentation differs from the declared end.
    """
    current = cert.start
    for idx, step in enumerate(cert.steps):
        try:
            current = step.apply(current)
        except StepInvalid as err:
            return False, StepInvalid(idx, err.reason)
        except Exception as err:  # malformed data surfaces as a step failure
            return False, StepInvalid(idx, f"replay error: {err}")
    if current == cert.end:
        return True, None
    return False, StepInvalid(len(cert.steps), "chain result differs from end")


# -- structural maps -----------------------------------------------------------


def shift_map(pres, ell):
    """Prepends ell zeros to every term's Witt vector (lands in m + ell)."""
    if ell < 1:
        raise BadLength("shift amount must be >= 1")
    terms = [
        (c, PSymbol(s.witt.shift(ell), s.slots)) for c, s in pres.term_pairs()
    ]
    return ClassPresentation(pres.field, pres.m + ell, pres.n, terms)


def exp_map(pres, ell):
    """Keeps the first m - ell Witt components of every term."""
    if not 1 <= ell < pres.m:
        raise BadLength("exp_map needs 1 <= ell < m")
    keep = pres.m - ell
    terms = [
        (c, PSymbol(s.witt.truncate(keep), s.slots)) for c, s in pres.term_pairs()
    ]
    return ClassPresentation(pres.field, keep, pres.n, terms)


def p_multiple(pres, ell):
    """The p^ell-fold sum, term by term, in closed form."""
    if ell < 0 or ell >= pres.m:
        if ell == 0:
            return pres
        raise BadLength("p_multiple needs 0 <= ell < m")
    if ell == 0:
        return pres
    field = pres.field
    terms = []
    for c, s in pres.term_pairs():
        comps = [field.zero()] * ell + [
            a.frobenius(ell) for a in s.witt.components[: pres.m - ell]
        ]
        terms.append((c, PSymbol(WittVector(field, comps), s.slots)))
    return ClassPresentation(field, pres.m, pres.n, terms)


# -- H^1 over finite fields ------------------------------------------------------

_H1_CAP = 2 ** 16
_wp_image_cache = {}


def h1_is_trivial(omega):
    """(trivial?, preimage) for a Witt vector class in W_m(F_q)/(u^p - u).

    Decided by the trace criterion; a preimage under u -> u^p - u is found
    by exhaustive search when the ring is small enough.
    """
    field = omega.field
    if not field.is_finite() or field.kind not in ("finite", "prime"):
        raise WrongDescriptor("h1_is_trivial needs a finite coefficient field")
    trace = witt_trace(omega)
    if not trace.is_zero():
        return False, None
    if omega.is_zero():
        return True, WittVector.zero(field, omega.length)
    order = field.order if field.kind == "finite" else field.p
    size = order ** omega.length
    if size > _H1_CAP:
        raise SearchExhausted(
            "trace says trivial but the preimage search space exceeds the cap"
        )
    key = (field, omega.length)
    table = _wp_image_cache.get(key)
    if table is None:
        table = {}
        import itertools as _it

        elems = list(field.iter_elements())
        for combo in _it.product(elems, repeat=omega.length):
            u = WittVector(field, combo)
            img = u.wp()
            table.setdefault(img, u)
        _wp_image_cache[key] = table
    pre = table.get(omega)
    if pre is None:
        raise SearchExhausted(
            "trace says trivial but exhaustive search found no preimage (bug)"
        )
    return True, pre
