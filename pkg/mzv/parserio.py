"""
Text, LaTeX and JSON forms of every algebraic type.

Expression grammar (whitespace is ignored between tokens):

    expr    := "0" | term (("+" | "-") term)*
    term    := [coeff ["*"]] basis
    coeff   := integer ["/" integer]
    basis   := "[2,1]" | "x0x1x3" | "<[2,1];(1,3)>" | "𝟏"
    tensor  := basis ("⊗" | "(x)") basis

"[]" and "𝟏" both denote the unit. ParseError offsets count UTF-8 bytes.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, TypeAliasType

from pydantic import BaseModel, TypeAdapter, ValidationError

from mzv.chenfrac import ONE, ChenFraction, FracTensorVector, FracVector
from mzv.errors import DomainError, ParseError, SchemaError
from mzv.hcore import (
    Composition,
    HTensorVector,
    HVector,
    LinearCombination,
    accumulate_into,
)
from mzv.schemas import (
    ChenFractionModel,
    CompositionModel,
    CompositionPairTerm,
    CompositionTerm,
    FracTensorModel,
    FractionPairTerm,
    FractionTerm,
    FracVectorModel,
    GeneratorModel,
    HTensorModel,
    HVectorModel,
    OutputFormat,
    WordModel,
    WordTerm,
    WordVectorModel,
    format_coefficient,
)
from mzv.stuffle import EDSGenerator, GeneratorKind
from mzv.words import Word, WordVector

UNIT_GLYPH = "𝟏"
MINUS_SIGNS = ("-", "−")
TENSOR_SIGNS = ("⊗", "(x)")
DIGITS = frozenset("0123456789")

type JsonKind = type | TypeAliasType


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str, expected: str | None = None) -> ParseError:
        offset = len(self.text[: self.pos].encode("utf-8"))
        return ParseError(message, offset, expected)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def accept(self, *tokens: str) -> str | None:
        self.skip_ws()
        for token in tokens:
            if self.text.startswith(token, self.pos):
                self.pos += len(token)
                return token
        return None

    def expect(self, token: str) -> None:
        if not self.accept(token):
            raise self.error("Unexpected input", repr(token))

    def peek_digit(self) -> bool:
        self.skip_ws()
        return self.pos < len(self.text) and self.text[self.pos] in DIGITS

    def integer(self, *, minimum: int = 0, what: str = "integer") -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in DIGITS:
            self.pos += 1
        if start == self.pos:
            raise self.error("Unexpected input", what)
        value = int(self.text[start : self.pos])
        if value < minimum:
            self.pos = start
            raise self.error(f"{value} is out of range", f"{what} >= {minimum}")
        return value

    def integer_list(
        self, open_: str, close: str, *, minimum: int, what: str
    ) -> tuple[int, ...]:
        self.expect(open_)
        items: list[int] = []
        if self.accept(close):
            return tuple(items)
        items.append(self.integer(minimum=minimum, what=what))
        while not self.accept(close):
            self.expect(",")
            items.append(self.integer(minimum=minimum, what=what))
        return tuple(items)

    # -- basis tokens --------------------------------------------------------

    def composition(self) -> Composition:
        if self.accept(UNIT_GLYPH):
            return ()
        self.skip_ws()
        if not self.text.startswith("[", self.pos):
            raise self.error("Unexpected input", "composition such as [2,1]")
        return self.integer_list("[", "]", minimum=1, what="entry")

    def word(self) -> Word:
        if self.accept(UNIT_GLYPH):
            return ()
        self.skip_ws()
        if not self.text.startswith("x", self.pos):
            raise self.error("Unexpected input", "word such as x0x1")
        letters = []
        while self.accept("x"):
            letters.append(self.integer(what="letter index"))
        return tuple(letters)

    def fraction(self) -> ChenFraction:
        if self.accept(UNIT_GLYPH):
            return ONE
        self.skip_ws()
        if not self.text.startswith("<", self.pos):
            raise self.error("Unexpected input", "Chen fraction like <[2,1];(1,3)>")
        start = self.pos
        self.expect("<")
        exponents = self.composition()
        self.expect(";")
        variables = self.integer_list("(", ")", minimum=1, what="variable index")
        self.expect(">")
        try:
            return ChenFraction(exponents, variables)
        except DomainError as exc:
            self.pos = start
            raise self.error(exc.detail, "valid Chen fraction") from exc

    def pair[K](self, key: Callable[[], K]) -> tuple[K, K]:
        left = key()
        if not self.accept(*TENSOR_SIGNS):
            raise self.error("Unexpected input", "'⊗'")
        return left, key()

    # -- combinations --------------------------------------------------------

    def coefficient(self) -> Fraction:
        if not self.peek_digit():
            return Fraction(1)
        numerator = self.integer(what="coefficient")
        denominator = 1
        if self.accept("/"):
            denominator = self.integer(minimum=1, what="denominator")
        self.accept("*")
        return Fraction(numerator, denominator)

    def linear[R: LinearCombination](
        self, key: Callable[[], Any], into: type[R]
    ) -> R:
        if self.text.strip() == "0":
            return into.zero()
        if self.at_end():
            raise self.error("Empty expression", "term")
        pieces = []
        sign = 1
        if self.accept(*MINUS_SIGNS):
            sign = -1
        else:
            self.accept("+")
        while True:
            coeff = self.coefficient()
            pieces.append((key(), sign * coeff))
            if self.at_end():
                break
            if self.accept(*MINUS_SIGNS):
                sign = -1
            elif self.accept("+"):
                sign = 1
            else:
                raise self.error("Unexpected input", "'+' or '-'")
        return accumulate_into(into, pieces)

    def single[K](self, key: Callable[[], K]) -> K:
        value = key()
        if not self.at_end():
            raise self.error("Trailing input", "end of input")
        return value


def parse_composition(text: str) -> Composition:
    parser = _Parser(text)
    return parser.single(parser.composition)


def parse_hvector(text: str) -> HVector:
    parser = _Parser(text)
    return parser.linear(parser.composition, HVector)


def parse_htensor(text: str) -> HTensorVector:
    parser = _Parser(text)
    return parser.linear(lambda: parser.pair(parser.composition), HTensorVector)


def parse_word(text: str) -> Word:
    parser = _Parser(text)
    return parser.single(parser.word)


def parse_wordvector(text: str) -> WordVector:
    parser = _Parser(text)
    return parser.linear(parser.word, WordVector)


def parse_fraction(text: str) -> ChenFraction:
    parser = _Parser(text)
    return parser.single(parser.fraction)


def parse_fracvector(text: str) -> FracVector:
    parser = _Parser(text)
    return parser.linear(parser.fraction, FracVector)


def parse_fractensor(text: str) -> FracTensorVector:
    parser = _Parser(text)
    return parser.linear(lambda: parser.pair(parser.fraction), FracTensorVector)


# ---------------------------------------------------------------------------
# Text and LaTeX
# ---------------------------------------------------------------------------


def print_text(value: Any) -> str:
    if isinstance(value, LinearCombination):
        return value.to_text()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _latex_coefficient(value: Fraction, *, leading: bool) -> str:
    sign = "-" if value < 0 else ("" if leading else "+")
    magnitude = abs(value)
    if magnitude == 1:
        return sign
    if magnitude.denominator == 1:
        return f"{sign}{magnitude.numerator}"
    return f"{sign}\\frac{{{magnitude.numerator}}}{{{magnitude.denominator}}}"


def latex_composition(s: Composition) -> str:
    return "[" + ",".join(map(str, s)) + "]" if s else "{\\bf 1}"


def latex_word(w: Word) -> str:
    return "".join(f"x_{{{letter}}}" for letter in w) if w else "{\\bf 1}"


def latex_fraction(f: ChenFraction) -> str:
    if not f.exponents:
        return "{\\bf 1}"
    top = ",".join(map(str, f.exponents))
    bottom = ",".join(f"x_{{{v}}}" for v in f.variables)
    return (
        "\\left[\\begin{smallmatrix}"
        f"{top}\\\\{bottom}"
        "\\end{smallmatrix}\\right]"
    )


def _latex_tensor[K](render: Callable[[K], str]) -> Callable[[tuple[K, K]], str]:
    return lambda k: render(k[0]) + "\\otimes " + render(k[1])


def _latex_key(value: LinearCombination) -> Callable[[Any], str]:
    match value:
        case HVector():
            return latex_composition
        case HTensorVector():
            return _latex_tensor(latex_composition)
        case WordVector():
            return latex_word
        case FracVector():
            return latex_fraction
        case FracTensorVector():
            return _latex_tensor(latex_fraction)
    raise TypeError(f"No LaTeX form for {type(value).__name__}")


def print_latex(value: LinearCombination | ChenFraction) -> str:
    if isinstance(value, ChenFraction):
        return latex_fraction(value)
    if not value:
        return "0"
    render = _latex_key(value)
    return "".join(
        _latex_coefficient(c, leading=i == 0) + render(k)
        for i, (k, c) in enumerate(value.items())
    )


def relation_latex(generator: EDSGenerator) -> str:
    """The generator read as a ζ-identity, e.g. \\zeta(3)-\\zeta(2,1)=0."""

    def _zeta(s: Composition) -> str:
        return "\\zeta(" + ",".join(map(str, s)) + ")" if s else "1"

    body = "".join(
        _latex_coefficient(c, leading=i == 0) + _zeta(s)
        for i, (s, c) in enumerate(generator.value.items())
    )
    return f"{body or '0'}=0"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _fraction_model(f: ChenFraction) -> ChenFractionModel:
    return ChenFractionModel(exponents=list(f.exponents), variables=list(f.variables))


def _fraction_from(model: ChenFractionModel) -> ChenFraction:
    return ChenFraction(tuple(model.exponents), tuple(model.variables))


def _hvector_model(v: HVector) -> HVectorModel:
    return HVectorModel(
        terms=[
            CompositionTerm(coeff=format_coefficient(c), comp=list(s))
            for s, c in v.items()
        ]
    )


def _hvector_from(model: HVectorModel) -> HVector:
    return HVector((tuple(t.comp), t.value) for t in model.terms)


def _generator_model(g: EDSGenerator) -> GeneratorModel:
    return GeneratorModel(
        kind=g.kind, sources=[list(s) for s in g.sources], value=_hvector_model(g.value)
    )


def _generator_from(model: GeneratorModel) -> EDSGenerator:
    left, right = (tuple(s) for s in model.sources)
    return EDSGenerator(
        GeneratorKind(model.kind), (left, right), _hvector_from(model.value)
    )


@dataclass(frozen=True, slots=True)
class _Codec:
    model: type[BaseModel]
    dump: Callable[[Any], BaseModel]
    load: Callable[[Any], Any]


_CODECS: dict[Any, _Codec] = {
    Composition: _Codec(
        CompositionModel,
        lambda s: CompositionModel(comp=list(s)),
        lambda m: tuple(m.comp),
    ),
    Word: _Codec(
        WordModel,
        lambda w: WordModel(letters=list(w)),
        lambda m: tuple(m.letters),
    ),
    HVector: _Codec(HVectorModel, _hvector_model, _hvector_from),
    HTensorVector: _Codec(
        HTensorModel,
        lambda v: HTensorModel(
            terms=[
                CompositionPairTerm(
                    coeff=format_coefficient(c), left=list(lf), right=list(r)
                )
                for (lf, r), c in v.items()
            ]
        ),
        lambda m: HTensorVector(
            ((tuple(t.left), tuple(t.right)), t.value) for t in m.terms
        ),
    ),
    WordVector: _Codec(
        WordVectorModel,
        lambda v: WordVectorModel(
            terms=[
                WordTerm(coeff=format_coefficient(c), letters=list(w))
                for w, c in v.items()
            ]
        ),
        lambda m: WordVector((tuple(t.letters), t.value) for t in m.terms),
    ),
    ChenFraction: _Codec(ChenFractionModel, _fraction_model, _fraction_from),
    FracVector: _Codec(
        FracVectorModel,
        lambda v: FracVectorModel(
            terms=[
                FractionTerm(coeff=format_coefficient(c), fraction=_fraction_model(f))
                for f, c in v.items()
            ]
        ),
        lambda m: FracVector((_fraction_from(t.fraction), t.value) for t in m.terms),
    ),
    FracTensorVector: _Codec(
        FracTensorModel,
        lambda v: FracTensorModel(
            terms=[
                FractionPairTerm(
                    coeff=format_coefficient(c),
                    left=_fraction_model(a),
                    right=_fraction_model(b),
                )
                for (a, b), c in v.items()
            ]
        ),
        lambda m: FracTensorVector(
            ((_fraction_from(t.left), _fraction_from(t.right)), t.value)
            for t in m.terms
        ),
    ),
    EDSGenerator: _Codec(GeneratorModel, _generator_model, _generator_from),
}


def _codec(kind: JsonKind) -> _Codec:
    if kind is tuple:
        raise TypeError("Bare tuples need kind=Composition or kind=Word")
    if kind not in _CODECS:
        raise TypeError(f"No JSON form for {kind.__name__}")
    return _CODECS[kind]


def to_model(value: Any, kind: JsonKind | None = None) -> BaseModel:
    if isinstance(value, BaseModel):
        return value
    return _codec(kind or type(value)).dump(value)


def to_json(value: Any, kind: JsonKind | None = None) -> str:
    """JSON text of `value`; compositions and words are tuples, so name `kind`."""
    if isinstance(value, Sequence) and not isinstance(value, str | tuple):
        models = [to_model(item, kind) for item in value]
        return TypeAdapter(list[Any]).dump_json(models).decode()
    return to_model(value, kind).model_dump_json()


def from_json(text: str | bytes, kind: JsonKind) -> Any:
    codec = _codec(kind)
    try:
        model = codec.model.model_validate_json(text)
    except ValidationError as exc:
        detail = exc.errors()[0]["msg"]
        raise SchemaError(f"Invalid {kind.__name__} JSON: {detail}") from exc
    try:
        return codec.load(model)
    except DomainError as exc:
        raise SchemaError(exc.detail) from exc


def roundtrip_json[T](value: T, kind: JsonKind | None = None) -> T:
    kind = kind or type(value)
    return from_json(to_json(value, kind), kind)


def render(value: Any, fmt: OutputFormat) -> str:
    match fmt:
        case OutputFormat.JSON:
            return to_json(value)
        case OutputFormat.LATEX if isinstance(value, LinearCombination | ChenFraction):
            return print_latex(value)
    return print_text(value)
