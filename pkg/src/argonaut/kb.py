"""Knowledge-base DSL: parser, validation, and setting assembly.

The language is line-oriented::

    atoms p q r
    premise <formula> [<nat>]
    assumption <atom> [<nat>]
    contrary <atom> = <formula>
    strict <id>: f1, f2 -> g
    defeasible <id> [<nat>]: f1, f2 => g
    setting core=<cl|cl-top|cl-con|mcs-cap|mcs-cup|aba|aspic>
            attack=<dicodef|def|didef|diucut|ucut|native>
            mode=<dagger|ddagger> lifting=<none|min|max|weakest-link|max-aba>

Formulas: ``top | bot | <atom> | ~f | f & f | f | f | f -> f`` with
precedence ``~ > & > | > ->`` and parentheses.  Inside rule lines the
body/head separator is the first ``->`` or ``=>`` at parenthesis depth
zero, so implications in rule bodies must be parenthesized.  Blank lines
and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cores import (
    ABARulesCore,
    ASPICCore,
    CLCore,
    CLTopCore,
    DefeasibleRule,
    MCSCore,
    StrictRule,
    restrict_consistent,
)
from .engine import ATTACK_RULES, Setting
from .formula import (
    And,
    ArgonautError,
    Atom,
    AttackPoints,
    BOT,
    Contrariness,
    Formula,
    Implies,
    Not,
    Or,
    TOP,
    atoms,
    render,
)
from .priorities import PriorityAssignment


class KBError(ArgonautError):
    """Lexical, syntactic or semantic error in a knowledge-base document."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # name, punct, int
    text: str
    line: int
    column: int


_PUNCT = ("->", "=>", "~", "&", "|", "(", ")", "[", "]", ":", "=", ",")


def _tokenize(text: str, line_no: int) -> list[Token]:
    out: list[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            break
        matched = False
        for p in _PUNCT:
            if text.startswith(p, i):
                out.append(Token("punct", p, line_no, i + 1))
                i += len(p)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], line_no, i + 1))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text):
                c = text[j]
                if c.isalnum() or c == "_":
                    j += 1
                elif c == "-" and j + 1 < len(text) and text[j + 1].isalnum():
                    j += 1
                else:
                    break
            out.append(Token("name", text[i:j], line_no, i + 1))
            i = j
            continue
        raise KBError(f"unexpected character {ch!r}", line_no, i + 1)
    return out


# ---------------------------------------------------------------------------
# Formula parser (precedence climbing)


class _FormulaParser:
    def __init__(self, tokens: list[Token], line: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            col = (last.column + len(last.text)) if last else 1
            raise KBError("unexpected end of formula", self.line, col)
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self._implies()
        return f

    def _implies(self) -> Formula:
        left = self._or()
        tok = self.peek()
        if tok and tok.text == "->":
            self.take()
            return Implies(left, self._implies())
        return left

    def _or(self) -> Formula:
        left = self._and()
        while True:
            tok = self.peek()
            if tok and tok.text == "|":
                self.take()
                left = Or(left, self._and())
            else:
                return left

    def _and(self) -> Formula:
        left = self._unary()
        while True:
            tok = self.peek()
            if tok and tok.text == "&":
                self.take()
                left = And(left, self._unary())
            else:
                return left

    def _unary(self) -> Formula:
        tok = self.take()
        if tok.text == "~":
            return Not(self._unary())
        if tok.text == "(":
            inner = self._implies()
            closing = self.take()
            if closing.text != ")":
                raise KBError("expected ')'", closing.line, closing.column)
            return inner
        if tok.kind == "name":
            if tok.text == "top":
                return TOP
            if tok.text == "bot":
                return BOT
            return Atom(tok.text)
        raise KBError(f"unexpected token {tok.text!r}", tok.line, tok.column)


def parse_formula(text: str, line_no: int = 1) -> Formula:
    tokens = _tokenize(text, line_no)
    if not tokens:
        raise KBError("empty formula", line_no, 1)
    parser = _FormulaParser(tokens, line_no)
    out = parser.parse()
    rest = parser.peek()
    if rest is not None:
        raise KBError(f"trailing input {rest.text!r}", rest.line, rest.column)
    return out


# ---------------------------------------------------------------------------
# Document


@dataclass
class KnowledgeBaseDoc:
    atoms: list[str] = field(default_factory=list)
    premises: list[tuple[Formula, Optional[int]]] = field(default_factory=list)
    assumptions: list[tuple[Formula, Optional[int]]] = field(default_factory=list)
    contraries: dict[Formula, list[Formula]] = field(default_factory=dict)
    strict_rules: list[StrictRule] = field(default_factory=list)
    defeasible_rules: list[DefeasibleRule] = field(default_factory=list)
    core: str = "cl"
    attack: str = "dicodef"
    mode: str = "ddagger"
    lifting: str = "none"
    warnings: list[str] = field(default_factory=list)


_CORES = ("cl", "cl-top", "cl-con", "mcs-cap", "mcs-cup", "aba", "aspic")
_ATTACKS = ("dicodef", "def", "didef", "diucut", "ucut", "native")
_MODES = ("dagger", "ddagger")
_LIFTINGS = ("none", "min", "max", "weakest-link", "max-aba")


def _parse_value_suffix(tokens: list[Token]) -> tuple[list[Token], Optional[int]]:
    """Strip a trailing ``[<nat>]`` from the token list."""
    if len(tokens) >= 3 and tokens[-1].text == "]" and tokens[-3].text == "[":
        value_tok = tokens[-2]
        if value_tok.kind != "int":
            raise KBError("expected a number in brackets", value_tok.line, value_tok.column)
        return tokens[:-3], int(value_tok.text)
    return tokens, None


def _split_depth0(tokens: list[Token], sep: str) -> Optional[tuple[list[Token], list[Token]]]:
    depth = 0
    for i, tok in enumerate(tokens):
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        elif tok.text == sep and depth == 0:
            return tokens[:i], tokens[i + 1 :]
    return None


def _parse_formula_tokens(tokens: list[Token], line_no: int) -> Formula:
    if not tokens:
        raise KBError("empty formula", line_no, 1)
    parser = _FormulaParser(tokens, line_no)
    out = parser.parse()
    rest = parser.peek()
    if rest is not None:
        raise KBError(f"trailing input {rest.text!r}", rest.line, rest.column)
    return out


def _parse_body(tokens: list[Token], line_no: int) -> tuple[Formula, ...]:
    if not tokens:
        return ()
    parts: list[list[Token]] = [[]]
    depth = 0
    for tok in tokens:
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        if tok.text == "," and depth == 0:
            parts.append([])
        else:
            parts[-1].append(tok)
    return tuple(_parse_formula_tokens(p, line_no) for p in parts if p)


def parse_kb(text: str) -> KnowledgeBaseDoc:
    """Parse and validate a knowledge-base document."""
    doc = KnowledgeBaseDoc()
    seen_rule_ids: set[str] = set()
    setting_seen = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, line_no)
        if not tokens:
            continue
        head = tokens[0]
        rest = tokens[1:]
        if head.text == "atoms":
            for tok in rest:
                if tok.kind != "name":
                    raise KBError("atom names expected", tok.line, tok.column)
                if tok.text in doc.atoms:
                    raise KBError(f"atom {tok.text} declared twice", tok.line, tok.column)
                doc.atoms.append(tok.text)
        elif head.text == "premise":
            rest, value = _parse_value_suffix(rest)
            doc.premises.append((_parse_formula_tokens(rest, line_no), value))
        elif head.text == "assumption":
            rest, value = _parse_value_suffix(rest)
            f = _parse_formula_tokens(rest, line_no)
            doc.assumptions.append((f, value))
        elif head.text == "contrary":
            split = _split_depth0(rest, "=")
            if split is None:
                raise KBError("expected 'contrary <atom> = <formula>'", line_no, head.column)
            lhs, rhs = split
            target = _parse_formula_tokens(lhs, line_no)
            doc.contraries.setdefault(target, []).append(
                _parse_formula_tokens(rhs, line_no)
            )
        elif head.text in ("strict", "defeasible"):
            if not rest or rest[0].kind != "name":
                raise KBError("rule id expected", line_no, head.column + len(head.text))
            rule_id = rest[0].text
            if rule_id in seen_rule_ids:
                raise KBError(f"duplicate rule id {rule_id}", rest[0].line, rest[0].column)
            seen_rule_ids.add(rule_id)
            rest = rest[1:]
            value = None
            if rest and rest[0].text == "[":
                closing = next((i for i, t in enumerate(rest) if t.text == "]"), None)
                if closing is None or closing != 2 or rest[1].kind != "int":
                    raise KBError("expected '[<nat>]'", rest[0].line, rest[0].column)
                value = int(rest[1].text)
                rest = rest[closing + 1 :]
            if not rest or rest[0].text != ":":
                raise KBError("expected ':'", line_no, rest[0].column if rest else 1)
            rest = rest[1:]
            arrow = "->" if head.text == "strict" else "=>"
            split = _split_depth0(rest, arrow)
            if split is None:
                raise KBError(f"expected '{arrow}' in rule", line_no, head.column)
            body_toks, head_toks = split
            body = _parse_body(body_toks, line_no)
            conclusion = _parse_formula_tokens(head_toks, line_no)
            if head.text == "strict":
                if value is not None:
                    doc.warnings.append(
                        f"line {line_no}: strict rules carry no priority; value ignored"
                    )
                doc.strict_rules.append(StrictRule(rule_id, body, conclusion))
            else:
                doc.defeasible_rules.append(
                    DefeasibleRule(rule_id, body, conclusion, value)
                )
        elif head.text == "setting":
            if setting_seen:
                raise KBError("only one setting line is allowed", line_no, head.column)
            setting_seen = True
            i = 0
            while i < len(rest):
                key = rest[i]
                if key.kind != "name" or i + 2 >= len(rest) or rest[i + 1].text != "=":
                    raise KBError("expected key=value", key.line, key.column)
                value = rest[i + 2].text
                j = i + 3
                if key.text == "core":
                    if value not in _CORES:
                        raise KBError(f"unknown core {value!r}", key.line, key.column)
                    doc.core = value
                elif key.text == "attack":
                    if value not in _ATTACKS:
                        raise KBError(f"unknown attack rule {value!r}", key.line, key.column)
                    doc.attack = value
                elif key.text == "mode":
                    if value not in _MODES:
                        raise KBError(f"unknown mode {value!r}", key.line, key.column)
                    doc.mode = value
                elif key.text == "lifting":
                    if value not in _LIFTINGS:
                        raise KBError(f"unknown lifting {value!r}", key.line, key.column)
                    doc.lifting = value
                else:
                    raise KBError(f"unknown setting key {key.text!r}", key.line, key.column)
                i = j
        else:
            raise KBError(f"unknown directive {head.text!r}", head.line, head.column)
    _validate(doc)
    return doc


def _validate(doc: KnowledgeBaseDoc) -> None:
    declared = set(doc.atoms)

    def check_atoms(f: Formula, line_hint: str) -> None:
        missing = atoms(f) - declared
        if missing:
            raise KBError(f"undeclared atom {sorted(missing)[0]} in {line_hint}")

    for f, _ in doc.premises:
        check_atoms(f, f"premise {render(f)}")
    for f, _ in doc.assumptions:
        check_atoms(f, f"assumption {render(f)}")
    for target, contraries in doc.contraries.items():
        check_atoms(target, f"contrary of {render(target)}")
        for c in contraries:
            check_atoms(c, f"contrary {render(c)}")
    for r in doc.strict_rules + doc.defeasible_rules:
        for f in r.body + (r.head,):
            missing = atoms(f) - declared
            if missing:
                raise KBError(f"undeclared atom {sorted(missing)[0]} in rule {r.id}")

    if doc.core in ("cl", "cl-top", "cl-con", "mcs-cap", "mcs-cup"):
        if doc.assumptions:
            raise KBError("assumptions need an aba core")
        if doc.strict_rules or doc.defeasible_rules:
            raise KBError(f"rules need an aba or aspic core, not {doc.core}")
        if doc.attack == "native" and not doc.contraries:
            raise KBError("attack=native needs contrary declarations")
    if doc.core == "aba":
        if not doc.assumptions:
            raise KBError("an aba core needs assumption declarations")
        if doc.premises:
            raise KBError("aba cores take assumptions, not premises")
        if doc.defeasible_rules:
            raise KBError("defeasible rules need an aspic core")
    if doc.core == "aspic":
        if doc.assumptions:
            raise KBError("assumptions need an aba core")
    if doc.lifting != "none":
        if doc.lifting == "weakest-link" and doc.core != "aspic":
            raise KBError("weakest-link lifting needs an aspic core")
        if doc.lifting == "max-aba" and doc.core != "aba":
            raise KBError("max-aba lifting needs an aba core")
    else:
        carried = [v for _, v in doc.premises + doc.assumptions if v is not None]
        carried += [r.value for r in doc.defeasible_rules if r.value is not None]
        if carried:
            doc.warnings.append(
                "priorities are declared but lifting=none ignores them"
            )


# ---------------------------------------------------------------------------
# Setting assembly


@dataclass
class LoadedKB:
    doc: KnowledgeBaseDoc
    setting: Setting
    premises: frozenset[Formula]
    priorities: Optional[PriorityAssignment]
    lifting: Optional[str]


def _contrariness_for(doc: KnowledgeBaseDoc) -> Contrariness:
    if doc.attack != "native":
        kind, _ = ATTACK_RULES[doc.attack]
        return Contrariness(kind)
    if doc.contraries:
        table = {k: frozenset(v) for k, v in doc.contraries.items()}
        return Contrariness("explicit", table=table)
    return Contrariness("neg-canonical")


def load_kb(doc: KnowledgeBaseDoc) -> LoadedKB:
    """Build the setting, premise set and priorities a document determines."""
    contr = _contrariness_for(doc)
    points = AttackPoints("id" if doc.attack == "native" else ATTACK_RULES[doc.attack][1])
    pi = PriorityAssignment()
    premise_formulas = frozenset(f for f, _ in doc.premises)
    for f, v in doc.premises + doc.assumptions:
        if v is not None:
            pi.pi[f] = v
    for r in doc.defeasible_rules:
        if r.value is not None:
            pi.rule_pi[r.id] = r.value

    if doc.core in ("cl", "cl-top", "mcs-cap", "mcs-cup", "cl-con"):
        if doc.core == "cl":
            core = CLCore()
        elif doc.core == "cl-top":
            core = CLTopCore()
        elif doc.core == "mcs-cap":
            core = MCSCore(universal=True)
        elif doc.core == "mcs-cup":
            core = MCSCore(universal=False)
        else:
            core = restrict_consistent(CLCore(), contr)
        premises = premise_formulas
    elif doc.core == "aba":
        tracked = doc.mode == "dagger"
        core = ABARulesCore(
            tuple(doc.strict_rules),
            frozenset(f for f, _ in doc.assumptions),
            tracked=tracked,
        )
        premises = frozenset(f for f, _ in doc.assumptions)
        if tracked:
            premises |= frozenset(r.lit() for r in doc.strict_rules)
    else:  # aspic
        core = ASPICCore(
            tuple(doc.strict_rules),
            tuple(doc.defeasible_rules),
            premise_formulas,
            mode=doc.mode,
        )
        premises = core.setting_premises()

    if contr.kind in ("entail-neg", "equiv-neg"):
        contr = contr.with_core(core)
    setting = Setting(core, contr, points, attack_rule=doc.attack)
    lifting_map = {
        "min": "min-support",
        "max": "max-support",
        "weakest-link": "weakest-link",
        "max-aba": "max-aba",
    }
    lifting = lifting_map.get(doc.lifting)
    return LoadedKB(doc, setting, premises, pi if lifting else None, lifting)


def load_kb_text(text: str) -> LoadedKB:
    return load_kb(parse_kb(text))
