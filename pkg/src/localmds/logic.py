"""logic — first-order formulas over ordered graphs.

Formulas are immutable trees over the atoms ``x = y``, ``x < y`` (id order)
and ``E(x, y)``.  They are written as S-expressions::

    (not (exists (x1 x2) (forall y (implies (E x y) (or (E y x1) (E y x2))))))

Evaluation is inductive with memoisation of closed subresults.  The default
planner adds three rewrites that never change the truth value:

* a quantifier guarded by an adjacency or equality atom only ranges over the
  matching neighborhood;
* ``exists x1..xk forall y (G(y) -> D(x1,y) or ... or D(xk,y))`` with the
  disjuncts renamings of one template is decided as a set-cover problem;
* ``exists z1..zm (pairwise distinct and P(z1) and ... and P(zm))`` is decided
  by counting the witnesses of P.

``plan=False`` switches all three off.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Union

from localmds.exceptions import FormulaError, GraphError
from localmds.graph import Graph


# ---------------------------------------------------------------------------
# Syntax
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Less:
    left: str
    right: str


@dataclass(frozen=True)
class Edge:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Or:
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies:
    premise: Formula
    conclusion: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


@dataclass(frozen=True)
class ForAll:
    var: str
    body: Formula


Formula = Union[Eq, Less, Edge, Not, And, Or, Implies, Exists, ForAll]
Atom = (Eq, Less, Edge)


def conj(*parts: Formula) -> And:
    return And(tuple(parts))


def disj(*parts: Formula) -> Or:
    return Or(tuple(parts))


def exists(variables: Iterable[str], body: Formula) -> Formula:
    for var in reversed(list(variables)):
        body = Exists(var, body)
    return body


def forall(variables: Iterable[str], body: Formula) -> Formula:
    for var in reversed(list(variables)):
        body = ForAll(var, body)
    return body


def free_variables(phi: Formula) -> frozenset[str]:
    """Free variables by the usual induction."""
    if isinstance(phi, Atom):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Not):
        return free_variables(phi.body)
    if isinstance(phi, (And, Or)):
        out: frozenset[str] = frozenset()
        for part in phi.parts:
            out |= free_variables(part)
        return out
    if isinstance(phi, Implies):
        return free_variables(phi.premise) | free_variables(phi.conclusion)
    return free_variables(phi.body) - {phi.var}


def substitute(phi: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename free occurrences of variables (no capture checks)."""
    if not mapping:
        return phi
    if isinstance(phi, Atom):
        return type(phi)(mapping.get(phi.left, phi.left), mapping.get(phi.right, phi.right))
    if isinstance(phi, Not):
        return Not(substitute(phi.body, mapping))
    if isinstance(phi, (And, Or)):
        return type(phi)(tuple(substitute(p, mapping) for p in phi.parts))
    if isinstance(phi, Implies):
        return Implies(substitute(phi.premise, mapping), substitute(phi.conclusion, mapping))
    inner = {k: v for k, v in mapping.items() if k != phi.var}
    return type(phi)(phi.var, substitute(phi.body, inner))


# -- S-expressions ------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_BINARY = {"=": Eq, "<": Less, "E": Edge, "edge": Edge}
_NARY = {"and": And, "or": Or}
_QUANT = {"exists": Exists, "forall": ForAll}
_NAMES = {Eq: "=", Less: "<", Edge: "E", And: "and", Or: "or", Exists: "exists", ForAll: "forall"}


def _read(tokens: list[str], pos: int) -> tuple[Union[str, list], int]:
    if pos >= len(tokens):
        raise FormulaError("formula_parse", detail="unexpected end of input")
    tok = tokens[pos]
    if tok == ")":
        raise FormulaError("formula_parse", detail=f"unexpected ')' at token {pos}")
    if tok != "(":
        return tok, pos + 1
    items: list = []
    pos += 1
    while pos < len(tokens) and tokens[pos] != ")":
        item, pos = _read(tokens, pos)
        items.append(item)
    if pos >= len(tokens):
        raise FormulaError("formula_parse", detail="missing ')'")
    return items, pos + 1


def _build(sexp: Union[str, list]) -> Formula:
    if isinstance(sexp, str) or not sexp or not isinstance(sexp[0], str):
        raise FormulaError("formula_parse", detail=f"expected an operator form, got {sexp!r}")
    head, args = sexp[0], sexp[1:]
    if head in _BINARY:
        if len(args) != 2 or not all(isinstance(a, str) for a in args):
            raise FormulaError("formula_parse", detail=f"'{head}' takes two variables")
        return _BINARY[head](args[0], args[1])
    if head == "not":
        if len(args) != 1:
            raise FormulaError("formula_parse", detail="'not' takes one formula")
        return Not(_build(args[0]))
    if head in _NARY:
        return _NARY[head](tuple(_build(a) for a in args))
    if head in ("implies", "->"):
        if len(args) != 2:
            raise FormulaError("formula_parse", detail="'implies' takes two formulas")
        return Implies(_build(args[0]), _build(args[1]))
    if head in _QUANT:
        if len(args) != 2:
            raise FormulaError("formula_parse", detail=f"'{head}' takes variables and a body")
        variables = [args[0]] if isinstance(args[0], str) else args[0]
        if not variables or not all(isinstance(v, str) for v in variables):
            raise FormulaError("formula_parse", detail=f"bad variable list {args[0]!r}")
        body = _build(args[1])
        for var in reversed(variables):
            body = _QUANT[head](var, body)
        return body
    raise FormulaError("formula_parse", detail=f"unknown operator '{head}'")


def parse_formula(text: str) -> Formula:
    """Parse an S-expression formula.

    Raises:
        FormulaError: On unbalanced parentheses, unknown operators or
            trailing input.
    """
    tokens = _TOKEN.findall(text)
    sexp, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise FormulaError("formula_parse", detail=f"trailing input at token {pos}")
    return _build(sexp)


def format_formula(phi: Formula) -> str:
    """Render a formula as an S-expression; runs of one quantifier share a list."""
    if isinstance(phi, Atom):
        return f"({_NAMES[type(phi)]} {phi.left} {phi.right})"
    if isinstance(phi, Not):
        return f"(not {format_formula(phi.body)})"
    if isinstance(phi, (And, Or)):
        inner = " ".join(format_formula(p) for p in phi.parts)
        return f"({_NAMES[type(phi)]}{' ' if inner else ''}{inner})"
    if isinstance(phi, Implies):
        return f"(implies {format_formula(phi.premise)} {format_formula(phi.conclusion)})"
    kind = type(phi)
    variables = []
    body: Formula = phi
    while isinstance(body, kind):
        variables.append(body.var)
        body = body.body
    head = variables[0] if len(variables) == 1 else "(" + " ".join(variables) + ")"
    return f"({_NAMES[kind]} {head} {format_formula(body)})"


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _CoverPlan:
    variables: tuple[str, ...]
    y: str
    guard: Formula
    template: Formula
    slot: str


@dataclass(frozen=True)
class _CountPlan:
    count: int
    template: Formula
    slot: str


def _block(phi: Exists) -> tuple[list[str], Formula]:
    variables: list[str] = []
    body: Formula = phi
    while isinstance(body, Exists):
        variables.append(body.var)
        body = body.body
    return variables, body


class _Evaluator:
    """Memoising evaluator bound to one graph."""

    def __init__(self, g: Graph, plan: bool) -> None:
        self.g = g
        self.plan = plan
        self.adj = g.adjacency()
        self._free: dict[int, frozenset[str]] = {}
        self._plans: dict[int, object] = {}
        self._memo: dict[tuple[int, tuple], bool] = {}
        self._keep: list[Formula] = []

    def free(self, phi: Formula) -> frozenset[str]:
        key = id(phi)
        if key not in self._free:
            self._free[key] = free_variables(phi)
            self._keep.append(phi)
        return self._free[key]

    def _value(self, env: Mapping[str, int], var: str) -> int:
        if var not in env:
            raise FormulaError("unbound_variable", variable=var)
        return env[var]

    def eval(self, phi: Formula, env: Mapping[str, int]) -> bool:
        if isinstance(phi, Atom):
            a, b = self._value(env, phi.left), self._value(env, phi.right)
            if isinstance(phi, Eq):
                return a == b
            if isinstance(phi, Less):
                return a < b
            return b in self.adj.get(a, ())
        if isinstance(phi, Not):
            return not self.eval(phi.body, env)
        if isinstance(phi, And):
            return all(self.eval(p, env) for p in phi.parts)
        if isinstance(phi, Or):
            return any(self.eval(p, env) for p in phi.parts)
        if isinstance(phi, Implies):
            return not self.eval(phi.premise, env) or self.eval(phi.conclusion, env)

        free = self.free(phi)
        key = (id(phi), tuple(sorted((v, self._value(env, v)) for v in free)))
        if key not in self._memo:
            self._memo[key] = self._quantifier(phi, env)
        return self._memo[key]

    # -- quantifiers -----------------------------------------------------------

    def _quantifier(self, phi: Union[Exists, ForAll], env: Mapping[str, int]) -> bool:
        if self.plan and isinstance(phi, Exists):
            plan = self._plan_for(phi)
            if isinstance(plan, _CoverPlan):
                return self._solve_cover(plan, env)
            if isinstance(plan, _CountPlan):
                return self._solve_count(plan, env)
        guard = None
        if self.plan:
            body = phi.body
            if isinstance(phi, Exists) and isinstance(body, And):
                guard = body
            elif isinstance(phi, ForAll) and isinstance(body, Implies):
                guard = body.premise
        domain = self._domain(phi.var, guard, env) if guard is not None else None
        values = self.g.vertices if domain is None else sorted(domain)
        local = dict(env)
        check = any if isinstance(phi, Exists) else all

        def holds(value: int) -> bool:
            local[phi.var] = value
            return self.eval(phi.body, local)

        return check(holds(value) for value in values)

    def _domain(self, var: str, guard: Formula, env: Mapping[str, int]) -> Optional[set[int]]:
        """Values of ``var`` outside of which ``guard`` is false, or None."""
        if isinstance(guard, And):
            found: Optional[set[int]] = None
            for part in guard.parts:
                dom = self._domain(var, part, env)
                if dom is not None:
                    found = dom if found is None else found & dom
            return found
        if isinstance(guard, (Eq, Edge)):
            other = self._partner(var, guard, env)
            if other is None:
                return None
            return {other} if isinstance(guard, Eq) else set(self.adj[other])
        if isinstance(guard, Or) and len(guard.parts) == 2:
            doms = [self._domain(var, p, env) for p in guard.parts]
            if all(d is not None for d in doms):
                return doms[0] | doms[1]
        return None

    def _partner(self, var: str, atom: Union[Eq, Edge], env: Mapping[str, int]) -> Optional[int]:
        if atom.left == var and atom.right != var and atom.right in env:
            other = atom.right
        elif atom.right == var and atom.left != var and atom.left in env:
            other = atom.left
        else:
            return None
        value = env[other]
        return value if value in self.adj else None

    # -- block plans -----------------------------------------------------------

    def _plan_for(self, phi: Exists) -> object:
        key = id(phi)
        if key not in self._plans:
            self._keep.append(phi)
            self._plans[key] = self._match_cover(phi) or self._match_count(phi)
        return self._plans[key]

    def _match_cover(self, phi: Exists) -> Optional[_CoverPlan]:
        variables, body = _block(phi)
        if not (isinstance(body, ForAll) and isinstance(body.body, Implies)):
            return None
        y, guard, conclusion = body.var, body.body.premise, body.body.conclusion
        if not isinstance(conclusion, Or) or len(conclusion.parts) != len(variables):
            return None
        if len(set(variables)) != len(variables) or y in variables:
            return None
        block = set(variables)
        if free_variables(guard) & block:
            return None
        template, slot = conclusion.parts[0], variables[0]
        for var, part in zip(variables, conclusion.parts):
            if free_variables(part) & block != {var}:
                return None
            if substitute(template, {slot: var}) != part:
                return None
        return _CoverPlan(tuple(variables), y, guard, template, slot)

    def _match_count(self, phi: Exists) -> Optional[_CountPlan]:
        variables, body = _block(phi)
        if len(variables) < 2 or len(set(variables)) != len(variables):
            return None
        if not isinstance(body, And):
            return None
        block = set(variables)
        wanted = {frozenset(p) for p in combinations(variables, 2)}
        distinct: set[frozenset[str]] = set()
        others: list[Formula] = []
        for part in body.parts:
            if (
                isinstance(part, Not)
                and isinstance(part.body, Eq)
                and {part.body.left, part.body.right} <= block
                and part.body.left != part.body.right
            ):
                distinct.add(frozenset((part.body.left, part.body.right)))
            else:
                others.append(part)
        if distinct != wanted or len(others) != len(variables):
            return None
        template, slot = others[0], variables[0]
        for var, part in zip(variables, others):
            if free_variables(part) & block != {var}:
                return None
            if substitute(template, {slot: var}) != part:
                return None
        return _CountPlan(len(variables), template, slot)

    def _solve_cover(self, plan: _CoverPlan, env: Mapping[str, int]) -> bool:
        if not self.g.vertices:
            return False
        local = dict(env)
        targets = []
        for b in self.g.vertices:
            local[plan.y] = b
            if self.eval(plan.guard, local):
                targets.append(b)
        sets: dict[int, frozenset[int]] = {}
        for a in self.g.vertices:
            local[plan.slot] = a
            covered = []
            for b in targets:
                local[plan.y] = b
                if self.eval(plan.template, local):
                    covered.append(b)
            if covered:
                sets[a] = frozenset(covered)
        return _cover_within(frozenset(targets), sets, len(plan.variables))

    def _solve_count(self, plan: _CountPlan, env: Mapping[str, int]) -> bool:
        local = dict(env)
        found = 0
        for b in self.g.vertices:
            local[plan.slot] = b
            if self.eval(plan.template, local):
                found += 1
                if found >= plan.count:
                    return True
        return False


def _cover_within(targets: frozenset[int], sets: Mapping[int, frozenset[int]], k: int) -> bool:
    """True iff at most k of the given sets cover ``targets``."""
    by_target: dict[int, list[int]] = {b: [] for b in targets}
    for a, covered in sets.items():
        for b in covered:
            by_target[b].append(a)
    failed: dict[frozenset[int], int] = {}

    def search(uncovered: frozenset[int], budget: int) -> bool:
        if not uncovered:
            return True
        if budget == 0 or failed.get(uncovered, -1) >= budget:
            return False
        pivot = min(uncovered, key=lambda b: (len(by_target[b]), b))
        for a in sorted(by_target[pivot]):
            if search(uncovered - sets[a], budget - 1):
                return True
        failed[uncovered] = budget
        return False

    return search(targets, k)


def eval_formula(
    g: Graph, phi: Formula, env: Optional[Mapping[str, int]] = None, plan: bool = True
) -> bool:
    """Decide G |= phi under ``env``.

    Raises:
        FormulaError: If a free variable of phi is unbound.
        GraphError: If env maps a variable to a vertex outside g.
    """
    env = dict(env or {})
    for var, value in env.items():
        if value not in g:
            raise GraphError("unknown_vertex", vertex=value)
    missing = sorted(free_variables(phi) - env.keys())
    if missing:
        raise FormulaError("unbound_variable", variable=missing[0])
    return _Evaluator(g, plan).eval(phi, env)


def defined_set(g: Graph, phi: Formula, plan: bool = True) -> frozenset[int]:
    """phi(G) = {v : G |= phi(v)} for a formula with exactly one free variable.

    Raises:
        FormulaError: If phi does not have exactly one free variable.
    """
    free = free_variables(phi)
    if len(free) != 1:
        raise FormulaError("free_variable_count", found=len(free))
    (var,) = free
    evaluator = _Evaluator(g, plan)
    return frozenset(v for v in g.vertices if evaluator.eval(phi, {var: v}))


# ---------------------------------------------------------------------------
# The dominating-set formulas
# ---------------------------------------------------------------------------


def _slots(c: Union[int, Fraction]) -> int:
    if c < 1:
        raise FormulaError("formula_parse", detail=f"c must be >= 1, got {c}")
    return math.floor(2 * Fraction(c))


def build_phi_D(c: Union[int, Fraction], var: str = "x") -> Formula:
    """phi_D(var): the neighborhood of var admits no cover by floor(2c) other vertices.

    A slot assigned var itself covers nothing, so the block expresses covers
    of size at most floor(2c).
    """
    k = _slots(c)
    slots = [f"cov{i}" for i in range(1, k + 1)]
    y = "cov_y"
    covered = disj(
        *(conj(Not(Eq(s, var)), disj(Eq(y, s), Edge(y, s))) for s in slots)
    )
    return Not(exists(slots, ForAll(y, Implies(Edge(var, y), covered))))


def _member(z: str, y: str) -> Formula:
    """z in N[y]."""
    return disj(Eq(z, y), Edge(z, y))


def _undominated(z: str, c: Union[int, Fraction]) -> Formula:
    """z outside N[D]: not in D and no neighbor in D."""
    w = "und_w"
    return conj(Not(build_phi_D(c, z)), ForAll(w, Implies(build_phi_D(c, w), Not(Edge(z, w)))))


def residual_threshold(c: Union[int, Fraction], t: int) -> int:
    """Residual degree above which a vertex is preferred as dominator: 4c + 2c(t-1)."""
    k = Fraction(c)
    return math.floor(4 * k + 2 * k * (t - 1))


def _big(u: str, c: Union[int, Fraction], t: int) -> Formula:
    """N[u] holds more than the threshold of undominated vertices."""
    count = residual_threshold(c, t) + 1
    zs = [f"res{i}" for i in range(1, count + 1)]
    distinct = [Not(Eq(a, b)) for a, b in combinations(zs, 2)]
    members = [conj(_member(z, u), _undominated(z, c)) for z in zs]
    return exists(zs, And(tuple(distinct + members)))


def build_psi_Dprime(c: Union[int, Fraction], t: int, var: str = "x") -> Formula:
    """psi_D'(var): some undominated y elects var.

    y elects the <-least member of N[y] whose residual degree exceeds the
    threshold, or the <-least member of N[y] when no member exceeds it.
    """
    if t < 3:
        raise FormulaError("formula_parse", detail=f"t must be >= 3, got {t}")
    y, u = "elect_y", "elect_u"
    big_x = _big(var, c, t)
    big_u = _big(u, c, t)
    heavy = conj(big_x, ForAll(u, Implies(conj(_member(u, y), Less(u, var)), Not(big_u))))
    fallback = conj(
        ForAll(u, Implies(_member(u, y), Not(big_u))),
        ForAll(u, Implies(_member(u, y), Not(Less(u, var)))),
    )
    return Exists(y, conj(_member(var, y), _undominated(y, c), disj(heavy, fallback)))
