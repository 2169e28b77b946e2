"""Evaluator for the dialect: environments, step budgets, display capture,
and the TRY mechanism with self-delimiting binary data.

The evaluator is total over its value domain: every run either produces a
value, runs out of time, or runs out of data.  That is what makes blind
enumeration of programs meaningful, so the conventions for ill-typed
applications all yield values instead of aborting:

* applying anything that is not a three-element ``(lambda (params) body)``
  form yields nil; missing arguments read as nil and extras are ignored;
* car/cdr of an atom give the atom back; cons and append treat a non-list
  tail as nil;
* arithmetic treats non-numbers as 0, and subtraction floors at 0;
* only the atom ``false`` is false to ``if``.

Functions close over their defining environment, and a closure *is* the
S-expression ``(lambda (params) body)`` - :class:`Closure` subclasses tuple -
so function values print, compare, and hash like any other value.  A plain
lambda list arriving as data is applied over the global environment.
``eval`` likewise evaluates in the session's global environment (primitives
plus top-level defines, no local bindings), which keeps programs fed to the
universal computer independent of where they are evaluated.
"""

from __future__ import annotations

import sys

from .bits import BitStream, OutOfData, bits_to_sexpr
from .sexpr import (
    NIL,
    QUOTE,
    PRIMITIVE_ARITY,
    ArityTable,
    SExpr,
    SExprSyntaxError,
    iter_forms,
    read_exp_from_stream,
    size_chars,
    to_bits,
)

# Deep non-tail recursion in evaluated programs maps onto the host stack;
# tail calls (if branches, let and lambda bodies, eval) do not.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))

TRUE = "true"
FALSE = "false"
SUCCESS = "success"
FAILURE = "failure"
OUT_OF_TIME = "out-of-time"
OUT_OF_DATA = "out-of-data"
NO_TIME_LIMIT = "no-time-limit"


class OutOfTime(Exception):
    """Raised when the step budget is exhausted."""


class Budget:
    """A step allowance: one step per non-atomic expression evaluated.

    ``limit`` is None for an unlimited budget, which never counts.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    @property
    def remaining(self) -> int | None:
        return None if self.limit is None else self.limit - self.used

    def charge(self) -> None:
        if self.limit is not None:
            if self.used >= self.limit:
                raise OutOfTime()
            self.used += 1

    def spend(self, steps: int) -> None:
        if self.limit is not None:
            self.used += steps


class Env:
    """A frame of bindings with a link to the frame beneath it."""

    __slots__ = ("bindings", "parent")

    def __init__(self, bindings: dict[str, SExpr], parent: "Env | None" = None):
        self.bindings = bindings
        self.parent = parent


class Closure(tuple):
    """A function value: the lambda form itself, plus where it was made.

    Being a tuple, it is structurally the S-expression (lambda params body);
    only application looks at the attached environment.
    """

    def __new__(cls, form: tuple, env: Env):
        self = super().__new__(cls, form)
        self.env = env
        return self


class _Ctx:
    """Everything one evaluation threads along besides the environment."""

    __slots__ = ("budget", "stream", "captures", "genv", "table", "emit")

    def __init__(self, budget, stream, captures, genv, table, emit=None):
        self.budget = budget
        self.stream = stream
        self.captures = captures
        self.genv = genv
        self.table = table
        self.emit = emit


def _arg(e: tuple, i: int) -> SExpr:
    return e[i] if i < len(e) else NIL


def _nat(v: SExpr) -> int:
    return v if type(v) is int else 0


def _coerce_data(v: SExpr) -> str:
    if not isinstance(v, tuple):
        return ""
    return "".join("1" if b == 1 and b is not True else "0" for b in v)


def evaluate(e: SExpr, env: Env, ctx: _Ctx) -> SExpr:
    while True:
        if type(e) is int:
            return e
        if type(e) is str:
            scope = env
            while scope is not None:
                if e in scope.bindings:
                    return scope.bindings[e]
                scope = scope.parent
            return e
        if e == ():
            return NIL

        ctx.budget.charge()
        head = e[0]
        if type(head) is str and head in PRIMITIVE_ARITY:
            h = head
            if h == QUOTE:
                return _arg(e, 1)
            if h == "if":
                cond = evaluate(_arg(e, 1), env, ctx)
                e = _arg(e, 2) if cond != FALSE else _arg(e, 3)
                continue
            if h == "car":
                v = evaluate(_arg(e, 1), env, ctx)
                return v[0] if isinstance(v, tuple) and v else v
            if h == "cdr":
                v = evaluate(_arg(e, 1), env, ctx)
                return v[1:] if isinstance(v, tuple) and v else v
            if h == "cadr":
                v = evaluate(_arg(e, 1), env, ctx)
                v = v[1:] if isinstance(v, tuple) and v else v
                return v[0] if isinstance(v, tuple) and v else v
            if h == "cons":
                a = evaluate(_arg(e, 1), env, ctx)
                d = evaluate(_arg(e, 2), env, ctx)
                return (a, *d) if isinstance(d, tuple) else (a,)
            if h == "append":
                a = evaluate(_arg(e, 1), env, ctx)
                b = evaluate(_arg(e, 2), env, ctx)
                la = a if isinstance(a, tuple) else ()
                lb = b if isinstance(b, tuple) else ()
                return la + lb
            if h == "atom":
                v = evaluate(_arg(e, 1), env, ctx)
                return FALSE if isinstance(v, tuple) and v else TRUE
            if h == "=":
                a = evaluate(_arg(e, 1), env, ctx)
                b = evaluate(_arg(e, 2), env, ctx)
                return TRUE if a == b else FALSE
            if h == "+":
                a = evaluate(_arg(e, 1), env, ctx)
                b = evaluate(_arg(e, 2), env, ctx)
                return _nat(a) + _nat(b)
            if h == "-":
                a = evaluate(_arg(e, 1), env, ctx)
                b = evaluate(_arg(e, 2), env, ctx)
                return max(0, _nat(a) - _nat(b))
            if h == "*":
                a = evaluate(_arg(e, 1), env, ctx)
                b = evaluate(_arg(e, 2), env, ctx)
                return _nat(a) * _nat(b)
            if h == "<":
                a = evaluate(_arg(e, 1), env, ctx)
                b = evaluate(_arg(e, 2), env, ctx)
                return TRUE if _nat(a) < _nat(b) else FALSE
            if h == "size":
                return size_chars(evaluate(_arg(e, 1), env, ctx))
            if h == "bits":
                return bits_to_sexpr(to_bits(evaluate(_arg(e, 1), env, ctx)))
            if h == "display":
                v = evaluate(_arg(e, 1), env, ctx)
                if ctx.captures is not None:
                    ctx.captures.append(v)
                elif ctx.emit is not None:
                    ctx.emit(v)
                return v
            if h == "lambda":
                return e if isinstance(e, Closure) else Closure(e, env)
            if h == "let":
                name = _arg(e, 1)
                value = evaluate(_arg(e, 2), env, ctx)
                if isinstance(name, str):
                    env = Env({name: value}, env)
                e = _arg(e, 3)
                continue
            if h == "define":
                # Bindings happen at the top level; in expression position a
                # define form is inert and evaluates to the name it mentions.
                sig = _arg(e, 1)
                if isinstance(sig, tuple) and sig and isinstance(sig[0], str):
                    return sig[0]
                return sig if isinstance(sig, str) else NIL
            if h == "eval":
                e = evaluate(_arg(e, 1), env, ctx)
                env = ctx.genv
                continue
            if h == "read-bit":
                if ctx.stream is None:
                    raise OutOfData("no binary data in this context")
                return int(ctx.stream.read(1))
            if h == "read-exp":
                if ctx.stream is None:
                    raise OutOfData("no binary data in this context")
                try:
                    return read_exp_from_stream(ctx.stream, ctx.table)
                except SExprSyntaxError as exc:
                    # Inside a computation, undecodable data is just bad
                    # data; the outcome vocabulary stays closed.
                    raise OutOfData(str(exc)) from exc
            if h == "try":
                limit = evaluate(_arg(e, 1), env, ctx)
                tried = evaluate(_arg(e, 2), env, ctx)
                data = evaluate(_arg(e, 3), env, ctx)
                return _try(tried, limit, _coerce_data(data), ctx)
            if h == "run-utm-on":
                e = ("cadr", ("try", NO_TIME_LIMIT, (QUOTE, ("eval", ("read-exp",))), _arg(e, 1)))
                continue
            raise AssertionError(f"unhandled primitive {h}")

        f = evaluate(head, env, ctx)
        if isinstance(f, tuple) and len(f) == 3 and f[0] == "lambda":
            params = f[1] if isinstance(f[1], tuple) else ()
            frame = {}
            for i, p in enumerate(params):
                v = evaluate(_arg(e, 1 + i), env, ctx)
                if isinstance(p, str):
                    frame[p] = v
            env = Env(frame, f.env if isinstance(f, Closure) else ctx.genv)
            e = f[2]
            continue
        return NIL


def _try(expr: SExpr, limit: SExpr, data: str, ctx: _Ctx) -> SExpr:
    """Run *expr* in a fresh global environment over its own data stream.

    Returns the outcome triple.  Out-of-time is a value of this TRY only
    when the declared limit itself was hit; exhausting the enclosing budget
    propagates, which is what keeps success budget-monotone.
    """
    if type(limit) is int:
        declared = limit
    elif limit == NO_TIME_LIMIT:
        declared = None
    else:
        declared = 0

    parent = ctx.budget
    if declared is None:
        inner_budget = parent
    elif parent.limit is None:
        inner_budget = Budget(declared)
    else:
        inner_budget = Budget(min(declared, parent.remaining))

    captures: list[SExpr] = []
    inner = _Ctx(inner_budget, BitStream(data), captures, ctx.genv, ctx.table)
    try:
        value = evaluate(expr, ctx.genv, inner)
    except OutOfTime:
        if inner_budget is parent:
            raise
        parent.spend(inner_budget.used)
        if inner_budget.limit < declared:
            raise
        return (FAILURE, OUT_OF_TIME, tuple(captures))
    except RecursionError:
        # The host stack is a resource too; treat exhausting it as time.
        if inner_budget is not parent:
            parent.spend(inner_budget.used)
        return (FAILURE, OUT_OF_TIME, tuple(captures))
    except OutOfData:
        if inner_budget is not parent:
            parent.spend(inner_budget.used)
        return (FAILURE, OUT_OF_DATA, tuple(captures))
    if inner_budget is not parent:
        parent.spend(inner_budget.used)
    return (SUCCESS, value, tuple(captures))


class Session:
    """A top-level environment: primitives plus accumulated defines."""

    def __init__(self, emit=None):
        self.genv = Env({})
        self.table = ArityTable()
        self.emit = emit

    def _ctx(self, budget: Budget, stream=None, captures=None) -> _Ctx:
        return _Ctx(budget, stream, captures, self.genv, self.table, self.emit)

    def evaluate(self, e: SExpr, budget: int | None = None) -> SExpr:
        return evaluate(e, self.genv, self._ctx(Budget(budget)))

    def try_expression(self, e: SExpr, limit: int | None, data: str) -> tuple:
        """Host-side TRY: returns the (status payload captures) triple."""
        ctx = self._ctx(Budget(None))
        return _try(e, limit if limit is not None else NO_TIME_LIMIT, data, ctx)

    def define(self, form: tuple) -> str | None:
        """Install a top-level define; returns the bound name."""
        sig = _arg(form, 1)
        body = _arg(form, 2)
        if isinstance(sig, tuple) and sig and isinstance(sig[0], str):
            name = sig[0]
            params = tuple(p for p in sig[1:])
            self.genv.bindings[name] = ("lambda", params, body)
            self.table.define(name, len(params))
            return name
        if isinstance(sig, str):
            self.genv.bindings[sig] = self.evaluate(body)
            return sig
        return None

    def run_source(self, text: str) -> list[tuple[str, SExpr]]:
        """Evaluate top-level forms in order.

        Returns (kind, payload) pairs: ("define", name) for bindings,
        ("value", v) for results, ("error", atom) for a form that ran out
        of data at the top level.
        """
        results: list[tuple[str, SExpr]] = []
        for form in iter_forms(text, self.table):
            if isinstance(form, tuple) and form[:1] == ("define",):
                name = self.define(form)
                results.append(("define", name if name is not None else NIL))
                continue
            try:
                results.append(("value", self.evaluate(form)))
            except OutOfData:
                results.append(("error", OUT_OF_DATA))
            except RecursionError:
                results.append(("error", "stack-overflow"))
        return results


def run_source(text: str, emit=None) -> list[tuple[str, SExpr]]:
    return Session(emit=emit).run_source(text)
