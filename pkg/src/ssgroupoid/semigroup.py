"""The inverse semigroup of triples ``(α, g, β)`` acting on infinite paths by ``βμ ↦ α(g·μ)``."""

from __future__ import annotations

from dataclasses import dataclass

from .action import DEFAULT_BUDGET, ActionError, Budget, Outcome, SelfSimilarAction
from .graph import Path
from .words import Word


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()


@dataclass(frozen=True, order=True)
class Triple:
    top: Path
    word: Word
    bottom: Path

    def __post_init__(self):
        if self.word.d != self.bottom.end or self.word.t != self.top.end:
            raise ActionError(
                f"triple ({self.top}, {self.word}, {self.bottom}): word must go from "
                f"{self.bottom.end} to {self.top.end}"
            )

    @classmethod
    def identity_on(cls, p: Path) -> "Triple":
        return cls(p, Word.unit(p.end), p)

    def is_idempotent(self) -> bool:
        return self.top == self.bottom and self.word.is_unit()

    def __str__(self) -> str:
        return f"({self.top}, {self.word}, {self.bottom})"


def multiply(action: SelfSimilarAction, x, y):
    """Product of two triples (or ``ZERO``); ``y`` acts first."""
    if x is ZERO or y is ZERO:
        return ZERO
    alpha, g, beta = x.top, x.word, x.bottom
    gamma, h, zeta = y.top, y.word, y.bottom
    if gamma.is_prefix_of(beta):
        mu = beta.suffix_after(gamma)
        nu = action.act_path(h.inverse(), mu)
        k = action.restrict_path(h, nu)
        return Triple(alpha, g * k, zeta + nu)
    if beta.is_prefix_of(gamma):
        mu = gamma.suffix_after(beta)
        img, res = action.act_restrict_path(g, mu)
        return Triple(alpha + img, res * h, zeta)
    return ZERO


def invert(x):
    if x is ZERO:
        return ZERO
    return Triple(x.bottom, x.word.inverse(), x.top)


def extend(action: SelfSimilarAction, x: Triple, gamma: Path) -> Triple:
    """Same germs, restricted to the smaller cylinder ``Z(βγ)``."""
    if gamma.root != x.bottom.end:
        raise ActionError(f"cannot extend {x} by {gamma}: r({gamma}) != s({x.bottom})")
    img, res = action.act_restrict_path(x.word, gamma)
    return Triple(x.top + img, res, x.bottom + gamma)


def cocycle_rho(x) -> int:
    if x is ZERO:
        raise ActionError("ZERO has no degree")
    return len(x.top) - len(x.bottom)


def kernel_label(x: Triple) -> Word:
    if len(x.top) != len(x.bottom):
        raise ActionError(f"{x} is not in the degree-zero layer")
    return x.word


def apply_triple(action: SelfSimilarAction, x, xi: Path) -> Path | None:
    """Image of a finite path under the partial map of ``x``; ``None`` off its domain."""
    if x is ZERO or not x.bottom.is_prefix_of(xi):
        return None
    return x.top + action.act_path(x.word, xi.suffix_after(x.bottom))


@dataclass(frozen=True)
class GermVerdict:
    outcome: Outcome
    cylinder: Path | None = None
    witness: Path | None = None
    depth: int | None = None


def germ_equal(action: SelfSimilarAction, x: Triple, y: Triple, depth: int = 6, budget: Budget = DEFAULT_BUDGET) -> GermVerdict:
    """Compare the germs of two triples over the intersection of their domains.

    Both are extended to the common bottom path, then compared cylinder by
    cylinder: equal tops with equal words settle a cylinder, disagreeing
    images give a witness, anything else is refined one level further.
    """
    if x.bottom.is_prefix_of(y.bottom):
        x = extend(action, x, y.bottom.suffix_after(x.bottom))
    elif y.bottom.is_prefix_of(x.bottom):
        y = extend(action, y, x.bottom.suffix_after(y.bottom))
    else:
        return GermVerdict(Outcome.NOT_EQUAL)
    common = x.bottom
    graph = action.graph
    open_ = [Path.vertex(common.end)]
    for level in range(depth + 1):
        pending = []
        for gamma in open_:
            ex, ey = extend(action, x, gamma), extend(action, y, gamma)
            if ex.top == ey.top:
                v = action.element_equal(ex.word, ey.word, budget)
                if v.equal:
                    continue
                if v.not_equal:
                    return GermVerdict(Outcome.NOT_EQUAL, common, ex.bottom + v.witness if v.witness else ex.bottom, level)
                pending.append(gamma)
            elif not ex.top.comparable(ey.top):
                return GermVerdict(Outcome.NOT_EQUAL, common, ex.bottom, level)
            else:
                pending.append(gamma)
        if not pending:
            return GermVerdict(Outcome.EQUAL, common, None, level)
        open_ = [c for g in pending for c in graph.children(g)]
    return GermVerdict(Outcome.UNKNOWN, common, None, depth)
