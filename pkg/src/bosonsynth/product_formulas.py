"""Parametrized gate products: group commutators, higher-order commutator
recursions, Suzuki splittings, symmetrization, timeslicing and order fits.

The working object is a ParamUnitary: a map t -> unitary with a lazy gate
expansion and an exponential budget that is composed arithmetically, never by
materializing the sequence. Matrix evaluation memoizes per parameter value,
which keeps deep recursions cheap because the same few scaled parameters
recur throughout a tree.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .tensor_core import (
    TOL,
    HilbertLayout,
    Operator,
    ResourceExhaustedError,
    expm,
    is_hermitian,
    is_unitary,
    spectral_norm,
)

__all__ = [
    "Primitive",
    "FrameGate",
    "Invocation",
    "GateSequence",
    "ParamUnitary",
    "Factor",
    "compose",
    "primitive_unitary",
    "frame_conjugate",
    "rescale",
    "reverse_pu",
    "as_linear_term",
    "lie_product",
    "group_commutator",
    "bch",
    "bch_constants",
    "trotter",
    "suzuki_coefficient",
    "symmetrize",
    "sliced",
    "timeslice",
    "TimesliceResult",
    "fit_power_law",
    "PowerLawFit",
    "FitWindow",
    "sweep_errors",
]


class Primitive:
    """One directly exponentiable Hermitian generator.

    eval(t) = exp(i t H) through a cached eigendecomposition, so every
    evaluation is exactly unitary and costs one dense matmul pair.
    """

    def __init__(self, label: str, generator: Operator):
        if not is_hermitian(generator, 1e-12):
            raise ValueError(f"primitive {label!r} needs a Hermitian generator")
        self.label = label
        self.layout = generator.layout
        self.generator = generator
        self._evals, self._evecs = np.linalg.eigh(generator.mat)

    def unitary(self, t: float) -> np.ndarray:
        phases = np.exp(1j * t * self._evals)
        return (self._evecs * phases) @ self._evecs.conj().T

    def __repr__(self):
        return f"Primitive({self.label!r})"


class FrameGate:
    """Fixed unitary (basis change) that is recorded but not counted as an
    exponential."""

    def __init__(self, label: str, layout: HilbertLayout, mat: np.ndarray):
        op = Operator(layout, mat)
        if not is_unitary(op, 1e-10):
            raise ValueError(f"frame gate {label!r} must be unitary")
        self.label = label
        self.layout = layout
        self.mat = op.mat

    def dagger(self) -> "FrameGate":
        label = self.label[:-1] if self.label.endswith("'") else self.label + "'"
        return FrameGate(label, self.layout, self.mat.conj().T)

    def __repr__(self):
        return f"FrameGate({self.label!r})"


@dataclass(frozen=True)
class Invocation:
    """One gate in a sequence: a primitive at a parameter, or a frame gate."""

    gate: Primitive | FrameGate
    param: float | None = None

    @property
    def counted(self) -> bool:
        return isinstance(self.gate, Primitive)

    @property
    def label(self) -> str:
        return self.gate.label

    def matrix(self) -> np.ndarray:
        if isinstance(self.gate, Primitive):
            return self.gate.unitary(self.param)
        return self.gate.mat

    def inverted(self) -> "Invocation":
        if isinstance(self.gate, Primitive):
            return Invocation(self.gate, -self.param)
        return Invocation(self.gate.dagger(), None)


@dataclass
class GateSequence:
    """Fully expanded gate list in operator-product order: entry 0 is the
    leftmost factor and acts last."""

    layout: HilbertLayout
    invocations: list[Invocation] = field(default_factory=list)

    def __len__(self):
        return len(self.invocations)

    def __iter__(self):
        return iter(self.invocations)

    @property
    def total_cost(self) -> int:
        return sum(1 for inv in self.invocations if inv.counted)

    def cost_by_label(self) -> Counter:
        return Counter(inv.label for inv in self.invocations if inv.counted)

    def to_operator(self) -> Operator:
        mat = np.eye(self.layout.dim, dtype=np.complex128)
        for inv in self.invocations:
            mat = mat @ inv.matrix()
        return Operator(self.layout, mat)

    def inverted(self) -> "GateSequence":
        inverted = [inv.inverted() for inv in reversed(self.invocations)]
        return GateSequence(self.layout, inverted)

    def reversed_order(self) -> "GateSequence":
        return GateSequence(self.layout, list(reversed(self.invocations)))


@dataclass(frozen=True)
class Factor:
    """One constituent of a composite: a ParamUnitary evaluated at a
    transformed parameter, optionally as its adjoint."""

    pu: "ParamUnitary"
    transform: Callable[[float], float]
    invert: bool = False


class ParamUnitary:
    """A parametrized unitary family t -> U(t).

    target_power records the leading power of t in the generator the family
    approximates (1 for flows, k+1 for commutator targets); symmetrization
    dispatches on its parity.
    """

    def __init__(
        self,
        label: str,
        layout: HilbertLayout,
        eval_fn: Callable[[float], np.ndarray],
        expand_fn: Callable[[float], list[Invocation]],
        cost_counter: Counter,
        target_power: int = 1,
    ):
        self.label = label
        self.layout = layout
        self._eval_fn = eval_fn
        self._expand_fn = expand_fn
        self.cost_counter = Counter(cost_counter)
        self.target_power = target_power
        self._cache: dict[float, np.ndarray] = {}

    def eval(self, t: float) -> Operator:
        t = float(t)
        mat = self._cache.get(t)
        if mat is None:
            mat = self._eval_fn(t)
            self._cache[t] = mat
        return Operator(self.layout, mat)

    def __call__(self, t: float) -> Operator:
        return self.eval(t)

    def cost(self) -> int:
        return sum(self.cost_counter.values())

    def expand(self, t: float) -> GateSequence:
        if self.cost() > TOL.sequence_cap:
            raise ResourceExhaustedError(
                f"{self.label}: expansion of {self.cost()} exponentials "
                f"exceeds cap {TOL.sequence_cap}"
            )
        return GateSequence(self.layout, self._expand_fn(float(t)))

    def __repr__(self):
        return f"ParamUnitary({self.label!r}, cost={self.cost()})"


def primitive_unitary(prim: Primitive) -> ParamUnitary:
    return ParamUnitary(
        prim.label,
        prim.layout,
        prim.unitary,
        lambda t: [Invocation(prim, t)],
        Counter({prim.label: 1}),
    )


def compose(
    label: str,
    factors: Sequence[Factor],
    target_power: int = 1,
) -> ParamUnitary:
    """Product of factors in operator order: factors[0] is leftmost and acts
    last. Cost is the arithmetic sum of the factor budgets."""
    factors = list(factors)
    if not factors:
        raise ValueError("compose needs at least one factor")
    layout = factors[0].pu.layout
    for f in factors:
        if f.pu.layout != layout:
            raise ValueError("all factors must share one layout")

    def eval_fn(t: float) -> np.ndarray:
        mat = np.eye(layout.dim, dtype=np.complex128)
        for f in factors:
            sub = f.pu.eval(f.transform(t)).mat
            if f.invert:
                sub = sub.conj().T
            mat = mat @ sub
        return mat

    def expand_fn(t: float) -> list[Invocation]:
        out: list[Invocation] = []
        for f in factors:
            seq = f.pu.expand(f.transform(t))
            if f.invert:
                seq = seq.inverted()
            out.extend(seq.invocations)
        return out

    cost = Counter()
    for f in factors:
        cost.update(f.pu.cost_counter)
    return ParamUnitary(label, layout, eval_fn, expand_fn, cost, target_power)


def frame_conjugate(pu: ParamUnitary, frame: FrameGate) -> ParamUnitary:
    """F U(t) F^dag with the frame recorded but not counted."""
    if frame.layout != pu.layout:
        raise ValueError("frame and unitary layouts differ")
    fdag = frame.dagger()

    def eval_fn(t: float) -> np.ndarray:
        return frame.mat @ pu.eval(t).mat @ frame.mat.conj().T

    def expand_fn(t: float) -> list[Invocation]:
        inner = pu.expand(t).invocations
        return [Invocation(frame)] + inner + [Invocation(fdag)]

    return ParamUnitary(
        f"{frame.label}[{pu.label}]",
        pu.layout,
        eval_fn,
        expand_fn,
        pu.cost_counter,
        pu.target_power,
    )


def rescale(pu: ParamUnitary, c: float, label: str | None = None) -> ParamUnitary:
    """U(c t): a pure reparametrization, same budget."""
    return ParamUnitary(
        label or f"{pu.label}@{c:g}t",
        pu.layout,
        lambda t: pu.eval(c * t).mat,
        lambda t: pu.expand(c * t).invocations,
        pu.cost_counter,
        pu.target_power,
    )


def reverse_pu(pu: ParamUnitary) -> ParamUnitary:
    """Same invocations in reversed order. Evaluation goes through the
    expansion, so this is meant for desk-scale sequences."""

    def eval_fn(t: float) -> np.ndarray:
        return pu.expand(t).reversed_order().to_operator().mat

    return ParamUnitary(
        f"rev[{pu.label}]",
        pu.layout,
        eval_fn,
        lambda t: pu.expand(t).reversed_order().invocations,
        pu.cost_counter,
        pu.target_power,
    )


def as_linear_term(pu: ParamUnitary, label: str | None = None) -> ParamUnitary:
    """Reparametrize a power-m family into a flow: T(s) = U(s^(1/m)).

    Negative s is realized as the adjoint of the positive-s evaluation, which
    is what a splitting formula with negative coefficients needs.
    """
    m = pu.target_power
    if m < 2:
        raise ValueError("as_linear_term expects target_power >= 2")

    def root(s: float) -> float:
        return abs(s) ** (1.0 / m)

    def eval_fn(s: float) -> np.ndarray:
        mat = pu.eval(root(s)).mat
        return mat if s >= 0 else mat.conj().T

    def expand_fn(s: float) -> list[Invocation]:
        seq = pu.expand(root(s))
        return (seq if s >= 0 else seq.inverted()).invocations

    return ParamUnitary(
        label or f"lin[{pu.label}]",
        pu.layout,
        eval_fn,
        expand_fn,
        pu.cost_counter,
        target_power=1,
    )


def lie_product(label: str, terms: Sequence[ParamUnitary]) -> ParamUnitary:
    """First-order sequential product of term unitaries at the full
    parameter."""
    return compose(label, [Factor(term, lambda t: t) for term in terms])


def group_commutator(u_a: ParamUnitary, u_b: ParamUnitary, k: int = 1) -> ParamUnitary:
    """Q(t) = A(t) B(t^k) A(-t) B(-t^k), the bare four-exponential block.

    Approximates exp([K_A, K_B] t^(k+1)) to leading order, where K are the
    anti-Hermitian generators of the operands near t = 0.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("inner power k must be odd and positive")
    factors = [
        Factor(u_a, lambda t: t),
        Factor(u_b, lambda t, k=k: t**k),
        Factor(u_a, lambda t: -t),
        Factor(u_b, lambda t, k=k: -(t**k)),
    ]
    return compose(
        f"Q[{u_a.label},{u_b.label}]", factors, target_power=k + 1
    )


def bch_constants(p: int, k: int) -> tuple[float, float, float]:
    """(r, beta, gamma) for lifting a level-p commutator block by two orders."""
    e = (k + 1) / (2 * p + k + 1)
    rp = 2.0**e / (4.0 * (2.0 - 2.0**e))
    beta = (2.0 * rp) ** (1.0 / (k + 1))
    gamma = (0.25 + rp) ** (1.0 / (k + 1))
    return rp, beta, gamma


def bch(
    p: int,
    k: int,
    u_a: ParamUnitary,
    u_b: ParamUnitary,
    base: str | None = None,
) -> ParamUnitary:
    """Order-p commutator block: approximates exp([K_A, K_B] t^(k+1)) with
    error O(t^(2p+k)).

    base selects the level-1 block. "split" squares the bare block at
    t / 2^(1/(k+1)) (8 exponentials for k = 1, first-order accurate in the
    block sense); "lean" is the bare four-exponential block. The default is
    "split" for k = 1 and "lean" otherwise.
    """
    if p < 1:
        raise ValueError("order p must be >= 1")
    if k < 1 or k % 2 == 0:
        raise ValueError("inner power k must be odd and positive")
    if u_a.layout != u_b.layout:
        raise ValueError("operand layouts differ")
    if base is None:
        base = "split" if k == 1 else "lean"
    if base not in ("split", "lean"):
        raise ValueError(f"unknown base {base!r}")

    q = group_commutator(u_a, u_b, k)
    if base == "split":
        half = 2.0 ** (-1.0 / (k + 1))
        level = compose(
            f"Q2[{u_a.label},{u_b.label}]",
            [Factor(q, lambda t, h=half: h * t)] * 2,
            target_power=k + 1,
        )
    else:
        level = q

    for pp in range(1, p):
        _, beta, gamma = bch_constants(pp, k)
        factors = [
            Factor(level, lambda t, g=gamma: g * t),
            Factor(level, lambda t, g=gamma: -g * t),
            Factor(level, lambda t, b=beta: b * t, invert=True),
            Factor(level, lambda t, b=beta: -b * t, invert=True),
            Factor(level, lambda t, g=gamma: g * t),
            Factor(level, lambda t, g=gamma: -g * t),
        ]
        level = compose(
            f"bch{pp + 1}[{u_a.label},{u_b.label}]", factors, target_power=k + 1
        )
    return level


def suzuki_coefficient(k: int) -> float:
    """p_k in the order-2k recursion; 1 - 4 p_k is the negative middle step."""
    return 1.0 / (4.0 - 4.0 ** (1.0 / (2 * k - 1)))


def trotter(order: int, terms: Sequence[ParamUnitary], slices: int = 1) -> ParamUnitary:
    """Suzuki product formula of even order for a list of term flows.

    Each term is a flow s -> exp(s G_j); the result approximates
    exp(t sum_j G_j) with error O(t^(order+1)) per application. slices > 1
    applies the formula slices times at t/slices each.
    """
    if order < 2 or order % 2:
        raise ValueError("order must be even and >= 2")
    if not terms:
        raise ValueError("need at least one term")
    layout = terms[0].layout
    for term in terms:
        if term.layout != layout:
            raise ValueError("all terms must share one layout")
    if slices < 1:
        raise ValueError("slices must be >= 1")

    halves = [Factor(term, lambda t: 0.5 * t) for term in terms]
    level = compose("trotter2", halves + halves[::-1])
    k = 1
    while 2 * k < order:
        k += 1
        pk = suzuki_coefficient(k)
        factors = (
            [Factor(level, lambda t, c=pk: c * t)] * 2
            + [Factor(level, lambda t, c=1.0 - 4.0 * pk: c * t)]
            + [Factor(level, lambda t, c=pk: c * t)] * 2
        )
        level = compose(f"trotter{2 * k}", factors)
    level.label = f"trotter{order}[" + ",".join(t.label for t in terms) + "]"

    m, kk = len(terms), order // 2
    inner = level
    warned = False

    def eval_fn(t: float) -> np.ndarray:
        nonlocal warned
        if not warned and slices == 1 and 4.0 * m * 5.0 ** (kk - 1) * abs(t) > 1.0:
            warned = True
            warnings.warn(
                f"{inner.label}: step size outside the well-conditioned "
                "range at one slice",
                RuntimeWarning,
                stacklevel=2,
            )
        step = inner.eval(t / slices).mat
        return np.linalg.matrix_power(step, slices) if slices > 1 else step

    def expand_fn(t: float) -> list[Invocation]:
        one = inner.expand(t / slices).invocations
        return one * slices

    cost = Counter({lbl: n * slices for lbl, n in inner.cost_counter.items()})
    label = inner.label if slices == 1 else f"{inner.label}/r{slices}"
    return ParamUnitary(label, layout, eval_fn, expand_fn, cost, target_power=1)


def symmetrize(pu: ParamUnitary) -> ParamUnitary:
    """Order-raising two-copy product, dispatching on the target parity.

    Flows and odd-power targets take U(t/2) * reverse(U)(t/2); even-power
    (commutator) targets take U(tau) U(-tau) with tau = t 2^(-1/m), since
    literal reversal would flip the commutator's sign instead of echoing it.
    """
    m = pu.target_power
    if m % 2 == 1:
        rev = reverse_pu(pu)
        factors = [
            Factor(pu, lambda t: 0.5 * t),
            Factor(rev, lambda t: 0.5 * t),
        ]
    else:
        tau = 2.0 ** (-1.0 / m)
        factors = [
            Factor(pu, lambda t, c=tau: c * t),
            Factor(pu, lambda t, c=tau: -c * t),
        ]
    return compose(f"sym[{pu.label}]", factors, target_power=m)


def sliced(pu: ParamUnitary, r: int) -> ParamUnitary:
    """U(t/r)^r without re-expanding: one evaluation plus a matrix power."""
    if r < 1:
        raise ValueError("slice count must be >= 1")
    if r == 1:
        return pu

    def eval_fn(t: float) -> np.ndarray:
        return np.linalg.matrix_power(pu.eval(t / r).mat, r)

    def expand_fn(t: float) -> list[Invocation]:
        return pu.expand(t / r).invocations * r

    cost = Counter({lbl: n * r for lbl, n in pu.cost_counter.items()})
    return ParamUnitary(
        f"{pu.label}^r{r}", pu.layout, eval_fn, expand_fn, cost, pu.target_power
    )


@dataclass
class TimesliceResult:
    slices: int
    theoretical_slices: int | None
    error: float
    unitary: ParamUnitary


def timeslice(
    pu: ParamUnitary,
    target: Callable[[float], Operator],
    t: float,
    eps: float,
    p: float,
    generator_norm: float | None = None,
    max_slices: int = 1 << 20,
) -> TimesliceResult:
    """Smallest r with ||U(t/r)^r - target(t)|| <= eps.

    Doubling search bracket, then bisection to the minimal count. The
    theoretical count r ~ (C t)^(1 + 1/(p-1)) / eps^(1/(p-1)) is recorded
    alongside when a generator norm C is supplied.
    """
    target_mat = target(t).mat

    def err(r: int) -> float:
        step = pu.eval(t / r).mat
        return spectral_norm(np.linalg.matrix_power(step, r) - target_mat)

    r = 1
    e = err(r)
    while e > eps:
        r *= 2
        if r > max_slices:
            raise ResourceExhaustedError(
                f"timeslice: {r} slices exceed cap {max_slices} (error {e:.3g})"
            )
        e = err(r)
    lo, hi = r // 2, r
    while hi - lo > 1 and lo >= 1:
        mid = (lo + hi) // 2
        if err(mid) <= eps:
            hi = mid
        else:
            lo = mid
    r = hi
    e = err(r)

    theo = None
    if generator_norm is not None and p > 1:
        ct = generator_norm * abs(t)
        theo = max(1, math.ceil(ct ** (1.0 + 1.0 / (p - 1.0)) / eps ** (1.0 / (p - 1.0))))
    return TimesliceResult(r, theo, e, sliced(pu, r))


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    prefactor: float
    residual: float
    n_used: int


def fit_power_law(
    ts: Sequence[float], errs: Sequence[float], floor: float = TOL.noise_floor
) -> PowerLawFit:
    """Least-squares slope of log10(err) against log10(t).

    Points at or below the noise floor are dropped; at least four must
    survive. The residual is the RMS deviation in log10.
    """
    ts = np.asarray(ts, dtype=float)
    errs = np.asarray(errs, dtype=float)
    if ts.shape != errs.shape:
        raise ValueError("ts and errs must have equal length")
    if np.any(ts <= 0):
        raise ValueError("sample times must be positive")
    keep = errs > floor
    if int(keep.sum()) < 4:
        raise ValueError(
            f"only {int(keep.sum())} samples above the noise floor, need >= 4"
        )
    lt = np.log10(ts[keep])
    le = np.log10(errs[keep])
    slope, intercept = np.polyfit(lt, le, 1)
    resid = float(np.sqrt(np.mean((le - (slope * lt + intercept)) ** 2)))
    return PowerLawFit(float(slope), float(10.0**intercept), resid, int(keep.sum()))


@dataclass(frozen=True)
class FitWindow:
    """Log-spaced sampling window for order fits."""

    lo: float = 1e-3
    hi: float = 1e-1
    points: int = 12

    def times(self) -> np.ndarray:
        return np.logspace(math.log10(self.lo), math.log10(self.hi), self.points)


def sweep_errors(
    approx: Callable[[float], Operator],
    target: Callable[[float], Operator],
    window: FitWindow = FitWindow(),
) -> tuple[np.ndarray, np.ndarray]:
    """Operator-norm error of approx against target over the window."""
    ts = window.times()
    errs = np.array(
        [spectral_norm(approx(t).mat - target(t).mat) for t in ts]
    )
    return ts, errs
