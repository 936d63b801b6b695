"""In-process simulation of the federated NLL protocol.

Clients hold raw data and send only (c, counts, mean, ssd) summaries of their
transformed values for the lambda under evaluation; the server merges the
summaries exactly and assembles the NLL. The driver runs the same bounded
minimizer as the centralized fitter, so one NLL evaluation costs one
communication round; the grid protocol trades messages for rounds by
evaluating a whole lambda grid per round and shrinking the bracket around the
argmin. Messages cross an injectable transport seam as flat records, so a
networked deployment can reuse the client/server halves unchanged.

Bounding is mandatory here: client statistics live in the linear domain, so
the fit interval is always intersected with the lambda range keeping every
transformed value under y_bound (default 1e100). The same interval is floored
on the other side: when all transformed values head to zero together (data
entirely above 1 as lambda falls, entirely below 1 as it rises, and the
analogous pure-sign cases), the client ssd underflows to exactly zero and the
round is unevaluable, so the interval is clipped to keep the largest client
magnitude above 1/y_bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .aggregate import Aggregate, aggregate_queue
from .errors import (
    ConfigurationError,
    DegenerateDataError,
    DomainError,
    TransformOverflowError,
)
from .likelihood import Dataset
from .optimize import (
    DEFAULT_Y_BOUND,
    FitOptions,
    _bounds_with_flags,
    minimize_scalar_bounded,
)
from .stablenum import LN_MAX
from .transforms import TransformKind, yeojohnson

__all__ = [
    "ClientShard",
    "ClientMessage",
    "SetupSummary",
    "FedProtocol",
    "FedFitResult",
    "setup_round",
    "client_message_bc",
    "client_message_yj",
    "server_nll_bc",
    "server_nll_yj",
    "fed_fit",
]


@dataclass(frozen=True)
class ClientShard:
    id: int | str
    data: Dataset


@dataclass(frozen=True)
class ClientMessage:
    """Per-round client summary: the only thing that leaves a shard."""

    c: float
    n_pos: int
    n_neg: int
    mean: float
    ssd: float

    @property
    def n(self) -> int:
        return self.n_pos + self.n_neg

    def wire_numbers(self, kind: TransformKind) -> tuple[float, ...]:
        """The protocol payload; n_neg is implicit (zero) for Box-Cox."""
        if kind is TransformKind.BOX_COX:
            return (self.c, float(self.n_pos), self.mean, self.ssd)
        return (self.c, float(self.n_pos), float(self.n_neg), self.mean, self.ssd)

    def to_record(self) -> dict:
        return {
            "c": self.c,
            "n_pos": self.n_pos,
            "n_neg": self.n_neg,
            "mean": self.mean,
            "ssd": self.ssd,
        }

    @classmethod
    def from_record(cls, record: dict) -> "ClientMessage":
        return cls(
            c=float(record["c"]),
            n_pos=int(record["n_pos"]),
            n_neg=int(record["n_neg"]),
            mean=float(record["mean"]),
            ssd=float(record["ssd"]),
        )


@dataclass(frozen=True)
class SetupSummary:
    global_min: float
    global_max: float
    n_pos: int
    n_neg: int
    n_zero: int
    c_total: float

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_neg, self.n_zero)

    @property
    def n(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero


@dataclass(frozen=True)
class FedProtocol:
    mode: str
    points_per_round: int = 0

    def __post_init__(self):
        if self.mode not in ("brent", "grid"):
            raise ConfigurationError("protocol mode must be 'brent' or 'grid'")
        if self.mode == "grid" and self.points_per_round < 3:
            raise ConfigurationError("grid protocol needs at least 3 points per round")

    @classmethod
    def brent(cls) -> "FedProtocol":
        return cls("brent")

    @classmethod
    def grid(cls, points_per_round: int) -> "FedProtocol":
        return cls("grid", points_per_round)

    @classmethod
    def parse(cls, text: str) -> "FedProtocol":
        if text == "brent":
            return cls.brent()
        if text.startswith("grid:"):
            try:
                return cls.grid(int(text.split(":", 1)[1]))
            except ValueError as exc:
                raise ConfigurationError(f"bad protocol string: {text!r}") from exc
        raise ConfigurationError(f"unknown protocol: {text!r}")


@dataclass(frozen=True)
class FedFitResult:
    lambda_star: float
    nll_at_star: float
    rounds: int
    messages_per_round: int
    bound_active: bool


def setup_round(shards: Sequence[ClientShard], kind: TransformKind) -> SetupSummary:
    """One-time exchange of global extrema, sign counts, and the Jacobian sum."""
    if not shards:
        raise DomainError("need at least one shard")
    n_pos = n_neg = n_zero = 0
    gmin = math.inf
    gmax = -math.inf
    c_total = 0.0
    seen = 0
    for shard in shards:
        data = shard.data
        if data.n == 0:
            continue
        seen += data.n
        n_pos += data.n_pos
        n_neg += data.n_neg
        n_zero += data.n_zero
        gmin = min(gmin, data.vmin)
        gmax = max(gmax, data.vmax)
        if kind is TransformKind.BOX_COX:
            c_total += data.log_sum
        else:
            c_total += data.signed_log_sum
    if seen == 0:
        raise DomainError("all shards are empty")
    return SetupSummary(gmin, gmax, n_pos, n_neg, n_zero, c_total)


def _client_cap(n: int) -> float:
    # keep the two-pass ssd representable: (2*ymax)^2 * n below DBL_MAX
    return (LN_MAX - math.log(n)) / 2.0 - math.log(2.0)


def _resolution_interval(
    setup: SetupSummary, kind: TransformKind, y_bound: float
) -> tuple[float, float]:
    """Lambda range where the largest client power stays above 1/y_bound.

    Outside it every statistic a client can send rounds to zero and the ssd
    degenerates even though the data is not constant; the centralized
    log-domain engine has no such limit. Only one-sided data collapses: any
    sign (or side-of-1) mix pins at least one exploding power to each end,
    and the y_bound cap already owns those ends.
    """
    floor_log = -math.log(y_bound)
    lo, hi = -math.inf, math.inf
    if kind is TransformKind.BOX_COX:
        if setup.global_min > 1.0:
            lo = floor_log / math.log(setup.global_min)
        if setup.global_max < 1.0:
            hi = floor_log / math.log(setup.global_max)
    elif setup.n_neg == 0:
        if setup.global_min > 0.0:
            lo = floor_log / math.log1p(setup.global_min)
    elif setup.n_pos == 0 and setup.n_zero == 0:
        hi = 2.0 - floor_log / math.log1p(-setup.global_max)
    return lo, hi


def client_message_bc(shard: ClientShard, lmbda: float) -> ClientMessage:
    """Summary of y = x**lambda (ln x at lambda = 0) over a positive shard."""
    data = shard.data
    n = data.n
    if lmbda == 0.0:
        ys = list(data.logs)
    else:
        cap = _client_cap(max(n, 1))
        ys = []
        for L in data.logs:
            t = lmbda * L
            if t > cap:
                raise TransformOverflowError(
                    "client statistic overflows; bounds are misconfigured",
                    log_magnitude=t,
                )
            ys.append(math.exp(t))
    agg = _from_values(ys)
    return ClientMessage(c=data.log_sum, n_pos=n, n_neg=0, mean=agg.mean, ssd=agg.ssd)


def client_message_yj(shard: ClientShard, lmbda: float) -> ClientMessage:
    """Branch-dependent summary over a shard of any sign mix.

    Pure nonnegative shards send stats of (1+x)**lambda, pure negative
    shards stats of (1-x)**(2-lambda) (constants omitted; the server
    reconstructs them), mixed shards stats of the full transform.
    """
    data = shard.data
    n_pos = data.n_pos + data.n_zero
    n_neg = data.n_neg
    cap = _client_cap(max(data.n, 1))
    if n_neg == 0:
        if lmbda == 0.0:
            ys = list(data.log1p_pos)
        else:
            ys = [_capped_exp(lmbda * L, cap) for L in data.log1p_pos]
    elif n_pos == 0:
        u = 2.0 - lmbda
        if u == 0.0:
            ys = [-L for L in data.log1p_neg]
        else:
            ys = [_capped_exp(u * L, cap) for L in data.log1p_neg]
    else:
        ys = []
        for v in data.values:
            y = yeojohnson(lmbda, v)
            if abs(y) > 0.0 and math.log(abs(y)) > cap:
                raise TransformOverflowError(
                    "client statistic overflows; bounds are misconfigured",
                    log_magnitude=math.log(abs(y)),
                )
            ys.append(y)
    agg = _from_values(ys)
    return ClientMessage(
        c=data.signed_log_sum, n_pos=n_pos, n_neg=n_neg, mean=agg.mean, ssd=agg.ssd
    )


def _capped_exp(t: float, cap: float) -> float:
    if t > cap:
        raise TransformOverflowError(
            "client statistic overflows; bounds are misconfigured", log_magnitude=t
        )
    return math.exp(t)


def _from_values(ys: Sequence[float]) -> Aggregate:
    if not ys:
        return Aggregate(0, 0.0, 0.0)
    n = len(ys)
    mean = math.fsum(ys) / n
    ssd = math.fsum((y - mean) ** 2 for y in ys)
    return Aggregate(n, mean, ssd)


def _assemble(lnvar: float, n: int, lmbda: float, c_total: float) -> float:
    return (1.0 - lmbda) * c_total + 0.5 * n * lnvar


def server_nll_bc(messages: Sequence[ClientMessage], lmbda: float, c_total: float) -> float:
    """Merge Box-Cox client summaries and assemble the NLL."""
    parts = [Aggregate(m.n, m.mean, m.ssd) for m in messages if m.n > 0]
    if not parts:
        raise DomainError("no data behind the messages")
    total = aggregate_queue(parts)
    if total.n < 2:
        raise DomainError("NLL needs at least two values")
    if total.ssd <= 0.0:
        raise DegenerateDataError("transformed data has zero variance")
    ln_s = math.log(total.ssd)
    if lmbda != 0.0:
        ln_s -= 2.0 * math.log(abs(lmbda))
    lnvar = ln_s - math.log(total.n)
    return _assemble(lnvar, total.n, lmbda, c_total)


def server_nll_yj(messages: Sequence[ClientMessage], lmbda: float, c_total: float) -> float:
    """Merge Yeo-Johnson summaries per sign group, correct, and assemble.

    Pure-group statistics arrive as raw powers: their ssd is rescaled by the
    branch divisor unconditionally, and their mean is shifted back to true
    transform values whenever any other group participates.
    """
    pos = [m for m in messages if m.n > 0 and m.n_neg == 0]
    neg = [m for m in messages if m.n > 0 and m.n_pos == 0 and m.n_neg > 0]
    mix = [m for m in messages if m.n_pos > 0 and m.n_neg > 0]
    groups: list[Aggregate] = []
    others_of = {
        "pos": bool(neg or mix),
        "neg": bool(pos or mix),
    }
    if pos:
        t = aggregate_queue([Aggregate(m.n, m.mean, m.ssd) for m in pos])
        mean, ssd = t.mean, t.ssd
        if lmbda != 0.0:
            ssd = ssd / (lmbda * lmbda)
            if others_of["pos"]:
                mean = (mean - 1.0) / lmbda
        groups.append(Aggregate(t.n, mean, ssd))
    if neg:
        t = aggregate_queue([Aggregate(m.n, m.mean, m.ssd) for m in neg])
        mean, ssd = t.mean, t.ssd
        if lmbda != 2.0:
            d = lmbda - 2.0
            ssd = ssd / (d * d)
            if others_of["neg"]:
                mean = (mean - 1.0) / d
        groups.append(Aggregate(t.n, mean, ssd))
    if mix:
        groups.append(aggregate_queue([Aggregate(m.n, m.mean, m.ssd) for m in mix]))
    if not groups:
        raise DomainError("no data behind the messages")
    total = aggregate_queue(groups)
    if total.n < 2:
        raise DomainError("NLL needs at least two values")
    if total.ssd <= 0.0:
        raise DegenerateDataError("transformed data has zero variance")
    lnvar = math.log(total.ssd) - math.log(total.n)
    return _assemble(lnvar, total.n, lmbda, c_total)


def fed_fit(
    shards: Sequence[ClientShard],
    kind: TransformKind,
    opts: FitOptions | None = None,
    protocol: FedProtocol | None = None,
    transport: Callable[[dict], dict] | None = None,
    trace_sink: Callable[[dict], None] | None = None,
) -> FedFitResult:
    """Drive the protocol to a bounded lambda fit.

    transport, when given, carries each message record across a serialization
    boundary; trace_sink observes every record plus a final summary record.
    """
    if not shards:
        raise DomainError("need at least one shard")
    protocol = protocol if protocol is not None else FedProtocol.brent()
    opts = opts if opts is not None else FitOptions(y_bound=DEFAULT_Y_BOUND)
    if opts.y_bound is None:
        opts = replace(opts, y_bound=DEFAULT_Y_BOUND)
    setup = setup_round(shards, kind)
    if setup.n < 2:
        raise DomainError("fitting needs at least two values")
    if kind is TransformKind.BOX_COX and setup.global_min <= 0:
        raise DomainError("Box-Cox requires strictly positive data")
    if setup.global_min == setup.global_max:
        raise DegenerateDataError("constant data has zero variance")
    lo, hi, lo_derived, hi_derived = _bounds_with_flags(
        setup.global_min, setup.global_max, kind, opts.y_bound, opts.lambda_interval
    )
    r_lo, r_hi = _resolution_interval(setup, kind, opts.y_bound)
    if r_lo > lo:
        lo, lo_derived = r_lo, True
    if r_hi < hi:
        hi, hi_derived = r_hi, True
    if not lo < hi:
        raise ConfigurationError("empty feasible lambda interval")
    make_message = client_message_bc if kind is TransformKind.BOX_COX else client_message_yj
    server = server_nll_bc if kind is TransformKind.BOX_COX else server_nll_yj

    rounds = 0

    def evaluate(lam: float) -> float:
        messages = []
        for shard in shards:
            msg = make_message(shard, lam)
            record = {"round_index": rounds, "lambda": lam, **msg.to_record()}
            if trace_sink is not None:
                trace_sink(dict(record))
            if transport is not None:
                record = transport(record)
            messages.append(ClientMessage.from_record(record))
        try:
            return server(messages, lam, setup.c_total)
        except DegenerateDataError:
            # setup proved the data non-constant, so a zero ssd here means
            # the statistics underflowed; steer the minimizer back inside
            return math.inf

    if protocol.mode == "brent":

        def objective(lam: float) -> float:
            nonlocal rounds
            rounds += 1
            return evaluate(lam)

        x, fx, _ = minimize_scalar_bounded(
            objective, lo, hi, opts.x_tolerance, opts.max_evals
        )
        messages_per_round = len(shards)
        downlink = 1
    else:
        pts = protocol.points_per_round
        a, b = lo, hi
        best_x = best_f = None
        while True:
            rounds += 1
            grid = [a + (b - a) * i / (pts - 1) for i in range(pts)]
            fs = [evaluate(g) for g in grid]
            i_min = min(range(pts), key=fs.__getitem__)
            if best_f is None or fs[i_min] < best_f:
                best_x, best_f = grid[i_min], fs[i_min]
            a = grid[max(i_min - 1, 0)]
            b = grid[min(i_min + 1, pts - 1)]
            if (b - a) <= opts.x_tolerance or rounds >= opts.max_evals:
                break
        x, fx = best_x, best_f
        messages_per_round = len(shards) * pts
        downlink = pts
    bound_active = (
        lo_derived
        and abs(x - lo) <= opts.x_tolerance * (1.0 + abs(lo))
        or hi_derived
        and abs(x - hi) <= opts.x_tolerance * (1.0 + abs(hi))
    )
    if trace_sink is not None:
        trace_sink(
            {
                "summary": True,
                "lambda_star": x,
                "nll_at_star": fx,
                "rounds": rounds,
                "messages_per_round": messages_per_round,
                "downlink_numbers_per_round": downlink,
                "protocol": protocol.mode
                if protocol.mode == "brent"
                else f"grid:{protocol.points_per_round}",
                "n_shards": len(shards),
                "bound_active": bound_active,
                "interval": [lo, hi],
            }
        )
    return FedFitResult(x, fx, rounds, messages_per_round, bound_active)
