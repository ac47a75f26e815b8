"""Entry points of the verification engine."""

from __future__ import annotations

from typing import Callable, Optional

from ..analytic.registry import resolve
from ..errors import ConfigurationError
from ..sieve import DEFAULT_CONFIG, SieveConfig
from .engine import BLOCK
from .pi_checks import PiSweep
from .ramanujan import RamanujanSweep, ramanujan_task_kind
from .report import CheckKind, CheckReport, CheckTask


def _run(sweep, checkpoint, progress) -> CheckReport:
    return sweep.run(checkpoint=checkpoint, progress=progress)


def make_task(kind: CheckKind, lo, hi, bound=None, n: int = 1, partitions: int = 1,
              strategy: str = "jump") -> CheckTask:
    return CheckTask(kind, lo, hi, resolve(bound) if bound is not None else None,
                     n, partitions, strategy)


def verify_pi(task: CheckTask, *, jobs: int = 1, checkpoint=None,
              progress: Optional[Callable] = None, cfg: SieveConfig = DEFAULT_CONFIG,
              backend=None, block: int = BLOCK) -> CheckReport:
    if task.kind not in (CheckKind.LOWER, CheckKind.UPPER):
        raise ConfigurationError(f"{task.label} is not a pi-bound task")
    sweep = PiSweep(task, cfg=cfg, backend=backend, jobs=jobs, block=block)
    return _run(sweep, checkpoint, progress)


def verify_lower(task, lo=None, hi=None, **kw) -> CheckReport:
    """pi(x) > bound(x) on [lo, hi]; ``task`` is a CheckTask or a bound (identifier)."""
    if not isinstance(task, CheckTask):
        task = make_task(CheckKind.LOWER, lo, hi, task, partitions=kw.pop("partitions", 1),
                         strategy=kw.pop("strategy", "jump"))
    elif task.kind is not CheckKind.LOWER:
        raise ConfigurationError("verify_lower needs a LowerBoundPi task")
    return verify_pi(task, **kw)


def verify_upper(task, lo=None, hi=None, **kw) -> CheckReport:
    """pi(x) < bound(x) on [lo, hi]."""
    if not isinstance(task, CheckTask):
        task = make_task(CheckKind.UPPER, lo, hi, task, partitions=kw.pop("partitions", 1),
                         strategy=kw.pop("strategy", "jump"))
    elif task.kind is not CheckKind.UPPER:
        raise ConfigurationError("verify_upper needs an UpperBoundPi task")
    return verify_pi(task, **kw)


def verify_rnxi(n: int, lo=None, hi=None, *, partitions: int = 1, jobs: int = 1, checkpoint=None,
                progress: Optional[Callable] = None, cfg: SieveConfig = DEFAULT_CONFIG,
                backend=None, block: int = BLOCK) -> CheckReport:
    """R_n(x) > 0 on [lo, hi] (``n`` may also be a ready CheckTask).

    n = 1 is run as (and reported as) the Ramanujan inequality.
    """
    if isinstance(n, CheckTask):
        task = n
        if task.kind not in (CheckKind.RAMANUJAN, CheckKind.RNXI):
            raise ConfigurationError(f"{task.label} is not a Ramanujan-type task")
        if task.n == 1 and task.kind is CheckKind.RNXI:
            task = CheckTask(CheckKind.RAMANUJAN, task.lo, task.hi, None, 1, task.partitions)
    else:
        if int(n) != n or n < 1:
            raise ConfigurationError("n must be a positive integer")
        n = int(n)
        task = CheckTask(ramanujan_task_kind(n), lo, hi, None, n, partitions)
    sweep = RamanujanSweep(task, cfg=cfg, backend=backend, jobs=jobs, block=block)
    return _run(sweep, checkpoint, progress)


def verify_ramanujan(lo, hi=None, **kw) -> CheckReport:
    """pi(x)^2 < (e x / log x) pi(x / e) on [lo, hi]."""
    if isinstance(lo, CheckTask):
        if lo.kind is not CheckKind.RAMANUJAN:
            raise ConfigurationError("verify_ramanujan needs a Ramanujan task")
        return verify_rnxi(lo, **kw)
    return verify_rnxi(1, lo, hi, **kw)
