"""Block-wise range sweeps with partitioning, checkpoints and an ordered merge.

The integer span of a task is cut into fixed-size blocks.  The grid depends
only on the task, never on the partition count, and each block is evaluated
from its own prime context, so every partitioning produces the same block
results.  Partitions are contiguous runs of blocks whose starting counts come
from a separate counting pass (phase 1); blocks are merged in order.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from ..errors import CheckpointError
from ..sieve import DEFAULT_CONFIG, Checkpoint, SieveConfig, _map_ordered, atomic_write
from .report import CheckReport, CheckTask

BLOCK = 1 << 24
STATE_VERSION = 1


@dataclass(frozen=True)
class Block:
    index: int
    lo: int
    hi: int


def block_grid(lo: int, hi: int, size: int = BLOCK) -> list[Block]:
    out = []
    start = lo
    while start <= hi:
        end = min(hi, start + size - 1)
        out.append(Block(len(out), start, end))
        start = end + 1
    return out


def split_groups(blocks: list, parts: int) -> list[list]:
    """Contiguous, nearly equal runs (at most ``parts`` of them)."""
    parts = max(1, min(parts, len(blocks)))
    size, extra = divmod(len(blocks), parts)
    out, at = [], 0
    for i in range(parts):
        step = size + (1 if i < extra else 0)
        out.append(blocks[at:at + step])
        at += step
    return out


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class Sweep:
    """One kind of check over a block grid; subclasses supply the maths."""

    def __init__(self, task: CheckTask, cfg: SieveConfig = DEFAULT_CONFIG, backend=None,
                 jobs: int = 1, block: int = BLOCK):
        self.task = task
        self.cfg = cfg
        self.backend = backend
        self.jobs = max(1, int(jobs))
        self.block = block

    # -- subclass interface ---------------------------------------------------
    def span(self) -> tuple[int, int]:
        """Integer range of breakpoint floors covered by the grid."""
        raise NotImplementedError

    def start_bases(self) -> tuple:
        raise NotImplementedError

    def count(self, blocks: list[Block]) -> tuple:
        """Base increments contributed by a run of blocks."""
        raise NotImplementedError

    def run_block(self, blk: Block, bases: tuple, last: bool):
        """-> (result, bases after the block)."""
        raise NotImplementedError

    def new_state(self) -> dict:
        raise NotImplementedError

    def merge(self, state: dict, result) -> None:
        raise NotImplementedError

    def finish(self, state: dict, report: CheckReport) -> None:
        raise NotImplementedError

    def prepare(self) -> list[str]:
        """Preconditions (monotonicity certificates, ...); returns report notes."""
        return []

    def signature(self) -> str:
        return f"{self.task.signature()}|block={self.block}"

    # -- driver -----------------------------------------------------------------
    def run(self, checkpoint=None, progress: Optional[Callable] = None) -> CheckReport:
        t0 = time.perf_counter()
        notes = self.prepare()
        lo, hi = self.span()
        grid = block_grid(lo, hi, self.block)
        state, start, bases = None, 0, None
        resumed = None
        if checkpoint is not None:
            loaded = load_state(checkpoint, self.signature(), len(grid))
            if loaded is not None:
                state, start, bases = loaded
                resumed = os.fspath(checkpoint)
        if state is None:
            state = self.new_state()
            bases = self.start_bases()
        remaining = grid[start:]
        groups = split_groups(remaining, self.task.partitions) if remaining else []
        group_bases = [bases]
        if len(groups) > 1:
            # phase 1: independent counts per partition, then prefix sums
            counts = list(_map_ordered(self.count, groups[:-1], self.jobs))
            for c in counts:
                group_bases.append(_add(group_bases[-1], c))

        def work(gi: int) -> Iterator:
            b = group_bases[gi]
            for blk in groups[gi]:
                res, b = self.run_block(blk, b, blk.index == len(grid) - 1)
                yield blk, res, b

        if self.jobs > 1 and len(groups) > 1:
            runs = _map_ordered(lambda gi: list(work(gi)), range(len(groups)), self.jobs)
        else:
            runs = (work(gi) for gi in range(len(groups)))
        for run in runs:
            for blk, res, after in run:
                self.merge(state, res)
                if checkpoint is not None:
                    save_state(checkpoint, self.signature(), blk, after, state)
                if progress is not None:
                    progress(blk.index + 1, len(grid), blk.hi)
        report = CheckReport(self.task, 0, [], [], notes=notes, resumed_from=resumed)
        self.finish(state, report)
        report.wall_time = time.perf_counter() - t0
        return report


# -- checkpoint files ----------------------------------------------------------

def state_path(checkpoint) -> str:
    return os.fspath(checkpoint) + ".state"


def save_state(checkpoint, signature: str, blk: Block, bases: tuple, state: dict) -> None:
    doc = {"version": STATE_VERSION, "signature": signature, "next_block": blk.index + 1,
           "x": blk.hi, "bases": list(bases), "state": state}
    atomic_write(state_path(checkpoint), json.dumps(doc, sort_keys=True))
    Checkpoint(blk.hi, bases[0]).save(checkpoint)


def load_state(checkpoint, signature: str, n_blocks: int):
    ck = Checkpoint.load(checkpoint)
    if ck is None:
        if os.path.exists(state_path(checkpoint)):
            raise CheckpointError(f"{state_path(checkpoint)} exists without its checkpoint line")
        return None
    try:
        with open(state_path(checkpoint)) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise CheckpointError(f"checkpoint {checkpoint} has no state file") from None
    except (ValueError, OSError) as exc:
        raise CheckpointError(f"unreadable state file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("version") != STATE_VERSION:
        raise CheckpointError("state file has an unknown format")
    if doc.get("signature") != signature:
        raise CheckpointError(f"checkpoint belongs to a different task ({doc.get('signature')})")
    if doc.get("x") != ck.x or doc["bases"][0] != ck.pi:
        raise CheckpointError("checkpoint line and state file disagree")
    nxt = doc.get("next_block")
    if not isinstance(nxt, int) or not 0 < nxt <= n_blocks:
        raise CheckpointError("checkpoint does not fit the task's block grid")
    return doc["state"], nxt, tuple(doc["bases"])
