"""Runtime limits: the total-degree cap and the memory budget.

Defaults are a total degree of 8 and 2 GiB.  The environment variables
``QTR_DEGREE_CAP`` and ``QTR_MEMORY_BUDGET`` (bytes, optional ``K``/``M``/``G``
suffix) override the defaults; :func:`set_config` (used by CLI flags)
overrides both.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

__all__ = ["Config", "get_config", "set_config", "parse_bytes"]

# rough footprint of one pending term in the rewriting queue
BYTES_PER_TERM = 600

_SUFFIX = {"": 1, "K": 2**10, "M": 2**20, "G": 2**30}


def parse_bytes(text):
    text = str(text).strip().upper().removesuffix("IB").removesuffix("B")
    unit = text[-1:] if text[-1:] in ("K", "M", "G") else ""
    number = text[: len(text) - len(unit)]
    value = int(float(number) * _SUFFIX[unit])
    if value <= 0:
        raise ValueError(f"memory budget must be positive, got {text!r}")
    return value


@dataclass(frozen=True)
class Config:
    degree_cap: int = 8
    memory_budget: int = 2 * 2**30

    @property
    def max_terms(self):
        return max(1, self.memory_budget // BYTES_PER_TERM)


_override = None


def _from_env():
    cfg = Config()
    cap = os.environ.get("QTR_DEGREE_CAP")
    if cap:
        cfg = replace(cfg, degree_cap=int(cap))
    mem = os.environ.get("QTR_MEMORY_BUDGET")
    if mem:
        cfg = replace(cfg, memory_budget=parse_bytes(mem))
    return cfg


def get_config():
    return _override if _override is not None else _from_env()


def set_config(degree_cap=None, memory_budget=None):
    """Pin limits explicitly; ``None`` keeps the environment/default value."""
    global _override
    cfg = _from_env()
    if degree_cap is not None:
        cfg = replace(cfg, degree_cap=int(degree_cap))
    if memory_budget is not None:
        cfg = replace(cfg, memory_budget=parse_bytes(memory_budget))
    _override = cfg
    return cfg


def reset_config():
    global _override
    _override = None
