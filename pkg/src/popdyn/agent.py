"""Agent memory layout and the per-interaction state updates.

Every operation here is a pure value transformation: inputs are never
mutated, signal arrays are copied before editing. Signal arrays use
1-indexed semantics (``signals[i]`` is the strength of the presence signal
for group ``i``); indices past the stored length read as zero, because a
signal that was never boosted has strength zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import IntEnum

from .rng import Xoshiro256

DEFAULT_TIMER_MULTIPLIER = 12

# Exponent clamp for 2**(fmv-1) comparisons in the bucketed variant: keeps
# thresholds inside int64 for the compiled kernel without changing any
# reachable decision (estimates are orders of magnitude below 2**62).
MAX_POW2_EXPONENT = 62


class Phase(IntEnum):
    NORMAL = 0
    WAITING = 1
    UPDATING = 2


@dataclass
class AgentState:
    """One agent's full memory."""

    group: int = 1
    signals: list[int] = field(default_factory=list)
    estimate: int = 1
    grv: int = 1
    timer: int = 0
    phase: Phase = Phase.NORMAL
    fmv: int = 1


def ceil_log2(x: int) -> int:
    """Smallest k with 2**k >= x, for x >= 1 (ceil_log2(1) == 0)."""
    return (x - 1).bit_length()


def sample_geometric(rng: Xoshiro256) -> int:
    """Draw G with Pr[G = j] = 2**-j (flips up to and including first heads)."""
    return rng.geometric()


def update_group(state: AgentState, increment: bool) -> AgentState:
    """Advance the increment-or-reset group walk by one fair-coin step."""
    return replace(state, group=state.group + 1 if increment else 1)


def boost(state: AgentState) -> AgentState:
    """Write the maximal signal value 3k+1 at the agent's own group index k."""
    g = state.group
    signals = list(state.signals)
    if len(signals) < g:
        signals.extend([0] * (g - len(signals)))
    signals[g - 1] = 3 * g + 1
    return replace(state, signals=signals)


def propagate_signals(u: AgentState, v: AgentState) -> tuple[AgentState, AgentState]:
    """Pairwise decaying max over every signal index; both arrays end equal.

    Callers boost both agents first; the freshly boosted value decays along
    with everything else, so no index ever exceeds max(3i+1, prior max) - 1.
    """
    n = max(len(u.signals), len(v.signals))
    merged = [0] * n
    for i in range(n):
        a = u.signals[i] if i < len(u.signals) else 0
        b = v.signals[i] if i < len(v.signals) else 0
        m = a if a > b else b
        merged[i] = m - 1 if m > 0 else 0
    return replace(u, signals=list(merged)), replace(v, signals=merged)


def update_mv(state: AgentState) -> AgentState:
    """Cache the first zero signal at or above ceil(log2(estimate)).

    Indices beyond the stored array read as zero, so the result is
    max(s, len+1) when no stored index in [s, len] is zero.
    """
    s = max(1, ceil_log2(state.estimate))
    f = s
    while f <= len(state.signals) and state.signals[f - 1] != 0:
        f += 1
    return replace(state, fmv=f)


def size_checker(state: AgentState) -> AgentState:
    """Leave the normal phase when fmv falls outside [estimate/4, 2.5*estimate].

    Integer cross-multiplication, strict inequalities: boundary values do
    not trigger.
    """
    if state.phase is not Phase.NORMAL:
        return state
    if 4 * state.fmv < state.estimate or 2 * state.fmv > 5 * state.estimate:
        return replace(state, phase=Phase.WAITING, timer=1)
    return state


def _timer_step(state: AgentState, rng: Xoshiro256, threshold: int) -> AgentState:
    """Shared timer advance; exactly one phase transition per call."""
    timer = state.timer + 1
    if timer > threshold:
        if state.phase is Phase.WAITING:
            return replace(
                state,
                grv=sample_geometric(rng),
                phase=Phase.UPDATING,
                timer=1,
            )
        if state.phase is Phase.UPDATING:
            return replace(state, estimate=state.grv, phase=Phase.NORMAL, timer=0)
    return replace(state, timer=timer)


def timer_routine(
    state: AgentState,
    rng: Xoshiro256,
    multiplier: int = DEFAULT_TIMER_MULTIPLIER,
) -> AgentState:
    """Count interactions through the waiting and updating phases.

    After more than multiplier*fmv interactions in a phase, waiting agents
    resample their geometric value and start updating; updating agents adopt
    the propagated maximum as their estimate and return to normal. Callers
    only invoke this while the phase is not normal.
    """
    return _timer_step(state, rng, multiplier * state.fmv)


def propagate_max_est(u: AgentState, v: AgentState) -> tuple[AgentState, AgentState]:
    """Spread the larger geometric value between same-phase, non-waiting agents."""
    if u.phase == v.phase and u.phase is not Phase.WAITING:
        m = max(u.grv, v.grv)
        return replace(u, grv=m), replace(v, grv=m)
    return u, v
