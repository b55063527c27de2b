"""Compiled inner loop for one run; mirrors ``rng.RngStream`` draw for draw."""

import numpy as np
from numba import njit

from .rng import GAMMA, MIX1, MIX2

_GAMMA = np.uint64(GAMMA)
_MIX1 = np.uint64(MIX1)
_MIX2 = np.uint64(MIX2)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_ZERO = np.uint64(0)
_INV_2_53 = 1.0 / 9007199254740992.0


@njit(cache=True, nogil=True)
def _next(state):
    # state is a length-1 uint64 array so it can be advanced in place
    s = state[0] + _GAMMA
    state[0] = s
    z = (s ^ (s >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def _below(state, bound):
    b = np.uint64(bound)
    threshold = (_ZERO - b) % b
    while True:
        r = _next(state)
        if r >= threshold:
            return np.int64(r % b)


@njit(cache=True, nogil=True)
def simulate_run(perf, team_size, base_work, reward, rounds, low, high,
                 proportional, seed):
    n = perf.shape[0]
    teams = n // team_size
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    cumulative = np.zeros(n, dtype=np.float64)
    wins = np.zeros(n, dtype=np.int64)
    winners = np.empty(rounds, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    share = base_work / team_size
    span = high - low
    equal_payout = reward / team_size

    for r in range(rounds):
        for i in range(n):
            perm[i] = i
        for i in range(n - 1, 0, -1):
            j = _below(state, i + 1)
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp

        best = np.inf
        winner = -1
        for t in range(teams):
            total = 0.0
            for k in range(t * team_size, (t + 1) * team_size):
                u = low + span * (np.float64(_next(state) >> _S11) * _INV_2_53)
                total += share * u / perf[perm[k]]
            if total < best:
                best = total
                winner = t
        winners[r] = winner

        start = winner * team_size
        if proportional:
            power = 0.0
            for k in range(start, start + team_size):
                power += perf[perm[k]]
            for k in range(start, start + team_size):
                pid = perm[k]
                cumulative[pid] += reward * perf[pid] / power
                wins[pid] += 1
        else:
            for k in range(start, start + team_size):
                pid = perm[k]
                cumulative[pid] += equal_payout
                wins[pid] += 1

    return cumulative, wins, winners
