"""Decision procedure for spherical quadratic equations z_1 c_1 z_1^-1 ... z_m c_m z_m^-1 = 1.

The equation is solvable iff shifted copies of the constants' quotient chains
sum to zero, and a solution is always witnessed inside the l1 ball of radius
B = 2 * sum of constant lengths.  Candidates are cosets of the quotient
lattice that meet that ball; a certificate reports one in-ball representative
per coset (the first in (norm, lex) order), so every emitted alpha satisfies
the bound checked by verify_certificate.

Two complete strategies over that bounded space:

* ``exhaustive`` scans all candidate tuples for the first m-1 constants and
  solves the last one exactly by matching its support against the lex-minimal
  edge of the running sum (a nonzero chain determines its shift uniquely).
* ``backtracking`` is residual-driven tiling: place constants so as to cancel
  the lex-minimal residual edge, branching over every (constant, support edge)
  pair with matching direction and opposite coefficient sign.  In any solution
  the future contributions at that edge sum to minus its residual coefficient,
  so at least one has opposite sign; branching over all of them keeps the
  search complete.  When the residual is empty a fresh cluster is anchored:
  the lowest-indexed unplaced constant is pinned so that its first support
  edge sits at the origin, which is attainable by translating that cluster.

Resource exhaustion is reported as a distinct ``timeout`` verdict, never as
``unsat``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .flows import (
    LatticePoint,
    add_points,
    element,
    l1_norm,
    neg_point,
    sub_points,
    zero_point,
)
from .lattice import QuotientSpec, build_spec, canonicalize
from .quotient import QuotientChain, chain_from_items, project
from .words import GroupWord, inverse


@dataclass(frozen=True)
class SphericalEquation:
    rank: int
    constants: tuple[GroupWord, ...]

    def __post_init__(self):
        if not self.constants:
            raise ValueError("an equation needs at least one constant")
        if any(c.rank != self.rank for c in self.constants):
            raise ValueError("rank mismatch among constants")


@dataclass(frozen=True)
class SolverInstance:
    equation: SphericalEquation
    spec: QuotientSpec
    taus: tuple[QuotientChain, ...]
    bound: int


@dataclass(frozen=True)
class Certificate:
    alphas: tuple[LatticePoint, ...]


@dataclass(frozen=True)
class Verdict:
    status: str  # "sat" | "unsat" | "timeout"
    certificate: Certificate | None = None

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


def build_instance(eq: SphericalEquation) -> SolverInstance:
    """Quotient spec from the abelianized constants, their chains, and the bound."""
    images = [element(c) for c in eq.constants]
    spec = build_spec([g.endpoint for g in images], eq.rank)
    taus = tuple(project(g, spec) for g in images)
    bound = 2 * sum(len(c) for c in eq.constants)
    return SolverInstance(eq, spec, taus, bound)


# -- candidate cosets ---------------------------------------------------------


def _ball_points(rank: int, radius: int):
    # all integer points with l1 norm <= radius, ordered by (norm, lex)
    def rec(prefix, remaining, dims_left):
        if dims_left == 1:
            for x in range(-remaining, remaining + 1):
                yield prefix + (x,)
            return
        for x in range(-remaining, remaining + 1):
            yield from rec(prefix + (x,), remaining - abs(x), dims_left - 1)

    pts = list(rec((), radius, rank))
    pts.sort(key=lambda p: (l1_norm(p), p))
    return pts


def coset_table(spec: QuotientSpec, radius: int):
    """Cosets meeting the l1 ball, as (ordered reps, canonical-form -> rep map).

    The representative of each coset is its first ball point in (norm, lex)
    order, so reps always satisfy the certificate bound.
    """
    reps: list[LatticePoint] = []
    index: dict[LatticePoint, LatticePoint] = {}
    for p in _ball_points(spec.rank, radius):
        key = canonicalize(p, spec)
        if key not in index:
            index[key] = p
            reps.append(p)
    return reps, index


# -- shared chain helpers (raw dicts keyed by (base, dir)) --------------------


def _shift_dict(coeffs, v, spec):
    out = {}
    get = out.get
    if spec.is_trivial:
        for (b, d), k in coeffs.items():
            out[(add_points(b, v), d)] = k
        return out
    for (b, d), k in coeffs.items():
        key = (canonicalize(add_points(b, v), spec), d)
        c = get(key, 0) + k
        if c:
            out[key] = c
        else:
            del out[key]
    return out


def _merge_dicts(base, extra):
    out = dict(base)
    get = out.get
    for key, k in extra.items():
        c = get(key, 0) + k
        if c:
            out[key] = c
        else:
            del out[key]
    return out


class _Deadline:
    __slots__ = ("at",)

    def __init__(self, seconds):
        self.at = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.at is not None and time.monotonic() > self.at

    def remaining(self):
        return None if self.at is None else max(self.at - time.monotonic(), 0.0)


class _Timeout(Exception):
    pass


# -- exhaustive strategy ------------------------------------------------------


def _match_last(partial, support_sorted, spec, index):
    """The unique coset shifting the last chain to exactly minus the partial sum.

    Shifting never changes the number of edges (translation is injective on
    canonical bases), so the caller prechecks lengths; here the lex-minimal
    edge of the partial sum must be the image of some support edge, which pins
    the shift down to finitely many cosets to test.
    """
    (eb, ed) = min(partial)
    trivial = spec.is_trivial
    tried = set()
    for (fb, fd), fk in support_sorted:
        if fd != ed:
            continue
        alpha = sub_points(eb, fb)
        if not trivial:
            alpha = canonicalize(alpha, spec)
        if alpha in tried:
            continue
        tried.add(alpha)
        rep = index.get(alpha)
        if rep is None:
            continue  # coset does not meet the ball
        if trivial:
            ok = all(
                partial.get((add_points(b, rep), d)) == -k
                for (b, d), k in support_sorted
            )
        else:
            shifted = _shift_dict(dict(support_sorted), rep, spec)
            ok = len(shifted) == len(partial) and all(
                partial.get(key) == -k for key, k in shifted.items()
            )
        if ok:
            return rep
    return None


def _solve_exhaustive(inst: SolverInstance, deadline: _Deadline) -> Verdict:
    taus = [t.coeffs for t in inst.taus]
    spec = inst.spec
    m = len(taus)
    if m == 1:
        # a shift never changes the number of edges, so only the empty chain
        # can be shifted to zero
        if not taus[0]:
            return Verdict("sat", Certificate((zero_point(spec.rank),)))
        return Verdict("unsat")
    reps, index = coset_table(spec, inst.bound)
    shifted = []
    for i in range(m - 1):
        if deadline.expired():
            return Verdict("timeout")
        shifted.append([_shift_dict(taus[i], r, spec) for r in reps])
    last = taus[m - 1]
    last_support = sorted(last.items())
    last_len = len(last)
    zero = zero_point(spec.rank)

    counter = 0

    def match(partial):
        if not last:
            return zero if not partial else None
        if len(partial) != last_len:
            return None
        return _match_last(partial, last_support, spec, index)

    def rec(i, partial, chosen):
        nonlocal counter
        row = shifted[i]
        if i == m - 2:
            merge = _merge_dicts
            for j, r in enumerate(reps):
                counter += 1
                if counter % 4096 == 0 and deadline.expired():
                    raise _Timeout
                rep = match(merge(partial, row[j]))
                if rep is not None:
                    return chosen + [r, rep]
            return None
        for j, r in enumerate(reps):
            counter += 1
            if counter % 4096 == 0 and deadline.expired():
                raise _Timeout
            found = rec(i + 1, _merge_dicts(partial, row[j]), chosen + [r])
            if found is not None:
                return found
        return None

    try:
        found = rec(0, {}, [])
    except _Timeout:
        return Verdict("timeout")
    if found is None:
        return Verdict("unsat")
    return Verdict("sat", Certificate(tuple(found)))


# -- backtracking strategy ----------------------------------------------------


def _instance_tables(inst: SolverInstance):
    taus = [t.coeffs for t in inst.taus]
    supports = [sorted(t.items()) for t in taus]
    # constants with identical chains are interchangeable: branch only on the
    # lowest-indexed unplaced one of each group
    group_of = {}
    seen: dict[tuple, int] = {}
    for i, t in enumerate(taus):
        key = tuple(sorted(t.items()))
        group_of[i] = seen.setdefault(key, i)
    return taus, supports, group_of


class _RepLookup:
    """Bound check and representative choice for a coset.

    For the trivial lattice cosets are points and the check is a plain norm
    comparison; otherwise a coset table over the ball is built on first use.
    """

    def __init__(self, spec, radius):
        self.spec = spec
        self.radius = radius
        self._index = None

    def rep(self, point):
        if self.spec.is_trivial:
            return point if l1_norm(point) <= self.radius else None
        if self._index is None:
            _, self._index = coset_table(self.spec, self.radius)
        return self._index.get(canonicalize(point, self.spec))


def _branches(state, taus, supports, group_of, spec, lookup):
    """Candidate (constant, rep) placements at this node, in canonical order."""
    unplaced, residual, _ = state
    out = []
    if not residual:
        i = unplaced[0]
        (fb, fd), fk = supports[i][0]
        rep = lookup.rep(neg_point(fb))
        if rep is not None:
            out.append((i, rep))
        return out
    (eb, ed) = min(residual)
    rsign = 1 if residual[(eb, ed)] > 0 else -1
    groups_seen = set()
    tried = set()
    for i in unplaced:
        g = group_of[i]
        if g in groups_seen:
            continue
        groups_seen.add(g)
        for (fb, fd), fk in supports[i]:
            if fd != ed or (fk > 0) == (rsign > 0):
                continue
            point = sub_points(eb, fb)
            rep = lookup.rep(point)
            if rep is None:
                continue
            key = (g, canonicalize(rep, spec))
            if key in tried:
                continue
            tried.add(key)
            out.append((i, rep))
    return out


def _place(state, i, rep, taus, spec):
    unplaced, residual, placed = state
    new_unplaced = tuple(j for j in unplaced if j != i)
    new_residual = _merge_dicts(residual, _shift_dict(taus[i], rep, spec))
    return (new_unplaced, new_residual, placed + ((i, rep),))


def _search(state, taus, supports, group_of, spec, lookup, deadline, counter=None):
    if counter is None:
        counter = [0]
    unplaced, residual, placed = state
    if not residual and not unplaced:
        return placed
    if not unplaced:
        return None
    counter[0] += 1
    if counter[0] % 1024 == 0 and deadline.expired():
        raise _Timeout
    for i, rep in _branches(state, taus, supports, group_of, spec, lookup):
        found = _search(
            _place(state, i, rep, taus, spec),
            taus,
            supports,
            group_of,
            spec,
            lookup,
            deadline,
            counter,
        )
        if found is not None:
            return found
    return None


def _branch_worker(args):
    inst, state, remaining = args
    taus, supports, group_of = _instance_tables(inst)
    lookup = _RepLookup(inst.spec, inst.bound)
    try:
        found = _search(
            state, taus, supports, group_of, inst.spec, lookup, _Deadline(remaining)
        )
    except _Timeout:
        return "timeout"
    return found


def _solve_backtracking(inst: SolverInstance, deadline: _Deadline, threads: int) -> Verdict:
    taus, supports, group_of = _instance_tables(inst)
    spec = inst.spec
    lookup = _RepLookup(spec, inst.bound)
    m = len(taus)
    zero = zero_point(spec.rank)
    placed = tuple((i, zero) for i in range(m) if not taus[i])
    unplaced = tuple(i for i in range(m) if taus[i])
    state = (unplaced, {}, placed)

    def finish(placements):
        if placements is None:
            return Verdict("unsat")
        alphas = [zero] * m
        for i, rep in placements:
            alphas[i] = rep
        return Verdict("sat", Certificate(tuple(alphas)))

    try:
        if threads <= 1:
            return finish(_search(state, taus, supports, group_of, spec, lookup, deadline))
        # descend through forced placements, then fan the first real branch
        # point out over a process pool; the earliest branch in canonical
        # order wins, so the verdict and certificate match the serial search
        while True:
            unplaced, residual, placed = state
            if not unplaced:
                return finish(placed if not residual else None)
            branches = _branches(state, taus, supports, group_of, spec, lookup)
            if not branches:
                return finish(None)
            if len(branches) > 1:
                break
            i, rep = branches[0]
            state = _place(state, i, rep, taus, spec)
        tasks = [
            (inst, _place(state, i, rep, taus, spec), deadline.remaining())
            for i, rep in branches
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_branch_worker, tasks))
        timed_out = False
        for res in results:
            if res == "timeout":
                timed_out = True
            elif res is not None:
                return finish(res)
        return Verdict("timeout") if timed_out else Verdict("unsat")
    except _Timeout:
        return Verdict("timeout")


# -- public entry points ------------------------------------------------------

STRATEGIES = ("backtracking", "exhaustive")


def solve(
    inst: SolverInstance,
    strategy: str = "backtracking",
    timeout: float | None = None,
    threads: int = 1,
) -> Verdict:
    """Decide the instance; both strategies are complete over the bounded space."""
    deadline = _Deadline(timeout)
    if strategy == "exhaustive":
        return _solve_exhaustive(inst, deadline)
    if strategy == "backtracking":
        return _solve_backtracking(inst, deadline, threads)
    raise ValueError(f"unknown strategy {strategy!r}")


def verify_certificate(inst: SolverInstance, cert: Certificate) -> bool:
    """Check the bound and that the shifted chains sum to zero; polynomial time."""
    m = len(inst.taus)
    if len(cert.alphas) != m:
        raise ValueError(f"certificate has {len(cert.alphas)} entries, expected {m}")
    if any(len(a) != inst.spec.rank for a in cert.alphas):
        raise ValueError("rank mismatch in certificate")
    if any(l1_norm(a) > inst.bound for a in cert.alphas):
        return False
    total: dict = {}
    for tau, alpha in zip(inst.taus, cert.alphas):
        total = _merge_dicts(total, _shift_dict(tau.coeffs, alpha, inst.spec))
    return not total


def solve_conjugacy(
    u: GroupWord,
    w: GroupWord,
    strategy: str = "backtracking",
    timeout: float | None = None,
    threads: int = 1,
) -> Verdict:
    """Conjugacy as the m=2 equation with constants (u, w^-1)."""
    if u.rank != w.rank:
        raise ValueError("rank mismatch")
    eq = SphericalEquation(u.rank, (u, inverse(w)))
    return solve(build_instance(eq), strategy=strategy, timeout=timeout, threads=threads)


# -- serialization ------------------------------------------------------------


def certificate_to_dict(cert: Certificate) -> dict:
    return {"alphas": [list(a) for a in cert.alphas]}


def certificate_from_dict(data: dict) -> Certificate:
    alphas = data["alphas"]
    return Certificate(tuple(tuple(int(x) for x in a) for a in alphas))


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "status": v.status,
        "certificate": certificate_to_dict(v.certificate) if v.certificate else None,
    }


def verdict_from_dict(data: dict) -> Verdict:
    cert = data.get("certificate")
    return Verdict(data["status"], certificate_from_dict(cert) if cert else None)
