"""Perturbation stability of the long minimal zero-sum family.

Over (Z/mZ)^2, write Upsilon for the family of length-(2m-1) sequences of
the shape f1^[m-1] * prod_{i in [1,m]} (x_i f1 + f2), sum x_i = 1 (mod m) —
the minimal zero-sums of maximal length.  The family splits by whether the
multiplicity-(m-1) term is unique ("unique") or not ("non_unique"); in the
latter case S = f1^[m-1] f2^[m-1] (f1+f2) for some basis, since a second
multiplicity-(m-1) value among the x_i forces the residues (x^[m-1], x+1).

Three lemmas (m >= 4) constrain two-term replacements

    S' = S - t1 - t2 + (t1 + g) + (t2 - g)

that land back in the family: the offset g is confined to a small stated
set, often with S' = S outright.  verify_perturbation checks every item of
one lemma exhaustively over all admissible parameters and all g, for one
basis; automorphism equivariance (tested separately) extends the result to
every basis, since the family, the moves, and the stated sets all
transport along automorphisms.
"""

from __future__ import annotations

import dataclasses
import itertools
from multiprocessing import get_context

from .errors import BudgetExceeded, PreconditionViolated, SchemaError, SumMismatch
from .groups import Elem, Group, group
from .properties import Eq1Witness, matches_eq1
from .report import Report, Stopwatch
from .sequences import Sequence

_LEMMAS = ("I", "II", "III")


@dataclasses.dataclass(frozen=True)
class UpsilonClass:
    tag: str  # "not_in_upsilon" | "unique" | "non_unique"
    witness: Eq1Witness | None


def upsilon_class(seq: Sequence) -> UpsilonClass:
    """Membership of the family, split by uniqueness of the heavy term."""
    readings = matches_eq1(seq)
    if not readings:
        return UpsilonClass("not_in_upsilon", None)
    m = seq.group.n
    heavy = sum(1 for _, mult in seq.items() if mult == m - 1)
    return UpsilonClass("unique" if heavy == 1 else "non_unique", readings[0])


def perturb(seq: Sequence, removed: Sequence, added: Sequence) -> Sequence:
    """S - removed + added; the two replacement parts must carry equal sums
    so that sigma is conserved."""
    if removed.sigma() != added.sigma():
        raise SumMismatch(
            f"replacement changes the sum: {removed.sigma()} != {added.sigma()}"
        )
    return seq.remove(removed).concat(added)


@dataclasses.dataclass(frozen=True)
class _Move:
    """One admissible replacement: remove the two pivots, add their
    g-shifted versions, and expect any in-family result to have g inside
    the stated set (with S' = S when exact is set)."""

    item: int
    params: tuple
    pivots: tuple[Elem, Elem]
    stated: frozenset[Elem]
    exact: bool


def _cyclic(grp: Group, g: Elem) -> frozenset[Elem]:
    return frozenset(grp.cyclic_subgroup(g))


def _unique_heavy_base(grp: Group, f1: Elem, f2: Elem, xs: tuple[int, ...]) -> Sequence:
    terms = [(grp.add(grp.scale(x, f1), f2), 1) for x in xs]
    return Sequence(grp, [(f1, grp.n - 1)] + terms)


def _moves_unique(grp: Group, f1: Elem, f2: Elem, xs: tuple[int, ...]) -> list[_Move]:
    m = grp.n
    zero = grp.zero
    coset = {v: grp.add(grp.scale(v, f1), f2) for v in set(xs)}
    moves = [_Move(1, (), (f1, f1), frozenset([zero]), True)]
    for v in sorted(coset):
        stated = frozenset([zero, grp.add(grp.scale(v - 1, f1), f2)])
        moves.append(_Move(2, (v,), (f1, coset[v]), stated, True))
    counts = {v: xs.count(v) for v in coset}
    f1_line = _cyclic(grp, f1)
    for v, w in itertools.product(sorted(coset), repeat=2):
        if v == w and counts[v] < 2:
            continue
        moves.append(_Move(3, (v, w), (coset[v], coset[w]), f1_line, False))
    return moves


def _twin_heavy_base(grp: Group, f1: Elem, f2: Elem) -> Sequence:
    return Sequence(
        grp, [(f1, grp.n - 1), (f2, grp.n - 1), (grp.add(f1, f2), 1)]
    )


def _moves_twin(grp: Group, f1: Elem, f2: Elem, lemma: str) -> list[_Move]:
    zero = grp.zero
    u = grp.add(f1, f2)
    near_u = frozenset([zero, grp.sub(f2, f1)])
    if lemma == "II":
        stated = [_cyclic(grp, f2), _cyclic(grp, f1), near_u,
                  _cyclic(grp, f2), _cyclic(grp, f1)]
        exact = [False, False, True, False, False]
    else:
        stated = [frozenset([zero]), frozenset([zero]), near_u,
                  frozenset([zero, f2]), frozenset([zero, f1])]
        exact = [True] * 5
    pivots = [(f1, f1), (f2, f2), (f1, f2), (f1, u), (f2, u)]
    return [
        _Move(i + 1, (), pivots[i], stated[i], exact[i]) for i in range(5)
    ]


def _run_moves(grp, base, moves, target_nu, accum, counterexamples, extra):
    """Apply every move to the base sequence for every g, recording the
    achieved offsets and any conclusion violations."""
    for move in moves:
        slot = accum[move.item]
        slot["stated"] |= move.stated
        removed = Sequence.from_terms(grp, move.pivots)
        t1, t2 = move.pivots
        for g in grp.elements():
            slot["cases"] += 1
            added = Sequence.from_terms(
                grp, (grp.add(t1, g), grp.sub(t2, g))
            )
            landed = perturb(base, removed, added)
            cls = upsilon_class(landed)
            if cls.tag == "not_in_upsilon" or (target_nu and cls.tag != "non_unique"):
                continue
            slot["achieved"].add(g)
            bad = None
            if g not in move.stated:
                bad = "achieved offset outside the stated set"
            elif move.exact and landed != base:
                bad = "stated offset fails to restore the sequence"
            if bad is not None:
                counterexamples.append(
                    {
                        "item": move.item,
                        "params": list(move.params),
                        "g": list(g),
                        "reason": bad,
                        **extra,
                    }
                )


def _new_accum() -> dict:
    return {
        item: {"stated": set(), "achieved": set(), "cases": 0}
        for item in (1, 2, 3, 4, 5)
    }


def _scan_unique(args) -> tuple[dict, list, int]:
    m, f1, f2, chunk = args
    grp = group(m)
    accum = _new_accum()
    counterexamples: list = []
    for xs in chunk:
        base = _unique_heavy_base(grp, f1, f2, xs)
        assert upsilon_class(base).tag == "unique"
        moves = _moves_unique(grp, f1, f2, xs)
        _run_moves(
            grp, base, moves, False, accum, counterexamples, {"xs": list(xs)}
        )
    return accum, counterexamples, len(chunk)


def _unique_grid(m: int) -> list[tuple[int, ...]]:
    """All residue multisets giving a unique-heavy family member: sum 1 mod
    m and no residue repeated exactly m-1 times."""
    return [
        xs
        for xs in itertools.combinations_with_replacement(range(m), m)
        if sum(xs) % m == 1
        and all(xs.count(v) != m - 1 for v in set(xs))
    ]


def _merge_accum(total: dict, part: dict) -> None:
    for item, slot in part.items():
        total[item]["stated"] |= slot["stated"]
        total[item]["achieved"] |= slot["achieved"]
        total[item]["cases"] += slot["cases"]


def verify_perturbation(
    m: int,
    lemma: str,
    *,
    basis: tuple[Elem, Elem] | None = None,
    bound: int = 6,
    jobs: int = 1,
) -> Report:
    """Exhaustively check one perturbation lemma for modulus m.

    Lemma I ranges over every unique-heavy family member (all residue
    multisets), lemmas II and III over the single twin-heavy shape; all
    moves and all offsets g are tried.  Any in-family landing with g
    outside the stated set, or failing a claimed S' = S, is a
    counterexample.  Details record the stated and achieved offset sets
    per item, so tightness can be read off the Report.
    """
    if lemma not in _LEMMAS:
        raise SchemaError(f"lemma must be one of {_LEMMAS}, got {lemma!r}")
    if m < 4:
        raise PreconditionViolated(f"the perturbation lemmas require m >= 4, got {m}")
    if m > bound:
        raise BudgetExceeded(f"perturbation scan for m={m} exceeds bound {bound}")
    grp = group(m)
    if basis is None:
        basis = ((1, 0), (0, 1))
    f1, f2 = grp.element(*basis[0]), grp.element(*basis[1])
    grp.require_basis(f1, f2)
    with Stopwatch() as sw:
        accum = _new_accum()
        counterexamples: list = []
        if lemma == "I":
            grid = _unique_grid(m)
            scanned = len(grid)
            if jobs <= 1:
                part, bad, _ = _scan_unique((m, f1, f2, tuple(grid)))
                _merge_accum(accum, part)
                counterexamples.extend(bad)
            else:
                chunks = [tuple(grid[i::jobs]) for i in range(jobs)]
                with get_context("fork").Pool(jobs) as pool:
                    for part, bad, _ in pool.map(
                        _scan_unique, [(m, f1, f2, c) for c in chunks if c]
                    ):
                        _merge_accum(accum, part)
                        counterexamples.extend(bad)
            # order must not depend on the worker split
            counterexamples.sort(key=repr)
        else:
            base = _twin_heavy_base(grp, f1, f2)
            assert upsilon_class(base).tag == "non_unique"
            moves = _moves_twin(grp, f1, f2, lemma)
            _run_moves(
                grp, base, moves, lemma == "III", accum, counterexamples, {}
            )
            scanned = 1
        items = {
            str(item): {
                "stated": sorted(map(list, slot["stated"])),
                "achieved": sorted(map(list, slot["achieved"])),
                "cases": slot["cases"],
            }
            for item, slot in accum.items()
            if slot["cases"]
        }
    return Report(
        check="perturbation",
        params={"m": m, "lemma": lemma, "basis": [list(f1), list(f2)]},
        orbits_scanned=scanned,
        counterexamples=counterexamples,
        elapsed_ms=sw.elapsed_ms,
        details={"items": items},
    )
