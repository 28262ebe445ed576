"""Rank bounds assembled from the reduction data and the descent curve.

Every bound is an entry with its inputs and notes.  Real-valued bounds keep
their exact value next to the floor, and a negative floor is reported as
"rank is 0".  The best bound is the minimum over applicable entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .descent import build_descent_curve
from .errors import CapabilityError, ConsistencyError, EllRankError, HypothesisViolated
from .tate import global_summary

LOG2_3 = math.log2(3)
CHI_COEFFICIENT_3 = 6 * LOG2_3


class NotApplicable(EllRankError):
    """A bound whose hypotheses are not met for this input."""


@dataclass
class BoundEntry:
    name: str
    value: int | None
    applicable: bool
    inputs: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    real: float | None = None
    kind: str = "rank"

    @property
    def rank_is_zero(self):
        return self.applicable and self.value is not None and self.value < 0

    @property
    def effective(self):
        return max(self.value, 0) if self.applicable and self.value is not None else None

    def to_dict(self):
        out = {
            "name": self.name,
            "kind": self.kind,
            "applicable": self.applicable,
            "value": self.value,
            "inputs": dict(self.inputs),
            "notes": list(self.notes),
        }
        if self.real is not None:
            out["real"] = round(self.real, 12)
        if self.rank_is_zero:
            out["notes"].append("negative bound: rank is 0")
        return out


@dataclass
class TorsionInput:
    """An upper bound for ``dim Pic(C)[p]`` with its source."""

    upper: int
    provenance: str
    lower: int = 0
    notes: tuple = ()

    def to_dict(self):
        return {"upper": self.upper, "lower": self.lower, "provenance": self.provenance,
                "notes": list(self.notes)}


@dataclass
class RankBoundReport:
    entries: list
    best_bound: int | None
    best_names: list
    identity_check: bool | None
    summary: object
    descent: object
    torsion: TorsionInput | None
    mode: str
    notes: list = field(default_factory=list)
    hypothesis_violated: str | None = None

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


# --- individual bounds ---------------------------------------------------------

def geometric_bound(s):
    """``4 g(S) - 4 + deg f``."""
    return 4 * s.genus_base - 4 + s.deg_f


def brumer_main_term(s, q, c=None):
    """The explicit-formula bound over ``GF(q)``; the ``c`` term only if ``c`` is given."""
    if s.deg_f < 2:
        raise NotApplicable("deg f < 2: log_q(deg f) is not positive")
    L = math.log(s.deg_f) / math.log(q)
    value = (4 * s.genus_base - 4 + s.deg_f) / (2 * L)
    if c is not None:
        value += float(c) * s.deg_f / L**2
    return value


def inequality_bound(s, p, picC_dim, picS_dim=0, geometric=False, certificate=True):
    """Descent bound ``dim Pic(C)[p] - dim Pic(S)[p] + local corrections``.

    Arithmetic mode counts closed points of the base; geometric mode counts
    geometric points with the component groups over the algebraic closure.
    """
    if not certificate:
        raise NotApplicable("no geometric integrality certificate for the descent curve")
    if geometric:
        extra = s.count_p_divides_c_geom(p)
        if p == 2:
            extra += s.count_I2n_star_geom()
    else:
        extra = s.count_p_divides_c(p)
        if p == 2:
            extra += s.count_full_I2n_star()
    return picC_dim - picS_dim + extra


def lefschetz_bound(s, characteristic=0):
    """``(4g(S) - 4 + deg f - 2 p_g, 10 chi + 2 g(S) - 2)``; characteristic 0 only."""
    if characteristic != 0:
        raise NotApplicable("Hodge-theoretic bound needs characteristic 0")
    return geometric_bound(s) - 2 * s.p_g, 10 * s.chi + 2 * s.genus_base - 2


@dataclass(frozen=True)
class BhargavaBound:
    real: float
    dim: int
    gonality_term: float | None = None

    def notes(self):
        out = [f"log2((q^(g+1) - 1)/(q - 1)) = {self.real:.6f}"]
        if self.gonality_term is not None:
            out.append(f"degree-n form (1 - 1/n) g log2 q = {self.gonality_term:.6f} "
                       "up to an additive constant (not used)")
        return out


def bhargava_dim_bound(g, q, n=None):
    """Upper bound for ``dim Pic(C)[2]`` of a genus-``g`` curve over ``GF(q)``, q odd."""
    if q % 2 == 0:
        raise NotApplicable("q must be odd")
    count = (q ** (g + 1) - 1) // (q - 1)
    real = math.log2(count)
    dim = count.bit_length() - 1
    gon = (1 - 1 / n) * g * math.log2(q) if n else None
    return BhargavaBound(real, dim, gon)


def thm0bound3_part1(s, eps_sum_geom, good_reduction_at_3=False):
    """Bound over QQ when C has good reduction at 3 (asserted by the caller)."""
    if not good_reduction_at_3:
        raise NotApplicable("needs good reduction of C at 3 (assert it explicitly)")
    return (
        CHI_COEFFICIENT_3 * s.chi
        + 3 * LOG2_3 * s.genus_base
        - (LOG2_3 - 1) * eps_sum_geom
        - LOG2_3
        - 1
    )


def igusa_equivalence_check(s, c):
    """``2g(C) - 2g(S) + sum eps_geom == 4g(S) - 4 + deg f``, else ConsistencyError."""
    lhs = 2 * c.genus - 2 * s.genus_base + s.eps_sum_geom
    rhs = geometric_bound(s)
    if lhs != rhs:
        raise ConsistencyError(f"identity fails: 2g(C) + sum eps = {lhs}, deg f - 4 = {rhs}")
    return True


# --- assembly -------------------------------------------------------------------

@dataclass
class BoundOptions:
    p: int = 2
    geometric: bool = False
    torsion_dim: int | None = None
    good_primes: tuple = ()
    brumer_c: object = None
    good_reduction_at_3: bool = False
    workers: int = 1


def _floor_entry(name, real, inputs, notes=(), kind="rank"):
    return BoundEntry(name, math.floor(real + 1e-12), True, inputs, list(notes), real=real, kind=kind)


def _na(name, reason, kind="rank"):
    return BoundEntry(name, None, False, {}, [reason], kind=kind)


def _torsion_input(E, c, opts, notes):
    """Best certified upper bound for ``dim Pic(C)[2]`` in arithmetic mode."""
    g = c.genus
    cands = [TorsionInput(2 * g, "trivial bound 2 g(C)")]
    K = E.base
    if opts.torsion_dim is not None:
        return TorsionInput(int(opts.torsion_dim), "user-asserted", int(opts.torsion_dim))
    if g == 0:
        return TorsionInput(0, "genus 0", 0)
    if K.is_finite:
        from .zeta import two_torsion_bounds, zeta_of

        try:
            _, P = zeta_of(E, g, workers=opts.workers)
        except CapabilityError as exc:
            notes.append(f"zeta skipped: {exc}")
        else:
            b = two_torsion_bounds(P)
            cands.append(TorsionInput(b.upper, f"L-polynomial P(1) = {P.class_number()}",
                                      b.lower, b.notes))
        if K.order % 2:
            bh = bhargava_dim_bound(g, K.order, 3)
            cands.append(TorsionInput(bh.dim, f"point-count bound over GF({K.order})", 0,
                                      tuple(bh.notes())))
    elif opts.good_primes:
        from .zeta import torsion_upper_over_Q

        try:
            b = torsion_upper_over_Q(E, opts.good_primes, g)
        except CapabilityError as exc:
            notes.append(f"reduction torsion skipped: {exc}")
        except EllRankError as exc:
            notes.append(str(exc))
        else:
            cands.append(TorsionInput(b.upper, f"reduction mod {b.prime}", 0, b.notes))
    else:
        notes.append("no good primes supplied: using the trivial torsion bound")
    # on ties prefer the later, more specific source; keep the best certified lower bound
    best = min(reversed(cands), key=lambda t: t.upper)
    best.lower = max(t.lower for t in cands)
    return best


def assemble_report(E, options=None):
    opts = options or BoundOptions()
    K = E.base
    char = K.characteristic
    s = global_summary(E, opts.p)
    entries, notes = [], []
    mode = "geometric" if opts.geometric else "arithmetic"

    entries.append(BoundEntry("geometric", geometric_bound(s), True,
                              {"deg_f": s.deg_f, "genus_base": s.genus_base}))
    try:
        lef, lef_chi = lefschetz_bound(s, char)
        entries.append(BoundEntry("lefschetz", lef, True, {"deg_f": s.deg_f, "p_g": s.p_g}))
        entries.append(BoundEntry("lefschetz_chi", lef_chi, True, {"chi": s.chi}))
    except NotApplicable as exc:
        entries.append(_na("lefschetz", str(exc)))
        entries.append(_na("lefschetz_chi", str(exc)))
    if K.is_finite and not opts.geometric:
        try:
            val = brumer_main_term(s, K.order, opts.brumer_c)
            note = "main term only" if opts.brumer_c is None else f"c = {opts.brumer_c}"
            entries.append(_floor_entry("brumer", val, {"deg_f": s.deg_f, "q": K.order}, [note]))
        except NotApplicable as exc:
            entries.append(_na("brumer", str(exc)))
    else:
        entries.append(_na("brumer", "needs a finite constant field"))

    descent, identity, torsion, violated = None, None, None, None
    try:
        descent = build_descent_curve(E, s if opts.p == 2 else global_summary(E, 2))
    except HypothesisViolated as exc:
        violated = str(exc)
        notes.append(
            f"E[2] reducible over the algebraic closure: geometric bound 6 chi + 2 g(S) - 2 = "
            f"{6 * s.chi + 2 * s.genus_base - 2} holds here; descent bounds are not applicable"
        )
    if descent is not None:
        s2 = s if opts.p == 2 else global_summary(E, 2)
        identity = igusa_equivalence_check(s2, descent)

    # descent inequality
    if descent is None:
        entries.append(_na("inequality", "descent curve unavailable"))
    elif opts.p != 2:
        if opts.torsion_dim is None:
            entries.append(_na("inequality", f"p = {opts.p} needs --torsion-dim"))
        else:
            torsion = TorsionInput(int(opts.torsion_dim), "user-asserted", int(opts.torsion_dim),
                                   (f"E[{opts.p}] irreducibility is assumed, not checked",))
            val = inequality_bound(s, opts.p, torsion.upper, geometric=opts.geometric)
            entries.append(BoundEntry("inequality", val, True,
                                      {"p": opts.p, "picC_dim": torsion.upper,
                                       "count_p_divides_c": _count(s, opts)},
                                      [f"picC_dim {torsion.provenance}"]))
    else:
        if opts.geometric:
            torsion = TorsionInput(2 * descent.genus, "geometric: 2 g(C)", 2 * descent.genus)
        else:
            torsion = _torsion_input(E, descent, opts, notes)
        val = inequality_bound(s, 2, torsion.upper, geometric=opts.geometric)
        inputs = {"p": 2, "picC_dim": torsion.upper, "count_p_divides_c": _count(s, opts),
                  "count_I2n_star": (s.count_I2n_star_geom() if opts.geometric
                                     else s.count_full_I2n_star())}
        entries.append(BoundEntry("inequality", val, True, inputs,
                                  [f"picC_dim from {torsion.provenance}"]))

    # QQ-specific bound with an asserted good reduction at 3
    if char == 0 and descent is not None and not opts.geometric:
        try:
            val = thm0bound3_part1(s, s.eps_sum_geom, opts.good_reduction_at_3)
            entries.append(_floor_entry("good_reduction_at_3", val,
                                        {"chi": s.chi, "eps_sum_geom": s.eps_sum_geom},
                                        [f"chi coefficient {CHI_COEFFICIENT_3:.6f}",
                                         "good reduction at 3 user-asserted"]))
        except NotApplicable as exc:
            entries.append(_na("good_reduction_at_3", str(exc)))
        notes.append("asymptotic 4 log2(p) chi + O(1) form not evaluated (unspecified constant)")

    usable = [e for e in entries if e.applicable and e.kind == "rank"]
    best = min(e.effective for e in usable) if usable else None
    names = sorted(e.name for e in usable if e.effective == best)
    return RankBoundReport(entries, best, names, identity, s, descent, torsion, mode, notes, violated)


def _count(s, opts):
    return s.count_p_divides_c_geom(opts.p) if opts.geometric else s.count_p_divides_c(opts.p)


__all__ = [
    "BhargavaBound",
    "BoundEntry",
    "BoundOptions",
    "CHI_COEFFICIENT_3",
    "NotApplicable",
    "RankBoundReport",
    "TorsionInput",
    "assemble_report",
    "bhargava_dim_bound",
    "brumer_main_term",
    "geometric_bound",
    "igusa_equivalence_check",
    "inequality_bound",
    "lefschetz_bound",
    "thm0bound3_part1",
]
