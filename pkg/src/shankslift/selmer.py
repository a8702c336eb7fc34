"""Dimension ledgers for Wiles' formula and auxiliary-prime bookkeeping.

A ledger lists, per place v, dim N_v, dim H^0(G_v, M) and dim H^0(G_v, M*),
together with the global H^0 dimensions.  Every number carries a provenance
tag, either "computed" or "paper-fixture".
"""

import logging
from dataclasses import dataclass, field as dc_field, replace

from .arith import is_prime, poly_roots_mod_p, primes_up_to
from . import cohomo
from .modrep import a4_order_table

log = logging.getLogger(__name__)

COMPUTED = "computed"
FIXTURE = "paper-fixture"


class IncompleteLedger(ValueError):
    pass


class FixtureMissing(LookupError):
    pass


class WrongCharacteristic(ValueError):
    pass


@dataclass(frozen=True)
class LocalConditionSummary:
    label: str
    dim_N: int
    dim_h0: int
    dim_h0_dual: int
    provenance: str = COMPUTED
    h1: int = None

    def __post_init__(self):
        for name in ("dim_N", "dim_h0", "dim_h0_dual"):
            val = getattr(self, name)
            if val is None:
                continue
            if val < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.h1 is not None and self.dim_N is not None and self.dim_N > self.h1:
            raise ValueError("dim N_v cannot exceed dim H^1")
        if self.provenance not in (COMPUTED, FIXTURE):
            raise ValueError(f"unknown provenance {self.provenance}")

    @property
    def complete(self):
        return None not in (self.dim_N, self.dim_h0, self.dim_h0_dual)


@dataclass(frozen=True)
class GlobalLedger:
    entries: tuple = ()
    global_h0: int = 0
    global_h0_dual: int = 0
    global_provenance: str = COMPUTED
    p: int = None  # when set, entries for str(p) and "inf" are required

    def labels(self):
        return [e.label for e in self.entries]

    def with_entry(self, entry):
        return replace(self, entries=self.entries + (entry,))

    def has_fixture(self):
        return self.global_provenance == FIXTURE or any(e.provenance == FIXTURE for e in self.entries)

    def check_complete(self):
        if self.global_h0 is None or self.global_h0_dual is None:
            raise IncompleteLedger("global H^0 dimensions missing")
        bad = [e.label for e in self.entries if not e.complete]
        if bad:
            raise IncompleteLedger(f"entries with missing dimensions: {bad}")
        if self.p is not None:
            missing = [lab for lab in (str(self.p), "inf") if lab not in self.labels()]
            if missing:
                raise IncompleteLedger(f"ledger lacks entries for {missing}")


def wiles_difference(ledger):
    ledger.check_complete()
    local = sum(e.dim_N - e.dim_h0 for e in ledger.entries)
    return ledger.global_h0 - ledger.global_h0_dual + local


def is_balanced(ledger):
    return wiles_difference(ledger) == 0


def balance_status(ledger):
    """'verified' (all entries computed), 'consistent' (some fixtures), or 'unbalanced'."""
    if not is_balanced(ledger):
        return "unbalanced"
    return "consistent" if ledger.has_fixture() else "verified"


def infinity_entry(p=3, f=1):
    h0, h1, _ = cohomo.real_place_dims(p, f, trivial_action=True)
    # complex conjugation acts trivially on Ad^0 and by -1 on mu_p, so the dual has no invariants
    return LocalConditionSummary("inf", 0, h0, 0, COMPUTED, h1=h1)


def ell_entry(ell, p=3, f=1):
    d = cohomo.shape_datum("ell-unipotent", ell, p, f)
    h0, h1, h2 = cohomo.dims(d)
    N = len(cohomo.h1_unramified(d))
    return LocalConditionSummary(str(ell), N, h0, h2, COMPUTED, h1=h1)


def wild_entry(fixture):
    pl = fixture.payload
    # the condition at the wild place is all of H^1
    return LocalConditionSummary("3", pl["h1_dim"], pl["h0_dim"], pl["h2_dim"], FIXTURE, h1=pl["h1_dim"])


def minimal_ledger(ell, wild_fixture, p=3):
    """S = {inf, p, ell} with global H^0 dimensions 0 (absolutely irreducible residual image)."""
    entries = (wild_entry(wild_fixture), infinity_entry(p), ell_entry(ell, p))
    return GlobalLedger(entries, 0, 0, COMPUTED, p)


def add_auxiliary(ledger, kind, v, p=3, f=1):
    """Append the entry of an auxiliary place; N_v is the line spanned by r_v."""
    if kind == "nice":
        d = cohomo.shape_datum("nice", v, p, f)
    elif kind == "c3":
        d = cohomo.shape_datum("c3", v, 3, f)
    else:
        raise ValueError(f"unknown auxiliary kind {kind}")
    h0, h1, h2 = cohomo.dims(d)
    if not cohomo.verify_span(d, cohomo.r_v_cocycle(d), h0):
        raise AssertionError("r_v does not span a balanced local condition")
    entry = LocalConditionSummary(f"{v}:{kind}", 1, h0, h2, COMPUTED, h1=h1)
    return ledger.with_entry(entry)


def kernel_ledger(base, w_entry, known):
    """dim ker phi_w from the two Wiles identities at levels S and S + {w}.

    ``known`` supplies ker_S, ker_S_dual and ker_w_dual; ``w_entry`` must carry
    h1 and dim_h0 for the local group at w.
    """
    for key in ("ker_S", "ker_S_dual", "ker_w_dual"):
        if known.get(key) is None:
            raise IncompleteLedger(f"missing {key}")
    if w_entry is None or w_entry.h1 is None or w_entry.dim_h0 is None:
        raise IncompleteLedger("the entry at w needs h1 and h0")
    if base is not None and base.entries:
        diff = wiles_difference(base)
        if diff != known["ker_S"] - known["ker_S_dual"]:
            raise ValueError(f"known kernels differ by {known['ker_S'] - known['ker_S_dual']}, ledger gives {diff}")
    return known["ker_w_dual"] + (known["ker_S"] - known["ker_S_dual"]) + (w_entry.h1 - w_entry.dim_h0)


@dataclass(frozen=True)
class SelmerRankBound:
    value: int
    upper: int
    warning: str = None


def selmer_rank_bound_7489(fixtures):
    """Sandwich bound for the Selmer rank at l = 7489.

    The Selmer group injects into H^1 over the 3-l Frattini extension, whose
    dimension dim_H1_T bounds the rank.  Equality would force the 3-Frattini
    extension of K unramified outside 3 to need 3 * dim_H1_T generators (one
    copy of Ad^0 for each dimension), so a smaller generator count excludes it.
    """
    try:
        upper = fixtures["dim_H1_T"]
        gens = fixtures["frattini_gens_over_3_only"]
    except (KeyError, TypeError) as exc:
        raise FixtureMissing(str(exc)) from exc
    if upper is None or gens is None:
        raise FixtureMissing("fixture value is None")
    if upper == 0:
        return SelmerRankBound(0, 0)
    if gens < 3 * upper:
        return SelmerRankBound(upper - 1, upper)
    msg = f"{gens} generators do not exclude rank {upper}"
    log.warning(msg)
    return SelmerRankBound(upper, upper, msg)


def nice_prime_test(v, p, frob_eigenvalues, ramified, K=None):
    """Nice-prime conditions for eigenvalues given as ints or WittRing(p,1,f) elements."""
    if p == 3:
        raise WrongCharacteristic("nice primes are defined for p >= 5")
    if p < 5:
        raise ValueError("p must be at least 5")
    if (v - 1) % p == 0 or (v + 1) % p == 0 or ramified:
        return False
    from .rings import WittRing

    if K is None:
        K = WittRing(p, 1, 1)
    a, b = (K(x) if not isinstance(x, tuple) else x for x in frob_eigenvalues)
    if K.is_zero(a) or K.is_zero(b):
        return False
    vv = K(v)
    return K.mul(b, vv) == a or K.mul(a, vv) == b


@dataclass(frozen=True)
class AuxPrimeReport:
    w: int
    passed: bool
    conditions: tuple  # names of the necessary conditions that hold
    frobenius_order: int  # in Gal(L/Q)
    w_mod3: int
    paper_listed: bool = False


def c3_prime_test(w, field, paper_primes=()):
    if not is_prime(w) or w in (3, field.ell):
        raise ValueError("w must be a prime not dividing 3 l")
    a4_order_table()  # order-3 elements of A_4 are exactly those outside the Klein group
    roots = poly_roots_mod_p(list(field.poly.coeffs), w)
    inert = not roots
    conds = []
    if w % 3 == 1:
        conds.append("w = 1 mod 3")
    if inert:
        conds.append("f irreducible mod w")
    return AuxPrimeReport(w, w % 3 == 1 and inert, tuple(conds), 3 if inert else 1, w % 3, w in paper_primes)


@dataclass
class ScanResult:
    reports: list
    tested: int
    passed: int
    paper_primes: tuple = ()

    @property
    def fraction(self):
        return self.passed / self.tested if self.tested else 0.0

    @property
    def primes(self):
        return [r.w for r in self.reports]

    def paper_status(self):
        got = set(self.primes)
        return {w: w in got for w in self.paper_primes}


def aux_prime_scan(field, bound, paper_primes=()):
    reports, tested = [], 0
    for w in primes_up_to(int(bound)):
        if w in (3, field.ell):
            continue
        tested += 1
        rep = c3_prime_test(w, field, paper_primes)
        if rep.passed:
            reports.append(rep)
    return ScanResult(reports, tested, len(reports), tuple(paper_primes))
