"""Command-line entry point: ``shankslift <group> <command> [options]``.

Every subcommand writes one JSON document (or a table view of it).  Numbers
in the ``result`` block are wrapped as {"value": ..., "tag": "computed"} or
tagged "fixture" when they were transcribed rather than computed.
"""

import argparse
import json
import logging
import os
import platform
import sys
from dataclasses import asdict, dataclass

from . import cohomo, deform, powser, selmer
from .cache import CACHE_ENV, ResultCache
from .fixtures import Fixture, FixtureInvalid, FixtureMissing, available, fixture_load
from .modrep import CyclicActionModule, decompose
from .rings import WittRing

log = logging.getLogger("shankslift")

SCHEMA_VERSION = 1
COMPUTED = "computed"
FIXTURE = "fixture"

CONFIG_KEYS = {"float_bits", "padic_N", "t_M", "cache_dir", "fixture_dir", "format", "seed"}
MIN_FLOAT_BITS = 64


@dataclass
class RunConfig:
    float_bits: int = 100
    padic_N: int = 4
    t_M: int = 10
    cache_dir: str = None
    fixture_dir: str = None
    format: str = "json"
    seed: int = 0
    use_cache: bool = True

    def __post_init__(self):
        if self.float_bits < MIN_FLOAT_BITS:
            raise ValueError(f"float_bits must be at least {MIN_FLOAT_BITS}")
        if self.padic_N < 1 or self.t_M < 1:
            raise ValueError("padic_N and t_M must be positive")
        if self.format not in ("json", "table"):
            raise ValueError("format is json or table")

    @property
    def dps(self):
        return max(20, int(self.float_bits * 0.30103) + 1)

    def public(self):
        d = asdict(self)
        d.pop("use_cache")
        return d


def load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        raw = json.load(fh)
    unknown = set(raw) - CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return raw


def computed(v):
    return {"value": v, "tag": COMPUTED}


def from_fixture(v):
    return {"value": v, "tag": FIXTURE}


def _versions():
    import mpmath

    try:
        from importlib.metadata import version

        mine = version("artifact")
    except Exception:
        mine = "unknown"
    return {"artifact": mine, "python": platform.python_version(), "mpmath": mpmath.__version__}


def envelope(command, cfg, result, fixtures=()):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "seed": cfg.seed,
        "config": cfg.public(),
        "versions": _versions(),
        "fixtures": [{"name": f.name, "citation": f.citation} for f in fixtures],
        "result": result,
    }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "items"):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def emit(doc, cfg, out=None):
    out = out or sys.stdout
    doc = _jsonable(doc)
    if cfg.format == "table":
        for key, val in doc["result"].items():
            if isinstance(val, dict) and "tag" in val:
                out.write(f"{key:<28} {json.dumps(val['value'])}  [{val['tag']}]\n")
            else:
                out.write(f"{key:<28} {json.dumps(val)}\n")
    else:
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


# ----------------------------------------------------------------- handlers

def _field(args, cfg):
    from .numfield.field import build_field
    from .shanks import parameter_for_ell, shanks_prime

    if args.a is not None:
        par = shanks_prime(args.a)
        if par is None:
            raise ValueError(f"a = {args.a} does not give a prime")
    else:
        par = parameter_for_ell(args.ell)
    return build_field(par, dps=cfg.dps)


def _class_group(field, cfg):
    from .numfield.classgroup import class_group

    return class_group(field, seed=cfg.seed, precision=cfg.dps)


def cmd_shanks_list(args, cfg):
    from .shanks import congruence_profile, discriminant, enumerate_shanks, shanks_polynomial

    rows = []
    for p in enumerate_shanks(args.max_a):
        poly = shanks_polynomial(p)
        prof = congruence_profile(p.ell)
        rows.append({"a": p.a, "ell": p.ell, "polynomial": str(poly),
                     "disc_is_ell_squared": discriminant(poly) == p.ell**2,
                     "ell_mod9": prof["mod9"], "sumsq_mod3": prof["sumsq_mod3"], "certain": p.certain})
    return {"count": computed(len(rows)), "table": computed(rows)}, ()


def cmd_field_info(args, cfg):
    from .numfield.analytic import analytic_hr, unique_integer_in
    from .numfield.units import regulator_interval

    F = _field(args, cfg)

    def compute():
        hr = analytic_hr(F, cfg.dps)
        reg = regulator_interval(F, precision=cfg.dps)
        return {"a": F.a, "ell": F.ell, "polynomial": str(F.poly), "discriminant": F.disc,
                "hR": str(hr), "regulator": str(reg), "h_analytic": unique_integer_in(hr / reg)}

    data = _cache(cfg).fetch(F.a, "info", {"dps": cfg.dps}, compute)
    return {k: computed(v) for k, v in data.items()}, ()


def _cache(cfg):
    return ResultCache(cfg.cache_dir, enabled=cfg.use_cache)


def cmd_field_classgroup(args, cfg):
    F = _field(args, cfg)

    def compute():
        cg = _class_group(F, cfg)
        return {"ell": F.ell, "h": cg.h, "invariants": cg.invariants, "factor_base_size": len(cg.fb),
                "relations": len(cg.relations), "descent_steps": len(cg.descent),
                "two_rank": cg.p_rank(2), "three_rank": cg.p_rank(3)}

    data = _cache(cfg).fetch(F.a, "classgroup", {"seed": cfg.seed, "dps": cfg.dps}, compute)
    return {k: computed(v) for k, v in data.items()}, ()


def cmd_field_rayclass(args, cfg):
    from .numfield.rayclass import ray_class_3rank

    F = _field(args, cfg)

    def compute():
        rc = ray_class_3rank(F, _class_group(F, cfg), include_ell=args.include_ell,
                             three_exponent=args.three_exponent)
        return {"ell": F.ell, "modulus": rc.modulus, "rank3": rc.rank3, "invariants": rc.invariants,
                "order": rc.order, "residue_structure": rc.residue_structure,
                "unit_image_order": rc.unit_image_order, "cardinality_check": rc.cardinality_check}

    params = {"seed": cfg.seed, "ell": args.include_ell, "c": args.three_exponent}
    data = _cache(cfg).fetch(F.a, "rayclass", params, compute)
    return {k: computed(v) for k, v in data.items()}, ()


def cmd_field_a4count(args, cfg):
    from .numfield.selmer2 import count_A4_extensions, unramified_quadratic_extensions

    F = _field(args, cfg)

    def compute():
        cg = _class_group(F, cfg)
        quad = unramified_quadratic_extensions(F, cg)
        return {"ell": F.ell, "two_rank": cg.p_rank(2), "quadratic_extensions": len(quad),
                "A4_extensions": count_A4_extensions(F, cg)}

    data = _cache(cfg).fetch(F.a, "a4count", {"seed": cfg.seed}, compute)
    return {k: computed(v) for k, v in data.items()}, ()


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_modrep(args, cfg):
    if args.from_classgroup:
        from .numfield.classgroup import class_group_action

        key, _, val = args.from_classgroup.partition("=")
        if key not in ("a", "ell") or not val.lstrip("-").isdigit():
            raise ValueError("--from-classgroup expects a=<a> or ell=<l>")
        args.a, args.ell = (int(val), None) if key == "a" else (None, int(val))
        T = class_group_action(_class_group(_field(args, cfg), cfg), args.p)
    elif args.matrix:
        T = _read_json(args.matrix) if os.path.exists(args.matrix) else json.loads(args.matrix)
    else:
        raise ValueError("give --matrix or --from-classgroup")
    dec = decompose(CyclicActionModule(args.p, T))
    res = {k: computed(v) for k, v in asdict(dec).items()}
    res["matrix"] = computed(T)
    return res, ()


def cmd_cohomo_tame(args, cfg):
    d = cohomo.shape_datum(args.shape, args.v, args.p, args.f)
    h0, h1, h2 = cohomo.dims(d)
    res = {"shape": computed(args.shape), "h0": computed(h0), "h1": computed(h1), "h2": computed(h2)}
    if args.shape == "ell-unipotent":
        res["unramified_dim"] = computed(len(cohomo.h1_unramified(d)))
    return res, ()


def _aux_spec(text):
    """Auxiliary place as W:c3, V:nice:P, c3:W or nice:V:P."""
    parts = text.split(":")
    if parts and parts[0].isdigit() and len(parts) >= 2:
        parts = [parts[1], parts[0]] + parts[2:]
    kind, nums = parts[0], parts[1:]
    try:
        nums = [int(x) for x in nums]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad auxiliary place {text!r}") from None
    if kind == "c3" and len(nums) == 1:
        return kind, nums[0], 3
    if kind == "nice" and len(nums) == 2:
        return kind, nums[0], nums[1]
    raise argparse.ArgumentTypeError("auxiliary places look like W:c3 or V:nice:P")


def cmd_selmer_ledger(args, cfg):
    wild = fixture_load("wild_place_3", cfg.fixture_dir)
    led = selmer.minimal_ledger(args.ell, wild)
    for kind, v, p in args.add or ():
        led = selmer.add_auxiliary(led, kind, v, p)
    entries = []
    for e in led.entries:
        tag = from_fixture if e.provenance == selmer.FIXTURE else computed
        entries.append({"label": e.label, "dim_N": tag(e.dim_N), "dim_h0": tag(e.dim_h0),
                        "dim_h0_dual": tag(e.dim_h0_dual)})
    res = {"entries": entries, "global_h0": computed(led.global_h0), "global_h0_dual": computed(led.global_h0_dual),
           "wiles_difference": computed(selmer.wiles_difference(led)), "status": computed(selmer.balance_status(led))}
    return res, (wild,)


def cmd_selmer_scan(args, cfg):
    fx = fixture_load("levelraising_349", cfg.fixture_dir) if args.ell == 349 else None
    paper = tuple(fx["aux_primes"]) if fx else ()
    F = _field(args, cfg)
    scan = selmer.aux_prime_scan(F, args.bound, paper)
    res = {"tested": computed(scan.tested), "passed": computed(scan.passed), "fraction": computed(scan.fraction),
           "passing_primes": computed(scan.primes)}
    if fx:
        res["paper_primes"] = from_fixture(list(paper))
        res["paper_primes_passing"] = computed({str(k): v for k, v in scan.paper_status().items()})
    return res, (fx,) if fx else ()


def cmd_deform_check(args, cfg):
    data = _read_json(args.input)
    p = data.get("p", 3)
    f = data.get("f", 1)
    R = WittRing(p, args.level, f)
    sig = deform.MatrixModPn(R, tuple(x for row in data["sigma"] for x in row))
    tau = deform.MatrixModPn(R, tuple(x for row in data["tau"] for x in row))
    v = data["v"]
    dfm = deform.LocalDeformation(sig, tau, v, args.klass)
    checker = {"ell": lambda: deform.check_C_ell(dfm, v), "nice": lambda: deform.check_nice(dfm, v, p),
               "c3": lambda: deform.check_c3(dfm, v)}[args.klass]
    try:
        checker()
        member, reason = True, ""
    except deform.WrongShape as exc:
        member, reason = False, str(exc)
    return {"member": computed(member), "reason": computed(reason), "det": computed(list(sig.det()))}, ()


def _read_coeffs(path):
    if os.path.exists(path):
        with open(path) as fh:
            text = fh.read()
    else:
        text = path
    text = text.strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    return [int(x) for x in text.replace(",", " ").split()]


def cmd_powser_prepare(args, cfg):
    N = args.N or cfg.padic_N
    M = args.M or cfg.t_M
    F = powser.TruncatedSeries(args.p, N, M, _read_coeffs(args.coeffs))
    pf = powser.weierstrass_prepare(F)
    return {"mu": computed(pf.mu), "unit": computed(pf.unit.int_coeffs()),
            "distinguished": computed(pf.distinguished_ints()), "degree": computed(pf.degree)}, ()


def cmd_powser_classify(args, cfg):
    h = _read_coeffs(args.h)
    c = powser.classify_ring(args.mu, h, args.p)
    return {k: computed(v) for k, v in c.to_dict().items()}, ()


def cmd_reproduce(args, cfg):
    from .reproduce import CRITERIA, run_all

    only = None if args.all or not args.criterion else args.criterion
    outcomes = run_all(cfg.seed, only)
    for o in outcomes:
        log.info(o.line())
    res = {f"criterion_{o.number}": computed({"name": o.name, "passed": o.passed, "detail": o.detail})
           for o in outcomes}
    res["all_passed"] = computed(all(o.passed for o in outcomes))
    res["count"] = computed(len(outcomes) if only else len(CRITERIA))
    return res, tuple(fixture_load(n, cfg.fixture_dir) for n in available(cfg.fixture_dir))


def cmd_fixtures(args, cfg):
    if args.name:
        fx = fixture_load(args.name, cfg.fixture_dir)
        return {"name": fx.name, "citation": fx.citation,
                "payload": {k: from_fixture(v) for k, v in fx.payload.items()}}, (fx,)
    return {"available": computed(available(cfg.fixture_dir))}, ()


# ------------------------------------------------------------------- parser

def _field_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ell", type=int, help="Shanks prime l")
    g.add_argument("--a", type=int, help="Shanks parameter a")


def _common():
    """Options accepted both before and after the subcommand."""
    c = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    c.add_argument("--config", default=S, help="JSON config file")
    c.add_argument("--seed", type=int, default=S)
    c.add_argument("--float-bits", type=int, default=S)
    c.add_argument("--format", choices=["json", "table"], default=S)
    c.add_argument("--cache-dir", default=S)
    c.add_argument("--fixture-dir", default=S)
    c.add_argument("--no-cache", action="store_true", default=S)
    c.add_argument("--output", default=S, help="write the JSON artifact here instead of stdout")
    c.add_argument("-v", "--verbose", action="count", default=S)
    return c


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="shankslift", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="group", required=True)

    sh = sub.add_parser("shanks").add_subparsers(dest="cmd", required=True)
    p = sh.add_parser("list", parents=[common])
    p.add_argument("--max-a", type=int, default=407)
    p.set_defaults(func=cmd_shanks_list)

    fd = sub.add_parser("field").add_subparsers(dest="cmd", required=True)
    for name, func in (("info", cmd_field_info), ("classgroup", cmd_field_classgroup),
                       ("a4count", cmd_field_a4count)):
        p = fd.add_parser(name, parents=[common])
        _field_args(p)
        p.set_defaults(func=func)
    p = fd.add_parser("rayclass", parents=[common])
    _field_args(p)
    p.add_argument("--include-ell", action="store_true")
    p.add_argument("--three-exponent", type=int)
    p.set_defaults(func=cmd_field_rayclass)

    mr = sub.add_parser("modrep").add_subparsers(dest="cmd", required=True)
    p = mr.add_parser("decompose", parents=[common])
    p.add_argument("--p", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="JSON matrix, inline or as a file")
    src.add_argument("--from-classgroup", help="a=<a> or ell=<l>: sigma acting on Cl/p")
    p.set_defaults(func=cmd_modrep)

    co = sub.add_parser("cohomo").add_subparsers(dest="cmd", required=True)
    p = co.add_parser("tame", parents=[common])
    p.add_argument("--shape", choices=["nice", "c3", "ell-unipotent"], required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--f", type=int, default=1)
    p.set_defaults(func=cmd_cohomo_tame)

    se = sub.add_parser("selmer").add_subparsers(dest="cmd", required=True)
    p = se.add_parser("ledger", parents=[common])
    p.add_argument("--ell", type=int, default=7489)
    p.add_argument("--aux", "--add", dest="add", type=_aux_spec, action="append", help="W:c3 or V:nice:P")
    p.set_defaults(func=cmd_selmer_ledger)
    p = se.add_parser("scan", parents=[common])
    _field_args(p)
    p.add_argument("--bound", type=int, default=400)
    p.set_defaults(func=cmd_selmer_scan)

    de = sub.add_parser("deform").add_subparsers(dest="cmd", required=True)
    p = de.add_parser("check", parents=[common])
    p.add_argument("--class", dest="klass", choices=["ell", "nice", "c3"], required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--input", required=True, help='JSON file {"sigma": [[..]], "tau": [[..]], "v": .., "p": ..}')
    p.set_defaults(func=cmd_deform_check)

    ps = sub.add_parser("powser").add_subparsers(dest="cmd", required=True)
    p = ps.add_parser("prepare", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--coeffs", required=True, help="file or inline list of coefficients, low degree first")
    p.set_defaults(func=cmd_powser_prepare)
    p = ps.add_parser("classify", parents=[common])
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--h", required=True, help="coefficients of h, low degree first")
    p.add_argument("--p", type=int, default=3)
    p.set_defaults(func=cmd_powser_classify)

    p = sub.add_parser("reproduce", parents=[common])
    p.add_argument("--all", action="store_true")
    p.add_argument("--criterion", type=int, action="append", choices=range(1, 13))
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("fixtures", parents=[common])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_fixtures)
    return parser


_DEFAULTS = {"config": None, "seed": None, "float_bits": None, "format": None, "cache_dir": None,
             "fixture_dir": None, "no_cache": False, "output": None, "verbose": 0}


def make_config(args):
    raw = load_config(args.config)
    overrides = {"seed": args.seed, "float_bits": args.float_bits, "format": args.format,
                 "cache_dir": args.cache_dir or os.environ.get(CACHE_ENV), "fixture_dir": args.fixture_dir}
    for k, v in overrides.items():
        if v is not None:
            raw[k] = v
    cfg = RunConfig(**raw)
    cfg.use_cache = not args.no_cache
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        cfg = make_config(args)
        result, fixtures = args.func(args, cfg)
        doc = envelope(f"{args.group} {getattr(args, 'cmd', '') or ''}".strip(), cfg, result,
                       [f for f in fixtures if isinstance(f, Fixture)])
    except (FixtureMissing, FixtureInvalid, ValueError, ArithmeticError, KeyError, OSError) as exc:
        err = {"schema_version": SCHEMA_VERSION, "error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(json.dumps(err, sort_keys=True) + "\n")
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            emit(doc, cfg, fh)
    else:
        emit(doc, cfg)
    if args.group == "reproduce" and not doc["result"]["all_passed"]["value"]:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
