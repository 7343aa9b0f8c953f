"""Command-line front end: ``toricpair analyze|verify|corpus|oracle``.

Reports are JSON with sorted keys, so a fixed input and seed always give
the same bytes.  Rationals are written as "p/q" strings and an infinite
mld as "-inf".  Exit codes: 0 ok, 1 verification failure, 2 invalid input,
3 a discrepancy was requested on a pair that is not Q-Gorenstein.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .corpus import generate
from .invariants import (
    MldKind,
    NotQGorensteinError,
    ToricPair,
    brute_force_mld,
    classify,
    format_fraction,
    make_pair,
    mld,
)
from .nash import (
    Flavor,
    _nash_data,
    check_all_mld_witnesses_lognash,
    check_lognash_computes_mld,
    check_negative_lognash,
    completeness_bound,
    log_nash,
    z_nash,
)
from .newton import InvalidIdealError
from .oracles import brute_force_nash
from .resolution import ResolutionBudgetError, eq1_crosscheck, essential_overapprox, sample_log_resolution

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NOT_QG = 0, 1, 2, 3
DEFAULT_SAMPLES = 5
DEFAULT_SEED = 0
NOT_QG = "skipped: not q-gorenstein"

PASS, FAIL, WARN = "pass", "fail", "warning"


class InputError(ValueError):
    """Malformed pair description; the message names the violated constraint."""


@dataclass(frozen=True)
class PairSpec:
    dim: int
    ideal_exponents: tuple
    cone_rays: tuple | None = None
    options: dict = field(default_factory=dict)

    @property
    def bound(self) -> int | None:
        return self.options.get("bound")

    @property
    def samples(self) -> int:
        return self.options.get("samples", DEFAULT_SAMPLES)

    @property
    def seed(self) -> int:
        return self.options.get("seed", DEFAULT_SEED)

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "dim": self.dim,
            "ideal_exponents": [list(a) for a in self.ideal_exponents],
            "options": {"samples": self.samples, "seed": self.seed},
        }
        if self.bound is not None:
            out["options"]["bound"] = self.bound
        if self.cone_rays is not None:
            out["cone_rays"] = [list(r) for r in self.cone_rays]
        return out

    def pair(self) -> ToricPair:
        try:
            return make_pair(self.ideal_exponents, self.cone_rays, self.dim)
        except (InvalidIdealError, ValueError) as exc:
            raise InputError(str(exc)) from exc


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer")
    return x


def _vectors(raw, dim: int, what: str) -> tuple:
    if not isinstance(raw, list):
        raise InputError(f"{what} must be a list of integer vectors")
    out = []
    for v in raw:
        if not isinstance(v, list) or len(v) != dim:
            raise InputError(f"{what}: every vector must have length dim = {dim}")
        out.append(tuple(_int(x, what) for x in v))
    return tuple(out)


def parse_spec(raw: Any) -> PairSpec:
    if not isinstance(raw, dict):
        raise InputError("input must be a JSON object")
    unknown = set(raw) - {"dim", "cone_rays", "ideal_exponents", "options"}
    if unknown:
        raise InputError(f"unknown fields: {sorted(unknown)}")
    if "dim" not in raw or "ideal_exponents" not in raw:
        raise InputError("dim and ideal_exponents are required")
    dim = _int(raw["dim"], "dim")
    if dim < 2:
        raise InputError("dim must be >= 2")
    exps = _vectors(raw["ideal_exponents"], dim, "ideal_exponents")
    if not exps:
        raise InputError("ideal_exponents must be nonempty")
    rays = raw.get("cone_rays")
    rays = None if rays is None else _vectors(rays, dim, "cone_rays")
    opts = raw.get("options") or {}
    if not isinstance(opts, dict):
        raise InputError("options must be an object")
    unknown = set(opts) - {"bound", "samples", "seed"}
    if unknown:
        raise InputError(f"unknown options: {sorted(unknown)}")
    opts = {k: _int(v, k) for k, v in opts.items() if v is not None}
    if opts.get("bound", 1) < 1:
        raise InputError("bound must be >= 1")
    if opts.get("samples", 1) < 1:
        raise InputError("samples must be >= 1")
    return PairSpec(dim, exps, rays, opts)


def cyclic_spec(d: int) -> PairSpec:
    """Ideal (x^d y, y^d z, z^d x) on A^3."""
    if d < 1:
        raise InputError("d must be >= 1")
    return PairSpec(3, ((d, 1, 0), (0, d, 1), (1, 0, d)))


def _sorted_vectors(vs) -> list[list[int]]:
    return [list(v) for v in sorted(vs)]


def mld_box(pair: ToricPair) -> int:
    """B* + 1, where B* bounds every Hilbert-basis point of the dual fan."""
    hb = [v for pts in _nash_data(pair).cone_hilbert.values() for v in pts]
    return max(max(abs(x) for x in v) for v in hb) + 1


def nash_box(pair: ToricPair, bound: int | None) -> int:
    return (completeness_bound(pair) if bound is None else bound) + 1


# ---------------------------------------------------------------- analyze

def _analysis(spec: PairSpec, pair: ToricPair) -> tuple[dict, int]:
    report: dict[str, Any] = {
        "input": spec.to_json(),
        "sigma": pair.sigma.to_json(),
        "dual_fan": {
            "cones": pair.dual.to_json(),
            "rays": _sorted_vectors(pair.dual.rays),
        },
    }
    zs, ls = z_nash(pair, spec.bound), log_nash(pair, spec.bound)
    for key, s in (("z_nash", zs), ("log_nash", ls)):
        report[key] = {**s.to_json(), "status": "certified" if s.certified else "uncertified"}
    warnings = [f"{s.flavor.value} set is uncertified at bound {s.enumeration_bound}"
                for s in (zs, ls) if not s.certified]
    code = EXIT_OK
    if pair.qg is None:
        report["qgorenstein"] = "not-q-gorenstein"
        for key in ("mld", "classification", "discrepancies"):
            report[key] = NOT_QG
        code = EXIT_NOT_QG
    else:
        report["qgorenstein"] = pair.qg.to_json()
        report["mld"] = mld(pair).to_json()
        report["classification"] = classify(pair).to_json()
        report["discrepancies"] = {
            ",".join(map(str, v)): format_fraction(pair.discrepancy(v))
            for v in sorted(set(pair.dual.rays) | set(zs) | set(ls))
        }
    report["warnings"] = warnings
    return report, code


def cmd_analyze(spec: PairSpec) -> tuple[dict, int]:
    return _analysis(spec, spec.pair())


# ----------------------------------------------------------------- verify

def _status(ok: bool, soft: bool) -> str:
    return PASS if ok else (WARN if soft else FAIL)


def _checks(spec: PairSpec, pair: ToricPair) -> dict[str, dict]:
    checks: dict[str, dict] = {}
    zs, ls = z_nash(pair, spec.bound), log_nash(pair, spec.bound)
    # with an uncertified bound the Nash sets may be incomplete, so their checks only warn
    soft = not (zs.certified and ls.certified)

    m = mld(pair)
    box = mld_box(pair)
    bf = brute_force_mld(pair, box)
    agree = m.kind is bf.kind and (m.kind is MldKind.MINUS_INFINITY or m.value == bf.value)
    checks["brute_force_mld"] = {"status": _status(agree, False), "box": box,
                                 "fast": m.to_json(), "brute": bf.to_json()}

    for s in (zs, ls):
        b = s.enumeration_bound
        brute = {v for v in brute_force_nash(pair, b + 1, s.flavor) if max(map(abs, v)) <= b}
        diff = sorted(brute.symmetric_difference(s.members))
        checks[f"{s.flavor.value.replace('-', '_')}_oracle"] = {
            "status": _status(not diff, soft), "box": b + 1, "difference": _sorted_vectors(diff)}

    extra = sorted(set(zs) - set(ls))
    checks["z_nash_in_log_nash"] = {"status": _status(not extra, soft),
                                    "missing": _sorted_vectors(extra)}

    try:
        ess = essential_overapprox(pair, spec.samples, seed=spec.seed)
        missing = sorted(set(ls) - ess)
        checks["log_nash_in_essential"] = {"status": _status(not missing, soft),
                                           "samples": spec.samples,
                                           "missing": _sorted_vectors(missing)}
        bad = []
        for i in range(max(spec.samples, 3)):
            model = sample_log_resolution(pair, seed=spec.seed + i, extra=1)
            bad += [r for r in model.fan.rays if not eq1_crosscheck(model, r)]
        checks["eq1_crosscheck"] = {"status": _status(not bad, False),
                                    "seeds": max(spec.samples, 3),
                                    "failing_rays": _sorted_vectors(set(bad))}
    except ResolutionBudgetError as exc:
        for name in ("log_nash_in_essential", "eq1_crosscheck"):
            checks[name] = {"status": FAIL, "error": str(exc)}

    if m.is_finite:
        v = check_lognash_computes_mld(pair)
        checks["computes_mld"] = {"status": _status(v.ok, soft), **v.to_json()}
        checks["negative_lognash"] = {"status": "skipped: mld is finite"}
        # advisory: fails on log-canonical pairs where a vanishes on a whole cone
        r = check_all_mld_witnesses_lognash(pair, nash_box(pair, spec.bound))
        checks["mld_witnesses_lognash"] = {"status": _status(r.ok, True), "advisory": True,
                                           **r.to_json()}
    else:
        v = check_negative_lognash(pair)
        checks["computes_mld"] = {"status": "skipped: mld is -inf"}
        checks["negative_lognash"] = {"status": _status(v.ok, soft), **v.to_json()}
        checks["mld_witnesses_lognash"] = {"status": "skipped: mld is -inf"}
    return checks


def cmd_verify(spec: PairSpec) -> tuple[dict, int]:
    pair = spec.pair()
    report, code = _analysis(spec, pair)
    if pair.qg is None:
        report["checks"] = NOT_QG
        return report, code
    checks = _checks(spec, pair)
    report["checks"] = checks
    failed = [k for k in sorted(checks) if checks[k]["status"] == FAIL]
    report["warnings"] += [f"check {k} did not pass" for k in sorted(checks)
                           if checks[k]["status"] == WARN]
    report["verdict"] = {"ok": not failed, "first_failure": failed[0] if failed else None,
                         "warning_count": len(report["warnings"])}
    return report, EXIT_VERIFY if failed else EXIT_OK


# ----------------------------------------------------------------- oracle

def cmd_oracle(spec: PairSpec) -> tuple[dict, int]:
    pair = spec.pair()
    nbox = nash_box(pair, spec.bound) if spec.bound is None else spec.bound
    report: dict[str, Any] = {
        "input": spec.to_json(),
        "nash_box": nbox,
        "z_nash": _sorted_vectors(brute_force_nash(pair, nbox, Flavor.Z_NASH)),
        "log_nash": _sorted_vectors(brute_force_nash(pair, nbox, Flavor.LOG_NASH)),
    }
    if pair.qg is None:
        report["mld"] = NOT_QG
        return report, EXIT_NOT_QG
    mbox = mld_box(pair) if spec.bound is None else spec.bound
    report["mld_box"] = mbox
    report["mld"] = brute_force_mld(pair, mbox).to_json()
    return report, EXIT_OK


# ----------------------------------------------------------------- corpus

def _verify_instance(raw: dict) -> tuple[str, str | None]:
    report, code = cmd_verify(parse_spec(raw))
    if code != EXIT_OK:
        return FAIL, report["verdict"]["first_failure"] if "verdict" in report else "not-q-gorenstein"
    return (WARN if report["warnings"] else PASS), None


def cmd_corpus(n_instances: int, dim: int, max_exp: int, seed: int,
               samples: int = DEFAULT_SAMPLES, workers: int | None = None) -> tuple[dict, int]:
    if dim not in (2, 3):
        raise InputError("corpus dim must be 2 or 3")
    if n_instances < 0 or max_exp < 1:
        raise InputError("need n_instances >= 0 and max_exp >= 1")
    instances = generate(n_instances, dim, max_exp, seed)
    raws = []
    for inst in instances:
        raw = inst.to_json()
        raw["options"] = {"samples": samples, "seed": inst.seed}
        raws.append(raw)
    if workers == 1:
        results = list(map(_verify_instance, raws))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_instance, raws, chunksize=4))
    tallies = {PASS: 0, FAIL: 0, WARN: 0}
    failures = []
    for inst, raw, (status, check) in zip(instances, raws, results):
        tallies[status] += 1
        if status == FAIL:
            failures.append({"index": inst.index, "seed": inst.seed, "check": check, "input": raw})
    summary = {
        "parameters": {"n_instances": n_instances, "dim": dim, "max_exp": max_exp, "seed": seed,
                       "samples": samples},
        "tallies": {"pass": tallies[PASS], "fail": tallies[FAIL], "warning": tallies[WARN]},
        "failures": failures,
    }
    return summary, EXIT_VERIFY if failures else EXIT_OK


# ----------------------------------------------------------------- output

def render_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _text_lines(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text_lines(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return lines
    if isinstance(obj, list):
        return [line for item in obj for line in _text_lines(item, indent)]
    return [f"{pad}{_flat(obj)}"]


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(
        not isinstance(x, dict) and (not isinstance(x, list) or all(isinstance(y, int) for y in x))
        for x in v)


def _flat(v) -> str:
    if isinstance(v, list):
        return " ".join("(" + ",".join(map(str, x)) + ")" if isinstance(x, list) else str(x)
                        for x in v) or "none"
    if v is None:
        return "none"
    return str(v).lower() if isinstance(v, bool) else str(v)


def render_text(obj: Any) -> str:
    return "\n".join(_text_lines(obj)) + "\n"


# ------------------------------------------------------------------- main

def _load_spec(args) -> PairSpec:
    if args.d is not None:
        spec = cyclic_spec(args.d)
    else:
        try:
            if args.input in (None, "-"):
                text = sys.stdin.read()
            else:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            raw = json.loads(text)
        except OSError as exc:
            raise InputError(f"cannot read input: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"input is not valid JSON: {exc.msg}") from exc
        spec = parse_spec(raw)
    opts = dict(spec.options)
    for key in ("bound", "samples", "seed"):
        value = getattr(args, key)
        if value is not None:
            opts[key] = value
    return parse_spec({**spec.to_json(), "options": opts})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricpair", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair_input: bool = True):
        if pair_input:
            p.add_argument("--input", metavar="FILE", help="pair description (JSON); '-' for stdin")
            p.add_argument("--d", type=int, help="use the ideal (x^d y, y^d z, z^d x) on A^3")
            p.add_argument("--bound", type=int, help="enumeration bound for Nash sets")
        p.add_argument("--samples", type=int, help="number of sampled resolutions")
        p.add_argument("--seed", type=int, help="random seed")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")

    common(sub.add_parser("analyze", help="compute invariants of a pair"))
    common(sub.add_parser("verify", help="analyze and run every cross-check"))
    common(sub.add_parser("oracle", help="brute-force mld and Nash sets"))
    corpus = sub.add_parser("corpus", help="verify a generated corpus of random pairs")
    corpus.add_argument("n_instances", type=int)
    corpus.add_argument("dim", type=int)
    corpus.add_argument("max_exp", type=int)
    common(corpus, pair_input=False)
    corpus.add_argument("--workers", type=int, default=None, help="worker processes (1 = serial)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "corpus":
            result, code = cmd_corpus(args.n_instances, args.dim, args.max_exp,
                                      DEFAULT_SEED if args.seed is None else args.seed,
                                      DEFAULT_SAMPLES if args.samples is None else args.samples,
                                      args.workers)
        else:
            spec = _load_spec(args)
            command = {"analyze": cmd_analyze, "verify": cmd_verify, "oracle": cmd_oracle}
            result, code = command[args.command](spec)
    except InputError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotQGorensteinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_QG
    if args.timing:
        result["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    out = render_json(result) if args.format == "json" else render_text(result)
    sys.stdout.write(out)
    if code == EXIT_VERIFY:
        first = result.get("verdict", {}).get("first_failure") if args.command == "verify" else None
        print(f"verification failed: {first or 'see failures'}", file=sys.stderr)
    elif code == EXIT_NOT_QG:
        print("warning: sigma is not Q-Gorenstein; discrepancy results skipped", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
