"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failures, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import traceback
from typing import Sequence

from . import __version__
from .bform import gram, rank
from .cartan import CartanData, CartanError, load_cartan
from .freealg import Element, WindowError, ideal_membership, straighten_single_color
from .kashiwara import IDENTITIES, verify_operator_identity
from .omega import OmegaOp, omega_apply, omega_oracle
from .scalars import Coefficient, ParseError, Scalar
from .schur import s_plus_minus, schur_poly
from .suite import CRITERIA, SuiteConfig, run_suite

try:  # Python 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3

# flags whose values may begin with '-' (e.g. --window -2:2)
_VALUE_FLAGS = {"--window", "--lambda", "--params", "--component", "--k", "--act"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _join_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"window must look like KMIN:KMAX, got {text!r}")
    if lo > hi:
        raise UsageError("window lower end exceeds upper end")
    return lo, hi


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    flat: dict = {}

    def walk(prefix, node):
        for k, v in node.items():
            key = f"{prefix}{k}"
            if isinstance(v, dict):
                walk(key + ".", v)
            else:
                flat[key] = v

    walk("", raw)
    return flat


def _cartan(args, cfg: dict) -> CartanData:
    if getattr(args, "cartan", None):
        text = args.cartan.strip().upper()
        try:
            return load_cartan(text[0], int(text[1:]))
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad --cartan value {args.cartan!r}: {exc}")
    label = cfg.get("cartan.type", "A")
    rank_ = cfg.get("cartan.rank", 1)
    return load_cartan(str(label), int(rank_))


def _cfg_maxlen(args, cfg: dict, default=None):
    if getattr(args, "maxlen", None) is not None:
        return args.maxlen
    val = cfg.get("maxlen", cfg.get("window.maxlen"))
    return default if val is None else int(val)


def _cfg_window(args, cfg: dict, default=None):
    if getattr(args, "window", None):
        return _window(args.window)
    if "window.kmin" in cfg or "window.kmax" in cfg:
        return int(cfg.get("window.kmin", -2)), int(cfg.get("window.kmax", 2))
    return default


def _element(text: str) -> Element:
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        return Element.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"could not read element JSON: {exc}")


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _gamma(args, cfg):
    val = getattr(args, "gamma", None)
    if val is None:
        val = cfg.get("gamma.specialize")
    if val is None or val is False:
        return None
    if val is True:
        return Scalar.from_int(1)
    return Scalar.parse(str(val))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcurrent", description="Exact computations for the negative current algebra.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="TOML file with keys such as cartan.type, cartan.rank, window.kmin, maxlen")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--cartan", help="type and rank, e.g. A1, A2, C2")

    sp = sub.add_parser("omega", help="apply Omega_psi / Omega_phi to an element")
    common(sp)
    sp.add_argument("--kind", choices=["psi", "phi"], required=True)
    sp.add_argument("--color", type=int, required=True)
    sp.add_argument("--component", type=int, required=True)
    sp.add_argument("--element", required=True, help="element JSON or @file")
    sp.add_argument("--oracle", action="store_true", help="use the direct expansion instead of the recursion")

    sp = sub.add_parser("gram", help="Gram matrix of the bilinear form on a word list")
    common(sp)
    sp.add_argument("--words", required=True, help='JSON list of words, e.g. [[[1,0],[1,0]],[[1,-1],[1,1]]]')
    sp.add_argument("--gamma", help="value of c = gamma^(1/2) to substitute")
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = sub.add_parser("rank", help="rank of a Gram matrix (from words or a saved gram output)")
    common(sp)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--words")
    src.add_argument("--matrix", help="file written by the gram subcommand (JSON or CSV)")
    sp.add_argument("--gamma", help="value of c = gamma^(1/2) to substitute")
    sp.add_argument("--method", choices=["bareiss", "field"], default="bareiss")

    sp = sub.add_parser("verify", help="check an Omega operator identity on all words in a window")
    common(sp)
    sp.add_argument("--identity", choices=sorted(IDENTITIES), required=True)
    sp.add_argument("--params", required=True, help="i,j,m,n")
    sp.add_argument("--window")
    sp.add_argument("--maxlen", type=int)

    sp = sub.add_parser("straighten", help="single-color straightening (optionally with membership check)")
    common(sp)
    sp.add_argument("--element", required=True)
    sp.add_argument("--check", action="store_true", help="also certify that the difference lies in the relation ideal")
    sp.add_argument("--window")

    sp = sub.add_parser("verma", help="reduced imaginary Verma module actions")
    common(sp)
    sp.add_argument("--lambda", dest="lam", required=True, help="comma-separated lambda(h_i)")
    sp.add_argument("--lambda-d", dest="lam_d", type=int, default=0)
    sp.add_argument("--act", help='"x+ i k", "x- i k", "K i" or "D"')
    sp.add_argument("--on", help="element JSON (default: highest-weight vector)")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--singular", action="store_true", help="run a singular-vector check on --on")
    sp.add_argument("--window", help="k window for --singular")

    sp = sub.add_parser("schur", help="Schur polynomial S_k or its current substitution")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--color", type=int)
    sp.add_argument("--sign", choices=["+", "-"])

    sp = sub.add_parser("suite", help="run the acceptance grid and emit a JSON report")
    common(sp)
    sp.add_argument("--window")
    sp.add_argument("--maxlen", type=int)
    sp.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--output", help="write the report to this file as well")
    return p


# ---------------------------------------------------------------------------


def _cmd_omega(args, cfg, out):
    cd = _cartan(args, cfg)
    e = _element(args.element)
    op = OmegaOp(args.kind, args.color, args.component)
    if args.oracle:
        res = Element.zero()
        for (w, ce), x in e.raw().items():
            res = res + omega_oracle(cd, op, w).scale(x, ce)
    else:
        res = omega_apply(cd, op, e)
    _dump(res.to_json(), out)
    return EXIT_OK


def _parse_words(text: str) -> list:
    try:
        data = json.loads(text)
        return [tuple((int(i), int(k)) for i, k in w) for w in data]
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"could not read word list: {exc}")


def _cmd_gram(args, cfg, out):
    cd = _cartan(args, cfg)
    words = _parse_words(args.words)
    G = gram(cd, words)
    gv = _gamma(args, cfg)
    cells = [[str(x.specialize(gv)) if gv is not None else str(x) for x in row] for row in G]
    if args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(cells)
        out.write(buf.getvalue())
    else:
        _dump({"cartan": cd.name(), "words": [[list(l) for l in w] for w in words], "matrix": cells}, out)
    return EXIT_OK


def _read_matrix(path: str) -> list[list[Coefficient]]:
    with open(path) as fh:
        text = fh.read()
    try:
        cells = json.loads(text)["matrix"]
    except (json.JSONDecodeError, KeyError, TypeError):
        cells = [row for row in csv.reader(io.StringIO(text)) if row]
    return [[Coefficient.parse(c) for c in row] for row in cells]


def _cmd_rank(args, cfg, out):
    gv = _gamma(args, cfg)
    if args.matrix:
        G = _read_matrix(args.matrix)
        head = {"source": args.matrix}
    else:
        cd = _cartan(args, cfg)
        G = gram(cd, _parse_words(args.words))
        head = {"cartan": cd.name()}
    r = rank(G, gamma_value=gv, method=args.method)
    _dump({**head, "size": len(G), "rank": r, "gamma": None if gv is None else str(gv)}, out)
    return EXIT_OK


def _cmd_verify(args, cfg, out):
    from .freealg import all_words

    cd = _cartan(args, cfg)
    vals = _ints(args.params)
    if len(vals) != 4:
        raise UsageError("--params needs four integers i,j,m,n")
    window = _cfg_window(args, cfg, (-2, 2))
    maxlen = _cfg_maxlen(args, cfg, 2)
    words = [w for L in range(maxlen + 1) for w in all_words(cd.colors, window, L)]
    rep = verify_operator_identity(cd, args.identity, dict(zip("ijmn", vals)), words)
    _dump(
        {
            "cartan": cd.name(),
            "identity": rep.identity,
            "params": rep.params,
            "window": list(window),
            "maxlen": maxlen,
            "checked": rep.checked,
            "failures": [{"word": w, "difference": d} for w, d in rep.failures],
        },
        out,
    )
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_straighten(args, cfg, out):
    cd = _cartan(args, cfg)
    e = _element(args.element)
    s = straighten_single_color(cd, e)
    report = {"cartan": cd.name(), "result": s.to_json()}
    status = EXIT_OK
    if args.check:
        diff = s - e
        rng = diff.index_range() or (0, 0)
        window = _cfg_window(args, cfg, (rng[0] - 1, rng[1] + 1))
        mem = ideal_membership(cd, diff, window, max(diff.max_length(), 2))
        report["difference_in_ideal"] = mem.member
        report["window"] = list(window)
        status = EXIT_OK if mem.member else EXIT_FAIL
    _dump(report, out)
    return status


def _cmd_verma(args, cfg, out):
    from .verma import (
        HighestWeight,
        VermaVector,
        act_D,
        act_K,
        act_xminus,
        act_xplus,
        reducibility_witness,
        singular_vector_check,
    )

    cd = _cartan(args, cfg)
    hw = HighestWeight(tuple(_ints(args.lam)), args.lam_d)
    if len(hw.lam) != cd.rank:
        raise UsageError(f"--lambda needs {cd.rank} entries for {cd.name()}")
    if args.witness:
        wit = reducibility_witness(cd, hw)
        if wit is None:
            _dump({"cartan": cd.name(), "lambda": list(hw.lam), "witness": None}, out)
        else:
            i, vec, rep = wit
            _dump(
                {
                    "cartan": cd.name(),
                    "lambda": list(hw.lam),
                    "witness": {"color": i, "vector": vec.element.to_json(), "check": rep.summary()},
                },
                out,
            )
        return EXIT_OK
    v = VermaVector(cd, hw, _element(args.on) if args.on else Element.one())
    if args.singular:
        window = _cfg_window(args, cfg, (-3, 3))
        rep = singular_vector_check(v, window)
        _dump(
            {
                "cartan": cd.name(),
                "lambda": list(hw.lam),
                "singular": rep.singular,
                "exact": rep.exact,
                "window": list(rep.window),
                "witnesses": [{"color": i, "component": k, "image": img.element.to_json()} for i, k, img in rep.witnesses],
            },
            out,
        )
        return EXIT_OK
    if not args.act:
        raise UsageError("verma needs one of --act, --witness, --singular")
    parts = args.act.split()
    try:
        if parts[0] in ("x+", "x-") and len(parts) == 3:
            i, k = int(parts[1]), int(parts[2])
            res = (act_xplus if parts[0] == "x+" else act_xminus)(i, k, v)
        elif parts[0] == "K" and len(parts) == 2:
            res = act_K(int(parts[1]), v)
        elif parts[0] == "D" and len(parts) == 1:
            res = act_D(v)
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"cannot parse --act {args.act!r}")
    _dump(res.element.to_json(), out)
    return EXIT_OK


def _cmd_schur(args, cfg, out):
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    if args.color is not None or args.sign is not None:
        if args.color is None or args.sign is None:
            raise UsageError("--color and --sign go together")
        cd = _cartan(args, cfg)
        out.write(str(s_plus_minus(cd, args.color, args.k, args.sign)) + "\n")
    else:
        out.write(str(schur_poly(args.k)) + "\n")
    return EXIT_OK


def _cmd_suite(args, cfg, out):
    types = None
    if args.cartan:
        types = [args.cartan.strip().upper()]
    elif "cartan.type" in cfg:
        types = [f"{cfg['cartan.type']}{cfg.get('cartan.rank', 1)}".upper()]
    window = _cfg_window(args, cfg, None)
    maxlen = _cfg_maxlen(args, cfg)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", SuiteConfig.seed))
    scfg = SuiteConfig(types=types, window=window, maxlen=maxlen, seed=seed)
    only = _ints(args.criteria) if args.criteria else None
    if only and any(n not in CRITERIA for n in only):
        raise UsageError(f"criteria must be among {sorted(CRITERIA)}")
    results = run_suite(scfg, only)
    failures = sum(len(r.failures) for r in results)
    report = {
        "header": {
            "version": __version__,
            "types": types,
            "window": list(window) if window else None,
            "maxlen": maxlen,
            "seed": seed,
            "criteria": only or sorted(CRITERIA),
        },
        "criteria": [
            {
                "number": r.number,
                "title": r.title,
                "passed": r.passed,
                "checked": r.checked,
                "failures": r.failures,
                "notes": r.notes,
            }
            for r in results
        ],
        "failures": failures,
        "passed": all(r.passed for r in results),
    }
    text = json.dumps(report, indent=2) + "\n"
    out.write(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK if report["passed"] else EXIT_FAIL


COMMANDS = {
    "omega": _cmd_omega,
    "gram": _cmd_gram,
    "rank": _cmd_rank,
    "verify": _cmd_verify,
    "straighten": _cmd_straighten,
    "verma": _cmd_verma,
    "schur": _cmd_schur,
    "suite": _cmd_suite,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
        cfg = _load_config(args.config)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (CartanError, ParseError, WindowError, FileNotFoundError, tomllib.TOMLDecodeError) as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error in {argv[:1]}: {type(exc).__name__}: {exc}\n")
        err.write(traceback.format_exc())
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
