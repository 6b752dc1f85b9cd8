"""Command-line front end: ``qcots {keygen,sign,verify,attack,simulate,analyze}``.

Exit status is 0 on success, 1 on a negative result (rejected signature,
failed attack, invalid parameter row) and 2 on unusable input or output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import envelope
from .analysis import CSV_COLUMNS, isd_expected_cost, select_threshold
from .attack import AttackConfig, recover_key
from .envelope import EnvelopeError
from .experiment import ExperimentSpec, histogram, histogram_csv, run_trials, theoretical, total_variation, trials_csv
from .isd import IsdConfig
from .presets import PRESETS, PUBLISHED, THRESHOLDS
from .ring import ParameterError
from .scheme import ParameterSet, SigningKey, keygen, sign, verify

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load_params(spec: str) -> ParameterSet:
    if spec in PRESETS:
        return PRESETS[spec]
    try:
        doc = json.loads(Path(spec).read_text())
        return ParameterSet(doc["p"], doc["w_e"], doc["w_y"], doc["w_c"], doc.get("h_seed", 0))
    except FileNotFoundError:
        raise InputError(f"{spec!r} is neither a preset ({', '.join(PRESETS)}) nor a file") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad parameter file {spec}: {exc}") from exc


def write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def read_message(args) -> bytes:
    if args.message_file is not None:
        try:
            return Path(args.message_file).read_bytes()
        except OSError as exc:
            raise InputError(str(exc)) from exc
    return args.message.encode()


def _load(path, kind):
    try:
        return envelope.load(path, kind)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except EnvelopeError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_keygen(args) -> int:
    params = load_params(args.params)
    sk, vk = keygen(params, np.random.default_rng(args.seed))
    try:
        envelope.save(f"{args.out}.sk", sk, params)
        envelope.save(f"{args.out}.pk", vk, params)
    except OSError as exc:
        raise InputError(f"cannot write key files: {exc}") from exc
    print(f"wrote {args.out}.sk and {args.out}.pk")
    return EXIT_OK


def cmd_sign(args) -> int:
    sk, params = _load(args.key, "signing-key")
    sig = sign(read_message(args), sk, params, np.random.default_rng(args.seed))
    write_output(args.out, envelope.dumps(sig, params))
    return EXIT_OK


def cmd_verify(args) -> int:
    vk, params = _load(args.pub, "verification-key")
    sig, sig_params = _load(args.sig, "signature")
    if sig_params != params:
        raise InputError("signature and key were made for different parameter sets")
    ok = verify(read_message(args), vk, sig, params)
    print("accepted" if ok else "rejected")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _threshold(arg: str, params: ParameterSet, j: int, w_bar: int) -> int:
    if arg == "auto":
        return select_threshold(params, j, w_bar)[0]
    try:
        return int(arg)
    except ValueError:
        raise InputError(f"--b must be an integer or 'auto', got {arg!r}") from None


def cmd_attack(args) -> int:
    vk, params = _load(args.pub, "verification-key")
    sig, sig_params = _load(args.sig, "signature")
    if sig_params != params:
        raise InputError("signature and key were made for different parameter sets")
    b = _threshold(args.b, params, args.j, args.w_bar)
    cfg = AttackConfig(b, IsdConfig(args.j, args.max_iterations, args.seed), args.w_bar)
    try:
        outcome = recover_key(sig, vk, params, cfg)
    except ParameterError as exc:
        raise InputError(str(exc)) from exc
    record = {"b": b, **outcome.to_record()}
    if args.expect is not None:
        planted, _ = _load(args.expect, "signing-key")
        record["matches_expected"] = outcome.recovered_key == planted.e
    write_output(args.out, json.dumps(record, indent=1) + "\n")
    if outcome.success and args.key_out is not None:
        try:
            envelope.save(args.key_out, SigningKey(outcome.recovered_key), params)
        except OSError as exc:
            raise InputError(f"cannot write {args.key_out}: {exc}") from exc
    return EXIT_OK if outcome.success else EXIT_NEGATIVE


def cmd_simulate(args) -> int:
    params = load_params(args.params)
    b = _threshold(args.b, params, args.j, args.w_bar)
    spec = ExperimentSpec(params, args.trials, b, args.seed, args.j, args.w_bar, args.isd, args.max_iterations)
    records = run_trials(spec, args.threads)
    theory = theoretical(spec)
    write_output(args.out, trials_csv(records, timing=args.timing))
    hist_path = args.hist_out or (f"{args.out}.hist.csv" if args.out not in (None, "-") else None)
    if hist_path:
        write_output(hist_path, histogram_csv(records, theory))
    emp = histogram(records)
    summary = {
        "trials": args.trials, "b": b,
        "empirical_p_zero": float(emp[0]) if len(emp) else 0.0,
        "model_p_zero": theory[0],
        "total_variation": total_variation(emp, theory),
    }
    print(json.dumps(summary), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def _analysis_inputs(path: str | None):
    if path is None:
        return [{"name": name, "p": r[0], "w_e": r[1], "w_y": r[2], "w_c": r[3], "b": r[4]}
                for name, r in PUBLISHED.items()]
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read parameter list {path}: {exc}") from exc
    if not isinstance(doc, list):
        raise InputError("parameter list must be a JSON array")
    return doc


def cmd_analyze(args) -> int:
    fields = ("name",) + CSV_COLUMNS + ("error",)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    status = EXIT_OK
    for i, entry in enumerate(_analysis_inputs(args.input)):
        name = entry.get("name", f"row{i + 1}") if isinstance(entry, dict) else f"row{i + 1}"
        try:
            params = ParameterSet(entry["p"], entry["w_e"], entry["w_y"], entry["w_c"], entry.get("h_seed", 0))
            b = entry.get("b", "auto")
            b = select_threshold(params, args.j, args.w_bar)[0] if b == "auto" else int(b)
            row = isd_expected_cost(params, b, args.j, args.w_bar).csv_row()
            writer.writerow({"name": name, **row, "error": ""})
        except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
            writer.writerow({"name": name, "error": f"{type(exc).__name__}: {exc}"})
            status = EXIT_NEGATIVE
    write_output(args.out, buf.getvalue())
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def msg_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--message", "-m")
        g.add_argument("--message-file")

    def isd_args(p):
        p.add_argument("--b", default="auto", help="threshold, or 'auto' (default)")
        p.add_argument("--j", type=int, default=2)
        p.add_argument("--w-bar", type=int, default=40)
        p.add_argument("--max-iterations", type=int, default=100_000)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--params", required=True, help=f"preset ({', '.join(PRESETS)}) or JSON file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="path prefix; writes PREFIX.sk and PREFIX.pk")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sign", help="sign a message")
    p.add_argument("--key", required=True)
    msg_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature")
    p.add_argument("--pub", required=True)
    p.add_argument("--sig", required=True)
    msg_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("attack", help="recover the signing key from one signature")
    p.add_argument("--pub", required=True)
    p.add_argument("--sig", required=True)
    isd_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="outcome record (JSON); stdout by default")
    p.add_argument("--key-out", help="write the recovered signing key here")
    p.add_argument("--expect", help="planted signing key to compare against")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("simulate", help="Monte Carlo residual-weight distribution")
    p.add_argument("--params", required=True)
    isd_args(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--isd", action="store_true", help="also finish each trial with ISD")
    p.add_argument("--timing", action="store_true", help="add wall_clock_ms (breaks byte-reproducibility)")
    p.add_argument("--out", help="per-trial CSV; stdout by default")
    p.add_argument("--hist-out", help="delta,empirical,theoretical CSV (default OUT.hist.csv)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="closed-form security report per parameter set")
    p.add_argument("input", nargs="?", help="JSON list of parameter sets; default: published instances")
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--w-bar", type=int, default=40)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParameterError) as exc:
        print(f"qcots {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
