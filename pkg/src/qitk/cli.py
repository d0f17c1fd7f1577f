"""Command-line front end. Each subcommand calls the library and formats its result."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import channels as ch
from . import discrimination as dsc
from . import entropy as ent
from . import qubits as qb
from . import teleport as tp
from .bell import paradoxes as px
from .bell import quantum as bq
from .bell import tables as bt
from .bell.polytope import local_membership
from .tensor import ATOL, DenseOperator, PureState, as_operator, from_json, partial_trace, require_density, to_json
from .verify import verify_paper


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str  # "ok" or "error"
    payload: object = None
    human_summary: list[str] = field(default_factory=list)

    @classmethod
    def error(cls, message: str) -> CommandResult:
        return cls("error", {"error": message}, [f"error: {message}"])


def _round(x, digits: int):
    """Recursively convert numpy/complex values to JSON types with ``digits`` significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x) or math.isnan(x):
            return str(x)
        return float(f"{x:.{digits}g}")
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _round(x.real, digits), "im": _round(x.imag, digits)}
    if isinstance(x, np.ndarray):
        return _round(x.tolist(), digits)
    if isinstance(x, dict):
        return {str(k): _round(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v, digits) for v in x]
    return x


def _fmt(x) -> str:
    return json.dumps(_round(x, 6))


# -- input helpers ----------------------------------------------------------

def _load_json_arg(text: str):
    """Inline JSON, or a path to a JSON file."""
    text = text.strip()
    if text[:1] not in "[{":
        path = Path(text)
        if not path.exists():
            raise UsageError(f"not JSON and no such file: {text}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _state_arg(arg: str, tol: float):
    """A registry name (psi-minus, werner:0.5, ...) or a JSON-encoded state."""
    if arg.strip()[:1] in "[{" or Path(arg).suffix == ".json":
        obj = _load_json_arg(arg)
        x = from_json(obj)
    else:
        x = qb.named_state(arg)
    if isinstance(x, PureState):
        return x
    return require_density(x, tol)


def _states_arg(arg: str, tol: float) -> list:
    obj = _load_json_arg(arg)
    if not isinstance(obj, list):
        raise UsageError("--states expects a JSON list of encoded states")
    return [_state_arg(json.dumps(o), tol) if isinstance(o, dict) else _state_arg(o, tol) for o in obj]


def _direction_list(arg: str) -> list[np.ndarray]:
    obj = _load_json_arg(arg)
    dirs = [np.asarray(d, dtype=float) for d in obj]
    if len(dirs) != 4:
        raise UsageError("--settings expects four 3-vectors [a, a', b, b']")
    return dirs


# -- subcommands ------------------------------------------------------------

def cmd_state(args) -> CommandResult:
    x = _state_arg(args.name, args.tol)
    rho = as_operator(x)
    payload = {"name": args.name, "dims": list(rho.dims), "state": to_json(x),
               "purity": float(np.real(np.trace(rho.data @ rho.data)))}
    lines = [f"state {args.name}  dims {list(rho.dims)}  purity {_fmt(payload['purity'])}"]
    if all(d == 2 for d in rho.dims):
        blochs = []
        for k in range(len(rho.dims)):
            part = rho if len(rho.dims) == 1 else partial_trace(rho, k)
            blochs.append(qb.state_to_bloch(part))
            lines.append(f"  qubit {k} Bloch vector {_fmt(blochs[-1])}")
        payload["bloch"] = blochs
    return CommandResult("ok", payload, lines)


def cmd_clone(args) -> CommandResult:
    if args.kind == "bh":
        psi = qb.spin_state(args.theta, args.phi)
        out = ch.bh_clone(psi)
        ra, rb, rc = (partial_trace(out, k) for k in range(3))
        payload = {
            "fidelity_a": psi.fidelity(ra), "fidelity_b": psi.fidelity(rb),
            "bloch_input": qb.state_to_bloch(psi.proj()),
            "bloch_a": qb.state_to_bloch(ra), "bloch_b": qb.state_to_bloch(rb),
            "bloch_c": qb.state_to_bloch(rc),
            "not_fidelity": qb.perp(psi).fidelity(DenseOperator(qb.SY @ rc.data @ qb.SY)),
        }
        lines = [f"{k}: {_fmt(v)}" for k, v in payload.items()]
        return CommandResult("ok", payload, lines)
    if args.kind == "trivial":
        payload = {s: ch.trivial_clone_fidelity(s) for s in ("random-new-qubit", "measure-and-reprepare")}
        if args.samples:
            payload["monte_carlo"] = {
                s: ch.trivial_clone_fidelity_mc(s, args.samples, args.seed) for s in payload
            }
        return CommandResult("ok", payload, [f"{k}: {_fmt(v)}" for k, v in payload.items()])
    payload = {"amplifier_fidelity": ch.amplifier_fidelity()}
    return CommandResult("ok", payload, [f"amplifier fidelity: {_fmt(payload['amplifier_fidelity'])}"])


def cmd_channel(args) -> CommandResult:
    params = ch.CollisionParams(args.p, args.phi)
    rho0 = qb.spin_state(args.state_theta, args.state_phi).proj()
    rho, closed = ch.collision_iterate(rho0, params, args.n)
    payload = {
        "n": args.n, "state": to_json(rho), "bloch": qb.state_to_bloch(rho),
        "closed_form_bloch": qb.state_to_bloch(closed),
        "closed_form_gap": float(np.max(np.abs(rho.data - closed.data))),
        "reservoir_distance": dsc.trace_distance(rho, params.reservoir),
    }
    lines = [f"after {args.n} collisions: Bloch {_fmt(payload['bloch'])}",
             f"closed form gap {_fmt(payload['closed_form_gap'])}",
             f"trace distance to reservoir {_fmt(payload['reservoir_distance'])}"]
    return CommandResult("ok", payload, lines)


def cmd_teleport(args) -> CommandResult:
    if args.runs < 1:
        raise ValueError("--runs must be positive")
    psi = qb.spin_state(args.theta, args.phi)
    rng = np.random.default_rng(args.seed)
    hist = {k: 0 for k in tp.OUTCOMES}
    worst = 1.0
    for _ in range(args.runs):
        r = tp.teleport_run(psi, rng)
        hist[r.outcome] += 1
        worst = min(worst, psi.fidelity(r.state))
    payload = {"runs": args.runs, "histogram": hist, "min_fidelity": worst}
    lines = [f"outcomes {hist}", f"min fidelity {_fmt(worst)}"]
    return CommandResult("ok", payload, lines)


def cmd_repeater(args) -> CommandResult:
    r = tp.repeater_time(args.t)
    payload = {"direct": r.direct, "one_repeater": r.one_repeater, "crossover": r.crossover}
    return CommandResult("ok", payload, [f"{k}: {_fmt(v)}" for k, v in payload.items()])


def cmd_discriminate(args) -> CommandResult:
    kind = args.kind
    if kind == "usd" and args.alpha is not None:
        r = dsc.usd_two_pure(args.alpha)
        payload = {"p_success": r.p_success, "effects": [to_json(e) for e in r.povm.effects]}
        return CommandResult("ok", payload, [f"USD success probability {_fmt(r.p_success)}"])
    if kind == "timebin":
        r = dsc.usd_time_bin(complex(args.alpha_amp), args.eta, args.dark)
        payload = {"p_conclusive": r.p_conclusive, "unambiguous": r.unambiguous,
                   "p_error": r.p_error, "cutoff": r.cutoff}
        lines = [f"{k}: {_fmt(v)}" for k, v in payload.items()]
        if not r.unambiguous:
            lines.append("dark counts: discrimination is no longer unambiguous")
        return CommandResult("ok", payload, lines)
    if args.states is None:
        raise UsageError(f"discriminate {kind} needs --states")
    states = _states_arg(args.states, args.tol)
    if kind == "usd":
        pure = [s if isinstance(s, PureState) else None for s in states]
        if any(s is None for s in pure):
            raise ValueError("unambiguous discrimination needs pure states")
        r = dsc.usd_linear_independent(pure)
        payload = {"success": r.success, "p_success": r.p_success, "lambda": r.lam, "optimal": r.optimal}
        return CommandResult("ok", payload, [f"{k}: {_fmt(v)}" for k, v in payload.items()])
    priors = None if args.priors is None else _load_json_arg(args.priors)
    if kind == "chernoff":
        if len(states) != 2:
            raise ValueError("chernoff needs exactly two states")
        xi = dsc.chernoff_exponent(as_operator(states[0]), as_operator(states[1]))
        return CommandResult("ok", {"xi": xi}, [f"Chernoff exponent {_fmt(xi)}"])
    e = dsc.Ensemble(states, priors)
    if kind == "helstrom":
        r = dsc.helstrom(e)
        payload = {"p_error": r.p_error, "effects": [to_json(x) for x in r.povm.effects]}
        return CommandResult("ok", payload, [f"Helstrom error probability {_fmt(r.p_error)}"])
    povm = dsc.pgm(e)
    p_ok = 1 - dsc.error_probability(e, povm)
    payload = {"p_success": p_ok, "effects": [to_json(x) for x in povm.effects]}
    return CommandResult("ok", payload, [f"pretty good measurement success {_fmt(p_ok)}"])


def cmd_entropy(args) -> CommandResult:
    kind = args.kind
    if kind == "bb84":
        if args.eps is None:
            raise UsageError("entropy bb84 needs --eps")
        chi = ent.holevo_chi(ent.bb84_eve_ensemble(args.eps))
        payload = {"eps": args.eps, "chi": chi, "h": ent.binary_entropy(args.eps)}
        return CommandResult("ok", payload, [f"chi {_fmt(chi)}  h(eps) {_fmt(payload['h'])}"])
    if kind == "holevo":
        if args.states is None:
            raise UsageError("entropy holevo needs --states")
        priors = None if args.priors is None else _load_json_arg(args.priors)
        chi = ent.holevo_chi(dsc.Ensemble(_states_arg(args.states, args.tol), priors))
        return CommandResult("ok", {"chi": chi}, [f"Holevo chi {_fmt(chi)}"])
    if args.state is None:
        raise UsageError(f"entropy {kind} needs --state")
    rho = as_operator(_state_arg(args.state, args.tol))
    if kind == "vn":
        s = ent.von_neumann(rho)
        return CommandResult("ok", {"entropy": s}, [f"S = {_fmt(s)} bits"])
    s = ent.conditional_entropy(rho, args.cut)
    return CommandResult("ok", {"conditional_entropy": s}, [f"S(A|B) = {_fmt(s)} bits"])


def _box_table(arg: str) -> bt.NsTable:
    if arg == "pr":
        return bt.behavior_to_table(bt.pr_box())
    if arg == "me":
        return bt.behavior_to_table(bq.me_behavior())
    if arg.startswith("d:"):
        try:
            i, j = (int(v) for v in arg[2:].split(","))
        except ValueError:
            raise UsageError(f"bad deterministic box {arg!r}; use d:i,j") from None
        return bt.deterministic_behavior(i, j)
    raise UsageError(f"unknown box {arg!r}; use pr, me or d:i,j")


def cmd_bell(args) -> CommandResult:
    kind = args.kind
    if kind == "table":
        x = _box_table(args.box)
        payload = {"table": x.to_json(), "t_ch": bt.functional_value(bt.T_CH, x)}
        lines = [f"mA {_fmt(x.mA)}  mB {_fmt(x.mB)}", f"j {_fmt(x.j)}", f"T_CH . P = {_fmt(payload['t_ch'])}"]
        return CommandResult("ok", payload, lines)
    if kind == "membership":
        if args.table is None:
            raise UsageError("bell membership needs --table")
        x = bt.NsTable.from_json(_load_json_arg(args.table))
        if not x.is_valid(args.tol):
            raise ValueError(f"table is not a valid no-signaling table (defect {x.defect():.3g})")
        r = local_membership(x)
        payload = {"is_local": r.is_local, "weights": r.weights, "violated_facet": r.violated_facet,
                   "violation": r.violation, "facet_values": r.facet_values}
        line = "local" if r.is_local else f"nonlocal: facet {r.violated_facet} violated by {_fmt(r.violation)}"
        return CommandResult("ok", payload, [line])
    if kind == "chsh":
        state = _state_arg(args.state, args.tol)
        settings = bq.optimal_singlet_settings() if args.settings == "optimal" else _direction_list(args.settings)
        s = bq.chsh_value(state, *settings)
        payload = {"chsh": s, "violates": abs(s) > 2 + args.tol}
        return CommandResult("ok", payload, [f"<S> = {_fmt(s)}"])
    if args.eta is None:
        raise UsageError("bell detection needs --eta")
    r = px.detection_loophole(args.eta)
    payload = {"eta": args.eta, "observed": r.observed, "threshold": r.threshold}
    return CommandResult("ok", payload, [f"observed S {_fmt(r.observed)}  threshold eta {_fmt(r.threshold)}"])


def cmd_verify(args) -> CommandResult:
    lines_ = verify_paper()
    rows = [{"name": c.name, "expected": c.expected, "computed": c.computed, "tol": c.tol, "pass": c.passed}
            for c in lines_]
    human = [f"{'PASS' if c.passed else 'FAIL'}  {c.name:<26} expected {c.expected:<12.6g} "
             f"computed {c.computed:<12.6g} tol {c.tol:.0e}" for c in lines_]
    ok = all(c.passed for c in lines_)
    res = CommandResult("ok" if ok else "error", {"checks": rows, "all_pass": ok}, human)
    if not ok:
        res.human_summary.append("error: some checks failed")
    return res


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qitk", description="Small-dimension quantum information calculations.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled quantities (default 0)")
    p.add_argument("--tol", type=float, default=ATOL, help="validation tolerance (default 1e-9)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("state", help="show a named or JSON-encoded state")
    s.add_argument("name", help="psi-minus, phi-plus, psi-plus, phi-minus, werner:w, ghz, upb-rho, or JSON")
    s.set_defaults(func=cmd_state)

    s = sub.add_parser("clone", help="cloning machines")
    s.add_argument("kind", choices=["bh", "trivial", "amplifier"])
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--phi", type=float, default=0.0)
    s.add_argument("--samples", type=int, default=0, help="Monte-Carlo samples for trivial strategies")
    s.set_defaults(func=cmd_clone)

    s = sub.add_parser("channel", help="collision-model thermalization")
    s.add_argument("kind", choices=["collide"])
    s.add_argument("--p", type=float, required=True, help="reservoir ground-state weight")
    s.add_argument("--phi", type=float, required=True, help="coupling angle")
    s.add_argument("--n", type=int, default=1, help="number of collisions")
    s.add_argument("--state-theta", type=float, default=math.pi, help="input spin polar angle")
    s.add_argument("--state-phi", type=float, default=0.0, help="input spin azimuth")
    s.set_defaults(func=cmd_channel)

    s = sub.add_parser("teleport", help="simulate teleportation runs")
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--phi", type=float, default=0.0)
    s.add_argument("--runs", type=int, default=1000)
    s.set_defaults(func=cmd_teleport)

    s = sub.add_parser("repeater", help="pair-distribution times")
    s.add_argument("--t", type=float, required=True, help="transmission in (0, 1]")
    s.set_defaults(func=cmd_repeater)

    s = sub.add_parser("discriminate", help="state discrimination")
    s.add_argument("kind", choices=["helstrom", "usd", "pgm", "chernoff", "timebin"])
    s.add_argument("--states", help="JSON list of encoded states (inline or file)")
    s.add_argument("--priors", help="JSON list of priors")
    s.add_argument("--alpha", type=float, help="usd: half-angle of two pure states")
    s.add_argument("--alpha-amp", type=float, default=1.0, help="timebin: coherent amplitude")
    s.add_argument("--eta", type=float, default=1.0, help="timebin: detector efficiency")
    s.add_argument("--dark", type=float, default=0.0, help="timebin: dark-count probability")
    s.set_defaults(func=cmd_discriminate)

    s = sub.add_parser("entropy", help="entropic quantities in bits")
    s.add_argument("kind", choices=["vn", "cond", "holevo", "bb84"])
    s.add_argument("--state", help="named or JSON state")
    s.add_argument("--cut", type=int, default=1, help="cond: index of subsystem B")
    s.add_argument("--states", help="holevo: JSON list of states")
    s.add_argument("--priors", help="holevo: JSON list of priors")
    s.add_argument("--eps", type=float, help="bb84: error rate")
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("bell", help="Bell tables, local polytope, CHSH and detection efficiency")
    s.add_argument("kind", choices=["table", "membership", "chsh", "detection"])
    s.add_argument("--box", default="pr", help="table: pr, me, or d:i,j")
    s.add_argument("--table", help='membership: {"mA":[..],"mB":[..],"j":[[..],[..]]} inline or file')
    s.add_argument("--state", default="psi-minus", help="chsh: named or JSON state")
    s.add_argument("--settings", default="optimal", help="chsh: 'optimal' or JSON [a, a', b, b']")
    s.add_argument("--eta", type=float, help="detection: efficiency")
    s.set_defaults(func=cmd_bell)

    s = sub.add_parser("verify-paper", help="recompute every reference value")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> tuple[CommandResult, int, bool]:
    """Parse and execute; returns (result, exit code, json flag)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = 0 if exc.code in (0, None) else 2
        return CommandResult("ok" if code == 0 else "error", None, []), code, False
    try:
        res = args.func(args)
    except UsageError as exc:
        return CommandResult.error(str(exc)), 2, args.json
    except (KeyError, TypeError) as exc:
        return CommandResult.error(f"malformed input: {exc}"), 2, args.json
    except (ValueError, ArithmeticError) as exc:
        return CommandResult.error(str(exc)), 1, args.json
    return res, 0 if res.status == "ok" else 1, args.json


def main(argv: list[str] | None = None) -> int:
    res, code, as_json = run(argv)
    if res.payload is None and not res.human_summary:
        return code  # argparse already printed help or usage
    stream = sys.stdout if code == 0 else sys.stderr
    if as_json:
        body = {"status": res.status, "payload": _round(res.payload, 12)}
        print(json.dumps(body, sort_keys=True), file=stream if code != 2 else sys.stderr)
    else:
        for line in res.human_summary:
            print(line, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
