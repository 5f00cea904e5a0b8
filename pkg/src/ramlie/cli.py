"""Command-line front end: config loading, subcommand dispatch, and the
verify battery.

Output is deterministic: identical config and seed give identical bytes.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction

from . import __version__
from .admissible import (
    ch1_subset,
    enumerate_A0,
    eq41_data,
    filter_Aplus,
    prop21a_holds,
    select_parameters,
)
from .bch import circle, power
from .coeffring import RingContext
from .etaconst import (
    EtaTable,
    check_convolution,
    check_dynkin_identity,
    check_lemma46a,
    check_star_e,
)
from .filtration import (
    M_as,
    M_as_oracle,
    U,
    U_bruteforce,
    build_Lp,
    build_LNw,
    build_Lw,
    lemma_splitting_witness,
    mas_monotonicity_ok,
)
from .freeassoc import FreeAlgebra, Gen, is_lie, standard_alphabet
from .modlinalg import contains, span_equal
from .nilpotentlie import bracket, from_assoc, lie_from_json, lie_gen, quotient_map, sigma
from .params import GlobalParams, load_config, params_from_dict, vp
from .ramgen import (
    F0,
    check_prop47,
    emit_thm_main,
    emit_thm_sweep,
    fbar_direct,
    realizable_gammas,
    scaled_exponent,
)

SCHEMA_VERSION = 1


class Workspace:
    """Everything derived from one config: ring, algebra, parameter selection,
    admissible sets, eta table, weight-p ideal.  Built lazily."""

    def __init__(self, params: GlobalParams, eta_variant="simple", custom_eta=None):
        self.params = params
        self.eta_variant = eta_variant
        self._custom_eta = custom_eta
        self._ring = None
        self._algebra = None
        self._table = None
        self._sel = None
        self._A0 = None
        self._Lp = None

    @property
    def ring(self):
        if self._ring is None:
            self._ring = RingContext(self.params.p, self.params.M, self.params.N0)
        return self._ring

    @property
    def algebra(self):
        if self._algebra is None:
            self._algebra = FreeAlgebra(
                self.ring, standard_alphabet(self.params.p, self.params.N0, self.params.a_max)
            )
        return self._algebra

    @property
    def table(self):
        if self._table is None:
            if self.eta_variant == "custom":
                letters = sorted({g.a for g in self.algebra.gens})
                custom = {
                    tuple(k): self.ring.from_coeffs(v) for k, v in self._custom_eta.items()
                }
                self._table = EtaTable(self.ring, "custom", custom=custom, letters=letters)
            else:
                self._table = EtaTable(self.ring, self.eta_variant)
        return self._table

    @property
    def selection(self):
        if self._sel is None:
            self._sel = select_parameters(self.params)
        return self._sel

    @property
    def A0(self):
        if self._A0 is None:
            self._A0 = enumerate_A0(self.params, self.selection)
        return self._A0

    @property
    def weight_p_ideal(self):
        if self._Lp is None:
            self._Lp = build_Lp(self.params, self.algebra)
        return self._Lp


def _parse_custom_eta(path):
    data = json.loads(open(path, "rb").read().decode("utf-8"))
    out = {}
    for key, coeffs in data.items():
        tup = tuple(int(x) for x in key.split(",")) if key else ()
        out[tup] = coeffs
    return out


def _emit(args, payload: dict, csv_rows=None, csv_header=None):
    """Write json (default) or csv; deterministic byte output."""
    if args.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ----------------------------------------------------------


def cmd_params(ws: Workspace, args) -> int:
    report = ws.selection.report(ws.params)
    violations = ws.params.validate()
    payload = {
        "config": {
            "p": ws.params.p,
            "M": ws.params.M,
            "N0": ws.params.N0,
            "v0": str(ws.params.v0),
            "a_max": ws.params.a_max,
        },
        "violations": violations,
        "selection": report,
    }
    _emit(args, payload)
    return 0 if not violations else 1


def cmd_filtration(ws: Workspace, args) -> int:
    p, v0 = ws.params.p, ws.params.v0
    rows = []
    for a in range(0, ws.params.a_max + 1):
        if a and a % p == 0:
            continue
        if Fraction(a) / v0 >= p:
            continue
        for s in range(0, p):
            closed = M_as(a, s, v0, p)
            oracle = M_as_oracle(a, s, v0, p)
            rows.append(
                [a, s, "inf" if closed is None else closed, "inf" if oracle is None else oracle]
            )
    u_rows = [[s, m, str(U(s, m, p))] for s in range(0, p) for m in range(0, 13)]
    payload = {
        "M_table": [{"a": r[0], "s": r[1], "M_as": r[2], "M_as_oracle": r[3]} for r in rows],
        "U_table": [{"s": r[0], "m": r[1], "U": r[2]} for r in u_rows],
        "agreement": all(r[2] == r[3] for r in rows),
    }
    _emit(args, payload, csv_rows=rows, csv_header=["a", "s", "M_as", "M_as_oracle"])
    return 0 if payload["agreement"] else 1


def cmd_admissible(ws: Workspace, args) -> int:
    p = ws.params.p
    rows = []
    aplus = {ae.iota for ae in filter_Aplus(ws.A0, ws.params)}
    for ae in ws.A0:
        rec = {
            "iota": ae.iota,
            "P_alpha": ae.P_alpha,
            "P_beta": ae.P_beta,
            "m": ae.m,
            "ch": ae.ch,
            "kappa": ae.kappa,
            "vp": vp(ae.iota, p) if ae.iota else None,
            "in_A_plus": ae.iota in aplus,
        }
        if ae.ch == 1 and ae.iota > 0:
            d = eq41_data(ae, ws.params, ws.selection)
            rec.update(
                {
                    "gamma": str(d.gamma),
                    "M_iota": d.M_iota,
                    "m_iota": d.m_iota,
                    "r_iota": d.r_iota,
                }
            )
        rows.append(rec)
    _emit(
        args,
        {"A0": rows},
        csv_rows=[[r["iota"], r["P_alpha"], r["P_beta"], r["m"], r["ch"], r["kappa"]] for r in rows],
        csv_header=["iota", "P_alpha", "P_beta", "m", "ch", "kappa"],
    )
    return 0


def cmd_eta(ws: Workspace, args) -> int:
    rng = random.Random(args.seed)
    p = ws.params.p
    letters = sorted({g.a for g in ws.algebra.gens})[:3]
    report = {}
    report["star_e"] = not check_star_e(ws.table, letters, min(4, p - 1))
    report["dynkin"] = all(check_dynkin_identity(s) for s in range(2, min(5, p - 1) + 1))
    conv_ok = True
    l46_ok = True
    for _ in range(200):
        s = rng.randrange(0, min(5, p))
        a_vec = [rng.choice(letters) for _ in range(s)]
        n_vec = [rng.randrange(-3, 4) for _ in range(s)]
        conv_ok = conv_ok and check_convolution(ws.table, a_vec, n_vec)
        if s:
            l46_ok = l46_ok and check_lemma46a(ws.table, a_vec, n_vec, rng.randrange(0, s + 1))
    report["convolution"] = conv_ok
    report["lemma46a"] = l46_ok
    sample = {}
    for s in range(0, min(4, p - 1) + 1):
        for tup in [tuple(letters[:s])]:
            sample[",".join(map(str, tup))] = list(ws.table.eta(tup).coeffs)
    _emit(args, {"identities": report, "sample_values": sample})
    return 0 if all(report.values()) else 1


def cmd_bch(ws: Workspace, args) -> int:
    if not args.inputs:
        print("bch requires a JSON file with serialized elements", file=sys.stderr)
        return 2
    data = json.loads(open(args.inputs, "rb").read().decode("utf-8"))
    x = lie_from_json(ws.algebra, data["x"])
    y = lie_from_json(ws.algebra, data["y"])
    z = circle(x, y)
    _emit(args, {"circle": z.to_json()})
    return 0


def cmd_generators(ws: Workspace, args) -> int:
    m_choice = _parse_m_iota(args.m_iota) if args.m_iota else None
    ideal = emit_thm_main(
        ws.A0, ws.table, ws.algebra, ws.params, ws.selection, ws.weight_p_ideal, m_choice
    )
    recs = []
    for spec, reduced in ideal.generators:
        recs.append(
            {
                "iota": spec.iota,
                "gamma": str(spec.gamma),
                "depth_N": spec.N,
                "reduced_mod_weight_p": reduced.to_json(),
            }
        )
    _emit(args, {"generators": recs})
    return 0


def cmd_ideal(ws: Workspace, args) -> int:
    m_choice = _parse_m_iota(args.m_iota) if args.m_iota else None
    main = emit_thm_main(
        ws.A0, ws.table, ws.algebra, ws.params, ws.selection, ws.weight_p_ideal, m_choice
    )
    sweep = emit_thm_sweep(ws.table, ws.algebra, ws.params, ws.selection, ws.weight_p_ideal)
    equal = span_equal(main.span.basis, sweep.span.basis)
    payload = {
        "howell_basis": main.span.basis.to_json(),
        "weight_sweep_equal": equal,
    }
    _emit(args, payload)
    return 0 if equal else 1


def _parse_m_iota(text):
    out = {}
    for part in text.split(","):
        key, _, val = part.partition("=")
        out[int(key)] = int(val)
    return out


# -- the verify battery ----------------------------------------------------


def _verify_checks(ws: Workspace, seed: int):
    """Yield (name, ok) pairs covering every property suite on this config."""
    params = ws.params
    p, v0 = params.p, params.v0
    rng = random.Random(seed)

    yield "params.validate", not params.validate()

    ok = all(
        U(s, m, p) == U_bruteforce(s, m, p) for s in range(0, p) for m in range(0, 13)
    )
    yield "U.closed_form_vs_bruteforce", ok

    ok = True
    for a in range(0, min(params.a_max, 40) + 1):
        if (a and a % p == 0) or Fraction(a) / v0 >= p:
            continue
        if a == 0:
            ok = ok and all(M_as(0, s, v0, p) is None for s in range(1, p))
            continue
        ok = ok and all(M_as(a, s, v0, p) == M_as_oracle(a, s, v0, p) for s in range(0, p))
        ok = ok and mas_monotonicity_ok(a, v0, p)
    yield "M_as.closed_form_vs_oracle", ok

    # eta identities
    letters = sorted({g.a for g in ws.algebra.gens})[:3]
    yield "eta.star_e", not check_star_e(ws.table, letters, min(4, p - 1))
    yield "eta.dynkin_identity", all(
        check_dynkin_identity(s) for s in range(2, min(5, p - 1) + 1)
    )
    ok = True
    for _ in range(200):
        s = rng.randrange(0, min(5, p))
        a_vec = [rng.choice(letters) for _ in range(s)]
        n_vec = [rng.randrange(-3, 4) for _ in range(s)]
        ok = ok and check_convolution(ws.table, a_vec, n_vec)
        if s:
            ok = ok and check_lemma46a(ws.table, a_vec, n_vec, rng.randrange(0, s + 1))
    yield "eta.convolution_and_lemma46a", ok

    # bch sanity on this alphabet
    gens = [lie_gen(ws.algebra, g) for g in ws.algebra.gens[:3]]
    ok = True
    for _ in range(10):
        x = _random_lie(ws, rng)
        y = _random_lie(ws, rng)
        z = _random_lie(ws, rng)
        ok = ok and circle(circle(x, y), z) == circle(x, circle(y, z))
        ok = ok and circle(x, -x) == x * 0
        ok = ok and not power(x, params.modulus)
    yield "bch.group_axioms", ok

    # admissible properties
    sel = ws.selection
    ok = all(
        prop21a_holds(params, sel, ae.P_alpha, ae.P_beta, ae.m)
        for ae in ws.A0
        if ae.P_beta
    )
    yield "admissible.separation", ok
    aplus = filter_Aplus(ws.A0, params)
    vals = [Fraction(ae.iota, p ** vp(ae.iota, p)) for ae in aplus]
    yield "admissible.prim_values_distinct", len(set(vals)) == len(vals)
    thr = sel.q * v0 - sel.b_star
    yield "admissible.ch1_lower_bound", all(
        Fraction(ae.iota, p ** vp(ae.iota, p)) >= thr for ae in ch1_subset(aplus)
    )
    beta0 = sorted(ae.iota for ae in ws.A0 if ae.P_beta == 0)
    expected = sorted(
        sel.q * p ** (params.M - 1) * a for a in range(0, math.ceil(params.w_star))
    )
    yield "admissible.beta0_sublist", beta0 == expected

    # filtration spans
    spans = {w: build_Lw(w, params, ws.algebra) for w in range(1, p + 1)}
    ok = True
    for w in range(1, p):
        ok = ok and all(contains(spans[w].basis, r) for r in spans[w + 1].basis.rows)
    yield "filtration.nesting", ok
    ok = True
    for w1 in range(1, p):
        for w2 in range(1, p - w1 + 1):
            for r1 in spans[w1].basis.rows:
                e1 = _unflatten(ws, r1)
                for r2 in spans[w2].basis.rows:
                    b = bracket(e1, _unflatten(ws, r2))
                    if b and not spans[w1 + w2].contains_elem(b):
                        ok = False
    yield "filtration.bracket_compatibility", ok
    ok = True
    for w in range(1, p + 1):
        ln = build_LNw(w, params, ws.algebra)
        ok = ok and all(contains(spans[w].basis, r) for r in ln.rows)
    yield "filtration.module_inside_ideal", ok

    # ramification ideal
    a1 = ch1_subset(aplus)
    ok_lie, ok_47 = True, True
    for ae in a1:
        data = eq41_data(ae, params, sel)
        fb = fbar_direct(ae, data, ws.table, ws.algebra, params)
        ok_lie = ok_lie and is_lie(fb)
        for n in range(0, data.m_iota + 1):
            ok_47 = ok_47 and check_prop47(
                ae, n, ws.table, ws.algebra, params, sel, ws.weight_p_ideal.basis
            )
    yield "ramgen.word_form_is_lie", ok_lie
    yield "ramgen.twist_identity", ok_47
    main = emit_thm_main(ws.A0, ws.table, ws.algebra, params, sel, ws.weight_p_ideal)
    sweep = emit_thm_sweep(ws.table, ws.algebra, params, sel, ws.weight_p_ideal)
    yield "ramgen.span_equality", span_equal(main.span.basis, sweep.span.basis)
    m_choice = {}
    for ae in a1:
        m_choice[ae.iota] = eq41_data(ae, params, sel).m_iota + 1
    alt = emit_thm_main(ws.A0, ws.table, ws.algebra, params, sel, ws.weight_p_ideal, m_choice)
    yield "ramgen.depth_choice_independence", span_equal(main.span.basis, alt.span.basis)


def _random_lie(ws: Workspace, rng):
    from .nilpotentlie import LieElement

    alg = ws.algebra
    coords = {}
    for w in alg.lyndon:
        if rng.random() < 0.4:
            coords[w] = alg.ring.from_coeffs(
                [rng.randrange(ws.params.modulus) for _ in range(ws.params.N0)]
            )
    return LieElement(alg, coords)


def _unflatten(ws: Workspace, row):
    from .nilpotentlie import unflatten

    return unflatten(ws.algebra, row)


def cmd_verify(ws: Workspace, args) -> int:
    results = []
    failed = 0
    for name, ok in _verify_checks(ws, args.seed):
        results.append({"check": name, "pass": bool(ok)})
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
        if not ok:
            failed += 1
    _emit(args, {"results": results, "failed": failed, "seed": args.seed})
    return 0 if failed == 0 else 1


# -- entry point ------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ramlie",
        description="Exact calculator for nilpotent Lie algebras over Galois rings "
        "and their ramification-ideal generators.",
    )
    ap.add_argument("--version", action="version", version=f"ramlie {__version__}")
    sub = ap.add_subparsers(dest="command")
    commands = {
        "params": "parameter selection report (delta0, r*, N*, q, b*)",
        "filtration": "U and M tables with oracle agreement (CSV: a,s,M_as,M_as_oracle)",
        "admissible": "the admissible exponent table",
        "eta": "eta constants and the identity battery",
        "bch": "compose two serialized Lie elements (--inputs file with keys x, y)",
        "generators": "emit the per-exponent ideal generators",
        "ideal": "Howell basis of the ramification ideal + cross-emission verdict",
        "verify": "run every property suite; nonzero exit on failure",
    }
    for name, help_text in commands.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, help="JSON or TOML config file")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
        sp.add_argument(
            "--eta",
            default=None,
            help="simple | ordered | custom:<path> (overrides config)",
        )
        sp.add_argument(
            "--m-iota",
            dest="m_iota",
            default=None,
            help="comma-separated iota=value overrides for the emission depth",
        )
        if name == "bch":
            sp.add_argument("--inputs", default=None, help="JSON file with x and y")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not args.command:
        ap.print_usage(sys.stderr)
        return 2
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        params = params_from_dict(cfg)
    except (KeyError, ValueError) as exc:
        print(f"bad config: {exc}", file=sys.stderr)
        return 2
    violations = params.validate()
    if violations:
        for v in violations:
            print(f"config violation: {v}", file=sys.stderr)
        return 2
    eta_variant = cfg.get("eta_variant", "simple")
    custom = None
    if args.eta:
        if args.eta.startswith("custom:"):
            eta_variant = "custom"
            custom = _parse_custom_eta(args.eta.split(":", 1)[1])
        else:
            eta_variant = args.eta
    elif eta_variant == "custom":
        custom = _parse_custom_eta(cfg["eta_table"])
    if eta_variant not in ("simple", "ordered", "custom"):
        print(f"unknown eta variant {eta_variant!r}", file=sys.stderr)
        return 2
    ws = Workspace(params, eta_variant, custom)
    handler = {
        "params": cmd_params,
        "filtration": cmd_filtration,
        "admissible": cmd_admissible,
        "eta": cmd_eta,
        "bch": cmd_bch,
        "generators": cmd_generators,
        "ideal": cmd_ideal,
        "verify": cmd_verify,
    }[args.command]
    try:
        return handler(ws, args)
    except (ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
