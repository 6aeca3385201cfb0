"""Command-line interface: list, group, chartable, poincare, verify, forms.

Consumers are scripts and CI: output is deterministic (byte-identical across
runs for identical flags), JSON validates against data/report.schema.json,
and `verify` exits 0 iff every selected check passes (1 on verification
failure, 2 on usage errors).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN
from typing import Optional

from . import forms, klein, verify
from .exact import Cyclo


@dataclass
class Config:
    type_selector: str = "all"
    fmt: str = "text"
    output: Optional[str] = None
    conductor: Optional[int] = None
    closure_bound: int = 10000
    strict_theorem: bool = False


def _approx_str(z: complex) -> str:
    def fmt(x):
        q = Decimal(repr(x)).quantize(Decimal("1e-12"), rounding=ROUND_HALF_EVEN)
        s = format(q, "f")
        return s
    re, im = fmt(z.real), fmt(z.imag)
    return f"{re}{'+' if not im.startswith('-') else ''}{im}j"


def _emit(cfg: Config, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _contexts(cfg: Config):
    triples = verify.parse_type(cfg.type_selector)
    if cfg.conductor is not None:
        if len(triples) != 1:
            raise UsageError("--conductor needs a single --type")
        default = klein.default_conductor(triples[0])
        if cfg.conductor % default:
            raise UsageError(
                f"conductor override must be a multiple of {default}")
    return [verify.build_context(t, cfg.conductor, cfg.closure_bound)
            for t in triples]


class UsageError(ValueError):
    pass


# -- list --------------------------------------------------------------------

def cmd_list(cfg: Config) -> int:
    rows = []
    for trip in verify.CATALOG:
        rows.append({
            "triple": list(trip),
            "label": klein.dynkin_label(trip),
            "order": klein.predicted_order(trip),
            "conductor": klein.default_conductor(trip),
        })
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(rows, sort_keys=True, indent=1) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["label", "triple", "order", "conductor"])
        for r in rows:
            w.writerow([r["label"], " ".join(map(str, r["triple"])),
                        r["order"], r["conductor"]])
        _emit(cfg, buf.getvalue())
    else:
        lines = ["label  triple     order  conductor"]
        for r in rows:
            trip = "<" + ",".join(map(str, r["triple"])) + ">"
            lines.append(f"{r['label']:<6} {trip:<10} {r['order']:<6} {r['conductor']}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


# -- group -------------------------------------------------------------------

def cmd_group(cfg: Config) -> int:
    out = []
    for ctx in _contexts(cfg):
        info = {
            "type": ctx.label,
            "triple": list(ctx.triple),
            "order": ctx.K.order,
            "conductor": ctx.K.conductor,
            "kprime_order": ctx.Kp.order,
            "reflections": len(ctx.Kp.reflections),
            "degrees": list(ctx.degrees),
            "classes": verify.classes_json(ctx),
            "generators": {
                "words": [ctx.K.words[g] or "e" for g in ctx.K.gens],
            },
        }
        if not ctx.K.is_cyclic:
            ea, eb, ec = ctx.K.e_indices
            info["triangle_generators"] = {
                "e_A": ctx.K.words[ea] or "e",
                "e_B": ctx.K.words[eb] or "e",
                "e_C": ctx.K.words[ec] or "e",
            }
        out.append(info)
    payload = out[0] if len(out) == 1 else out
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["type", "order", "kprime_order", "reflections", "d1", "d2",
                    "classes"])
        for info in out:
            w.writerow([info["type"], info["order"], info["kprime_order"],
                        info["reflections"], info["degrees"][0],
                        info["degrees"][1], len(info["classes"])])
        _emit(cfg, buf.getvalue())
    else:
        lines = []
        for info in out:
            lines.append(f"{info['type']} = <{','.join(map(str, info['triple']))}>"
                         f"  |K| = {info['order']}  |K'| = {info['kprime_order']}"
                         f"  reflections = {info['reflections']}"
                         f"  degrees = {tuple(info['degrees'])}")
            lines.append("  classes (id, size, order, node, word):")
            for c in info["classes"]:
                lines.append(f"    {c['id']:>2}  {c['size']:>3}  {c['order']:>3}"
                             f"  {c['node'] or '-':<3} {c['rep_word']}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


# -- chartable ---------------------------------------------------------------

def cmd_chartable(cfg: Config) -> int:
    out = []
    for ctx in _contexts(cfg):
        out.append({
            "type": ctx.label,
            "triple": list(ctx.triple),
            "order": ctx.K.order,
            "classes": verify.classes_json(ctx),
            "characters": verify.characters_json(ctx),
        })
    payload = out[0] if len(out) == 1 else out
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(payload, sort_keys=True, indent=1) + "\n")
        return 0
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["type", "char_node", "degree", "class_id", "class_size",
                    "class_order", "class_node", "value_re", "value_im"])
        for info, ctx in zip(out, _contexts(cfg)):
            for ch in info["characters"]:
                for cid, val in enumerate(ch["values"]):
                    z = _from_json(val).approx()
                    cls = info["classes"][cid]
                    re = Decimal(repr(z.real)).quantize(
                        Decimal("1e-12"), rounding=ROUND_HALF_EVEN)
                    im = Decimal(repr(z.imag)).quantize(
                        Decimal("1e-12"), rounding=ROUND_HALF_EVEN)
                    w.writerow([info["type"], ch["node"] or "", ch["degree"],
                                cid, cls["size"], cls["order"],
                                cls["node"] or "", format(re, "f"),
                                format(im, "f")])
        _emit(cfg, buf.getvalue())
        return 0
    lines = []
    for info in out:
        lines.append(f"character table of {info['type']} "
                     f"(order {info['order']}):")
        head = "  node deg | " + " | ".join(
            f"{c['node'] or c['id']}(s{c['size']},o{c['order']})"
            for c in info["classes"])
        lines.append(head)
        for ch in info["characters"]:
            vals = []
            for v in ch["values"]:
                x = _from_json(v)
                vals.append(repr(x) if len(repr(x)) <= 14
                            else _approx_str(x.approx()))
            lines.append(f"  {ch['node'] or '-':<4} {ch['degree']:>3} | "
                         + " | ".join(vals))
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _from_json(obj) -> Cyclo:
    from .exact import cyclo_from_json
    return cyclo_from_json(obj)


# -- poincare ----------------------------------------------------------------

def cmd_poincare(cfg: Config) -> int:
    out = []
    for ctx in _contexts(cfg):
        entries = verify.poincare_json(ctx)
        entries = sorted(entries, key=lambda e: (e["node"] is None,
                                                 e["node"] or "",
                                                 e["coeffs"]))
        out.append({
            "type": ctx.label,
            "triple": list(ctx.triple),
            "degrees": list(ctx.degrees),
            "poincare": entries,
            "pretty": {e["node"] or f"#{i}": _pretty(e["coeffs"])
                       for i, e in enumerate(entries)},
        })
    payload = out[0] if len(out) == 1 else out
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["type", "node", "center", "coeffs", "plus", "minus"])
        for info in out:
            for e in info["poincare"]:
                w.writerow([info["type"], e["node"] or "", e["center"],
                            " ".join(map(str, e["coeffs"])),
                            " ".join(map(str, e["plus"] or [])),
                            " ".join(map(str, e["minus"] or []))])
        _emit(cfg, buf.getvalue())
    else:
        lines = []
        for info in out:
            d1, d2 = info["degrees"]
            lines.append(f"{info['type']}: degrees ({d1}, {d2})")
            for e in info["poincare"]:
                tag = e["node"] or "-"
                lines.append(f"  P_{tag:<3} (center {e['center']}) = "
                             + _pretty(e["coeffs"]))
                if e["plus"] is not None:
                    lines.append(f"        + part: {_pretty(e['plus'])}")
                    lines.append(f"        - part: {_pretty(e['minus'])}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _pretty(coeffs) -> str:
    parts = []
    for e, c in enumerate(coeffs):
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            t = "t" if e == 1 else f"t^{e}"
            parts.append(t if c == 1 else f"{c}*{t}")
    return " + ".join(parts) if parts else "0"


# -- verify ------------------------------------------------------------------

def cmd_verify(cfg: Config) -> int:
    triples = verify.parse_type(cfg.type_selector)
    reports = [verify.verify_type(t, conductor=cfg.conductor,
                                  bound=cfg.closure_bound,
                                  strict_theorem=cfg.strict_theorem)
               for t in triples]
    payload = reports[0] if len(reports) == 1 else reports
    ok = all(r["pass"] for r in reports)
    if cfg.fmt == "json":
        _emit(cfg, verify.report_to_json(payload) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["type", "check", "status"])
        for r in reports:
            for c in r["checks"]:
                w.writerow([r["type"], c["name"], c["status"]])
        _emit(cfg, buf.getvalue())
    else:
        lines = []
        for r in reports:
            lines.append(f"{r['type']} <{','.join(map(str, r['triple']))}>"
                         f" order {r['order']}: "
                         f"{'PASS' if r['pass'] else 'FAIL'}")
            for c in r["checks"]:
                mark = "ok " if c["status"] == "pass" else "FAIL"
                lines.append(f"  [{mark}] {c['name']}")
            strict = r.get("theorem_strict")
            if strict and not strict["full_grid_exact"]:
                cells = ", ".join(f"({a['char_node']},{a['elem_node']})"
                                  for a in strict["anomalies"][:6])
                more = len(strict["anomalies"]) - 6
                lines.append(f"  note: specialization identity fails on"
                             f" {len(strict['anomalies'])} grid cells"
                             f" ({cells}{' ...' if more > 0 else ''})")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


# -- forms -------------------------------------------------------------------

def cmd_forms(cfg: Config) -> int:
    out = []
    for ctx in _contexts(cfg):
        if ctx.K.is_cyclic:
            raise UsageError("forms are computed for D/E types only")
        sing = forms.singular_lines(ctx.K)
        sforms = [forms.orbit_form(ctx.K, o) for o in sing]
        jc = forms.jacobian_check(ctx.K)
        inv = forms.absolute_invariants(ctx.K)
        info = {
            "type": ctx.label,
            "triple": list(ctx.triple),
            "orbits": [{"branch": o.branch, "size": len(o.lines),
                        "stabilizer_order": o.stabilizer_order}
                       for o in sing],
            "orbit_forms": [
                {"branch": of.orbit.branch,
                 "degree": of.form.degree,
                 "coeffs": [c.to_json() for c in of.form.coeffs],
                 "mu_trivial": all(v == 1 for v in of.mu.values())}
                for of in sforms],
            "jacobian_factorization": {
                "holds": jc["holds"],
                "degree_balance": jc.get("degree_balance"),
            },
            "absolute_invariants": [
                {"exponents": list(r["exponents"]), "degree": r["degree"]}
                for r in inv],
            "klein_degree_identity": forms.klein_degree_identity(ctx.K),
        }
        out.append(info)
    payload = out[0] if len(out) == 1 else out
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["type", "branch", "orbit_size", "form_degree",
                    "mu_trivial"])
        for info in out:
            for o, f in zip(info["orbits"], info["orbit_forms"]):
                w.writerow([info["type"], o["branch"], o["size"],
                            f["degree"], f["mu_trivial"]])
        _emit(cfg, buf.getvalue())
    else:
        lines = []
        for info in out:
            lines.append(f"{info['type']}: singular line orbits "
                         + ", ".join(f"{o['branch']}:{o['size']}"
                                     for o in info["orbits"]))
            ki = info["klein_degree_identity"]
            lines.append(f"  degree identity 2(|G/Z|-1) = {ki['lhs']} = "
                         + " + ".join(map(str, ki['terms'])))
            lines.append(f"  jacobian factorization: "
                         f"{'exact' if info['jacobian_factorization']['holds'] else 'FAILED'}")
            lines.append("  absolute invariants (exponents -> degree): "
                         + ", ".join(f"{tuple(r['exponents'])}->{r['degree']}"
                                     for r in info["absolute_invariants"]))
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="mckay",
        description="exact McKay correspondence for finite subgroups of SU(2)")
    sub = p.add_subparsers(dest="command", required=True)
    for name, needs_type in [("list", False), ("group", True),
                             ("chartable", True), ("poincare", True),
                             ("verify", False), ("forms", True)]:
        q = sub.add_parser(name)
        q.add_argument("--type", default="all", dest="type_selector",
                       help="triple like 5,3,2 | label (E8, D7, A4) | all")
        q.add_argument("--format", default="text", dest="fmt",
                       choices=["text", "json", "csv"])
        q.add_argument("--output", default=None)
        q.add_argument("--conductor", type=int, default=None)
        q.add_argument("--closure-bound", type=int, default=10000,
                       dest="closure_bound")
        if name == "verify":
            q.add_argument("--strict-theorem", action="store_true",
                           dest="strict_theorem")
    return p


COMMANDS = {
    "list": cmd_list,
    "group": cmd_group,
    "chartable": cmd_chartable,
    "poincare": cmd_poincare,
    "verify": cmd_verify,
    "forms": cmd_forms,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = Config(type_selector=args.type_selector, fmt=args.fmt,
                 output=args.output, conductor=args.conductor,
                 closure_bound=args.closure_bound,
                 strict_theorem=getattr(args, "strict_theorem", False))
    try:
        return COMMANDS[args.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
