"""Command line entry point: `fockhall {quiver|hall|wedge|fock|verify} ...`.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 internal
inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import fock as F
from . import hall as H
from . import quiver as Q
from . import verify as VV
from . import wedge as W
from .quiver import Cyclic, DimVector, InfiniteLine, Multisegment, dominates, partition, partitions_of
from .ring import LaurentPoly, to_text

HARD_CAP = 10


class UsageError(Exception):
    pass


# config handling

def read_config(path):
    """Plain `key = value` lines; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


_INT_KEYS = {"n", "max_size", "t_max", "seed"}
_ARGV = []


def _explicit(key):
    flag = "--" + key.replace("_", "-")
    return any(a == flag or a.startswith(flag + "=") for a in _ARGV)


def _merge_config(args):
    if not getattr(args, "config", None):
        return args
    for k, v in read_config(args.config).items():
        if not hasattr(args, k):
            raise UsageError(f"unknown config key {k}")
        if _explicit(k):
            continue
        try:
            setattr(args, k, int(v) if k in _INT_KEYS else v)
        except ValueError:
            raise UsageError(f"config key {k} expects an integer, got {v!r}") from None
    return args


def _validate(args):
    n = getattr(args, "n", None)
    if n is not None and n < 2:
        raise UsageError("n must be ≥ 2")
    ms = getattr(args, "max_size", None)
    if ms is not None:
        if ms < 0:
            raise UsageError("max_size must be ≥ 0")
        if ms > HARD_CAP and not args.unsafe_scale:
            raise UsageError(f"max_size {ms} exceeds the cap {HARD_CAP}; pass --unsafe-scale to override")
    t_max = getattr(args, "t_max", None)
    if t_max is not None and t_max < 1:
        raise UsageError("t_max must be ≥ 1")


# output

def _emit(args, payload, tsv_rows, text_lines):
    if args.format == "json":
        out = json.dumps(payload, sort_keys=False, ensure_ascii=False) + "\n"
    elif args.format == "tsv":
        out = "".join("\t".join(str(c) for c in row) + "\n" for row in tsv_rows)
    else:
        out = "".join(line + "\n" for line in text_lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _hall_rows(x):
    rows = [("m", "coeff")]
    for m, c in sorted(x.terms.items()):
        rows.append((json.dumps(m.to_json()), str(c)))
    return rows


def _emit_hall(args, x):
    rows = _hall_rows(x)
    width = max(len(r[0]) for r in rows)
    _emit(args, x.to_json(), rows, [f"{a.ljust(width)}  {b}" for a, b in rows])


def _parse_json(s, what):
    try:
        return json.loads(s)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed {what}: {e}") from None


def _kind(args):
    return InfiniteLine if getattr(args, "line", False) else Cyclic(args.n)


def _multiseg(args, s):
    try:
        return Multisegment.from_json(_kind(args), _parse_json(s, "multisegment"))
    except (TypeError, ValueError, KeyError) as e:
        raise UsageError(f"malformed multisegment: {e}") from None


def _dimvec(kind, s):
    obj = _parse_json(s, "dimension vector")
    try:
        return DimVector.from_json(kind, obj)
    except (TypeError, ValueError, AttributeError) as e:
        raise UsageError(f"malformed dimension vector: {e}") from None


def _hall_elem(s):
    try:
        return H.HallElement.from_json(_parse_json(s, "Hall element"))
    except (TypeError, ValueError, KeyError) as e:
        raise UsageError(f"malformed Hall element: {e}") from None


def _partition(s):
    obj = _parse_json(s, "partition")
    if not isinstance(obj, list) or not all(isinstance(a, int) for a in obj):
        raise UsageError("a partition is a JSON list of integers")
    try:
        return partition(obj)
    except ValueError as e:
        raise UsageError(str(e)) from None


# quiver

def cmd_quiver(args):
    if args.sub == "generic-ext":
        m1, m2 = _multiseg(args, args.m1), _multiseg(args, args.m2)
        p = Q.generic_ext(m1, m2)
        _emit(args, p.to_json(), [("i", "l", "mult")] + [(i, l, a) for (i, l), a in p.items()], [repr(p)])
    elif args.sub == "deg-leq":
        m1, m2 = _multiseg(args, args.m1), _multiseg(args, args.m2)
        r = Q.deg_leq(m1, m2)
        _emit(args, r, [("deg_leq",), (str(r).lower(),)], [str(r).lower()])
    elif args.sub == "ladder":
        lam = _partition(args.lam)
        try:
            word = Q.ladder_word(lam, args.n)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit(args, [[i, k] for i, k in word], [("i", "k")] + word,
              [" ".join(f"F_{i}^({k})" for i, k in word) or "1"])
    return 0


# hall

def cmd_hall(args):
    if args.sub == "mul":
        x, y = _hall_elem(args.x), _hall_elem(args.y)
        try:
            r = H.mul(x, y)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit_hall(args, r)
    elif args.sub == "central":
        c, x, _ = H.central_elements(args.t, args.n)
        _emit_hall(args, c if args.which == "c" else x)
    elif args.sub == "gamma":
        d = _dimvec(InfiniteLine, args.d)
        if args.x:
            x = _hall_elem(args.x)
        else:
            dbar = DimVector(Cyclic(args.n), dict(d.items()))
            x = H.HallElement.ut(Multisegment.semisimple(dbar))
        try:
            r = H.gamma_d(d, x)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit_hall(args, r)
    elif args.sub == "canonical":
        grade = _dimvec(Cyclic(args.n), args.grade)
        cb = H.canonical_basis_hall(grade)
        order, _ = H.deg_order(grade)
        payload = {"n": args.n, "grade": grade.to_json(),
                   "rows": [{"m": m.to_json(), "element": cb[m].to_json(tilde=True)} for m in reversed(order)]}
        rows = [("m", "p", "coeff")]
        for m in reversed(order):
            for p, c in sorted(cb[m].tilde_terms().items(), reverse=True):
                rows.append((json.dumps(m.to_json()), json.dumps(p.to_json()), to_text(c)))
        _emit(args, payload, rows, ["  ".join(r) for r in rows])
    return 0


# wedge

def cmd_wedge(args):
    if args.sub == "straighten":
        word = _parse_json(args.word, "word")
        r = W.straighten(word, args.n)
        payload = [{"word": list(w), "coeff": c.to_json()} for w, c in sorted(r.items(), reverse=True)]
        rows = [("word", "coeff")] + [(json.dumps(list(w)), to_text(c)) for w, c in sorted(r.items(), reverse=True)]
        _emit(args, payload, rows, [f"{a}  {b}" for a, b in rows[1:]] or ["0"])
    elif args.sub == "heisenberg":
        if args.wedge:
            try:
                x = W.WedgeVector.monomial(W.WedgeMonomial.from_json(_parse_json(args.wedge, "wedge")))
            except (KeyError, ValueError) as e:
                raise UsageError(f"malformed wedge: {e}") from None
        else:
            x = W.WedgeVector.from_partition(_partition(args.lam))
        r = W.heisenberg_B(args.t, args.sign, x, args.n) if args.op == "B" else W.heisenberg_z(args.t, args.sign, x, args.n)
        rows = [("prefix", "coeff")] + [(json.dumps(list(w.prefix)), to_text(c)) for w, c in sorted(r.terms.items())]
        _emit(args, r.to_json(), rows, [f"{a}  {b}" for a, b in rows[1:]] or ["0"])
    return 0


# fock

def canonical_table(n, max_size):
    """Canonical basis rows grouped by content block."""
    blocks = {}
    for k in range(max_size + 1):
        for lam in partitions_of(k):
            blocks.setdefault(F.content(lam, n), []).append(lam)
    out = []
    for beta in sorted(blocks, key=lambda b: (b.total(), sorted(b.items()))):
        lams = _dominance_sorted(blocks[beta])
        rows = []
        for lam in lams:
            b = F.canonical_basis(lam, n)
            if F.bar_fock(b, n) != b:
                raise ArithmeticError(f"b_{lam} is not bar-invariant")
            terms = [{"mu": list(mu), "coeff": b.coeff(mu).to_json()} for mu in _dominance_sorted(b.terms)]
            rows.append({"lambda": list(lam), "terms": terms})
        out.append({"n": n, "block_content": beta.to_json(), "rows": rows})
    return out


def _dominance_sorted(lams):
    """Decreasing dominance, ties broken by decreasing lexicographic order."""
    lams = sorted(lams, reverse=True)
    out = []
    left = list(lams)
    while left:
        for lam in left:
            if not any(mu != lam and dominates(mu, lam) for mu in left):
                out.append(lam)
                left.remove(lam)
                break
    return out


def cmd_fock(args):
    if args.sub == "canonical":
        table = canonical_table(args.n, args.max_size)
        rows = [("block", "lambda", "mu", "coeff")]
        text = []
        for blk in table:
            key = json.dumps(blk["block_content"], sort_keys=True)
            for row in blk["rows"]:
                for t in row["terms"]:
                    c = to_text(LaurentPoly.from_json(t["coeff"]))
                    rows.append((key, json.dumps(row["lambda"]), json.dumps(t["mu"]), c))
                    text.append(f"b{row['lambda']}  {t['mu']}  {c}")
        _emit(args, table, rows, text)
    elif args.sub == "ladder":
        lam = _partition(args.lam)
        try:
            x = F.ladder_vector(lam, args.n)
        except ValueError as e:
            raise UsageError(str(e)) from None
        rows = [("mu", "coeff")] + [(json.dumps(list(mu)), to_text(c)) for mu, c in sorted(x.terms.items(), reverse=True)]
        _emit(args, x.to_json(), rows, [f"{a}  {b}" for a, b in rows[1:]])
    elif args.sub == "census":
        rows = [("beta", "lhs", "rhs")]
        payload = []
        for d in range(args.max_size + 1):
            for beta in VV._cyclic_vectors(args.n, d) if d else [DimVector(Cyclic(args.n))]:
                lhs, rhs = F.decomposition_census(beta, args.n)
                payload.append({"beta": beta.to_json(), "lhs": lhs, "rhs": rhs})
                rows.append((json.dumps(beta.to_json(), sort_keys=True), lhs, rhs))
        _emit(args, payload, rows, ["  ".join(str(c) for c in r) for r in rows])
    return 0


# verify

def cmd_verify(args):
    if args.max_size == 0:
        checks = []
    else:
        checks = VV.run_suite(args.suite, args.n, args.max_size, args.t_max)
    ok = all(c.ok for c in checks)
    payload = {"suite": args.suite, "n": args.n, "max_size": args.max_size, "ok": ok,
               "checks": [{"suite": c.suite, "name": c.name, "ok": c.ok, "count": c.count,
                           "counterexample": c.counterexample} for c in checks]}
    rows = [("suite", "check", "status", "count", "counterexample")]
    rows += [(c.suite, c.name, "PASS" if c.ok else "FAIL", c.count, c.counterexample) for c in checks]
    text = [f"{'PASS' if c.ok else 'FAIL'}  [{c.suite}] {c.name} ({c.count} instances)"
            + ("" if c.ok else f"  counterexample: {c.counterexample}") for c in checks]
    text.append("all checks passed" if ok else "verification FAILED")
    _emit(args, payload, rows, text)
    return 0 if ok else 1


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--config", default=None, help="key = value config file; flags win")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--unsafe-scale", action="store_true", help=f"allow --max-size above {HARD_CAP}")

    with_n = argparse.ArgumentParser(add_help=False)
    with_n.add_argument("--n", type=int, default=None)

    p = argparse.ArgumentParser(prog="fockhall", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("quiver").add_subparsers(dest="sub", required=True)
    for name in ("generic-ext", "deg-leq"):
        s = q.add_parser(name, parents=[common, with_n])
        s.add_argument("--m1", required=True, help="multisegment as [[i,l,mult],...]")
        s.add_argument("--m2", required=True)
        s.add_argument("--line", action="store_true", help="use the infinite line quiver")
    s = q.add_parser("ladder", parents=[common, with_n])
    s.add_argument("--lambda", dest="lam", required=True)

    h = sub.add_parser("hall").add_subparsers(dest="sub", required=True)
    s = h.add_parser("mul", parents=[common, with_n])
    s.add_argument("--x", required=True, help="HallElement JSON")
    s.add_argument("--y", required=True)
    s = h.add_parser("central", parents=[common, with_n])
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--which", choices=("c", "x"), default="c")
    s = h.add_parser("gamma", parents=[common, with_n])
    s.add_argument("--d", required=True, help='line dimension vector, e.g. {"0":1,"2":1}')
    s.add_argument("--x", default=None, help="HallElement JSON (default: ũ of the reduced semisimple grade)")
    s = h.add_parser("canonical", parents=[common, with_n])
    s.add_argument("--grade", required=True)

    w = sub.add_parser("wedge").add_subparsers(dest="sub", required=True)
    s = w.add_parser("straighten", parents=[common, with_n])
    s.add_argument("--word", required=True, help="JSON list of integers")
    s = w.add_parser("heisenberg", parents=[common, with_n])
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--sign", choices=("+", "-"), required=True)
    s.add_argument("--op", choices=("B", "z"), default="B")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam")
    g.add_argument("--wedge", help='WedgeMonomial JSON, e.g. {"charge":0,"prefix":[2,-1]}')

    f = sub.add_parser("fock").add_subparsers(dest="sub", required=True)
    for name in ("canonical", "census"):
        s = f.add_parser(name, parents=[common, with_n])
        s.add_argument("--max-size", type=int, default=None)
    s = f.add_parser("ladder", parents=[common, with_n])
    s.add_argument("--lambda", dest="lam", required=True)

    s = sub.add_parser("verify", parents=[common, with_n])
    s.add_argument("--suite", choices=VV.SUITES + ("all",), default="all")
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--t-max", type=int, default=2)
    return p


_NEEDS_N_DEFAULT = 2
_MAX_SIZE_DEFAULT = 4


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    _ARGV[:] = argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args = _merge_config(args)
        if hasattr(args, "n") and args.n is None and not getattr(args, "line", False):
            args.n = _NEEDS_N_DEFAULT
        if hasattr(args, "max_size") and args.max_size is None:
            args.max_size = _MAX_SIZE_DEFAULT
        _validate(args)
        handler = {"quiver": cmd_quiver, "hall": cmd_hall, "wedge": cmd_wedge,
                   "fock": cmd_fock, "verify": cmd_verify}[args.cmd]
        return handler(args)
    except (UsageError, OSError) as e:
        print(f"fockhall: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"fockhall: {e}", file=sys.stderr)
        return 2
    except ArithmeticError as e:
        print(f"fockhall: internal inconsistency: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
