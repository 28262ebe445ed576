"""Command-line front end: ``ellrank {analyze,bounds,zeta,oracle} FILE``.

Curve files are ``key = value`` lines (``#`` starts a comment)::

    field = finite        # or: rationals
    p = 7
    m = 1                 # optional, default 1
    modulus = w^2 + 1     # optional, for m > 1
    a = 0
    b = t^5 + 1
    torsion_dim_p2 = 0    # optional assertion
    good_prime_3 = yes    # optional assertion
    note = free text      # optional, repeatable

Reports are a fixed-width table (default) or a JSON document (``--json``).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .algebra import QQ, ExtensionField, PrimeField, parse_poly, smallest_irreducible
from .errors import CapabilityError, EllRankError, HypothesisViolated, ParseError

SCHEMA_VERSION = 1

KNOWN_KEYS = {"field", "p", "m", "modulus", "a", "b", "torsion_dim_p2", "good_prime_3", "note"}
TRUE_WORDS = {"1", "true", "yes"}
FALSE_WORDS = {"0", "false", "no"}


# --- input files ------------------------------------------------------------------

@dataclass
class CurveInput:
    field_kind: str
    p: int | None
    m: int
    modulus: str | None
    a: str
    b: str
    torsion_dim_p2: int | None = None
    good_prime_3: bool = False
    notes: list = field(default_factory=list)
    base: object = None
    model: object = None

    def describe(self):
        out = {"field": self.field_kind, "a": self.a, "b": self.b}
        if self.field_kind == "finite":
            out.update(p=self.p, m=self.m)
            if self.base is not None and self.m > 1:
                out["modulus"] = _modulus_text(self.base)
        if self.torsion_dim_p2 is not None:
            out["torsion_dim_p2"] = self.torsion_dim_p2
        if self.good_prime_3:
            out["good_prime_3"] = True
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _modulus_text(L):
    from .algebra import Poly

    return Poly(L.base, L.modulus).format("w")


def _int_value(key, value, line, column):
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}", line, column) from None


def parse_curve_text(text):
    """Parse a curve file into a :class:`CurveInput` with the model built."""
    from .places import EllipticSurfaceModel

    raw = {}
    where = {}
    notes = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, len(body) - len(body.lstrip()) + 1)
        key, value = body.split("=", 1)
        k = key.strip().lower()
        if k not in KNOWN_KEYS:
            raise ParseError(f"unknown key {key.strip()!r}", lineno, len(key) - len(key.lstrip()) + 1)
        col = len(key) + 2 + (len(value) - len(value.lstrip()))
        if k == "note":
            notes.append(value.strip())
            continue
        if k in raw:
            raise ParseError(f"duplicate key {k!r}", lineno, 1)
        raw[k] = value.strip()
        where[k] = (lineno, col)

    def need(k):
        if k not in raw:
            raise ParseError(f"missing key {k!r}")
        return raw[k]

    kind = need("field").lower()
    if kind not in ("rationals", "finite"):
        raise ParseError("field must be 'rationals' or 'finite'", *where["field"])
    p = m = None
    modulus_text = raw.get("modulus")
    if kind == "finite":
        p = _int_value("p", need("p"), *where["p"])
        m = _int_value("m", raw["m"], *where["m"]) if "m" in raw else 1
        if p in (2, 3):
            raise ParseError("characteristic 2 and 3 are not supported", *where["p"])
        from sympy import isprime

        if not isprime(p):
            raise ParseError(f"p = {p} is not prime", *where["p"])
        if m < 1:
            raise ParseError("m must be >= 1", *where["m"])
        F = PrimeField(p)
        if m == 1:
            if modulus_text:
                raise ParseError("modulus given for a prime field", *where["modulus"])
            base = F
        else:
            if modulus_text:
                line, col = where["modulus"]
                M = parse_poly(modulus_text, F, var="w", line=line, column_offset=col - 1)
                from .algebra.factor import is_irreducible

                if M.degree() != m or not is_irreducible(M):
                    raise ParseError(f"modulus must be irreducible of degree {m}", line, col)
            else:
                M = smallest_irreducible(F, m)
            base = ExtensionField(F, M.coeffs, name="w")
    else:
        if "p" in raw or "m" in raw or modulus_text:
            raise ParseError("p, m and modulus only apply to finite fields")
        base = QQ
    polys = {}
    for k in ("a", "b"):
        line, col = where.get(k, (None, None))
        polys[k] = parse_poly(need(k), base, var="t", line=line, column_offset=(col or 1) - 1)
    tors = raw.get("torsion_dim_p2")
    gp3 = raw.get("good_prime_3", "no").lower()
    if gp3 not in TRUE_WORDS | FALSE_WORDS:
        raise ParseError("good_prime_3 must be yes or no", *where["good_prime_3"])
    ci = CurveInput(
        kind, p, m or 1, modulus_text, raw["a"], raw["b"],
        _int_value("torsion_dim_p2", tors, *where["torsion_dim_p2"]) if tors is not None else None,
        gp3 in TRUE_WORDS, notes, base,
    )
    ci.model = EllipticSurfaceModel(base, polys["a"], polys["b"])
    return ci


def load_curve(path):
    with open(path, encoding="utf-8") as fh:
        return parse_curve_text(fh.read())


# --- report documents ----------------------------------------------------------

def emit(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report(text):
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise EllRankError(f"unsupported report schema {doc.get('schema_version')!r}")
    return doc


def local_rows(summary):
    rows = []
    for d in summary.sigma:
        rows.append({
            "place": d.place.label(),
            "degree": d.degree,
            "type": str(d.kodaira),
            "f_v": d.f_v,
            "c_v": d.c_v,
            "c_v_geom": d.c_v_geom,
            "m_v": d.m_v,
            "delta_min": d.delta_min_v,
            "eps_arith": d.eps_arith,
            "eps_geom": d.eps_geom,
            "split": d.split,
        })
    return rows


def summary_dict(s):
    return {
        "deg_f": s.deg_f,
        "delta_min_deg": s.delta_min_deg,
        "chi": s.chi,
        "p_g": s.p_g,
        "genus_base": s.genus_base,
        "p": s.p,
        "count_p_divides_c": s.count_p_divides_c(),
        "count_full_I2n_star": s.count_full_I2n_star(),
        "eps_sum_arith": s.eps_sum_arith,
        "eps_sum_geom": s.eps_sum_geom,
    }


def descent_dict(c):
    return {
        "cubic": c.cubic_text(),
        "genus": c.genus,
        "deg_R": c.deg_R,
        "ramification": {v.label(): r for v, r in sorted(c.ram_degrees.items())},
        "certificate": c.certificate.describe(),
    }


def _base_doc(command, ci):
    return {"schema_version": SCHEMA_VERSION, "command": command, "version": __version__,
            "input": ci.describe()}


def cmd_analyze(ci):
    from .bounds import igusa_equivalence_check
    from .descent import build_descent_curve
    from .tate import global_summary

    doc = _base_doc("analyze", ci)
    s = global_summary(ci.model)
    doc["local_data"] = local_rows(s)
    doc["summary"] = summary_dict(s)
    try:
        c = build_descent_curve(ci.model, s)
    except HypothesisViolated as exc:
        doc["descent"] = None
        doc["hypothesis_violated"] = str(exc)
        return doc, exc
    doc["descent"] = descent_dict(c)
    doc["identity_check"] = igusa_equivalence_check(s, c)
    return doc, None


def cmd_bounds(ci, p=2, good_primes=(), torsion_dim=None, geometric=False, brumer_c=None,
               workers=1):
    from .bounds import BoundOptions, assemble_report

    if torsion_dim is None and p == 2 and not geometric:
        torsion_dim = ci.torsion_dim_p2
    opts = BoundOptions(p=p, geometric=geometric, torsion_dim=torsion_dim,
                        good_primes=tuple(good_primes), brumer_c=brumer_c,
                        good_reduction_at_3=ci.good_prime_3, workers=workers)
    r = assemble_report(ci.model, opts)
    doc = _base_doc("bounds", ci)
    doc["options"] = {"p": p, "geometric": geometric, "good_primes": list(good_primes),
                      "torsion_dim": torsion_dim, "brumer_c": brumer_c}
    doc["local_data"] = local_rows(r.summary)
    doc["summary"] = summary_dict(r.summary)
    doc["descent"] = descent_dict(r.descent) if r.descent is not None else None
    doc["identity_check"] = r.identity_check
    doc["torsion"] = r.torsion.to_dict() if r.torsion is not None else None
    doc["bounds"] = [e.to_dict() for e in r.entries]
    doc["best_bound"] = r.best_bound
    doc["best_bound_from"] = r.best_names
    doc["mode"] = r.mode
    doc["notes"] = list(r.notes)
    if r.hypothesis_violated:
        doc["hypothesis_violated"] = r.hypothesis_violated
    return doc, HypothesisViolated(r.hypothesis_violated) if r.hypothesis_violated else None


def _finite_only(ci):
    if not ci.base.is_finite:
        raise CapabilityError("this command needs a finite base field")


def cmd_zeta(ci, extension_max=None, workers=1):
    from .bounds import bhargava_dim_bound
    from .descent import build_descent_curve
    from .zeta import PointCounter, l_polynomial, two_torsion_bounds

    _finite_only(ci)
    c = build_descent_curve(ci.model)
    g = c.genus
    top = max(g, extension_max or 0)
    pc = PointCounter(ci.model)
    counts = [pc.count(i, workers) for i in range(1, top + 1)]
    P = l_polynomial(counts[:g], pc.q, g)
    predicted = P.point_counts(top)
    if predicted != counts:
        from .errors import ConsistencyError

        raise ConsistencyError(f"counts {counts} disagree with the L-polynomial {predicted}")
    b = two_torsion_bounds(P)
    doc = _base_doc("zeta", ci)
    doc["genus"] = g
    doc["q"] = pc.q
    doc["counts"] = {str(i): n for i, n in enumerate(counts, start=1)}
    doc["l_polynomial"] = {"coefficients": list(P.coeffs), "text": P.format() or "1",
                           "class_number": P.class_number()}
    doc["torsion_interval"] = {"lower": b.lower, "upper": b.upper, "notes": list(b.notes)}
    if pc.q % 2:
        bh = bhargava_dim_bound(g, pc.q, 3)
        doc["point_count_dim_bound"] = {"value": bh.dim, "real": round(bh.real, 12)}
    return doc, None


def cmd_oracle(ci):
    from .descent import build_descent_curve
    from .jacobian import DescentJacobian
    from .zeta import two_torsion_bounds, zeta_of

    _finite_only(ci)
    c = build_descent_curve(ci.model)
    J = DescentJacobian(ci.model, c.genus)
    if c.genus:
        _, P = zeta_of(ci.model, c.genus)
        h_zeta = P.class_number()
        b = two_torsion_bounds(P)
    else:
        h_zeta, b = 1, None
    h = J.class_number()
    if h != h_zeta:
        from .errors import ConsistencyError

        raise ConsistencyError(f"oracle found {h} classes, P(1) = {h_zeta}")
    r = J.two_rank()
    doc = _base_doc("oracle", ci)
    doc["genus"] = c.genus
    doc["class_number"] = h
    doc["two_torsion_count"] = 2**r
    doc["two_rank"] = r
    doc["torsion_interval"] = None if b is None else {"lower": b.lower, "upper": b.upper}
    if b is not None and not b.lower <= r <= b.upper:
        from .errors import ConsistencyError

        raise ConsistencyError(f"2-rank {r} outside [{b.lower}, {b.upper}]")
    return doc, None


# --- tables ------------------------------------------------------------------------

def _table(headers, rows):
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    out.extend(fmt.format(*(str(x) for x in r)) for r in rows)
    return "\n".join(out)


def render_table(doc):
    lines = [f"ellrank {doc['command']}  (schema {doc['schema_version']})"]
    inp = doc["input"]
    lines.append(f"curve: y^2 = x^3 + ({inp['a']})*x + ({inp['b']})  over {inp['field']}"
                 + (f" GF({inp['p']}^{inp['m']})" if inp["field"] == "finite" else ""))
    if "local_data" in doc:
        keys = ["place", "degree", "type", "f_v", "c_v", "c_v_geom", "eps_arith", "eps_geom"]
        lines += ["", _table(keys, [[r[k] for k in keys] for r in doc["local_data"]])]
    if "summary" in doc:
        s = doc["summary"]
        lines += ["", f"deg f = {s['deg_f']}   chi = {s['chi']}   p_g = {s['p_g']}"]
    if doc.get("descent"):
        d = doc["descent"]
        lines.append(f"descent curve: genus {d['genus']}, deg R = {d['deg_R']}; {d['certificate']}")
    if "identity_check" in doc:
        lines.append(f"identity 2g(C) + sum eps = deg f - 4: {doc['identity_check']}")
    if doc.get("hypothesis_violated"):
        lines.append(f"hypothesis: {doc['hypothesis_violated']}")
    if "bounds" in doc:
        rows = []
        for e in doc["bounds"]:
            val = "n/a" if not e["applicable"] else e["value"]
            real = f"{e['real']:.6f}" if "real" in e else ""
            rows.append([e["name"], val, real, "; ".join(e["notes"])])
        lines += ["", _table(["bound", "value", "real", "notes"], rows)]
        if doc.get("torsion"):
            t = doc["torsion"]
            lines.append(f"dim Pic(C)[p] <= {t['upper']} ({t['provenance']})")
        lines.append(f"best bound: {doc['best_bound']} ({', '.join(doc['best_bound_from'])})")
        lines.extend(f"note: {n}" for n in doc["notes"])
    if "counts" in doc:
        rows = [[i, n] for i, n in doc["counts"].items()]
        lines += ["", _table(["i", "N_i"], rows)]
        lines.append(f"P(T) = {doc['l_polynomial']['text']}   P(1) = "
                     f"{doc['l_polynomial']['class_number']}")
    if doc.get("torsion_interval"):
        t = doc["torsion_interval"]
        lines.append(f"dim Pic(C)[2] in [{t['lower']}, {t['upper']}]")
    if "two_rank" in doc:
        lines.append(f"class number {doc['class_number']}, exact dim Pic(C)[2] = {doc['two_rank']}")
    return "\n".join(lines) + "\n"


# --- entry point ------------------------------------------------------------------

def _primes(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="ellrank", description="Rank bounds for elliptic curves over k(t).")
    ap.add_argument("--version", action="version", version=f"ellrank {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="curve file (key = value lines)")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("--output", help="also write the JSON report to this path")

    common(sub.add_parser("analyze", help="local reduction table and descent curve"))
    b = sub.add_parser("bounds", help="all rank bounds")
    common(b)
    b.add_argument("--p", type=int, default=2, help="prime for the arithmetic inequality (default 2)")
    b.add_argument("--good-primes", type=_primes, default=(),
                   help="comma-separated primes to try for torsion bounds over QQ")
    b.add_argument("--torsion-dim", type=int, help="asserted dim Pic(C)[p]; overrides computed bounds")
    b.add_argument("--geometric", action="store_true",
                   help="use degree-weighted counts and 2g(C) for the torsion term")
    b.add_argument("--brumer-c", type=float, help="constant for the Brumer second term (omitted if absent)")
    b.add_argument("--workers", type=int, default=1, help="threads for point counting")
    z = sub.add_parser("zeta", help="point counts and L-polynomial")
    common(z)
    z.add_argument("--extension-max", type=int, help="count points up to this extension degree (default g)")
    z.add_argument("--workers", type=int, default=1, help="threads for point counting")
    common(sub.add_parser("oracle", help="exact 2-rank by brute force (tiny curves)"))
    return ap


def run(args):
    ci = load_curve(args.file)
    if args.command == "analyze":
        return cmd_analyze(ci)
    if args.command == "bounds":
        return cmd_bounds(ci, args.p, args.good_primes, args.torsion_dim, args.geometric,
                          args.brumer_c, args.workers)
    if args.command == "zeta":
        return cmd_zeta(ci, args.extension_max, args.workers)
    return cmd_oracle(ci)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        doc, status = run(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EllRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    text = emit(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.json else render_table(doc))
    if status is not None:
        print(f"error: {status}", file=sys.stderr)
        return status.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
