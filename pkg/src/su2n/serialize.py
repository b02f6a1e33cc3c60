"""JSON and CSV persistence.

Element encoding: {"t1": s, "t2": s, "phi": [s, s], "x": [[s, s], ...],
"y": [[s, s], ...], "eta": [s, s], "xx": s, "yy": s} where each s is either a
double or an exact "p/q" string.  A subalgebra file wraps a basis with its n
and mode; AN-subgroup specs carry a "kind" of semidirect / graph / oneparam.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .anclassify import Graph, OneParam, Semidirect, TorusLine
from .elements import AlgebraElement
from .scalars import QQi, format_rational, im, re
from .subalgebra import Subalgebra


def _scalar_out(v, mode):
    if mode == "float":
        return float(v)
    return format_rational(v if isinstance(v, Fraction) else Fraction(v))


def _scalar_in(s, mode):
    if mode == "float":
        return float(s)
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    return Fraction(s)


def _cx_out(v, mode):
    return [_scalar_out(re(v), mode), _scalar_out(im(v), mode)]


def _cx_in(pair, mode):
    a, b = _scalar_in(pair[0], mode), _scalar_in(pair[1], mode)
    return complex(a, b) if mode == "float" else QQi(a, b)


def element_to_json(e: AlgebraElement) -> dict:
    m = e.mode
    return {
        "t1": _scalar_out(e.t1, m), "t2": _scalar_out(e.t2, m),
        "phi": _cx_out(e.phi, m),
        "x": [_cx_out(v, m) for v in e.x],
        "y": [_cx_out(v, m) for v in e.y],
        "eta": _cx_out(e.eta, m),
        "xx": _scalar_out(e.xx, m), "yy": _scalar_out(e.yy, m),
    }


def element_from_json(d: dict, n: int, mode: str) -> AlgebraElement:
    return AlgebraElement(
        n,
        t1=_scalar_in(d.get("t1", 0), mode), t2=_scalar_in(d.get("t2", 0), mode),
        phi=_cx_in(d.get("phi", [0, 0]), mode),
        x=[_cx_in(p, mode) for p in d.get("x", [[0, 0]] * (n - 2))],
        y=[_cx_in(p, mode) for p in d.get("y", [[0, 0]] * (n - 2))],
        eta=_cx_in(d.get("eta", [0, 0]), mode),
        xx=_scalar_in(d.get("xx", 0), mode), yy=_scalar_in(d.get("yy", 0), mode),
        mode=mode)


def subalgebra_to_json(h: Subalgebra) -> dict:
    return {"n": h.n, "mode": "float" if h.mode == "float" else "exact",
            "basis": [element_to_json(b) for b in h.basis]}


def subalgebra_from_json(d: dict) -> Subalgebra:
    n, mode = int(d["n"]), d.get("mode", "exact")
    return Subalgebra([element_from_json(e, n, mode) for e in d["basis"]])


def spec_to_json(spec) -> dict:
    if isinstance(spec, Subalgebra):
        out = subalgebra_to_json(spec)
        out["kind"] = "nil"
        return out
    if isinstance(spec, Semidirect):
        out = subalgebra_to_json(spec.u)
        out.update({"kind": "semidirect", "torus": [spec.torus.p, spec.torus.q]})
        return out
    if isinstance(spec, Graph):
        out = subalgebra_to_json(spec.u)
        out.update({"kind": "graph", "omega": spec.omega,
                    "psi": element_to_json(spec.psi_value)})
        return out
    if isinstance(spec, OneParam):
        return {"kind": "oneparam", "n": spec.n,
                "mode": spec.x.mode, "x": element_to_json(spec.x)}
    raise TypeError(f"cannot serialize {type(spec).__name__}")


def spec_from_json(d: dict):
    kind = d.get("kind", "nil")
    if kind == "nil":
        return subalgebra_from_json(d)
    if kind == "semidirect":
        u = subalgebra_from_json(d)
        p, q = d["torus"]
        return Semidirect(TorusLine(int(p), int(q)), u)
    if kind == "graph":
        u = subalgebra_from_json(d)
        psi = element_from_json(d["psi"], int(d["n"]), d.get("mode", "exact"))
        return Graph(d["omega"], psi, u)
    if kind == "oneparam":
        mode = d.get("mode", "exact")
        return OneParam(element_from_json(d["x"], int(d["n"]), mode))
    raise ValueError(f"unknown spec kind {kind!r}")


def load_spec(path):
    with open(path) as f:
        return spec_from_json(json.load(f))


def dump_spec(spec, path):
    with open(path, "w") as f:
        json.dump(spec_to_json(spec), f, indent=1)
        f.write("\n")


def classification_report(result, spec=None) -> dict:
    """Report dict for either a ClassificationResult or an AnResult."""
    from .anclassify import AnResult
    from .nilclassify import ClassificationResult

    if isinstance(result, ClassificationResult):
        wit = {}
        if result.square:
            wit["square"] = {"condition": result.square.condition_id,
                             "exact": result.square.exact}
        if result.linear:
            wit["linear"] = {"condition": result.linear.condition_id,
                             "exact": result.linear.exact}
        return {
            "verdict": result.verdict,
            "type": result.template.type_id if result.template else None,
            "shape": result.shape.to_json(),
            "witnesses": wit,
            "normalizer": str(result.normalizer),
            "seed": result.seed,
        }
    if isinstance(result, AnResult):
        out = {
            "verdict": result.verdict,
            "case": result.case,
            "shape": result.shape.to_json(),
            "notes": result.notes,
        }
        if result.r is not None:
            out["r"] = result.r
        if result.nil_result is not None:
            out["unipotent_part"] = classification_report(result.nil_result)
        return out
    raise TypeError(f"cannot report {type(result).__name__}")


def cloud_to_csv(cloud, path):
    rows = cloud.to_rows()
    with open(path, "w") as f:
        f.write("t,log10_norm,log10_rho,curve_id\n")
        for t, ln, lr, tag in rows:
            tv = "" if t is None else repr(float(t))
            f.write(f"{tv},{ln!r},{lr!r},{tag}\n")
