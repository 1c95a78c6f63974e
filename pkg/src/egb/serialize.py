"""Machine-readable interfaces: rational-string JSON, CSV tables, SVG bars.

Rationals are serialized as exact strings ("3/4", "-2", "inf"), never
floats; floats appear only inside the SVG rendering coordinates, which are
a human-facing drawing.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .eggbeater import FixedPointRecord
from .equivariant import ZpPersistenceModule
from .field import (
    CyclotomicField,
    CyclotomicNumber,
    Field,
    Matrix,
    QQ_FIELD,
)
from .model import BoundsReport
from .persistence import (
    Bar,
    Barcode,
    FilteredComplex,
    FinitePersistenceModule,
    INF,
    is_inf,
)


def frac_str(x) -> str:
    if is_inf(x):
        return "inf"
    return str(Fraction(x))


def parse_frac(s: str, allow_inf: bool = False):
    s = s.strip()
    if s in ("inf", "+inf", "Infinity"):
        if not allow_inf:
            raise ValueError("inf not allowed here")
        return INF
    return Fraction(s)


# -- barcodes -------------------------------------------------------------------


def barcode_to_obj(barcode: Barcode) -> list[dict]:
    return [
        {
            "birth": frac_str(bar.birth),
            "death": frac_str(bar.death),
            "mult": mult,
            "degree": degree,
        }
        for bar, mult, degree in barcode.items
    ]


def barcode_from_obj(obj) -> Barcode:
    if not isinstance(obj, list):
        raise ValueError("barcode JSON must be an array of bar objects")
    entries = []
    for item in obj:
        birth = parse_frac(item["birth"])
        death = parse_frac(item["death"], allow_inf=True)
        mult = int(item.get("mult", 1))
        degree = item.get("degree")
        if degree is not None:
            degree = int(degree)
        entries.append((Bar(birth, death), mult, degree))
    return Barcode.of(entries)


def barcode_to_json(barcode: Barcode) -> str:
    return json.dumps(barcode_to_obj(barcode), indent=2, sort_keys=True)


def barcode_from_json(text: str) -> Barcode:
    return barcode_from_obj(json.loads(text))


# -- fields and matrices --------------------------------------------------------


def field_to_obj(field: Field):
    if isinstance(field, CyclotomicField):
        return {"cyclotomic": field.p}
    return "Q"


def field_from_obj(obj) -> Field:
    if obj == "Q" or obj is None:
        return QQ_FIELD
    if isinstance(obj, dict) and "cyclotomic" in obj:
        return CyclotomicField(int(obj["cyclotomic"]))
    raise ValueError(f"unknown field spec {obj!r}")


def element_to_obj(x):
    if isinstance(x, CyclotomicNumber):
        if x.is_rational():
            return frac_str(x.rational_part())
        return [frac_str(c) for c in x.coords]
    return frac_str(x)


def element_from_obj(field: Field, obj):
    if isinstance(obj, list):
        if not isinstance(field, CyclotomicField):
            raise ValueError("coordinate-list element in a rational matrix")
        coords = [parse_frac(c) for c in obj]
        return CyclotomicNumber(field.p, tuple(coords))
    return field.coerce(parse_frac(obj))


def matrix_to_obj(m: Matrix) -> list[list]:
    return [[element_to_obj(x) for x in row] for row in m.entries]


def matrix_from_obj(field: Field, obj, rows: int, cols: int) -> Matrix:
    if len(obj) != rows or any(len(r) != cols for r in obj):
        raise ValueError(f"matrix JSON is not {rows}x{cols}")
    if rows == 0:
        return Matrix.zeros(field, 0, cols)
    return Matrix.from_rows(field, [[element_from_obj(field, x) for x in row] for row in obj])


# -- filtered complexes ---------------------------------------------------------


def complex_to_obj(cx: FilteredComplex) -> dict:
    return {
        "field": field_to_obj(cx.field),
        "generators": [
            {"action": frac_str(a), "degree": d} for a, d in cx.generators
        ],
        "boundary": matrix_to_obj(cx.boundary),
    }


def complex_from_obj(obj) -> FilteredComplex:
    field = field_from_obj(obj.get("field"))
    gens = tuple(
        (parse_frac(g["action"]), int(g["degree"])) for g in obj["generators"]
    )
    n = len(gens)
    boundary = matrix_from_obj(field, obj["boundary"], n, n)
    return FilteredComplex(field, gens, boundary)


# -- persistence and Z_p modules --------------------------------------------------


def module_to_obj(module: FinitePersistenceModule) -> dict:
    return {
        "field": field_to_obj(module.field),
        "spectrum": [frac_str(s) for s in module.spectrum],
        "dims": list(module.dims),
        "transitions": [matrix_to_obj(t) for t in module.transitions],
    }


def module_from_obj(obj) -> FinitePersistenceModule:
    field = field_from_obj(obj.get("field"))
    spectrum = tuple(parse_frac(s) for s in obj["spectrum"])
    dims = tuple(int(d) for d in obj["dims"])
    transitions = tuple(
        matrix_from_obj(field, t, dims[i + 1], dims[i])
        for i, t in enumerate(obj["transitions"])
    )
    return FinitePersistenceModule(field, spectrum, dims, transitions)


def zp_module_to_obj(module: ZpPersistenceModule) -> dict:
    obj = module_to_obj(module.base)
    obj["p"] = module.p
    obj["degree"] = module.degree
    obj["action"] = [matrix_to_obj(a) for a in module.action]
    return obj


def zp_module_from_obj(obj) -> ZpPersistenceModule:
    p = int(obj["p"])
    base_obj = dict(obj)
    base_obj.setdefault("field", {"cyclotomic": p})
    base = module_from_obj(base_obj)
    action = tuple(
        matrix_from_obj(base.field, a, base.dims[i], base.dims[i])
        for i, a in enumerate(obj["action"])
    )
    return ZpPersistenceModule(p, base, action, degree=int(obj.get("degree", 0)))


# -- fixed point records -----------------------------------------------------------


CSV_HEADER = "signs,x0,y0,action_exact,action_leading,det,valid,rejection_reason"


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        x0 = frac_str(r.point[0]) if r.point else ""
        y0 = frac_str(r.point[1]) if r.point else ""
        action = frac_str(r.action) if r.action is not None else ""
        reason = (r.reason or "").replace(",", ";")
        lines.append(
            f"{r.label()},{x0},{y0},{action},{frac_str(r.action_leading)},"
            f"{frac_str(r.det)},{str(r.valid).lower()},{reason}"
        )
    return "\n".join(lines) + "\n"


def record_to_obj(r: FixedPointRecord) -> dict:
    return {
        "signs": r.label(),
        "valid": r.valid,
        "rejection_reason": r.reason,
        "x0": frac_str(r.point[0]) if r.point else None,
        "y0": frac_str(r.point[1]) if r.point else None,
        "even_points": [[frac_str(x), frac_str(y)] for x, y in r.even_points],
        "odd_points": [[frac_str(x), frac_str(y)] for x, y in r.odd_points],
        "action_exact": frac_str(r.action) if r.action is not None else None,
        "action_leading": frac_str(r.action_leading),
        "det": frac_str(r.det),
        "kink_distance": frac_str(r.kink_distance) if r.kink_distance is not None else None,
    }


def bounds_report_to_obj(report: BoundsReport, provenance: dict | None = None) -> dict:
    obj = {
        "p": report.p,
        "k": report.k,
        "lambda": frac_str(report.lam) if report.lam is not None else None,
        "mu_p_model": frac_str(report.mu_p_model),
        "mu_p_model_note": "zero-differential model value; actual Floer bars are finite",
        "mu_p_paper_bound": frac_str(report.mu_p_paper_bound),
        "pow_bound": frac_str(report.pow_bound),
        "aut_bound": frac_str(report.aut_bound),
        "gap": frac_str(report.gap),
    }
    if provenance is not None:
        obj["provenance"] = provenance
    return obj


# -- SVG ----------------------------------------------------------------------------


def barcode_svg(barcode: Barcode, width: int = 640, row_height: int = 14) -> str:
    """Bars as horizontal segments ordered by birth; infinite bars run to the
    right margin and are drawn dashed."""
    bars = barcode.expand()  # already birth-sorted by canonical order
    if not bars:
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="20">'
            "<text x='4' y='14' font-size='10'>empty barcode</text></svg>"
        )
    births = [float(b.birth) for b, _ in bars]
    finite_deaths = [float(b.death) for b, _ in bars if b.finite]
    lo = min(births)
    hi = max(finite_deaths + births)
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    margin = 40.0
    scale = (width - 2 * margin) / span

    def sx(v: float) -> float:
        return margin + (v - lo) * scale

    height = row_height * (len(bars) + 1)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
    ]
    for i, (bar, degree) in enumerate(bars):
        y = row_height * (i + 1) - row_height / 2
        x1 = sx(float(bar.birth))
        if bar.finite:
            x2 = sx(float(bar.death))
            dash = ""
        else:
            x2 = width - margin / 2
            dash = ' stroke-dasharray="6 3"'
        label = f"({bar.birth}, {'inf' if not bar.finite else bar.death}]"
        if degree is not None:
            label += f" deg {degree}"
        parts.append(
            f'<line x1="{x1:.2f}" y1="{y:.2f}" x2="{x2:.2f}" y2="{y:.2f}" '
            f'stroke="black" stroke-width="3"{dash}/>'
        )
        parts.append(
            f'<text x="{x2 + 4:.2f}" y="{y + 3:.2f}" font-size="9">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
