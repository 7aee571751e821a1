"""JSON and text serialization of syzygy reports."""

from __future__ import annotations

import json
from fractions import Fraction

from .chainspace import (ChainSpaceParams, IotaMatrix, SyzygyReport, base_ring, subset_str)
from .homological import SyzygyOrder
from .modules import FreeModule, Presentation, matrix_from_text, matrix_to_text


def _subsets_out(sets) -> list:
    return [[j + 1 for j in range(J.bit_length()) if J >> j & 1] for J in sets]


def _subsets_in(lists) -> tuple:
    return tuple(sum(1 << (j - 1) for j in js) for js in lists)


def _pres_out(p: Presentation) -> dict:
    return {"gen_shifts": list(p.gens.shifts), "relations": matrix_to_text(p.rels)}


def _pres_in(ring, rec: dict) -> Presentation:
    gens = FreeModule(ring, tuple(rec["gen_shifts"]))
    rels = matrix_from_text(ring, rec["relations"])
    if rels.target != gens:
        raise ValueError("relation matrix does not match the generator shifts")
    return Presentation(gens, rels)


def report_to_record(rep: SyzygyReport) -> dict:
    return {
        "params": rep.params.to_record(),
        "long_sets": _subsets_out(rep.long_sets),
        "short_sets": _subsets_out(rep.short_sets),
        "critical_values": [str(v) for v in rep.critical_values],
        "cr_min": str(rep.cr_min),
        "iota": matrix_to_text(rep.iota.matrix),
        "rank_iota": rep.rank_iota,
        "dim_H": rep.dim_H,
        "dim_H_fixed": rep.dim_H_fixed,
        "ker_pres": _pres_out(rep.ker_pres),
        "coker_pres": _pres_out(rep.coker_pres),
        "order": str(rep.order),
        "free": rep.free,
        "zero": rep.is_zero,
        "free_rank": rep.free_rank,
        "classification_predicted": rep.classification_predicted,
        "consistent": rep.consistent,
    }


def report_from_record(rec: dict) -> SyzygyReport:
    params = ChainSpaceParams.from_record(rec["params"])
    ring = base_ring(params)
    longs = _subsets_in(rec["long_sets"])
    shorts = _subsets_in(rec["short_sets"])
    iota = IotaMatrix(shorts, longs, matrix_from_text(ring, rec["iota"]))
    return SyzygyReport(
        params=params,
        long_sets=longs,
        short_sets=shorts,
        critical_values=tuple(Fraction(v) for v in rec["critical_values"]),
        cr_min=Fraction(rec["cr_min"]),
        iota=iota,
        rank_iota=int(rec["rank_iota"]),
        dim_H=int(rec["dim_H"]),
        dim_H_fixed=int(rec["dim_H_fixed"]),
        ker_pres=_pres_in(ring, rec["ker_pres"]),
        coker_pres=_pres_in(ring, rec["coker_pres"]),
        order=SyzygyOrder.parse(rec["order"]),
        free=bool(rec["free"]),
        classification_predicted=rec["classification_predicted"],
        consistent=bool(rec["consistent"]),
        free_rank=rec.get("free_rank"),
    )


def emit_json(rep: SyzygyReport) -> str:
    return json.dumps(report_to_record(rep), indent=2)


def parse_json(text: str) -> SyzygyReport:
    return report_from_record(json.loads(text))


VERDICT_FIELDS = ("order", "free", "zero", "free_rank", "rank_iota", "dim_H", "dim_H_fixed",
                  "classification_predicted", "consistent")


def verdict_fields(rep: SyzygyReport) -> dict:
    rec = report_to_record(rep)
    return {k: rec[k] for k in VERDICT_FIELDS}


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit_text(rep: SyzygyReport, dump_matrices: bool = False) -> str:
    p = rep.params
    lines = [
        f"params: m={p.m} n={p.n} l=({','.join(map(str, p.ell))}) c={p.c}",
        f"long sets L_c: {' '.join(subset_str(J) for J in rep.long_sets) or '(none)'}",
        f"short sets S_c: {' '.join(subset_str(I) for I in rep.short_sets) or '(none)'}",
        f"critical values: {' '.join(map(str, rep.critical_values))}",
        f"cr_min: {rep.cr_min}",
    ]
    lines += [f"{k}: {_fmt(v)}" for k, v in verdict_fields(rep).items()]
    if dump_matrices:
        lines += ["iota:", matrix_to_text(rep.iota.matrix),
                  "coker relations:", matrix_to_text(rep.coker_pres.rels),
                  "ker relations:", matrix_to_text(rep.ker_pres.rels)]
    return "\n".join(lines)


def parse_text_verdicts(text: str) -> dict:
    """Recover the verdict fields from ``emit_text`` output."""
    out = {}
    for ln in text.splitlines():
        key, sep, val = ln.partition(": ")
        if sep and key in VERDICT_FIELDS:
            val = val.strip()
            if val in ("true", "false"):
                out[key] = val == "true"
            elif val == "none":
                out[key] = None
            elif key == "order":
                out[key] = val
            else:
                out[key] = int(val)
    return out
