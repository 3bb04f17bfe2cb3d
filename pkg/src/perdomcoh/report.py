"""Result reports: assembly from the engine and rendering as text, JSON or CSV.

Reports are deterministic: every collection is emitted in a fixed order and
nothing time- or host-dependent is recorded.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass

from . import __version__, engine
from .config import ScenarioConfig, dump_json
from .datum import validate
from .invariants import run_invariants
from .kgroup import CheckReport, VirtualGradedRep, ext_table

REPORT_SCHEMA = "perdomcoh.report/1"
COLUMNS = ("degree", "tate_twist", "steinberg_symbol", "parabolic_subset",
           "galois_orbit_rep", "galois_dim", "orbit_length")
EXT_TABLE_LIMIT = 6  # largest |Delta| whose full Ext table is written out

EXIT_OK, EXIT_ERROR, EXIT_INVALID, EXIT_CHECK_FAILED = 0, 1, 2, 3


@dataclass(frozen=True)
class ResultReport:
    data: dict
    exit_code: int

    def render(self, fmt: str = "text") -> str:
        return render(self.data, fmt)


def _provenance(sc: ScenarioConfig) -> dict:
    return {
        "tool": "perdomcoh",
        "version": __version__,
        "scenario": sc.name,
        "config_sha256": sc.digest,
        "cap": sc.options["cap"],
    }


def _check_dict(c: CheckReport) -> dict:
    return {"name": c.name, "passed": c.passed, "items": list(c.items)}


def _page_dict(page: engine.SpectralPage) -> list[dict]:
    return [
        {"p": p, "q": q, "orbit": o, "symbols": [str(s) for s in page.entries[(p, q, o)]]}
        for (p, q, o) in page.keys()
    ]


def _tokens(rep: VirtualGradedRep) -> list[dict]:
    return [{"degree": d, "token": str(s), "mult": m} for (d, s), m in rep.items()]


def _validation_list(report) -> list[dict]:
    out = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks]
    out += [{"name": c.name, "passed": c.passed, "detail": c.detail, "informational": True}
            for c in report.info]
    return out


def build_report(sc: ScenarioConfig) -> ResultReport:
    """Run validate, the main formula and whatever the options request."""
    datum, opts = sc.datum, sc.options
    cap = opts["cap"]
    data: dict = {"schema": REPORT_SCHEMA, "provenance": _provenance(sc)}
    vrep = validate(datum)
    if not vrep.ok:
        data["status"] = "invalid"
        data["validation"] = _validation_list(vrep)
        return ResultReport(data, EXIT_INVALID)

    data["status"] = "ok"
    data["delta"] = list(datum.delta)
    data["center_rank"] = datum.inner_form.center_rank
    data["summands"] = [s.row() for s in engine.compute_cohomology(datum, cap)]
    exit_code = EXIT_OK

    if opts["pages"]:
        data["pages"] = {
            "E1": _page_dict(engine.e1_page(datum, cap)),
            "E2": _page_dict(engine.e2_page(datum, cap)),
        }
    if opts["euler"]:
        flag = engine.flag_cohomology(datum, cap).euler().expand()
        dom = engine.domain_rep(datum, cap).euler().expand()
        comp = engine.y_cohomology(datum, cap).euler().expand()
        data["euler"] = {
            "flag": _tokens(flag),
            "domain": _tokens(dom),
            "complement": _tokens(comp),
            "defect": _tokens(flag - dom - comp),
        }
    if opts["checks"]:
        split, pairs = engine.check_splitting(datum, cap)
        suite = run_invariants(datum, cap, include_engine_checks=False)
        checks = {
            "validation": _validation_list(vrep),
            "les": _check_dict(engine.les_consistency(datum, cap)),
            "row_euler": _check_dict(engine.row_euler_check(datum, cap)),
            "splitting": {
                **_check_dict(split),
                "pairs": [
                    {"first": p.first, "second": p.second, "degree": p.degree,
                     "lengths": list(p.lengths), "subset_sizes": list(p.sizes),
                     "gap": p.gap, "ext1": p.ext1, "ok": p.ok}
                    for p in pairs
                ],
            },
            "invariants": [_check_dict(c) for c in suite],
        }
        delta = datum.delta
        if len(delta) <= EXT_TABLE_LIMIT:
            r = datum.inner_form.center_rank
            table = ext_table(delta, r, len(delta) + r)
            checks["ext_table"] = [
                {"I": list(a), "I_prime": list(b), "dims": dims} for (a, b), dims in table.items()
            ]
        data["checks"] = checks
        passed = (checks["les"]["passed"] and checks["row_euler"]["passed"]
                  and split.passed and all(c.passed for c in suite))
        data["checks_passed"] = passed
        if not passed:
            exit_code = EXIT_CHECK_FAILED
    return ResultReport(data, exit_code)


# -- rendering --------------------------------------------------------------------


def _cell(key: str, value) -> str:
    if key == "parabolic_subset":
        return "{" + ",".join(value) + "}"
    return str(value)


def _table(rows: list[dict]) -> list[str]:
    cells = [list(COLUMNS)] + [[_cell(k, r[k]) for k in COLUMNS] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(COLUMNS))]
    return ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]


def _render_text(data: dict) -> str:
    prov = data["provenance"]
    out = [f"# {prov['tool']} {prov['version']}  scenario {prov['scenario']}",
           f"# config sha256 {prov['config_sha256']}"]
    if data["status"] == "invalid":
        out.append("status: INVALID period datum")
        for c in data["validation"]:
            if c.get("informational"):
                continue
            mark = "pass" if c["passed"] else "FAIL"
            out.append(f"  [{mark}] {c['name']}" + (f"  ({c['detail']})" if c["detail"] else ""))
        return "\n".join(out) + "\n"

    out.append(f"Delta = {{{','.join(data['delta'])}}}  centre rank {data['center_rank']}")
    out.append("")
    out += _table(data["summands"])
    for name, entries in data.get("pages", {}).items():
        out += ["", f"{name} page" + ("" if entries else " (empty)")]
        for e in entries:
            out.append(f"  p={e['p']} q={e['q']} [{e['orbit']}]: " + " + ".join(e["symbols"]))
    if "euler" in data:
        out += ["", "Euler characteristics (i-expanded)"]
        for key, toks in data["euler"].items():
            body = " ".join(f"{t['mult']:+d}*{t['token']}" for t in toks) or "0"
            out.append(f"  {key}: {body}")
    if "checks" in data:
        checks = data["checks"]
        out += ["", "checks"]
        bad = [c for c in checks["validation"] if not c["passed"] and not c.get("informational")]
        out.append(f"  [{'FAIL' if bad else 'pass'}] validation ({len(checks['validation'])} checks)")
        for c in (checks["les"], checks["row_euler"], checks["splitting"], *checks["invariants"]):
            out.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
            out += [f"      {item}" for item in c["items"]]
        if "ext_table" in checks:
            nonzero = sum(1 for e in checks["ext_table"] if any(e["dims"]))
            out.append(f"  ext table: {len(checks['ext_table'])} pairs, {nonzero} with nonzero Ext")
        out.append("all checks passed" if data["checks_passed"] else "SOME CHECKS FAILED")
    return "\n".join(out) + "\n"


def _render_csv(data: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if data["status"] == "invalid":
        writer.writerow(["check", "passed", "detail"])
        for c in data["validation"]:
            writer.writerow([c["name"], c["passed"], c["detail"]])
        return buf.getvalue()
    writer.writerow(COLUMNS)
    for r in data["summands"]:
        writer.writerow([_cell(k, r[k]) for k in COLUMNS])
    return buf.getvalue()


def render(data: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json(data)
    if fmt == "csv":
        return _render_csv(data)
    if fmt == "text":
        return _render_text(data)
    raise ValueError(f"unknown format {fmt!r}")


def summand_key(row: dict) -> tuple:
    return tuple(tuple(row[k]) if k == "parabolic_subset" else row[k] for k in COLUMNS)


def summands_from_report(text: str) -> Counter:
    """Multiset of summand rows read back from a JSON report."""
    data = json.loads(text)
    return Counter(summand_key(r) for r in data.get("summands", []))
