"""Reports as JSON-ready dicts plus a plain-text table rendering.

Every number goes through :func:`fmt`, so the table and the JSON carry the
same strings. Exact rationals print as ``p/q``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import numpy as np

SCHEMA_VERSION = "1"


def fmt(v) -> str:
    if isinstance(v, (Fraction, int, np.integer)) and not isinstance(v, bool):
        return str(v)
    return format(float(v), ".12g")


def _sid(s, names):
    return s.rename(dict(enumerate(names, start=1))).id


def _choice(c, names):
    return f"({_sid(c.structure, names)},{c.label})"


def enumeration_report(n: int, k: int, diagrams=None, structures=None) -> dict:
    rep = {"schema_version": SCHEMA_VERSION, "kind": "enumerate", "players": n, "max_size": k}
    if diagrams is not None:
        rep["diagrams"] = [list(d.parts) for d in diagrams]
        rep["count"] = len(diagrams)
    if structures is not None:
        rep["structures"] = [s.id for s in structures]
        rep["count"] = len(structures)
    return rep


def equilibrium_entry(res, induced, index: int = 0) -> dict:
    names = induced.names
    return {
        "index": index,
        "method": res.method,
        "support": [[{"choice": _choice(induced.choice_sets[i][a], names), "probability": fmt(res.profile[i][a])}
                     for a in sup] for i, sup in enumerate(res.support)],
        "profile": [[fmt(v) for v in vec] for vec in res.profile],
        "payoffs": [fmt(v) for v in res.payoffs],
        "regret": [fmt(v) for v in res.regret],
        "structure_distribution": [{"structure": _sid(s, names), "probability": fmt(p)}
                                   for s, p in res.structure_distribution.items()],
        "exact": res.exact,
        "converged": res.converged,
        "component": res.component,
        "degenerate": res.degenerate,
    }


def solve_report(game, results, method: str, max_cells: int = 4096) -> dict:
    g = game.induced
    names = g.names
    rep = {
        "schema_version": SCHEMA_VERSION,
        "kind": "solve",
        "method": method,
        "players": list(names),
        "max_size": game.k_max,
        "mechanism": game.mechanism.name,
        "choices": [[_choice(c, names) for c in cs] for cs in g.choice_sets],
    }
    if g.n_profiles <= max_cells:
        cells = []
        shape = tuple(int(d) for d in g.dims)
        for flat in range(g.n_profiles):
            idx = np.unravel_index(flat, shape)
            o = g.outcomes[g.outcome_index[flat]]
            cells.append({
                "profile": [_choice(g.choice_sets[i][a], names) for i, a in enumerate(idx)],
                "structure": _sid(o.structure, names),
                "labels": list(o.labels),
                "payoffs": [fmt(v) for v in g.payoff_exact[:, flat]],
            })
        rep["induced"] = cells
    rep["equilibria"] = [equilibrium_entry(r, g, j) for j, r in enumerate(results)]
    rep["failures"] = len(getattr(results, "failures", ()))
    return rep


def _witness_entry(w, names) -> dict:
    out = {"reason": w.reason}
    for key in ("player", "k", "k1", "equilibrium_index"):
        if getattr(w, key) is not None:
            out[key] = getattr(w, key)
    if w.deviation is not None:
        out["deviation"] = _choice(w.deviation, names)
    for key in ("deviation_payoff", "equilibrium_payoff", "mass"):
        if getattr(w, key) is not None:
            out[key] = fmt(getattr(w, key))
    return out


def stability_report(fam, verdicts, criterion: str, mode: str) -> dict:
    family = []
    names = None
    for k, e in sorted(fam.entries.items()):
        names = e.game.names
        family.append({
            "k": k,
            "count": len(e.equilibria),
            "selected": e.selected,
            "equilibria": [equilibrium_entry(r, e.game.induced, j) for j, r in enumerate(e.equilibria)],
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "stability",
        "criterion": criterion,
        "mode": mode,
        "players": list(names),
        "family": family,
        "verdicts": [{
            "criterion": v.criterion,
            "k": v.k,
            "stable": v.stable,
            "witnesses": [_witness_entry(w, names) for w in v.witnesses],
            "comparisons": [{
                "player": c.player, "k": c.k, "k1": c.k1,
                "equilibrium_index": c.equilibrium_index,
                "equilibrium_payoff": fmt(c.equilibrium_payoff),
                "deviation": _choice(c.deviation, names),
                "deviation_payoff": fmt(c.deviation_payoff),
                "holds": c.holds,
            } for c in v.comparisons],
        } for v in verdicts],
    }


def to_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True) + "\n"


def schema() -> dict:
    return json.loads(resources.files("coalform").joinpath("schemas/report.schema.json").read_text())


# ---------------------------------------------------------------- tables


def _grid(rows: list[list[str]]) -> str:
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _equilibria_table(eqs) -> list[str]:
    lines = []
    for e in eqs:
        flags = [f for f in ("component", "degenerate") if e[f] and f != e["method"]]
        if not e["converged"]:
            flags.append("unconverged")
        lines.append(f"equilibrium {e['index']} [{e['method']}{', ' + ', '.join(flags) if flags else ''}]")
        for i, sup in enumerate(e["support"]):
            lines.append(f"  player {i + 1}: " + ", ".join(f"{s['choice']}={s['probability']}" for s in sup))
        lines.append(f"  payoffs: ({'; '.join(e['payoffs'])})  regret: ({'; '.join(e['regret'])})")
        dist = ", ".join(f"{d['structure']}: {d['probability']}" for d in e["structure_distribution"])
        lines.append(f"  structures: {dist}")
    return lines


def render_table(rep: dict) -> str:
    kind = rep["kind"]
    lines = []
    if kind == "enumerate":
        lines.append(f"players={rep['players']} max_size={rep['max_size']} count={rep['count']}")
        for d in rep.get("diagrams", []):
            lines.append("[" + ",".join(map(str, d)) + "]")
        lines.extend(rep.get("structures", []))
    elif kind == "solve":
        lines.append(f"players: {', '.join(rep['players'])}  max_size={rep['max_size']}  "
                     f"mechanism={rep['mechanism']}  method={rep['method']}")
        if "induced" in rep:
            lines.append("induced payoffs:")
            rows = [["profile", "payoffs", "structure"]]
            for c in rep["induced"]:
                rows.append([" ".join(c["profile"]), "(" + "; ".join(c["payoffs"]) + ")", c["structure"]])
            lines.append(_grid(rows))
        lines.extend(_equilibria_table(rep["equilibria"]))
        if rep["failures"]:
            lines.append(f"numeric failures: {rep['failures']} support combinations")
    elif kind == "stability":
        lines.append(f"criterion={rep['criterion']} mode={rep['mode']}")
        for f in rep["family"]:
            lines.append(f"K={f['k']}: {f['count']} equilibria, selected {f['selected']}")
            lines.extend("  " + s for s in _equilibria_table([f["equilibria"][f["selected"]]]))
        for v in rep["verdicts"]:
            lines.append(f"{v['criterion']} K={v['k']}: {'stable' if v['stable'] else 'NOT stable'}")
            rows = [["player", "K", "K1", "eq", "payoff@K", "best@K1", "deviation", "holds"]]
            for c in v["comparisons"]:
                rows.append([str(c["player"]), str(c["k"]), str(c["k1"]), str(c["equilibrium_index"]),
                             c["equilibrium_payoff"], c["deviation_payoff"], c["deviation"],
                             "yes" if c["holds"] else "no"])
            if len(rows) > 1:
                lines.append(_grid(rows))
            for w in v["witnesses"]:
                lines.append(f"  witness: {w['reason']}")
    return "\n".join(lines) + "\n"
