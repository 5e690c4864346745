"""JSON game-spec documents and built-in example generators.

Document layout::

    {
      "players": ["1", "2"],
      "max_coalition_size": 2,
      "strategies": ["L", "H"],
      "payoffs": [{"structure": "1|2", "labels": ["L", "L"], "payoffs": ["0", "0"]}, ...],
      "mechanism": "unanimity",
      "projection": []
    }

``strategies`` is either one shared label list (every player, every
structure), ``{"shared": [...], "structures": [...]}`` to restrict the
structures, or ``{player: {structure_id: [labels]}}``. Structure ids use
block notation over player names, e.g. ``"A,B|C"``. Payoffs are exact
decimal or ``p/q`` strings. ``mechanism`` is a built-in name or
``{"table": [{"choices": [[structure, label], ...], "structure": ..., "labels": [...]}]}``.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from itertools import product
from pathlib import Path

from .errors import SpecError, ValidationError
from .game import GameSpec
from .mechanism import MECHANISMS, Outcome
from .partitions import CoalitionStructure, enumerate_structures, growth_key

PD_PAYOFFS = ("0", "-5", "3", "-2")


def to_fraction(v, path: str = "") -> Fraction:
    if isinstance(v, bool):
        raise SpecError(path, f"expected a number, got {v!r}")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise SpecError(path, f"payoff {v!r} is not finite")
        return Fraction(repr(v))
    if isinstance(v, str):
        try:
            f = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecError(path, f"not an exact number: {v!r}") from None
        return f
    raise SpecError(path, f"expected a number, got {type(v).__name__}")


def format_fraction(f: Fraction) -> str:
    """Terminating decimals as decimals, everything else as ``p/q``."""
    d = f.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{f.numerator}/{f.denominator}"
    if f.denominator == 1:
        return str(f.numerator)
    digits = 0
    scaled = f
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _require(doc: dict, key: str, kind, path: str = ""):
    where = f"{path}.{key}" if path else key
    if key not in doc:
        raise SpecError(where, "missing field")
    val = doc[key]
    if not isinstance(val, kind):
        raise SpecError(where, f"expected {getattr(kind, '__name__', kind)}, got {type(val).__name__}")
    return val


def parse_spec(doc) -> GameSpec:
    """Parse a spec document (JSON text, bytes, or an already decoded dict)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {exc.lineno} column {exc.colno}", f"syntax error: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecError("", "document must be a JSON object")

    names = _require(doc, "players", list)
    if not names:
        raise SpecError("players", "at least one player is required")
    names = [str(p) for p in names]
    if len(set(names)) != len(names):
        raise SpecError("players", "player names must be distinct")
    ids = {name: i for i, name in enumerate(names, start=1)}
    n = len(names)
    k = _require(doc, "max_coalition_size", int)
    if not 1 <= k <= n:
        raise SpecError("max_coalition_size", f"must be between 1 and {n}, got {k}")
    valid = set(enumerate_structures(n, k))

    def structure(text, path):
        if not isinstance(text, str):
            raise SpecError(path, "structure id must be a string")
        try:
            s = CoalitionStructure.parse(text, convert=lambda tok: ids[tok])
        except ValidationError as exc:
            raise SpecError(path, f"unknown structure id {text!r} ({exc})") from None
        if s not in valid:
            raise SpecError(path, f"unknown structure id {text!r} for {n} players with k={k}")
        return s

    def label_list(val, path):
        if not isinstance(val, list) or not val or not all(isinstance(x, str) for x in val):
            raise SpecError(path, "expected a non-empty list of label strings")
        if len(set(val)) != len(val):
            raise SpecError(path, f"duplicate label in {val}")
        return tuple(val)

    strategies = doc.get("strategies")
    labels: dict = {}
    if strategies is None:
        raise SpecError("strategies", "missing field")
    if isinstance(strategies, list):
        shared = label_list(strategies, "strategies")
        for s in valid:
            for i in range(1, n + 1):
                labels[(i, s)] = shared
    elif isinstance(strategies, dict) and "shared" in strategies:
        shared = label_list(strategies["shared"], "strategies.shared")
        subset = strategies.get("structures")
        chosen = ([structure(t, f"strategies.structures[{j}]") for j, t in enumerate(subset)]
                  if subset is not None else list(valid))
        for s in chosen:
            for i in range(1, n + 1):
                labels[(i, s)] = shared
    elif isinstance(strategies, dict):
        for pname, per in strategies.items():
            if pname not in ids:
                raise SpecError(f"strategies.{pname}", "unknown player")
            if not isinstance(per, dict):
                raise SpecError(f"strategies.{pname}", "expected an object of structure id -> labels")
            for sid, labs in per.items():
                labels[(ids[pname], structure(sid, f"strategies.{pname}.{sid}"))] = \
                    label_list(labs, f"strategies.{pname}.{sid}")
    else:
        raise SpecError("strategies", "expected a label list or an object")

    def check_label(i, s, lab, path):
        if lab not in labels.get((i, s), ()):
            raise SpecError(path, f"label {lab!r} is not declared for player {names[i - 1]} in {s.rename(dict(enumerate(names, 1))).id}")

    payoffs = {}
    for r, row in enumerate(_require(doc, "payoffs", list)):
        path = f"payoffs[{r}]"
        if not isinstance(row, dict):
            raise SpecError(path, "expected an object")
        s = structure(_require(row, "structure", str, path), f"{path}.structure")
        labs = _require(row, "labels", list, path)
        vals = _require(row, "payoffs", list, path)
        if len(labs) != n:
            raise SpecError(f"{path}.labels", f"expected {n} labels, got {len(labs)}")
        if len(vals) != n:
            raise SpecError(f"{path}.payoffs", f"expected {n} payoffs, got {len(vals)}")
        for i, lab in enumerate(labs, start=1):
            check_label(i, s, lab, f"{path}.labels[{i - 1}]")
        key = (s, tuple(labs))
        if key in payoffs:
            raise SpecError(path, "duplicate payoff row")
        payoffs[key] = tuple(to_fraction(v, f"{path}.payoffs[{j}]") for j, v in enumerate(vals))

    projection = {}
    for r, row in enumerate(doc.get("projection") or []):
        path = f"projection[{r}]"
        pname = str(_require(row, "player", (str, int), path))
        if pname not in ids:
            raise SpecError(f"{path}.player", "unknown player")
        i = ids[pname]
        src = structure(_require(row, "from_structure", str, path), f"{path}.from_structure")
        dst = structure(_require(row, "to_structure", str, path), f"{path}.to_structure")
        lab = _require(row, "label", str, path)
        to = _require(row, "to_label", str, path)
        check_label(i, src, lab, f"{path}.label")
        check_label(i, dst, to, f"{path}.to_label")
        projection[(i, src, lab, dst)] = to

    mech = doc.get("mechanism", "unanimity")
    table = None
    if isinstance(mech, str):
        if mech not in MECHANISMS:
            raise SpecError("mechanism", f"unknown mechanism {mech!r}; built-ins: {sorted(MECHANISMS)}")
        mech_name = mech
    elif isinstance(mech, dict):
        mech_name = "table"
        table = {}
        for r, row in enumerate(_require(mech, "table", list, "mechanism")):
            path = f"mechanism.table[{r}]"
            choices = _require(row, "choices", list, path)
            if len(choices) != n:
                raise SpecError(f"{path}.choices", f"expected {n} choices")
            key = []
            for i, c in enumerate(choices, start=1):
                if not (isinstance(c, list) and len(c) == 2):
                    raise SpecError(f"{path}.choices[{i - 1}]", "expected [structure, label]")
                s = structure(c[0], f"{path}.choices[{i - 1}][0]")
                check_label(i, s, c[1], f"{path}.choices[{i - 1}][1]")
                key.append((s, c[1]))
            final = structure(_require(row, "structure", str, path), f"{path}.structure")
            out = _require(row, "labels", list, path)
            if len(out) != n:
                raise SpecError(f"{path}.labels", f"expected {n} labels")
            table[tuple(key)] = Outcome(final, tuple(out))
    else:
        raise SpecError("mechanism", "expected a name or an object with a table")

    player_names = tuple(names) if names != [str(i) for i in range(1, n + 1)] else None
    return GameSpec(n, k, labels, payoffs, mech_name, projection, table, player_names)


def load_spec(path) -> GameSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(str(path), f"cannot read: {exc.strerror}") from None
    return parse_spec(text)


def spec_to_document(spec: GameSpec) -> dict:
    names = spec.names
    rename = dict(enumerate(names, start=1))
    sid = lambda s: s.rename(rename).id
    order = lambda s: tuple(-v for v in growth_key(s))
    structs = sorted({s for (_, s) in spec.strategy_labels}, key=order)
    alphabets = {spec.strategy_labels[key] for key in spec.strategy_labels}
    full = all((i, s) in spec.strategy_labels for s in structs for i in range(1, spec.n_players + 1))
    if len(alphabets) == 1 and full:
        shared = list(next(iter(alphabets)))
        if set(structs) == set(enumerate_structures(spec.n_players, spec.k_max)):
            strategies = shared
        else:
            strategies = {"shared": shared, "structures": [sid(s) for s in structs]}
    else:
        strategies = {}
        for i, name in enumerate(names, start=1):
            per = {sid(s): list(spec.strategy_labels[(i, s)]) for s in structs if (i, s) in spec.strategy_labels}
            if per:
                strategies[name] = per

    def label_order(s, labs):
        return tuple(spec.strategy_labels.get((i, s), ()).index(l) if l in spec.strategy_labels.get((i, s), ()) else 0
                     for i, l in enumerate(labs, start=1))

    rows = sorted(spec.payoffs.items(), key=lambda kv: (order(kv[0][0]), label_order(*kv[0])))
    doc = {
        "players": list(names),
        "max_coalition_size": spec.k_max,
        "strategies": strategies,
        "payoffs": [{"structure": sid(s), "labels": list(labs), "payoffs": [format_fraction(v) for v in pay]}
                    for (s, labs), pay in rows],
    }
    if spec.mechanism_table is not None:
        doc["mechanism"] = {"table": [
            {"choices": [[sid(s), lab] for s, lab in key], "structure": sid(o.structure), "labels": list(o.labels)}
            for key, o in spec.mechanism_table.items()]}
    else:
        doc["mechanism"] = spec.mechanism_name
    if spec.projection:
        doc["projection"] = [
            {"player": names[i - 1], "from_structure": sid(src), "label": lab,
             "to_structure": sid(dst), "to_label": to}
            for (i, src, lab, dst), to in sorted(spec.projection.items(),
                                                 key=lambda kv: (kv[0][0], order(kv[0][1]), kv[0][2], order(kv[0][3])))]
    return doc


def dump_spec(spec: GameSpec) -> str:
    return json.dumps(spec_to_document(spec), indent=2) + "\n"


# ---------------------------------------------------------------- generators


def generate_pd(reward=0, sucker=-5, temptation=3, punishment=-2, k: int = 2) -> GameSpec:
    """Two-player prisoner's dilemma with labels L/H in every structure.

    Each structure gets the same payoff block; ``k=1`` keeps only the
    separated structure, giving the classic game.
    """
    r, s, t, p = (to_fraction(v, name) for v, name in
                  zip((reward, sucker, temptation, punishment), ("reward", "sucker", "temptation", "punishment")))
    block = {("L", "L"): (r, r), ("L", "H"): (s, t), ("H", "L"): (t, s), ("H", "H"): (p, p)}
    structs = enumerate_structures(2, k)
    labels = {(i, st): ("L", "H") for st in structs for i in (1, 2)}
    payoffs = {(st, key): val for st in structs for key, val in block.items()}
    return GameSpec(2, k, labels, payoffs, "unanimity" if k > 1 else "identity")


def generate_pd_raised_joint(joint_high=1, k: int = 2) -> GameSpec:
    """PD whose joint-structure (H, H) cell pays ``joint_high`` to both players."""
    spec = generate_pd(k=k)
    v = to_fraction(joint_high, "joint_high")
    for s, labs in list(spec.payoffs):
        if s.is_grand and labs == ("H", "H"):
            spec.payoffs[(s, labs)] = (v, v)
    return spec


def generate_matching_pennies() -> GameSpec:
    """Matching pennies as a K=1 game (two players, both alone)."""
    sep = CoalitionStructure.separated((1, 2))
    labels = {(1, sep): ("Heads", "Tails"), (2, sep): ("Heads", "Tails")}
    payoffs = {}
    for a, b in product(("Heads", "Tails"), repeat=2):
        win = Fraction(1) if a == b else Fraction(-1)
        payoffs[(sep, (a, b))] = (win, -win)
    return GameSpec(2, 1, labels, payoffs, "identity")


EXAMPLES = {
    "pd": generate_pd,
    "pd-raised": generate_pd_raised_joint,
    "pennies": lambda **kw: generate_matching_pennies(),
}
