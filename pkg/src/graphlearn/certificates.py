"""Self-contained witness files and their verification.

A witness file is one JSON object::

    {"kind": ..., "spec": {...}, "spec_hash": "...", "params": {...},
     "witness": {...}}

``verify`` needs nothing but the file: it rebuilds the spec, checks the
hash and re-evaluates every claimed adjacency through the edge oracle.
Classification reports (``"kind": "report"``) are checked by
:func:`graphlearn.classifier.verify_report`.
"""

from __future__ import annotations

import json
from typing import Mapping

from .classifier import AlmostRandomWitness, InducedWitness, verify_report
from .dimensions import Lemma56Witness, ShatterWitness, ThresholdWitness
from .graph_oracle import FiniteSupportPermutation, GraphSpec, spec_from_dict, spec_hash

KINDS = ("shatter", "thresholds", "lemma56", "almost_random", "induced", "report")


def make_certificate(kind: str, spec: GraphSpec, params: Mapping, witness) -> dict:
    if kind not in KINDS or kind == "report":
        raise ValueError(f"unknown witness kind {kind!r}")
    return {
        "kind": kind,
        "spec": spec.to_dict(),
        "spec_hash": spec_hash(spec),
        "params": dict(params),
        "witness": witness.to_dict(),
    }


def _perm_ok(h: FiniteSupportPermutation, params: Mapping) -> str | None:
    k, W = params.get("k"), params.get("window")
    if k is not None and h.support_size() > k:
        return f"permutation {h} moves more than k={k} points"
    if W is not None and any(x >= W for x in h.support()):
        return f"permutation {h} leaves the window [0,{W})"
    return None


def verify(doc: Mapping) -> list[str]:
    """Problems found in a witness file or report; empty means valid."""
    if not isinstance(doc, Mapping):
        return ["certificate must be a JSON object"]
    kind = doc.get("kind")
    if kind == "report":
        return verify_report(doc)
    if kind not in KINDS:
        return [f"unknown kind {kind!r}"]
    try:
        spec = spec_from_dict(doc["spec"])
    except (KeyError, ValueError, TypeError) as e:
        return [f"bad spec: {e}"]
    problems = []
    if doc.get("spec_hash") != spec_hash(spec):
        problems.append("spec hash mismatch")
    params = doc.get("params", {})
    w = doc.get("witness")
    try:
        if kind == "shatter":
            sw = ShatterWitness.from_dict(w)
            if "d" in params and len(sw.pairs) != params["d"]:
                problems.append("number of pairs differs from d")
            problems += [p for h in sw.realizers.values() if (p := _perm_ok(h, params))]
            ok = sw.validate(spec)
        elif kind == "thresholds":
            tw = ThresholdWitness.from_dict(w)
            if "t" in params and tw.t != params["t"]:
                problems.append("number of hypotheses differs from t")
            problems += [p for h in tw.hypotheses if (p := _perm_ok(h, params))]
            ok = tw.validate(spec)
        elif kind == "lemma56":
            lw = Lemma56Witness.from_dict(w)
            if "n" in params and len(lw.v) != params["n"]:
                problems.append("staircase height differs from n")
            ok = lw.validate(spec)
        elif kind == "almost_random":
            aw = AlmostRandomWitness.from_dict(w)
            if "n" in params and aw.n != params["n"]:
                problems.append("|A| differs from n")
            ok = aw.validate(spec)
        else:
            iw = InducedWitness.from_dict(w)
            ok = iw.validate(spec)
    except (KeyError, ValueError, TypeError) as e:
        return problems + [f"unreadable witness: {e}"]
    if not ok:
        problems.append(f"{kind} witness does not validate against the spec")
    return problems


def verify_text(text: str) -> list[str]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        return [f"not JSON: {e}"]
    return verify(doc)
