"""JSON instance and certificate files.

An instance lists ``n``, ``lambda``, optional vertex labels and one edge list
per class (parallel edges repeated)::

    {"n": 3, "lambda": 1, "vertices": ["a", "b", "c"],
     "classes": [[["a", "b"]], [["b", "c"]], [["a", "c"]]],
     "params": {"mu": 2, "m": 1, "mode": "hamiltonian"}}

A certificate carries the enclosing decomposition plus the SHA-256 of the
canonical form of the instance it was built from.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .decomp import Decomposition, validate
from .graphcore import Multigraph, complete_multigraph

INSTANCE_FORMAT = "enclosure-instance/1"
CERTIFICATE_FORMAT = "enclosure-certificate/1"


class FormatError(ValueError):
    pass


@dataclass
class InstanceFile:
    decomposition: Decomposition
    lam: int
    labels: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.decomposition.n


def _edge_lists(d: Decomposition, labels: list) -> list:
    return [[[labels[u], labels[v]] for u, v in c.edges()] for c in d.classes]


def _parse_classes(n: int, labels: list, raw) -> Decomposition:
    index = {}
    for i, lab in enumerate(labels):
        key = json.dumps(lab)
        if key in index:
            raise FormatError(f"duplicate vertex label {lab!r}")
        index[key] = i
    if not isinstance(raw, list) or not raw:
        raise FormatError("'classes' must be a non-empty list of edge lists")
    classes = []
    for ci, edges in enumerate(raw):
        g = Multigraph(n)
        if not isinstance(edges, list):
            raise FormatError(f"class {ci} is not a list of edges")
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise FormatError(f"class {ci}: edge {e!r} is not a pair")
            try:
                u, v = (index[json.dumps(x)] for x in e)
            except KeyError as exc:
                raise FormatError(f"class {ci}: unknown vertex in edge {e!r}") from exc
            g.add_edge(u, v)
        classes.append(g)
    return Decomposition(classes)


def instance_to_dict(inst: InstanceFile) -> dict:
    doc = {
        "format": INSTANCE_FORMAT,
        "n": inst.n,
        "lambda": inst.lam,
        "vertices": list(inst.labels),
        "classes": _edge_lists(inst.decomposition, inst.labels),
    }
    if inst.params:
        doc["params"] = dict(inst.params)
    return doc


def instance_from_dict(doc) -> InstanceFile:
    if not isinstance(doc, dict):
        raise FormatError("instance must be a JSON object")
    try:
        n = int(doc["n"])
        lam = int(doc["lambda"])
        raw = doc["classes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"missing or malformed field: {exc}") from exc
    if n < 1 or lam < 1:
        raise FormatError("n and lambda must be positive")
    labels = list(doc.get("vertices") or range(n))
    if len(labels) != n:
        raise FormatError(f"{len(labels)} vertex labels for n={n}")
    d = _parse_classes(n, labels, raw)
    if d.base != complete_multigraph(n, lam):
        raise FormatError(f"classes do not decompose {lam}K_{n} exactly")
    check = validate(d)
    if not check:
        raise FormatError(f"class {check.index}: {check.reason}")
    params = doc.get("params") or {}
    if not isinstance(params, dict):
        raise FormatError("'params' must be an object")
    return InstanceFile(d, lam, labels, params)


def dumps(doc: dict) -> str:
    """Stable text form: one top-level key per line, one class per line."""
    lines = []
    for key, val in doc.items():
        if key in ("classes", "transcript") and val:
            inner = ",\n".join("    " + json.dumps(x) for x in val)
            lines.append(f"  {json.dumps(key)}: [\n{inner}\n  ]")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def loads_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return instance_from_dict(doc)


def read_instance(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def instance_hash(inst: InstanceFile) -> str:
    core = instance_to_dict(inst)
    core.pop("params", None)
    core.pop("format", None)
    blob = json.dumps(core, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def new_labels(labels: list, m: int) -> list:
    taken = {json.dumps(x) for x in labels}
    out = []
    i = 0
    while len(out) < m:
        cand = f"new{i}"
        i += 1
        if json.dumps(cand) not in taken:
            out.append(cand)
    return out


def certificate_to_dict(inst: InstanceFile, output: Decomposition, mu: int, m: int, mode: str,
                        transcript: list[str]) -> dict:
    labels = list(inst.labels) + new_labels(inst.labels, m)
    return {
        "format": CERTIFICATE_FORMAT,
        "instance_sha256": instance_hash(inst),
        "mode": mode,
        "mu": mu,
        "m": m,
        "n": output.n,
        "vertices": labels,
        "classes": _edge_lists(output, labels),
        "transcript": list(transcript),
    }


@dataclass
class CertificateFile:
    decomposition: Decomposition
    labels: list
    mu: int
    m: int
    mode: str
    instance_sha256: str
    transcript: list


def certificate_from_dict(doc) -> CertificateFile:
    if not isinstance(doc, dict) or doc.get("format") != CERTIFICATE_FORMAT:
        raise FormatError("not an enclosure certificate")
    try:
        n = int(doc["n"])
        labels = list(doc["vertices"])
        d = _parse_classes(n, labels, doc["classes"])
        return CertificateFile(d, labels, int(doc["mu"]), int(doc["m"]), str(doc["mode"]),
                               str(doc["instance_sha256"]), list(doc.get("transcript", [])))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed certificate: {exc}") from exc


def read_certificate(path) -> CertificateFile:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    return certificate_from_dict(doc)
