"""Instance CSV files and single-result JSON records.

Instance files look like::

    # family: snake
    # params: {"q": 11}
    id,x,y,r
    0,1,1,0.66666666666666663
    ...

Floats are written with 17 significant digits so they read back exactly.
"""

import csv
import io
import json

import numpy as np

from ..geom import Instance


class FormatError(ValueError):
    pass


def _fmt(v):
    return format(float(v), ".17g")


def dumps_instance(instance):
    prov = dict(instance.provenance)
    family = prov.pop("family", "custom")
    lines = [f"# family: {family}", f"# params: {json.dumps(prov, sort_keys=True)}",
             "id,x,y,r"]
    for i, ((x, y), r) in enumerate(zip(instance.centers, instance.radii)):
        lines.append(f"{i},{_fmt(x)},{_fmt(y)},{_fmt(r)}")
    return "\n".join(lines) + "\n"


def write_instance(path, instance):
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_instance(instance))


def loads_instance(text):
    prov = {}
    body = []
    for raw in text.splitlines():
        if raw.startswith("#"):
            key, _, value = raw[1:].partition(":")
            key, value = key.strip(), value.strip()
            if key == "family":
                prov["family"] = value
            elif key == "params":
                try:
                    prov.update(json.loads(value))
                except json.JSONDecodeError as exc:
                    raise FormatError(f"bad params comment: {exc}") from None
        elif raw.strip():
            body.append(raw)
    if not body or [h.strip() for h in body[0].split(",")] != ["id", "x", "y", "r"]:
        raise FormatError("missing 'id,x,y,r' header")
    rows = list(csv.reader(io.StringIO("\n".join(body[1:]))))
    try:
        ids = [int(r[0]) for r in rows]
        data = np.array([[float(v) for v in r[1:4]] for r in rows], dtype=float).reshape(-1, 3)
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed disk row: {exc}") from None
    if any(len(r) != 4 for r in rows):
        raise FormatError("every disk row needs exactly 4 fields")
    if ids != list(range(len(ids))):
        raise FormatError("disk ids must run 0..n-1 in order")
    try:
        return Instance(data[:, :2], data[:, 2], prov)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_instance(path):
    with open(path) as fh:
        return loads_instance(fh.read())


def write_result(path, result, extra=None):
    record = result.as_dict()
    record["n"] = result.n
    if extra:
        record.update(extra)
    with open(path, "w", newline="\n") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_result(path):
    with open(path) as fh:
        return json.load(fh)
