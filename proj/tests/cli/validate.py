#!/usr/bin/env python3
"""Validate a workbench JSON report against the published schema.

Usage: validate.py SCHEMA REPORT [PATH[=VALUE]...]

Each extra argument names a dotted path into the document (list indices are
bare integers). Without '=VALUE' the path only has to exist; with it, the
node's string form must match.
"""

import json
import sys

import jsonschema


def resolve(doc, path):
    node = doc
    for part in path.split("."):
        node = node[int(part)] if part.lstrip("-").isdigit() else node[part]
    return node


def main():
    if len(sys.argv) < 3:
        raise SystemExit(__doc__)
    with open(sys.argv[1]) as fh:
        schema = json.load(fh)
    with open(sys.argv[2]) as fh:
        doc = json.load(fh)
    jsonschema.validate(instance=doc, schema=schema)
    for spec in sys.argv[3:]:
        path, sep, want = spec.partition("=")
        node = resolve(doc, path)
        if sep and str(node) != want:
            raise SystemExit(f"{path} is {node!r}, want {want!r}")
    print("ok")


if __name__ == "__main__":
    main()
