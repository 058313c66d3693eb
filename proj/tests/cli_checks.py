"""End-to-end checks of the quatrep binary: JSON schema conformance and CLI behaviour."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BIN = sys.argv[1]
SCHEMA_DIR = pathlib.Path(sys.argv[2])
GROUP = sys.argv[3]

failures = []


def expect(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def load_schemas():
    schemas = {p.name: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())
    return {n: jsonschema.Draft202012Validator(s, registry=registry) for n, s in schemas.items()}


def decompositions(j):
    if isinstance(j, dict):
        if "certificates" in j and "components" in j:
            yield j
            return
        for v in j.values():
            yield from decompositions(v)
    elif isinstance(j, list):
        for v in j:
            yield from decompositions(v)


def valid(validator, doc, what):
    errs = sorted(validator.iter_errors(doc), key=str)
    expect(not errs, what + ("" if not errs else ": " + errs[0].message))


def schema_group():
    v = load_schemas()
    cache = tempfile.mkdtemp(prefix="quatrep-schema-")
    runs = [
        ["--check", "C1", "--q", "3", "--f", "2"],
        ["--check", "C2", "--q", "3"],
        ["--check", "C3", "--q", "2", "--f", "2", "--ell", "3"],
        ["--check", "C4", "--q", "2", "--f", "2"],
        ["--check", "C5", "--q", "3", "--f", "2"],
        ["--check", "C6", "--q", "2", "--f", "2", "--ell", "2"],
        ["--check", "C7", "--q", "2", "--samples", "5"],
        ["--check", "C8", "--q", "3", "--ell", "3"],
        ["--check", "C9", "--q", "3"],
        ["--check", "C10", "--q", "2", "--f", "2"],
    ]
    for args in runs:
        r = run("verify", *args, env={"QUATREP_CACHE_DIR": cache})
        doc = json.loads(r.stdout)
        valid(v["check_report.schema.json"], doc, "report " + " ".join(args))
        for d in decompositions(doc["witness"]):
            valid(v["decomposition.schema.json"], d, "decomposition in " + args[1] + " " + d["input"])
        again = json.loads(run("verify", *args, env={"QUATREP_CACHE_DIR": cache}).stdout)
        expect(again == doc, "cached report identical for " + args[1])
    for g, q, f in [("delta", "2", "2"), ("gamma", "2", "1"), ("delta", "3", "1")]:
        doc = json.loads(run("table", "--group", g, "--q", q, "--f", f).stdout)
        valid(v["table.schema.json"], doc, f"table {g} q={q} f={f}")
    doc = json.loads(run("decompose", "--kind", "wild", "--q", "2", "--f", "2").stdout)
    valid(v["decomposition.schema.json"], doc["decomposition"], "decompose wild q=2 f=2")


def tsv_rows(text):
    expect(text.endswith("\n") and "\r" not in text, "TSV uses LF line endings")
    lines = text.rstrip("\n").split("\n")
    header = lines[0].split("\t")
    rows = [dict(zip(header, l.split("\t"))) for l in lines[1:]]
    expect(all(len(l.split("\t")) == len(header) for l in lines), "TSV rows match header width")
    return rows


def smoke_group():
    r = run("verify", "--check", "nosuch", "--no-cache")
    expect(r.returncode == 2, "unknown check exits 2")
    r = run("verify", "--check", "C1", "--q", "6", "--no-cache")
    expect(r.returncode == 2, "q = 6 exits 2")
    r = run("verify", "--no-cache")
    expect(r.returncode == 2, "verify without --check exits 2")
    r = run("verify", "--list", "--format", "tsv")
    expect(r.returncode == 0 and len(tsv_rows(r.stdout)) == 10, "catalogue lists 10 checks")

    rows = tsv_rows(run("table", "--group", "delta", "--q", "2", "--f", "2", "--format", "tsv").stdout)
    expect(sorted(int(x["dim"]) for x in rows) == [1, 1, 1, 3], "Delta_2 at q=2 has dims 1,1,1,3")
    rows = tsv_rows(run("table", "--group", "delta", "--q", "3", "--f", "1", "--format", "tsv").stdout)
    expect([int(x["dim"]) for x in rows] == [1, 1, 1, 1], "Delta_1 at q=3 has 4 characters")
    rows = tsv_rows(run("table", "--group", "gamma", "--q", "2", "--f", "1", "--format", "tsv").stdout)
    expect(any(x["dim"] == "2" for x in rows), "Gamma_1 at q=2 has a 2-dimensional irreducible")

    r = run("verify", "--check", "C6", "--q", "2", "--f", "2", "--ell", "2", "--no-cache")
    expect(r.returncode == 0 and json.loads(r.stdout)["verdict"] == "flagged-discrepancy",
           "flagged discrepancy exits 0")
    r = run("commutator", "--d", "2", "--q", "3", "--input", "1", "--format", "tsv")
    expect(r.returncode == 0 and tsv_rows(r.stdout)[0]["verified"] == "1", "commutator of 1 verifies")
    r = run("commutator", "--d", "2", "--q", "3", "--input", "2")
    expect(r.returncode == 2 and "nrd" in json.loads(r.stdout), "non-norm-one input exits 2 with nrd")
    r = run("commutator", "--d", "3", "--q", "2", "--seed", "4")
    expect(r.returncode == 0 and json.loads(r.stdout)["verified"], "random d=3 commutator verifies")
    r = run("verify", "--check", "C4", "--q", "2", "--f", "2", "--format", "human", "--no-cache")
    expect(r.returncode == 0 and "verdict: pass" in r.stdout, "human output shows verdict")

    cache = tempfile.mkdtemp(prefix="quatrep-cli-")
    env = {"QUATREP_CACHE_DIR": cache}
    run("verify", "--check", "C1", "--q", "2", env=env)
    listed = json.loads(run("cache", "list", env=env).stdout)
    expect(len(listed) == 1, "cache holds one report")
    shown = json.loads(run("cache", "show", listed[0]["key"], env=env).stdout)
    expect(shown["id"] == "C1", "cache show returns the report")
    expect(json.loads(run("cache", "clear", env=env).stdout)["removed"] == 1, "cache clear removes it")
    expect(run("cache", "path", env=env).stdout.strip() == cache, "cache path honours the environment")
    with tempfile.NamedTemporaryFile(suffix=".json") as out:
        r = run("verify", "--check", "C1", "--q", "2", "--out", out.name, "--no-cache")
        expect(r.returncode == 0 and json.loads(pathlib.Path(out.name).read_text())["id"] == "C1", "--out writes file")


{"schema": schema_group, "smoke": smoke_group}[GROUP]()
sys.exit(1 if failures else 0)
