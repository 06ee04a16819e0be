"""Command line interface and the on-disk classification database.

Records stream to stdout as JSON lines. Exit status: 0 when every check
passes, 1 on a mismatch, 2 when a budget ran out or a status is unknown.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .classify import (AugmentationDag, CodeRecord, Edge, StatusPolicy, assign_statuses,
                       enumerate_condition_codes, maximal_nonrealizable, reaches,
                       table1_grid, table2_witnesses)
from .equiv import Perm, are_equivalent, canonical_code, canonical_form
from .gf2core import (SELF_DUAL_24, BinaryCode, BudgetExceeded, CodeError, dual, format_code,
                      min_weight, named_code, parse_code, vec)
from .lifts import (NonRealizable, Realizable, Unknown, build_lift_space, enumerate_classes,
                    extremal_classes)
from .moonshine import (Moonshine, NotMoonshine, census, direct_sum_identities, doubling,
                        doubling_status, moonshine_candidate_check, replay, undouble)
from .neighbor import augment_extremal, deaugment_extremal
from .refdata import (APPENDIX_BLOCKS, PINNED_DIGESTS, TABLE1, TABLE2, appendix_code,
                      fig1_code, registry_digests, table2_code)
from .z4core import (format_z4, is_extremal, is_type2, min_euclidean_weight,
                     parse_z4)

log = logging.getLogger("z4wb")

EXIT_OK, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2
DEFAULT_DB = "z4wb-db"
MANIFEST = "manifest.json"


class Reporter:
    """Collects pass/fail records and prints them as JSON lines."""

    def __init__(self, seed: int, stream=None):
        self.seed = seed
        self.stream = stream or sys.stdout
        self.status = EXIT_OK

    def emit(self, subject: str, claim: str, verdict: str, payload=None) -> None:
        rec = {"subject": subject, "claim": claim, "verdict": verdict,
               "payload": payload if payload is not None else {},
               "tool_version": __version__, "seed": self.seed,
               "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
        print(json.dumps(rec, sort_keys=True), file=self.stream, flush=True)
        if verdict == "fail":
            self.status = EXIT_MISMATCH
        elif verdict == "unknown" and self.status == EXIT_OK:
            self.status = EXIT_BUDGET

    def check(self, subject: str, claim: str, ok: bool, payload=None) -> bool:
        self.emit(subject, claim, "pass" if ok else "fail", payload)
        return ok


# ---------------------------------------------------------------------------
# database


def db_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get("Z4WB_CACHE") or DEFAULT_DB)


def _node_ids(dag: AugmentationDag) -> dict:
    ids = {}
    for k, recs in dag.by_dimension().items():
        for i, rec in enumerate(recs):
            ids[rec.key] = f"k{k:02d}-{i:03d}"
    return ids


def _status_json(rec: CodeRecord) -> dict:
    st = rec.status
    if isinstance(st, Realizable):
        return {"status": "realizable", "method": st.method, "point": st.point,
                "classes_checked": st.classes_checked}
    if isinstance(st, NonRealizable):
        return {"status": "nonrealizable", "classes_checked": st.classes_checked, "m": st.m}
    if isinstance(st, Unknown):
        return {"status": "unknown", "budget": st.budget, "m": st.m, "reason": st.reason}
    return {"status": None}


def save_database(dag: AugmentationDag, out: Path, seed: int) -> None:
    ids = _node_ids(dag)
    (out / "codes").mkdir(parents=True, exist_ok=True)
    (out / "witnesses").mkdir(exist_ok=True)
    records = []
    for key, rid in sorted(ids.items(), key=lambda kv: kv[1]):
        rec = dag.nodes[key]
        (out / "codes" / f"{rid}.txt").write_text(format_code(rec.code))
        entry = {"id": rid, "k": rec.k, "min_weight": rec.min_weight,
                 "dual_min_weight": rec.dual_min_weight, "label": rec.label,
                 "aliases": list(rec.aliases), "code_file": f"codes/{rid}.txt"}
        entry.update(_status_json(rec))
        if isinstance(rec.status, Realizable):
            (out / "witnesses" / f"{rid}.txt").write_text(format_z4(rec.status.witness))
            entry["witness_file"] = f"witnesses/{rid}.txt"
        prov = dict(rec.provenance)
        if "from" in prov:
            prov["from"] = ids[prov["from"]]
        if "a" in prov:
            prov["a"] = format(prov["a"], "06x")
        if "b" in prov:
            prov["b"] = format(prov["b"], "06x")
        if "embed" in prov:
            prov["embed"] = list(prov["embed"])
        entry["provenance"] = prov
        records.append(entry)
    edges = sorted([ids[e.sub], ids[e.sup], format(e.a, "06x"), e.weight4, list(e.embed.images)]
                   for e in dag.edges)
    manifest = {"tool_version": __version__, "seed": seed, "length": 24,
                "counts": {str(k): v for k, v in dag.counts().items()},
                "table1": {str(k): list(v) for k, v in table1_grid(dag).items()},
                "records": records, "edges": edges}
    (out / MANIFEST).write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


def load_database(path: Path) -> AugmentationDag:
    """Rebuild the DAG from a database directory; witnesses are rechecked."""
    man = path / MANIFEST
    if not man.exists():
        raise FileNotFoundError(f"no classification database at {path}")
    data = json.loads(man.read_text())
    nodes, keys = {}, {}
    for r in data["records"]:
        code = parse_code((path / r["code_file"]).read_text())
        if r["status"] == "realizable":
            w = parse_z4((path / r["witness_file"]).read_text())
            if w.residue != code:
                raise CodeError(f"{r['id']}: witness residue does not match")
            status = Realizable(w, r["method"], r.get("point"), r.get("classes_checked"))
        elif r["status"] == "nonrealizable":
            status = NonRealizable(r["classes_checked"], r["m"])
        elif r["status"] == "unknown":
            status = Unknown(r["budget"], r["m"], r["reason"])
        else:
            status = None
        rec = CodeRecord(code.basis, code, r["min_weight"], r["dual_min_weight"], r["label"],
                         tuple(r["aliases"]), status, r["provenance"])
        nodes[code.basis] = rec
        keys[r["id"]] = code.basis
    edges = [Edge(keys[s], keys[t], int(a, 16), Perm(tuple(emb)), w4)
             for s, t, a, w4, emb in data["edges"]]
    return AugmentationDag(nodes, edges)


def classify_pipeline(seed: int, progress=None) -> AugmentationDag:
    dag = enumerate_condition_codes(progress=progress)
    return assign_statuses(dag, StatusPolicy(seed=seed), progress=progress)


def get_dag(args, rep: Reporter | None = None) -> AugmentationDag:
    """The stored database when present, else a fresh classification."""
    path = db_dir(args.out)
    if (path / MANIFEST).exists():
        return load_database(path)
    log.info("no database at %s; classifying", path)
    return classify_pipeline(args.seed, progress=log.info)


# ---------------------------------------------------------------------------
# verify


def verify_fig1(rep: Reporter) -> None:
    digests = registry_digests()
    for name, d in digests.items():
        rep.check(f"registry:{name}", "checksum", d == PINNED_DIGESTS[name], {"sha256": d})
    code = fig1_code()
    rep.check("fig1", "type II", is_type2(code))
    de = min_euclidean_weight(code)
    rep.check("fig1", "minimum Euclidean weight 16", de == 16, {"d_E": de})
    res = code.residue
    rep.check("fig1", "residue dimension 6", res.k == 6, {"k": res.k})
    rep.check("fig1", "residue minimum weight 8", min_weight(res) == 8)


def verify_appendix(rep: Reporter) -> None:
    canon = {}
    for lbl in APPENDIX_BLOCKS:
        code = appendix_code(lbl)
        res = code.residue
        ok = is_extremal(code) and res.k == 12 and res == dual(res)
        rep.check(f"appendix:{lbl}", "extremal with self-dual residue", ok)
        same = are_equivalent(res, named_code(lbl)) is not None
        rep.check(f"appendix:{lbl}", f"residue equivalent to {lbl}", same)
        canon[lbl] = canonical_code(res)
    distinct = len(set(canon.values())) == len(canon)
    rep.check("appendix", "residues pairwise inequivalent", distinct)
    others = {canonical_code(named_code(l)) for l in ("g24", "d24")}
    rep.check("appendix", "no residue equivalent to g24 or d24",
              not (others & set(canon.values())))
    nine = {canonical_code(named_code(l)) for l in SELF_DUAL_24}
    rep.check("appendix", "with g24 and d24 they give all nine classes",
              nine == set(canon.values()) | others and len(nine) == 9)


def verify_table2(rep: Reporter, dag: AugmentationDag) -> None:
    witnesses = table2_witnesses(dag)
    for name, parent, vecs in TABLE2:
        code = table2_code(name)
        w = witnesses[name]
        rep.check(f"table2:{name}", "extremal witness with this residue",
                  w.residue == code and is_extremal(w), {"k": code.k})
        if parent is not None:
            p = table2_code(parent)
            ok = all(b in code for b in p.basis) and code.k == p.k + len(vecs)
            rep.check(f"table2:{name}", f"contains {parent} with codimension {len(vecs)}", ok)
        rep.check(f"table2:{name}", "minimum weight 8", min_weight(code) == 8)
    chain = ["C6", "C7_3", "C8_3", "C9_4", "C10_1", "C11", "C12"]
    keys = [dag.label_of(c).key for c in chain]
    ok = all(reaches(dag, a, b, weight4_only=False) == [a, b] for a, b in zip(keys, keys[1:]))
    rep.check("table2", "chain " + " > ".join(chain) + " of codimension-1 steps", ok)


def verify_prop411(rep: Reporter) -> None:
    for c in direct_sum_identities(rep.seed):
        rep.check(f"direct sum:{c.name}", "identity, coset weight 8, moonshine",
                  c.ok and replay(c.status),
                  {"dimension": c.lhs.k, "coset_min_weight": c.coset_min_weight})


def cmd_verify(args) -> int:
    rep = Reporter(args.seed)
    targets = ["fig1", "appendix", "table2-chains", "prop411"] if args.target == "all" \
        else [args.target]
    for t in targets:
        if t == "fig1":
            verify_fig1(rep)
        elif t == "appendix":
            verify_appendix(rep)
        elif t == "table2-chains":
            verify_table2(rep, get_dag(args))
        elif t == "prop411":
            verify_prop411(rep)
    return rep.status


# ---------------------------------------------------------------------------
# classification and report


def format_grid(grid: dict) -> str:
    lines = ["  k  total  R8  R4  N8  N4"]
    for k, (t, r8, r4, n8, n4) in sorted(grid.items(), reverse=True):
        lines.append(f"{k:3d} {t:6d} {r8:3d} {r4:3d} {n8:3d} {n4:3d}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    rep = Reporter(args.seed)
    t0 = time.time()
    dag = classify_pipeline(args.seed, progress=log.info)
    out = db_dir(args.out)
    save_database(dag, out, args.seed)
    grid = table1_grid(dag)
    print(format_grid(grid), file=sys.stderr)
    unknown = [k for k, r in dag.nodes.items() if r.realizable is None]
    for key in unknown:
        rep.emit("classify", "status", "unknown", {"k": dag.nodes[key].k})
    rep.check("classify", "grid equals the published counts", grid == TABLE1,
              {"db": str(out), "seconds": round(time.time() - t0, 1),
               "records": len(dag.nodes)})
    return rep.status


def cmd_report(args) -> int:
    dag = load_database(db_dir(args.out))
    grid = table1_grid(dag)
    print("Numbers of inequivalent codes (R realizable, N non-realizable, by minimum weight)")
    print(format_grid(grid))
    print("\nRealizable codes of minimum weight 8")
    for rec in sorted(dag.nodes.values(), key=lambda r: (r.k, r.key)):
        if rec.realizable and rec.min_weight == 8:
            names = ", ".join(filter(None, (rec.label,) + rec.aliases))
            print(f"  k={rec.k:2d}  {names or '-':12s} {rec.status.method}")
    print("\nMaximal non-realizable codes")
    for rec in maximal_nonrealizable(dag):
        print(f"  k={rec.k:2d}  {rec.label or '-':8s} m={rec.status.m:2d} "
              f"classes={rec.status.classes_checked}")
    counts = census(dag)
    realizable = sum(1 for r in dag.nodes.values() if r.realizable)
    print(f"\nRealizable: {realizable}  non-realizable: {len(dag.nodes) - realizable}")
    print(f"Doublings: {counts['Moonshine']} moonshine, {counts['NotMoonshine']} not moonshine, "
          f"{counts['Unknown']} unknown")
    for name, _, _ in TABLE2:
        st = doubling_status(table2_code(name), dag)
        print(f"  D({name}): {type(st).__name__}")
    return EXIT_OK if counts["Unknown"] == 0 else EXIT_BUDGET


# ---------------------------------------------------------------------------
# single-code commands


def _read_binary(path: str) -> BinaryCode:
    return parse_code(Path(path).read_text())


def _read_z4(path: str):
    return parse_z4(Path(path).read_text())


def cmd_lifts(args) -> int:
    rep = Reporter(args.seed)
    code = _read_binary(args.codefile)
    space = build_lift_space(code)
    payload = {"m0": space.m0, "m": space.m, "negation_dim": space.negation_dim,
               "aut_order": space.aut_order}
    if space.m > args.cap:
        rep.emit("lifts", "classes", "unknown", dict(payload, reason="m exceeds cap"))
        return rep.status
    enum = enumerate_classes(space, args.cap)
    ext = extremal_classes(space, enum)
    payload.update(classes=enum.count, extremal_classes=len(ext),
                   sizes_sum=int(sum(enum.sizes)))
    rep.check("lifts", "orbit sizes sum to 2^m", sum(enum.sizes) == 1 << space.m, payload)
    return rep.status


def _vector_arg(text: str, n: int) -> int:
    if len(text) != n or set(text) - {"0", "1"}:
        raise CodeError(f"vector must be a 0/1 string of length {n}")
    return vec(text)


def cmd_augment(args, down: bool = False) -> int:
    rep = Reporter(args.seed)
    code = _read_z4(args.z4file)
    a = _vector_arg(args.vector, code.n)
    new, wit = (deaugment_extremal if down else augment_extremal)(code, a)
    sys.stdout.write(format_z4(new))
    rep.check("deaugment" if down else "augment", "extremal result", True,
              {"residue_k": new.residue.k})
    return rep.status


def cmd_double(args) -> int:
    sys.stdout.write(format_code(doubling(_read_binary(args.codefile))))
    return EXIT_OK


def cmd_moonshine(args) -> int:
    rep = Reporter(args.seed)
    code = _read_binary(args.codefile)
    if code.n == 48 and undouble(code) is not None and \
            not isinstance(moonshine_candidate_check(code).status, NotMoonshine):
        code = undouble(code)
    if code.n == 24:
        path = db_dir(args.out)
        dag = load_database(path) if (path / MANIFEST).exists() else None
        st = doubling_status(code, dag, seed=args.seed)
    else:
        st = moonshine_candidate_check(code).status
    verdict = {Moonshine: "moonshine", NotMoonshine: "not moonshine"}.get(type(st), "unknown")
    detail = getattr(st, "reason", None) or getattr(st, "note", None) or \
        type(st.justification).__name__
    rep.emit("moonshine", verdict, "unknown" if verdict == "unknown" else "pass",
             {"dimension": st.code.k, "detail": str(detail)})
    return rep.status


def cmd_canon(args) -> int:
    rep = Reporter(args.seed)
    code = _read_binary(args.codefile)
    cert = canonical_form(code)
    sys.stdout.write(format_code(cert.canonical))
    rep.emit("canon", "canonical form", "pass",
             {"aut_order": cert.aut_order, "witness": list(cert.witness.images)})
    return rep.status


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MISMATCH, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="z4wb", description=__doc__.splitlines()[0])
    p.add_argument("--out", help="database directory (default $Z4WB_CACHE or ./z4wb-db)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="check the stored matrices and tables")
    v.add_argument("target", choices=["fig1", "appendix", "table2-chains", "prop411", "all"])
    v.set_defaults(func=cmd_verify)
    sub.add_parser("classify", help="classify and write the database").set_defaults(
        func=cmd_classify)
    sub.add_parser("report", help="summarise the database").set_defaults(func=cmd_report)
    s = sub.add_parser("lifts", help="lift space and classes of a binary code")
    s.add_argument("codefile")
    s.add_argument("--cap", type=int, default=24)
    s.set_defaults(func=cmd_lifts)
    for name, down in (("augment", False), ("deaugment", True)):
        s = sub.add_parser(name, help=f"weight-4 {name}ation of an extremal code")
        s.add_argument("z4file")
        s.add_argument("vector")
        s.set_defaults(func=lambda a, d=down: cmd_augment(a, d))
    for name, func in (("double", cmd_double), ("moonshine", cmd_moonshine),
                       ("canon", cmd_canon)):
        s = sub.add_parser(name)
        s.add_argument("codefile")
        s.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
