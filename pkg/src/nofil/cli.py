"""Command-line entry point: ``nofil <subcommand> ...``.

Exit codes: 0 on success, 1 when the domain answer is negative (nothing
found, blocked, verification failed, illegal move), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bounds, constructions, game, search, skolem
from .design import (
    DesignError,
    GRAPH_FAMILIES,
    TripleSystem,
    classify_blocks,
    find_paschs,
    graph_family,
    pasch_switch,
    sort_labels,
    validate_sts,
    verify_embedding,
)
from .io import (
    certificate_from_text,
    certificate_to_text,
    graph_from_text,
    sts_from_text,
    sts_to_text,
)


class DomainFailure(Exception):
    pass


class Output:
    def __init__(self, fmt: str, quiet: bool):
        self.fmt = fmt
        self.quiet = quiet

    def text(self, s: str):
        if self.fmt == "text":
            sys.stdout.write(s if s.endswith("\n") else s + "\n")

    def record(self, **fields):
        if self.fmt == "records":
            sys.stdout.write(" ".join(f"{k}={_flat(v)}" for k, v in fields.items()) + "\n")

    def info(self, s: str):
        if not self.quiet:
            sys.stderr.write(s + "\n")


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(_flat, v))
    return str(v)


def _default_seed() -> int:
    try:
        return int(os.environ.get("NOFIL_SEED", "0"))
    except ValueError:
        return 0


def _graph_arg(spec: str):
    if ":" in spec and spec.split(":", 1)[0] in GRAPH_FAMILIES:
        family, a = spec.split(":", 1)
        try:
            return graph_family(family, int(a))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    path = Path(spec)
    if not path.exists():
        raise argparse.ArgumentTypeError(f"expected family:a or a graph file, got {spec!r}")
    return graph_from_text(path.read_text())


def _load_sts(spec: str, seed: int) -> TripleSystem:
    if spec.startswith("hillclimb:"):
        return search.hillclimb_sts(int(spec.split(":", 1)[1]), search.SearchConfig(seed=seed))
    text = Path(spec).read_text()
    if text.lstrip().startswith("P:") or "\nP:" in text:
        return certificate_from_text(text).ts
    ts = sts_from_text(text)
    report = validate_sts(ts)
    if not report:
        raise DomainFailure(f"{spec} is not a Steiner triple system: {report.violations[:3]}")
    return ts


def _write(path: str | None, text: str, out: Output):
    if path:
        Path(path).write_text(text)
        out.info(f"wrote {path}")


# -------------------------------------------------------------- subcommands


def cmd_bounds(args, out: Output) -> int:
    g = args.graph
    inv = bounds.GraphInvariants.of(g)
    if args.v is not None and args.u is not None:
        rep = bounds.lemma1_bounds(args.v, inv.a, args.u, inv.e, inv.chi_g, inv.chi_gc)
        for c in rep.checks + rep.derived:
            out.text(f"{c.name:>5} {'ok' if c.holds else 'FAIL'}  u={_flat(c.lhs)} {c.relation} {_flat(c.rhs)}")
            out.record(check=c.name, holds=int(c.holds), lhs=c.lhs, rel=c.relation, rhs=c.rhs)
        return 0 if rep.ok else 1
    if args.v is not None:
        v, rows = args.v, bounds.rows_at(inv, args.v)
    else:
        v, rows = bounds.min_admissible_v(g)
        if v is None:
            out.text("no admissible order")
            return 1
    out.text(f"a={inv.a} e={inv.e} chi={inv.chi_g} chi_complement={inv.chi_gc} v={v}")
    for ps in rows:
        obs = bounds.structural_obstruction(ps)
        flag = "" if obs is None else f" {type(obs).__name__}({obs.u})"
        out.text(f"  (p,a,u)=({ps.p},{ps.a},{ps.u}) counts={ps.counts}{flag}")
        out.record(v=ps.v, p=ps.p, a=ps.a, u=ps.u, counts=ps.counts,
                   obstruction="" if obs is None else type(obs).__name__)
    return 0 if rows else 1


def cmd_table(args, out: Output) -> int:
    sys.stdout.write(bounds.emit_table(args.family, args.a_from, args.a_to, args.format))
    return 0


def cmd_skolem(args, out: Output) -> int:
    if args.special:
        fn = skolem.special_skolem if args.special == "skolem" else skolem.special_hooked
        seq = fn(args.t)
    else:
        if not skolem.exists(args.kind, args.t, args.d):
            out.text(f"no {args.kind} sequence of order {args.t} with defect {args.d}")
            out.record(kind=args.kind, t=args.t, d=args.d, exists=0)
            return 1
        seq = skolem.generate(args.kind, args.t, args.d, seed=args.seed if args.random else None)
    out.text(seq.to_text())
    for r, (x, y) in sorted(seq.pairs.items()):
        out.record(kind=seq.kind, t=seq.t, d=seq.d, r=r, a=x, b=y)
    return 0 if skolem.validate(seq) else 1


def cmd_construct(args, out: Output) -> int:
    if args.complete is not None:
        cert = constructions.embed_complete(args.complete)
        label, presentation, extra = f"K_{args.complete}", None, []
    else:
        emb = constructions.embed_star(args.star, seed=args.seed, allow_search=not args.no_search)
        cert, presentation = emb.cert, emb.presentation
        label = f"K_1,{args.star - 1}"
        extra = [f"method={emb.method}", f"tag={emb.tag}", f"centre={emb.centre}"]
        if emb.search_required:
            extra.append("search_required")
        for n in emb.notes:
            out.info(n)
    ok = bool(verify_embedding(cert))
    _, counts = classify_blocks(cert.ts, cert.partition)
    part = cert.partition
    out.text(f"{label} in STS({cert.ts.v}) p={part.p} a={part.a} u={part.u} "
             f"counts={tuple(counts)[:7]} verified={ok} " + " ".join(extra))
    fields = dict(graph=label, v=cert.ts.v, p=part.p, a=part.a, u=part.u,
                  counts=tuple(counts)[:7], verified=int(ok))
    fields.update(x.split("=", 1) for x in extra if "=" in x)
    out.record(**fields)
    if args.presentation:
        if presentation is None:
            out.text("no cyclic presentation for this embedding")
        else:
            sys.stdout.write(presentation.to_text())
    _write(args.emit, certificate_to_text(cert, [f"{label} in STS({cert.ts.v})"]), out)
    return 0 if ok else 1


def cmd_verify(args, out: Output) -> int:
    text = Path(args.file).read_text()
    if "P:" not in text:
        report = validate_sts(sts_from_text(text))
        out.text("ok" if report else "; ".join(report.violations))
        out.record(kind="sts", ok=int(bool(report)))
        return 0 if report else 1
    cert = certificate_from_text(text)
    sts_ok = validate_sts(cert.ts)
    if not sts_ok:
        out.text("not a Steiner triple system: " + "; ".join(sts_ok.violations[:5]))
        out.record(kind="certificate", ok=0, sts=0)
        return 1
    rep = verify_embedding(cert)
    out.text(rep.summary())
    for key, items in rep.failures.items():
        for item in items:
            out.text(f"  {key}: {_flat(item) if not isinstance(item, str) else item}")
    out.record(kind="certificate", ok=int(rep.ok), v=cert.ts.v, p=cert.partition.p,
               a=cert.partition.a, u=cert.partition.u)
    return 0 if rep.ok else 1


def cmd_play(args, out: Output) -> int:
    ts = _load_sts(args.sts, args.seed)
    if args.script is None:
        return _play_interactive(ts, out)
    moves = [m for m in args.script.split(",") if m]
    try:
        states = game.replay(ts, moves)
    except DesignError as exc:
        out.text(f"illegal: {exc}")
        out.record(illegal=str(exc).replace(" ", "_"))
        return 1
    if args.format == "text":
        sys.stdout.write(game.format_turns(states))
    for k, s in enumerate(states):
        out.record(turn=k, P=list(s.played), A=sort_labels(s.A), U=sort_labels(s.U),
                   available=["".join(h) if all(len(x) == 1 for x in h) else "+".join(h) for h in s.hyperedges])
    return 0


def _play_interactive(ts: TripleSystem, out: Output) -> int:
    """Read one move per line from stdin until the game ends or input does."""
    states = [game.new_game(ts)]
    while True:
        sys.stdout.write(game.format_turns(states).splitlines()[-1] + "\n")
        s = states[-1]
        if not s.A:
            player = 1 if len(s.played) % 2 else 2
            sys.stdout.write(f"no moves left; player {player} wins\n")
            return 0
        sys.stdout.write(f"player {len(s.played) % 2 + 1} move> ")
        sys.stdout.flush()
        line = sys.stdin.readline()
        if not line or not line.strip():
            return 0
        try:
            states.append(game.play(s, line.strip()))
        except DesignError as exc:
            sys.stdout.write(f"illegal: {exc}\n")


def cmd_solve(args, out: Output) -> int:
    ts = _load_sts(args.sts, args.seed)
    sol = game.outcome(ts, cap=args.cap)
    out.text(f"{sol.outcome.value} length={sol.length} line={','.join(sol.principal_variation)} "
             f"positions={sol.positions}")
    out.record(outcome=sol.outcome.value, length=sol.length, line=sol.principal_variation,
               positions=sol.positions)
    return 0


def cmd_harvest(args, out: Output) -> int:
    limits = game.HarvestLimits(max_nodes=args.max_nodes)
    if args.sample:
        cfg = search.SearchConfig(seed=args.seed, jobs=args.jobs)
        cat = search.sample_and_harvest(args.sample, args.samples, cfg, limits)
    else:
        if not args.sts:
            raise argparse.ArgumentTypeError("harvest needs --sts or --sample")
        cat = game.harvest_graphs(_load_sts(args.sts, args.seed), limits)
    sys.stdout.write(cat.to_lines())
    out.info(f"{len(cat)} graphs, {cat.positions} positions, complete={cat.complete}")
    return 0


def cmd_search(args, out: Output) -> int:
    cfg = search.SearchConfig(
        seed=args.seed,
        restarts=args.restarts,
        v_min=args.vmin,
        v_max=args.vmax,
        priority="large_p" if args.priority == "p" else "large_u",
        jobs=args.jobs,
        max_iters=args.max_iters,
    )

    def progress(rec):
        if args.format == "records":
            sys.stdout.write(rec.to_line() + "\n")
        elif not args.quiet:
            sys.stderr.write(rec.to_line() + "\n")

    try:
        res = search.search_min_embedding(args.graph, cfg=cfg, progress=progress)
    except search.SearchNotFound as exc:
        out.text(str(exc))
        return 1
    cert = res.certificate
    out.text(f"found v={cert.ts.v} p={cert.partition.p} a={cert.partition.a} u={cert.partition.u} "
             f"attempts={len(res.log)}")
    _write(args.emit, certificate_to_text(cert, [f"found by seeded completion, seed {args.seed}"]), out)
    return 0


def cmd_pasch(args, out: Output) -> int:
    text = Path(args.file).read_text()
    is_cert = "P:" in text
    if args.transfer:
        if not is_cert:
            raise argparse.ArgumentTypeError("--transfer needs a certificate file")
        cert = constructions.pasch_transfer(certificate_from_text(text))
        out.text(f"moved to U; now p={cert.partition.p} a={cert.partition.a} u={cert.partition.u}")
        _write(args.emit, certificate_to_text(cert), out)
        return 0
    ts = certificate_from_text(text).ts if is_cert else sts_from_text(text)
    paschs = find_paschs(ts)
    if args.switch is None:
        for i, pc in enumerate(paschs):
            blocks = [" ".join(sort_labels(b)) for b in pc.blocks]
            out.text(f"{i}: " + " | ".join(blocks))
            out.record(index=i, blocks=[b.replace(" ", ".") for b in blocks])
        out.info(f"{len(paschs)} Pasch configurations")
        return 0
    if not 0 <= args.switch < len(paschs):
        out.text(f"no Pasch configuration with index {args.switch}")
        return 1
    switched = pasch_switch(ts, paschs[args.switch])
    text_out = sts_to_text(switched)
    if args.emit:
        _write(args.emit, text_out, out)
    else:
        sys.stdout.write(text_out)
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    def global_flags(p, defaults: bool):
        # subcommands accept the global flags too, without overriding earlier values
        d = {} if defaults else {"default": argparse.SUPPRESS}
        p.add_argument("--seed", type=int, **(d or {"default": _default_seed()}))
        p.add_argument("--format", choices=("text", "records"), **(d or {"default": "text"}))
        p.add_argument("--quiet", action="store_true", **d)
        p.add_argument("--jobs", type=int, **(d or {"default": 1}))

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, False)
    parser = argparse.ArgumentParser(prog="nofil",
                                     description="Graph embeddings in Steiner triple systems via the Nofil game.")
    global_flags(parser, True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("bounds", cmd_bounds, "admissible parameters for a graph")
    p.add_argument("--graph", type=_graph_arg, required=True)
    p.add_argument("--v", type=int)
    p.add_argument("--u", type=int)

    p = add("table", cmd_table, "minimal admissible parameter table")
    p.add_argument("--family", choices=GRAPH_FAMILIES, required=True)
    p.add_argument("--from", dest="a_from", type=int, required=True)
    p.add_argument("--to", dest="a_to", type=int, required=True)

    p = add("skolem", cmd_skolem, "Skolem-type sequences")
    p.add_argument("--kind", choices=skolem.KINDS, default="skolem")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--special", choices=("skolem", "hooked"))
    p.add_argument("--random", action="store_true", help="randomize the search order with --seed")

    p = add("construct", cmd_construct, "direct star or complete-graph embedding")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--star", type=int, metavar="A")
    which.add_argument("--complete", type=int, metavar="A")
    p.add_argument("--emit", metavar="FILE")
    p.add_argument("--presentation", action="store_true")
    p.add_argument("--no-search", action="store_true")

    p = add("verify", cmd_verify, "check a certificate or STS file")
    p.add_argument("file")

    p = add("play", cmd_play, "replay a move script")
    p.add_argument("--sts", required=True, help="STS file, certificate file or hillclimb:V")
    p.add_argument("--script", help="comma-separated moves; without it moves are read from stdin")

    p = add("solve", cmd_solve, "exact game outcome")
    p.add_argument("--sts", required=True)
    p.add_argument("--cap", type=int, default=game.DEFAULT_SOLVER_CAP)

    p = add("harvest", cmd_harvest, "graphs reachable in play")
    p.add_argument("--sts")
    p.add_argument("--sample", type=int, metavar="V", help="sample systems of order V instead")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--max-nodes", type=int, default=game.DEFAULT_NODE_LIMIT)

    p = add("search", cmd_search, "find an embedding by seeded completion")
    p.add_argument("--graph", type=_graph_arg, required=True)
    p.add_argument("--vmin", type=int, default=1)
    p.add_argument("--vmax", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--priority", choices=("p", "u"), default="p")
    p.add_argument("--max-iters", type=int, default=0)
    p.add_argument("--emit", metavar="FILE")

    p = add("pasch", cmd_pasch, "list or switch Pasch configurations")
    p.add_argument("file")
    p.add_argument("--switch", type=int, metavar="INDEX")
    p.add_argument("--transfer", action="store_true", help="move an available point of a certificate into U")
    p.add_argument("--emit", metavar="FILE")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format, args.quiet)
    try:
        return args.func(args, out)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"nofil: error: {exc}\n")
        return 2
    except (OSError, ValueError) as exc:
        if isinstance(exc, (DesignError, skolem.NotExists)):
            sys.stderr.write(f"nofil: {exc}\n")
            return 1
        if isinstance(exc, OSError):
            sys.stderr.write(f"nofil: {exc}\n")
            return 2
        sys.stderr.write(f"nofil: {exc}\n")
        return 1
    except (constructions.NotFound, DomainFailure) as exc:
        sys.stderr.write(f"nofil: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
