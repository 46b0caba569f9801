"""Command line interface: ``subwordkit <subcommand> ...``.

Text filters read stdin and write stdout unless ``--input``/``--output``
are given. All files are UTF-8, one sentence per line.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from pathlib import Path

from subwordkit import bpe, codec, corpus, eval as evaluation, ortho, pipeline, simil, translit
from subwordkit.errors import SubwordError

log = logging.getLogger("subwordkit")


def _read_text(path) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _open_out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8")


def _read_corpus(path, marker=corpus.BOUNDARY_MARKER):
    return corpus.parse_text(_read_text(path), "nfc", marker)


def cmd_learn(args):
    src = corpus.load_corpus(args.input)
    if args.joint:
        if not args.target_input:
            raise SubwordError("--joint needs --target-input")
        if args.target_vocab is not None:
            raise SubwordError("--joint supports --merges only")
        tgt = corpus.load_corpus(args.target_input)
        table = translit.load_table(args.translit_map) if args.translit_map else None
        model = bpe.learn_joint(src, tgt, args.merges, mapping=table)
    elif args.target_vocab is not None:
        res = bpe.match_merges(src, args.target_vocab)
        model = res.model
        print(f"target_vocab\t{res.target_vocab}\tachieved_vocab\t{res.achieved_vocab}\t"
              f"merges\t{model.num_merges}\treached\t{res.reached}", file=sys.stderr)
    else:
        model = bpe.learn_bpe(src, args.merges)
        if model.stopped_early:
            print(f"stopped early after {model.num_merges} merges", file=sys.stderr)
    bpe.save_model(model, args.model)
    return 0


def _segmenter(args):
    if args.scheme == "bpe":
        if not args.model:
            raise SubwordError("--scheme bpe needs --model")
        return bpe.BpeSegmenter(bpe.load_model(args.model))
    if args.scheme == "os":
        if not args.script:
            raise SubwordError("--scheme os needs --script")
        return ortho.Syllabifier(ortho.load_script(args.script))
    return codec.char_splitter


def cmd_segment(args):
    segmenter = _segmenter(args)
    text = _read_corpus(args.input, args.marker)
    if args.translit_map:
        text = translit.transliterate_corpus(text, translit.load_table(args.translit_map))
    with _open_out(args.output) as out:
        for seg in codec.segment_corpus(text, segmenter, args.marker):
            out.write(seg.text() + "\n")
    return 0


def cmd_syllabify(args):
    args.scheme = "os"
    args.model = None
    args.translit_map = None
    return cmd_segment(args)


def cmd_desegment(args):
    with _open_out(args.output) as out:
        for line in _read_text(args.input).splitlines():
            out.write(codec.desegment_line(line, args.marker) + "\n")
    return 0


def cmd_translit(args):
    table = translit.table_for(args.src_script, args.tgt_script)
    if args.emit_map:
        sys.stdout.write(translit.format_table(table))
        return 0
    missing = 0
    with _open_out(args.output) as out:
        for line in _read_text(args.input).splitlines():
            mapped, unmapped = translit.transliterate_report(line, table)
            missing += sum(unmapped.values())
            out.write(mapped + "\n")
    if missing:
        print(f"warning: {missing} characters had no target counterpart and were kept", file=sys.stderr)
    return 0


def cmd_lcsr(args):
    pc = corpus.ParallelCorpus(corpus.load_corpus(args.src, marker=None), corpus.load_corpus(args.tgt, marker=None))
    table = translit.load_table(args.translit_map) if args.translit_map else None
    report = simil.corpus_lcsr(pc, table, workers=args.workers)
    with _open_out(args.output) as out:
        for i, v in enumerate(report.per_sentence, 1):
            out.write(f"{i}\t{'NA' if v is None else f'{v:.6f}'}\n")
        mean = "NA" if report.corpus_mean is None else f"{report.corpus_mean:.6f}"
        out.write(f"# mean_lcsr\t{mean}\tsentences\t{len(report.scored())}\taggregation\tunweighted\n")
    return 0


def cmd_correlate(args):
    load = lambda p: corpus.load_corpus(p, marker=None)  # noqa: E731
    pc = corpus.ParallelCorpus(load(args.src), load(args.ref))
    r = simil.correlate_similarity_accuracy(pc, load(args.hyp), workers=args.workers)
    print(f"pearson_r\t{r:.6f}")
    return 0


def cmd_bleu(args):
    load = lambda p: corpus.load_corpus(p, marker=None)  # noqa: E731
    hyps, refs = load(args.hyp), load(args.ref)
    if args.soft:
        report = evaluation.soft_bleu(hyps, refs, args.max_n, args.threshold)
        name = "softBLEU"
    else:
        report = evaluation.bleu(hyps, refs, args.max_n)
        name = "BLEU"
    print(report.summary(name))
    print(f"{name}\t{report.tsv()}")
    return 0


def cmd_sigtest(args):
    load = lambda p: corpus.load_corpus(p, marker=None)  # noqa: E731
    res = evaluation.bootstrap_test(load(args.hyp_a), load(args.hyp_b), load(args.ref), args.metric,
                                    args.samples, args.seed, args.max_n, args.threshold)
    mark = " (p < 0.05)" if res.p_value < 0.05 else ""
    print(f"{args.metric}: A = {res.score_a * 100:.2f}  B = {res.score_b * 100:.2f}  "
          f"p = {res.p_value:.4f}{mark}  samples = {res.num_samples}  mean delta = {res.delta_mean * 100:.2f}")
    print(f"sigtest\t{res.score_a:.6f}\t{res.score_b:.6f}\t{res.p_value:.6f}\t{res.num_samples}\t{res.delta_mean:.6f}")
    return 0


def cmd_pipeline(args):
    res = pipeline.run_pipeline(pipeline.load_config(args.config))
    print(f"{res.output}\tvocab_size\t{res.vocab_size}")
    return 0


def cmd_sweep(args):
    if args.base:
        base = pipeline.load_config(args.base)
        configs = pipeline.merge_grid(base, [int(m) for m in args.merges.split(",")])
    elif args.config_dir:
        configs = pipeline.load_sweep_dir(args.config_dir)
    else:
        raise SubwordError("sweep needs a config directory or --base with --merges")
    report = pipeline.sweep(configs, jobs=args.jobs)
    with _open_out(args.output) as out:
        out.write(report)
    return 0 if all(line.endswith("\tok") for line in report.splitlines()[1:]) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subwordkit", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def io(sp):
        sp.add_argument("--input", "-i")
        sp.add_argument("--output", "-o")

    def marker(sp):
        sp.add_argument("--marker", default=corpus.BOUNDARY_MARKER)

    sp = sub.add_parser("learn", help="learn a BPE model")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--model", "-m", required=True, help="model file to write")
    size = sp.add_mutually_exclusive_group(required=True)
    size.add_argument("--merges", type=int)
    size.add_argument("--target-vocab", type=int)
    sp.add_argument("--joint", action="store_true")
    sp.add_argument("--target-input")
    sp.add_argument("--translit-map")
    sp.set_defaults(func=cmd_learn)

    sp = sub.add_parser("segment", help="segment text into subwords")
    sp.add_argument("--scheme", choices=("bpe", "os", "char"), required=True)
    sp.add_argument("--model", "-m")
    sp.add_argument("--script")
    sp.add_argument("--translit-map", help="map input into the model's script first")
    io(sp)
    marker(sp)
    sp.set_defaults(func=cmd_segment)

    sp = sub.add_parser("syllabify", help="orthographic syllabification")
    sp.add_argument("--script", required=True)
    io(sp)
    marker(sp)
    sp.set_defaults(func=cmd_syllabify)

    sp = sub.add_parser("desegment", help="join subwords back into words")
    io(sp)
    marker(sp)
    sp.set_defaults(func=cmd_desegment)

    sp = sub.add_parser("translit", help="Indic script to Indic script mapping")
    sp.add_argument("--from", dest="src_script", required=True)
    sp.add_argument("--to", dest="tgt_script", required=True)
    sp.add_argument("--emit-map", action="store_true", help="print the mapping table file and exit")
    io(sp)
    sp.set_defaults(func=cmd_translit)

    sp = sub.add_parser("lcsr", help="sentence and corpus LCSR")
    sp.add_argument("--src", required=True)
    sp.add_argument("--tgt", required=True)
    sp.add_argument("--translit-map")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_lcsr)

    sp = sub.add_parser("correlate", help="Pearson r of similarity vs. accuracy")
    sp.add_argument("--src", required=True)
    sp.add_argument("--ref", required=True)
    sp.add_argument("--hyp", required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_correlate)

    sp = sub.add_parser("bleu", help="corpus BLEU")
    sp.add_argument("--hyp", required=True)
    sp.add_argument("--ref", required=True)
    sp.add_argument("--soft", action="store_true", help="soft-matching variant")
    sp.add_argument("--threshold", type=float, default=0.4)
    sp.add_argument("--max-n", type=int, default=4)
    sp.set_defaults(func=cmd_bleu)

    sp = sub.add_parser("sigtest", help="paired bootstrap significance test")
    sp.add_argument("--hyp-a", required=True)
    sp.add_argument("--hyp-b", required=True)
    sp.add_argument("--ref", required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--metric", choices=("bleu", "soft_bleu"), default="bleu")
    sp.add_argument("--threshold", type=float, default=0.4)
    sp.add_argument("--max-n", type=int, default=4)
    sp.set_defaults(func=cmd_sigtest)

    sp = sub.add_parser("pipeline", help="run one key=value pipeline config")
    sp.add_argument("config")
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("sweep", help="run a grid of pipeline configs")
    sp.add_argument("config_dir", nargs="?")
    sp.add_argument("--base", help="base config to vary")
    sp.add_argument("--merges", default="1000,2000,3000,4000")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SubwordError, OSError, ValueError) as exc:
        print(f"subwordkit {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
