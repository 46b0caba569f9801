"""Config-driven preprocessing runs and merge-count sweeps.

A config is a plain ``key = value`` file describing one run::

    scheme = bpe
    input = train.hi
    merges = 2000
    output = runs/hi-bpe2k

Relative paths are resolved against the config file's directory.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import shutil
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from subwordkit import __version__
from subwordkit.bpe import BpeSegmenter, learn_bpe, learn_joint, match_merges, save_model
from subwordkit.codec import char_splitter, segment_corpus
from subwordkit.corpus import BOUNDARY_MARKER, load_corpus
from subwordkit.errors import SubwordError
from subwordkit.ortho import Syllabifier, load_script

log = logging.getLogger(__name__)

SCHEMES = ("bpe", "bpe_joint", "os", "char", "word")


class ConfigError(SubwordError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    scheme: str
    input: str
    output: str
    merges: int | None = None
    target_vocab: int | None = None
    target_input: str | None = None
    script: str | None = None
    translit_map: str | None = None
    marker: str = BOUNDARY_MARKER
    normalization: str = "nfc"
    # optional externally produced translations, scored by sweep
    hyp: str | None = None
    ref: str | None = None
    name: str | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; expected one of {', '.join(SCHEMES)}")
        if self.scheme in ("bpe", "bpe_joint"):
            if (self.merges is None) == (self.target_vocab is None):
                raise ConfigError("bpe schemes need exactly one of merges / target_vocab")
            if self.merges is not None and self.merges < 0:
                raise ConfigError("merges must be non-negative")
            if self.target_vocab is not None and self.target_vocab < 1:
                raise ConfigError("target_vocab must be positive")
        if self.scheme == "bpe_joint" and not self.target_input:
            raise ConfigError("bpe_joint needs target_input")
        if self.scheme == "os" and not self.script:
            raise ConfigError("os scheme needs a script")

    @classmethod
    def from_dict(cls, values: dict, base: Path | None = None) -> "PipelineConfig":
        fields = set(cls.__dataclass_fields__)
        unknown = set(values) - fields
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        vals = dict(values)
        for key in ("merges", "target_vocab"):
            if vals.get(key) not in (None, ""):
                try:
                    vals[key] = int(vals[key])
                except ValueError:
                    raise ConfigError(f"{key} must be an integer, got {vals[key]!r}") from None
            else:
                vals.pop(key, None)
        if base is not None:
            for key in ("input", "output", "target_input", "translit_map", "hyp", "ref"):
                if vals.get(key):
                    vals[key] = str(base / vals[key]) if not Path(vals[key]).is_absolute() else vals[key]
            if vals.get("script") and (base / vals["script"]).is_file():
                vals["script"] = str(base / vals["script"])
        for key in ("scheme", "input", "output"):
            if not vals.get(key):
                raise ConfigError(f"missing required key {key!r}")
        return cls(**vals)


def parse_config(text: str, base: Path | None = None, name: str | None = None) -> PipelineConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        k, v = (p.strip() for p in line.split("=", 1))
        values[k] = v
    if name and "name" not in values:
        values["name"] = name
    return PipelineConfig.from_dict(values, base)


def load_config(path) -> PipelineConfig:
    path = Path(path)
    try:
        return parse_config(path.read_text(encoding="utf-8"), path.parent, path.stem)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_segmented(segmented, path: Path) -> Counter:
    counts: Counter = Counter()
    with open(path, "w", encoding="utf-8") as fh:
        for seg in segmented:
            fh.write(seg.text() + "\n")
            counts.update(u for u in seg.units if u != seg.marker)
    return counts


@dataclass(frozen=True)
class RunResult:
    output: Path
    manifest: dict

    @property
    def vocab_size(self) -> int:
        return self.manifest["vocab_size"]


def _prepare_output(out: Path) -> Path:
    if out.exists() and any(out.iterdir()) and not (out / "manifest.json").is_file():
        raise ConfigError(f"output directory {out} is not empty and holds no previous run")
    out.parent.mkdir(parents=True, exist_ok=True)
    return Path(tempfile.mkdtemp(prefix=f".{out.name}.", dir=out.parent))


def _commit(tmp: Path, out: Path) -> None:
    if out.exists():
        shutil.rmtree(out)
    os.replace(tmp, out)


def run_pipeline(config: PipelineConfig) -> RunResult:
    """Learn (when needed), segment, and write artifacts plus a manifest.

    Everything is written into a private temporary directory first and moved
    into ``config.output`` at the end, so a failed run leaves no partial
    output behind.
    """
    out = Path(config.output)
    load = lambda p: load_corpus(p, config.normalization, config.marker)  # noqa: E731
    src = load(config.input)
    tmp = _prepare_output(out)
    try:
        info: dict = {}
        outputs: dict[str, Counter] = {}
        if config.scheme in ("bpe", "bpe_joint"):
            if config.scheme == "bpe_joint":
                from subwordkit.translit import load_table, transliterate_corpus

                tgt = load(config.target_input)
                table = load_table(config.translit_map) if config.translit_map else None
                if config.merges is None:
                    raise ConfigError("bpe_joint supports merges only, not target_vocab")
                model = learn_joint(src, tgt, config.merges, mapping=table)
                if table is not None:
                    tgt = transliterate_corpus(tgt, table)
                sides = {"segmented.src.txt": src, "segmented.tgt.txt": tgt}
            else:
                if config.target_vocab is not None:
                    match = match_merges(src, config.target_vocab)
                    model = match.model
                    info["target_vocab"] = match.target_vocab
                    info["achieved_vocab"] = match.achieved_vocab
                    info["target_reached"] = match.reached
                    info["below_alphabet"] = match.below_alphabet
                else:
                    model = learn_bpe(src, config.merges)
                sides = {"segmented.txt": src}
            info["merges_learned"] = model.num_merges
            info["stopped_early"] = bool(config.merges is not None and model.num_merges < config.merges)
            save_model(model, tmp / "model.bpe")
            segmenter = BpeSegmenter(model)
            for fname, corpus in sides.items():
                outputs[fname] = _write_segmented(segment_corpus(corpus, segmenter, config.marker), tmp / fname)
        else:
            if config.scheme == "os":
                segmenter = Syllabifier(load_script(config.script))
            elif config.scheme == "char":
                segmenter = char_splitter
            else:
                segmenter = lambda w: [w]  # noqa: E731
            outputs["segmented.txt"] = _write_segmented(segment_corpus(src, segmenter, config.marker), tmp / "segmented.txt")

        total: Counter = Counter()
        for counts in outputs.values():
            total.update(counts)
        with open(tmp / "vocab.tsv", "w", encoding="utf-8") as fh:
            for unit, c in sorted(total.items(), key=lambda kv: (-kv[1], kv[0])):
                fh.write(f"{unit}\t{c}\n")

        inputs = {k: getattr(config, k) for k in ("input", "target_input", "translit_map") if getattr(config, k)}
        manifest = {
            "tool": "subwordkit",
            "version": __version__,
            "config": {k: v for k, v in asdict(config).items() if v is not None},
            "inputs": {k: {"path": v, "sha256": sha256_file(v)} for k, v in inputs.items()},
            "outputs": {p.name: sha256_file(p) for p in sorted(tmp.iterdir())},
            "vocab_size": len(total),
            "per_file_vocab_size": {k: len(v) for k, v in outputs.items()},
            **info,
        }
        (tmp / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        _commit(tmp, out)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    log.info("wrote %s (vocab %d)", out, manifest["vocab_size"])
    return RunResult(out, manifest)


SWEEP_COLUMNS = ("name", "scheme", "merges", "vocab_size", "bleu", "soft_bleu", "status")


def _sweep_row(config) -> dict:
    row = {"name": config.name or Path(config.output).name, "scheme": config.scheme,
           "merges": "", "vocab_size": "", "bleu": "", "soft_bleu": "", "status": "ok"}
    if isinstance(config, _BrokenConfig):
        row["status"] = "failed: " + " ".join(config.error.split())
        return row
    try:
        res = run_pipeline(config)
        row["merges"] = res.manifest.get("merges_learned", "")
        row["vocab_size"] = res.vocab_size
        if config.hyp and config.ref:
            from subwordkit.eval import bleu, soft_bleu

            hyps = load_corpus(config.hyp, config.normalization, None)
            refs = load_corpus(config.ref, config.normalization, None)
            row["bleu"] = f"{bleu(hyps, refs).score * 100:.2f}"
            row["soft_bleu"] = f"{soft_bleu(hyps, refs).score * 100:.2f}"
    except Exception as exc:  # a failed row must not stop the sweep
        row["status"] = "failed: " + " ".join(str(exc).split())
    return row


def sweep(configs, jobs: int = 1) -> str:
    """Run every config and return a TSV report, one row per config in input order."""
    configs = list(configs)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_sweep_row, configs))
    else:
        rows = [_sweep_row(c) for c in configs]
    lines = ["\t".join(SWEEP_COLUMNS)]
    lines += ["\t".join(str(r[c]) for c in SWEEP_COLUMNS) for r in rows]
    return "\n".join(lines) + "\n"


def merge_grid(base: PipelineConfig, merges) -> list[PipelineConfig]:
    """Copies of ``base`` for each merge count, each with its own output subdirectory."""
    return [
        replace(base, merges=m, target_vocab=None, output=str(Path(base.output) / f"merges{m}"),
                name=f"{base.name or 'bpe'}-{m}")
        for m in merges
    ]


def load_sweep_dir(path) -> list:
    """Configs from ``*.cfg`` files, sorted by file name.

    A file that fails to parse becomes an entry that reports the error in
    its sweep row.
    """
    out = []
    for p in sorted(Path(path).glob("*.cfg")):
        try:
            out.append(load_config(p))
        except ConfigError as exc:
            out.append(_BrokenConfig(p.stem, str(exc)))
    return out


@dataclass(frozen=True)
class _BrokenConfig:
    name: str
    error: str
    scheme: str = "?"
    output: str = ""
