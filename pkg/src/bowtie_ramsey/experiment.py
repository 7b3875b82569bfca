"""End-to-end pipeline runs with deterministic, line-delimited JSON reports.

Seeds: every stage of repetition ``rep`` draws its seed from the root seed
as the first 8 bytes (big endian) of ``sha256(f"{root}/{rep}/{stage}")``
with stage one of ``generate``, ``colour``, ``extract``.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .bowtie import build_bowtie_graph, check_bowtie_invariants
from .colouring import colour, select_class
from .components import components, select_anchor
from .errors import (
    BowtieRamseyError,
    CrucialViolation,
    IdentityViolation,
    InsufficientAnchors,
    InvariantBroken,
    NoLongPath,
    Stuck,
)
from .extraction import pathwalk_extract, run_induction, target_span
from .generators import GeneratorSpec, generate
from .oracle import verify_configuration

METHODS = ("pathwalk", "induction")

EXIT_OK = 0
EXIT_STAGE_ERROR = 1
EXIT_FAILED = 2


def derive_seed(root: int, rep: int, stage: str) -> int:
    digest = hashlib.sha256(f"{root}/{rep}/{stage}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class ExperimentSpec:
    generator: GeneratorSpec
    c: int = 1
    strategy: str = "uniform_random"
    k: int = 3
    method: str = "pathwalk"
    repetitions: int = 1
    seed: int = 0
    required: int = 1
    trace: bool = False
    colour_file: str | None = None
    out: str | None = None

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.c < 1:
            raise ValueError("c must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["generator"] = self.generator.to_dict()
        d.pop("out")
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ExperimentSpec:
        d = dict(d)
        d["generator"] = GeneratorSpec.from_dict(d["generator"])
        return cls(**d)


def _error_entry(stage: str, exc: BaseException) -> dict[str, Any]:
    return {"stage": stage, "error": type(exc).__name__, "message": str(exc)}


def run_repetition(spec: ExperimentSpec, rep: int) -> dict[str, Any]:
    seeds = {s: derive_seed(spec.seed, rep, s) for s in ("generate", "colour", "extract")}
    record: dict[str, Any] = {"rep": rep, "seeds": seeds}
    stage = "generate"
    try:
        gen = spec.generator
        if gen.kind in ("random", "random_partial"):
            gen = GeneratorSpec(gen.kind, n=gen.n, r=gen.r, edges=gen.edges, seed=seeds["generate"])
        g = generate(gen)
        record.update(n=g.n, r=g.r, m=g.m)

        stage = "colour"
        strategy = spec.strategy
        col = colour(g, spec.c, strategy, seeds["colour"], path=spec.colour_file)

        stage = "stats"
        sel = select_class(g, col)
        record["selected"] = sel.colour
        record["classes"] = [s.to_dict() for s in sel.classes]
        gc = col.class_graph(g, sel.colour)

        stage = "bowtie"
        bg = build_bowtie_graph(gc)
        prop = check_bowtie_invariants(bg)
        record.update(bowtie_count=len(bg), bowtie_edges=bg.edge_count(), invariants=prop.passed)

        stage = "components"
        rep_c = components(bg)
        record.update(
            component_count=len(rep_c.components),
            dense_count=rep_c.dense_count,
            largest_component=rep_c.largest_size,
        )

        v = target_span(g.r, spec.k)
        extraction: dict[str, Any] = {"method": spec.method, "k": spec.k, "v": v}
        if spec.method == "pathwalk":
            stage = "extraction"
            pw = pathwalk_extract(bg, spec.k, seed=seeds["extract"])
            cfg = pw.config
            if spec.trace:
                extraction["trace"] = [s.to_dict() for s in pw.steps]
        else:
            stage = "anchor"
            anchor = select_anchor(bg, rep_c, spec.required)
            extraction["anchor"] = anchor.to_dict(gc.parent_ids)
            stage = "extraction"
            res = run_induction(gc, bg, rep_c, anchor, spec.k)
            cfg = res.config
            extraction["cases"] = res.counts
            extraction["nice_checks"] = len(res.nice_reports)
            if spec.trace:
                extraction["trace"] = [s.to_dict(gc) for s in res.states]
        edge_ids = gc.to_parent(cfg.edge_ids)
        extraction.update(status="success", edge_ids=edge_ids, span=cfg.span, colour=sel.colour)
        record["extraction"] = extraction

        stage = "verification"
        ver = verify_configuration(g, col, edge_ids, v, spec.k)
        record["verification"] = ver.to_dict()
        record["status"] = "verified" if ver.passed else "failed"
        if not ver.passed:
            record["error"] = {"stage": stage, "error": "VerificationFailed", "message": "; ".join(ver.failures)}
    except (InvariantBroken, CrucialViolation, IdentityViolation) as exc:
        record["status"] = "failed"
        record["error"] = _error_entry(stage, exc)
    except (Stuck, NoLongPath, InsufficientAnchors, BowtieRamseyError, ValueError) as exc:
        record["status"] = "stage_error"
        record["error"] = _error_entry(stage, exc)
        if isinstance(exc, Stuck) and spec.trace:
            record["error"]["state"] = exc.state.to_dict() if hasattr(exc.state, "to_dict") else None
    return record


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    records: list[dict[str, Any]] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, Any]:
        statuses = [r["status"] for r in self.records]
        return {
            "repetitions": len(self.records),
            "verified": statuses.count("verified"),
            "stage_errors": statuses.count("stage_error"),
            "failed": statuses.count("failed"),
            "exit_code": self.exit_code,
            "spec": self.spec.to_dict(),
        }

    @property
    def exit_code(self) -> int:
        statuses = {r["status"] for r in self.records}
        if "failed" in statuses:
            return EXIT_FAILED
        if "stage_error" in statuses:
            return EXIT_STAGE_ERROR
        return EXIT_OK

    def to_jsonl(self) -> str:
        lines = [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in self.records]
        lines.append(json.dumps({"summary": self.summary}, sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str | Path) -> Path:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        target = path / "report.jsonl"
        target.write_text(self.to_jsonl())
        return target


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> ExperimentReport:
    spec.validate()
    reps = range(spec.repetitions)
    if threads > 1 and spec.repetitions > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run_repetition, [spec] * spec.repetitions, reps))
    else:
        records = [run_repetition(spec, rep) for rep in reps]
    return ExperimentReport(spec, records)
