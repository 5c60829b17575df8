"""Command-line entry points: run lessons, sweep presets, solve puzzles,
serve sessions over HTTP, and a terminal expert REPL."""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path
from typing import Optional

import click

from . import boards, curriculum
from .games import move_text
from .kernel import Session
from .lessons import ExpectationFailed, LessonError, run_lesson
from .presets import PRESETS, load_knowledge, save_knowledge
from .world import default_scene, parse_scene


@click.group()
def main() -> None:
    """Interactive task-learning agent on a simulated table top."""


def _load_knowledge_opt(path: Optional[str]):
    if path is None:
        return None
    return load_knowledge(Path(path))


@main.command()
@click.option("--lesson", "lesson_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--knowledge", type=click.Path(exists=True, dir_okay=False),
              help="exported knowledge file; overrides the lesson's preset")
@click.option("--metrics", "metrics_out", type=click.Path(dir_okay=False))
@click.option("--transcript", "transcript_out", type=click.Path(dir_okay=False))
def run(lesson_path: str, knowledge: Optional[str],
        metrics_out: Optional[str], transcript_out: Optional[str]) -> None:
    """Run one lesson script and print its transcript."""
    t0 = time.time()
    try:
        result = run_lesson(Path(lesson_path),
                            knowledge=_load_knowledge_opt(knowledge))
    except LessonError as exc:
        click.echo(f"lesson failed: {exc}", err=True)
        sys.exit(1)
    lines = [f"[{m.speaker}] {m.text}" + (f" @ {m.pointing}" if m.pointing else "")
             for m in result.session.transcript]
    report = result.metrics.as_dict()
    report["wall_time"] = time.time() - t0
    click.echo("\n".join(lines))
    if transcript_out:
        Path(transcript_out).write_text("\n".join(lines) + "\n")
    if metrics_out:
        Path(metrics_out).write_text(json.dumps(report, indent=2) + "\n")
    click.echo(json.dumps(report))


@main.command()
@click.option("--task", "tasks", multiple=True,
              type=click.Choice(curriculum.TASKS), help="default: all three")
@click.option("--out", "out_dir", type=click.Path(file_okay=False))
def sweep(tasks: tuple[str, ...], out_dir: Optional[str]) -> None:
    """Teach the curriculum under every preset and tabulate the cost."""
    tasks = tasks or curriculum.TASKS
    results = curriculum.sweep_presets(tasks)
    table = {preset: m.as_dict() for preset, m in results.items()}
    click.echo(json.dumps(table, indent=2))
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.json").write_text(json.dumps(table, indent=2) + "\n")


@main.command()
@click.option("--puzzle", "puzzle", required=True,
              help="a stock puzzle name "
                   f"({', '.join(sorted(boards.SCRIPTS))}) or a lesson file")
@click.option("--knowledge", type=click.Path(exists=True, dir_okay=False),
              help="exported knowledge file; if omitted, the move task is "
                   "taught first")
@click.option("--depth", default=64, show_default=True)
def solve(puzzle: str, knowledge: Optional[str], depth: int) -> None:
    """Acquire a puzzle spec through dialogue and print a solution."""
    kn = _load_knowledge_opt(knowledge)
    if kn is None:
        kn = curriculum.export_knowledge(curriculum.teach_curriculum("O+S", ("move",)))
    if puzzle in boards.SCRIPTS:
        source: str | Path = boards.SCRIPTS[puzzle]
    else:
        source = Path(puzzle)
    result = run_lesson(source, knowledge=kn)
    session = result.session
    if not session.specs:
        click.echo("the lesson did not acquire a problem spec", err=True)
        sys.exit(1)
    name = list(session.specs)[-1]
    for move in session.solve_spec(name, depth_cap=depth):
        click.echo(move_text(move))


@main.command()
@click.option("--preset", default="O+S", type=click.Choice(PRESETS))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--task", "tasks", multiple=True, type=click.Choice(curriculum.TASKS))
def export(preset: str, out_path: str, tasks: tuple[str, ...]) -> None:
    """Teach the curriculum and export the resulting knowledge."""
    session = curriculum.teach_curriculum(preset, tasks or curriculum.TASKS)
    save_knowledge(Path(out_path), session.smem, session.rule_base)
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--port", default=8750, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port: int, host: str) -> None:
    """Run the session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


@main.command()
@click.option("--preset", default="O+S", type=click.Choice(PRESETS))
@click.option("--scene", "scene_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--knowledge", type=click.Path(exists=True, dir_okay=False))
def repl(preset: str, scene_path: Optional[str], knowledge: Optional[str]) -> None:
    """Terminal expert: type commands and replies; '<text> @ <id>' points."""
    scene = parse_scene(Path(scene_path).read_text()) if scene_path else default_scene()
    session = Session(scene, preset=preset,
                      knowledge=_load_knowledge_opt(knowledge))
    click.echo("expert> ", nl=False)
    for line in sys.stdin:
        text = line.strip()
        if not text:
            continue
        pointing = None
        if " @ " in text:
            text, pointing = text.rsplit(" @ ", 1)
        for m in session.submit(text.strip(), pointing):
            if m.speaker == "learner":
                click.echo(f"learner> {m.text}")
        click.echo("expert> ", nl=False)


if __name__ == "__main__":
    main()
